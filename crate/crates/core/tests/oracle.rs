//! Dense one-shot solves against the staged sparse pipeline on every
//! small representation the spec grammar can name.

mod common;

use rayon::prelude::*;
use skewberger::curvature::{nabla_space, skew_curvature_space};
use skewberger::prolong::skew_prolongation;
use skewberger::registry::parse_spec;

use common::small_specs;

#[test]
fn dense_and_staged_agree_up_to_dim_six() {
    let specs = small_specs();
    assert!(specs.len() >= 40, "{specs:?}");
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let rep = parse_spec(s).unwrap().build().unwrap();
            assert!(rep.dim_v() <= 6, "{s}");
            let cs = skew_curvature_space(&rep).unwrap();
            let staged = (
                cs.dim(),
                nabla_space(&cs).unwrap().dim(),
                skew_prolongation(&rep, 1).unwrap().dim1(),
            );
            let dense = (common::rbar_dim(&rep), common::nabla_dim(&rep), common::g1_dim(&rep));
            (staged != dense).then(|| format!("{s}: staged {staged:?} dense {dense:?}"))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}
