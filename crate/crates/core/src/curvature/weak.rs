//! `P_g` / `P_Ω`: maps `P: V → g` with
//! `B(P(x)y, z) + B(P(y)z, x) + B(P(z)x, y) = 0` for the preserved form `B`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{values, CurvatureSpace, Layout};
use crate::error::{Error, Result};
use crate::lie::{FormKind, LieRep};
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::{nullspace_with, Rationals, SolveOptions, SparseMat, SparseVec, Subspace, Q};

/// Coordinates: `P(e_x) = Σ_a p_{x,a} X_a` at index `x·dim g + a`.
#[derive(Debug, Clone)]
pub struct WeakSpace {
    pub kind: FormKind,
    pub space: Subspace,
    /// The images `P(x)` span g.
    pub is_weak: bool,
}

impl WeakSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn weak_space(rep: &LieRep) -> Result<WeakSpace> {
    weak_space_with(rep, &SolveOptions::default())
}

pub fn weak_space_with(rep: &LieRep, opts: &SolveOptions) -> Result<WeakSpace> {
    let form = rep
        .form()
        .ok_or_else(|| Error::Precondition(format!("{}: no preserved form", rep.name())))?;
    let (n, d) = (rep.dim_v(), rep.dim_g());
    let lay = Layout::new(rep);
    // B(X_a y, z) for all a, y, z
    let bx: Vec<SparseMat> = rep
        .generators()
        .iter()
        .map(|x| x.transpose().mul(&form.matrix))
        .collect();
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let row = lay.triple(i, j, k);
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (a, m) in bx.iter().enumerate() {
                        let v = m.get(y, z);
                        if !v.is_zero() {
                            *acc.entry(x * d + a).or_insert_with(Q::zero) += v;
                        }
                    }
                }
                triplets.extend(acc.into_iter().map(|(c, v)| (row, c, v)));
            }
        }
    }
    let m = SparseMat::from_triplets(lay.triples(), n * d, triplets)?;
    let space = nullspace_with(&m, opts)?.space;
    let f = Rationals;
    let mut e = Echelon::new(&f, d, PivotRule::Leftmost);
    for p in space.basis() {
        let mut by_x: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (c, v) in p {
            by_x.entry(c / d).or_default().push((c % d, v.clone()));
        }
        for v in by_x.into_values() {
            e.insert(&v);
        }
    }
    Ok(WeakSpace {
        kind: form.kind,
        is_weak: e.rank() == d,
        space,
    })
}

/// The slice `y ↦ R(y, e_x)` in the [`WeakSpace`] coordinates.
pub fn slice(cs: &CurvatureSpace, r: &[(usize, Q)], x: usize) -> SparseVec {
    let lay = cs.layout;
    let vals = values(&lay, r);
    let mut out = Vec::new();
    for y in 0..lay.n {
        if let Some(v) = vals.get(&lay.pair(y, x)) {
            out.extend(v.iter().map(|(a, c)| (y * lay.d + a, c.clone())));
        }
    }
    out
}
