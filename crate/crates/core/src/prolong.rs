//! Skew-prolongations `g^[1]`, `g^[2]` and the Spencer group `H^{2,2}` from
//! `0 → g^[2] → V*⊗g^[1] → R̄(g) → H^{2,2} → 0`.
//!
//! `g^[1] ⊂ V*⊗g` uses coordinates `φ(e_i) = Σ_a φ_{i,a} X_a` at `i·dim g + a`;
//! `g^[2] ⊂ V*⊗g^[1]` uses `ψ(e_i) = Σ_b ψ_{i,b} B_b` at `i·dim g^[1] + b`
//! with `B_b` the normal-form basis of `g^[1]`.

use num_traits::Zero;

use crate::curvature::{build_partial, skew_curvature_space_with, CurvatureSpace, Layout};
use crate::error::Result;
use crate::lie::LieRep;
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::{nullspace_with, qi, rank_with, Rationals, SolveOptions, SparseMat, SparseVec, Subspace, Q};

#[derive(Debug, Clone)]
pub struct ProlongChain {
    pub rep: String,
    pub g1: Subspace,
    /// `None` when only the first prolongation was requested.
    pub g2: Option<Subspace>,
}

impl ProlongChain {
    pub fn dim1(&self) -> usize {
        self.g1.dim()
    }

    pub fn dim2(&self) -> Option<usize> {
        self.g2.as_ref().map(|s| s.dim())
    }
}

/// Rows `(i ≤ j, l)`: coefficient of `e_l` in `φ(e_i)e_j + φ(e_j)e_i`.
fn first_system(rep: &LieRep) -> SparseMat {
    let lay = Layout::new(rep);
    let (n, d) = (lay.n, lay.d);
    let cols: Vec<SparseMat> = rep.generators().iter().map(|x| x.transpose()).collect();
    let mut t = Vec::new();
    for i in 0..n {
        for (a, xt) in cols.iter().enumerate() {
            for j in 0..n {
                let row = lay.pair(i, j) * n;
                let mult = if i == j { qi(2) } else { qi(1) };
                for (l, v) in xt.row(j) {
                    t.push((row + l, i * d + a, v * &mult));
                }
            }
        }
    }
    SparseMat::from_triplets(lay.pairs() * n, n * d, t).expect("in range")
}

/// Rows `(i ≤ j, a)`: the g-coordinate `a` of `ψ(e_i)e_j + ψ(e_j)e_i`.
fn second_system(rep: &LieRep, g1: &Subspace) -> SparseMat {
    let lay = Layout::new(rep);
    let (n, d, k1) = (lay.n, lay.d, g1.dim());
    let mut t = Vec::new();
    for (b, phi) in g1.basis().iter().enumerate() {
        for (c, v) in phi {
            let (j, a) = (c / d, c % d);
            for i in 0..n {
                let mult = if i == j { qi(2) } else { qi(1) };
                t.push((lay.pair(i, j) * d + a, i * k1 + b, v * &mult));
            }
        }
    }
    SparseMat::from_triplets(lay.pairs() * d, n * k1, t).expect("in range")
}

pub fn skew_prolongation(rep: &LieRep, k: usize) -> Result<ProlongChain> {
    skew_prolongation_with(rep, k, &SolveOptions::default())
}

pub fn skew_prolongation_with(rep: &LieRep, k: usize, opts: &SolveOptions) -> Result<ProlongChain> {
    if !(1..=2).contains(&k) {
        return Err(crate::Error::InvalidParameter(format!("prolongation order {k}: only 1 and 2")));
    }
    let g1 = nullspace_with(&first_system(rep), opts)?.space;
    let g2 = if k == 2 {
        Some(nullspace_with(&second_system(rep, &g1), opts)?.space)
    } else {
        None
    };
    Ok(ProlongChain {
        rep: rep.name().to_string(),
        g1,
        g2,
    })
}

/// `V*⊗g^[1] → ⊙²V*⊗g`, `α⊗φ ↦ R(x, y) = φ(x)α(y) + φ(y)α(x)`; column
/// `e^k⊗B_b` at `k·dim g^[1] + b`.
pub fn spencer_map(rep: &LieRep, g1: &Subspace) -> SparseMat {
    let lay = Layout::new(rep);
    let (n, d, k1) = (lay.n, lay.d, g1.dim());
    let mut t = Vec::new();
    for (b, phi) in g1.basis().iter().enumerate() {
        for (c, v) in phi {
            let (x, a) = (c / d, c % d);
            // R(e_x, e_k) gains φ(e_x) from α = e^k; R(e_k, e_k) counts twice
            for k in 0..n {
                let mult = if x == k { qi(2) } else { qi(1) };
                t.push((lay.col(x, k, a), k * k1 + b, v * &mult));
            }
        }
    }
    SparseMat::from_triplets(lay.cols(), n * k1, t).expect("in range")
}

#[derive(Debug, Clone)]
pub struct SpencerReport {
    pub dim_g1: usize,
    pub dim_g2: usize,
    pub dim_rbar: usize,
    pub rank_spencer: usize,
    pub dim_h22: usize,
    /// Every column of the Spencer map satisfies Bianchi.
    pub image_in_kernel: bool,
    /// `rank + dim g^[2] = dim V · dim g^[1]`.
    pub kernel_is_g2: bool,
    /// Lifts to `R̄(g)` of a basis of the cokernel; `None` above the size cap.
    pub h22_basis: Option<Vec<SparseVec>>,
}

/// Cokernel lifts are only assembled when `dim R̄` is at most this.
pub const COSET_BASIS_LIMIT: usize = 5000;

pub fn spencer_h22(rep: &LieRep) -> Result<SpencerReport> {
    let opts = SolveOptions::default();
    let cs = skew_curvature_space_with(rep, &opts)?;
    let chain = skew_prolongation_with(rep, 2, &opts)?;
    spencer_h22_from(rep, &cs, &chain, &opts)
}

pub fn spencer_h22_from(
    rep: &LieRep,
    cs: &CurvatureSpace,
    chain: &ProlongChain,
    opts: &SolveOptions,
) -> Result<SpencerReport> {
    let g2 = match &chain.g2 {
        Some(g2) => g2.clone(),
        None => nullspace_with(&second_system(rep, &chain.g1), opts)?.space,
    };
    let s = spencer_map(rep, &chain.g1);
    let partial = build_partial(rep);
    let image_in_kernel = partial.mul(&s).is_zero();
    let rank_spencer = rank_with(&s, opts)?;
    let n = rep.dim_v();
    let dim_rbar = cs.dim();
    let kernel_is_g2 = rank_spencer + g2.dim() == n * chain.g1.dim();
    let h22_basis = (dim_rbar <= COSET_BASIS_LIMIT).then(|| coset_basis(&s, cs));
    Ok(SpencerReport {
        dim_g1: chain.g1.dim(),
        dim_g2: g2.dim(),
        dim_rbar,
        rank_spencer,
        dim_h22: dim_rbar.saturating_sub(rank_spencer),
        image_in_kernel,
        kernel_is_g2,
        h22_basis,
    })
}

/// Basis vectors of `R̄(g)` extending the image of the Spencer map.
fn coset_basis(s: &SparseMat, cs: &CurvatureSpace) -> Vec<SparseVec> {
    let f = Rationals;
    let mut e = Echelon::new(&f, cs.layout.cols(), PivotRule::Leftmost);
    for col in s.transpose().row_vecs() {
        if !col.is_empty() {
            e.insert(col);
        }
    }
    cs.basis
        .basis()
        .iter()
        .filter(|r| e.insert(r))
        .cloned()
        .collect()
}

/// `φ(e_i)e_j = −φ(e_j)e_i` on all basis pairs, for a `g^[1]` vector.
pub fn alternates(rep: &LieRep, phi: &[(usize, Q)]) -> bool {
    let d = rep.dim_g();
    let n = rep.dim_v();
    let mut vals: Vec<SparseVec> = vec![Vec::new(); n];
    for (c, v) in phi {
        vals[c / d].push((c % d, v.clone()));
    }
    let mats: Vec<SparseMat> = vals.iter().map(|v| rep.element(v)).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let a = mats[i].mul_vec(&[(j, qi(1))]);
            let b = mats[j].mul_vec(&[(i, qi(1))]);
            let mut s: std::collections::BTreeMap<usize, Q> = Default::default();
            for (k, v) in a.into_iter().chain(b) {
                *s.entry(k).or_insert_with(Q::zero) += v;
            }
            s.values().all(|v| v.is_zero())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{add_center, build_classical, power_rep, Family, PowerKind};

    #[test]
    fn first_prolongations() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let c = skew_prolongation(&sl3, 2).unwrap();
        assert_eq!(c.dim1(), 6);
        assert!(c.g1.basis().iter().all(|p| alternates(&sl3, p)));
        let so4 = build_classical(Family::So, 4).unwrap();
        assert_eq!(skew_prolongation(&so4, 1).unwrap().dim1(), 4);
        let sp4 = build_classical(Family::Sp, 4).unwrap();
        assert_eq!(skew_prolongation(&sp4, 1).unwrap().dim1(), 0);
        assert_eq!(skew_prolongation(&add_center(&sp4).unwrap(), 1).unwrap().dim1(), 4);
    }

    #[test]
    fn spencer_sequences() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let r = spencer_h22(&sl3).unwrap();
        assert!(r.image_in_kernel && r.kernel_is_g2);
        assert_eq!(r.dim_h22, 0);
        assert_eq!(r.rank_spencer, 3 * r.dim_g1 - r.dim_g2);

        let gl5 = power_rep(&build_classical(Family::Gl, 5).unwrap(), PowerKind::Wedge, 2).unwrap();
        let r = spencer_h22(&gl5).unwrap();
        assert_eq!(r.dim_h22, 5);
        assert_eq!(r.h22_basis.as_ref().map(Vec::len), Some(5));

        let sp4 = build_classical(Family::Sp, 4).unwrap();
        let r = spencer_h22(&sp4).unwrap();
        assert_eq!((r.dim_g1, r.rank_spencer), (0, 0));
        assert_eq!(spencer_map(&sp4, &Subspace::zero(40)).cols(), 0);
    }
}
