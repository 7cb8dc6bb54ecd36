//! `g2 ⊂ so(7)` as the stabilizer of a 3-form.

use super::classical::{build_classical, Family};
use super::ops::{power_basis, power_matrix, PowerKind};
use super::rep::LieRep;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, qi, SparseMat};

/// Coefficient pattern of the torus-invariant 3-form
/// `a e¹²³ + b e⁵⁶⁷ + c₁ e¹⁴⁷ + c₂ e²⁴⁶ + c₃ e³⁴⁵` (1-based, `e^i` dual to
/// the split basis with `g(e_i, e_{8−i}) = 1`).
const TERMS: [[usize; 3]; 5] = [[0, 1, 2], [4, 5, 6], [0, 3, 6], [1, 3, 5], [2, 3, 4]];

fn phi(coefs: &[i64; 5]) -> Vec<(usize, crate::linalg::Q)> {
    let basis = power_basis(7, PowerKind::Wedge, 3);
    let mut v: Vec<_> = TERMS
        .iter()
        .zip(coefs)
        .map(|(t, c)| (basis.iter().position(|b| b == t).expect("sorted"), qi(*c)))
        .collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Coordinates (in the so(7) basis) of the stabilizer of `φ`.
fn stabilizer(so7: &LieRep, phi: &[(usize, crate::linalg::Q)]) -> Result<crate::linalg::Subspace> {
    let basis = power_basis(7, PowerKind::Wedge, 3);
    let mut triplets = Vec::new();
    for (a, x) in so7.generators().iter().enumerate() {
        // dual action on Λ³V*: A·φ = −φ∘A
        let dual = x.transpose().scale(&qi(-1));
        let img = power_matrix(&dual, PowerKind::Wedge, &basis).mul_vec(phi);
        for (r, v) in img {
            triplets.push((r, a, v));
        }
    }
    nullspace(&SparseMat::from_triplets(basis.len(), so7.dim_g(), triplets)?)
}

pub fn build_g2() -> Result<LieRep> {
    let so7 = build_classical(Family::So, 7)?;
    let mut found = None;
    'search: for mags in [[1i64, 1, 1, 1, 1], [1, 1, 2, 2, 2], [1, 2, 1, 1, 1]] {
        for signs in 0u32..16 {
            let mut c = mags;
            for (k, ck) in c.iter_mut().enumerate().skip(1) {
                if signs & (1 << (k - 1)) != 0 {
                    *ck = -*ck;
                }
            }
            let s = stabilizer(&so7, &phi(&c))?;
            if s.dim() == 14 {
                found = Some(s);
                break 'search;
            }
        }
    }
    let stab = found.ok_or_else(|| Error::Construction("no 3-form with a 14-dimensional stabilizer".into()))?;
    let gens: Vec<SparseMat> = stab.basis().iter().map(|c| so7.element(c)).collect();
    let cartan: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].is_diagonal()).collect();
    if cartan.len() != 2 {
        return Err(Error::Construction(format!(
            "g2 stabilizer has {} diagonal basis elements, expected 2",
            cartan.len()
        )));
    }
    LieRep::new("g2:std", 7, gens, cartan, so7.form().cloned(), false)
}
