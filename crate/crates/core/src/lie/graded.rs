//! Graded models of `f4` on `C ⊕ C⁹ ⊕ Δ₉ = C²⁶` and of `e7` on
//! `Λ²C⁸ ⊕ Λ²(C⁸)* = C⁵⁶`.

use num_traits::One;

use super::classical::{build_classical, Family};
use super::ops::{power_basis, power_matrix, PowerKind};
use super::rep::{Form, FormKind, LieRep};
use super::spin::{build_spin, clifford_gammas, Chirality};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, qi, SparseMat, Q};

fn embed(blocks: &[(usize, usize, &SparseMat)], n: usize) -> SparseMat {
    let mut t = Vec::new();
    for (r0, c0, m) in blocks {
        for (i, j, v) in m.entries() {
            t.push((r0 + i, c0 + j, v.clone()));
        }
    }
    SparseMat::from_triplets(n, n, t).expect("in range")
}

/// `f4 = so(9) ⊕ Δ`. For a spinor `s` the odd generator is
///
/// * `λ ↦ λ s` on `C`, `v ↦ γ(v) s` on `C⁹`,
/// * `t ↦ κ C(s, t)` into `C` and `t ↦ −vec(s, t)` into `C⁹`,
///
/// where `C` is the invariant form on Δ and `g(vec(s,t), v) = C(γ(v)s, t)`.
/// The sign of the `C⁹` block makes the generator skew for the form
/// `g₀λ² ⊕ g ⊕ C` with `g₀ = −1/κ`; `κ` is solved from closure of the bracket
/// of two odd generators.
pub fn build_f4_model() -> Result<LieRep> {
    const N: usize = 26;
    const V9: usize = 1;
    const D: usize = 10;
    let so9 = build_classical(Family::So, 9)?;
    let spin9 = build_spin(9, Chirality::Full)?;
    let gammas = clifford_gammas(9);
    let c = spin9
        .form()
        .ok_or_else(|| Error::Construction("spin(9) has no invariant form".into()))?
        .matrix
        .clone();
    let g9 = &so9.form().expect("so(9) form").matrix;

    let even: Vec<SparseMat> = (0..so9.dim_g())
        .map(|a| embed(&[(V9, V9, so9.generator(a)), (D, D, spin9.generator(a))], N))
        .collect();

    // odd generator for the spinor basis vector σ, split as P + κ K
    let odd_parts = |sigma: usize| -> (SparseMat, SparseMat) {
        let mut p = vec![(D + sigma, 0, Q::one())];
        for (a, gamma) in gammas.iter().enumerate() {
            for (tau, v) in gamma.transpose().row(sigma) {
                p.push((D + tau, V9 + a, v.clone()));
            }
            // vec(s, t) has component C(γ_a s, t) along e_{a'}
            let gs = gamma.mul_vec(&[(sigma, Q::one())]);
            let row = c.transpose().mul_vec(&gs);
            let aprime = 8 - a;
            for (tau, v) in row {
                p.push((V9 + aprime, D + tau, -v));
            }
        }
        let k: Vec<_> = c.row(sigma).iter().map(|(tau, v)| (0, D + tau, v.clone())).collect();
        (
            SparseMat::from_triplets(N, N, p).expect("in range"),
            SparseMat::from_triplets(N, N, k).expect("in range"),
        )
    };
    let parts: Vec<(SparseMat, SparseMat)> = (0..16).map(odd_parts).collect();

    // [P_s + κK_s, P_t + κK_t] = M0 + κ M1 must lie in the span of `even`
    let mut kappa = None;
    'pairs: for s in 0..16 {
        for t in s + 1..16 {
            let m0 = parts[s].0.commutator(&parts[t].0);
            let m1 = parts[s].0.commutator(&parts[t].1).add(&parts[s].1.commutator(&parts[t].0));
            if m1.is_zero() {
                continue;
            }
            let mut cols = vec![m0.flatten(), m1.flatten()];
            cols.extend(even.iter().map(|e| e.flatten()));
            let mut t3 = Vec::new();
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col {
                    t3.push((*i, j, v.clone()));
                }
            }
            let sys = SparseMat::from_triplets(N * N, cols.len(), t3)?;
            let ker = nullspace(&sys)?;
            let sol: Vec<_> = ker.basis().iter().filter(|v| v[0].0 == 0).collect();
            if let [v] = sol.as_slice() {
                let k1 = v.iter().find(|e| e.0 == 1).map(|e| e.1.clone());
                if let Some(k1) = k1 {
                    kappa = Some(k1 / &v[0].1);
                    break 'pairs;
                }
            }
        }
    }
    let kappa = kappa.ok_or_else(|| Error::Construction("no scaling closes the f4 bracket".into()))?;

    let mut gens = even;
    let cartan = so9.cartan().to_vec();
    for (p, k) in &parts {
        gens.push(p.lin_comb(&Q::one(), k, &kappa));
    }
    let g0 = -Q::one() / &kappa;
    let form_matrix = embed(
        &[
            (0, 0, &SparseMat::from_triplets(1, 1, [(0, 0, g0)])?),
            (V9, V9, g9),
            (D, D, &c),
        ],
        N,
    );
    let form = Form::new(FormKind::Symmetric, form_matrix)?;
    LieRep::new("f4:std", N, gens, cartan, Some(form), false)
}

fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `e7 = sl(8) ⊕ Λ⁴C⁸`. `sl(8)` acts on both summands naturally; `ξ ∈ Λ⁴C⁸`
/// acts by `Λ²(C⁸)* → Λ²C⁸`, `α ↦ ι_α ξ` and `Λ²C⁸ → Λ²(C⁸)*`,
/// `u ↦ ⋆(ξ ∧ u)` with `⋆` taken against `e₁∧…∧e₈`. The bracket of two such
/// generators scales with the product of the two block constants, so these
/// are fixed to 1 and closure is verified.
pub fn build_e7_model() -> Result<LieRep> {
    const H: usize = 28;
    const N: usize = 56;
    let sl8 = build_classical(Family::Sl, 8)?;
    let pairs = power_basis(8, PowerKind::Wedge, 2);
    let pair_index = |a: usize, b: usize| pairs.iter().position(|p| p[0] == a && p[1] == b).expect("pair");
    let mut gens = Vec::new();
    for x in sl8.generators() {
        let w = power_matrix(x, PowerKind::Wedge, &pairs);
        let dual = power_matrix(&x.transpose().scale(&qi(-1)), PowerKind::Wedge, &pairs);
        gens.push(embed(&[(0, 0, &w), (H, H, &dual)], N));
    }
    let cartan = sl8.cartan().to_vec();
    for xi in power_basis(8, PowerKind::Wedge, 4) {
        let mut t = Vec::new();
        // P: e^{ab} ↦ Σ_{cd} (e^a∧e^b∧e^c∧e^d)(ξ) e_{cd}
        // Q: e_{ab} ↦ Σ_{cd} vol-coefficient of ξ∧e_{ab}∧e_{cd} · e^{cd}
        for ab in &pairs {
            for cd in &pairs {
                let four = [ab[0], ab[1], cd[0], cd[1]];
                let mut sorted = four;
                sorted.sort_unstable();
                if sorted.as_slice() == xi.as_slice() {
                    let s = perm_sign(&four);
                    t.push((pair_index(cd[0], cd[1]), H + pair_index(ab[0], ab[1]), qi(s)));
                }
                let mut eight: Vec<usize> = xi.clone();
                eight.extend_from_slice(&four);
                let mut se = eight.clone();
                se.sort_unstable();
                if se == (0..8).collect::<Vec<_>>() {
                    let s = perm_sign(&eight);
                    t.push((H + pair_index(cd[0], cd[1]), pair_index(ab[0], ab[1]), qi(s)));
                }
            }
        }
        gens.push(SparseMat::from_triplets(N, N, t)?);
    }
    let mut w = Vec::new();
    for i in 0..H {
        w.push((i, H + i, qi(1)));
        w.push((H + i, i, qi(-1)));
    }
    let form = Form::new(FormKind::Skew, SparseMat::from_triplets(N, N, w)?)?;
    LieRep::new("e7:std", N, gens, cartan, Some(form), false)
}
