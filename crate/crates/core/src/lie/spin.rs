//! Spin representations of `so(m)` on a fermionic Fock space.
//!
//! With `r = ⌊m/2⌋` the space is `Λ(C^r)`, basis vectors indexed by subsets
//! of `{0..r}` (bitmasks, increasing). For the split form with
//! `g(e_i, e_{m−1−i}) = 1` the Clifford generators are
//! `γ(e_i) = a_i†`, `γ(e_{m−1−i}) = 2 a_i` (i < r) and, for odd m,
//! `γ(e_r) = (−1)^N`. Then `σ(u∧w) = ½γ(u)γ(w) − ½g(u,w)` reproduces the
//! structure constants of [`build_classical`](super::classical::build_classical)
//! for `so(m)` generator by generator.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::forms::detect_form;
use super::rep::LieRep;
use crate::error::{Error, Result};
use crate::linalg::{q, qi, SparseMat, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Full,
    Plus,
    Minus,
}

type Op = BTreeMap<(usize, usize), Q>;

fn creation(r: usize, i: usize) -> Op {
    let mut op = Op::new();
    for s in 0..1usize << r {
        if s & (1 << i) == 0 {
            let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            op.insert((s | (1 << i), s), qi(sign));
        }
    }
    op
}

fn annihilation(r: usize, i: usize) -> Op {
    let mut op = Op::new();
    for s in 0..1usize << r {
        if s & (1 << i) != 0 {
            let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            op.insert((s & !(1 << i), s), qi(sign));
        }
    }
    op
}

fn parity(r: usize) -> Op {
    (0..1usize << r)
        .map(|s| ((s, s), qi(if s.count_ones() % 2 == 0 { 1 } else { -1 })))
        .collect()
}

fn compose(a: &Op, b: &Op) -> Op {
    let mut by_row: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
    for ((i, j), v) in b {
        by_row.entry(*i).or_default().push((*j, v));
    }
    let mut out = Op::new();
    for ((i, k), x) in a {
        if let Some(row) = by_row.get(k) {
            for (j, y) in row {
                *out.entry((*i, *j)).or_insert_with(Q::zero) += x * *y;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn to_mat(op: Op, n: usize) -> SparseMat {
    SparseMat::from_triplets(n, n, op.into_iter().map(|((i, j), v)| (i, j, v))).expect("in range")
}

fn gamma_ops(m: usize) -> Vec<Op> {
    let r = m / 2;
    (0..m)
        .map(|a| {
            if a < r {
                creation(r, a)
            } else if m % 2 == 1 && a == r {
                parity(r)
            } else {
                annihilation(r, m - 1 - a).into_iter().map(|(k, v)| (k, v * qi(2))).collect()
            }
        })
        .collect()
}

/// Clifford generators `γ(e_a)` on the full Fock space, in the split basis
/// of `C^m`; `{γ(u), γ(v)} = 2g(u, v)`.
pub fn clifford_gammas(m: usize) -> Vec<SparseMat> {
    let n = 1usize << (m / 2);
    gamma_ops(m).into_iter().map(|op| to_mat(op, n)).collect()
}

/// Spin representation of `so(m)`: full for odd m, half-spin for even m.
pub fn build_spin(m: usize, chirality: Chirality) -> Result<LieRep> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("spin({m}): need m >= 3")));
    }
    match chirality {
        Chirality::Full if m % 2 == 0 => {
            return Err(Error::InvalidParameter(format!(
                "so({m}): the full spinor module needs odd m; use spin+ or spin-"
            )))
        }
        Chirality::Plus | Chirality::Minus if m % 2 == 1 => {
            return Err(Error::InvalidParameter(format!(
                "so({m}): half-spin modules need even m; use spin"
            )))
        }
        _ => {}
    }
    let r = m / 2;
    let prime = |i: usize| m - 1 - i;
    let gammas = gamma_ops(m);

    // basis: masks kept in increasing order
    let keep = |s: usize| match chirality {
        Chirality::Full => true,
        Chirality::Plus => (r - s.count_ones() as usize) % 2 == 0,
        Chirality::Minus => (r - s.count_ones() as usize) % 2 == 1,
    };
    let masks: Vec<usize> = (0..1usize << r).filter(|s| keep(*s)).collect();
    let local: BTreeMap<usize, usize> = masks.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let n = masks.len();

    let mut gens = Vec::new();
    let mut cartan = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut op: Op = compose(&gammas[i], &gammas[j])
                .into_iter()
                .map(|(k, v)| (k, v * q(1, 2)))
                .collect();
            if j == prime(i) {
                cartan.push(gens.len());
                for s in 0..1usize << r {
                    *op.entry((s, s)).or_insert_with(Q::zero) -= q(1, 2);
                }
            }
            let mut triplets = Vec::new();
            for ((a, b), v) in op {
                if v.is_zero() {
                    continue;
                }
                match (local.get(&a), local.get(&b)) {
                    (Some(x), Some(y)) => triplets.push((*x, *y, v)),
                    (None, None) => {}
                    _ => {
                        return Err(Error::Construction(
                            "spin generator does not preserve chirality".into(),
                        ))
                    }
                }
            }
            gens.push(SparseMat::from_triplets(n, n, triplets)?);
        }
    }
    let label = match chirality {
        Chirality::Full => "spin",
        Chirality::Plus => "spin+",
        Chirality::Minus => "spin-",
    };
    let rep = LieRep::new(format!("so({m}):{label}"), n, gens, cartan, None, false)?;
    let form = detect_form(&rep)?;
    rep.with_form(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::classical::{build_classical, Family};
    use crate::lie::rep::FormKind;

    #[test]
    fn clifford_relations() {
        let m = 7;
        let g = clifford_gammas(m);
        for a in 0..m {
            for b in 0..m {
                let anti = g[a].mul(&g[b]).add(&g[b].mul(&g[a]));
                let expect = if b == m - 1 - a { 2 } else { 0 };
                assert_eq!(anti, SparseMat::identity(8).scale(&qi(expect)));
            }
        }
    }

    #[test]
    fn spin7_matches_so7_structure_constants() {
        let s = build_spin(7, Chirality::Full).unwrap();
        let v = build_classical(Family::So, 7).unwrap();
        assert_eq!(s.dim_v(), 8);
        assert_eq!(s.dim_g(), 21);
        for i in 0..21 {
            for j in 0..21 {
                assert_eq!(s.bracket(i, j), v.bracket(i, j));
            }
        }
        assert_eq!(s.form().unwrap().kind, FormKind::Symmetric);
    }

    #[test]
    fn half_spin_dimensions_and_weights() {
        let s = build_spin(10, Chirality::Plus).unwrap();
        assert_eq!((s.dim_v(), s.dim_g()), (16, 45));
        assert!(s.form().is_none());
        for k in 0..16 {
            let minus = s
                .cartan()
                .iter()
                .filter(|h| s.generator(**h).get(k, k) == q(-1, 2))
                .count();
            assert_eq!(minus % 2, 0);
        }
        assert!(build_spin(10, Chirality::Full).is_err());
        assert!(build_spin(9, Chirality::Plus).is_err());
    }
}
