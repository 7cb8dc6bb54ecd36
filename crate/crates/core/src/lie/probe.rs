use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::LieRep;
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::{qi, Rationals, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub enum Probe {
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
    ProbablyIrreducible,
}

/// The smallest invariant subspace containing `v`.
pub fn submodule_generated(rep: &LieRep, v: &[(usize, crate::linalg::Q)]) -> Subspace {
    let n = rep.dim_v();
    let f = Rationals;
    let mut e = Echelon::new(&f, n, PivotRule::Leftmost);
    let mut frontier: Vec<SparseVec> = Vec::new();
    if e.insert(v) {
        frontier.push(v.to_vec());
    }
    while let Some(u) = frontier.pop() {
        if e.rank() == n {
            break;
        }
        for x in rep.generators() {
            let w = x.mul_vec(&u);
            if !w.is_empty() && e.insert(&w) {
                frontier.push(w);
            }
        }
    }
    e.back_substitute();
    Subspace::span(n, e.into_sorted_rows())
}

/// Looks for a proper invariant subspace generated by a basis vector or by
/// one of `trials` random vectors. A `Reducible` answer is always correct.
pub fn irreducibility_probe(rep: &LieRep, trials: usize) -> Probe {
    let n = rep.dim_v();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let seeds = (0..n).map(|k| vec![(k, qi(1))]).chain((0..trials).map(|_| {
        (0..n)
            .map(|k| (k, qi(rng.gen_range(-9..=9))))
            .filter(|(_, x)| *x != qi(0))
            .collect::<SparseVec>()
    }));
    for v in seeds {
        if v.is_empty() {
            continue;
        }
        let s = submodule_generated(rep, &v);
        if s.dim() < n {
            return Probe::Reducible(s);
        }
    }
    Probe::ProbablyIrreducible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::classical::{build_classical, Family};
    use crate::lie::ops::{power_rep, PowerKind};
    use crate::linalg::SparseMat;

    #[test]
    fn examples() {
        let sl2 = build_classical(Family::Sl, 2).unwrap();
        assert_eq!(irreducibility_probe(&sl2, 3), Probe::ProbablyIrreducible);
        let so3 = build_classical(Family::So, 3).unwrap();
        let s2 = power_rep(&so3, PowerKind::Sym, 2).unwrap();
        match irreducibility_probe(&s2, 3) {
            Probe::Reducible(s) => assert!(s.dim() == 1 || s.dim() == 5),
            other => panic!("{other:?}"),
        }
        // sl(2) on C² ⊕ C²
        let gens: Vec<SparseMat> = sl2
            .generators()
            .iter()
            .map(|x| {
                let mut t: Vec<_> = x.entries().map(|(i, j, v)| (i, j, v.clone())).collect();
                t.extend(x.entries().map(|(i, j, v)| (i + 2, j + 2, v.clone())));
                SparseMat::from_triplets(4, 4, t).unwrap()
            })
            .collect();
        let sum = LieRep::new("sum", 4, gens, vec![sl2.cartan()[0]], None, false).unwrap();
        assert!(matches!(irreducibility_probe(&sum, 0), Probe::Reducible(_)));
    }
}
