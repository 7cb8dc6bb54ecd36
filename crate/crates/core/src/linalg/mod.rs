//! Exact sparse linear algebra over the rationals, with multi-modular
//! acceleration.
//!
//! Every matrix is first split into the connected components of its
//! row–column incidence graph; each component is solved on its own (and in
//! parallel). For curvature systems the components are the weight spaces, so
//! this is where most of the speed comes from.

pub mod elim;
pub mod field;
mod modular;
pub mod sparse;
pub mod subspace;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use field::{is_prime, q, qi, PrimeField, Rationals, DEFAULT_PRIMES, Q};
pub use sparse::{SparseMat, SparseVec};
pub use subspace::Subspace;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Rational,
    Modular,
    /// Rational below the modular threshold, modular above it.
    Auto,
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arithmetic::Rational => "rational",
            Arithmetic::Modular => "modular",
            Arithmetic::Auto => "auto",
        })
    }
}

impl FromStr for Arithmetic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Arithmetic::Rational),
            "modular" => Ok(Arithmetic::Modular),
            "auto" => Ok(Arithmetic::Auto),
            other => Err(Error::InvalidParameter(format!("unknown arithmetic mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub arithmetic: Arithmetic,
    pub primes: Vec<u64>,
    /// Row count above which `Auto` switches to modular arithmetic.
    pub modular_threshold: usize,
    pub max_rows: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            arithmetic: Arithmetic::Auto,
            primes: DEFAULT_PRIMES.to_vec(),
            modular_threshold: 100_000,
            max_rows: None,
            time_limit: None,
        }
    }
}

impl SolveOptions {
    pub fn rational() -> Self {
        SolveOptions {
            arithmetic: Arithmetic::Rational,
            ..Default::default()
        }
    }

    pub fn modular() -> Self {
        SolveOptions {
            arithmetic: Arithmetic::Modular,
            ..Default::default()
        }
    }

    /// The concrete mode used for a matrix with `rows` rows.
    pub fn resolve(&self, rows: usize) -> Arithmetic {
        match self.arithmetic {
            Arithmetic::Auto if rows > self.modular_threshold => Arithmetic::Modular,
            Arithmetic::Auto => Arithmetic::Rational,
            m => m,
        }
    }

    pub fn budget(&self, stage: &str, total: usize) -> Budget {
        Budget {
            stage: stage.to_string(),
            deadline: self.time_limit.map(|d| Instant::now() + d),
            done: AtomicUsize::new(0),
            total,
        }
    }

    fn check_rows(&self, stage: &str, m: &SparseMat) -> Result<()> {
        match self.max_rows {
            Some(cap) if m.rows() > cap => Err(Error::ResourceLimit {
                stage: stage.to_string(),
                progress: format!("matrix has {} rows, cap is {cap}; nothing eliminated", m.rows()),
            }),
            _ => Ok(()),
        }
    }
}

/// Shared progress counter and deadline for one elimination.
#[derive(Debug)]
pub struct Budget {
    stage: String,
    deadline: Option<Instant>,
    done: AtomicUsize,
    total: usize,
}

impl Budget {
    pub fn unlimited(stage: &str) -> Self {
        Budget {
            stage: stage.to_string(),
            deadline: None,
            done: AtomicUsize::new(0),
            total: 0,
        }
    }

    pub fn tick(&self, rows: usize) -> Result<()> {
        let done = self.done.fetch_add(rows, Ordering::Relaxed) + rows;
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::ResourceLimit {
                stage: self.stage.clone(),
                progress: format!("time limit reached after eliminating about {done} of {} rows", self.total),
            }),
            _ => Ok(()),
        }
    }
}

/// A kernel together with how it was obtained.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub space: Subspace,
    pub arithmetic: Arithmetic,
    pub blocks: usize,
    /// Blocks where no modular image could be lifted and rational
    /// elimination was used instead.
    pub fallback_blocks: usize,
}

/// Solution space of `m·x = 0` in normal form.
pub fn nullspace(m: &SparseMat) -> Result<Subspace> {
    Ok(nullspace_with(m, &SolveOptions::default())?.space)
}

pub fn nullspace_with(m: &SparseMat, opts: &SolveOptions) -> Result<Kernel> {
    opts.check_rows("nullspace", m)?;
    let mode = opts.resolve(m.rows());
    let budget = opts.budget("nullspace", m.rows());
    let blocks = m.components();
    let results: Vec<(Vec<SparseVec>, bool)> = blocks
        .par_iter()
        .map(|b| -> Result<(Vec<SparseVec>, bool)> {
            let ncols = b.cols.len();
            let rows = m.block_rows(b);
            let (local, fallback) = if rows.is_empty() {
                ((0..ncols).map(|j| vec![(j, qi(1))]).collect(), false)
            } else if mode == Arithmetic::Modular {
                match modular::lift_kernel(&rows, ncols, &opts.primes, &budget)? {
                    Some(k) => (k, false),
                    None => (modular::rational_kernel(&rows, ncols, &budget)?, true),
                }
            } else {
                (modular::rational_kernel(&rows, ncols, &budget)?, false)
            };
            let global = local
                .into_iter()
                .map(|v| v.into_iter().map(|(j, x)| (b.cols[j], x)).collect())
                .collect();
            Ok((global, fallback))
        })
        .collect::<Result<_>>()?;
    let fallback_blocks = results.iter().filter(|r| r.1).count();
    let mut basis: Vec<SparseVec> = results.into_iter().flat_map(|r| r.0).collect();
    basis.sort_by_key(|v| v[0].0);
    Ok(Kernel {
        space: Subspace::from_normal_form(m.cols(), basis),
        arithmetic: mode,
        blocks: blocks.len(),
        fallback_blocks,
    })
}

/// Exact rank over Q.
pub fn rank(m: &SparseMat) -> Result<usize> {
    rank_with(m, &SolveOptions::rational())
}

/// Rank in the configured arithmetic. In modular mode this is the
/// multi-prime rank, escalated to rational elimination if the primes
/// disagree.
pub fn rank_with(m: &SparseMat, opts: &SolveOptions) -> Result<usize> {
    opts.check_rows("rank", m)?;
    match opts.resolve(m.rows()) {
        Arithmetic::Modular => {
            let v = verified_rank(m, &opts.primes)?;
            if v.status == RankStatus::ModularDisagreement {
                rational_rank(m, &opts.budget("rank", m.rows()))
            } else {
                Ok(v.rank)
            }
        }
        _ => rational_rank(m, &opts.budget("rank", m.rows())),
    }
}

fn rational_rank(m: &SparseMat, budget: &Budget) -> Result<usize> {
    let blocks = m.components();
    let ranks: Vec<usize> = blocks
        .par_iter()
        .map(|b| modular::rational_rank(&m.block_rows(b), b.cols.len(), budget))
        .collect::<Result<_>>()?;
    Ok(ranks.into_iter().sum())
}

/// Span of the columns of `m`, in normal form.
pub fn column_space(m: &SparseMat) -> Subspace {
    let t = m.transpose();
    Subspace::span(m.rows(), t.row_vecs())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Inverse of a square matrix by Gauss–Jordan elimination, `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| qi(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankStatus {
    ModularAgreed,
    Certified,
    ModularDisagreement,
}

impl fmt::Display for RankStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankStatus::ModularAgreed => "modular-agreed",
            RankStatus::Certified => "certified",
            RankStatus::ModularDisagreement => "modular-disagreement",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedRank {
    pub rank: usize,
    pub status: RankStatus,
    pub per_prime: Vec<(u64, usize)>,
}

/// Rank modulo each prime. Agreement is reported as `ModularAgreed`;
/// otherwise the maximum is returned with `ModularDisagreement`.
pub fn verified_rank(m: &SparseMat, primes: &[u64]) -> Result<VerifiedRank> {
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::TooFewPrimes(distinct.len()));
    }
    if let Some(p) = distinct.iter().find(|p| !is_prime(**p) || **p >= 1 << 63) {
        return Err(Error::InvalidParameter(format!("{p} is not a supported prime")));
    }
    for p in primes {
        let f = PrimeField::new(*p);
        for (_, _, x) in m.entries() {
            f.reduce(x)?;
        }
    }
    let budget = Budget::unlimited("verified rank");
    let blocks = m.components();
    let per_prime: Vec<(u64, usize)> = primes
        .par_iter()
        .map(|&p| -> Result<(u64, usize)> {
            let r: usize = blocks
                .par_iter()
                .map(|b| modular::rank_mod_p(&m.block_rows(b), b.cols.len(), p, &budget))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            Ok((p, r))
        })
        .collect::<Result<_>>()?;
    let max = per_prime.iter().map(|x| x.1).max().unwrap_or(0);
    let agreed = per_prime.iter().all(|x| x.1 == max);
    Ok(VerifiedRank {
        rank: max,
        status: if agreed {
            RankStatus::ModularAgreed
        } else {
            RankStatus::ModularDisagreement
        },
        per_prime,
    })
}

/// [`verified_rank`] followed by an exact rational pass; upgrades the status
/// to `Certified` and returns the exact rank.
pub fn certified_rank(m: &SparseMat, primes: &[u64]) -> Result<VerifiedRank> {
    let mut v = verified_rank(m, primes)?;
    v.rank = rational_rank(m, &Budget::unlimited("rank confirmation"))?;
    v.status = RankStatus::Certified;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_nullspace_examples() {
        assert_eq!(nullspace(&SparseMat::zero(3, 5)).unwrap(), Subspace::full(5));
        assert_eq!(nullspace(&SparseMat::identity(4)).unwrap(), Subspace::zero(4));
        let m = SparseMat::from_dense_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&m).unwrap();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[(0, qi(-2)), (1, qi(1))]));
        assert!(k.contains(&[(0, qi(-3)), (2, qi(1))]));
    }

    #[test]
    fn modular_and_rational_kernels_agree() {
        let m = SparseMat::from_dense_i64(&[&[1, 2, 0, 3, 0], &[0, 0, 5, 1, 0], &[2, 4, 5, 7, 0]]);
        let a = nullspace_with(&m, &SolveOptions::rational()).unwrap();
        let b = nullspace_with(&m, &SolveOptions::modular()).unwrap();
        assert_eq!(a.space, b.space);
        assert_eq!(a.space.dim(), 3);
    }

    #[test]
    fn spec_rank_and_image_examples() {
        assert_eq!(rank(&SparseMat::zero(2, 2)).unwrap(), 0);
        assert_eq!(rank(&SparseMat::identity(5)).unwrap(), 5);
        assert_eq!(rank(&SparseMat::from_dense_i64(&[&[1, 2], &[2, 4]])).unwrap(), 1);
        assert_eq!(column_space(&SparseMat::identity(3)), Subspace::full(3));
        assert_eq!(column_space(&SparseMat::zero(3, 2)), Subspace::zero(3));
        let m = SparseMat::from_dense_i64(&[&[1, 1], &[0, 0], &[2, 2]]);
        assert_eq!(column_space(&m), Subspace::span(3, [vec![(0, qi(1)), (2, qi(2))]]));
    }

    #[test]
    fn verified_rank_policy() {
        let p = &DEFAULT_PRIMES[..2];
        let v = verified_rank(&SparseMat::identity(6), p).unwrap();
        assert_eq!((v.rank, v.status), (6, RankStatus::ModularAgreed));
        let bad = SparseMat::from_triplets(1, 1, [(0, 0, q(1, 7))]).unwrap();
        assert!(matches!(
            verified_rank(&bad, &[7, 11]),
            Err(Error::PrimeDividesDenominator(7))
        ));
        assert!(matches!(verified_rank(&bad, &[11, 11]), Err(Error::TooFewPrimes(1))));
        // rank 2 over Q, rank 1 mod 5
        let m = SparseMat::from_dense_i64(&[&[1, 2], &[3, 11]]);
        let v = verified_rank(&m, &[5, 7]).unwrap();
        assert_eq!((v.rank, v.status), (2, RankStatus::ModularDisagreement));
        assert_eq!(certified_rank(&m, &[5, 7]).unwrap().status, RankStatus::Certified);
    }

    #[test]
    fn row_cap_is_enforced() {
        let opts = SolveOptions {
            max_rows: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            nullspace_with(&SparseMat::identity(3), &opts),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
