use num_traits::Zero;

use super::elim::{Echelon, PivotRule};
use super::field::{Rationals, Q};
use super::sparse::{SparseMat, SparseVec};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient`, stored as its reduced row echelon basis:
/// leading entries equal to 1, strictly increasing pivots, every pivot column
/// zero in the other basis vectors. Equal subspaces have identical values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|j| vec![(j, Q::from_integer(1.into()))]).collect(),
        }
    }

    /// Span of arbitrary vectors.
    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[(usize, Q)]>,
    {
        let f = Rationals;
        let mut e = Echelon::new(&f, ambient, PivotRule::Leftmost);
        for v in vectors {
            e.insert(v.as_ref());
        }
        e.back_substitute();
        Subspace {
            ambient,
            basis: e.into_sorted_rows(),
        }
    }

    /// Wrap vectors already in normal form. Checked in debug builds.
    pub(crate) fn from_normal_form(ambient: usize, basis: Vec<SparseVec>) -> Self {
        let s = Subspace { ambient, basis };
        debug_assert!(s.is_normal_form());
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v[0].0).collect()
    }

    pub fn is_normal_form(&self) -> bool {
        let pivots = self.pivots();
        if !pivots.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        self.basis.iter().enumerate().all(|(k, v)| {
            v.windows(2).all(|w| w[0].0 < w[1].0)
                && v.iter().all(|(j, x)| *j < self.ambient && !x.is_zero())
                && v[0].1 == Q::from_integer(1.into())
                && pivots
                    .iter()
                    .enumerate()
                    .all(|(l, p)| l == k || v.binary_search_by_key(p, |e| e.0).is_err())
        })
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coords(&self, v: &[(usize, Q)]) -> Option<Vec<Q>> {
        let coefs: Vec<Q> = self
            .basis
            .iter()
            .map(|b| match v.binary_search_by_key(&b[0].0, |e| e.0) {
                Ok(k) => v[k].1.clone(),
                Err(_) => Q::zero(),
            })
            .collect();
        if self.residual(v, &coefs).is_empty() {
            Some(coefs)
        } else {
            None
        }
    }

    fn residual(&self, v: &[(usize, Q)], coefs: &[Q]) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> =
            v.iter().map(|(j, x)| (*j, x.clone())).collect();
        for (b, c) in self.basis.iter().zip(coefs) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in b {
                let e = acc.entry(*j).or_insert_with(Q::zero);
                *e -= c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()),
        ))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // x = Σ α_i a_i lies in `other` iff its residual against other's
        // basis vanishes; the residual is linear in α.
        let zero_coefs = |v: &SparseVec| -> Vec<Q> {
            other
                .basis
                .iter()
                .map(|b| match v.binary_search_by_key(&b[0].0, |e| e.0) {
                    Ok(k) => v[k].1.clone(),
                    Err(_) => Q::zero(),
                })
                .collect()
        };
        let residuals: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|a| other.residual(a, &zero_coefs(a)))
            .collect();
        let mut triplets = Vec::new();
        for (i, r) in residuals.iter().enumerate() {
            for (j, x) in r {
                triplets.push((*j, i, x.clone()));
            }
        }
        let m = SparseMat::from_triplets(self.ambient, self.dim(), triplets)?;
        let alphas = super::nullspace(&m)?;
        Ok(Subspace::span(
            self.ambient,
            alphas.basis.iter().map(|alpha| self.combine(alpha)),
        ))
    }

    /// `Σ α_i b_i` for a sparse coefficient vector `α`.
    pub fn combine(&self, alpha: &[(usize, Q)]) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> = Default::default();
        for (i, c) in alpha {
            for (j, x) in &self.basis[*i] {
                *acc.entry(*j).or_insert_with(Q::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// The basis as the rows of a matrix.
    pub fn to_matrix(&self) -> SparseMat {
        SparseMat::from_rows(self.ambient, self.basis.clone())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}
