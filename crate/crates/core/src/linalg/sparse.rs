//! Row-major sparse matrices over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::field::{qi, Q};
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices
/// and no stored zeros.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i].push((i, Q::one()));
        }
        m
    }

    /// Build from `(row, col, value)` triplets. Duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Q)>,
    {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if v.is_zero() {
                continue;
            }
            *acc[r].entry(c).or_insert_with(Q::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMat { rows, cols, data })
    }

    /// Build from already-normalized rows (sorted, no zeros, in range).
    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| is_normalized(r, cols)));
        SparseMat {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_dense_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| qi(v)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> SparseMat {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, s: &Q) -> SparseMat {
        if s.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.lin_comb(&Q::one(), other, &Q::one())
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.lin_comb(&Q::one(), other, &-Q::one())
    }

    /// `a * self + b * other`
    pub fn lin_comb(&self, a: &Q, other: &SparseMat, b: &Q) -> SparseMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| vec_lin_comb(a, x, b, y))
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Q::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &SparseMat) -> SparseMat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[(usize, Q)]) -> SparseVec {
        // column-indexed lookup of v
        let mut dense: BTreeMap<usize, &Q> = BTreeMap::new();
        for (j, x) in v {
            dense.insert(*j, x);
        }
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut s = Q::zero();
            for (j, a) in row {
                if let Some(x) = dense.get(j) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    /// Dense-vector product `self * v`.
    pub fn mul_dense(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut s = Q::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        s += a * &v[*j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Frobenius-type pairing `tr(self * other)`.
    pub fn trace_product(&self, other: &SparseMat) -> Q {
        let mut t = Q::zero();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                let b = other.get(*k, i);
                if !b.is_zero() {
                    t += a * b;
                }
            }
        }
        t
    }

    /// Flatten into a sparse vector of length `rows*cols` (row-major).
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out.push((i * self.cols + j, v.clone()));
            }
        }
        out
    }

    /// Partition rows and columns into connected components of the
    /// row–column incidence graph. Columns with no entries come back as
    /// single-column blocks with no rows; empty rows are dropped.
    pub fn components(&self) -> Vec<Block> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, row) in self.data.iter().enumerate() {
            for (j, _) in row {
                let a = find(&mut parent, i);
                let b = find(&mut parent, self.rows + j);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut by_root: BTreeMap<usize, Block> = BTreeMap::new();
        for j in 0..self.cols {
            let r = find(&mut parent, self.rows + j);
            by_root.entry(r).or_default().cols.push(j);
        }
        for i in 0..self.rows {
            if self.data[i].is_empty() {
                continue;
            }
            let r = find(&mut parent, i);
            by_root.entry(r).or_default().rows.push(i);
        }
        let mut blocks: Vec<Block> = by_root.into_values().collect();
        blocks.sort_by_key(|b| b.cols.first().copied().unwrap_or(usize::MAX));
        blocks
    }

    /// Restrict to a block, re-indexing columns locally.
    pub fn block_rows(&self, block: &Block) -> Vec<SparseVec> {
        let local: BTreeMap<usize, usize> =
            block.cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        block
            .rows
            .iter()
            .map(|&i| {
                let mut r: SparseVec = self.data[i]
                    .iter()
                    .map(|(j, v)| (local[j], v.clone()))
                    .collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect()
    }

    /// Stack rows of `other` under `self`.
    pub fn vstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }
}

/// Rows and columns of one connected component.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn is_normalized(v: &[(usize, Q)], len: usize) -> bool {
    v.windows(2).all(|w| w[0].0 < w[1].0) && v.iter().all(|(j, x)| *j < len && !x.is_zero())
}

/// `a*x + b*y` for sparse vectors.
pub fn vec_lin_comb(a: &Q, x: &[(usize, Q)], b: &Q, y: &[(usize, Q)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let r = (x[i].0, a * &x[i].1);
            i += 1;
            r
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let r = (y[j].0, b * &y[j].1);
            j += 1;
            r
        } else {
            let r = (x[i].0, a * &x[i].1 + b * &y[j].1);
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

/// Sort, merge duplicates and drop zeros.
pub fn normalize_vec(mut v: Vec<(usize, Q)>) -> SparseVec {
    v.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y += x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn dot(x: &[(usize, Q)], y: &[(usize, Q)]) -> Q {
    let (mut i, mut j) = (0, 0);
    let mut s = Q::zero();
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &x[i].1 * &y[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

pub fn to_dense_vec(v: &[(usize, Q)], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (j, x) in v {
        out[*j] = x.clone();
    }
    out
}

pub fn from_dense_vec(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}
