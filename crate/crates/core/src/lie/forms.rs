//! Invariant bilinear forms found by solving `Xᵀ G + G X = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::rep::{Form, FormKind, LieRep};
use crate::error::Result;
use crate::linalg::{nullspace, rank, Q, SparseMat, Subspace};

/// Beyond this dimension of V no search is attempted.
pub const DETECT_LIMIT: usize = 128;

/// Index of the unknown `G[a][b]` (with its sign) for a symmetric or skew
/// matrix parametrized by its upper triangle.
fn unknown(kind: FormKind, n: usize, a: usize, b: usize) -> Option<(usize, i64)> {
    let (lo, hi, sign) = if a <= b { (a, b, 1) } else { (b, a, -1) };
    match kind {
        FormKind::Symmetric => Some((lo * n - lo * (lo + 1) / 2 + hi, 1)),
        FormKind::Skew if lo == hi => None,
        FormKind::Skew => Some((lo * (n - 1) - lo * (lo + 1) / 2 + hi - 1, sign)),
    }
}

fn unknown_count(kind: FormKind, n: usize) -> usize {
    match kind {
        FormKind::Symmetric => n * (n + 1) / 2,
        FormKind::Skew => n * n.saturating_sub(1) / 2,
    }
}

/// All invariant forms of the given kind, as vectors over the upper
/// triangle.
pub fn invariant_forms(rep: &LieRep, kind: FormKind) -> Result<Subspace> {
    let n = rep.dim_v();
    let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
    for x in rep.generators() {
        let cols: Vec<Vec<(usize, Q)>> = {
            let t = x.transpose();
            t.row_vecs().to_vec()
        };
        // (XᵀG + GX)[a][b] = Σ_c X[c][a] G[c][b] + Σ_c G[a][c] X[c][b]
        for a in 0..n {
            for b in a..n {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (c, v) in &cols[a] {
                    if let Some((u, s)) = unknown(kind, n, *c, b) {
                        *acc.entry(u).or_insert_with(Q::zero) += v * Q::from_integer(s.into());
                    }
                }
                for (c, v) in &cols[b] {
                    if let Some((u, s)) = unknown(kind, n, a, *c) {
                        *acc.entry(u).or_insert_with(Q::zero) += v * Q::from_integer(s.into());
                    }
                }
                let row: Vec<(usize, Q)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let m = SparseMat::from_rows(unknown_count(kind, n), rows);
    nullspace(&m)
}

fn to_matrix(kind: FormKind, n: usize, v: &[(usize, Q)]) -> SparseMat {
    let coords: BTreeMap<usize, &Q> = v.iter().map(|(j, x)| (*j, x)).collect();
    let mut triplets = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if let Some((u, s)) = unknown(kind, n, a, b) {
                if let Some(x) = coords.get(&u) {
                    triplets.push((a, b, (*x).clone() * Q::from_integer(s.into())));
                }
            }
        }
    }
    SparseMat::from_triplets(n, n, triplets).expect("in range")
}

/// The invariant form of `rep`, when the space of invariant symmetric (or
/// skew) forms is a line spanned by a nondegenerate form.
pub fn detect_form(rep: &LieRep) -> Result<Option<Form>> {
    let n = rep.dim_v();
    if n > DETECT_LIMIT {
        return Ok(None);
    }
    for kind in [FormKind::Symmetric, FormKind::Skew] {
        let sols = invariant_forms(rep, kind)?;
        if sols.dim() == 1 {
            let g = to_matrix(kind, n, &sols.basis()[0]);
            if rank(&g)? == n {
                return Ok(Some(Form::new(kind, g)?));
            }
        }
    }
    Ok(None)
}
