//! Kernels and ranks modulo word-sized primes, and the lift of a modular
//! kernel back to an exact rational one.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::elim::{Echelon, PivotRule};
use super::field::{crt, rational_reconstruct, rational_reconstruct_u64, PrimeField};
use super::sparse::{dot, SparseVec};
use super::Budget;
use crate::error::Result;

pub(crate) type ModRow = Vec<(usize, u64)>;

pub(crate) fn reduce_rows(rows: &[SparseVec], f: &PrimeField) -> Result<Vec<ModRow>> {
    rows.iter()
        .map(|r| {
            let mut out = Vec::with_capacity(r.len());
            for (j, x) in r {
                let v = f.reduce(x)?;
                if v != 0 {
                    out.push((*j, v));
                }
            }
            Ok(out)
        })
        .collect()
}

fn column_counts(rows: &[ModRow], ncols: usize) -> Vec<usize> {
    let mut counts = vec![0; ncols];
    for r in rows {
        for (j, _) in r {
            counts[*j] += 1;
        }
    }
    counts
}

fn by_length<T>(rows: &[Vec<T>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| rows[i].len());
    order
}

pub(crate) fn rank_mod_p(rows: &[SparseVec], ncols: usize, p: u64, budget: &Budget) -> Result<usize> {
    let f = PrimeField::new(p);
    let rows = reduce_rows(rows, &f)?;
    let mut e = Echelon::new(&f, ncols, PivotRule::Markowitz(column_counts(&rows, ncols)));
    for (n, i) in by_length(&rows).into_iter().enumerate() {
        if n % 256 == 255 {
            budget.tick(256)?;
        }
        e.insert(&rows[i]);
        if e.rank() == ncols {
            break;
        }
    }
    Ok(e.rank())
}

/// Kernel mod `p` in reduced echelon normal form.
pub(crate) fn kernel_mod_p(
    rows: &[ModRow],
    ncols: usize,
    p: u64,
    budget: &Budget,
) -> Result<Vec<ModRow>> {
    let f = PrimeField::new(p);
    let mut e = Echelon::new(&f, ncols, PivotRule::Rightmost);
    for (n, i) in by_length(rows).into_iter().enumerate() {
        if n % 256 == 255 {
            budget.tick(256)?;
        }
        e.insert(&rows[i]);
        if e.rank() == ncols {
            return Ok(Vec::new());
        }
    }
    e.back_substitute();
    Ok(e.kernel_basis())
}

/// Exact kernel of one block via modular images. Returns `Ok(None)` when no
/// image could be lifted and verified; the caller then falls back to
/// rational elimination.
pub(crate) fn lift_kernel(
    rows: &[SparseVec],
    ncols: usize,
    primes: &[u64],
    budget: &Budget,
) -> Result<Option<Vec<SparseVec>>> {
    let mut reference: Option<Vec<usize>> = None;
    // (vector, column) -> residues, one per accepted prime
    let mut residues: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    let mut accepted: Vec<u64> = Vec::new();
    let col_rows = column_index(rows, ncols);

    for &p in primes {
        let f = PrimeField::new(p);
        let mrows = match reduce_rows(rows, &f) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let kernel = kernel_mod_p(&mrows, ncols, p, budget)?;
        if kernel.is_empty() {
            // nullity mod p bounds the true nullity from above
            return Ok(Some(Vec::new()));
        }
        let pivots: Vec<usize> = kernel.iter().map(|v| v[0].0).collect();
        match &reference {
            Some(ref_pivots) if ref_pivots.len() < pivots.len() => continue,
            Some(ref_pivots) if *ref_pivots == pivots => {}
            _ => {
                // first image, or a better prime (smaller nullity) than before
                reference = Some(pivots.clone());
                residues.clear();
                accepted.clear();
            }
        }
        let slot = accepted.len();
        for (k, v) in kernel.iter().enumerate() {
            for (j, x) in v {
                residues.entry((k, *j)).or_insert_with(|| vec![0; slot]).push(*x);
            }
        }
        for r in residues.values_mut() {
            r.resize(slot + 1, 0);
        }
        accepted.push(p);

        if let Some(basis) = reconstruct(&residues, &accepted, pivots.len()) {
            if verify(rows, &col_rows, &basis) {
                return Ok(Some(basis));
            }
        }
    }
    Ok(None)
}

fn reconstruct(
    residues: &BTreeMap<(usize, usize), Vec<u64>>,
    primes: &[u64],
    dim: usize,
) -> Option<Vec<SparseVec>> {
    let mut basis: Vec<SparseVec> = vec![Vec::new(); dim];
    for (&(k, j), r) in residues {
        let value = if primes.len() == 1 {
            rational_reconstruct_u64(r[0], primes[0])?
        } else {
            let pairs: Vec<(u64, u64)> = r.iter().copied().zip(primes.iter().copied()).collect();
            let (u, m) = crt(&pairs);
            rational_reconstruct(&u, &m)?
        };
        if !value.is_zero() {
            basis[k].push((j, value));
        }
    }
    Some(basis)
}

fn column_index(rows: &[SparseVec], ncols: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            idx[*j].push(i);
        }
    }
    idx
}

fn verify(rows: &[SparseVec], col_rows: &[Vec<usize>], basis: &[SparseVec]) -> bool {
    basis.iter().all(|v| {
        let mut touched: Vec<usize> = v.iter().flat_map(|(j, _)| col_rows[*j].iter().copied()).collect();
        touched.sort_unstable();
        touched.dedup();
        touched.iter().all(|&i| dot(&rows[i], v).is_zero())
    })
}

/// Exact kernel of one block by rational elimination.
pub(crate) fn rational_kernel(rows: &[SparseVec], ncols: usize, budget: &Budget) -> Result<Vec<SparseVec>> {
    let f = super::field::Rationals;
    let mut e = Echelon::new(&f, ncols, PivotRule::Rightmost);
    for (n, i) in by_length(rows).into_iter().enumerate() {
        if n % 64 == 63 {
            budget.tick(64)?;
        }
        e.insert(&rows[i]);
        if e.rank() == ncols {
            return Ok(Vec::new());
        }
    }
    e.back_substitute();
    Ok(e.kernel_basis())
}

pub(crate) fn rational_rank(rows: &[SparseVec], ncols: usize, budget: &Budget) -> Result<usize> {
    let f = super::field::Rationals;
    let mut counts = vec![0; ncols];
    for r in rows {
        for (j, _) in r {
            counts[*j] += 1;
        }
    }
    let mut e = Echelon::new(&f, ncols, PivotRule::Markowitz(counts));
    for (n, i) in by_length(rows).into_iter().enumerate() {
        if n % 64 == 63 {
            budget.tick(64)?;
        }
        e.insert(&rows[i]);
        if e.rank() == ncols {
            break;
        }
    }
    Ok(e.rank())
}
