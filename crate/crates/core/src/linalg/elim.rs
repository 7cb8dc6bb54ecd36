//! Sparse row elimination over an arbitrary [`Field`].
//!
//! Rows are inserted one at a time and fully reduced against the pivot rows
//! already present (left-looking elimination). The pivot of a new row is
//! picked by a [`PivotRule`]; after [`Echelon::back_substitute`] every pivot
//! row is zero in every other pivot column.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub enum PivotRule {
    /// Leading entry. Gives the reduced row echelon form of the row space.
    Leftmost,
    /// Trailing entry. Free columns are then exactly the pivots of the
    /// kernel's reduced echelon form.
    Rightmost,
    /// Entry whose column has the fewest nonzeros in the input (ties: lowest
    /// column). Limits fill-in; used when only the rank is needed.
    Markowitz(Vec<usize>),
}

pub struct Echelon<'f, F: Field> {
    field: &'f F,
    ncols: usize,
    rule: PivotRule,
    rows: Vec<(usize, Vec<(usize, F::Elem)>)>,
    slot: Vec<usize>,
    acc: Vec<F::Elem>,
    live: Vec<bool>,
    touched: Vec<usize>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F, ncols: usize, rule: PivotRule) -> Self {
        Echelon {
            field,
            ncols,
            rule,
            rows: Vec::new(),
            slot: vec![NONE; ncols],
            acc: vec![field.zero(); ncols],
            live: vec![false; ncols],
            touched: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Pivot rows in insertion order, as `(pivot column, row)`.
    pub fn pivot_rows(&self) -> &[(usize, Vec<(usize, F::Elem)>)] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.slot[col] != NONE
    }

    fn touch(&mut self, j: usize) {
        if !self.live[j] {
            self.live[j] = true;
            self.touched.push(j);
        }
    }

    fn drain(&mut self) -> Vec<(usize, F::Elem)> {
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        let mut out = Vec::with_capacity(touched.len());
        for &j in &touched {
            self.live[j] = false;
            let v = std::mem::replace(&mut self.acc[j], self.field.zero());
            if !self.field.is_zero(&v) {
                out.push((j, v));
            }
        }
        touched.clear();
        self.touched = touched;
        out
    }

    /// Reduce `row` against all pivot rows; returns the residual.
    pub fn reduce(&mut self, row: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
        let f = self.field;
        let mut heap = BinaryHeap::new();
        for (j, v) in row {
            debug_assert!(*j < self.ncols);
            self.touch(*j);
            self.acc[*j] = f.add(&self.acc[*j], v);
            if self.slot[*j] != NONE {
                heap.push(Reverse(self.slot[*j]));
            }
        }
        while let Some(Reverse(k)) = heap.pop() {
            let pc = self.rows[k].0;
            if !self.live[pc] || f.is_zero(&self.acc[pc]) {
                continue;
            }
            let coef = self.acc[pc].clone();
            let rows = &self.rows;
            for (j, v) in &rows[k].1 {
                let j = *j;
                if !self.live[j] {
                    self.live[j] = true;
                    self.touched.push(j);
                }
                f.sub_mul_assign(&mut self.acc[j], &coef, v);
                let s = self.slot[j];
                if s != NONE && s != k {
                    heap.push(Reverse(s));
                }
            }
        }
        self.drain()
    }

    /// Insert a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> bool {
        let reduced = self.reduce(row);
        if reduced.is_empty() {
            return false;
        }
        let pos = match &self.rule {
            PivotRule::Leftmost => 0,
            PivotRule::Rightmost => reduced.len() - 1,
            PivotRule::Markowitz(counts) => {
                let mut best = 0;
                for (p, (j, _)) in reduced.iter().enumerate() {
                    if counts[*j] < counts[reduced[best].0] {
                        best = p;
                    }
                }
                best
            }
        };
        let pc = reduced[pos].0;
        let inv = self.field.inv(&reduced[pos].1);
        let row: Vec<_> = reduced
            .into_iter()
            .map(|(j, v)| {
                if j == pc {
                    (j, self.field.one())
                } else {
                    (j, self.field.mul(&v, &inv))
                }
            })
            .collect();
        self.slot[pc] = self.rows.len();
        self.rows.push((pc, row));
        true
    }

    /// Clear every pivot column from every other pivot row.
    pub fn back_substitute(&mut self) {
        let f = self.field;
        for k in (0..self.rows.len()).rev() {
            let needs = self.rows[k]
                .1
                .iter()
                .any(|(j, _)| self.slot[*j] != NONE && self.slot[*j] != k);
            if !needs {
                continue;
            }
            let row = std::mem::take(&mut self.rows[k].1);
            for (j, v) in &row {
                self.touch(*j);
                self.acc[*j] = v.clone();
            }
            for (j, _) in &row {
                let s = self.slot[*j];
                if s == NONE || s == k {
                    continue;
                }
                let coef = self.acc[*j].clone();
                if f.is_zero(&coef) {
                    continue;
                }
                let rows = &self.rows;
                for (jj, vv) in &rows[s].1 {
                    let jj = *jj;
                    if !self.live[jj] {
                        self.live[jj] = true;
                        self.touched.push(jj);
                    }
                    f.sub_mul_assign(&mut self.acc[jj], &coef, vv);
                }
            }
            self.rows[k].1 = self.drain();
        }
    }

    /// Kernel basis of the inserted rows. Requires the `Rightmost` rule and a
    /// prior [`back_substitute`](Self::back_substitute); the result is then
    /// the kernel in reduced echelon normal form, sorted by pivot.
    pub fn kernel_basis(&self) -> Vec<Vec<(usize, F::Elem)>> {
        debug_assert!(matches!(self.rule, PivotRule::Rightmost));
        let mut kernel: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.ncols];
        for j in 0..self.ncols {
            if self.slot[j] == NONE {
                kernel[j].push((j, self.field.one()));
            }
        }
        for (pc, row) in &self.rows {
            for (j, v) in row {
                if j != pc {
                    kernel[*j].push((*pc, self.field.neg(v)));
                }
            }
        }
        kernel
            .into_iter()
            .enumerate()
            .filter(|(j, _)| self.slot[*j] == NONE)
            .map(|(_, mut v)| {
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }

    /// Pivot rows sorted by pivot column (reduced echelon form when the rule
    /// is `Leftmost` and back substitution has run).
    pub fn into_sorted_rows(self) -> Vec<Vec<(usize, F::Elem)>> {
        let mut rows = self.rows;
        rows.sort_by_key(|(pc, _)| *pc);
        rows.into_iter().map(|(_, r)| r).collect()
    }
}
