//! Skew-curvature tensors: `R̄(g) = ker(∂: ⊙²V*⊗g → ⊙³V*⊗V)`.
//!
//! Coordinates on `⊙²V*⊗g`: index `(i ≤ j, a)` at `pair(i, j)·dim g + a`,
//! meaning `R(e_i, e_j) = Σ_a R_{(ij),a} X_a`. Rows of `∂` are indexed by
//! `(i ≤ j ≤ k, l)` at `triple(i, j, k)·dim V + l` and hold the coefficient of
//! `e_l` in `R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j`, evaluated
//! literally on repeated indices. Multisets are ordered lexicographically.

mod families;
mod weak;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::LieRep;
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::sparse::normalize_vec;
use crate::linalg::{nullspace, nullspace_with, Arithmetic, Rationals, SolveOptions, SparseMat, SparseVec, Subspace, Q};

pub use families::{
    family_r_a, family_r_tau_spe, family_r_tau_tensor, spe_so_constrained_dim, spe_value, tau_tensor_rep, RAFamily, SpeTau,
};
pub use weak::{slice as weak_slice, weak_space, weak_space_with, WeakSpace};

/// Index arithmetic for multisets of `{0..n}` of size 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub d: usize,
}

fn pairs_of(m: usize) -> usize {
    m * (m + 1) / 2
}

fn triples_of(m: usize) -> usize {
    m * (m + 1) * (m + 2) / 6
}

impl Layout {
    pub fn new(rep: &LieRep) -> Self {
        Layout {
            n: rep.dim_v(),
            d: rep.dim_g(),
        }
    }

    pub fn pairs(&self) -> usize {
        pairs_of(self.n)
    }

    pub fn triples(&self) -> usize {
        triples_of(self.n)
    }

    /// Position of `{i, j}`; argument order is irrelevant.
    pub fn pair(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        pairs_of(self.n) - pairs_of(self.n - i) + (j - i)
    }

    pub fn unpair(&self, p: usize) -> (usize, usize) {
        let mut i = 0;
        let mut start = 0;
        while start + (self.n - i) <= p {
            start += self.n - i;
            i += 1;
        }
        (i, i + p - start)
    }

    /// Position of the multiset `{i, j, k}`.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> usize {
        let mut t = [i, j, k];
        t.sort_unstable();
        let [i, j, k] = t;
        let m = self.n - i;
        triples_of(self.n) - triples_of(m) + pairs_of(m) - pairs_of(m - (j - i)) + (k - j)
    }

    /// Column of `(i ≤ j, a)` in `⊙²V*⊗g`.
    pub fn col(&self, i: usize, j: usize, a: usize) -> usize {
        self.pair(i, j) * self.d + a
    }

    pub fn cols(&self) -> usize {
        self.pairs() * self.d
    }

    pub fn rows(&self) -> usize {
        self.triples() * self.n
    }
}

fn multiplicity(x: usize, set: [usize; 3]) -> i64 {
    set.iter().filter(|&&y| y == x).count() as i64
}

/// The symmetrisation map `∂` in the fixed conventions.
pub fn build_partial(rep: &LieRep) -> SparseMat {
    let lay = Layout::new(rep);
    let cols: Vec<SparseMat> = rep.generators().iter().map(|x| x.transpose()).collect();
    let triplets: Vec<(usize, usize, Q)> = (0..lay.pairs())
        .into_par_iter()
        .flat_map_iter(|pq| {
            let (p, q) = lay.unpair(pq);
            let mut t = Vec::new();
            for (a, xt) in cols.iter().enumerate() {
                let col = pq * lay.d + a;
                for r in 0..lay.n {
                    let mult = multiplicity(r, [p, q, r]);
                    let base = lay.triple(p, q, r) * lay.n;
                    for (l, v) in xt.row(r) {
                        t.push((base + l, col, v * Q::from_integer(mult.into())));
                    }
                }
            }
            t
        })
        .collect();
    SparseMat::from_triplets(lay.rows(), lay.cols(), triplets).expect("indices in range")
}

/// `R̄(g)` together with its coordinate convention.
#[derive(Debug, Clone)]
pub struct CurvatureSpace {
    pub rep: String,
    pub layout: Layout,
    pub basis: Subspace,
    pub arithmetic: Arithmetic,
}

/// A single tensor in the [`CurvatureSpace`] coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    pub rep: String,
    pub coords: SparseVec,
}

impl CurvatureSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn tensors(&self) -> impl Iterator<Item = CurvatureTensor> + '_ {
        self.basis.basis().iter().map(|v| CurvatureTensor {
            rep: self.rep.clone(),
            coords: v.clone(),
        })
    }
}

/// Values `R(e_i, e_j)` of a tensor, keyed by pair index, as g-coordinates.
pub fn values(lay: &Layout, r: &[(usize, Q)]) -> BTreeMap<usize, SparseVec> {
    let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (c, v) in r {
        out.entry(c / lay.d).or_default().push((c % lay.d, v.clone()));
    }
    out
}

pub fn skew_curvature_space(rep: &LieRep) -> Result<CurvatureSpace> {
    skew_curvature_space_with(rep, &SolveOptions::default())
}

pub fn skew_curvature_space_with(rep: &LieRep, opts: &SolveOptions) -> Result<CurvatureSpace> {
    let m = build_partial(rep);
    let k = nullspace_with(&m, opts).map_err(|e| stage(e, "skew-curvature"))?;
    Ok(CurvatureSpace {
        rep: rep.name().to_string(),
        layout: Layout::new(rep),
        basis: k.space,
        arithmetic: k.arithmetic,
    })
}

fn stage(e: Error, name: &str) -> Error {
    match e {
        Error::ResourceLimit { progress, .. } => Error::ResourceLimit {
            stage: name.to_string(),
            progress,
        },
        e => e,
    }
}

/// `∂·R`: zero exactly when `R` satisfies the Bianchi identity.
pub fn bianchi_residual(partial: &SparseMat, r: &[(usize, Q)]) -> SparseVec {
    partial.mul_vec(r)
}

/// `L(R̄(g))`: span of all values `R(e_i, e_j)` in g-coordinates.
pub fn curvature_span(cs: &CurvatureSpace) -> Subspace {
    let f = Rationals;
    let d = cs.layout.d;
    let mut e = Echelon::new(&f, d, PivotRule::Leftmost);
    'outer: for r in cs.basis.basis() {
        for v in values(&cs.layout, r).into_values() {
            e.insert(&v);
            if e.rank() == d {
                break 'outer;
            }
        }
    }
    e.back_substitute();
    Subspace::span(d, e.into_sorted_rows())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBerger {
    pub is_skew_berger: bool,
    pub dim_l: usize,
    /// A generator outside `L(R̄(g))` when the test fails.
    pub outside: Option<usize>,
}

pub fn is_skew_berger(cs: &CurvatureSpace) -> SkewBerger {
    let l = curvature_span(cs);
    let outside = (0..cs.layout.d).find(|&a| !l.contains(&[(a, Q::one())]));
    SkewBerger {
        is_skew_berger: outside.is_none(),
        dim_l: l.dim(),
        outside,
    }
}

/// `A·R = R_A`, `R_A(x, y) = [A, R(x, y)] − R(Ax, y) − R(x, Ay)`, with `A`
/// the generator `a`.
pub fn act(rep: &LieRep, a: usize, r: &[(usize, Q)]) -> SparseVec {
    let lay = Layout::new(rep);
    let vals = values(&lay, r);
    let at = rep.generator(a).transpose();
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    let mut add = |pair: usize, v: &SparseVec, s: &Q| {
        for (b, x) in v {
            *out.entry(pair * lay.d + b).or_insert_with(Q::zero) += x * s;
        }
    };
    let one = Q::one();
    for (&p, v) in &vals {
        // bracket term
        let mut br: BTreeMap<usize, Q> = BTreeMap::new();
        for (b, x) in v {
            for (c, y) in rep.bracket(a, *b) {
                *br.entry(*c).or_insert_with(Q::zero) += x * y;
            }
        }
        add(p, &br.into_iter().collect(), &one);
    }
    for i in 0..lay.n {
        for j in i..lay.n {
            let p = lay.pair(i, j);
            for (k, x) in at.row(i) {
                if let Some(v) = vals.get(&lay.pair(*k, j)) {
                    add(p, v, &-x.clone());
                }
            }
            for (k, x) in at.row(j) {
                if let Some(v) = vals.get(&lay.pair(i, *k)) {
                    add(p, v, &-x.clone());
                }
            }
        }
    }
    normalize_vec(out.into_iter().collect())
}

/// The induced action on `⊙³V*⊗V`:
/// `(A·T)(x,y,z) = A T(x,y,z) − T(Ax,y,z) − T(x,Ay,z) − T(x,y,Az)`.
pub fn act_sym3(rep: &LieRep, a: usize, t: &[(usize, Q)]) -> SparseVec {
    let lay = Layout::new(rep);
    let n = lay.n;
    let x = rep.generator(a);
    let xt = x.transpose();
    let mut vals: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (c, v) in t {
        vals.entry(c / n).or_default().push((c % n, v.clone()));
    }
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let row = lay.triple(i, j, k);
                if let Some(v) = vals.get(&row) {
                    for (l, y) in x.mul_vec(v) {
                        *out.entry(row * n + l).or_insert_with(Q::zero) += y;
                    }
                }
                let slots = [i, j, k];
                for s in 0..3 {
                    for (m, y) in xt.row(slots[s]) {
                        let mut moved = slots;
                        moved[s] = *m;
                        if let Some(v) = vals.get(&lay.triple(moved[0], moved[1], moved[2])) {
                            for (l, z) in v {
                                *out.entry(row * n + l).or_insert_with(Q::zero) -= y * z;
                            }
                        }
                    }
                }
            }
        }
    }
    normalize_vec(out.into_iter().collect())
}

/// Columns of the unknowns `S_x = Σ_b c_{x,b} R_b` are `x·dim R̄ + b`.
fn nabla_matrix(cs: &CurvatureSpace) -> SparseMat {
    let lay = cs.layout;
    let r = cs.dim();
    let mut triplets = Vec::new();
    for (b, rb) in cs.basis.basis().iter().enumerate() {
        for (c, v) in rb {
            let (p, q) = lay.unpair(c / lay.d);
            let a = c % lay.d;
            for x in 0..lay.n {
                let mult = multiplicity(x, [p, q, x]);
                triplets.push((lay.triple(p, q, x) * lay.d + a, x * r + b, v * Q::from_integer(mult.into())));
            }
        }
    }
    SparseMat::from_triplets(lay.triples() * lay.d, lay.n * r, triplets).expect("indices in range")
}

/// `R̄∇(g)`: tensors `S ∈ V*⊗R̄(g)` with `S_X(Y,Z) + S_Y(Z,X) + S_Z(X,Y) = 0`,
/// in coordinates `c_{x,b}` (see the column layout of the cyclic system).
pub fn nabla_space(cs: &CurvatureSpace) -> Result<Subspace> {
    nabla_space_with(cs, &SolveOptions::default())
}

pub fn nabla_space_with(cs: &CurvatureSpace, opts: &SolveOptions) -> Result<Subspace> {
    if cs.dim() == 0 {
        return Ok(Subspace::zero(0));
    }
    Ok(nullspace_with(&nabla_matrix(cs), opts)
        .map_err(|e| stage(e, "nabla"))?
        .space)
}

/// Checks `A·R ∈ R̄(g)` for every generator and basis tensor.
pub fn is_invariant(rep: &LieRep, cs: &CurvatureSpace) -> bool {
    (0..rep.dim_g()).into_par_iter().all(|a| {
        cs.basis
            .basis()
            .iter()
            .all(|r| cs.basis.contains(&act(rep, a, r)))
    })
}

/// Checks that `L(R̄(g))` is stable under `ad` of every generator.
pub fn span_is_ideal(rep: &LieRep, l: &Subspace) -> bool {
    (0..rep.dim_g()).all(|a| {
        let ad = rep.ad(a);
        l.basis().iter().all(|v| l.contains(&ad.mul_vec(v)))
    })
}

/// Kernel of `∂` restricted to a set of candidate tensors: the
/// combinations `Σ t_k C_k` (columns of `cands`) that satisfy Bianchi.
pub fn bianchi_combinations(rep: &LieRep, cands: &[SparseVec]) -> Result<Subspace> {
    let partial = build_partial(rep);
    let mut triplets = Vec::new();
    for (k, c) in cands.iter().enumerate() {
        for (r, v) in partial.mul_vec(c) {
            triplets.push((r, k, v));
        }
    }
    nullspace(&SparseMat::from_triplets(partial.rows(), cands.len(), triplets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_classical, Family};

    #[test]
    fn layout_indices_are_lexicographic() {
        let lay = Layout { n: 5, d: 1 };
        let mut k = 0;
        for i in 0..5 {
            for j in i..5 {
                assert_eq!(lay.pair(i, j), k);
                assert_eq!(lay.unpair(k), (i, j));
                k += 1;
            }
        }
        let mut k = 0;
        for i in 0..5 {
            for j in i..5 {
                for l in j..5 {
                    assert_eq!(lay.triple(l, i, j), k);
                    k += 1;
                }
            }
        }
        assert_eq!(k, lay.triples());
    }

    #[test]
    fn partial_shape_and_sl2() {
        let sl2 = build_classical(Family::Sl, 2).unwrap();
        let p = build_partial(&sl2);
        assert_eq!((p.rows(), p.cols()), (8, 9));
        let cs = skew_curvature_space(&sl2).unwrap();
        assert_eq!(cs.dim(), 1);
        assert!(is_skew_berger(&cs).is_skew_berger);
        assert!(is_invariant(&sl2, &cs));
    }

    #[test]
    fn so3_is_skew_berger() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let cs = skew_curvature_space(&so3).unwrap();
        let sb = is_skew_berger(&cs);
        assert!(sb.is_skew_berger);
        assert_eq!(sb.dim_l, 3);
        assert!(span_is_ideal(&so3, &curvature_span(&cs)));
    }
}
