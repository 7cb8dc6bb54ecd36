//! Operations producing new representations from old ones.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::forms::detect_form;
use super::rep::{Form, FormKind, LieRep};
use crate::error::{Error, Result};
use crate::linalg::{SparseMat, Subspace, Q};

fn kron(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let (n, m) = (a.rows(), b.rows());
    let mut t = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, j, x) in a.entries() {
        for (k, l, y) in b.entries() {
            t.push((i * m + k, j * m + l, x * y));
        }
    }
    SparseMat::from_triplets(n * m, a.cols() * b.cols(), t).expect("in range")
}

/// `g_a ⊕ g_b` on `V_a ⊗ V_b`, basis `(i, j) ↦ i·dim V_b + j`. Generators:
/// the non-central generators of `a` as `X ⊗ 1`, those of `b` as `1 ⊗ Y`,
/// then a single identity if either input has a center.
pub fn tensor_rep(a: &LieRep, b: &LieRep) -> Result<LieRep> {
    let (ia, ib) = (SparseMat::identity(a.dim_v()), SparseMat::identity(b.dim_v()));
    let mut gens = Vec::new();
    let mut cartan = Vec::new();
    for i in a.semisimple_indices() {
        if a.cartan().contains(&i) {
            cartan.push(gens.len());
        }
        gens.push(kron(a.generator(i), &ib));
    }
    for i in b.semisimple_indices() {
        if b.cartan().contains(&i) {
            cartan.push(gens.len());
        }
        gens.push(kron(&ia, b.generator(i)));
    }
    let center = a.has_center() || b.has_center();
    let n = a.dim_v() * b.dim_v();
    if center {
        cartan.push(gens.len());
        gens.push(SparseMat::identity(n));
    }
    let form = match (a.form(), b.form()) {
        (Some(fa), Some(fb)) if !center => {
            let kind = if fa.kind == fb.kind {
                FormKind::Symmetric
            } else {
                FormKind::Skew
            };
            Some(Form::new(kind, kron(&fa.matrix, &fb.matrix))?)
        }
        _ => None,
    };
    LieRep::new(format!("({})*({})", a.name(), b.name()), n, gens, cartan, form, center)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Sym,
    Wedge,
}

/// Index tuples of the power basis, lexicographic: nondecreasing for
/// `Sym`, strictly increasing for `Wedge`.
pub fn power_basis(n: usize, kind: PowerKind, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, kind: PowerKind, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            let next = if kind == PowerKind::Sym { i } else { i + 1 };
            rec(n, kind, k, next, cur, out);
            cur.pop();
        }
    }
    rec(n, kind, k, 0, &mut cur, &mut out);
    out
}

/// Sort a tuple; for wedge powers also return the permutation sign, or
/// `None` when an index repeats.
fn canonical(mut t: Vec<usize>, kind: PowerKind) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if kind == PowerKind::Wedge {
        if t.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((t, sign))
    } else {
        Some((t, 1))
    }
}

/// Matrix of the derivation action of `x` on the power space.
pub fn power_matrix(x: &SparseMat, kind: PowerKind, basis: &[Vec<usize>]) -> SparseMat {
    let index: BTreeMap<&[usize], usize> = basis.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let xt = x.transpose();
    let mut triplets = Vec::new();
    for (col, t) in basis.iter().enumerate() {
        for p in 0..t.len() {
            for (l, v) in xt.row(t[p]) {
                let mut u = t.clone();
                u[p] = *l;
                if let Some((u, s)) = canonical(u, kind) {
                    triplets.push((index[u.as_slice()], col, v * Q::from_integer(s.into())));
                }
            }
        }
    }
    SparseMat::from_triplets(basis.len(), basis.len(), triplets).expect("in range")
}

/// The same algebra acting on `⊙^k V` or `Λ^k V` by derivations.
pub fn power_rep(a: &LieRep, kind: PowerKind, k: usize) -> Result<LieRep> {
    if k < 2 || (kind == PowerKind::Wedge && k > a.dim_v()) {
        return Err(Error::InvalidParameter(format!(
            "power {k} out of range for a {}-dimensional space",
            a.dim_v()
        )));
    }
    let basis = power_basis(a.dim_v(), kind, k);
    let gens: Vec<SparseMat> = a.generators().iter().map(|x| power_matrix(x, kind, &basis)).collect();
    let center = a.has_center();
    let mut gens = gens;
    if center {
        // the identity acts as k·id; rescale so the last generator is id
        let last = gens.len() - 1;
        gens[last] = SparseMat::identity(basis.len());
    }
    let label = match kind {
        PowerKind::Sym => "sym",
        PowerKind::Wedge => "wedge",
    };
    let rep = LieRep::new(
        format!("{}^{label}({k})", a.name()),
        basis.len(),
        gens,
        a.cartan().to_vec(),
        None,
        center,
    )?;
    let form = if center { None } else { detect_form(&rep)? };
    rep.with_form(form)
}

/// `g` acting on itself; the preserved form is the trace form of the
/// input representation.
pub fn adjoint_rep(a: &LieRep) -> Result<LieRep> {
    if a.has_center() {
        return Err(Error::Precondition("adjoint representation needs an algebra without center".into()));
    }
    let d = a.dim_g();
    let gens: Vec<SparseMat> = (0..d).map(|i| a.ad(i)).collect();
    let tf = a.trace_form();
    let form = Form::new(FormKind::Symmetric, SparseMat::from_dense(&tf))?;
    LieRep::new(
        format!("{}:adjoint", a.name().split(':').next().unwrap_or("")),
        d,
        gens,
        a.cartan().to_vec(),
        Some(form),
        false,
    )
}

/// Append the identity as a central generator. The form is dropped: the
/// identity preserves no nondegenerate form.
pub fn add_center(a: &LieRep) -> Result<LieRep> {
    if a.has_center() {
        return Err(Error::Precondition(format!("{} already has a center", a.name())));
    }
    let mut gens = a.generators().to_vec();
    gens.push(SparseMat::identity(a.dim_v()));
    let mut cartan = a.cartan().to_vec();
    cartan.push(gens.len() - 1);
    let name = match a.name().split_once(':') {
        Some((alg, rep)) => format!("{alg}+z:{rep}"),
        None => format!("{}+z", a.name()),
    };
    LieRep::new(name, a.dim_v(), gens, cartan, None, true)
}

/// The representation on an invariant subspace, in the normal-form basis of
/// `s`.
pub fn restrict_to_invariant_subspace(a: &LieRep, s: &Subspace) -> Result<LieRep> {
    if s.ambient() != a.dim_v() {
        return Err(Error::DimensionMismatch(format!(
            "subspace of C^{} for a representation on C^{}",
            s.ambient(),
            a.dim_v()
        )));
    }
    let k = s.dim();
    let mut gens = Vec::with_capacity(a.dim_g());
    for (i, x) in a.generators().iter().enumerate() {
        let mut triplets = Vec::new();
        for (col, b) in s.basis().iter().enumerate() {
            let img = x.mul_vec(b);
            let c = s.coords(&img).ok_or(Error::NotInvariant(i))?;
            for (row, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((row, col, v));
                }
            }
        }
        gens.push(SparseMat::from_triplets(k, k, triplets)?);
    }
    let center = a.has_center();
    if center {
        let last = gens.len() - 1;
        debug_assert_eq!(gens[last], SparseMat::identity(k).scale(&Q::one()));
    }
    let rep = LieRep::new(format!("{}|restricted", a.name()), k, gens, a.cartan().to_vec(), None, center)?;
    let form = if center { None } else { detect_form(&rep)? };
    rep.with_form(form)
}

/// Kernel of `⊙²V → C`, `uw ↦ g(u, w)`, inside the monomial basis of
/// `⊙²V`.
pub fn traceless_sym2(sym2: &LieRep, form: &Form) -> Result<Subspace> {
    let n = form.matrix.rows();
    let basis = power_basis(n, PowerKind::Sym, 2);
    if sym2.dim_v() != basis.len() {
        return Err(Error::DimensionMismatch("not a symmetric square".into()));
    }
    let row: Vec<(usize, Q)> = basis
        .iter()
        .enumerate()
        .map(|(i, t)| (i, form.matrix.get(t[0], t[1])))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    crate::linalg::nullspace(&SparseMat::from_rows(basis.len(), vec![row]))
}

/// Kernel of `Λ³V → V`, `u∧v∧w ↦ ω(u,v)w + ω(v,w)u + ω(w,u)v`.
pub fn primitive_wedge3(wedge3: &LieRep, form: &Form) -> Result<Subspace> {
    let n = form.matrix.rows();
    let basis = power_basis(n, PowerKind::Wedge, 3);
    if wedge3.dim_v() != basis.len() {
        return Err(Error::DimensionMismatch("not a third exterior power".into()));
    }
    let w = |a: usize, b: usize| form.matrix.get(a, b);
    let mut triplets = Vec::new();
    for (col, t) in basis.iter().enumerate() {
        let (u, v, x) = (t[0], t[1], t[2]);
        for (c, target) in [(w(u, v), x), (w(v, x), u), (w(x, u), v)] {
            if !c.is_zero() {
                triplets.push((target, col, c));
            }
        }
    }
    crate::linalg::nullspace(&SparseMat::from_triplets(n, basis.len(), triplets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::classical::{build_classical, Family};

    #[test]
    fn tensor_dimensions_and_forms() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let sp4 = build_classical(Family::Sp, 4).unwrap();
        let t = tensor_rep(&so3, &sp4).unwrap();
        assert_eq!((t.dim_g(), t.dim_v()), (13, 12));
        assert_eq!(t.form().unwrap().kind, FormKind::Skew);
        let sl2 = build_classical(Family::Sl, 2).unwrap();
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let t = tensor_rep(&sl2, &sl3).unwrap();
        assert_eq!((t.dim_g(), t.dim_v()), (11, 6));
    }

    #[test]
    fn power_dimensions() {
        let sl5 = build_classical(Family::Sl, 5).unwrap();
        assert_eq!(power_rep(&sl5, PowerKind::Wedge, 2).unwrap().dim_v(), 10);
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        assert_eq!(power_rep(&sl3, PowerKind::Sym, 2).unwrap().dim_v(), 6);
        let sl2 = build_classical(Family::Sl, 2).unwrap();
        let s3 = power_rep(&sl2, PowerKind::Sym, 3).unwrap();
        assert_eq!(s3.dim_v(), 4);
        assert_eq!(s3.form().unwrap().kind, FormKind::Skew);
    }

    #[test]
    fn adjoint_and_center() {
        let sl2 = build_classical(Family::Sl, 2).unwrap();
        assert_eq!(adjoint_rep(&sl2).unwrap().dim_v(), 3);
        let so5 = build_classical(Family::So, 5).unwrap();
        let ad = adjoint_rep(&so5).unwrap();
        assert_eq!(ad.dim_v(), 10);
        assert!(ad.generators().iter().all(|x| ad.form().unwrap().is_invariant_under(x)));
        let gl2 = build_classical(Family::Gl, 2).unwrap();
        assert!(adjoint_rep(&gl2).is_err());
        assert!(add_center(&gl2).is_err());
        assert_eq!(add_center(&sl2).unwrap().dim_g(), 4);
    }

    #[test]
    fn restriction() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let s2 = power_rep(&so3, PowerKind::Sym, 2).unwrap();
        // basis (00,01,02,11,12,22); uw ↦ g(u,w) reads x02 + x11
        let m = SparseMat::from_dense_i64(&[&[0, 0, 1, 1, 0, 0]]);
        let s = crate::linalg::nullspace(&m).unwrap();
        assert_eq!(s, traceless_sym2(&s2, so3.form().unwrap()).unwrap());
        let r = restrict_to_invariant_subspace(&s2, &s).unwrap();
        assert_eq!(r.dim_v(), 5);
        let bad = Subspace::span(6, [vec![(0, crate::linalg::qi(1))]]);
        assert!(matches!(
            restrict_to_invariant_subspace(&s2, &bad),
            Err(Error::NotInvariant(_))
        ));
    }
}
