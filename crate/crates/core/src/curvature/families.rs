//! Explicit curvature tensors: `R_A` for `g ⊂ so(V)`, `R_τ` for
//! `sl(n) ⊕ sl(m) (⊕ C)` on `Cⁿ⊗Cᵐ` and `R_τ` for `sl(n)` on `⊙²Cⁿ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{build_partial, CurvatureTensor, Layout};
use crate::error::{Error, Result};
use crate::lie::{add_center, build_classical, power_basis, power_matrix, tensor_rep, Family, FormKind, LieRep, PowerKind};
use crate::linalg::sparse::normalize_vec;
use crate::linalg::{inverse, nullspace, qi, SparseMat, SparseVec, Q};

#[derive(Debug, Clone)]
pub struct RAFamily {
    /// Scale of `x ∧̄ y` against the trace-orthogonal projection of `x∧y`.
    pub c: Q,
    pub tensors: Vec<CurvatureTensor>,
    /// Rank of `A ↦ R_A`.
    pub rank: usize,
}

impl RAFamily {
    pub fn is_injective(&self) -> bool {
        self.rank == self.tensors.len()
    }
}

fn unit(i: usize) -> SparseVec {
    vec![(i, Q::one())]
}

/// `R_A(x, y) = 2g(x, y)A + Ax ∧̄ y + Ay ∧̄ x` for every generator `A`.
pub fn family_r_a(rep: &LieRep) -> Result<RAFamily> {
    let form = rep
        .form()
        .ok_or_else(|| Error::Precondition(format!("{}: no preserved form", rep.name())))?;
    if form.kind != FormKind::Symmetric {
        return Err(Error::Precondition(format!("{}: the preserved form is not symmetric", rep.name())));
    }
    let (n, d) = (rep.dim_v(), rep.dim_g());
    let g = &form.matrix;
    let gram = inverse(&rep.trace_form())
        .ok_or_else(|| Error::Precondition(format!("{}: degenerate trace form", rep.name())))?;

    // (x∧y)z = g(x,z)y − g(y,z)x, projected orthogonally onto g
    let wedge = |x: usize, y: usize| -> SparseMat {
        let gx = g.row(x);
        let gy = g.row(y);
        let mut t: Vec<(usize, usize, Q)> = gx.iter().map(|(z, v)| (y, *z, v.clone())).collect();
        t.extend(gy.iter().map(|(z, v)| (x, *z, -v.clone())));
        SparseMat::from_triplets(n, n, t).expect("in range")
    };
    let project = |m: &SparseMat| -> SparseVec {
        let t: Vec<Q> = rep.generators().iter().map(|x| m.trace_product(x)).collect();
        let c: Vec<(usize, Q)> = (0..d)
            .map(|a| (a, (0..d).fold(Q::zero(), |acc, b| acc + &gram[a][b] * &t[b])))
            .collect();
        normalize_vec(c)
    };
    let mut w: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for x in 0..n {
        for y in x + 1..n {
            w.insert((x, y), project(&wedge(x, y)));
        }
    }
    let wv = |x: usize, y: usize| -> SparseVec {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => w[&(x, y)].clone(),
            std::cmp::Ordering::Greater => w[&(y, x)].iter().map(|(a, v)| (*a, -v.clone())).collect(),
            std::cmp::Ordering::Equal => Vec::new(),
        }
    };

    // solve (x∧̄y)z + (x∧̄z)y = −2g(y,z)x + g(x,y)z + g(x,z)y for the scale
    let mut c: Option<Q> = None;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = rep
                    .element(&wv(x, y))
                    .mul_vec(&unit(z))
                    .into_iter()
                    .chain(rep.element(&wv(x, z)).mul_vec(&unit(y)))
                    .collect::<Vec<_>>();
                let lhs = sum(lhs);
                let rhs = sum(vec![
                    (x, g.get(y, z) * qi(-2)),
                    (z, g.get(x, y)),
                    (y, g.get(x, z)),
                ]);
                if c.is_none() {
                    if let (Some((i, l)), true) = (lhs.first(), !rhs.is_empty()) {
                        let r = rhs.iter().find(|e| e.0 == *i).map(|e| e.1.clone()).unwrap_or_else(Q::zero);
                        c = Some(r / l);
                    }
                }
                let scaled: SparseVec = match &c {
                    Some(c) => normalize_vec(lhs.iter().map(|(i, v)| (*i, v * c)).collect()),
                    None => lhs.clone(),
                };
                if c.is_some() && scaled != rhs || c.is_none() && !rhs.is_empty() {
                    return Err(Error::Precondition(format!(
                        "{}: rep does not admit the ∧̄ structure",
                        rep.name()
                    )));
                }
            }
        }
    }
    let c = c.ok_or_else(|| Error::Precondition(format!("{}: rep does not admit the ∧̄ structure", rep.name())))?;

    let lay = Layout::new(rep);
    let partial = build_partial(rep);
    let mut tensors = Vec::with_capacity(d);
    for a in 0..d {
        let at = rep.generator(a).transpose();
        let mut coords: BTreeMap<usize, Q> = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let base = lay.pair(i, j) * d;
                let gij = g.get(i, j);
                if !gij.is_zero() {
                    *coords.entry(base + a).or_insert_with(Q::zero) += gij * qi(2);
                }
                // (A e_i) ∧̄ e_j + (A e_j) ∧̄ e_i
                for (s, t) in [(i, j), (j, i)] {
                    for (k, x) in at.row(s) {
                        for (b, v) in wv(*k, t) {
                            *coords.entry(base + b).or_insert_with(Q::zero) += x * v * &c;
                        }
                    }
                }
            }
        }
        let coords = normalize_vec(coords.into_iter().collect());
        if !partial.mul_vec(&coords).is_empty() {
            return Err(Error::Construction(format!("R_A for generator {a} violates Bianchi")));
        }
        tensors.push(CurvatureTensor {
            rep: rep.name().to_string(),
            coords,
        });
    }
    let cols = SparseMat::from_rows(lay.cols(), tensors.iter().map(|t| t.coords.clone()).collect());
    let rank = crate::linalg::rank(&cols)?;
    Ok(RAFamily { c, tensors, rank })
}

fn sum(v: Vec<(usize, Q)>) -> SparseVec {
    let mut m: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, x) in v {
        *m.entry(i).or_insert_with(Q::zero) += x;
    }
    normalize_vec(m.into_iter().collect())
}

/// `sl(n) ⊕ sl(m)` on `Cⁿ⊗Cᵐ`, with the center appended when asked.
pub fn tau_tensor_rep(n: usize, m: usize, with_center: bool) -> Result<LieRep> {
    let mut rep = tensor_rep(&build_classical(Family::Sl, n)?, &build_classical(Family::Sl, m)?)?;
    rep.set_name(format!("sl({n})*sl({m}):tensor"));
    if with_center {
        rep = add_center(&rep)?;
    }
    Ok(rep)
}

/// `R_τ(x₁⊗x₂, u₁⊗u₂) = A ⊗ 1 + 1 ⊗ B` with
/// `A v = −τ(x₁,x₂,v,u₂)u₁ − τ(u₁,u₂,v,x₂)x₁` and
/// `B w = τ(x₁,x₂,u₁,w)u₂ + τ(u₁,u₂,x₁,w)x₂`.
///
/// `rep` is [`tau_tensor_rep`]`(n, m, _)` and `tau[(i,j)][(k,l)]` is
/// `τ(e_i⊗f_j, e_k⊗f_l)` with `(i, j) ↦ i·m + j`. Fails if some value leaves g
/// (a trace without the center) or if Bianchi or the trace formula fail.
pub fn family_r_tau_tensor(rep: &LieRep, n: usize, m: usize, tau: &[Vec<Q>]) -> Result<CurvatureTensor> {
    let dim = n * m;
    if n < 2 || m < 2 || rep.dim_v() != dim || tau.len() != dim || tau.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch(format!("τ on C^{n}⊗C^{m}")));
    }
    let t = |a: usize, b: usize, c: usize, e: usize| &tau[a * m + b][c * m + e];
    let lay = Layout::new(rep);
    let mut coords = Vec::new();
    for x in 0..dim {
        for u in x..dim {
            let (i, j) = (x / m, x % m);
            let (k, l) = (u / m, u % m);
            let mut a = Vec::new();
            for s in 0..n {
                a.push((k, s, -t(i, j, s, l).clone()));
                a.push((i, s, -t(k, l, s, j).clone()));
            }
            let mut b = Vec::new();
            for w in 0..m {
                b.push((l, w, t(i, j, k, w).clone()));
                b.push((j, w, t(k, l, i, w).clone()));
            }
            let a = SparseMat::from_triplets(n, n, a.into_iter().filter(|e| !e.2.is_zero()))?;
            let b = SparseMat::from_triplets(m, m, b.into_iter().filter(|e| !e.2.is_zero()))?;
            let value = kron(&a, &SparseMat::identity(m)).add(&kron(&SparseMat::identity(n), &b));
            let expect = qi(n as i64 - m as i64) * (t(i, j, k, l) + t(k, l, i, j));
            if value.trace() != expect {
                return Err(Error::Construction("R_τ trace formula fails".into()));
            }
            let c = rep.coords_of(&value).ok_or_else(|| {
                Error::Precondition(format!("R_τ takes values outside {}", rep.name()))
            })?;
            let base = lay.pair(x, u) * lay.d;
            coords.extend(c.into_iter().map(|(a, v)| (base + a, v)));
        }
    }
    if !build_partial(rep).mul_vec(&coords).is_empty() {
        return Err(Error::Construction("R_τ violates Bianchi".into()));
    }
    Ok(CurvatureTensor {
        rep: rep.name().to_string(),
        coords,
    })
}

fn kron(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let m = b.rows();
    let mut t = Vec::new();
    for (i, j, x) in a.entries() {
        for (k, l, y) in b.entries() {
            t.push((i * m + k, j * m + l, x * y));
        }
    }
    SparseMat::from_triplets(a.rows() * m, a.cols() * m, t).expect("in range")
}

/// `τ ∈ ⊙²(Cⁿ)*⊗Λ²(Cⁿ)*`, stored on `a ≤ b`, `c < d`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpeTau {
    pub n: usize,
    pub coef: BTreeMap<(usize, usize, usize, usize), Q>,
}

impl SpeTau {
    pub fn new(n: usize) -> Self {
        SpeTau {
            n,
            coef: BTreeMap::new(),
        }
    }

    /// Index tuples `(a ≤ b, c < d)` of a basis.
    pub fn basis(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    for d in c + 1..n {
                        out.push((a, b, c, d));
                    }
                }
            }
        }
        out
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: Q) {
        let (a, b) = (a.min(b), a.max(b));
        let (c, d, v) = if c < d { (c, d, v) } else { (d, c, -v) };
        if c != d {
            self.coef.insert((a, b, c, d), v);
        }
    }

    pub fn eval(&self, a: usize, b: usize, c: usize, d: usize) -> Q {
        let (a, b) = (a.min(b), a.max(b));
        match c.cmp(&d) {
            std::cmp::Ordering::Less => self.coef.get(&(a, b, c, d)).cloned().unwrap_or_else(Q::zero),
            std::cmp::Ordering::Greater => -self.coef.get(&(a, b, d, c)).cloned().unwrap_or_else(Q::zero),
            std::cmp::Ordering::Equal => Q::zero(),
        }
    }
}

/// The `gl(n)` matrix of `R_τ(x₁⊙x₂, y₁⊙y₂)` on `Cⁿ`:
/// `z ↦ −2(τ(x₁,x₂,y₁,z)y₂ + τ(x₁,x₂,y₂,z)y₁ + τ(y₁,y₂,x₁,z)x₂ + τ(y₁,y₂,x₂,z)x₁)`.
pub fn spe_value(tau: &SpeTau, x: (usize, usize), y: (usize, usize)) -> SparseMat {
    let n = tau.n;
    let mut t = Vec::new();
    for z in 0..n {
        for (target, v) in [
            (y.1, tau.eval(x.0, x.1, y.0, z)),
            (y.0, tau.eval(x.0, x.1, y.1, z)),
            (x.1, tau.eval(y.0, y.1, x.0, z)),
            (x.0, tau.eval(y.0, y.1, x.1, z)),
        ] {
            if !v.is_zero() {
                t.push((target, z, v * qi(-2)));
            }
        }
    }
    let mut m: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    for (i, j, v) in t {
        *m.entry((i, j)).or_insert_with(Q::zero) += v;
    }
    SparseMat::from_triplets(n, n, m.into_iter().filter(|e| !e.1.is_zero()).map(|((i, j), v)| (i, j, v)))
        .expect("in range")
}

/// `R_τ` as a tensor of type `sl(n)` on `⊙²Cⁿ` (`rep` is `sl(n):sym(2)`).
pub fn family_r_tau_spe(rep: &LieRep, tau: &SpeTau) -> Result<CurvatureTensor> {
    let n = tau.n;
    let basis = power_basis(n, PowerKind::Sym, 2);
    if n < 3 || rep.dim_v() != basis.len() {
        return Err(Error::DimensionMismatch(format!("τ for sl({n}) on the symmetric square")));
    }
    let lay = Layout::new(rep);
    let mut coords = Vec::new();
    for (p, x) in basis.iter().enumerate() {
        for (q, y) in basis.iter().enumerate().skip(p) {
            let value = spe_value(tau, (x[0], x[1]), (y[0], y[1]));
            let induced = power_matrix(&value, PowerKind::Sym, &basis);
            let c = rep
                .coords_of(&induced)
                .ok_or_else(|| Error::Construction("R_τ value outside sl(n)".into()))?;
            let base = lay.pair(p, q) * lay.d;
            coords.extend(c.into_iter().map(|(a, v)| (base + a, v)));
        }
    }
    if !build_partial(rep).mul_vec(&coords).is_empty() {
        return Err(Error::Construction("R_τ violates Bianchi".into()));
    }
    Ok(CurvatureTensor {
        rep: rep.name().to_string(),
        coords,
    })
}

/// Dimension of `{τ : every R_τ(x, y) lies in so(n)}`, with `so(n)` taken for
/// `form` (an `n×n` nondegenerate symmetric matrix).
pub fn spe_so_constrained_dim(n: usize, form: &SparseMat) -> Result<usize> {
    let tb = SpeTau::basis(n);
    let pairs = power_basis(n, PowerKind::Sym, 2);
    // rows: entries (r, s) of MᵀG + GM for each pair of arguments
    let mut triplets = Vec::new();
    let mut row = 0;
    for (p, x) in pairs.iter().enumerate() {
        for y in pairs.iter().skip(p) {
            let mut block: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
            for (k, t) in tb.iter().enumerate() {
                let mut tau = SpeTau::new(n);
                tau.set(t.0, t.1, t.2, t.3, Q::one());
                let m = spe_value(&tau, (x[0], x[1]), (y[0], y[1]));
                let s = m.transpose().mul(form).add(&form.mul(&m));
                for (r, c, v) in s.entries() {
                    block.entry((r, c)).or_default().push((k, v.clone()));
                }
            }
            for (_, entries) in block {
                for (k, v) in entries {
                    triplets.push((row, k, v));
                }
                row += 1;
            }
        }
    }
    let m = SparseMat::from_triplets(row.max(1), tb.len(), triplets)?;
    Ok(nullspace(&m)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::skew_curvature_space;
    use crate::lie::{build_g2, power_rep};

    #[test]
    fn so3_family_has_unit_scale() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let f = family_r_a(&so3).unwrap();
        assert_eq!(f.c, Q::one());
        assert!(f.is_injective());
        assert_eq!(f.tensors.len(), 3);
    }

    #[test]
    fn g2_family_injective() {
        let f = family_r_a(&build_g2().unwrap()).unwrap();
        assert_eq!(f.tensors.len(), 14);
        assert!(f.is_injective());
    }

    #[test]
    fn r_a_needs_symmetric_form() {
        let sp4 = build_classical(Family::Sp, 4).unwrap();
        assert!(matches!(family_r_a(&sp4), Err(Error::Precondition(_))));
    }

    #[test]
    fn tau_tensor_traces() {
        let rep = tau_tensor_rep(2, 3, true).unwrap();
        let mut tau = vec![vec![Q::zero(); 6]; 6];
        tau[1][4] = qi(1);
        let r = family_r_tau_tensor(&rep, 2, 3, &tau).unwrap();
        assert!(!r.coords.is_empty());
        // symmetric τ has a trace, so it needs the center
        let plain = tau_tensor_rep(2, 3, false).unwrap();
        tau[4][1] = qi(1);
        assert!(family_r_tau_tensor(&plain, 2, 3, &tau).is_err());
        tau[4][1] = qi(-1);
        assert!(family_r_tau_tensor(&plain, 2, 3, &tau).is_ok());
    }

    #[test]
    fn spe_tau() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let rep = power_rep(&sl3, PowerKind::Sym, 2).unwrap();
        let zero = family_r_tau_spe(&rep, &SpeTau::new(3)).unwrap();
        assert!(zero.coords.is_empty());
        let mut tau = SpeTau::new(3);
        tau.set(0, 1, 0, 2, qi(3));
        tau.set(2, 2, 1, 0, qi(-1));
        assert!(!family_r_tau_spe(&rep, &tau).unwrap().coords.is_empty());
        let so3 = build_classical(Family::So, 3).unwrap();
        assert_eq!(spe_so_constrained_dim(3, &so3.form().unwrap().matrix).unwrap(), 0);
        assert_eq!(skew_curvature_space(&power_rep(&so3, PowerKind::Sym, 2).unwrap()).unwrap().dim(), 0);
    }
}
