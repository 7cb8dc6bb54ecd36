//! Weights, roots, `Φ_α`, spanning triples and Weyl-orbit canonical forms.
//!
//! A weight is the tuple of eigenvalues of the designated Cartan generators
//! of a [`LieRep`], in their stored order (a center generator, if present,
//! comes last).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::LieRep;
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::{inverse, qi, Rationals, SparseMat, Q};

pub type Coords = Vec<Q>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Coords,
    pub mult: usize,
}

/// Weights of `V` with multiplicities, sorted by coordinates.
pub fn weights_of(rep: &LieRep) -> Result<Vec<Weight>> {
    let mut m: BTreeMap<Coords, usize> = BTreeMap::new();
    for w in basis_weights(rep)? {
        *m.entry(w).or_default() += 1;
    }
    Ok(m.into_iter().map(|(coords, mult)| Weight { coords, mult }).collect())
}

/// Weight of each basis vector of `V`.
fn basis_weights(rep: &LieRep) -> Result<Vec<Coords>> {
    let hs: Vec<&SparseMat> = rep.cartan().iter().map(|&h| rep.generator(h)).collect();
    if let Some(h) = hs.iter().position(|h| !h.is_diagonal()) {
        return Err(Error::Construction(format!("Cartan generator {h} is not diagonal")));
    }
    let diags: Vec<Vec<Q>> = hs.iter().map(|h| h.diagonal()).collect();
    Ok((0..rep.dim_v()).map(|i| diags.iter().map(|d| d[i].clone()).collect()).collect())
}

/// Classical coordinate frames used for display and for entering roots and
/// weights as `ε` combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `sl(n)`/`gl(n)`: Cartan `H_i = E_ii − E_{i+1,i+1}`.
    A(usize),
    /// `so(n)`, `sp(2r)` and spin: Cartan coordinates are `ε` coordinates.
    Eps(usize),
}

impl Frame {
    /// Detects the frame from the leading `family(n)` of the rep name.
    pub fn detect(rep: &LieRep) -> Option<Frame> {
        let name = rep.name();
        let head = name.split([':', '+', '^']).next()?;
        let (fam, rest) = head.split_once('(')?;
        let n: usize = rest.strip_suffix(')')?.parse().ok()?;
        match fam {
            "sl" | "gl" => Some(Frame::A(n)),
            "so" => Some(Frame::Eps(n / 2)),
            "sp" => Some(Frame::Eps(n / 2)),
            _ => None,
        }
    }

    /// Number of `ε` coordinates.
    pub fn len(&self) -> usize {
        match *self {
            Frame::A(n) => n,
            Frame::Eps(r) => r,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn rank(&self) -> usize {
        match *self {
            Frame::A(n) => n - 1,
            Frame::Eps(r) => r,
        }
    }

    /// `ε` coordinates to Cartan coordinates; trailing (center) coordinates
    /// are zero-padded to `width`.
    pub fn from_epsilon(&self, eps: &[Q], width: usize) -> Coords {
        let mut out = match *self {
            Frame::A(n) => (0..n - 1).map(|i| &eps[i] - &eps[i + 1]).collect::<Vec<_>>(),
            Frame::Eps(_) => eps.to_vec(),
        };
        out.resize(width, Q::zero());
        out
    }

    /// Linear inverse of [`Frame::from_epsilon`] with `εₙ = 0` for type A.
    fn eps_raw(&self, c: &[Q]) -> Vec<Q> {
        match *self {
            Frame::A(n) => {
                let mut e = vec![Q::zero(); n];
                for i in (0..n - 1).rev() {
                    e[i] = &e[i + 1] + &c[i];
                }
                e
            }
            Frame::Eps(r) => c[..r].to_vec(),
        }
    }

    /// Cartan coordinates to `ε` coordinates. For type A the trace-free
    /// representative is used when it is integral, otherwise the integral
    /// representative of least `ℓ¹` norm with fewest negative entries.
    pub fn to_epsilon(&self, c: &[Q]) -> Vec<Q> {
        let e = self.eps_raw(c);
        let Frame::A(n) = *self else {
            return e;
        };
        let mean = e.iter().sum::<Q>() / qi(n as i64);
        let t = if mean.is_integer() {
            mean
        } else {
            let mut sorted = e.clone();
            sorted.sort();
            let (lo, hi) = (&sorted[(n - 1) / 2], &sorted[n / 2]);
            let up = lo.ceil();
            if &up <= hi {
                up
            } else {
                lo.clone()
            }
        };
        e.iter().map(|x| x - &t).collect()
    }
}

/// `Σ cᵢ εᵢ` rendered like `e1+e2-e7`.
pub fn format_epsilon(eps: &[Q]) -> String {
    format_combo(eps, 'e')
}

/// Dynkin labels rendered as a combination of fundamental weights, `p7`,
/// `p3-p7`.
pub fn format_fundamental(labels: &[Q]) -> String {
    format_combo(labels, 'p')
}

fn format_combo(eps: &[Q], sym: char) -> String {
    let mut s = String::new();
    for (i, c) in eps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if !s.is_empty() || c.is_negative() {
            s.push_str(sign);
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&a.to_string());
        }
        s.push_str(&format!("{sym}{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parses `e1+e2-e7`, `1/2e1-1/2e2`, `2e3` or `0` into `ε` coordinates.
pub fn parse_epsilon(s: &str, len: usize) -> Result<Vec<Q>> {
    let mut out = vec![Q::zero(); len];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(out);
    }
    let bad = |m: &str| Error::Syntax { pos: 0, msg: format!("{m} in {s:?}") };
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body[1..].find(['+', '-']).map(|k| k + 1).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, idx) = term.split_once('e').ok_or_else(|| bad("expected eN"))?;
        let mut c: Q = if coef.is_empty() {
            Q::one()
        } else if let Some((p, q)) = coef.split_once('/') {
            let p: i64 = p.parse().map_err(|_| bad("bad coefficient"))?;
            let q: i64 = q.parse().map_err(|_| bad("bad coefficient"))?;
            crate::linalg::q(p, q)
        } else {
            qi(coef.parse().map_err(|_| bad("bad coefficient"))?)
        };
        if neg {
            c = -c;
        }
        let i: usize = idx.parse().map_err(|_| bad("bad index"))?;
        if i == 0 || i > len {
            return Err(bad("index out of range"));
        }
        out[i - 1] += c;
    }
    Ok(out)
}

/// Roots of the semisimple part, a base, the Weyl-invariant inner product
/// and a root vector `A_α` per root.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub roots: Vec<Coords>,
    pub simple: Vec<Coords>,
    /// Inner product on weights: `⟨λ, μ⟩ = λᵀ G μ`.
    pub gram: Vec<Vec<Q>>,
    pub root_vectors: BTreeMap<Coords, SparseMat>,
    pub frame: Option<Frame>,
    width: usize,
}

impl RootDatum {
    pub fn new(rep: &LieRep) -> Result<Self> {
        let bw = basis_weights(rep)?;
        let width = rep.cartan().len();
        // components of each generator in the weight spaces of gl(V)
        let mut spaces: BTreeMap<Coords, Vec<SparseMat>> = BTreeMap::new();
        for a in rep.semisimple_indices() {
            let mut parts: BTreeMap<Coords, Vec<(usize, usize, Q)>> = BTreeMap::new();
            for (i, j, v) in rep.generator(a).entries() {
                let mu: Coords = bw[i].iter().zip(&bw[j]).map(|(x, y)| x - y).collect();
                parts.entry(mu).or_default().push((i, j, v.clone()));
            }
            for (mu, t) in parts {
                if mu.iter().any(|x| !x.is_zero()) {
                    let m = SparseMat::from_triplets(rep.dim_v(), rep.dim_v(), t)?;
                    spaces.entry(mu).or_default().push(m);
                }
            }
        }
        let f = Rationals;
        let mut roots = Vec::new();
        let mut root_vectors = BTreeMap::new();
        for (mu, ms) in spaces {
            let mut e = Echelon::new(&f, rep.dim_v() * rep.dim_v(), PivotRule::Leftmost);
            let mut first = None;
            for m in &ms {
                if e.insert(&m.flatten()) && first.is_none() {
                    first = Some(m.clone());
                }
            }
            if e.rank() > 1 {
                return Err(Error::Construction(format!("root space of dimension {}", e.rank())));
            }
            if let Some(m) = first {
                roots.push(mu.clone());
                root_vectors.insert(mu, m);
            }
        }
        // G = (tr_V H_i H_j)⁻¹ on the dual side
        let hs: Vec<Vec<Q>> = rep.cartan().iter().map(|&h| rep.generator(h).diagonal()).collect();
        let b: Vec<Vec<Q>> = hs
            .iter()
            .map(|x| hs.iter().map(|y| x.iter().zip(y).map(|(p, q)| p * q).sum()).collect())
            .collect();
        let gram = inverse(&b).ok_or_else(|| Error::Construction("degenerate trace form on the Cartan".into()))?;
        let frame = Frame::detect(rep).filter(|fr| fr.rank() + usize::from(rep.has_center()) == width);
        let mut rd = RootDatum {
            roots,
            simple: Vec::new(),
            gram,
            root_vectors,
            frame,
            width,
        };
        rd.simple = rd.choose_base();
        Ok(rd)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * &self.gram[i][j] * yj;
            }
        }
        s
    }

    pub fn norm2(&self, x: &[Q]) -> Q {
        self.inner(x, x)
    }

    pub fn is_root(&self, a: &[Q]) -> bool {
        self.root_vectors.contains_key(a)
    }

    /// `s_α(λ) = λ − 2⟨λ,α⟩/⟨α,α⟩ α`.
    pub fn reflect(&self, alpha: &[Q], v: &[Q]) -> Coords {
        let k = qi(2) * self.inner(v, alpha) / self.norm2(alpha);
        v.iter().zip(alpha).map(|(x, a)| x - &k * a).collect()
    }

    /// Dynkin labels `⟨λ, α_j^∨⟩` along the simple roots.
    pub fn dynkin_labels(&self, v: &[Q]) -> Vec<Q> {
        self.simple
            .iter()
            .map(|a| qi(2) * self.inner(v, a) / self.norm2(a))
            .collect()
    }

    fn functional(&self) -> Vec<Q> {
        // ε-frame: f(εᵢ) = N − i, the standard positive system
        if let Some(fr) = self.frame {
            let n = fr.len();
            let eps: Vec<Q> = (0..n).map(|i| qi((n - i) as i64)).collect();
            // f(λ) = Σ wᵢ εᵢ(λ) expressed on Cartan coordinates
            return (0..self.width)
                .map(|k| {
                    let mut unit = vec![Q::zero(); self.width];
                    unit[k] = Q::one();
                    if k >= fr.rank() {
                        return Q::zero();
                    }
                    fr.eps_raw(&unit).iter().zip(&eps).map(|(a, b)| a * b).sum()
                })
                .collect();
        }
        let mut c: i64 = 7;
        loop {
            let f: Vec<Q> = (0..self.width).map(|k| qi(c.pow(k as u32 + 1) + k as i64)).collect();
            let dot = |r: &Coords| -> Q { r.iter().zip(&f).map(|(a, b)| a * b).sum() };
            if self.roots.iter().all(|r| !dot(r).is_zero()) {
                return f;
            }
            c += 2;
        }
    }

    fn choose_base(&self) -> Vec<Coords> {
        let f = self.functional();
        let dot = |r: &Coords| -> Q { r.iter().zip(&f).map(|(a, b)| a * b).sum() };
        let pos: BTreeSet<Coords> = self.roots.iter().filter(|r| dot(r).is_positive()).cloned().collect();
        let mut simple: Vec<Coords> = pos
            .iter()
            .filter(|r| {
                !pos.iter().any(|a| {
                    let d: Coords = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    pos.contains(&d)
                })
            })
            .cloned()
            .collect();
        if let Some(fr) = self.frame {
            // Bourbaki order: by leading ε index, then ε vector ascending
            simple.sort_by_key(|a| {
                let e = fr.to_epsilon(a);
                let lead = e.iter().position(|x| !x.is_zero()).unwrap_or(0);
                (lead, e)
            });
        }
        simple
    }

    /// Positive roots under the chosen base.
    pub fn positive_roots(&self) -> Vec<Coords> {
        let f = self.functional();
        self.roots
            .iter()
            .filter(|r| r.iter().zip(&f).map(|(a, b)| a * b).sum::<Q>().is_positive())
            .cloned()
            .collect()
    }
}

/// `Φ_α` as `(α + Φ) ∩ Φ`, cross-checked against the weights of `A_α V`.
pub fn phi_alpha(rep: &LieRep, rd: &RootDatum, alpha: &[Q]) -> Result<Vec<Coords>> {
    let a = rd
        .root_vectors
        .get(alpha)
        .ok_or_else(|| Error::NotAWeight(format!("{alpha:?} is not a root")))?;
    let bw = basis_weights(rep)?;
    let phi: BTreeSet<Coords> = bw.iter().cloned().collect();
    let shifted: BTreeSet<Coords> = phi
        .iter()
        .map(|l| l.iter().zip(alpha).map(|(x, y)| x + y).collect::<Coords>())
        .filter(|l| phi.contains(l))
        .collect();
    let mut image = BTreeSet::new();
    for (i, _, _) in a.entries() {
        image.insert(bw[i].clone());
    }
    if image != shifted {
        return Err(Error::Construction(format!(
            "weights of A_α V ({}) differ from (α+Φ)∩Φ ({})",
            image.len(),
            shifted.len()
        )));
    }
    Ok(shifted.into_iter().collect())
}

/// Weights of maximal norm.
pub fn is_extremal(rep: &LieRep, rd: &RootDatum, lambda: &[Q]) -> Result<bool> {
    let ws = weights_of(rep)?;
    if !ws.iter().any(|w| w.coords == lambda) {
        return Err(Error::NotAWeight(format!("{lambda:?}")));
    }
    let max = ws.iter().map(|w| rd.norm2(&w.coords)).max().unwrap_or_else(Q::zero);
    Ok(rd.norm2(lambda) == max)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningTriple {
    pub l0: Coords,
    pub l1: Coords,
    pub alpha: Coords,
    pub extremal: bool,
}

#[derive(Debug, Clone)]
pub struct TripleClass {
    pub representative: SpanningTriple,
    /// Canonical form under the Weyl group.
    pub canonical: (Coords, Coords, Coords),
    /// Number of enumerated triples in the class.
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct TripleReport {
    pub classes: Vec<TripleClass>,
    /// All enumerated triples; kept when canonicalization ran out of budget.
    pub raw: Vec<SpanningTriple>,
    pub budget_exceeded: bool,
}

pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

/// Moves `v` into the closed chamber of the simple roots in `base`, applying
/// the same reflections to `others`. Counts reflections against `budget`.
fn make_dominant(rd: &RootDatum, base: &[Coords], v: &mut Coords, others: &mut [&mut Coords], budget: &mut usize) -> bool {
    loop {
        let Some(a) = base.iter().find(|a| rd.inner(v, a).is_negative()) else {
            return true;
        };
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        *v = rd.reflect(a, v);
        for o in others.iter_mut() {
            **o = rd.reflect(a, o);
        }
    }
}

/// Makes `vs[0]` dominant, then `vs[1]` under the parabolic stabilizer of
/// `vs[0]`, and so on, applying each reflection to all vectors. The result
/// is a canonical representative of the Weyl orbit of the ordered tuple.
pub fn canonical_chain(rd: &RootDatum, vs: &[&[Q]], budget: &mut usize) -> Option<Vec<Coords>> {
    let mut vs: Vec<Coords> = vs.iter().map(|v| v.to_vec()).collect();
    let mut base = rd.simple.clone();
    for k in 0..vs.len() {
        let (head, tail) = vs.split_at_mut(k + 1);
        let mut others: Vec<&mut Coords> = tail.iter_mut().collect();
        if !make_dominant(rd, &base, &mut head[k], &mut others, budget) {
            return None;
        }
        let v = &head[k];
        base.retain(|s| rd.inner(v, s).is_zero());
    }
    Some(vs)
}

/// Canonical form of the ordered triple `(α, λ₀, λ₁)`.
pub fn canonical_ordered(rd: &RootDatum, alpha: &[Q], l0: &[Q], l1: &[Q], budget: &mut usize) -> Option<(Coords, Coords, Coords)> {
    let v = canonical_chain(rd, &[alpha, l0, l1], budget)?;
    let [a, x, y]: [Coords; 3] = v.try_into().ok()?;
    Some((a, x, y))
}

/// Canonical form of the triple with `{λ₀, λ₁}` unordered.
pub fn canonical_triple(rd: &RootDatum, t: &SpanningTriple, budget: &mut usize) -> Option<(Coords, Coords, Coords)> {
    let p = canonical_ordered(rd, &t.alpha, &t.l0, &t.l1, budget)?;
    let q = canonical_ordered(rd, &t.alpha, &t.l1, &t.l0, budget)?;
    Some(p.max(q))
}

pub fn spanning_triples(rep: &LieRep, alpha: &[Q], extremal_only: bool) -> Result<TripleReport> {
    spanning_triples_with(rep, alpha, extremal_only, DEFAULT_ORBIT_BUDGET)
}

pub fn spanning_triples_with(rep: &LieRep, alpha: &[Q], extremal_only: bool, budget: usize) -> Result<TripleReport> {
    let rd = RootDatum::new(rep)?;
    let target = phi_alpha(rep, &rd, alpha)?;
    let ws = weights_of(rep)?;
    let maxn = ws.iter().map(|w| rd.norm2(&w.coords)).max().unwrap_or_else(Q::zero);
    let index: BTreeMap<&Coords, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut delta0: Vec<Coords> = rd.roots.clone();
    delta0.push(vec![Q::zero(); rd.width()]);
    // which elements of Φ_α each weight reaches through Δ₀
    let cover: Vec<Vec<bool>> = ws
        .iter()
        .map(|w| {
            let mut c = vec![false; target.len()];
            for b in &delta0 {
                let s: Coords = w.coords.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&i) = index.get(&s) {
                    c[i] = true;
                }
            }
            c
        })
        .collect();
    let ext: Vec<bool> = ws.iter().map(|w| rd.norm2(&w.coords) == maxn).collect();
    let mut raw = Vec::new();
    for i in 0..ws.len() {
        for j in i..ws.len() {
            if extremal_only && !(ext[i] && ext[j]) {
                continue;
            }
            if (0..target.len()).all(|k| cover[i][k] || cover[j][k]) {
                raw.push(SpanningTriple {
                    l0: ws[i].coords.clone(),
                    l1: ws[j].coords.clone(),
                    alpha: alpha.to_vec(),
                    extremal: ext[i] && ext[j],
                });
            }
        }
    }
    let mut left = budget;
    let mut classes: BTreeMap<(Coords, Coords, Coords), TripleClass> = BTreeMap::new();
    for t in &raw {
        let Some(key) = canonical_triple(&rd, t, &mut left) else {
            return Ok(TripleReport {
                classes: Vec::new(),
                raw,
                budget_exceeded: true,
            });
        };
        classes
            .entry(key.clone())
            .and_modify(|c| c.count += 1)
            .or_insert_with(|| TripleClass {
                representative: t.clone(),
                canonical: key,
                count: 1,
            });
    }
    Ok(TripleReport {
        classes: classes.into_values().collect(),
        raw,
        budget_exceeded: false,
    })
}

/// `(λ₀, λ₁, α)` in `ε` notation when a frame is known.
pub struct Display<'a>(pub &'a RootDatum, pub &'a SpanningTriple);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rd, t) = (self.0, self.1);
        let show = |c: &Coords| match rd.frame {
            Some(fr) => format_epsilon(&fr.to_epsilon(c)),
            None => format!("{:?}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        };
        write!(f, "({}, {}, {})", show(&t.l0), show(&t.l1), show(&t.alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{adjoint_rep, build_classical, build_spin, power_rep, Chirality, Family, PowerKind};

    #[test]
    fn sl2_weights() {
        let r = build_classical(Family::Sl, 2).unwrap();
        let w = weights_of(&r).unwrap();
        assert_eq!(w.iter().map(|w| w.coords[0].clone()).collect::<Vec<_>>(), vec![qi(-1), qi(1)]);
        let rd = RootDatum::new(&r).unwrap();
        assert_eq!(phi_alpha(&r, &rd, &[qi(2)]).unwrap(), vec![vec![qi(1)]]);
        assert!(is_extremal(&r, &rd, &[qi(-1)]).unwrap());
        // every pair covers Φ_α = {1}
        let t = spanning_triples(&r, &[qi(2)], false).unwrap();
        assert_eq!(t.raw.len(), 3);
    }

    #[test]
    fn half_spin_weights() {
        let r = build_spin(10, Chirality::Plus).unwrap();
        let w = weights_of(&r).unwrap();
        assert_eq!(w.len(), 16);
        for x in &w {
            assert!(x.coords.iter().all(|c| c.abs() == crate::linalg::q(1, 2)));
            assert_eq!(x.coords.iter().filter(|c| c.is_negative()).count() % 2, 0);
        }
        let rd = RootDatum::new(&r).unwrap();
        assert_eq!(rd.roots.len(), 40);
        assert!(w.iter().all(|x| is_extremal(&r, &rd, &x.coords).unwrap()));
    }

    #[test]
    fn adjoint_sl3() {
        let sl3 = build_classical(Family::Sl, 3).unwrap();
        let ad = adjoint_rep(&sl3).unwrap();
        let w = weights_of(&ad).unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(w.iter().find(|x| x.coords.iter().all(|c| c.is_zero())).unwrap().mult, 2);
        let rd = RootDatum::new(&ad).unwrap();
        assert!(!is_extremal(&ad, &rd, &[qi(0), qi(0)]).unwrap());
        assert_eq!(rd.simple.len(), 2);
        let rs = RootDatum::new(&sl3).unwrap();
        let a = Frame::A(3).from_epsilon(&parse_epsilon("e1-e2", 3).unwrap(), 2);
        let e1 = Frame::A(3).from_epsilon(&parse_epsilon("e1", 3).unwrap(), 2);
        assert_eq!(phi_alpha(&sl3, &rs, &a).unwrap(), vec![e1]);
    }

    #[test]
    fn bourbaki_order() {
        let so8 = build_classical(Family::So, 8).unwrap();
        let rd = RootDatum::new(&so8).unwrap();
        let s: Vec<String> = rd.simple.iter().map(|a| format_epsilon(a)).collect();
        assert_eq!(s, ["e1-e2", "e2-e3", "e3-e4", "e3+e4"]);
        let sl4 = build_classical(Family::Sl, 4).unwrap();
        let rd = RootDatum::new(&sl4).unwrap();
        let s: Vec<String> = rd.simple.iter().map(|a| format_epsilon(&Frame::A(4).to_epsilon(a))).collect();
        assert_eq!(s, ["e1-e2", "e2-e3", "e3-e4"]);
    }

    #[test]
    fn epsilon_round_trip() {
        let fr = Frame::A(7);
        let e = parse_epsilon("e1+e2+e3", 7).unwrap();
        let c = fr.from_epsilon(&e, 6);
        assert_eq!(format_epsilon(&fr.to_epsilon(&c)), "e1+e2+e3");
        assert_eq!(parse_epsilon("1/2e1-1/2e2", 2).unwrap(), vec![crate::linalg::q(1, 2), crate::linalg::q(-1, 2)]);
        assert!(parse_epsilon("e9", 3).is_err());
    }

    #[test]
    fn sl7_wedge3_classes() {
        let r = power_rep(&build_classical(Family::Sl, 7).unwrap(), PowerKind::Wedge, 3).unwrap();
        let fr = Frame::A(7);
        let alpha = fr.from_epsilon(&parse_epsilon("e1-e7", 7).unwrap(), 6);
        let t = spanning_triples(&r, &alpha, false).unwrap();
        assert!(!t.budget_exceeded);
        assert_eq!(t.classes.len(), 2);
        let rd = RootDatum::new(&r).unwrap();
        let shown: Vec<String> = t
            .classes
            .iter()
            .map(|c| {
                let (a, x, y) = &c.canonical;
                let e = |v: &Coords| format_epsilon(&fr.to_epsilon(v));
                format!("({}, {}, {})", e(x), e(y), e(a))
            })
            .collect();
        assert_eq!(shown, ["(e1+e2+e3, e4+e5+e6, e1-e7)", "(e1+e2+e3, e1+e4+e5, e1-e7)"]);
        let (_, x, y) = &t.classes[0].canonical;
        assert_eq!(format_fundamental(&rd.dynkin_labels(x)), "p3");
        assert_eq!(format_fundamental(&rd.dynkin_labels(y)), "-p3+p6");
    }
}
