//! Representation specs: `algebra ":" rep` with
//! `algebra := factor ("*" factor)* ["+z"]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{
    add_center, adjoint_rep, build_classical, build_e7_model, build_f4_model, build_g2, build_spin, power_rep,
    primitive_wedge3, restrict_to_invariant_subspace, tensor_rep, traceless_sym2, Chirality, Family, LieRep,
    PowerKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Sl(usize),
    So(usize),
    Sp(usize),
    /// `spin(m)`, m odd, acting on its spinor module.
    Spin(usize),
    G2,
    F4,
    E7,
}

impl Factor {
    /// Dimension of the module used for `std` and `tensor`.
    pub fn std_dim(&self) -> usize {
        match *self {
            Factor::Sl(n) | Factor::So(n) | Factor::Sp(n) => n,
            Factor::Spin(m) => 1 << (m / 2),
            Factor::G2 => 7,
            Factor::F4 => 26,
            Factor::E7 => 56,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Factor::Sl(n) => n * n - 1,
            Factor::So(n) | Factor::Spin(n) => n * (n - 1) / 2,
            Factor::Sp(n) => n * (n + 1) / 2,
            Factor::G2 => 14,
            Factor::F4 => 52,
            Factor::E7 => 133,
        }
    }

    fn build(&self) -> Result<LieRep> {
        match *self {
            Factor::Sl(n) => build_classical(Family::Sl, n),
            Factor::So(n) => build_classical(Family::So, n),
            Factor::Sp(n) => build_classical(Family::Sp, n),
            Factor::Spin(m) => build_spin(m, Chirality::Full),
            Factor::G2 => build_g2(),
            Factor::F4 => build_f4_model(),
            Factor::E7 => build_e7_model(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Sl(n) => write!(f, "sl({n})"),
            Factor::So(n) => write!(f, "so({n})"),
            Factor::Sp(n) => write!(f, "sp({n})"),
            Factor::Spin(m) => write!(f, "spin({m})"),
            Factor::G2 => f.write_str("g2"),
            Factor::F4 => f.write_str("f4"),
            Factor::E7 => f.write_str("e7"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepKind {
    Std,
    Adjoint,
    Sym(usize),
    Wedge(usize),
    Spin,
    SpinPlus,
    SpinMinus,
    Tensor,
    Sym2_0,
    Wedge3_0,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Std => f.write_str("std"),
            RepKind::Adjoint => f.write_str("adjoint"),
            RepKind::Sym(k) => write!(f, "sym({k})"),
            RepKind::Wedge(k) => write!(f, "wedge({k})"),
            RepKind::Spin => f.write_str("spin"),
            RepKind::SpinPlus => f.write_str("spin+"),
            RepKind::SpinMinus => f.write_str("spin-"),
            RepKind::Tensor => f.write_str("tensor"),
            RepKind::Sym2_0 => f.write_str("sym2_0"),
            RepKind::Wedge3_0 => f.write_str("wedge3_0"),
        }
    }
}

/// A validated, canonical representation spec.
///
/// `gl(n)` is stored as `sl(n)` plus the center; tensor factors are sorted;
/// `spin(m):std` becomes `so(m):spin` and `sym(1)`/`wedge(1)` become `std`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepSpec {
    factors: Vec<Factor>,
    center: bool,
    rep: RepKind,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl RepSpec {
    pub fn new(factors: Vec<Factor>, center: bool, rep: RepKind) -> Result<Self> {
        let mut s = RepSpec { factors, center, rep };
        s.normalize()?;
        Ok(s)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn has_center(&self) -> bool {
        self.center
    }

    pub fn rep(&self) -> RepKind {
        self.rep
    }

    /// The same spec with the center toggled.
    pub fn with_center(&self, center: bool) -> Self {
        RepSpec {
            center,
            ..self.clone()
        }
    }

    fn normalize(&mut self) -> Result<()> {
        for f in &self.factors {
            check_factor(*f)?;
        }
        let single = self.factors.len() == 1;
        let sem = |m: String| Err(Error::Semantic(m));
        match self.rep {
            RepKind::Tensor => {
                if single {
                    return sem(format!("tensor needs at least two factors, got {}", self.factors[0]));
                }
                self.factors.sort();
                return Ok(());
            }
            _ if !single => {
                return sem(format!(
                    "{} is only defined for a single factor; use tensor for products",
                    self.rep
                ))
            }
            _ => {}
        }
        if matches!(self.rep, RepKind::Sym(1) | RepKind::Wedge(1)) {
            self.rep = RepKind::Std;
        }
        let f = self.factors[0];
        match (self.rep, f) {
            (RepKind::Sym(0) | RepKind::Wedge(0), _) => return sem("power degree must be at least 1".into()),
            (RepKind::Wedge(k), _) if k >= f.std_dim() => {
                return sem(format!("wedge({k}) of the {}-dimensional module of {f} is trivial or zero", f.std_dim()))
            }
            (RepKind::Std, Factor::Spin(m)) => {
                self.factors[0] = Factor::So(m);
                self.rep = RepKind::Spin;
            }
            (RepKind::Spin | RepKind::SpinPlus | RepKind::SpinMinus | RepKind::Adjoint, Factor::Spin(m)) => {
                self.factors[0] = Factor::So(m);
            }
            _ => {}
        }
        let f = self.factors[0];
        match (self.rep, f) {
            (RepKind::Spin, Factor::So(m)) if m % 2 == 0 => sem(format!("so({m}) is even: use spin+ or spin-")),
            (RepKind::SpinPlus | RepKind::SpinMinus, Factor::So(m)) if m % 2 == 1 => {
                sem(format!("so({m}) is odd: use spin"))
            }
            (RepKind::SpinPlus | RepKind::SpinMinus, Factor::So(4)) => {
                sem("so(4) acts on each half-spin module through one sl(2) factor only; use sl(2):std".into())
            }
            (RepKind::Spin | RepKind::SpinPlus | RepKind::SpinMinus, Factor::So(_)) => Ok(()),
            (RepKind::Spin | RepKind::SpinPlus | RepKind::SpinMinus, _) => {
                sem(format!("spin representations need an so(m) factor, got {f}"))
            }
            (RepKind::Sym2_0, Factor::So(_)) => Ok(()),
            (RepKind::Sym2_0, _) => sem(format!("sym2_0 needs an so(n) factor, got {f}")),
            (RepKind::Wedge3_0, Factor::Sp(n)) if n >= 6 => Ok(()),
            (RepKind::Wedge3_0, _) => sem(format!("wedge3_0 needs sp(n) with n >= 6, got {f}")),
            (RepKind::Adjoint, Factor::So(4)) => sem("so(4) is not simple: use sl(2)*sl(2):tensor".into()),
            _ => Ok(()),
        }
    }

    /// `dim V`, without building anything.
    pub fn dim_v(&self) -> usize {
        let f = self.factors[0];
        match self.rep {
            RepKind::Std => f.std_dim(),
            RepKind::Adjoint => f.dim(),
            RepKind::Sym(k) => binom(f.std_dim() + k - 1, k),
            RepKind::Wedge(k) => binom(f.std_dim(), k),
            RepKind::Spin => match f {
                Factor::So(m) => 1 << (m / 2),
                _ => 0,
            },
            RepKind::SpinPlus | RepKind::SpinMinus => match f {
                Factor::So(m) => 1 << (m / 2 - 1),
                _ => 0,
            },
            RepKind::Tensor => self.factors.iter().map(Factor::std_dim).product(),
            RepKind::Sym2_0 => binom(f.std_dim() + 1, 2) - 1,
            RepKind::Wedge3_0 => binom(f.std_dim(), 3) - f.std_dim(),
        }
    }

    /// `dim g`, center included.
    pub fn dim_g(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum::<usize>() + usize::from(self.center)
    }

    pub fn build(&self) -> Result<LieRep> {
        let f = self.factors[0];
        let base = |f: Factor| f.build();
        let mut rep = match self.rep {
            RepKind::Std => base(f)?,
            RepKind::Adjoint => adjoint_rep(&base(f)?)?,
            RepKind::Sym(k) => power_rep(&base(f)?, PowerKind::Sym, k)?,
            RepKind::Wedge(k) => power_rep(&base(f)?, PowerKind::Wedge, k)?,
            RepKind::Spin | RepKind::SpinPlus | RepKind::SpinMinus => {
                let m = match f {
                    Factor::So(m) => m,
                    _ => unreachable!("validated"),
                };
                let c = match self.rep {
                    RepKind::Spin => Chirality::Full,
                    RepKind::SpinPlus => Chirality::Plus,
                    _ => Chirality::Minus,
                };
                build_spin(m, c)?
            }
            RepKind::Tensor => {
                let mut acc = base(self.factors[0])?;
                for g in &self.factors[1..] {
                    acc = tensor_rep(&acc, &base(*g)?)?;
                }
                acc
            }
            RepKind::Sym2_0 => {
                let std = base(f)?;
                let form = std.form().cloned().ok_or_else(|| Error::Construction(format!("{f}: no form")))?;
                let sym2 = power_rep(&std, PowerKind::Sym, 2)?;
                let s = traceless_sym2(&sym2, &form)?;
                restrict_to_invariant_subspace(&sym2, &s)?
            }
            RepKind::Wedge3_0 => {
                let std = base(f)?;
                let form = std.form().cloned().ok_or_else(|| Error::Construction(format!("{f}: no form")))?;
                let w3 = power_rep(&std, PowerKind::Wedge, 3)?;
                let s = primitive_wedge3(&w3, &form)?;
                restrict_to_invariant_subspace(&w3, &s)?
            }
        };
        if self.center {
            rep = add_center(&rep)?;
        }
        rep.set_name(self.to_string());
        Ok(rep)
    }
}

fn check_factor(f: Factor) -> Result<()> {
    let bad = |m: String| Err(Error::Semantic(m));
    match f {
        Factor::Sl(n) if n < 2 => bad(format!("sl({n}): need n >= 2")),
        Factor::So(n) if n < 3 => bad(format!("so({n}): need n >= 3")),
        Factor::Sp(n) if n % 2 == 1 => bad(format!("sp({n}): odd symplectic rank, n must be even")),
        Factor::Sp(n) if n < 2 => bad(format!("sp({n}): need n >= 2")),
        Factor::Spin(m) if m % 2 == 0 || m < 3 => bad(format!("spin({m}): need odd m >= 3")),
        _ => Ok(()),
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{x}")?;
        }
        if self.center {
            f.write_str("+z")?;
        }
        write!(f, ":{}", self.rep)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &'a str {
        let r = self.rest();
        let len = r
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(r.len());
        self.pos += len;
        &r[..len]
    }

    fn paren_int(&mut self) -> Result<usize> {
        if !self.eat("(") {
            return self.err("expected '('");
        }
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if len == 0 {
            return self.err("expected an integer");
        }
        let v = r[..len].parse().or_else(|_| self.err("integer out of range"))?;
        self.pos += len;
        if !self.eat(")") {
            return self.err("expected ')'");
        }
        Ok(v)
    }

    /// A factor; `true` when it was written `gl(n)`.
    fn factor(&mut self) -> Result<(Factor, bool)> {
        let start = self.pos;
        let id = self.ident();
        let f = match id {
            "sl" => Factor::Sl(self.paren_int()?),
            "gl" => return Ok((Factor::Sl(self.paren_int()?), true)),
            "so" => Factor::So(self.paren_int()?),
            "sp" => Factor::Sp(self.paren_int()?),
            "spin" => Factor::Spin(self.paren_int()?),
            "g2" => Factor::G2,
            "f4" => Factor::F4,
            "e7" => Factor::E7,
            "" => return self.err("expected a factor"),
            other => {
                self.pos = start;
                return self.err(format!("unknown factor {other:?}"));
            }
        };
        Ok((f, false))
    }

    fn rep(&mut self) -> Result<RepKind> {
        let start = self.pos;
        let id = self.ident();
        Ok(match id {
            "std" => RepKind::Std,
            "adjoint" => RepKind::Adjoint,
            "sym" => RepKind::Sym(self.paren_int()?),
            "wedge" => RepKind::Wedge(self.paren_int()?),
            "spin" if self.eat("+") => RepKind::SpinPlus,
            "spin" if self.eat("-") => RepKind::SpinMinus,
            "spin" => RepKind::Spin,
            "tensor" => RepKind::Tensor,
            "sym2_0" => RepKind::Sym2_0,
            "wedge3_0" => RepKind::Wedge3_0,
            "" => return self.err("expected a representation"),
            other => {
                self.pos = start;
                return self.err(format!("unknown representation {other:?}"));
            }
        })
    }
}

/// Parses and canonicalizes a spec string.
pub fn parse_spec(s: &str) -> Result<RepSpec> {
    let mut p = Parser { s: s.trim(), pos: 0 };
    let mut factors = Vec::new();
    let mut gl = false;
    loop {
        let (f, is_gl) = p.factor()?;
        factors.push(f);
        gl |= is_gl;
        if !p.eat("*") {
            break;
        }
    }
    let z = p.eat("+z");
    if z && gl {
        return Err(Error::Semantic("gl(n) already contains the center; drop +z".into()));
    }
    if !p.eat(":") {
        return p.err("expected ':'");
    }
    let rep = p.rep()?;
    if !p.rest().is_empty() {
        return p.err("trailing input");
    }
    if gl && rep == RepKind::Adjoint {
        return Err(Error::Semantic(
            "gl(n):adjoint is not faithful; write sl(n)+z:adjoint for the adjoint module with the center acting by the identity"
                .into(),
        ));
    }
    RepSpec::new(factors, z || gl, rep)
}

impl FromStr for RepSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let c = |s: &str| parse_spec(s).unwrap().to_string();
        assert_eq!(c("sl(5):wedge(2)"), "sl(5):wedge(2)");
        assert_eq!(c("gl(5):wedge(2)"), "sl(5)+z:wedge(2)");
        assert_eq!(c("sl(3)*gl(2):tensor"), "sl(2)*sl(3)+z:tensor");
        assert_eq!(c("spin(7)*sl(2):tensor"), "sl(2)*spin(7):tensor");
        assert_eq!(c("spin(7):std"), "so(7):spin");
        assert_eq!(c("sl(4):sym(1)"), "sl(4):std");
        assert_eq!(c("spin(9):wedge(1)"), "so(9):spin");
        assert_eq!(c("spin(7):adjoint"), "so(7):adjoint");
        assert_eq!(c(" so(10)+z:spin+ "), "so(10)+z:spin+");
    }

    #[test]
    fn errors() {
        match parse_spec("sp(3):std") {
            Err(Error::Semantic(m)) => assert!(m.contains("odd")),
            e => panic!("{e:?}"),
        }
        match parse_spec("sl(5):wedgy(2)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            e => panic!("{e:?}"),
        }
        match parse_spec("sl(x):std") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_spec("so(10):spin"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("sl(3):tensor"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("gl(3):adjoint"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("so(4):spin+"), Err(Error::Semantic(_))));
        assert_eq!(parse_spec("sl(3)+z:adjoint").unwrap().to_string(), "sl(3)+z:adjoint");
        assert!(matches!(parse_spec("sl(3)*sl(2):std"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("sl(3):std extra"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn dimensions_match_builds() {
        for s in [
            "sl(4)+z:std",
            "sp(6):wedge3_0",
            "so(5):sym2_0",
            "so(10):spin+",
            "so(7):spin",
            "sl(2)*so(3):tensor",
            "g2:std",
            "sl(3):adjoint",
            "sl(3):sym(3)",
        ] {
            let spec = parse_spec(s).unwrap();
            let rep = spec.build().unwrap();
            assert_eq!(rep.dim_v(), spec.dim_v(), "{s}");
            assert_eq!(rep.dim_g(), spec.dim_g(), "{s}");
            assert_eq!(rep.name(), s);
        }
    }
}
