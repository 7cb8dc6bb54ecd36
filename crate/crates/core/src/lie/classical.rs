//! Standard representations of the classical Lie algebras in split form.

use std::fmt;
use std::str::FromStr;

use super::forms::detect_form;
use super::rep::{Form, FormKind, LieRep};
use crate::error::{Error, Result};
use crate::linalg::{qi, SparseMat, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sl,
    Gl,
    So,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sl => "sl",
            Family::Gl => "gl",
            Family::So => "so",
            Family::Sp => "sp",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(Family::Sl),
            "gl" => Ok(Family::Gl),
            "so" => Ok(Family::So),
            "sp" => Ok(Family::Sp),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

fn unit(n: usize, r: usize, c: usize, v: i64) -> (usize, usize, Q) {
    debug_assert!(r < n && c < n);
    (r, c, qi(v))
}

fn mat(n: usize, entries: Vec<(usize, usize, Q)>) -> SparseMat {
    SparseMat::from_triplets(n, n, entries).expect("entries in range")
}

/// Standard representation of `family(n)` on `C^n`.
///
/// * `sl(n)`: the matrix units `E_ij` (i ≠ j) and `H_i = E_ii − E_{i+1,i+1}`,
///   ordered by `(i, j)` with `H_i` in the slot of `(i, i)`.
/// * `gl(n)`: `sl(n)` followed by the identity.
/// * `so(n)`: `e_i ∧ e_j` (i < j) for the antidiagonal form, acting by
///   `(u∧w)v = g(w,v)u − g(u,v)w`. Cartan: `e_i ∧ e_{n+1−i}`.
/// * `sp(n)`, n even: `e_i ⊙ e_j` (i ≤ j) for the block-antidiagonal form
///   Ω, acting by `(u⊙w)v = Ω(v,u)w + Ω(v,w)u`. Cartan: `e_i ⊙ e_{n+1−i}`.
pub fn build_classical(family: Family, n: usize) -> Result<LieRep> {
    match family {
        Family::Sl | Family::Gl => {
            if n < 2 {
                return Err(Error::InvalidParameter(format!("{family}({n}): need n >= 2")));
            }
            let mut gens = Vec::new();
            let mut cartan = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        gens.push(mat(n, vec![unit(n, i, j, 1)]));
                    } else if i + 1 < n {
                        cartan.push(gens.len());
                        gens.push(mat(n, vec![unit(n, i, i, 1), unit(n, i + 1, i + 1, -1)]));
                    }
                }
            }
            let center = family == Family::Gl;
            if center {
                gens.push(SparseMat::identity(n));
                cartan.push(gens.len() - 1);
            }
            let rep = LieRep::new(format!("{family}({n}):std"), n, gens, cartan, None, center)?;
            // sl(2) on C² is symplectic
            let form = if center { None } else { detect_form(&rep)? };
            rep.with_form(form)
        }
        Family::So => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!("so({n}): need n >= 3")));
            }
            let prime = |i: usize| n - 1 - i;
            let mut gens = Vec::new();
            let mut cartan = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if j == prime(i) {
                        cartan.push(gens.len());
                    }
                    gens.push(mat(n, vec![unit(n, i, prime(j), 1), unit(n, j, prime(i), -1)]));
                }
            }
            let g = mat(n, (0..n).map(|i| unit(n, i, prime(i), 1)).collect());
            let form = Form::new(FormKind::Symmetric, g)?;
            LieRep::new(format!("so({n}):std"), n, gens, cartan, Some(form), false)
        }
        Family::Sp => {
            if n < 2 || n % 2 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "sp({n}): the symplectic dimension must be even and at least 2"
                )));
            }
            let h = n / 2;
            let prime = |i: usize| n - 1 - i;
            let omega = |a: usize, b: usize| -> i64 {
                if b == prime(a) {
                    if a < h {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                }
            };
            let mut gens = Vec::new();
            let mut cartan = Vec::new();
            for i in 0..n {
                for j in i..n {
                    if j == prime(i) {
                        cartan.push(gens.len());
                    }
                    // v ↦ Ω(v,e_i) e_j + Ω(v,e_j) e_i
                    let mut entries = Vec::new();
                    for v in 0..n {
                        let a = omega(v, i);
                        if a != 0 {
                            entries.push(unit(n, j, v, a));
                        }
                        let b = omega(v, j);
                        if b != 0 {
                            entries.push(unit(n, i, v, b));
                        }
                    }
                    gens.push(mat(n, entries));
                }
            }
            let g = mat(
                n,
                (0..n).map(|a| unit(n, a, prime(a), omega(a, prime(a)))).collect(),
            );
            let form = Form::new(FormKind::Skew, g)?;
            LieRep::new(format!("sp({n}):std"), n, gens, cartan, Some(form), false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2() {
        let r = build_classical(Family::Sl, 2).unwrap();
        assert_eq!(r.dim_g(), 3);
        assert_eq!(r.cartan().len(), 1);
        assert_eq!(r.generator(r.cartan()[0]).diagonal(), vec![qi(1), qi(-1)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_classical(Family::Gl, 3).unwrap().dim_g(), 9);
        assert_eq!(build_classical(Family::So, 3).unwrap().dim_g(), 3);
        assert_eq!(build_classical(Family::So, 6).unwrap().dim_g(), 15);
        assert_eq!(build_classical(Family::So, 7).unwrap().cartan().len(), 3);
        let sp4 = build_classical(Family::Sp, 4).unwrap();
        assert_eq!(sp4.dim_g(), 10);
        assert_eq!(sp4.cartan().len(), 2);
        assert!(build_classical(Family::Sp, 3).is_err());
    }
}
