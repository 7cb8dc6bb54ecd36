//! Rows of Table 1 (irreducible skew-Berger subalgebras) and Table 3
//! (irreducible subalgebras with nonzero first skew-prolongation), with the
//! values expected for them.

use serde::Serialize;

use super::spec::{Factor, RepKind, RepSpec};
use crate::error::{Error, Result};
use crate::lie::FormKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated verbatim.
    Paper,
    /// Obtained from a stated isomorphism or module by a dimension formula.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub source: Source,
    pub quote: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Expectations {
    pub dim_rbar: Option<Expected<usize>>,
    pub is_skew_berger: Option<Expected<bool>>,
    pub is_symmetric: Option<Expected<bool>>,
    pub dim_g1: Option<Expected<usize>>,
    pub dim_g2: Option<Expected<usize>>,
    pub dim_h22: Option<Expected<usize>>,
    pub form_kind: Option<Expected<FormKind>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Params {
    pub z: bool,
    pub n: usize,
    pub m: usize,
    pub simple: Option<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub spec: RepSpec,
    pub table: u8,
    pub row: u8,
    pub params: Params,
    pub expected: Expectations,
}

impl RegistryEntry {
    pub fn label(&self) -> String {
        format!("Table {} row {}", self.table, self.row)
    }
}

/// Which parameters a row takes.
#[derive(Debug, Clone, Copy)]
pub struct RowMeta {
    pub table: u8,
    pub row: u8,
    pub algebra: &'static str,
    pub module: &'static str,
    pub restriction: &'static str,
    z: bool,
    n: bool,
    m: bool,
    simple: bool,
}

const fn meta(
    table: u8,
    row: u8,
    algebra: &'static str,
    module: &'static str,
    restriction: &'static str,
    (z, n, m, simple): (bool, bool, bool, bool),
) -> RowMeta {
    RowMeta {
        table,
        row,
        algebra,
        module,
        restriction,
        z,
        n,
        m,
        simple,
    }
}

const Z: (bool, bool, bool, bool) = (true, false, false, false);
const N: (bool, bool, bool, bool) = (false, true, false, false);
const ZN: (bool, bool, bool, bool) = (true, true, false, false);
const NM: (bool, bool, bool, bool) = (false, true, true, false);
const ZNM: (bool, bool, bool, bool) = (true, true, true, false);
const G: (bool, bool, bool, bool) = (false, false, false, true);
const FIXED: (bool, bool, bool, bool) = (false, false, false, false);

pub const TABLE1: &[RowMeta] = &[
    meta(1, 1, "z+sl(n)", "C^n", "n>=3", ZN),
    meta(1, 2, "z+sl(n)+sl(m)", "C^n*C^m", "n,m>=2, n!=m", ZNM),
    meta(1, 3, "sl(n)+sl(n)", "C^n*C^n", "n>=3", N),
    meta(1, 4, "sl(n)", "wedge2 C^n", "n>=6", N),
    meta(1, 5, "z+sl(5)", "wedge2 C^5", "", Z),
    meta(1, 6, "sl(n)", "sym2 C^n", "n>=3", N),
    meta(1, 7, "z+sp(2n)", "C^2n", "n>=2", ZN),
    meta(1, 8, "g", "g", "g simple", G),
    meta(1, 9, "z+spin(10)", "spin+ C^16", "", Z),
    meta(1, 10, "f6", "C^27", "", FIXED),
    meta(1, 11, "sl(2)+so(n)", "C^2*C^n", "n>=3", N),
    meta(1, 12, "spin(12)", "spin+ C^32", "", FIXED),
    meta(1, 13, "sl(6)", "wedge3 C^6", "", FIXED),
    meta(1, 14, "sp(6)", "V_p3 = C^14", "", FIXED),
    meta(1, 15, "so(n)", "C^n", "n>=3", N),
    meta(1, 16, "g2", "C^7", "", FIXED),
    meta(1, 17, "spin(7)", "C^8", "", FIXED),
    meta(1, 18, "sl(2)+sp(2n)", "C^2*C^2n", "n>=2", N),
    meta(1, 19, "sl(2)", "C^2", "", FIXED),
    meta(1, 20, "so(n)+sp(2m)", "C^n*C^2m", "n>=3, m>=2", NM),
    meta(1, 21, "g2+sl(2)", "C^7*C^2", "", FIXED),
    meta(1, 22, "spin(7)+sl(2)", "C^8*C^2", "", FIXED),
    meta(1, 23, "so(n)+sl(m)", "C^n*C^m", "n,m>=3", NM),
    meta(1, 24, "sp(2n)+sl(m)", "C^2n*C^m", "n>=2, m>=3", NM),
];

pub const TABLE3: &[RowMeta] = &[
    meta(3, 1, "sl(n)", "C^n", "n>=3", N),
    meta(3, 2, "gl(n)", "C^n", "n>=2", N),
    meta(3, 3, "sl(n)", "sym2 C^n", "n>=3", N),
    meta(3, 4, "gl(n)", "sym2 C^n", "n>=3", N),
    meta(3, 5, "sl(n)", "wedge2 C^n", "n>=5", N),
    meta(3, 6, "gl(n)", "wedge2 C^n", "n>=5", N),
    meta(3, 7, "sl(n)+sl(m)+C", "C^n*C^m", "n,m>=2, n!=m", NM),
    meta(3, 8, "sl(n)+sl(n)", "C^n*C^n", "n>=3", N),
    meta(3, 9, "sl(n)+sl(n)+C", "C^n*C^n", "n>=3", N),
    meta(3, 10, "so(n)", "C^n", "n>=4", N),
    meta(3, 11, "so(n)+C", "C^n", "n>=4", N),
    meta(3, 12, "sp(2n)+C", "C^2n", "n>=2", N),
    meta(3, 13, "g", "g", "g simple", G),
    meta(3, 14, "g+C", "g", "g simple", G),
];

pub fn rows(table: u8) -> Result<&'static [RowMeta]> {
    match table {
        1 => Ok(TABLE1),
        3 => Ok(TABLE3),
        t => Err(Error::InvalidParameter(format!("no table {t}: the registry has tables 1 and 3"))),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn paper<T>(value: T, quote: &str) -> Option<Expected<T>> {
    Some(Expected {
        value,
        provenance: Provenance {
            source: Source::Paper,
            quote: quote.to_string(),
        },
    })
}

fn derived<T>(value: T, quote: impl Into<String>) -> Option<Expected<T>> {
    Some(Expected {
        value,
        provenance: Provenance {
            source: Source::Derived,
            quote: quote.into(),
        },
    })
}

const T1_TITLE: &str = "Table 1, \"Irreducible skew-Berger subalgebras g ⊂ gl(V)\"";
const T1_SYM: &str = "main theorem, \"The representations 19-23 are symmetric skew-Berger algebras.\"";
const T1_SYMPLECTIC: &str =
    "main theorem, \"the representations 7 with z=0, 11-14 and 19-22 are symplectic\"";
const T1_ORTHOGONAL: &str = "main theorem, \"the representations 8 and 15-18 are orthogonal\"";
const T3_PROP: &str = "proposition after Table 3, \"All the representations of Table 3 exsept for the entries 4, the entries 5 for n ≥ 6, the entries 9, 11, 12 and 14 are skew-Berger algebras\"";

fn simple_list(max_dim: usize) -> Vec<Factor> {
    let mut out = Vec::new();
    for n in 2.. {
        let f = Factor::Sl(n);
        if f.dim() > max_dim {
            break;
        }
        out.push(f);
    }
    for n in (4..).step_by(2) {
        let f = Factor::Sp(n);
        if f.dim() > max_dim {
            break;
        }
        out.push(f);
    }
    for n in 7.. {
        let f = Factor::So(n);
        if f.dim() > max_dim {
            break;
        }
        out.push(f);
    }
    out.extend([Factor::G2, Factor::F4, Factor::E7].into_iter().filter(|f| f.dim() <= max_dim));
    out
}

fn refuse<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Semantic(msg.into()))
}

fn need(ok: bool, meta: &RowMeta) -> Result<()> {
    if ok {
        Ok(())
    } else {
        refuse(format!(
            "Table {} row {} requires {}",
            meta.table, meta.row, meta.restriction
        ))
    }
}

/// The simple algebras of Table 1 row 8 and Table 3 rows 13, 14, with the
/// isomorphic duplicates refused.
fn check_simple(f: Factor) -> Result<()> {
    match f {
        Factor::So(3) => refuse("so(3) ≅ sl(2): use sl(2)"),
        Factor::So(4) => refuse("so(4) is not simple"),
        Factor::So(5) => refuse("so(5) ≅ sp(4): use sp(4)"),
        Factor::So(6) => refuse("so(6) ≅ sl(4): use sl(4)"),
        Factor::Sp(2) => refuse("sp(2) ≅ sl(2): use sl(2)"),
        Factor::Spin(m) => refuse(format!("spin({m}) ≅ so({m}): use so({m})")),
        _ => Ok(()),
    }
}

fn spec(factors: Vec<Factor>, z: bool, rep: RepKind) -> Result<RepSpec> {
    RepSpec::new(factors, z, rep)
}

/// Builds the registry entry for one row at one parameter choice.
/// Parameter choices outside the row's restriction are refused; when a
/// choice is excluded because of an isomorphism, the error names the
/// canonical presentation.
pub fn instantiate(table: u8, row: u8, p: &Params) -> Result<RegistryEntry> {
    let meta = *rows(table)?
        .iter()
        .find(|r| r.row == row)
        .ok_or_else(|| Error::InvalidParameter(format!("Table {table} has no row {row}")))?;
    let Params { z, n, m, .. } = *p;
    let mut e = Expectations::default();
    let (f, rep, center) = match (table, row) {
        (1, _) => {
            e.is_skew_berger = paper(true, T1_TITLE);
            if (19..=23).contains(&row) {
                e.is_symmetric = paper(true, T1_SYM);
            }
            let symplectic = (row == 7 && !z) || (11..=14).contains(&row) || (19..=22).contains(&row);
            if symplectic {
                e.form_kind = paper(FormKind::Skew, T1_SYMPLECTIC);
            } else if row == 8 || (15..=18).contains(&row) {
                e.form_kind = paper(FormKind::Symmetric, T1_ORTHOGONAL);
            }
            table1(row, p, &meta, &mut e)?
        }
        (3, _) => table3(row, p, &meta, &mut e)?,
        _ => unreachable!(),
    };
    let params = Params {
        z: meta.z && z,
        n: if meta.n { n } else { 0 },
        m: if meta.m { m } else { 0 },
        simple: if meta.simple { p.simple } else { None },
    };
    Ok(RegistryEntry {
        spec: spec(f, center, rep)?,
        table,
        row,
        params,
        expected: e,
    })
}

type Shape = (Vec<Factor>, RepKind, bool);

fn table1(row: u8, p: &Params, meta: &RowMeta, e: &mut Expectations) -> Result<Shape> {
    use Factor::*;
    use RepKind::*;
    let Params { z, n, m, simple } = *p;
    Ok(match row {
        1 => {
            if n == 2 {
                return refuse("n = 2 is Table 1 row 19 (sl(2):std); with the center use Table 3 row 2");
            }
            need(n >= 3, meta)?;
            (vec![Sl(n)], Std, z)
        }
        2 => {
            need(n >= 2 && m >= 2 && n != m, meta)?;
            if n > m {
                return refuse(format!("factors are sorted: use n = {m}, m = {n}"));
            }
            let d = n * m;
            e.dim_rbar = if z {
                derived(d * d, "tensor-product discussion, \"R̄(sl(n,C)⊕sl(m,C)⊕C) ≃ V*⊗V*\"; dim = (nm)²")
            } else {
                derived(binom(d, 2), "tensor-product discussion, \"R̄(sl(n,C)⊕sl(m,C)) ≃ Λ²V*\"; dim = nm(nm−1)/2")
            };
            (vec![Sl(n), Sl(m)], Tensor, z)
        }
        3 => {
            if n == 2 {
                return refuse("sl(2)⊕sl(2) on C²⊗C² is so(4):std (Table 1 row 15)");
            }
            need(n >= 3, meta)?;
            e.dim_rbar = derived(n.pow(4), "tensor-product discussion, \"Similarly, R̄(sl(n,C)⊕sl(n,C)) ≃ V*⊗V*\"; dim = n⁴");
            (vec![Sl(n), Sl(n)], Tensor, false)
        }
        4 => {
            match n {
                3 => return refuse("Λ²C³ ≅ (C³)* under sl(3): use sl(3):std (Table 1 row 1)"),
                4 => return refuse("Λ²C⁴ ≅ C⁶ under sl(4) ≅ so(6): use so(6):std (Table 1 row 15)"),
                5 => return refuse("n = 5 is Table 1 row 5"),
                _ => need(n >= 6, meta)?,
            }
            (vec![Sl(n)], Wedge(2), false)
        }
        5 => (vec![Sl(5)], Wedge(2), z),
        6 => {
            if n == 2 {
                return refuse("⊙²C² under sl(2) is so(3):std (Table 1 row 15)");
            }
            need(n >= 3, meta)?;
            (vec![Sl(n)], Sym(2), false)
        }
        7 => {
            if n == 1 {
                return refuse("sp(2) ≅ sl(2): use sl(2):std (Table 1 rows 1 and 19)");
            }
            need(n >= 2, meta)?;
            (vec![Sp(2 * n)], Std, z)
        }
        8 => {
            let f = simple.ok_or_else(|| Error::InvalidParameter("row 8 needs a simple algebra".into()))?;
            check_simple(f)?;
            (vec![f], Adjoint, false)
        }
        9 => {
            e.dim_rbar = if z {
                paper(176, "spin(10) case, \"dim R̄(spin(10,C)⊕C)=176\"")
            } else {
                paper(120, "spin(10) case, \"dim R̄(spin(10,C))=120\"")
            };
            (vec![So(10)], SpinPlus, z)
        }
        10 => return refuse("Table 1 row 10 (f6 = e6 on C²⁷) has no construction here"),
        11 => {
            need(n >= 3, meta)?;
            (vec![Sl(2), So(n)], Tensor, false)
        }
        12 => (vec![So(12)], SpinPlus, false),
        13 => {
            e.dim_rbar = paper(35, "sl(6) on Λ³C⁶ case, \"If n=6, then ... dim R̄(g_s)=35\"");
            (vec![Sl(6)], Wedge(3), false)
        }
        14 => (vec![Sp(6)], Wedge3_0, false),
        15 => {
            need(n >= 3, meta)?;
            (vec![So(n)], Std, false)
        }
        16 => (vec![G2], Std, false),
        17 => {
            e.dim_rbar = paper(126, "spin(2n+1) case, \"dim R̄(spin(7,C))=126\"");
            (vec![So(7)], RepKind::Spin, false)
        }
        18 => {
            if n == 1 {
                return refuse("sl(2)⊕sp(2) on C²⊗C² is so(4):std (Table 1 row 15)");
            }
            need(n >= 2, meta)?;
            (vec![Sl(2), Sp(2 * n)], Tensor, false)
        }
        19 => (vec![Sl(2)], Std, false),
        20 => {
            need(n >= 3 && m >= 2, meta)?;
            e.dim_rbar = paper(1, "proof of the main theorem, \"R̄(so(n,C)⊕sp(2m,C)) is one-dimensional\"");
            (vec![So(n), Sp(2 * m)], Tensor, false)
        }
        21 => (vec![G2, Sl(2)], Tensor, false),
        22 => (vec![Factor::Spin(7), Sl(2)], Tensor, false),
        23 => {
            need(n >= 3 && m >= 3, meta)?;
            e.dim_rbar = derived(
                binom(m, 2),
                "proof of the main theorem, \"R̄(so(n1,C)⊕sl(n2,C)) ≃ Λ²(C^{n2})*\"; dim = m(m−1)/2",
            );
            (vec![So(n), Sl(m)], Tensor, false)
        }
        24 => {
            need(n >= 2 && m >= 3, meta)?;
            e.dim_rbar = derived(
                binom(2 * n + 1, 2),
                "proof of the main theorem, \"R̄(sp(n1,C)⊕sl(n2,C)) ≃ ⊙²(C^{n1})*\" with n1 = 2n; dim = n(2n+1)",
            );
            (vec![Sp(2 * n), Sl(m)], Tensor, false)
        }
        _ => unreachable!("row list"),
    })
}

fn table3(row: u8, p: &Params, meta: &RowMeta, e: &mut Expectations) -> Result<Shape> {
    use Factor::*;
    use RepKind::*;
    let Params { n, m, simple, .. } = *p;
    let t3 = |col: &str| format!("Table 3 row {row}, column {col}");
    let set = |e: &mut Expectations, g1: usize, g1m: &str, g2: usize, g2m: &str| {
        e.dim_g1 = derived(g1, format!("{}: \"{g1m}\"", t3("g^[1]")));
        e.dim_g2 = derived(g2, format!("{}: \"{g2m}\"", t3("g^[2]")));
    };
    let h0 = |e: &mut Expectations| e.dim_h22 = paper(0, &format!("{}: \"0\"", t3("H^{2,2}")));
    let sb = |e: &mut Expectations, v: bool, q: &str| e.is_skew_berger = paper(v, q);
    Ok(match row {
        1 => {
            need(n >= 3, meta)?;
            set(e, n * binom(n, 2) - n, "(C^n⊗Λ²(C^n)*)_0", n * binom(n, 3) - binom(n, 2), "(C^n⊗Λ³(C^n)*)_0");
            h0(e);
            sb(e, true, T3_PROP);
            (vec![Sl(n)], Std, false)
        }
        2 => {
            need(n >= 2, meta)?;
            set(e, n * binom(n, 2), "C^n⊗Λ²(C^n)*", n * binom(n, 3), "C^n⊗Λ³(C^n)*");
            h0(e);
            sb(e, true, T3_PROP);
            (vec![Sl(n)], Std, true)
        }
        3 | 4 => {
            if n == 2 {
                return refuse("⊙²C² under sl(2) is so(3):std; under gl(2) it is so(3)+z:std (Table 3 row 11 excludes n = 3)");
            }
            need(n >= 3, meta)?;
            set(e, binom(n, 2), "Λ²(C^n)*", 0, "0");
            h0(e);
            if row == 3 {
                sb(e, true, T3_PROP);
            } else {
                sb(e, false, "lemma, \"R̄(gl(n,C))=R̄(sl(n,C)) and gl(n,C) acting on ... is not a Berger algebra\" (V = ⊙²C^n)");
            }
            (vec![Sl(n)], Sym(2), row == 4)
        }
        5 | 6 => {
            match n {
                3 => return refuse("\"Λ²C³ ≃ (C³)*\": use sl(3):std (Table 3 rows 1 and 2)"),
                4 => return refuse("\"sl(4,C) ≃ so(6,C) and Λ²C⁴ ≃ C⁶\": use so(6):std (Table 3 rows 10 and 11)"),
                _ => need(n >= 5, meta)?,
            }
            set(e, binom(n + 1, 2), "⊙²(C^n)*", 0, "0");
            if row == 5 {
                h0(e);
                sb(e, true, T3_PROP);
            } else if n == 5 {
                e.dim_h22 = paper(5, &format!("{}: \"C⁵ if n=5\"", t3("H^{2,2}")));
                sb(e, true, "Table 3 discussion, \"Hence gl(5,C) acting on Λ²C⁵ is a Berger algebra\"");
            } else {
                e.dim_h22 = paper(0, &format!("{}: \"0 if n ≥ 6\"", t3("H^{2,2}")));
                sb(e, false, "lemma on gl(n) acting on Λ²C^n, \"If n≥6, then R̄(gl(n,C))=R̄(sl(n,C)) and gl(n,C) acting on Λ²C^n is not a Berger algebra\"");
            }
            (vec![Sl(n)], Wedge(2), row == 6)
        }
        7 => {
            need(n >= 2 && m >= 2 && n != m, meta)?;
            if n > m {
                return refuse(format!("factors are sorted: use n = {m}, m = {n}"));
            }
            set(e, n * m, "V*", 0, "0");
            h0(e);
            sb(e, true, T3_PROP);
            (vec![Sl(n), Sl(m)], Tensor, true)
        }
        8 | 9 => {
            if n == 2 {
                return refuse("\"we assume n ≥ 3 for the entries 8 and 9\": sl(2)⊕sl(2) on C²⊗C² is so(4):std");
            }
            need(n >= 3, meta)?;
            set(e, n * n, "V*", 0, "0");
            h0(e);
            if row == 8 {
                sb(e, true, T3_PROP);
            } else {
                sb(e, false, "lemma, \"the representation of sl(n,C)⊕sl(n,C)⊕C on C^n⊗C^n (n≥3) is not a skew-Berger algebra\"");
            }
            (vec![Sl(n), Sl(n)], Tensor, row == 9)
        }
        10 | 11 => {
            if n == 3 {
                return refuse("so(3):std is the adjoint module of sl(2) (Table 3 rows 13 and 14)");
            }
            need(n >= 4, meta)?;
            set(e, binom(n, 3), "Λ³V*", binom(n, 4), "Λ⁴V*");
            h0(e);
            if row == 10 {
                sb(e, true, T3_PROP);
            } else {
                sb(e, false, "proposition on g ⊂ so(n), \"R̄(g⊕C)=R̄(g). In particular, g⊕C is not a skew-Berger algebra.\"");
            }
            (vec![So(n)], Std, row == 11)
        }
        12 => {
            if n == 1 {
                return refuse("\"we assume n ≥ 2 for the entry 12\": sp(2)+z is gl(2), Table 3 row 2");
            }
            need(n >= 2, meta)?;
            set(e, 2 * n, "V*", 0, "0");
            (vec![Sp(2 * n)], Std, true)
        }
        13 | 14 => {
            let f = simple.ok_or_else(|| Error::InvalidParameter("rows 13 and 14 need a simple algebra".into()))?;
            check_simple(f)?;
            set(e, 1, "C id", 0, "0");
            if row == 13 {
                sb(e, true, "Table 3 discussion, \"R̄(g) contains a component isomorphic to g and hence g ⊂ gl(g) is a skew-Berger algebra\"");
            } else {
                sb(e, false, "Table 3 discussion, \"R̄(g⊕C)=R̄(g) ... and g⊕C ⊂ gl(g) is not a skew-Berger algebra\"");
            }
            (vec![f], Adjoint, row == 14)
        }
        _ => unreachable!("row list"),
    })
}

/// Every row instance with `dim V ≤ max_dim`, in row order.
pub fn entries(table: u8, max_dim: usize) -> Result<Vec<RegistryEntry>> {
    let mut out = Vec::new();
    for meta in rows(table)? {
        out.extend(row_entries(meta, max_dim));
    }
    Ok(out)
}

pub fn row_entries(meta: &RowMeta, max_dim: usize) -> Vec<RegistryEntry> {
    let zs: &[bool] = if meta.z { &[false, true] } else { &[false] };
    let ns: Vec<usize> = if meta.n { (1..=max_dim).collect() } else { vec![0] };
    let ms: Vec<usize> = if meta.m { (1..=max_dim).collect() } else { vec![0] };
    let gs: Vec<Option<Factor>> = if meta.simple {
        simple_list(max_dim).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for &z in zs {
        for &n in &ns {
            for &m in &ms {
                for &simple in &gs {
                    let p = Params { z, n, m, simple };
                    if let Ok(e) = instantiate(meta.table, meta.row, &p) {
                        if e.spec.dim_v() <= max_dim {
                            out.push(e);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All registry entries (both tables) whose spec equals `spec`.
pub fn lookup(spec: &RepSpec) -> Vec<RegistryEntry> {
    let d = spec.dim_v();
    TABLE1
        .iter()
        .chain(TABLE3)
        .flat_map(|m| row_entries(m, d))
        .filter(|e| &e.spec == spec)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::parse_spec;

    #[test]
    fn small_sweeps() {
        let t1: Vec<String> = entries(1, 8).unwrap().iter().map(|e| e.spec.to_string()).collect();
        for s in ["sl(3):std", "sl(3)+z:std", "sl(2)*sl(3):tensor", "sl(2)*sl(3)+z:tensor", "sl(2):std", "so(7):spin", "g2:std", "sl(3):adjoint"] {
            assert!(t1.contains(&s.to_string()), "{s} missing from {t1:?}");
        }
        assert!(!t1.iter().any(|s| s == "sl(4):wedge(2)"));
        assert!(entries(3, 1).unwrap().is_empty());
        assert!(entries(2, 10).is_err());
    }

    #[test]
    fn refusals_point_to_canonical() {
        let p = Params { n: 4, ..Default::default() };
        match instantiate(1, 4, &p) {
            Err(Error::Semantic(m)) => assert!(m.contains("so(6):std")),
            e => panic!("{e:?}"),
        }
        let p = Params { n: 2, ..Default::default() };
        match instantiate(3, 3, &p) {
            Err(Error::Semantic(m)) => assert!(m.contains("so(3)")),
            e => panic!("{e:?}"),
        }
        assert!(instantiate(1, 10, &Params::default()).is_err());
    }

    #[test]
    fn expectations_carry_quotes() {
        let e = lookup(&parse_spec("sl(5)+z:wedge(2)").unwrap());
        let t3: Vec<_> = e.iter().filter(|e| e.table == 3).collect();
        assert_eq!(t3.len(), 1);
        let h = t3[0].expected.dim_h22.as_ref().unwrap();
        assert_eq!(h.value, 5);
        assert!(h.provenance.quote.contains("C⁵ if n=5"));
        let spin = lookup(&parse_spec("so(10)+z:spin+").unwrap());
        assert_eq!(spin[0].expected.dim_rbar.as_ref().unwrap().value, 176);
    }
}
