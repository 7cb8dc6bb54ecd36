use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::elim::{Echelon, PivotRule};
use crate::linalg::{rank, Rationals, SparseMat, SparseVec, Q};

/// Above this many generators the Jacobi identity is checked on a random
/// sample of triples instead of all of them.
const JACOBI_FULL_LIMIT: usize = 140;
const JACOBI_SAMPLE: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Skew,
}

impl std::fmt::Display for FormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormKind::Symmetric => "symmetric",
            FormKind::Skew => "skew",
        })
    }
}

/// A nondegenerate bilinear form `B(u, w) = uᵀ G w` on V.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    pub kind: FormKind,
    pub matrix: SparseMat,
}

impl Form {
    pub fn new(kind: FormKind, matrix: SparseMat) -> Result<Self> {
        let t = matrix.transpose();
        let ok = match kind {
            FormKind::Symmetric => t == matrix,
            FormKind::Skew => t == matrix.scale(&-Q::one()),
        };
        if !ok {
            return Err(Error::Construction(format!("form matrix is not {kind}")));
        }
        if matrix.rows() != matrix.cols() || rank(&matrix)? != matrix.rows() {
            return Err(Error::Construction("form matrix is degenerate".into()));
        }
        Ok(Form { kind, matrix })
    }

    /// `B(u, w)` for sparse vectors.
    pub fn eval(&self, u: &[(usize, Q)], w: &[(usize, Q)]) -> Q {
        let gw = self.matrix.mul_vec(w);
        crate::linalg::sparse::dot(u, &gw)
    }

    /// Whether `Xᵀ G + G X = 0`.
    pub fn is_invariant_under(&self, x: &SparseMat) -> bool {
        x.transpose().mul(&self.matrix).add(&self.matrix.mul(x)).is_zero()
    }
}

/// Coordinates with respect to a fixed linearly independent list of
/// matrices, via the reduced echelon form of their flattenings augmented by
/// the identity.
#[derive(Debug, Clone)]
struct CoordSolver {
    /// (pivot position, echelon row restricted to matrix part, combination)
    rows: Vec<(usize, SparseVec, SparseVec)>,
    by_pivot: HashMap<usize, usize>,
}

impl CoordSolver {
    fn new(mats: &[SparseMat]) -> Result<Self> {
        let n2 = mats.first().map(|m| m.rows() * m.cols()).unwrap_or(0);
        let f = Rationals;
        let mut e = Echelon::new(&f, n2 + mats.len(), PivotRule::Leftmost);
        for (i, m) in mats.iter().enumerate() {
            let mut v = m.flatten();
            v.push((n2 + i, Q::one()));
            if !e.insert(&v) {
                return Err(Error::Construction(format!(
                    "generator {i} is a linear combination of the previous ones"
                )));
            }
        }
        e.back_substitute();
        let mut rows = Vec::new();
        let mut by_pivot = HashMap::new();
        for (pc, row) in e.pivot_rows() {
            if *pc >= n2 {
                return Err(Error::Construction("generators are linearly dependent".into()));
            }
            let (a, b): (Vec<_>, Vec<_>) = row.iter().cloned().partition(|(j, _)| *j < n2);
            let b = b.into_iter().map(|(j, x)| (j - n2, x)).collect();
            by_pivot.insert(*pc, rows.len());
            rows.push((*pc, a, b));
        }
        Ok(CoordSolver {
            rows,
            by_pivot,
        })
    }

    fn coords(&self, m: &SparseMat) -> Option<SparseVec> {
        let flat = m.flatten();
        let mut residual: HashMap<usize, Q> = flat.iter().cloned().collect();
        let mut out: std::collections::BTreeMap<usize, Q> = Default::default();
        for (pos, x) in &flat {
            let Some(&k) = self.by_pivot.get(pos) else {
                continue;
            };
            let (_, a, b) = &self.rows[k];
            for (j, y) in a {
                let e = residual.entry(*j).or_insert_with(Q::zero);
                *e -= x * y;
            }
            for (j, y) in b {
                *out.entry(*j).or_insert_with(Q::zero) += x * y;
            }
        }
        if residual.values().any(|v| !v.is_zero()) {
            return None;
        }
        Some(out.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }
}

/// An explicit matrix realization of a Lie algebra `g ⊂ gl(V)`.
#[derive(Debug, Clone)]
pub struct LieRep {
    name: String,
    dim_v: usize,
    generators: Vec<SparseMat>,
    /// `structure[i][j]` holds the coordinates of `[X_i, X_j]`.
    structure: Vec<Vec<SparseVec>>,
    cartan: Vec<usize>,
    form: Option<Form>,
    has_center: bool,
    solver: CoordSolver,
}

impl LieRep {
    /// Validate and assemble. Checks linear independence, closure, the
    /// Jacobi identity, diagonality of the Cartan generators and invariance
    /// of the form. With `has_center` the last generator must be the
    /// identity.
    pub fn new(
        name: impl Into<String>,
        dim_v: usize,
        generators: Vec<SparseMat>,
        cartan: Vec<usize>,
        form: Option<Form>,
        has_center: bool,
    ) -> Result<Self> {
        let name = name.into();
        for (i, x) in generators.iter().enumerate() {
            if x.rows() != dim_v || x.cols() != dim_v {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} of {name} is {}x{}, expected {dim_v}x{dim_v}",
                    x.rows(),
                    x.cols()
                )));
            }
        }
        let solver = CoordSolver::new(&generators)?;
        let d = generators.len();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let c = generators[i].commutator(&generators[j]);
                let coords = solver.coords(&c).ok_or_else(|| {
                    Error::Construction(format!("{name}: [X{i}, X{j}] leaves the span of the generators"))
                })?;
                structure[j][i] = coords.iter().map(|(k, v)| (*k, -v)).collect();
                structure[i][j] = coords;
            }
        }
        for &h in &cartan {
            if h >= d || !generators[h].is_diagonal() {
                return Err(Error::Construction(format!("{name}: Cartan generator {h} is not diagonal")));
            }
        }
        if let Some(f) = &form {
            if f.matrix.rows() != dim_v {
                return Err(Error::DimensionMismatch("form size".into()));
            }
            if let Some(i) = generators.iter().position(|x| !f.is_invariant_under(x)) {
                return Err(Error::Construction(format!("{name}: generator {i} does not preserve the form")));
            }
        }
        if has_center && generators.last() != Some(&SparseMat::identity(dim_v)) {
            return Err(Error::Construction(format!("{name}: last generator is not the identity")));
        }
        let rep = LieRep {
            name,
            dim_v,
            generators,
            structure,
            cartan,
            form,
            has_center,
            solver,
        };
        rep.check_jacobi()?;
        Ok(rep)
    }

    fn check_jacobi(&self) -> Result<()> {
        let d = self.dim_g();
        let triples: Vec<(usize, usize, usize)> = if d <= JACOBI_FULL_LIMIT {
            let mut t = Vec::new();
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        t.push((i, j, k));
                    }
                }
            }
            t
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            let idx: Vec<usize> = (0..d).collect();
            (0..JACOBI_SAMPLE)
                .map(|_| {
                    let s: Vec<usize> = idx.choose_multiple(&mut rng, 3).copied().collect();
                    (s[0], s[1], s[2])
                })
                .collect()
        };
        for (i, j, k) in triples {
            if !self.jacobi_residual(i, j, k).is_empty() {
                return Err(Error::Construction(format!(
                    "{}: Jacobi identity fails on ({i}, {j}, {k})",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Coordinates of `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> = Default::default();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, x) in &self.structure[a][b] {
                for (m, y) in &self.structure[*l][c] {
                    *acc.entry(*m).or_insert_with(Q::zero) += x * y;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_g(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[SparseMat] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &SparseMat {
        &self.generators[i]
    }

    /// Coordinates of `[X_i, X_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.structure[i][j]
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn form(&self) -> Option<&Form> {
        self.form.as_ref()
    }

    pub fn has_center(&self) -> bool {
        self.has_center
    }

    /// Generator indices of the semisimple part (all but the central one).
    pub fn semisimple_indices(&self) -> Vec<usize> {
        let d = self.dim_g() - usize::from(self.has_center);
        (0..d).collect()
    }

    /// Coordinates of a matrix in the generator basis, if it lies in g.
    pub fn coords_of(&self, m: &SparseMat) -> Option<SparseVec> {
        if m.rows() != self.dim_v || m.cols() != self.dim_v {
            return None;
        }
        self.solver.coords(m)
    }

    /// `Σ c_a X_a`.
    pub fn element(&self, coords: &[(usize, Q)]) -> SparseMat {
        let mut out = SparseMat::zero(self.dim_v, self.dim_v);
        for (a, c) in coords {
            out = out.lin_comb(&Q::one(), &self.generators[*a], c);
        }
        out
    }

    /// Matrix of `ad X_i` in the generator basis.
    pub fn ad(&self, i: usize) -> SparseMat {
        let d = self.dim_g();
        let mut triplets = Vec::new();
        for j in 0..d {
            for (k, c) in &self.structure[i][j] {
                triplets.push((*k, j, c.clone()));
            }
        }
        SparseMat::from_triplets(d, d, triplets).expect("indices in range")
    }

    /// `tr(X_i X_j)` on V.
    pub fn trace_form(&self) -> Vec<Vec<Q>> {
        let d = self.dim_g();
        let mut out = vec![vec![Q::zero(); d]; d];
        for i in 0..d {
            for j in i..d {
                let t = self.generators[i].trace_product(&self.generators[j]);
                out[j][i] = t.clone();
                out[i][j] = t;
            }
        }
        out
    }

    pub(crate) fn with_form(mut self, form: Option<Form>) -> Result<Self> {
        if let Some(f) = &form {
            if let Some(i) = self.generators.iter().position(|x| !f.is_invariant_under(x)) {
                return Err(Error::Construction(format!("generator {i} does not preserve the form")));
            }
        }
        self.form = form;
        Ok(self)
    }
}
