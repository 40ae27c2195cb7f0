//! Lie algebras as structure-constant data.
//!
//! Polynomials attached to an algebra `L` live in its *native coordinates*:
//! when `L` carries a nondegenerate invariant form the coordinates are those
//! of `L` itself (functions on `L`, identified with functions on `L*`
//! through the form); otherwise they are the coordinates of `L*` dual to
//! the basis. [`LieAlgebraData::to_dual`] converts a native point to the
//! dual coordinates used by the structure matrix.

mod classical;
mod sl2;

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use classical::build_classical;
pub use sl2::{jordan_triple, kostant_slice, principal_sl2, SL2Triple, SliceChart};

use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, rat_to_string, Polynomial, Rational};
use crate::linalg::{polynomial_matrix_rank, row_echelon_basis, CoordinateSolver, Matrix};
use crate::sampling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Gl,
    Sl,
    So,
    Sp,
    Centralizer,
}

impl AlgebraKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gl" => Some(Self::Gl),
            "sl" => Some(Self::Sl),
            "so" => Some(Self::So),
            "sp" => Some(Self::Sp),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Gl => "gl",
            Self::Sl => "sl",
            Self::So => "so",
            Self::Sp => "sp",
            Self::Centralizer => "centralizer",
        }
    }
}

/// A matrix Lie algebra: basis matrices of size `size` and a solver for
/// coordinates in that basis.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub size: usize,
    pub basis: Vec<Matrix>,
    solver: CoordinateSolver,
}

impl MatrixRealization {
    pub fn new(size: usize, basis: Vec<Matrix>) -> Option<Self> {
        let flat: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
        let solver = CoordinateSolver::new(&flat, size * size)?;
        Some(MatrixRealization {
            size,
            basis,
            solver,
        })
    }

    pub fn to_matrix(&self, v: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of a matrix, or `None` if it is not in the algebra.
    pub fn from_matrix(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.solver.coordinates(&flatten(m))
    }
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

type Sparse = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub kind: AlgebraKind,
    /// Matrix size of the defining representation (of the ambient algebra
    /// for centralizers).
    pub size: usize,
    /// Rank of the ambient reductive algebra when known.
    pub rank: Option<usize>,
    pub labels: Vec<String>,
    /// `structure[i][j]` lists `(k, c)` with `[b_i, b_j] = sum c * b_k`.
    structure: Vec<Vec<Sparse>>,
    pub form: Option<Matrix>,
    pub realization: Option<MatrixRealization>,
    form_inverse: OnceLock<Option<Matrix>>,
    index: OnceLock<IndexReport>,
    poisson: OnceLock<Vec<Vec<Polynomial>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMode {
    Exact,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub dim: usize,
    pub generic_rank: usize,
    pub index: usize,
    pub mode: IndexMode,
    #[serde(serialize_with = "serialize_points")]
    pub certificate_points: Vec<Vec<Rational>>,
}

impl IndexReport {
    /// `(dim + index) / 2`.
    pub fn b(&self) -> usize {
        (self.dim + self.index) / 2
    }
}

fn serialize_points<S: serde::Serializer>(pts: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = pts.iter().map(|p| vector_to_strings(p)).collect();
    text.serialize(s)
}

pub fn vector_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

/// Dimension cut-off for exact fraction-field rank in [`LieAlgebraData::index_of`].
pub const EXACT_INDEX_MAX_DIM: usize = 12;
/// Bound on draws when searching for a random regular point.
pub const REGULAR_POINT_ATTEMPTS: usize = 64;
const INDEX_SEED: u64 = 0x1de5;
const INDEX_SAMPLES: usize = 5;

impl LieAlgebraData {
    /// Assemble from a sparse structure table; runs all structure checks.
    pub fn from_parts(
        kind: AlgebraKind,
        size: usize,
        rank: Option<usize>,
        labels: Vec<String>,
        structure: Vec<Vec<Sparse>>,
        form: Option<Matrix>,
        realization: Option<MatrixRealization>,
    ) -> Result<Self> {
        let n = labels.len();
        if structure.len() != n || structure.iter().any(|row| row.len() != n) {
            return Err(Error::Structure(
                "structure table shape does not match basis".into(),
            ));
        }
        if let Some(f) = &form {
            if f.rows() != n || f.cols() != n {
                return Err(Error::Structure("form shape does not match basis".into()));
            }
        }
        let alg = LieAlgebraData {
            kind,
            size,
            rank,
            labels,
            structure,
            form,
            realization,
            form_inverse: OnceLock::new(),
            index: OnceLock::new(),
            poisson: OnceLock::new(),
        };
        alg.verify_structure()?;
        Ok(alg)
    }

    /// Build from basis matrices, using the trace form when `with_form`.
    pub fn from_matrices(
        kind: AlgebraKind,
        rank: Option<usize>,
        labels: Vec<String>,
        realization: MatrixRealization,
        with_form: bool,
    ) -> Result<Self> {
        let n = realization.basis.len();
        let mut structure = vec![vec![Vec::new(); n]; n];
        for (i, row) in structure.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i == j {
                    continue;
                }
                let a = &realization.basis[i];
                let b = &realization.basis[j];
                let comm = a.mul(b).sub(&b.mul(a));
                let coords = realization.from_matrix(&comm).ok_or_else(|| {
                    Error::Structure(format!("[{}, {}] leaves the algebra", i, j))
                })?;
                *slot = sparse(&coords);
            }
        }
        let form = with_form.then(|| {
            let mut f = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    f[(i, j)] = realization.basis[i].mul(&realization.basis[j]).trace();
                }
            }
            f
        });
        Self::from_parts(
            kind,
            realization.size,
            rank,
            labels,
            structure,
            form,
            Some(realization),
        )
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.structure[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Length {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &w * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x`; column `j` is `[x, b_j]`.
    pub fn adjoint_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        self.check_len(x)?;
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&cols, n))
    }

    /// Invariant form of two vectors; `None` without a form.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Option<Rational> {
        let f = self.form.as_ref()?;
        let fy = f.mul_vec(y);
        Some(
            x.iter()
                .zip(&fy)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b),
        )
    }

    fn form_inverse(&self) -> Option<&Matrix> {
        self.form_inverse
            .get_or_init(|| self.form.as_ref().and_then(Matrix::inverse))
            .as_ref()
    }

    /// Native coordinates to coordinates on `L*` dual to the basis.
    pub fn to_dual(&self, x: &[Rational]) -> Vec<Rational> {
        match &self.form {
            Some(f) => f.mul_vec(x),
            None => x.to_vec(),
        }
    }

    /// Dual coordinates to native coordinates.
    pub fn from_dual(&self, y: &[Rational]) -> Vec<Rational> {
        match self.form_inverse() {
            Some(inv) => inv.mul_vec(y),
            None => y.to_vec(),
        }
    }

    /// `B(y)_{ij} = sum_k c_{ij}^k y_k` for `y` in dual coordinates.
    pub fn structure_matrix(&self, y: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = self.structure[i][j]
                    .iter()
                    .fold(Rational::zero(), |acc, (k, c)| acc + c * &y[*k]);
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Structure matrix with symbolic entries in `n` variables.
    pub fn symbolic_structure_matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut coeffs = vec![Rational::zero(); n];
                        for (k, c) in &self.structure[i][j] {
                            coeffs[*k] = c.clone();
                        }
                        Polynomial::linear_form(&coeffs)
                    })
                    .collect()
            })
            .collect()
    }

    /// Index of the algebra: `dim - generic rank of B`. Exact over the
    /// fraction field up to [`EXACT_INDEX_MAX_DIM`], otherwise the maximum
    /// over seeded sample points.
    pub fn index_of(&self) -> &IndexReport {
        self.index
            .get_or_init(|| self.compute_index(self.dim() <= EXACT_INDEX_MAX_DIM))
    }

    pub fn compute_index(&self, exact: bool) -> IndexReport {
        let n = self.dim();
        let mut rng = sampling::rng(INDEX_SEED);
        if exact {
            let generic_rank = polynomial_matrix_rank(&self.symbolic_structure_matrix());
            // A point attaining the generic rank certifies the lower bound.
            let mut certificate = Vec::new();
            for _ in 0..64 {
                let p = sampling::rational_vector(&mut rng, n);
                if self.structure_matrix(&p).rank() == generic_rank {
                    certificate.push(p);
                    break;
                }
            }
            IndexReport {
                dim: n,
                generic_rank,
                index: n - generic_rank,
                mode: IndexMode::Exact,
                certificate_points: certificate,
            }
        } else {
            let points: Vec<Vec<Rational>> = (0..INDEX_SAMPLES)
                .map(|_| sampling::rational_vector(&mut rng, n))
                .collect();
            let generic_rank = points
                .iter()
                .map(|p| self.structure_matrix(p).rank())
                .max()
                .unwrap_or(0);
            IndexReport {
                dim: n,
                generic_rank,
                index: n - generic_rank,
                mode: IndexMode::Randomized,
                certificate_points: points,
            }
        }
    }

    /// `(dim + index) / 2`.
    pub fn b(&self) -> usize {
        self.index_of().b()
    }

    /// Dimension of the stabilizer of a native point.
    pub fn stabilizer_dim(&self, xi: &[Rational]) -> Result<usize> {
        self.check_len(xi)?;
        Ok(self.dim() - self.structure_matrix(&self.to_dual(xi)).rank())
    }

    pub fn is_regular_point(&self, xi: &[Rational]) -> Result<bool> {
        Ok(self.stabilizer_dim(xi)? == self.index_of().index)
    }

    /// First seeded random point that is regular, with the number of draws.
    pub fn random_regular_point(
        &self,
        seed: u64,
        max_attempts: usize,
    ) -> Result<(Vec<Rational>, usize)> {
        let mut rng = sampling::rng(seed);
        for attempt in 1..=max_attempts {
            let p = sampling::rational_vector(&mut rng, self.dim());
            if self.is_regular_point(&p)? {
                return Ok((p, attempt));
            }
        }
        Err(Error::NoRegularPoint(max_attempts))
    }

    /// Linear Poisson tensor in native coordinates: entry `(i, j)` is
    /// `{x_i, x_j}`.
    pub fn poisson_tensor(&self) -> &Vec<Vec<Polynomial>> {
        self.poisson.get_or_init(|| {
            let n = self.dim();
            match (self.form.as_ref(), self.form_inverse()) {
                (Some(f), Some(finv)) => {
                    let duals: Vec<Vec<Rational>> = (0..n).map(|i| finv.column(i)).collect();
                    (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    let w =
                                        self.bracket(&duals[i], &duals[j]).expect("lengths match");
                                    Polynomial::linear_form(&f.mul_vec(&w))
                                })
                                .collect()
                        })
                        .collect()
                }
                _ => self.symbolic_structure_matrix(),
            }
        })
    }

    /// Centralizer of `e` with its inclusion matrix (columns are the basis
    /// of the centralizer in the coordinates of `self`). For `e = 0` this
    /// is the algebra itself with the identity inclusion.
    pub fn centralizer(&self, e: &[Rational]) -> Result<(LieAlgebraData, Matrix)> {
        self.check_len(e)?;
        let n = self.dim();
        if e.iter().all(Zero::is_zero) {
            return Ok((self.clone(), Matrix::identity(n)));
        }
        let kernel = self.adjoint_matrix(e)?.kernel();
        self.subalgebra(&kernel)
    }

    /// Subalgebra spanned by `basis` (assumed closed under the bracket).
    pub fn subalgebra(&self, basis: &[Vec<Rational>]) -> Result<(LieAlgebraData, Matrix)> {
        let n = self.dim();
        let m = basis.len();
        let solver = CoordinateSolver::new(basis, n)
            .ok_or_else(|| Error::Structure("subalgebra basis is dependent".into()))?;
        let mut structure = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let w = self.bracket(&basis[a], &basis[b])?;
                let coords = solver.coordinates(&w).ok_or_else(|| {
                    Error::Structure("subspace is not closed under the bracket".into())
                })?;
                structure[a][b] = sparse(&coords);
            }
        }
        let labels: Vec<String> = basis.iter().map(|v| self.describe(v)).collect();
        let realization = self.realization.as_ref().and_then(|r| {
            MatrixRealization::new(r.size, basis.iter().map(|v| r.to_matrix(v)).collect())
        });
        let sub = LieAlgebraData::from_parts(
            AlgebraKind::Centralizer,
            self.size,
            self.rank,
            labels,
            structure,
            None,
            realization,
        )?;
        Ok((sub, Matrix::from_columns(basis, n)))
    }

    /// Human-readable linear combination of basis labels.
    pub fn describe(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (c, label) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if !abs.is_one() {
                out.push_str(&rat_to_string(&abs));
                out.push('*');
            }
            if label.contains(['+', '-']) {
                out.push_str(&format!("({label})"));
            } else {
                out.push_str(label);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Exact structure checks: antisymmetry, Jacobi on basis triples, and
    /// (when present) symmetry, invariance and nondegeneracy of the form.
    pub fn verify_structure(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket(&self.basis_vector(i), &self.basis_vector(j))?;
                let ji = self.bracket(&self.basis_vector(j), &self.basis_vector(i))?;
                if ij.iter().zip(&ji).any(|(a, b)| a + b != Rational::zero()) {
                    return Err(Error::Structure(format!(
                        "antisymmetry fails at ({i}, {j})"
                    )));
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::Structure(format!(
                "Jacobi identity fails at ({i}, {j}, {k})"
            )));
        }
        if let Some(f) = &self.form {
            if !f.is_symmetric() {
                return Err(Error::Structure("form is not symmetric".into()));
            }
            if let Some((i, j, k)) = self.form_invariance_violation() {
                return Err(Error::Structure(format!(
                    "form is not invariant at ({i}, {j}, {k})"
                )));
            }
            if f.rank() < n {
                return Err(Error::Structure("form is degenerate".into()));
            }
        }
        Ok(())
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let basis: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let brackets: Vec<Vec<Vec<Rational>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.bracket(&basis[i], &basis[j]).unwrap())
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&basis[i], &brackets[j][k]).unwrap();
                    let b = self.bracket(&basis[j], &brackets[k][i]).unwrap();
                    let c = self.bracket(&basis[k], &brackets[i][j]).unwrap();
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First `(i, j, k)` with `([b_i, b_j] | b_k) + (b_j | [b_i, b_k]) != 0`.
    pub fn form_invariance_violation(&self) -> Option<(usize, usize, usize)> {
        self.form.as_ref()?;
        let n = self.dim();
        for i in 0..n {
            let ad = self.adjoint_matrix(&self.basis_vector(i)).unwrap();
            let f = self.form.as_ref().unwrap();
            // (ad x)^T F + F (ad x) must vanish.
            let m = ad.transpose().mul(f).add(&f.mul(&ad));
            if !m.is_zero() {
                for j in 0..n {
                    for k in 0..n {
                        if !m[(j, k)].is_zero() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut constants = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in &self.structure[i][j] {
                    constants.push((i, j, *k, c.numer().to_string(), c.denom().to_string()));
                }
            }
        }
        AlgebraJson {
            kind: self.kind,
            size: self.size,
            rank: self.rank,
            labels: self.labels.clone(),
            constants,
            form: self.form.as_ref().map(matrix_to_strings),
            matrix_basis: self
                .realization
                .as_ref()
                .map(|r| r.basis.iter().map(matrix_to_strings).collect()),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let n = json.labels.len();
        let mut structure = vec![vec![Vec::new(); n]; n];
        for (i, j, k, num, den) in &json.constants {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Structure(
                    "structure constant index out of range".into(),
                ));
            }
            let c = parse_rational(&format!("{num}/{den}"))
                .ok_or_else(|| Error::Structure(format!("bad constant {num}/{den}")))?;
            if !c.is_zero() {
                structure[*i][*j].push((*k, c));
            }
        }
        for row in &mut structure {
            for entry in row.iter_mut() {
                entry.sort_by_key(|(k, _)| *k);
            }
        }
        let form = json
            .form
            .as_ref()
            .map(|m| strings_to_matrix(m))
            .transpose()?;
        let realization = match &json.matrix_basis {
            Some(mats) => {
                let basis = mats
                    .iter()
                    .map(|m| strings_to_matrix(m))
                    .collect::<Result<Vec<_>>>()?;
                Some(
                    MatrixRealization::new(json.size, basis)
                        .ok_or_else(|| Error::Structure("matrix basis is dependent".into()))?,
                )
            }
            None => None,
        };
        Self::from_parts(
            json.kind,
            json.size,
            json.rank,
            json.labels.clone(),
            structure,
            form,
            realization,
        )
    }
}

/// Serialized [`LieAlgebraData`]: constants as `[i, j, k, num, den]`,
/// matrices as rows of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub kind: AlgebraKind,
    pub size: usize,
    pub rank: Option<usize>,
    pub labels: Vec<String>,
    pub constants: Vec<(usize, usize, usize, String, String)>,
    pub form: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_basis: Option<Vec<Vec<Vec<String>>>>,
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vector_to_strings(m.row(i))).collect()
}

fn strings_to_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    parse_rational(s).ok_or_else(|| Error::Structure(format!("bad rational {s:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.iter().any(|r| r.len() != parsed.len()) {
        return Err(Error::Structure("matrix is not square".into()));
    }
    Ok(Matrix::from_rows(parsed))
}

fn sparse(coords: &[Rational]) -> Sparse {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Span of vectors as an RREF basis; re-exported for callers building
/// subspaces.
pub fn span_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    row_echelon_basis(vectors, len)
}
