//! Exact dense linear algebra over the rationals, plus fraction-free
//! elimination for matrices with polynomial entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::exactpoly::{Polynomial, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        f.debug_struct("Matrix").field("rows", &rows).finish()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(cols: &[Vec<Rational>], len: usize) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), len);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &factor;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, returned in reduced row-echelon form and
    /// ordered by pivot.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect();
        row_echelon_basis(&raw, self.cols)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }
}

/// RREF basis of the span of `vectors` (zero rows dropped).
pub fn row_echelon_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let (r, pivots) = m.rref();
    assert_eq!(r.cols(), len);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Coordinates of vectors in the span of a fixed linearly independent
/// family, by solving on a set of pivot positions.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    positions: Vec<usize>,
    /// Inverse of the square submatrix of the basis on `positions`.
    inverse: Matrix,
    basis: Vec<Vec<Rational>>,
}

impl CoordinateSolver {
    /// `basis` must be linearly independent.
    pub fn new(basis: &[Vec<Rational>], len: usize) -> Option<Self> {
        let n = basis.len();
        if n == 0 {
            return Some(CoordinateSolver {
                positions: Vec::new(),
                inverse: Matrix::zeros(0, 0),
                basis: Vec::new(),
            });
        }
        let m = Matrix::from_rows(basis.to_vec());
        let (_, pivots) = m.rref();
        if pivots.len() < n {
            return None;
        }
        let mut sub = Matrix::zeros(n, n);
        for (a, v) in basis.iter().enumerate() {
            assert_eq!(v.len(), len);
            for (b, &p) in pivots.iter().enumerate() {
                sub[(b, a)] = v[p].clone();
            }
        }
        let inverse = sub.inverse()?;
        Some(CoordinateSolver {
            positions: pivots,
            inverse,
            basis: basis.to_vec(),
        })
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let rhs: Vec<Rational> = self.positions.iter().map(|&p| v[p].clone()).collect();
        let c = self.inverse.mul_vec(&rhs);
        let mut check = vec![Rational::zero(); v.len()];
        for (coef, b) in c.iter().zip(&self.basis) {
            if coef.is_zero() {
                continue;
            }
            for (slot, x) in check.iter_mut().zip(b) {
                *slot += coef * x;
            }
        }
        (check.as_slice() == v).then_some(c)
    }
}

/// Rank of a matrix of polynomials over the fraction field of the
/// polynomial ring, by fraction-free (Bareiss) elimination.
pub fn polynomial_matrix_rank(rows: &[Vec<Polynomial>]) -> usize {
    bareiss(rows.to_vec()).0
}

/// Determinant of a square polynomial matrix.
pub fn polynomial_det(rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    assert!(
        rows.iter().all(|r| r.len() == n),
        "determinant of non-square matrix"
    );
    let arity = rows
        .first()
        .and_then(|r| r.first())
        .map_or(0, Polynomial::arity);
    if n == 0 {
        return Polynomial::one(arity);
    }
    let (rank, det) = bareiss(rows.to_vec());
    if rank < n {
        Polynomial::zero(arity)
    } else {
        det
    }
}

/// Returns the rank and, for full-rank square input, the signed determinant.
fn bareiss(mut m: Vec<Vec<Polynomial>>) -> (usize, Polynomial) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let arity = m
        .first()
        .and_then(|r| r.first())
        .map_or(0, Polynomial::arity);
    let mut prev = Polynomial::one(arity);
    let mut sign = false;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Prefer the sparsest nonzero pivot to limit growth.
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].len())
        else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = !sign;
        }
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = Polynomial::zero(arity);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    let det = if sign { -prev } else { prev };
    (r, det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
        assert_eq!(k[0][0], int(1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn coordinate_solver() {
        let basis = vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]];
        let s = CoordinateSolver::new(&basis, 3).unwrap();
        assert_eq!(
            s.coordinates(&[int(2), int(5), int(3)]).unwrap(),
            vec![int(2), int(3)]
        );
        assert!(s.coordinates(&[int(1), int(0), int(0)]).is_none());
        assert_eq!(
            s.coordinates(&[rat(1, 2), rat(1, 2), int(0)]).unwrap(),
            vec![rat(1, 2), int(0)]
        );
    }

    #[test]
    fn polynomial_rank_of_generic_antisymmetric() {
        // [[0, a, b], [-a, 0, c], [-b, -c, 0]] has rank 2 over Q(a, b, c).
        let v = |i| Polynomial::var(3, i);
        let z = Polynomial::zero(3);
        let rows = vec![
            vec![z.clone(), v(0), v(1)],
            vec![-v(0), z.clone(), v(2)],
            vec![-v(1), -v(2), z.clone()],
        ];
        assert_eq!(polynomial_matrix_rank(&rows), 2);
        assert!(polynomial_det(&rows).is_zero());
        let rows2 = vec![vec![v(0), v(1)], vec![v(2), v(0)]];
        assert_eq!(polynomial_det(&rows2), &v(0).pow(2) - &(&v(1) * &v(2)));
    }
}
