use num_traits::{One, Zero};

use super::{AlgebraKind, LieAlgebraData, MatrixRealization};
use crate::error::{Error, Result};
use crate::exactpoly::Rational;
use crate::linalg::Matrix;

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

fn e_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

/// Build `gl_n`, `sl_n`, `so_n` or `sp_n` as a matrix Lie algebra with the
/// trace form of the defining representation.
///
/// Bases: `gl_n` uses `E_ij` in row-major order; `sl_n` lists the strictly
/// upper `E_ij`, then `H_i = E_ii - E_{i+1,i+1}`, then the strictly lower
/// `E_ij` (so `sl_2` is `(e, h, f)`); `so_n` and `sp_n` are the split forms
/// preserving an anti-diagonal Gram matrix, with the reduced row-echelon
/// basis of the defining equations.
pub fn build_classical(kind: AlgebraKind, size: usize) -> Result<LieAlgebraData> {
    let invalid = || Error::InvalidSize {
        kind: kind.name().to_string(),
        size,
    };
    let n = size;
    match kind {
        AlgebraKind::Gl => {
            if n == 0 {
                return Err(invalid());
            }
            let mut basis = Vec::new();
            let mut labels = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    basis.push(unit(n, i, j));
                    labels.push(e_label(n, i, j));
                }
            }
            finish(kind, Some(n), labels, n, basis)
        }
        AlgebraKind::Sl => {
            if n < 2 {
                return Err(invalid());
            }
            let mut basis = Vec::new();
            let mut labels = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    basis.push(unit(n, i, j));
                    labels.push(e_label(n, i, j));
                }
            }
            for i in 0..n - 1 {
                basis.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
                labels.push(format!("H{}", i + 1));
            }
            for i in 0..n {
                for j in 0..i {
                    basis.push(unit(n, i, j));
                    labels.push(e_label(n, i, j));
                }
            }
            if n == 2 {
                labels = vec!["e".into(), "h".into(), "f".into()];
            }
            finish(kind, Some(n - 1), labels, n, basis)
        }
        AlgebraKind::So | AlgebraKind::Sp => {
            if n < 2
                || (kind == AlgebraKind::Sp && n % 2 == 1)
                || (kind == AlgebraKind::So && n < 3)
            {
                return Err(invalid());
            }
            let gram = split_gram(kind, n);
            let basis = preserving_basis(&gram);
            let labels = basis.iter().map(matrix_label).collect();
            finish(kind, Some(n / 2), labels, n, basis)
        }
        AlgebraKind::Centralizer => Err(Error::Unsupported(
            "centralizers are built with LieAlgebraData::centralizer".into(),
        )),
    }
}

fn finish(
    kind: AlgebraKind,
    rank: Option<usize>,
    labels: Vec<String>,
    n: usize,
    basis: Vec<Matrix>,
) -> Result<LieAlgebraData> {
    let realization = MatrixRealization::new(n, basis)
        .ok_or_else(|| Error::Structure("basis matrices are dependent".into()))?;
    LieAlgebraData::from_matrices(kind, rank, labels, realization, true)
}

/// Anti-diagonal Gram matrix: all ones for `so_n`; `+1` on the upper half
/// and `-1` on the lower half for `sp_n`.
pub(crate) fn split_gram(kind: AlgebraKind, n: usize) -> Matrix {
    let mut j = Matrix::zeros(n, n);
    for i in 0..n {
        let sign = if kind == AlgebraKind::Sp && i >= n / 2 {
            -1
        } else {
            1
        };
        j[(i, n - 1 - i)] = Rational::from_integer(sign.into());
    }
    j
}

/// RREF basis of `{X : X^T J + J X = 0}`.
fn preserving_basis(gram: &Matrix) -> Vec<Matrix> {
    let n = gram.rows();
    // Row (a, b) of the constraint matrix is entry (a, b) of X^T J + J X,
    // as a linear function of the flattened X.
    let mut constraints = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                // (X^T J)_{ab} = sum_k X_{ka} J_{kb}
                let v = gram[(k, b)].clone();
                if !v.is_zero() {
                    constraints[(a * n + b, k * n + a)] += v;
                }
                // (J X)_{ab} = sum_k J_{ak} X_{kb}
                let w = gram[(a, k)].clone();
                if !w.is_zero() {
                    constraints[(a * n + b, k * n + b)] += w;
                }
            }
        }
    }
    constraints
        .kernel()
        .into_iter()
        .map(|flat| Matrix::from_rows(flat.chunks(n).map(<[Rational]>::to_vec).collect()))
        .collect()
}

fn matrix_label(m: &Matrix) -> String {
    let n = m.rows();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            let c = &m[(i, j)];
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            if !abs.is_one() {
                out.push_str(&crate::exactpoly::rat_to_string(&abs));
                out.push('*');
            }
            out.push_str(&e_label(n, i, j));
        }
    }
    out
}
