//! Homogeneous generators of the invariant polynomials of classical
//! algebras, as traces of powers of the generic matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational};
use crate::liealg::{AlgebraKind, LieAlgebraData};
use crate::linalg::Matrix;
use crate::poisson::poisson_bracket;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFamily {
    /// Description of the algebra the family belongs to, e.g. `gl_3`.
    pub algebra: String,
    pub generators: Vec<Polynomial>,
    pub degrees: Vec<u32>,
}

impl InvariantFamily {
    /// Checks homogeneity and sorts by increasing degree (stable).
    pub fn new(algebra: String, generators: Vec<Polynomial>) -> Result<Self> {
        let mut with_deg = generators
            .into_iter()
            .map(|p| {
                let d = p
                    .homogeneous_degree()
                    .ok_or_else(|| Error::NonHomogeneous(p.to_string()))?;
                Ok((d, p))
            })
            .collect::<Result<Vec<_>>>()?;
        with_deg.sort_by_key(|(d, _)| *d);
        let (degrees, generators) = with_deg.into_iter().unzip();
        Ok(InvariantFamily {
            algebra,
            generators,
            degrees,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.generators.first().map_or(0, Polynomial::arity)
    }

    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// Gradient matrix `(dp_i/dx_j)` as polynomials.
    pub fn gradients(&self) -> Vec<Vec<Polynomial>> {
        self.generators.iter().map(Polynomial::gradient).collect()
    }
}

/// The generic element `X = sum_k x_k B_k` as a matrix of linear forms.
pub fn generic_matrix(l: &LieAlgebraData) -> Result<Vec<Vec<Polynomial>>> {
    let real = l
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("algebra without matrices".into()))?;
    let n = l.dim();
    let size = real.size;
    let mut x = vec![vec![Polynomial::zero(n); size]; size];
    for (k, b) in real.basis.iter().enumerate() {
        let var = Polynomial::var(n, k);
        for (i, row) in x.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if !num_traits::Zero::is_zero(&b[(i, j)]) {
                    *slot = &*slot + &var.scale(&b[(i, j)]);
                }
            }
        }
    }
    Ok(x)
}

fn poly_matmul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    let arity = a[0][0].arity();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Polynomial::zero(arity), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `tr(X^i)` for `i = 1..=max_power`.
pub fn trace_powers(l: &LieAlgebraData, max_power: u32) -> Result<Vec<Polynomial>> {
    let x = generic_matrix(l)?;
    let mut power = x.clone();
    let mut out = Vec::new();
    for i in 1..=max_power {
        if i > 1 {
            power = poly_matmul(&power, &x);
        }
        let tr = (0..power.len()).fold(Polynomial::zero(l.dim()), |acc, k| &acc + &power[k][k]);
        out.push(tr);
    }
    Ok(out)
}

/// Free generators of the invariants, ordered by increasing degree:
/// `gl_n`: `tr X^i`, `i = 1..n`; `sl_n`: `i = 2..n`;
/// `so_{2m+1}`, `sp_{2m}`: `tr X^{2i}`, `i = 1..m`.
pub fn invariant_generators(l: &LieAlgebraData) -> Result<InvariantFamily> {
    let n = l.size;
    let name = format!("{}_{}", l.kind.name(), n);
    let powers: Vec<u32> = match l.kind {
        AlgebraKind::Gl => (1..=n as u32).collect(),
        AlgebraKind::Sl => (2..=n as u32).collect(),
        AlgebraKind::So if n % 2 == 1 => (1..=(n / 2) as u32).map(|i| 2 * i).collect(),
        AlgebraKind::Sp => (1..=(n / 2) as u32).map(|i| 2 * i).collect(),
        AlgebraKind::So => {
            return Err(Error::Unsupported(
                "so_2m needs the Pfaffian; not supported".into(),
            ));
        }
        AlgebraKind::Centralizer => {
            return Err(Error::Unsupported(
                "invariants of centralizers come from the slice transport".into(),
            ));
        }
    };
    let max = powers.iter().copied().max().unwrap_or(0);
    let all = trace_powers(l, max)?;
    let gens = powers
        .iter()
        .map(|&p| all[p as usize - 1].clone())
        .collect();
    InvariantFamily::new(name, gens)
}

/// Coefficients of the characteristic polynomial of the generic matrix,
/// `e_k` for `k = 1..n` (`k = 2..n` for `sl_n`), as an alternative free
/// generating set for `gl_n` and `sl_n`.
pub fn characteristic_generators(l: &LieAlgebraData) -> Result<InvariantFamily> {
    let n = l.size;
    let first = match l.kind {
        AlgebraKind::Gl => 1,
        AlgebraKind::Sl => 2,
        _ => {
            return Err(Error::Unsupported(format!(
                "characteristic coefficients for {}",
                l.kind.name()
            )))
        }
    };
    let e = newton_elementary(&trace_powers(l, n as u32)?);
    InvariantFamily::new(format!("{}_{}", l.kind.name(), n), e[first - 1..].to_vec())
}

/// `{p, x_k} = 0` for every coordinate function.
pub fn verify_invariance(l: &LieAlgebraData, p: &Polynomial) -> Result<bool> {
    for k in 0..l.dim() {
        if !poisson_bracket(l, p, &Polynomial::var(l.dim(), k))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the gradient matrix of the family at `z`, compared with the
/// family size (Kostant's differential criterion for regularity).
pub fn kostant_regularity_certificate(fam: &InvariantFamily, z: &[Rational]) -> Result<bool> {
    Ok(gradient_rank(fam, z)? == fam.len())
}

pub fn gradient_rank(fam: &InvariantFamily, z: &[Rational]) -> Result<usize> {
    let rows = fam
        .gradients()
        .iter()
        .map(|row| row.iter().map(|g| g.eval(z)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(rows).rank())
}

/// Newton's identities: power sums `p_1..p_k` to elementary symmetric
/// functions `e_1..e_k` (the characteristic polynomial coefficients up to
/// sign).
pub fn newton_elementary(power_sums: &[Polynomial]) -> Vec<Polynomial> {
    let arity = power_sums.first().map_or(0, Polynomial::arity);
    let mut e = vec![Polynomial::one(arity)];
    for k in 1..=power_sums.len() {
        let mut acc = Polynomial::zero(arity);
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        e.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    e.remove(0);
    e
}
