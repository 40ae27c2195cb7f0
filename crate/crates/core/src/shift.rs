//! Argument shift: `D_xi^j`, bigraded components, and the
//! Mishchenko-Fomenko generator family.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{factorial, Monomial, Polynomial, Rational};
use crate::invariants::InvariantFamily;
use crate::liealg::vector_to_strings;

/// Coefficients of `T^0, T^1, ...` of a polynomial whose last variable is
/// `T`, returned without that variable.
fn coefficients_in_last(p: &Polynomial) -> Vec<Polynomial> {
    let arity = p.arity() - 1;
    let top = p
        .terms()
        .map(|(m, _)| m.exponents()[arity])
        .max()
        .unwrap_or(0) as usize;
    let mut out = vec![Polynomial::zero(arity); top + 1];
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); top + 1];
    for (m, c) in p.terms() {
        let e = m.exponents();
        buckets[e[arity] as usize].push((Monomial::from_exponents(e[..arity].to_vec()), c.clone()));
    }
    for (slot, terms) in out.iter_mut().zip(buckets) {
        *slot = Polynomial::from_terms(arity, terms);
    }
    out
}

/// Components `p^(0..=deg p)` of `p(s x + t y) = sum p^(j)(x, y) s^(d-j) t^j`
/// in `2n` variables (x-block first, then y-block).
pub fn bigraded_components(p: &Polynomial) -> Result<Vec<Polynomial>> {
    let n = p.arity();
    let d = if p.is_zero() {
        0
    } else {
        p.homogeneous_degree()
            .ok_or_else(|| Error::NonHomogeneous(p.to_string()))?
    };
    // x_k -> x_k + T y_k in 2n + 1 variables.
    let images: Vec<Polynomial> = (0..n)
        .map(|k| {
            &Polynomial::var(2 * n + 1, k)
                + &(&Polynomial::var(2 * n + 1, 2 * n) * &Polynomial::var(2 * n + 1, n + k))
        })
        .collect();
    let mut comps = coefficients_in_last(&p.substitute(&images)?);
    comps.resize(d as usize + 1, Polynomial::zero(2 * n));
    Ok(comps)
}

/// `D_xi^j(p)`: the `j`-th derivative in `t` at `t = 0` of `p(x + t xi)`.
pub fn shift_derivative(p: &Polynomial, xi: &[Rational], j: u32) -> Result<Polynomial> {
    let n = p.arity();
    if xi.len() != n {
        return Err(Error::Length {
            expected: n,
            got: xi.len(),
        });
    }
    let degree = p.degree().unwrap_or(0);
    if j > degree {
        return Err(Error::ShiftOrder { order: j, degree });
    }
    if j == 0 {
        return Ok(p.clone());
    }
    let t = Polynomial::var(n + 1, n);
    let images: Vec<Polynomial> = (0..n)
        .map(|k| &Polynomial::var(n + 1, k) + &t.scale(&xi[k]))
        .collect();
    let coeffs = coefficients_in_last(&p.substitute(&images)?);
    let c = coeffs
        .get(j as usize)
        .cloned()
        .unwrap_or_else(|| Polynomial::zero(n));
    Ok(c.scale(&factorial(j)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MFEntry {
    /// Zero-based generator index.
    pub i: usize,
    pub j: u32,
    pub poly: Polynomial,
    pub is_zero: bool,
}

impl MFEntry {
    pub fn label(&self) -> String {
        format!("D^{}(p_{})", self.j, self.i + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFGeneratorSet {
    pub algebra: String,
    pub xi: Vec<Rational>,
    pub entries: Vec<MFEntry>,
    pub expected_count: usize,
}

impl MFGeneratorSet {
    /// Set when some entry vanishes identically.
    pub fn degenerate(&self) -> bool {
        self.entries.iter().any(|e| e.is_zero)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.entries.iter().map(|e| e.poly.clone()).collect()
    }
}

impl Serialize for MFGeneratorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            label: String,
            degree: Option<u32>,
            zero: bool,
            poly: String,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            algebra: &'a str,
            xi: Vec<String>,
            expected_count: usize,
            degenerate: bool,
            entries: Vec<Row>,
        }
        Wire {
            algebra: &self.algebra,
            xi: vector_to_strings(&self.xi),
            expected_count: self.expected_count,
            degenerate: self.degenerate(),
            entries: self
                .entries
                .iter()
                .map(|e| Row {
                    label: e.label(),
                    degree: e.poly.degree(),
                    zero: e.is_zero,
                    poly: e.poly.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// All `D_xi^j(p_i)`, `0 <= j < d_i`, with zero entries kept and flagged.
pub fn mf_generators(fam: &InvariantFamily, xi: &[Rational]) -> Result<MFGeneratorSet> {
    let n = fam.arity();
    if xi.len() != n {
        return Err(Error::Length {
            expected: n,
            got: xi.len(),
        });
    }
    let jobs: Vec<(usize, u32)> = fam
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| (0..d).map(move |j| (i, j)))
        .collect();
    let entries = jobs
        .par_iter()
        .map(|&(i, j)| {
            let poly = shift_derivative(&fam.generators[i], xi, j)?;
            Ok(MFEntry {
                i,
                j,
                is_zero: poly.is_zero(),
                poly,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MFGeneratorSet {
        algebra: fam.algebra.clone(),
        xi: xi.to_vec(),
        expected_count: fam.degree_sum() as usize,
        entries,
    })
}
