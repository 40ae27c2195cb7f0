use serde::Serialize;

use super::{groebner_basis, GbOptions, GbOutcome, GroebnerBasis};
use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational};
use crate::linalg::Matrix;

/// Largest number of variables `S` such that no support in `supports` is
/// contained in `S`. A support that is empty (a constant) gives `-1`.
pub fn dimension_of_supports(arity: usize, supports: &[Vec<usize>]) -> i64 {
    assert!(arity <= 128, "too many variables for the bitmask search");
    let masks: Vec<u128> = supports
        .iter()
        .map(|s| s.iter().fold(0u128, |m, &v| m | (1u128 << v)))
        .collect();
    if masks.contains(&0) {
        return -1;
    }
    let mut best = 0usize;
    search(arity, &masks, 0, 0, 0, &mut best);
    best as i64
}

fn search(arity: usize, masks: &[u128], var: usize, chosen: u128, size: usize, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if var == arity || size + (arity - var) <= *best {
        return;
    }
    let with = chosen | (1u128 << var);
    if masks.iter().all(|&m| m & !with != 0) {
        search(arity, masks, var + 1, with, size + 1, best);
    }
    search(arity, masks, var + 1, chosen, size, best);
}

/// Krull dimension of the quotient by the ideal, read off the leading
/// monomials; `-1` for the unit ideal.
pub fn ideal_dimension(gb: &GroebnerBasis) -> i64 {
    let supports: Vec<Vec<usize>> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().collect())
        .collect();
    dimension_of_supports(gb.arity, &supports)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub arity: usize,
    pub generator_count: usize,
    /// `None` when the computation timed out.
    pub ideal_dimension: Option<i64>,
    pub expected_dimension: i64,
    pub verdict: Verdict,
    pub basis_size: Option<usize>,
    pub input_hash: String,
    pub diagnostics: Vec<String>,
}

impl DimensionReport {
    pub fn regular_sequence(&self) -> Option<bool> {
        self.verdict.as_bool()
    }
}

/// Decide whether `gens` (homogeneous, `k <= n`) is a regular sequence by
/// comparing the ideal dimension with `n - k`.
pub fn regular_sequence_verdict(
    gens: &[Polynomial],
    n: usize,
    opts: &GbOptions,
) -> Result<DimensionReport> {
    let k = gens.len();
    if k > n {
        return Err(Error::TooManyGenerators {
            generators: k,
            arity: n,
        });
    }
    for g in gens {
        if g.arity() != n {
            return Err(Error::Length {
                expected: n,
                got: g.arity(),
            });
        }
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
    }
    let expected = (n - k) as i64;
    let mut diagnostics = Vec::new();
    let zero: Vec<usize> = (0..k).filter(|&i| gens[i].is_zero()).collect();
    for &i in &zero {
        diagnostics.push(format!("generator {} is identically zero", i + 1));
    }
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gb = match groebner_basis(&nonzero, opts)? {
        GbOutcome::Complete(gb) => gb,
        GbOutcome::TimedOut => {
            diagnostics.push("Groebner basis computation timed out".into());
            return Ok(DimensionReport {
                arity: n,
                generator_count: k,
                ideal_dimension: None,
                expected_dimension: expected,
                verdict: Verdict::Inconclusive,
                basis_size: None,
                input_hash: super::input_hash(&nonzero, &opts.order),
                diagnostics,
            });
        }
    };
    // An empty nonzero family over n variables has the whole space.
    let d = if nonzero.is_empty() {
        n as i64
    } else {
        ideal_dimension(&gb)
    };
    if d < 0 {
        diagnostics.push("the generators span the unit ideal".into());
    } else if d < expected {
        return Err(Error::Structure(format!(
            "ideal dimension {d} is below the lower bound {expected} for a proper homogeneous ideal"
        )));
    }
    let verdict = Verdict::from_bool(zero.is_empty() && d == expected);
    if zero.is_empty() && d > expected {
        diagnostics.push(format!("ideal dimension {d} exceeds {expected}"));
    }
    Ok(DimensionReport {
        arity: n,
        generator_count: k,
        ideal_dimension: Some(d),
        expected_dimension: expected,
        verdict,
        basis_size: Some(gb.basis.len()),
        input_hash: gb.input_hash,
        diagnostics,
    })
}

/// Rank of the Jacobian matrix of `gens` at `point`.
pub fn jacobian_rank(gens: &[Polynomial], point: &[Rational]) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    let rows = gens
        .iter()
        .map(|g| {
            g.gradient()
                .iter()
                .map(|d| d.eval(point))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows).rank())
}
