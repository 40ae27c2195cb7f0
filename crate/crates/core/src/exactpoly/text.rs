//! Canonical text form: `3/2*x0^2*x2 - x1`, terms in descending grevlex.

use num_traits::{One, Signed, Zero};

use super::{parse_rational, rat_to_string, Monomial, Polynomial, Rational};
use crate::error::PolyError;

pub(super) fn to_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    format!("x{k}")
                } else {
                    format!("x{k}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&rat_to_string(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&rat_to_string(&abs));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Parse the canonical text form (whitespace-insensitive) into a polynomial
/// with `arity` variables.
pub fn parse_polynomial(text: &str, arity: usize) -> Result<Polynomial, PolyError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !current.is_empty() {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else if ch == '+' || ch == '-' {
            return Err(PolyError::Parse(format!("unexpected sign in {text:?}")));
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(PolyError::Parse(format!("dangling sign in {text:?}")));
    }
    terms.push((negative, current));

    let mut out = Polynomial::zero(arity);
    for (negative, body) in terms {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; arity];
        for factor in body.split('*') {
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, exp) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad(factor))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad(factor))?;
                if idx >= arity {
                    return Err(PolyError::VariableOutOfRange { index: idx, arity });
                }
                exps[idx] += exp;
            } else {
                coeff *= parse_rational(factor).ok_or_else(|| bad(factor))?;
            }
        }
        if negative {
            coeff = -coeff;
        }
        if !coeff.is_zero() {
            out = &out + &Polynomial::from_terms(arity, [(Monomial::from_exponents(exps), coeff)]);
        }
    }
    Ok(out)
}

fn bad(factor: &str) -> PolyError {
    PolyError::Parse(format!("bad factor {factor:?}"))
}
