//! Lie-Poisson bracket on polynomial functions and commutativity reports.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactpoly::Polynomial;
use crate::liealg::LieAlgebraData;
use crate::shift::MFGeneratorSet;

/// `{f, g} = sum_{i,j} {x_i, x_j} df/dx_i dg/dx_j`.
pub fn poisson_bracket(l: &LieAlgebraData, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let n = l.dim();
    f.checked_add(g)?;
    if f.arity() != n {
        return Err(crate::error::PolyError::ArityMismatch {
            left: f.arity(),
            right: n,
        }
        .into());
    }
    let tensor = l.poisson_tensor();
    let df = f.gradient();
    let dg = g.gradient();
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        // sum_j {x_i, x_j} dg/dx_j
        let mut inner = Polynomial::zero(n);
        for j in 0..n {
            if dg[j].is_zero() || tensor[i][j].is_zero() {
                continue;
            }
            inner = &inner + &(&tensor[i][j] * &dg[j]);
        }
        if !inner.is_zero() {
            out = &out + &(&df[i] * &inner);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketFailure {
    pub left: String,
    pub right: String,
    pub bracket: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    pub pair_count: usize,
    pub failures: Vec<BracketFailure>,
}

impl CommutativityReport {
    pub fn commutes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Bracket every unordered pair of a labelled family (pairs run in
/// parallel; output order is deterministic).
pub fn commutativity_of(
    l: &LieAlgebraData,
    family: &[(String, Polynomial)],
) -> Result<CommutativityReport> {
    let pairs: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|a| (a + 1..family.len()).map(move |b| (a, b)))
        .collect();
    l.poisson_tensor();
    let results: Vec<Result<Option<BracketFailure>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let br = poisson_bracket(l, &family[a].1, &family[b].1)?;
            Ok((!br.is_zero()).then(|| BracketFailure {
                left: family[a].0.clone(),
                right: family[b].0.clone(),
                bracket: br,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(CommutativityReport {
        pair_count: pairs.len(),
        failures,
    })
}

pub fn commutativity_report(
    l: &LieAlgebraData,
    set: &MFGeneratorSet,
) -> Result<CommutativityReport> {
    let family: Vec<(String, Polynomial)> = set
        .entries
        .iter()
        .map(|e| (e.label(), e.poly.clone()))
        .collect();
    commutativity_of(l, &family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, Rational};
    use crate::liealg::{build_classical, AlgebraKind};

    fn lambda(l: &LieAlgebraData, u: &[i64]) -> Polynomial {
        let u: Vec<Rational> = u.iter().map(|&x| int(x)).collect();
        Polynomial::linear_form(&l.to_dual(&u))
    }

    #[test]
    fn sl2_linear_forms() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        let (le, lf, lh) = (
            lambda(&sl2, &[1, 0, 0]),
            lambda(&sl2, &[0, 0, 1]),
            lambda(&sl2, &[0, 1, 0]),
        );
        assert_eq!(poisson_bracket(&sl2, &le, &lf).unwrap(), lh);
        assert!(poisson_bracket(&sl2, &le, &le).unwrap().is_zero());
    }

    #[test]
    fn sl2_casimir_is_central() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        let x = |i| Polynomial::var(3, i);
        let cas = (&x(1).pow(2) + &(&x(0) * &x(2))).scale(&int(2));
        for u in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert!(poisson_bracket(&sl2, &cas, &lambda(&sl2, &u))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn adversarial_pair_fails() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        let fam = vec![
            ("le".to_string(), lambda(&sl2, &[1, 0, 0])),
            ("lf".to_string(), lambda(&sl2, &[0, 0, 1])),
        ];
        let rep = commutativity_of(&sl2, &fam).unwrap();
        assert_eq!(rep.pair_count, 1);
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].bracket, lambda(&sl2, &[0, 1, 0]));
    }

    #[test]
    fn arity_mismatch() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        assert!(poisson_bracket(&sl2, &Polynomial::var(2, 0), &Polynomial::var(2, 1)).is_err());
    }
}
