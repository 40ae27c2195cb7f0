//! Exact Groebner bases over Q, ideal dimension, and the regular-sequence
//! verdict.

mod cache;
mod dimension;
mod engine;
mod order;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use cache::GbCache;
pub use dimension::{
    dimension_of_supports, ideal_dimension, jacobian_rank, regular_sequence_verdict,
    DimensionReport, Verdict,
};
pub use order::{MonomialOrder, OrderKind};

use crate::error::{Error, PolyError, Result};
use crate::exactpoly::{Monomial, Polynomial};
use engine::Engine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub arity: usize,
    /// Reduced, monic, ascending by leading monomial.
    pub basis: Vec<Polynomial>,
    pub input_hash: String,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| {
                leading_monomial(p, &self.order)
                    .expect("basis has no zero element")
                    .clone()
            })
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.degree() == Some(0))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, &self.basis, &self.order)?.is_zero())
    }
}

/// Leading monomial of `p` under `order`.
pub fn leading_monomial<'a>(p: &'a Polynomial, order: &MonomialOrder) -> Option<&'a Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.compare(a.exponents(), b.exponents()))
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub order: MonomialOrder,
    pub timeout: Option<Duration>,
    pub cache: Option<GbCache>,
}

impl GbOptions {
    pub fn with_order(order: MonomialOrder) -> Self {
        GbOptions {
            order,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbOutcome {
    Complete(GroebnerBasis),
    TimedOut,
}

impl GbOutcome {
    pub fn complete(self) -> Option<GroebnerBasis> {
        match self {
            GbOutcome::Complete(gb) => Some(gb),
            GbOutcome::TimedOut => None,
        }
    }
}

/// Arity of the generators; an empty list takes it from the ranking, if any.
fn shared_arity(gens: &[Polynomial], order: &MonomialOrder) -> Result<usize> {
    let fallback = order.ranking.as_ref().map_or(0, Vec::len);
    let arity = gens.first().map_or(fallback, Polynomial::arity);
    for g in gens {
        if g.arity() != arity {
            return Err(PolyError::ArityMismatch {
                left: arity,
                right: g.arity(),
            }
            .into());
        }
    }
    Ok(arity)
}

/// Digest of the order, the arity, and the canonical generator texts.
pub fn input_hash(gens: &[Polynomial], order: &MonomialOrder) -> String {
    let mut h = Sha256::new();
    h.update(order.to_string().as_bytes());
    h.update(b"\n");
    h.update(
        gens.first()
            .map_or(0, Polynomial::arity)
            .to_string()
            .as_bytes(),
    );
    for g in gens {
        h.update(b"\n");
        h.update(g.to_string().as_bytes());
    }
    hex::encode(h.finalize())
}

/// Reduced Groebner basis with no deadline and no cache.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    match groebner_basis(gens, &GbOptions::with_order(order.clone()))? {
        GbOutcome::Complete(gb) => Ok(gb),
        GbOutcome::TimedOut => unreachable!("no deadline was set"),
    }
}

pub fn groebner_basis(gens: &[Polynomial], opts: &GbOptions) -> Result<GbOutcome> {
    let order = &opts.order;
    let arity = shared_arity(gens, order)?;
    if let Some(r) = &order.ranking {
        if r.len() != arity {
            return Err(Error::Length {
                expected: arity,
                got: r.len(),
            });
        }
    }
    let hash = input_hash(gens, order);
    if let Some(cache) = &opts.cache {
        if let Some(gb) = cache.load(&hash)? {
            return Ok(GbOutcome::Complete(gb));
        }
    }
    let deadline = opts.timeout.map(|t| Instant::now() + t);
    let mut engine = Engine::new(order.kind, deadline);
    let input = gens.iter().map(|g| engine.import(g, order)).collect();
    let Ok(reduced) = engine.groebner(input) else {
        return Ok(GbOutcome::TimedOut);
    };
    let basis = reduced
        .iter()
        .map(|p| {
            let p = engine.export(p, order, arity);
            let lc = p.coefficient(leading_monomial(&p, order).unwrap());
            p.scale(&lc.recip())
        })
        .collect();
    let gb = GroebnerBasis {
        order: order.clone(),
        arity,
        basis,
        input_hash: hash,
    };
    if let Some(cache) = &opts.cache {
        cache.store(gens, &gb)?;
    }
    Ok(GbOutcome::Complete(gb))
}

/// Remainder of multivariate division of `f` by `basis`.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Polynomial> {
    let arity = f.arity();
    for b in basis {
        if b.arity() != arity {
            return Err(PolyError::ArityMismatch {
                left: arity,
                right: b.arity(),
            }
            .into());
        }
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let mut engine = Engine::new(order.kind, None);
    let divisors: Vec<_> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| engine.import(b, order))
        .collect();
    let refs: Vec<_> = divisors.iter().collect();
    // The engine works on the primitive part; undo both scalings.
    let prim = f.primitive_part();
    let content = f.leading_term().unwrap().1 / prim.leading_term().unwrap().1;
    let Ok((r, scale)) = engine.reduce(engine.import(&prim, order), &refs, true) else {
        unreachable!("no deadline was set")
    };
    let r = engine.export(&r, order, arity);
    Ok(r.scale(&(content / scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_polynomial;

    fn p(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text, n).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let dl = MonomialOrder::degrevlex();
        assert_eq!(
            normal_form(&p("x0", 2), &[p("x1", 2)], &dl).unwrap(),
            p("x0", 2)
        );
        assert!(normal_form(&p("x0^2 + x0*x1", 2), &[p("x0", 2)], &dl)
            .unwrap()
            .is_zero());
        // 3x0^2 + x1 mod x0 - 2 = 12 + x1
        let r = normal_form(
            &p("3*x0^2 + x1", 2),
            &[p("x0 - 2", 2)],
            &MonomialOrder::lex(),
        )
        .unwrap();
        assert_eq!(r, p("x1 + 12", 2));
        let r = normal_form(
            &p("1/2*x0*x1 + 1/3*x1", 2),
            &[p("2*x0 + 1", 2)],
            &MonomialOrder::lex(),
        )
        .unwrap();
        assert_eq!(r, p("1/12*x1", 2));
    }

    #[test]
    fn lex_example_contains_y4_minus_y() {
        // x > y as x0 > x1
        let gb = buchberger(
            &[p("x0^2 - x1", 2), p("x1^2 - x0", 2)],
            &MonomialOrder::lex(),
        )
        .unwrap();
        assert!(gb.basis.contains(&p("x1^4 - x1", 2)));
        assert_eq!(gb.basis, vec![p("x1^4 - x1", 2), p("x0 - x1^2", 2)]);
    }

    #[test]
    fn sl2_family_leading_terms() {
        // coordinates (x_e, x_h, x_f) = (x0, x1, x2)
        let gens = [p("2*x1^2 + 2*x0*x2", 3), p("2*x2", 3)];
        let gb = buchberger(&gens, &MonomialOrder::degrevlex()).unwrap();
        let lms = gb.leading_monomials();
        assert_eq!(
            lms,
            vec![Monomial::var(3, 2), Monomial::from_exponents(vec![0, 2, 0])]
        );
        assert_eq!(gb.basis, vec![p("x2", 3), p("x1^2", 3)]);
    }

    #[test]
    fn reduced_basis_is_stable() {
        let gb = buchberger(
            &[p("x0^2 - x1", 2), p("x1^2 - x0", 2)],
            &MonomialOrder::degrevlex(),
        )
        .unwrap();
        let again = buchberger(&gb.basis, &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(gb.basis, again.basis);
    }

    #[test]
    fn empty_and_unit() {
        let gb = buchberger(&[], &MonomialOrder::degrevlex()).unwrap();
        assert!(gb.basis.is_empty());
        let gb = buchberger(&[p("x0 + 1", 1), p("x0", 1)], &MonomialOrder::degrevlex()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.basis, vec![Polynomial::one(1)]);
    }

    #[test]
    fn mismatched_arity_is_an_error() {
        assert!(buchberger(&[p("x0", 1), p("x1", 2)], &MonomialOrder::lex()).is_err());
    }

    #[test]
    fn ranking_changes_lex_basis() {
        let gens = [p("x0^2 - x1", 2), p("x1^2 - x0", 2)];
        let swapped = MonomialOrder::with_ranking(OrderKind::Lex, vec![1, 0]);
        let gb = buchberger(&gens, &swapped).unwrap();
        assert!(gb.basis.contains(&p("x0^4 - x0", 2)));
    }

    #[test]
    fn hash_depends_on_order() {
        let gens = [p("x0^2 - x1", 2)];
        assert_ne!(
            input_hash(&gens, &MonomialOrder::lex()),
            input_hash(&gens, &MonomialOrder::degrevlex())
        );
        assert_eq!(input_hash(&gens, &MonomialOrder::lex()).len(), 64);
    }

    #[test]
    fn timeout_is_reported() {
        let gens = [p("x0^2 - x1", 2), p("x1^2 - x0", 2)];
        let opts = GbOptions {
            timeout: Some(Duration::ZERO),
            ..Default::default()
        };
        // Either finishes before the first deadline check or reports a timeout.
        let out = groebner_basis(&gens, &opts).unwrap();
        if let GbOutcome::Complete(gb) = out {
            assert_eq!(gb.basis.len(), 2);
        }
    }
}
