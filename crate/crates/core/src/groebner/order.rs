use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Degrevlex,
    Lex,
}

/// Monomial order: a kind plus a variable ranking. `ranking[0]` is the
/// largest variable; the identity ranking gives `x0 > x1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            ranking: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            ranking: None,
        }
    }

    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut sorted = ranking.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().enumerate().all(|(i, &v)| i == v),
            "ranking is not a permutation"
        );
        MonomialOrder {
            kind,
            ranking: Some(ranking),
        }
    }

    /// Exponents rearranged so that position 0 holds the largest variable.
    pub(crate) fn ranked(&self, exps: &[u32]) -> Vec<u32> {
        match &self.ranking {
            Some(r) => r.iter().map(|&v| exps[v]).collect(),
            None => exps.to_vec(),
        }
    }

    /// Inverse of [`Self::ranked`].
    pub(crate) fn unranked(&self, ranked: &[u32]) -> Vec<u32> {
        match &self.ranking {
            Some(r) => {
                let mut out = vec![0; ranked.len()];
                for (pos, &v) in r.iter().enumerate() {
                    out[v] = ranked[pos];
                }
                out
            }
            None => ranked.to_vec(),
        }
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        compare_ranked(self.kind, &self.ranked(a), &self.ranked(b))
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::degrevlex()
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OrderKind::Degrevlex => "degrevlex",
            OrderKind::Lex => "lex",
        };
        match &self.ranking {
            Some(r) => write!(f, "{kind}{r:?}"),
            None => f.write_str(kind),
        }
    }
}

pub(crate) fn compare_ranked(kind: OrderKind, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::Degrevlex => crate::exactpoly::grevlex_cmp(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_and_degrevlex_differ() {
        // x0 vs x1^2
        let (a, b) = ([1, 0], [0, 2]);
        assert_eq!(MonomialOrder::lex().compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::degrevlex().compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn ranking_swaps_variables() {
        let o = MonomialOrder::with_ranking(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.compare(&[1, 0], &[0, 1]), Ordering::Less);
        assert_eq!(o.unranked(&o.ranked(&[3, 5])), vec![3, 5]);
    }
}
