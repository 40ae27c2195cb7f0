//! Buchberger's algorithm over the integers with primitive polynomials.
//!
//! Exponents are stored in ranked position (position 0 is the largest
//! variable), so the order comparison never needs the permutation.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::{MonomialOrder, OrderKind};
use crate::exactpoly::{Monomial, Polynomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mono {
    deg: u32,
    e: Box<[u16]>,
}

impl Mono {
    fn from_ranked(e: &[u32]) -> Self {
        Mono {
            deg: e.iter().sum(),
            e: e.iter()
                .map(|&x| u16::try_from(x).expect("exponent overflow"))
                .collect(),
        }
    }

    fn to_ranked(&self) -> Vec<u32> {
        self.e.iter().map(|&x| x as u32).collect()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono {
            deg: self.deg + o.deg,
            e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Mono) -> Mono {
        Mono {
            deg: self.deg - o.deg,
            e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let e: Box<[u16]> = self
            .e
            .iter()
            .zip(o.e.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Mono {
            deg: e.iter().map(|&x| x as u32).sum(),
            e,
        }
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.e
            .iter()
            .zip(o.e.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Integer polynomial with terms in descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl IPoly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }
}

pub(crate) struct Engine {
    kind: OrderKind,
    deadline: Option<Instant>,
    steps: u64,
}

pub(crate) struct TimedOut;

impl Engine {
    pub(crate) fn new(kind: OrderKind, deadline: Option<Instant>) -> Self {
        Engine {
            kind,
            deadline,
            steps: 0,
        }
    }

    fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.kind {
            OrderKind::Degrevlex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.e.iter().zip(b.e.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            OrderKind::Lex => a.e.cmp(&b.e),
        }
    }

    fn tick(&mut self) -> Result<(), TimedOut> {
        self.steps += 1;
        if self.steps.is_multiple_of(64) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(TimedOut);
                }
            }
        }
        Ok(())
    }

    /// Clear denominators, rank variables, and sort descending.
    pub(crate) fn import(&self, p: &Polynomial, order: &MonomialOrder) -> IPoly {
        let prim = p.primitive_part();
        let mut terms: Vec<(Mono, BigInt)> = prim
            .terms()
            .map(|(m, c)| {
                debug_assert!(c.is_integer());
                (
                    Mono::from_ranked(&order.ranked(m.exponents())),
                    c.numer().clone(),
                )
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    pub(crate) fn export(&self, p: &IPoly, order: &MonomialOrder, arity: usize) -> Polynomial {
        let terms = p.terms.iter().map(|(m, c)| {
            (
                Monomial::from_exponents(order.unranked(&m.to_ranked())),
                Rational::from_integer(c.clone()),
            )
        });
        Polynomial::from_terms(arity, terms)
    }

    /// `a * f - b * m * g`.
    fn combine(&self, a: &BigInt, f: &IPoly, b: &BigInt, m: &Mono, g: &IPoly) -> IPoly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut fi = f.terms.iter().peekable();
        let mut gi = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
        loop {
            let ord = match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((fm, _)), Some((gm, _))) => self.cmp(fm, gm),
            };
            match ord {
                Ordering::Greater => {
                    let (fm, fc) = fi.next().unwrap();
                    out.push((fm.clone(), a * fc));
                }
                Ordering::Less => {
                    let (gm, gc) = gi.next().unwrap();
                    out.push((gm, -(b * gc)));
                }
                Ordering::Equal => {
                    let (fm, fc) = fi.next().unwrap();
                    let (_, gc) = gi.next().unwrap();
                    let c = a * fc - b * gc;
                    if !c.is_zero() {
                        out.push((fm.clone(), c));
                    }
                }
            }
        }
        IPoly { terms: out }
    }

    /// Reduce `f` modulo `basis`. With `full`, every term is reduced;
    /// otherwise only the leading term. Returns the remainder and the
    /// rational `s` with `remainder = s * f + (ideal element)`.
    pub(crate) fn reduce(
        &mut self,
        f: IPoly,
        basis: &[&IPoly],
        full: bool,
    ) -> Result<(IPoly, Rational), TimedOut> {
        let mut scale = Rational::one();
        let mut done: Vec<(Mono, BigInt)> = Vec::new();
        let mut p = f;
        let mut since_content = 0;
        while !p.is_zero() {
            self.tick()?;
            let lm = p.lm().clone();
            let divisor = basis.iter().find(|g| g.lm().divides(&lm));
            match divisor {
                Some(g) => {
                    let gcd = p.lc().gcd(g.lc());
                    let a = g.lc() / &gcd;
                    let b = p.lc() / &gcd;
                    let m = lm.div(g.lm());
                    p = self.combine(&a, &p, &b, &m, g);
                    if !a.is_one() {
                        for (_, c) in &mut done {
                            *c *= &a;
                        }
                        scale *= Rational::from_integer(a);
                    }
                    since_content += 1;
                    if since_content >= 8 {
                        since_content = 0;
                        let g = content(&done, &p);
                        if !g.is_one() && !g.is_zero() {
                            divide_all(&mut done, &g);
                            divide_all(&mut p.terms, &g);
                            scale /= Rational::from_integer(g);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    let t = p.terms.remove(0);
                    done.push(t);
                }
            }
        }
        done.extend(p.terms);
        let mut out = IPoly { terms: done };
        if !out.is_zero() {
            let g = content(&out.terms, &IPoly { terms: Vec::new() });
            divide_all(&mut out.terms, &g);
            scale /= Rational::from_integer(g);
        }
        Ok((out, scale))
    }

    fn spoly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let l = f.lm().lcm(g.lm());
        let gcd = f.lc().gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = f.lc() / &gcd;
        let mf = l.div(f.lm());
        let mg = l.div(g.lm());
        let scaled_f = IPoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mf), c.clone()))
                .collect(),
        };
        self.combine(&a, &scaled_f, &b, &mg, g)
    }

    /// Reduced Groebner basis (primitive integer polynomials, ascending by
    /// leading monomial).
    pub(crate) fn groebner(&mut self, input: Vec<IPoly>) -> Result<Vec<IPoly>, TimedOut> {
        let mut polys: Vec<IPoly> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<(usize, usize, Mono)> = Vec::new();

        let mut input: Vec<IPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        input.sort_by(|a, b| {
            self.cmp(a.lm(), b.lm())
                .then_with(|| a.terms.len().cmp(&b.terms.len()))
        });
        for f in input {
            let basis: Vec<&IPoly> = active.iter().map(|&i| &polys[i]).collect();
            let (h, _) = self.reduce(f, &basis, false)?;
            if h.is_zero() {
                continue;
            }
            polys.push(h);
            self.update(&polys, &mut active, &mut pairs, polys.len() - 1);
        }

        while !pairs.is_empty() {
            self.tick()?;
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(TimedOut);
                }
            }
            let best = (0..pairs.len())
                .min_by(|&x, &y| {
                    let (a, b) = (&pairs[x], &pairs[y]);
                    self.cmp(&a.2, &b.2)
                        .then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
                })
                .unwrap();
            let (i, j, _) = pairs.swap_remove(best);
            let s = self.spoly(&polys[i], &polys[j]);
            let basis: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
            let (h, _) = self.reduce(s, &basis, false)?;
            if h.is_zero() {
                continue;
            }
            polys.push(h);
            self.update(&polys, &mut active, &mut pairs, polys.len() - 1);
        }

        // Minimal basis, then tail reduction.
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &active {
            let redundant = active.iter().any(|&j| {
                j != i
                    && polys[j].lm().divides(polys[i].lm())
                    && (polys[j].lm() != polys[i].lm() || j < i)
            });
            if !redundant {
                minimal.push(i);
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for &i in &minimal {
            let others: Vec<&IPoly> = minimal
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| &polys[j])
                .collect();
            let (h, _) = self.reduce(polys[i].clone(), &others, true)?;
            reduced.push(h);
        }
        reduced.sort_by(|a, b| self.cmp(a.lm(), b.lm()));
        Ok(reduced)
    }

    /// Gebauer-Moeller update for the new element `h`.
    fn update(
        &self,
        polys: &[IPoly],
        active: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize, Mono)>,
        h: usize,
    ) {
        let hm = polys[h].lm().clone();
        let candidates: Vec<(usize, Mono, bool)> = active
            .iter()
            .map(|&g| {
                let gm = polys[g].lm();
                (g, hm.lcm(gm), hm.coprime(gm))
            })
            .collect();

        // Keep (h, g) unless another candidate's lcm properly divides it;
        // equal lcms keep the first, preferring coprime ones.
        let mut kept: Vec<(usize, Mono, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in candidates.iter().enumerate() {
            let dominated = candidates.iter().enumerate().any(|(jdx, (_, l2, c2))| {
                if jdx == idx || !l2.divides(l) {
                    return false;
                }
                if l2 != l {
                    return true;
                }
                // equal lcm: drop all but one representative
                (*c2 && !coprime) || (c2 == coprime && jdx < idx)
            });
            if !dominated {
                kept.push((*g, l.clone(), *coprime));
            }
        }

        // Chain criterion on the old pairs.
        pairs.retain(|(a, b, l)| {
            !(hm.divides(l) && hm.lcm(polys[*a].lm()) != *l && hm.lcm(polys[*b].lm()) != *l)
        });
        for (g, l, coprime) in kept {
            if !coprime {
                pairs.push((g, h, l));
            }
        }
        active.retain(|&g| !hm.divides(polys[g].lm()));
        active.push(h);
    }
}

fn content(a: &[(Mono, BigInt)], b: &IPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b.terms.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(terms: &mut [(Mono, BigInt)], g: &BigInt) {
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in terms {
        *c = &*c / g;
    }
}
