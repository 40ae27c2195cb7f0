//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded reverse lexicographic order with `x0 > x1 > ... > x{n-1}`. Zero
//! coefficients are never stored, so structural equality is mathematical
//! equality.

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use num_rational::BigRational as Rational;
pub use text::parse_polynomial;

use crate::error::PolyError;

/// Shorthand for building an exact rational from integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divisible_by(other) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Indices of the variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Graded reverse lexicographic comparison of exponent slices.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        std::cmp::Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::var(arity, index), Rational::one());
        p
    }

    /// The linear form `sum_k coeffs[k] * x_k`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let arity = coeffs.len();
        let mut p = Self::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(arity, k), c.clone());
        }
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term has the same total degree. The zero polynomial
    /// counts as homogeneous of every degree and yields `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Whether the polynomial only involves variables in `range`.
    pub fn depends_only_on(&self, range: std::ops::Range<usize>) -> bool {
        self.terms
            .keys()
            .all(|m| m.support().all(|i| range.contains(&i)))
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.arity))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn diff(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.arity {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.arity)
            .map(|k| self.diff(k).expect("index in range"))
            .collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::PointLength {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|v| vec![Rational::one(), v.clone()])
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[k];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[k];
                    table.push(next);
                }
                term *= &table[e as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Replace variable `k` by `images[k]`. All images must share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.arity {
            return Err(PolyError::ImageCount {
                expected: self.arity,
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.arity,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(PolyError::ArityMismatch {
                left: target,
                right: bad.arity,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[k];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[k];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Split into homogeneous pieces keyed by degree; zero pieces are omitted.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.arity))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Embed into a ring with `new_arity >= arity` variables, sending `x_k`
    /// to `x_{offset + k}`.
    pub fn embed(&self, new_arity: usize, offset: usize) -> Polynomial {
        assert!(offset + self.arity <= new_arity);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; new_arity];
            exps[offset..offset + self.arity].copy_from_slice(&m.0);
            (Monomial(exps), c.clone())
        });
        Polynomial {
            arity: new_arity,
            terms: terms.collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.arity);
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(&lm)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Multiply by the least positive rational making all coefficients
    /// coprime integers with a positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rational::new(den, num);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Scale so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Evaluate the variables in `fixed` (index, value) and keep the rest
    /// symbolic; arity is unchanged.
    pub fn partial_eval(&self, fixed: &[(usize, Rational)]) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let mut coeff = c.clone();
            for (k, v) in fixed {
                let e = exps[*k];
                if e > 0 {
                    coeff *= num_traits::pow(v.clone(), e as usize);
                    exps[*k] = 0;
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Drop variables outside `range` (which must not occur) and shift the
    /// rest down to start at zero.
    pub fn restrict_vars(&self, range: std::ops::Range<usize>) -> Polynomial {
        debug_assert!(self.depends_only_on(range.clone()));
        let arity = range.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(m.0[range.clone()].to_vec()), c.clone()));
        Polynomial {
            arity,
            terms: terms.collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::to_text(self))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            arity: usize,
            text: &'a str,
        }
        Wire {
            arity: self.arity,
            text: &text::to_text(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            arity: usize,
            text: String,
        }
        let w = Wire::deserialize(d)?;
        parse_polynomial(&w.text, w.arity).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).expect("polynomial arity mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Render a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Small-integer view of a rational, used for exponent-like quantities.
pub fn rat_to_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, int(v))
    }

    #[test]
    fn add_cancels() {
        let (a, b) = (x(2, 0), x(2, 1));
        assert_eq!(&(&a + &b) + &(&a - &b), a.scale(&int(2)));
        assert_eq!(&a + &Polynomial::zero(2), a);
        let sq = a.pow(2);
        let sum = &sq + &(-&sq);
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn mul_examples() {
        let (a, b) = (x(2, 0), x(2, 1));
        assert_eq!(&(&a + &b) * &(&a - &b), &a.pow(2) - &b.pow(2));
        assert_eq!(&a * &Polynomial::one(2), a);
        let expect = &(&a.pow(2) + &(&a * &b).scale(&int(2))) + &b.pow(2);
        assert_eq!((&a + &b).pow(2), expect);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            x(2, 0).checked_add(&x(3, 0)),
            Err(PolyError::ArityMismatch { left: 2, right: 3 })
        ));
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn diff_examples() {
        let f = &x(2, 0).pow(2) * &x(2, 1);
        assert_eq!(f.diff(0).unwrap(), (&x(2, 0) * &x(2, 1)).scale(&int(2)));
        assert_eq!(f.diff(1).unwrap(), x(2, 0).pow(2));
        assert!(c(2, 5).diff(0).unwrap().is_zero());
        assert!(matches!(
            f.diff(2),
            Err(PolyError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let f = &x(2, 0).pow(2) + &x(2, 1);
        assert_eq!(f.eval(&[int(2), int(3)]).unwrap(), int(7));
        let g = &x(2, 0) * &x(2, 1);
        assert_eq!(g.eval(&[rat(1, 2), rat(2, 3)]).unwrap(), rat(1, 3));
        assert!(g.eval(&[int(0), int(0)]).unwrap().is_zero());
        assert!(g.eval(&[int(1)]).is_err());
    }

    #[test]
    fn substitution_examples() {
        // x^2 with x -> x + t*y in variables (x, y, t)
        let f = x(1, 0).pow(2);
        let image = &x(3, 0) + &(&x(3, 2) * &x(3, 1));
        let got = f.substitute(&[image]).unwrap();
        let expect = &(&x(3, 0).pow(2) + &(&(&x(3, 2) * &x(3, 0)) * &x(3, 1)).scale(&int(2)))
            + &(&x(3, 2).pow(2) * &x(3, 1).pow(2));
        assert_eq!(got, expect);

        let g = &x(2, 0) * &x(2, 1);
        assert_eq!(g.substitute(&[x(2, 0), x(2, 1)]).unwrap(), g);
        assert_eq!(g.substitute(&[x(2, 1), x(2, 0)]).unwrap(), g);
        assert!(g.substitute(&[x(2, 0)]).is_err());
        assert!(g.substitute(&[x(2, 0), x(3, 0)]).is_err());
    }

    #[test]
    fn homogeneous_components_examples() {
        let f = &(&x(1, 0).pow(2) + &x(1, 0)) + &c(1, 1);
        let comps = f.homogeneous_components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&0], c(1, 1));
        assert_eq!(comps[&1], x(1, 0));
        assert_eq!(comps[&2], x(1, 0).pow(2));
        let h = &x(2, 0) * &x(2, 1);
        assert_eq!(
            h.homogeneous_components().into_iter().collect::<Vec<_>>(),
            vec![(2, h.clone())]
        );
        assert!(Polynomial::zero(2).homogeneous_components().is_empty());
    }

    #[test]
    fn grevlex_order() {
        // ties in degree go to the smaller power of the last variable
        let m = |e: &[u32]| Monomial::from_exponents(e.to_vec());
        assert!(m(&[0, 3, 0]) > m(&[2, 0, 1]));
        assert!(m(&[0, 0, 1]) > m(&[1, 0, 0]).div(&m(&[1, 0, 0])).unwrap());
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1).scale(&int(3));
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(x(2, 0).exact_div(&x(2, 1)).is_none());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let p = &x(2, 0).scale(&rat(-1, 2)) + &x(2, 1).scale(&rat(3, 4));
        let q = p.primitive_part();
        assert_eq!(q, &x(2, 0).scale(&int(2)) - &x(2, 1).scale(&int(3)));
    }
}
