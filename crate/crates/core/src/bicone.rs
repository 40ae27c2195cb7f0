//! The nilpotent bicone: pairs `(x, y)` whose span consists of nilpotent
//! elements, cut out by the bigraded components `p_i^(j)`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{int, Polynomial, Rational};
use crate::groebner::{jacobian_rank, regular_sequence_verdict, DimensionReport, GbOptions};
use crate::invariants::InvariantFamily;
use crate::liealg::{vector_to_strings, AlgebraKind, LieAlgebraData};
use crate::linalg::{polynomial_det, Matrix};
use crate::sampling;
use crate::shift::{bigraded_components, mf_generators};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiconeGenerator {
    /// Zero-based generator index.
    pub i: usize,
    pub j: u32,
    /// Degrees in the x-block and the y-block.
    pub bidegree: (u32, u32),
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiconeIdeal {
    pub algebra: String,
    /// Dimension `n` of the algebra; generators live in `2n` variables.
    pub n: usize,
    pub generators: Vec<BiconeGenerator>,
}

impl BiconeIdeal {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }
}

/// All `p_i^(j)`, `j = 0..=d_i`, x-block first.
pub fn bicone_generators(fam: &InvariantFamily) -> Result<BiconeIdeal> {
    let n = fam.arity();
    let mut generators = Vec::new();
    for (i, (p, &d)) in fam.generators.iter().zip(&fam.degrees).enumerate() {
        for (j, poly) in bigraded_components(p)?.into_iter().enumerate() {
            let j = j as u32;
            generators.push(BiconeGenerator {
                i,
                j,
                bidegree: (d - j, j),
                poly,
            });
        }
    }
    Ok(BiconeIdeal {
        algebra: fam.algebra.clone(),
        n,
        generators,
    })
}

fn pair_point(x: &[Rational], y: &[Rational], n: usize) -> Result<Vec<Rational>> {
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::Length {
                expected: n,
                got: v.len(),
            });
        }
    }
    Ok(x.iter().chain(y).cloned().collect())
}

/// Whether every generator vanishes at `(x, y)`.
pub fn bicone_membership(ideal: &BiconeIdeal, x: &[Rational], y: &[Rational]) -> Result<bool> {
    let pt = pair_point(x, y, ideal.n)?;
    for g in &ideal.generators {
        if !g.poly.eval(&pt)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `2n - sum(d_i + 1) = 3(b - l)`, checked before any Groebner work.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticIdentity {
    pub two_n: usize,
    pub generator_count: usize,
    pub b: usize,
    pub rank: usize,
    pub left: i64,
    pub right: i64,
    pub holds: bool,
}

fn arithmetic_identity(l: &LieAlgebraData, ideal: &BiconeIdeal, rank: usize) -> ArithmeticIdentity {
    let two_n = 2 * ideal.n;
    let b = l.b();
    let left = two_n as i64 - ideal.generator_count() as i64;
    let right = 3 * (b as i64 - rank as i64);
    ArithmeticIdentity {
        two_n,
        generator_count: ideal.generator_count(),
        b,
        rank,
        left,
        right,
        holds: left == right,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiconeDimensionReport {
    pub algebra: String,
    pub identity: ArithmeticIdentity,
    #[serde(flatten)]
    pub report: DimensionReport,
}

/// Dimension of the bicone against `2n - sum(d_i + 1)`.
pub fn bicone_dimension_check(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    opts: &GbOptions,
) -> Result<BiconeDimensionReport> {
    let ideal = bicone_generators(fam)?;
    let identity = arithmetic_identity(l, &ideal, fam.len());
    if !identity.holds {
        return Err(Error::Structure(format!(
            "2n - sum(d_i + 1) = {} differs from 3(b - l) = {}",
            identity.left, identity.right
        )));
    }
    let report = regular_sequence_verdict(&ideal.polynomials(), 2 * ideal.n, opts)?;
    Ok(BiconeDimensionReport {
        algebra: ideal.algebra,
        identity,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub algebra: String,
    pub e: Vec<String>,
    /// Generators `p_i^(0)(e, y) = p_i(e)` vanish identically and are dropped.
    pub dropped_constant_generators: usize,
    #[serde(flatten)]
    pub report: DimensionReport,
    /// Dimension of the Mishchenko-Fomenko zero locus at the same point.
    pub mf_dimension: Option<i64>,
    pub agrees_with_mf: Option<bool>,
}

/// Fiber of the bicone over a regular nilpotent `e`, compared with the
/// MF family at `xi = e`.
pub fn bicone_fiber_check(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    e: &[Rational],
    opts: &GbOptions,
) -> Result<FiberReport> {
    let n = fam.arity();
    let ideal = bicone_generators(fam)?;
    if !l.is_regular_point(e)? {
        return Err(Error::NotRegularNilpotent);
    }
    if !bicone_membership(&ideal, e, &vec![Rational::zero(); n])? {
        return Err(Error::NotNilpotent);
    }
    let fixed: Vec<(usize, Rational)> = e.iter().cloned().enumerate().collect();
    let mut fiber = Vec::new();
    let mut dropped = 0;
    for g in &ideal.generators {
        let restricted = g.poly.partial_eval(&fixed).restrict_vars(n..2 * n);
        if g.j == 0 {
            debug_assert!(restricted.is_zero());
            dropped += 1;
            continue;
        }
        fiber.push(restricted);
    }
    let report = regular_sequence_verdict(&fiber, n, opts)?;
    let set = mf_generators(fam, e)?;
    let mf = regular_sequence_verdict(&set.polynomials(), n, opts)?;
    let agrees = match (report.ideal_dimension, mf.ideal_dimension) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(FiberReport {
        algebra: ideal.algebra,
        e: vector_to_strings(e),
        dropped_constant_generators: dropped,
        report,
        mf_dimension: mf.ideal_dimension,
        agrees_with_mf: agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub span_dim: usize,
    /// Nonzero maximal minors of the gradient matrix along the pencil.
    pub nonzero_minors: usize,
    /// Degree of the gcd of the minors with `t = 1`, when any minor is nonzero.
    pub gcd_degree: Option<usize>,
    /// Whether all minors vanish at `(s, t) = (1, 0)`.
    pub root_at_infinity: bool,
    pub regular: bool,
}

/// Whether `span(x, y)` is two-dimensional and all its nonzero elements
/// are regular, decided from the gcd of the maximal minors of the gradient
/// matrix at `s x + t y`.
pub fn pencil_regularity(
    fam: &InvariantFamily,
    x: &[Rational],
    y: &[Rational],
) -> Result<PencilReport> {
    let n = fam.arity();
    pair_point(x, y, n)?;
    let span_dim = Matrix::from_rows(vec![x.to_vec(), y.to_vec()]).rank();
    if span_dim < 2 {
        return Ok(PencilReport {
            span_dim,
            nonzero_minors: 0,
            gcd_degree: None,
            root_at_infinity: false,
            regular: false,
        });
    }
    // z_k = s x_k + t y_k with (s, t) = (v0, v1)
    let images: Vec<Polynomial> = (0..n)
        .map(|k| &Polynomial::var(2, 0).scale(&x[k]) + &Polynomial::var(2, 1).scale(&y[k]))
        .collect();
    let grad: Vec<Vec<Polynomial>> = fam
        .gradients()
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| g.substitute(&images))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rank = fam.len();
    let mut minors = Vec::new();
    for cols in combinations(n, rank) {
        let sub: Vec<Vec<Polynomial>> = grad
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let m = polynomial_det(&sub);
        if !m.is_zero() {
            minors.push(m);
        }
    }
    if minors.is_empty() {
        return Ok(PencilReport {
            span_dim,
            nonzero_minors: 0,
            gcd_degree: None,
            root_at_infinity: true,
            regular: false,
        });
    }
    let root_at_infinity = minors.iter().all(|m| {
        m.eval(&[int(1), int(0)])
            .map(|v| v.is_zero())
            .unwrap_or(false)
    });
    let mut g: Option<Vec<Rational>> = None;
    for m in &minors {
        let u = dehomogenize(m);
        g = Some(match g {
            None => u,
            Some(acc) => univariate_gcd(acc, u),
        });
    }
    let gcd_degree = g.map(|g| g.len() - 1);
    let regular = gcd_degree == Some(0) && !root_at_infinity;
    Ok(PencilReport {
        span_dim,
        nonzero_minors: minors.len(),
        gcd_degree,
        root_at_infinity,
        regular,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < k - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Coefficients in `s` (ascending) of a binary form with `t = 1`.
fn dehomogenize(m: &Polynomial) -> Vec<Rational> {
    let deg = m
        .terms()
        .map(|(mono, _)| mono.exponents()[0])
        .max()
        .unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (mono, c) in m.terms() {
        coeffs[mono.exponents()[0] as usize] += c;
    }
    trim(coeffs)
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Monic gcd of univariate polynomials (ascending coefficients).
fn univariate_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    if lead.is_zero() {
        return a;
    }
    a.into_iter().map(|c| c / &lead).collect()
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.iter().all(Zero::is_zero) {
        let q = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &q * bk;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    if r.is_empty() {
        r.push(Rational::zero());
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessRow {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub omega: bool,
    pub jacobian_rank: usize,
    pub full_rank: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub algebra: String,
    pub generator_count: usize,
    pub samples: usize,
    pub omega_count: usize,
    pub rows: Vec<SmoothnessRow>,
    pub failures: usize,
}

impl SmoothnessReport {
    pub fn all_agree(&self) -> bool {
        self.failures == 0
    }
}

/// Compare pencil regularity with full Jacobian rank at each sample.
pub fn smoothness_crosscheck(
    fam: &InvariantFamily,
    samples: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<SmoothnessReport> {
    let ideal = bicone_generators(fam)?;
    let gens = ideal.polynomials();
    let mut rows = Vec::with_capacity(samples.len());
    for (idx, (x, y)) in samples.iter().enumerate() {
        if !bicone_membership(&ideal, x, y)? {
            return Err(Error::NotInBicone(idx));
        }
        let omega = pencil_regularity(fam, x, y)?.regular;
        let rank = jacobian_rank(&gens, &pair_point(x, y, ideal.n)?)?;
        let full = rank == gens.len();
        rows.push(SmoothnessRow {
            x: vector_to_strings(x),
            y: vector_to_strings(y),
            omega,
            jacobian_rank: rank,
            full_rank: full,
            agree: omega == full,
        });
    }
    let failures = rows.iter().filter(|r| !r.agree).count();
    let omega_count = rows.iter().filter(|r| r.omega).count();
    Ok(SmoothnessReport {
        algebra: ideal.algebra,
        generator_count: gens.len(),
        samples: rows.len(),
        omega_count,
        rows,
        failures,
    })
}

fn unipotent<R: Rng>(rng: &mut R, size: usize, upper: bool) -> Matrix {
    let mut m = Matrix::identity(size);
    for i in 0..size {
        for j in 0..size {
            if (upper && j > i) || (!upper && j < i) {
                m[(i, j)] = sampling::small_integer(rng, 2);
            }
        }
    }
    m
}

fn elementary(size: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    m[(i, j)] = int(1);
    m
}

/// Seeded pairs in the bicone of `gl_n` or `sl_n`: conjugates of a
/// regular nilpotent pencil (size 3 and up), pairs in a conjugate of the
/// nilradical, collinear nilpotent pairs, and the origin, each mixed by a
/// random invertible 2x2 recombination.
pub fn bicone_samples(
    l: &LieAlgebraData,
    seed: u64,
    count: usize,
) -> Result<Vec<(Vec<Rational>, Vec<Rational>)>> {
    if !matches!(l.kind, AlgebraKind::Gl | AlgebraKind::Sl) {
        return Err(Error::Unsupported(format!(
            "bicone samples for {}",
            l.kind.name()
        )));
    }
    let real = l
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("algebra without matrices".into()))?;
    let size = real.size;
    let mut rng = sampling::rng(seed);
    let mut principal = Matrix::zeros(size, size);
    let mut opposite = Matrix::zeros(size, size);
    for i in 0..size - 1 {
        principal[(i, i + 1)] = int(1);
        opposite[(i + 1, i)] = int(if i % 2 == 0 { 1 } else { -1 });
    }
    let kinds = if size == 3 { 4 } else { 3 };
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let (x, y) = match (idx % kinds, kinds) {
            (0, 4) => (principal.clone(), opposite.clone()),
            (k, _) if k == kinds - 3 => {
                // two random strictly upper-triangular matrices
                let mut a = Matrix::zeros(size, size);
                let mut b = Matrix::zeros(size, size);
                for i in 0..size {
                    for j in i + 1..size {
                        a[(i, j)] = sampling::small_integer(&mut rng, 3);
                        b[(i, j)] = sampling::small_integer(&mut rng, 3);
                    }
                }
                (a, b)
            }
            (k, _) if k == kinds - 2 => {
                let c = sampling::small_integer(&mut rng, 3);
                (principal.clone(), principal.scale(&c))
            }
            _ => {
                if (idx / kinds) % 2 == 0 {
                    (Matrix::zeros(size, size), Matrix::zeros(size, size))
                } else {
                    (elementary(size, 0, size - 1), Matrix::zeros(size, size))
                }
            }
        };
        let g = unipotent(&mut rng, size, true).mul(&unipotent(&mut rng, size, false));
        let gi = g.inverse().expect("unipotent products are invertible");
        let (x, y) = (g.mul(&x).mul(&gi), g.mul(&y).mul(&gi));
        let (a, b, c, d) = loop {
            let v: Vec<Rational> = (0..4)
                .map(|_| sampling::small_integer(&mut rng, 3))
                .collect();
            if !(&v[0] * &v[3] - &v[1] * &v[2]).is_zero() {
                break (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
            }
        };
        let xm = x.scale(&a).add(&y.scale(&b));
        let ym = x.scale(&c).add(&y.scale(&d));
        let coords = |m: &Matrix| {
            real.from_matrix(m)
                .ok_or_else(|| Error::Structure("sample outside the algebra".into()))
        };
        out.push((coords(&xm)?, coords(&ym)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_generators;
    use crate::liealg::{build_classical, principal_sl2};

    fn setup(kind: AlgebraKind, n: usize) -> (LieAlgebraData, InvariantFamily) {
        let l = build_classical(kind, n).unwrap();
        let fam = invariant_generators(&l).unwrap();
        (l, fam)
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn generator_counts_and_bidegrees() {
        let (_, fam) = setup(AlgebraKind::Sl, 2);
        let ideal = bicone_generators(&fam).unwrap();
        let bideg: Vec<_> = ideal.generators.iter().map(|g| g.bidegree).collect();
        assert_eq!(bideg, vec![(2, 0), (1, 1), (0, 2)]);
        assert!(ideal.generators[0].poly.depends_only_on(0..3));
        assert!(ideal.generators[2].poly.depends_only_on(3..6));
        assert_eq!(
            bicone_generators(&setup(AlgebraKind::Sl, 3).1)
                .unwrap()
                .generator_count(),
            7
        );
        assert_eq!(
            bicone_generators(&setup(AlgebraKind::Gl, 3).1)
                .unwrap()
                .generator_count(),
            9
        );
    }

    #[test]
    fn membership_examples() {
        let (sl3, fam) = setup(AlgebraKind::Sl, 3);
        let ideal = bicone_generators(&fam).unwrap();
        let r = sl3.realization.as_ref().unwrap();
        let (a, b) = (
            r.from_matrix(&elementary(3, 0, 1)).unwrap(),
            r.from_matrix(&elementary(3, 1, 2)).unwrap(),
        );
        assert!(bicone_membership(&ideal, &a, &b).unwrap());
        let zero = vec![int(0); 8];
        assert!(bicone_membership(&ideal, &zero, &zero).unwrap());
        let (_, fam2) = setup(AlgebraKind::Sl, 2);
        let ideal2 = bicone_generators(&fam2).unwrap();
        // e + f is semisimple
        assert!(!bicone_membership(&ideal2, &v(&[1, 0, 0]), &v(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn sl2_dimension() {
        let (sl2, fam) = setup(AlgebraKind::Sl, 2);
        let rep = bicone_dimension_check(&sl2, &fam, &GbOptions::default()).unwrap();
        assert!(rep.identity.holds);
        assert_eq!(rep.report.ideal_dimension, Some(3));
        assert_eq!(rep.report.verdict, crate::groebner::Verdict::True);
    }

    #[test]
    fn gl3_identity() {
        let (gl3, fam) = setup(AlgebraKind::Gl, 3);
        let ideal = bicone_generators(&fam).unwrap();
        let id = arithmetic_identity(&gl3, &ideal, fam.len());
        assert_eq!((id.left, id.right), (9, 9));
    }

    #[test]
    fn sl2_fiber() {
        let (sl2, fam) = setup(AlgebraKind::Sl, 2);
        let e = principal_sl2(&sl2).unwrap().e;
        let rep = bicone_fiber_check(&sl2, &fam, &e, &GbOptions::default()).unwrap();
        assert_eq!(rep.report.ideal_dimension, Some(1));
        assert_eq!(rep.dropped_constant_generators, 1);
        assert_eq!(rep.agrees_with_mf, Some(true));
        assert!(matches!(
            bicone_fiber_check(&sl2, &fam, &v(&[0, 1, 0]), &GbOptions::default()),
            Err(Error::NotNilpotent)
        ));
        assert!(matches!(
            bicone_fiber_check(&sl2, &fam, &v(&[0, 0, 0]), &GbOptions::default()),
            Err(Error::NotRegularNilpotent)
        ));
    }

    #[test]
    fn pencil_examples() {
        let (_, fam) = setup(AlgebraKind::Sl, 2);
        assert!(
            pencil_regularity(&fam, &v(&[1, 0, 0]), &v(&[0, 0, 1]))
                .unwrap()
                .regular
        );
        let line = pencil_regularity(&fam, &v(&[1, 0, 0]), &v(&[2, 0, 0])).unwrap();
        assert_eq!(line.span_dim, 1);
        assert!(!line.regular);
        let (sl3, fam3) = setup(AlgebraKind::Sl, 3);
        let t = principal_sl2(&sl3).unwrap();
        assert!(pencil_regularity(&fam3, &t.e, &t.f).unwrap().regular);
        // span of E12 and E13 contains no regular element
        let r = sl3.realization.as_ref().unwrap();
        let (a, b) = (
            r.from_matrix(&elementary(3, 0, 1)).unwrap(),
            r.from_matrix(&elementary(3, 0, 2)).unwrap(),
        );
        assert!(!pencil_regularity(&fam3, &a, &b).unwrap().regular);
    }

    #[test]
    fn univariate_gcd_examples() {
        // (s - 1)(s + 2) and (s - 1)(s - 3)
        let g = univariate_gcd(v(&[-2, 1, 1]), v(&[3, -4, 1]));
        assert_eq!(g, v(&[-1, 1]));
        assert_eq!(univariate_gcd(v(&[1, 1]), v(&[2])), v(&[1]));
    }

    #[test]
    fn sl2_smoothness_samples() {
        let (sl2, fam) = setup(AlgebraKind::Sl, 2);
        let samples = bicone_samples(&sl2, 5, 12).unwrap();
        let rep = smoothness_crosscheck(&fam, &samples).unwrap();
        assert!(rep.all_agree());
        assert_eq!(rep.omega_count, 0);
        let bad = vec![(v(&[1, 0, 0]), v(&[0, 0, 1]))];
        assert!(matches!(
            smoothness_crosscheck(&fam, &bad),
            Err(Error::NotInBicone(0))
        ));
    }

    #[test]
    fn sl3_smoothness_samples() {
        let (sl3, fam) = setup(AlgebraKind::Sl, 3);
        let samples = bicone_samples(&sl3, 11, 20).unwrap();
        let rep = smoothness_crosscheck(&fam, &samples).unwrap();
        assert!(
            rep.all_agree(),
            "{:?}",
            rep.rows.iter().filter(|r| !r.agree).collect::<Vec<_>>()
        );
        assert!(rep.omega_count > 0 && rep.omega_count < rep.samples);
    }
}
