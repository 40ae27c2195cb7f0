//! Invariants restricted to the Kostant slice, their initial components as
//! invariants of the centralizer `g^e`, condition (*) and the regular
//! sequence check for shift families of `g^e`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational};
use crate::groebner::{regular_sequence_verdict, DimensionReport, GbOptions};
use crate::invariants::{characteristic_generators, verify_invariance, InvariantFamily};
use crate::liealg::{
    kostant_slice, vector_to_strings, LieAlgebraData, SL2Triple, SliceChart, REGULAR_POINT_ATTEMPTS,
};
use crate::linalg::Matrix;
use crate::shift::mf_generators;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRestriction {
    /// Zero-based index of the source generator.
    pub source: usize,
    /// `p(e + sum t_k v_k)` in the slice coordinates `t`.
    pub restricted: Polynomial,
    /// Lowest-degree homogeneous component of `restricted`.
    pub initial: Polynomial,
    pub initial_degree: u32,
}

/// Restrict `p` to `e + g^f` and take the initial component.
pub fn restrict_to_slice(
    source: usize,
    p: &Polynomial,
    chart: &SliceChart,
) -> Result<SliceRestriction> {
    let m = chart.directions.len();
    let n = chart.base_point.len();
    let images: Vec<Polynomial> = (0..n)
        .map(|k| {
            let mut img = Polynomial::constant(m, chart.base_point[k].clone());
            for (a, v) in chart.directions.iter().enumerate() {
                if !v[k].is_zero() {
                    img = &img + &Polynomial::var(m, a).scale(&v[k]);
                }
            }
            img
        })
        .collect();
    let restricted = p.substitute(&images)?;
    let (initial_degree, initial) = restricted
        .homogeneous_components()
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::Structure(format!("generator {} vanishes on the slice", source + 1))
        })?;
    Ok(SliceRestriction {
        source,
        restricted,
        initial,
        initial_degree,
    })
}

/// Express an initial component as a polynomial on `(g^e)*`, in the native
/// coordinates of `lc`. Dual coordinates `eta` of `g^e` and slice
/// coordinates `t` are related by `eta = G t` with `G` the pairing Gram
/// matrix.
pub fn transport_to_centralizer(
    sr: &SliceRestriction,
    chart: &SliceChart,
    lc: &LieAlgebraData,
) -> Result<Polynomial> {
    let m = chart.directions.len();
    if lc.dim() != m {
        return Err(Error::Length {
            expected: m,
            got: lc.dim(),
        });
    }
    let ginv = chart
        .pairing_gram
        .inverse()
        .ok_or(Error::DegeneratePairing)?;
    let to_dual = lc.form.clone().unwrap_or_else(|| Matrix::identity(m));
    let change = ginv.mul(&to_dual);
    let images: Vec<Polynomial> = (0..m)
        .map(|b| Polynomial::linear_form(change.row(b)))
        .collect();
    Ok(sr.initial.substitute(&images)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub e: Vec<String>,
    /// Which ambient generators were restricted.
    pub generators: GeneratorChoice,
    pub centralizer_dim: usize,
    pub centralizer_index: usize,
    pub degrees: Vec<u32>,
    pub degree_sum: u32,
    pub b: usize,
    /// `degree_sum == b`.
    pub verdict: bool,
    /// Whether every transported component Poisson-commutes with `g^e`.
    pub invariant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorChoice {
    /// The family passed in (trace powers for the classical algebras).
    Given,
    /// Characteristic polynomial coefficients of `gl_n`/`sl_n`.
    Characteristic,
}

/// Everything computed from one triple: the chart, the centralizer and the
/// transported initial components.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    pub chart: SliceChart,
    pub centralizer: LieAlgebraData,
    pub restrictions: Vec<SliceRestriction>,
    pub family: InvariantFamily,
    pub choice: GeneratorChoice,
}

pub fn centralizer_data(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    t: &SL2Triple,
) -> Result<CentralizerData> {
    for p in &fam.generators {
        if !p.eval(&t.e)?.is_zero() {
            return Err(Error::NotNilpotent);
        }
    }
    let chart = kostant_slice(l, t)?;
    let (centralizer, _) = l.centralizer(&t.e)?;
    let restrictions = fam
        .generators
        .iter()
        .enumerate()
        .map(|(i, p)| restrict_to_slice(i, p, &chart))
        .collect::<Result<Vec<_>>>()?;
    let transported = restrictions
        .iter()
        .map(|sr| transport_to_centralizer(sr, &chart, &centralizer))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("{}^({})", fam.algebra, l.describe(&t.e));
    let family = InvariantFamily::new(name, transported)?;
    Ok(CentralizerData {
        chart,
        centralizer,
        restrictions,
        family,
        choice: GeneratorChoice::Given,
    })
}

/// Condition (*) asks for some free generators. Try `fam` first, then the
/// characteristic coefficients for `gl_n`/`sl_n`; if neither satisfies it,
/// the data for `fam` is returned.
pub fn select_generators(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    t: &SL2Triple,
) -> Result<CentralizerData> {
    let given = centralizer_data(l, fam, t)?;
    if satisfies_star(&given) {
        return Ok(given);
    }
    if let Ok(alt) = characteristic_generators(l) {
        let mut data = centralizer_data(l, &alt, t)?;
        data.choice = GeneratorChoice::Characteristic;
        if satisfies_star(&data) {
            return Ok(data);
        }
    }
    Ok(given)
}

fn satisfies_star(data: &CentralizerData) -> bool {
    data.family.degree_sum() as usize == data.centralizer.b()
}

/// Condition (*): the initial degrees sum to `b(g^e)`.
pub fn condition_star(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    t: &SL2Triple,
) -> Result<StarReport> {
    let data = select_generators(l, fam, t)?;
    Ok(star_report(&data, &t.e))
}

fn star_report(data: &CentralizerData, e: &[Rational]) -> StarReport {
    let lc = &data.centralizer;
    let degrees = data.family.degrees.clone();
    let degree_sum = data.family.degree_sum();
    let invariant = data
        .family
        .generators
        .iter()
        .all(|q| verify_invariance(lc, q).unwrap_or(false));
    StarReport {
        e: vector_to_strings(e),
        generators: data.choice,
        centralizer_dim: lc.dim(),
        centralizer_index: lc.index_of().index,
        degrees,
        degree_sum,
        b: lc.b(),
        verdict: degree_sum as usize == lc.b(),
        invariant,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub algebra: String,
    pub star: StarReport,
    pub seed: u64,
    pub attempts: usize,
    pub xi: Vec<String>,
    pub family: Vec<String>,
    #[serde(flatten)]
    pub report: DimensionReport,
}

/// Shift family of the transported invariants at a seeded random regular
/// point of `(g^e)*`, checked for being a regular sequence.
pub fn conjecture_check(
    l: &LieAlgebraData,
    fam: &InvariantFamily,
    t: &SL2Triple,
    seed: u64,
    opts: &GbOptions,
) -> Result<ConjectureReport> {
    let data = select_generators(l, fam, t)?;
    let star = star_report(&data, &t.e);
    if !star.verdict {
        return Err(Error::Unsupported(format!(
            "condition (*) fails: degree sum {} differs from b = {}",
            star.degree_sum, star.b
        )));
    }
    let lc = &data.centralizer;
    let (xi, attempts) = lc.random_regular_point(seed, REGULAR_POINT_ATTEMPTS)?;
    let set = mf_generators(&data.family, &xi)?;
    let report = regular_sequence_verdict(&set.polynomials(), lc.dim(), opts)?;
    Ok(ConjectureReport {
        algebra: data.family.algebra.clone(),
        star,
        seed,
        attempts,
        xi: vector_to_strings(&xi),
        family: data
            .family
            .generators
            .iter()
            .map(Polynomial::to_string)
            .collect(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;
    use crate::groebner::Verdict;
    use crate::invariants::invariant_generators;
    use crate::liealg::{build_classical, jordan_triple, principal_sl2, AlgebraKind};

    fn gl3() -> (LieAlgebraData, InvariantFamily) {
        let l = build_classical(AlgebraKind::Gl, 3).unwrap();
        let fam = invariant_generators(&l).unwrap();
        (l, fam)
    }

    #[test]
    fn zero_slice_is_identity() {
        let (l, fam) = gl3();
        let t = jordan_triple(&l, &[1, 1, 1]).unwrap();
        let data = centralizer_data(&l, &fam, &t).unwrap();
        for (sr, p) in data.restrictions.iter().zip(&fam.generators) {
            assert_eq!(&sr.restricted, p);
            assert_eq!(&sr.initial, p);
        }
        assert_eq!(data.family.generators, fam.generators);
    }

    #[test]
    fn sl2_casimir_on_slice_is_linear() {
        let l = build_classical(AlgebraKind::Sl, 2).unwrap();
        let fam = invariant_generators(&l).unwrap();
        let chart = kostant_slice(&l, &principal_sl2(&l).unwrap()).unwrap();
        let sr = restrict_to_slice(0, &fam.generators[0], &chart).unwrap();
        // 2(x_h^2 + x_e x_f) at (1, 0, t) is 2t
        assert_eq!(sr.restricted, Polynomial::var(1, 0).scale(&int(2)));
        assert_eq!(sr.initial_degree, 1);
    }

    #[test]
    fn gl3_star_for_all_partitions() {
        let (l, fam) = gl3();
        for (partition, degrees, b) in [
            (vec![1, 1, 1], vec![1, 2, 3], 6),
            (vec![2, 1], vec![1, 1, 2], 4),
            (vec![3], vec![1, 1, 1], 3),
        ] {
            let t = jordan_triple(&l, &partition).unwrap();
            let rep = condition_star(&l, &fam, &t).unwrap();
            assert_eq!(rep.degrees, degrees, "{partition:?}");
            assert_eq!(rep.b, b);
            assert!(rep.verdict);
            assert!(rep.invariant);
            assert_eq!(rep.centralizer_index, 3);
            assert_eq!(rep.generators, GeneratorChoice::Given);
        }
    }

    #[test]
    fn gl4_minimal_needs_characteristic_coefficients() {
        let l = build_classical(AlgebraKind::Gl, 4).unwrap();
        let fam = invariant_generators(&l).unwrap();
        let t = jordan_triple(&l, &[2, 1, 1]).unwrap();
        assert_eq!(
            centralizer_data(&l, &fam, &t).unwrap().family.degree_sum(),
            6
        );
        let rep = condition_star(&l, &fam, &t).unwrap();
        assert_eq!(rep.generators, GeneratorChoice::Characteristic);
        assert_eq!((rep.degree_sum, rep.b), (7, 7));
        assert!(rep.verdict && rep.invariant);
    }

    #[test]
    fn principal_transport_spans_linear_forms() {
        let (l, fam) = gl3();
        let t = jordan_triple(&l, &[3]).unwrap();
        let data = centralizer_data(&l, &fam, &t).unwrap();
        let rows: Vec<Vec<Rational>> = data
            .family
            .generators
            .iter()
            .map(|q| {
                (0..3)
                    .map(|k| q.coefficient(&crate::exactpoly::Monomial::var(3, k)))
                    .collect()
            })
            .collect();
        assert_eq!(Matrix::from_rows(rows).rank(), 3);
    }

    #[test]
    fn conjecture_for_gl3_partitions() {
        let (l, fam) = gl3();
        for partition in [vec![3], vec![2, 1], vec![1, 1, 1]] {
            let t = jordan_triple(&l, &partition).unwrap();
            let rep = conjecture_check(&l, &fam, &t, 42, &GbOptions::default()).unwrap();
            assert_eq!(rep.report.verdict, Verdict::True, "{partition:?}");
            assert_eq!(rep.report.generator_count, rep.star.b);
        }
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let (l, fam) = gl3();
        let t = SL2Triple {
            e: l.basis_vector(0),
            h: vec![int(0); 9],
            f: vec![int(0); 9],
        };
        assert!(matches!(
            condition_star(&l, &fam, &t),
            Err(Error::NotNilpotent)
        ));
    }
}
