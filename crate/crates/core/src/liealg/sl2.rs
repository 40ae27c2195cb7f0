//! sl2-triples and Kostant slices.

use num_traits::Zero;
use serde::Serialize;

use super::{vector_to_strings, AlgebraKind, LieAlgebraData};
use crate::error::{Error, Result};
use crate::exactpoly::{int, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Triple {
    pub e: Vec<Rational>,
    pub h: Vec<Rational>,
    pub f: Vec<Rational>,
}

impl SL2Triple {
    /// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
    pub fn verify(&self, l: &LieAlgebraData) -> Result<bool> {
        let two = int(2);
        let he = l.bracket(&self.h, &self.e)?;
        let hf = l.bracket(&self.h, &self.f)?;
        let ef = l.bracket(&self.e, &self.f)?;
        Ok(he.iter().zip(&self.e).all(|(a, b)| *a == b * &two)
            && hf.iter().zip(&self.f).all(|(a, b)| *a == -(b * &two))
            && ef == self.h)
    }
}

/// Affine chart of `e + g^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceChart {
    pub base_point: Vec<Rational>,
    /// Basis of `g^f` (reduced row-echelon, ordered by pivot).
    pub directions: Vec<Vec<Rational>>,
    /// Basis of `g^e`, identical to the basis of [`LieAlgebraData::centralizer`].
    pub centralizer_basis: Vec<Vec<Rational>>,
    /// `pairing_gram[a][b] = (u_a | v_b)` for `u` in `g^e`, `v` in `g^f`.
    pub pairing_gram: Matrix,
}

impl Serialize for SliceChart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            base_point: Vec<String>,
            directions: Vec<Vec<String>>,
            centralizer_basis: Vec<Vec<String>>,
            pairing_gram: Vec<Vec<String>>,
        }
        let strs = |vs: &[Vec<Rational>]| vs.iter().map(|v| vector_to_strings(v)).collect();
        Wire {
            base_point: vector_to_strings(&self.base_point),
            directions: strs(&self.directions),
            centralizer_basis: strs(&self.centralizer_basis),
            pairing_gram: strs(&self.pairing_gram.to_rows()),
        }
        .serialize(s)
    }
}

/// Triple for the nilpotent of `gl_n`/`sl_n` in Jordan form with the given
/// block sizes, assembled blockwise: on a block of size `k`,
/// `e = sum E_{i,i+1}`, `h = diag(k-1, k-3, ..., 1-k)`,
/// `f = sum i(k-i) E_{i+1,i}`.
pub fn jordan_triple(l: &LieAlgebraData, partition: &[usize]) -> Result<SL2Triple> {
    if !matches!(l.kind, AlgebraKind::Gl | AlgebraKind::Sl) {
        return Err(Error::Unsupported(format!(
            "Jordan-form triples in {}",
            l.kind.name()
        )));
    }
    let real = l
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("algebra without matrices".into()))?;
    let n = real.size;
    if partition.iter().sum::<usize>() != n || partition.contains(&0) {
        return Err(Error::Partition(format!(
            "{partition:?} is not a partition of {n}"
        )));
    }
    let (mut e, mut h, mut f) = (
        Matrix::zeros(n, n),
        Matrix::zeros(n, n),
        Matrix::zeros(n, n),
    );
    let mut start = 0;
    for &k in partition {
        for i in 0..k {
            h[(start + i, start + i)] = int(k as i64 - 1 - 2 * i as i64);
            if i + 1 < k {
                e[(start + i, start + i + 1)] = int(1);
                f[(start + i + 1, start + i)] = int(((i + 1) * (k - i - 1)) as i64);
            }
        }
        start += k;
    }
    let coords = |m: &Matrix| {
        real.from_matrix(m)
            .ok_or_else(|| Error::Structure("triple leaves the algebra".into()))
    };
    let triple = SL2Triple {
        e: coords(&e)?,
        h: coords(&h)?,
        f: coords(&f)?,
    };
    if !triple.verify(l)? {
        return Err(Error::Structure("Jordan triple relations fail".into()));
    }
    Ok(triple)
}

/// Principal sl2-triple: `e` regular nilpotent.
pub fn principal_sl2(l: &LieAlgebraData) -> Result<SL2Triple> {
    let triple = match l.kind {
        AlgebraKind::Gl | AlgebraKind::Sl => jordan_triple(l, &[l.size])?,
        AlgebraKind::So | AlgebraKind::Sp => split_principal(l)?,
        AlgebraKind::Centralizer => {
            return Err(Error::Unsupported(
                "principal triple of a centralizer".into(),
            ))
        }
    };
    if !triple.verify(l)? {
        return Err(Error::Structure("principal triple relations fail".into()));
    }
    if !l.is_regular_point(&triple.e)? {
        return Err(Error::Structure(
            "principal nilpotent is not regular".into(),
        ));
    }
    Ok(triple)
}

/// For split `so`/`sp`: `e` is the sum of the echelon basis of the algebra
/// elements supported on the superdiagonal, `h = diag(N-1, ..., 1-N)`, and
/// `f` solves `[e, f] = h` among elements supported on the subdiagonal.
fn split_principal(l: &LieAlgebraData) -> Result<SL2Triple> {
    let real = l
        .realization
        .as_ref()
        .ok_or_else(|| Error::Unsupported("algebra without matrices".into()))?;
    let n = real.size;
    let dim = l.dim();
    let supported_on = |offset: isize| -> Vec<Vec<Rational>> {
        // Kernel of "entries off the chosen diagonal" restricted to the algebra.
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if j as isize - i as isize == offset {
                    continue;
                }
                rows.push(
                    real.basis
                        .iter()
                        .map(|b| b[(i, j)].clone())
                        .collect::<Vec<_>>(),
                );
            }
        }
        Matrix::from_rows(rows).kernel()
    };
    let upper = supported_on(1);
    let lower = supported_on(-1);
    let mut e = vec![Rational::zero(); dim];
    for v in &upper {
        for (slot, x) in e.iter_mut().zip(v) {
            *slot += x;
        }
    }
    let em = real.to_matrix(&e);
    if (0..n - 1).any(|i| em[(i, i + 1)].is_zero()) {
        return Err(Error::Structure(
            "superdiagonal element is not a single Jordan block".into(),
        ));
    }
    let mut hm = Matrix::zeros(n, n);
    for i in 0..n {
        hm[(i, i)] = int(n as i64 - 1 - 2 * i as i64);
    }
    let h = real
        .from_matrix(&hm)
        .ok_or_else(|| Error::Structure("h leaves the algebra".into()))?;
    // Solve [e, sum a_k w_k] = h for the coefficients a.
    let images: Vec<Vec<Rational>> = lower
        .iter()
        .map(|w| l.bracket(&e, w))
        .collect::<Result<_>>()?;
    let mut aug = Matrix::zeros(dim, lower.len() + 1);
    for (k, img) in images.iter().enumerate() {
        for (r, v) in img.iter().enumerate() {
            aug[(r, k)] = v.clone();
        }
    }
    for (r, v) in h.iter().enumerate() {
        aug[(r, lower.len())] = v.clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.contains(&lower.len()) {
        return Err(Error::Structure("no f completes the triple".into()));
    }
    let mut coeffs = vec![Rational::zero(); lower.len()];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[(row, lower.len())].clone();
    }
    let mut f = vec![Rational::zero(); dim];
    for (a, w) in coeffs.iter().zip(&lower) {
        for (slot, x) in f.iter_mut().zip(w) {
            *slot += a * x;
        }
    }
    Ok(SL2Triple { e, h, f })
}

/// Chart of the slice `e + g^f` with the pairing between `g^e` and `g^f`.
pub fn kostant_slice(l: &LieAlgebraData, t: &SL2Triple) -> Result<SliceChart> {
    if !t.verify(l)? {
        return Err(Error::Structure("not an sl2-triple".into()));
    }
    if l.form.is_none() {
        return Err(Error::Unsupported(
            "slice pairing needs an invariant form".into(),
        ));
    }
    let directions = l.adjoint_matrix(&t.f)?.kernel();
    let centralizer_basis = if t.e.iter().all(Zero::is_zero) {
        (0..l.dim()).map(|i| l.basis_vector(i)).collect()
    } else {
        l.adjoint_matrix(&t.e)?.kernel()
    };
    if directions.len() != centralizer_basis.len() {
        return Err(Error::DegeneratePairing);
    }
    let m = directions.len();
    let mut gram = Matrix::zeros(m, m);
    for (a, u) in centralizer_basis.iter().enumerate() {
        for (b, v) in directions.iter().enumerate() {
            gram[(a, b)] = l.pairing(u, v).expect("form present");
        }
    }
    if gram.rank() < m {
        return Err(Error::DegeneratePairing);
    }
    Ok(SliceChart {
        base_point: t.e.clone(),
        directions,
        centralizer_basis,
        pairing_gram: gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_classical;

    #[test]
    fn sl2_principal_is_standard() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        let t = principal_sl2(&sl2).unwrap();
        assert_eq!(t.e, vec![int(1), int(0), int(0)]);
        assert_eq!(t.h, vec![int(0), int(1), int(0)]);
        assert_eq!(t.f, vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn sl3_principal() {
        let sl3 = build_classical(AlgebraKind::Sl, 3).unwrap();
        let t = principal_sl2(&sl3).unwrap();
        let r = sl3.realization.as_ref().unwrap();
        let f = r.to_matrix(&t.f);
        assert_eq!(f[(1, 0)], int(2));
        assert_eq!(f[(2, 1)], int(2));
        let h = r.to_matrix(&t.h);
        assert_eq!(
            (h[(0, 0)].clone(), h[(1, 1)].clone(), h[(2, 2)].clone()),
            (int(2), int(0), int(-2))
        );
        assert!(t.verify(&sl3).unwrap());
    }

    #[test]
    fn gl3_principal_is_regular() {
        let gl3 = build_classical(AlgebraKind::Gl, 3).unwrap();
        let t = principal_sl2(&gl3).unwrap();
        assert_eq!(gl3.stabilizer_dim(&t.e).unwrap(), 3);
    }

    #[test]
    fn split_types_have_principal_triples() {
        for (kind, n) in [
            (AlgebraKind::So, 3),
            (AlgebraKind::Sp, 4),
            (AlgebraKind::So, 5),
        ] {
            let l = build_classical(kind, n).unwrap();
            let t = principal_sl2(&l).unwrap();
            assert!(t.verify(&l).unwrap());
        }
    }

    #[test]
    fn slices() {
        let sl2 = build_classical(AlgebraKind::Sl, 2).unwrap();
        let chart = kostant_slice(&sl2, &principal_sl2(&sl2).unwrap()).unwrap();
        assert_eq!(chart.directions, vec![vec![int(0), int(0), int(1)]]);

        let sl3 = build_classical(AlgebraKind::Sl, 3).unwrap();
        let chart = kostant_slice(&sl3, &principal_sl2(&sl3).unwrap()).unwrap();
        assert_eq!(chart.directions.len(), 2);

        let gl3 = build_classical(AlgebraKind::Gl, 3).unwrap();
        let chart = kostant_slice(&gl3, &principal_sl2(&gl3).unwrap()).unwrap();
        assert_eq!(chart.directions.len(), 3);
        assert_eq!(chart.centralizer_basis.len(), 3);
    }

    #[test]
    fn jordan_triples_for_all_partitions_of_three() {
        let gl3 = build_classical(AlgebraKind::Gl, 3).unwrap();
        for (p, dim) in [(vec![3], 3), (vec![2, 1], 5), (vec![1, 1, 1], 9)] {
            let t = jordan_triple(&gl3, &p).unwrap();
            let chart = kostant_slice(&gl3, &t).unwrap();
            assert_eq!(chart.directions.len(), dim);
            assert_eq!(chart.centralizer_basis.len(), dim);
        }
        assert!(jordan_triple(&gl3, &[2, 2]).is_err());
    }
}
