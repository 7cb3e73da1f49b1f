//! Independent cross-checks for the character pipeline.
//!
//! Nothing here touches `pfdcore`: characters of symmetric powers are produced
//! by expanding the Molien product directly, by the Newton recursion with Adams
//! operations, or by the complete homogeneous symmetric polynomial identity.
//! The only floating-point code in the crate is the quadrature check.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{FactoredRational, LaurentPoly, Rational};
use crate::rootsys::Weight;
use crate::weightsys::MultiplicityTable;

/// A power series in `z` with Laurent polynomial coefficients, truncated after
/// `z^N_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedTruncation {
    coefficients: Vec<LaurentPoly>,
}

impl GradedTruncation {
    fn one(rank: usize, n_max: usize) -> Self {
        let mut coefficients = vec![LaurentPoly::zero(rank); n_max + 1];
        coefficients[0] = LaurentPoly::one(rank);
        GradedTruncation { coefficients }
    }

    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `z^n`.
    pub fn coefficient(&self, n: usize) -> &LaurentPoly {
        &self.coefficients[n]
    }

    pub fn coefficients(&self) -> &[LaurentPoly] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<LaurentPoly> {
        self.coefficients
    }

    fn mul(&self, other: &Self) -> Self {
        let n_max = self.degree_bound().min(other.degree_bound());
        let coefficients = (0..=n_max)
            .map(|n| {
                (0..=n).fold(LaurentPoly::zero(self.coefficients[0].rank()), |acc, i| {
                    let (a, b) = (&self.coefficients[i], &other.coefficients[n - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect();
        GradedTruncation { coefficients }
    }
}

fn binomial_rat(n: u64, k: u64) -> Rational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Product of one series per weight, multiplied in a fixed order.
fn truncated_product(
    table: &MultiplicityTable,
    n_max: usize,
    series: impl Fn(&Weight, u64, usize) -> Rational + Sync,
) -> GradedTruncation {
    let rank = table.rank();
    let factors: Vec<GradedTruncation> = table
        .entries()
        .par_iter()
        .map(|(nu, &m)| {
            let coefficients = (0..=n_max)
                .map(|k| LaurentPoly::monomial(nu.scale(k as i64).0, series(nu, m, k)))
                .collect();
            GradedTruncation { coefficients }
        })
        .collect();
    factors
        .iter()
        .fold(GradedTruncation::one(rank, n_max), |acc, f| acc.mul(f))
}

/// `prod_nu (1 - q^nu z)^{-m_nu}` modulo `z^{N_max + 1}`.
pub fn truncated_molien(table: &MultiplicityTable, n_max: usize) -> GradedTruncation {
    // (1 - x)^{-m} = sum_k C(k + m - 1, k) x^k
    truncated_product(table, n_max, |_, m, k| {
        binomial_rat(k as u64 + m - 1, k as u64)
    })
}

/// `prod_nu (1 + q^nu z)^{m_nu}` modulo `z^{N_max + 1}`.
pub fn truncated_exterior(table: &MultiplicityTable, n_max: usize) -> GradedTruncation {
    truncated_product(table, n_max, |_, m, k| {
        if k as u64 > m {
            Rational::zero()
        } else {
            binomial_rat(m, k as u64)
        }
    })
}

/// `Char S^n V` for `n = 0..=N_max` from `n h_n = sum_k psi^k(Char V) h_{n-k}`.
pub fn adams_symmetric_all(char_v: &LaurentPoly, n_max: usize) -> Result<Vec<LaurentPoly>> {
    let rank = char_v.rank();
    let psi: Vec<LaurentPoly> = (1..=n_max as i64).map(|k| char_v.adams(k)).collect();
    let mut h = vec![LaurentPoly::one(rank)];
    for n in 1..=n_max {
        let mut acc = LaurentPoly::zero(rank);
        for k in 1..=n {
            acc = &acc + &(&psi[k - 1] * &h[n - k]);
        }
        let hn = acc.scale(&Rational::new(BigInt::one(), BigInt::from(n)));
        if let Some((e, c)) = hn.terms().iter().find(|(_, c)| !c.is_integer()) {
            return Err(Error::Internal(format!(
                "Newton recursion left coefficient {c} at {e:?} in degree {n}"
            )));
        }
        h.push(hn);
    }
    Ok(h)
}

/// `Char S^N V` from `Char V` by the Newton recursion.
pub fn adams_symmetric(char_v: &LaurentPoly, n: usize) -> Result<LaurentPoly> {
    Ok(adams_symmetric_all(char_v, n)?
        .pop()
        .expect("h_0 is always present"))
}

/// `h_N(x_1..x_k) = sum_i x_i^N / prod_{j != i} (1 - x_j / x_i)` with
/// `x_i = q^{nu_i}`, for pairwise distinct weights.
pub fn hsym_multiplicity_free(weights: &[Weight], n: u64) -> Result<LaurentPoly> {
    let rank = match weights.first() {
        Some(w) => w.rank(),
        None => return Err(Error::InvalidArgument("empty weight list".into())),
    };
    let mut sorted = weights.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::RepeatedWeight(w[0].0.clone()));
    }
    if let Some(w) = weights.iter().find(|w| w.rank() != rank) {
        return Err(Error::RankMismatch(rank, w.rank()));
    }
    let parts = weights
        .iter()
        .map(|xi| {
            let num = LaurentPoly::q(&xi.scale(n as i64).0);
            let den = weights
                .iter()
                .filter(|xj| *xj != xi)
                .map(|xj| ((xj - xi).0, 1));
            FactoredRational::new(num, den)
        })
        .collect::<Result<Vec<_>>>()?;
    FactoredRational::sum(rank, parts)?.to_laurent()
}

/// `Char T^N V = (Char V)^N`.
pub fn tensor_char(char_v: &LaurentPoly, n: u32) -> LaurentPoly {
    char_v.pow(n)
}

/// Result of comparing the generating-function integral with its exact series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureCheck {
    pub numeric: f64,
    pub series: f64,
    pub gap: f64,
}

/// Default number of trapezoid nodes for [`quadrature_genf_check`].
pub const DEFAULT_QUADRATURE_POINTS: usize = 512;

/// Compares `(1/2pi) int e^{-i mu x} prod_nu (1 - e^{i nu x} z)^{-m_nu} dx`,
/// evaluated by the trapezoid rule on `m` nodes, with the exact partial sum
/// `sum_{N <= N_max} z^N m_{lambda,N}(mu)` read off the truncated Molien series.
pub fn quadrature_genf_check(
    table: &MultiplicityTable,
    mu: &Weight,
    z: &Rational,
    n_max: usize,
    m: usize,
) -> Result<QuadratureCheck> {
    if table.rank() != 1 {
        return Err(Error::InvalidArgument(format!(
            "quadrature check needs rank 1, got rank {}",
            table.rank()
        )));
    }
    if mu.rank() != 1 {
        return Err(Error::RankMismatch(1, mu.rank()));
    }
    if z.abs() * BigInt::from(2) > Rational::one() {
        return Err(Error::InvalidArgument(format!("|z| = |{z}| exceeds 1/2")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one node".into(),
        ));
    }
    let zf = z.to_f64().expect("rational fits in f64");
    let mu0 = mu.0[0] as f64;
    let numeric: Complex64 = (0..m)
        .map(|j| {
            let x = 2.0 * PI * j as f64 / m as f64;
            let prod = table
                .entries()
                .iter()
                .fold(Complex64::one(), |acc, (nu, &mult)| {
                    let f = Complex64::one() - Complex64::from_polar(1.0, nu.0[0] as f64 * x) * zf;
                    acc * f.powi(-(mult as i32))
                });
            Complex64::from_polar(1.0, -mu0 * x) * prod
        })
        .sum::<Complex64>()
        / m as f64;

    let molien = truncated_molien(table, n_max);
    let mut exact = Rational::zero();
    let mut zn = Rational::one();
    for c in molien.coefficients() {
        exact += &zn * c.coeff(&mu.0);
        zn *= z;
    }
    let series = exact.to_f64().expect("rational fits in f64");
    Ok(QuadratureCheck {
        numeric: numeric.re,
        series,
        gap: (numeric.re - series).abs().max(numeric.im.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};
    use crate::rootsys::RootSystem;
    use crate::weightsys::weight_system;
    use proptest::prelude::*;

    fn table(s: &str, l: &[i64]) -> MultiplicityTable {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        weight_system(&rs, &Weight(l.to_vec())).unwrap()
    }

    fn p1(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], int(c))))
    }

    fn char_of(t: &MultiplicityTable) -> LaurentPoly {
        LaurentPoly::from_terms(
            t.rank(),
            t.entries()
                .iter()
                .map(|(w, &m)| (w.0.clone(), int(m as i64))),
        )
    }

    #[test]
    fn molien_sl2_adjoint() {
        let g = truncated_molien(&table("A1", &[2]), 3);
        assert!(g.coefficient(0).is_one());
        assert_eq!(*g.coefficient(1), p1(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(
            *g.coefficient(3),
            p1(&[(6, 1), (4, 1), (2, 2), (0, 2), (-2, 2), (-4, 1), (-6, 1)])
        );
    }

    #[test]
    fn molien_trivial() {
        let g = truncated_molien(&table("A2", &[0, 0]), 5);
        assert!(g.coefficients().iter().all(|c| c.is_one()));
        assert_eq!(g.degree_bound(), 5);
    }

    #[test]
    fn molien_dimension() {
        let t = table("A2", &[1, 1]);
        let g = truncated_molien(&t, 4);
        for (n, c) in g.coefficients().iter().enumerate() {
            assert_eq!(
                c.coefficient_sum(),
                binomial_rat(8 - 1 + n as u64, n as u64)
            );
        }
    }

    #[test]
    fn adams_sl2_standard() {
        let v1 = p1(&[(1, 1), (-1, 1)]);
        for n in 0..8i64 {
            let expect = p1(&(0..=n).map(|j| (n - 2 * j, 1)).collect::<Vec<_>>());
            assert_eq!(adams_symmetric(&v1, n as usize).unwrap(), expect);
        }
    }

    #[test]
    fn adams_sl2_adjoint_row_five() {
        let v2 = p1(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(
            adams_symmetric(&v2, 5).unwrap(),
            p1(&[
                (10, 1),
                (8, 1),
                (6, 2),
                (4, 2),
                (2, 3),
                (0, 3),
                (-2, 3),
                (-4, 2),
                (-6, 2),
                (-8, 1),
                (-10, 1)
            ])
        );
        assert!(adams_symmetric(&v2, 0).unwrap().is_one());
    }

    #[test]
    fn adams_rejects_non_characters() {
        // q/2 has no integral symmetric powers
        let half = LaurentPoly::monomial(vec![1], rat(1, 2));
        assert!(adams_symmetric(&half, 2).unwrap_err().is_internal());
    }

    #[test]
    fn hsym_examples() {
        let w = |v: &[i64]| Weight(v.to_vec());
        assert_eq!(
            hsym_multiplicity_free(&[w(&[1]), w(&[-1])], 3).unwrap(),
            p1(&[(3, 1), (1, 1), (-1, 1), (-3, 1)])
        );
        let fund = hsym_multiplicity_free(&[w(&[1, 0]), w(&[-1, 1]), w(&[0, -1])], 1).unwrap();
        assert_eq!(
            fund,
            LaurentPoly::from_int_terms(2, &[(&[1, 0], 1), (&[-1, 1], 1), (&[0, -1], 1)])
        );
        for n in 0..5 {
            assert!(hsym_multiplicity_free(&[w(&[0, 0])], n).unwrap().is_one());
        }
        assert!(matches!(
            hsym_multiplicity_free(&[w(&[1]), w(&[1])], 2),
            Err(Error::RepeatedWeight(_))
        ));
    }

    #[test]
    fn hsym_matches_adams_for_fundamentals() {
        for r in 1..=3 {
            let mut l = vec![0; r];
            l[0] = 1;
            let t = table(&format!("A{r}"), &l);
            let ws: Vec<Weight> = t.support().cloned().collect();
            let h = adams_symmetric_all(&char_of(&t), 5).unwrap();
            for (n, hn) in h.iter().enumerate() {
                assert_eq!(hsym_multiplicity_free(&ws, n as u64).unwrap(), *hn);
            }
        }
    }

    #[test]
    fn exterior_powers() {
        let t = table("A1", &[1]);
        let g = truncated_exterior(&t, 3);
        assert!(g.coefficient(2).is_one());
        assert!(g.coefficient(3).is_zero());
        let t = table("A2", &[1, 1]);
        let g = truncated_exterior(&t, 9);
        for n in 0..=9u64 {
            let sum = g.coefficient(n as usize).coefficient_sum();
            let expect = if n > 8 {
                Rational::zero()
            } else {
                binomial_rat(8, n)
            };
            assert_eq!(sum, expect);
        }
        assert!(g.coefficient(8).is_one());
    }

    #[test]
    fn tensor_powers() {
        let v1 = p1(&[(1, 1), (-1, 1)]);
        assert_eq!(tensor_char(&v1, 2), p1(&[(2, 1), (0, 2), (-2, 1)]));
        assert!(tensor_char(&v1, 0).is_one());
        assert_eq!(tensor_char(&v1, 1), v1);
        let adj = char_of(&table("A2", &[1, 1]));
        assert_eq!(tensor_char(&adj, 3).coefficient_sum(), int(512));
    }

    #[test]
    fn quadrature_sl2_adjoint() {
        let t = table("A1", &[2]);
        let q = quadrature_genf_check(&t, &Weight(vec![2]), &rat(1, 2), 30, 512).unwrap();
        assert!(q.gap < 1e-6, "{q:?}");
        let far = quadrature_genf_check(&t, &Weight(vec![1]), &rat(1, 2), 30, 512).unwrap();
        assert!(far.numeric.abs() < 1e-9 && far.series == 0.0);
        let z0 = quadrature_genf_check(&t, &Weight(vec![0]), &rat(0, 1), 5, 64).unwrap();
        assert!((z0.numeric - 1.0).abs() < 1e-12 && z0.series == 1.0);
    }

    #[test]
    fn quadrature_gap_shrinks() {
        let t = table("A1", &[2]);
        let gaps: Vec<f64> = [5, 10, 20]
            .iter()
            .map(|&n| {
                quadrature_genf_check(&t, &Weight(vec![0]), &rat(1, 3), n, 512)
                    .unwrap()
                    .gap
            })
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    }

    #[test]
    fn quadrature_rejects_bad_input() {
        let t = table("A2", &[1, 0]);
        assert!(quadrature_genf_check(&t, &Weight(vec![0, 0]), &rat(1, 2), 5, 64).is_err());
        let t = table("A1", &[1]);
        assert!(quadrature_genf_check(&t, &Weight(vec![0]), &rat(3, 4), 5, 64).is_err());
    }

    proptest! {
        #[test]
        fn molien_agrees_with_adams(m in 0i64..5, n_max in 0usize..7) {
            let t = table("A1", &[m]);
            let g = truncated_molien(&t, n_max);
            let h = adams_symmetric_all(&char_of(&t), n_max).unwrap();
            prop_assert_eq!(g.into_coefficients(), h);
        }

        #[test]
        fn tensor_dimension(m in 0i64..4, n in 0u32..6) {
            let t = table("A1", &[m]);
            let d = t.dim() as i64;
            prop_assert_eq!(tensor_char(&char_of(&t), n).coefficient_sum(), int(d.pow(n)));
        }
    }
}
