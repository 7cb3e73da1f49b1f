//! From the closed character to concrete data: `Char S^N V` for a given `N`,
//! weight multiplicities, the split into Weyl orbits, and the partial fraction
//! decomposition in `q` of a rank-one orbit summand.

mod upoly;

pub use upoly::{cyclotomic, UPoly};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pfdcore::{binomial_poly, ClosedCharacter};
use crate::polyring::{FactoredRational, LaurentPoly, Rational};
use crate::rootsys::{RootSystem, Weight};

/// The Fourier series of `Char S^N V`: a Laurent polynomial with positive
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterPoly {
    poly: LaurentPoly,
}

impl CharacterPoly {
    /// Wraps a Laurent polynomial, rejecting non-integral or non-positive
    /// coefficients.
    pub fn new(poly: LaurentPoly) -> Result<Self> {
        if let Some((e, c)) = poly
            .terms()
            .iter()
            .find(|(_, c)| !c.is_integer() || !c.is_positive())
        {
            return Err(Error::Internal(format!(
                "character has coefficient {c} at {e:?}"
            )));
        }
        Ok(CharacterPoly { poly })
    }

    pub fn rank(&self) -> usize {
        self.poly.rank()
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    /// `(weight, multiplicity)` pairs in lexicographic weight order.
    pub fn entries(&self) -> impl Iterator<Item = (Weight, BigInt)> + '_ {
        self.poly
            .terms()
            .iter()
            .map(|(e, c)| (Weight(e.clone()), c.to_integer()))
    }

    pub fn support_size(&self) -> usize {
        self.poly.len()
    }

    /// Sum of all multiplicities, i.e. `dim S^N V`.
    pub fn dimension(&self) -> BigInt {
        self.poly.coefficient_sum().to_integer()
    }

    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.entries().all(|(mu, m)| {
            (1..=rs.rank()).all(|i| {
                rs.weyl_reflect(i, &mu)
                    .map(|img| multiplicity_at(self, &img) == m)
                    .unwrap_or(false)
            })
        })
    }
}

impl fmt::Display for CharacterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn serialize_count<S: Serializer>(m: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&m.to_string()),
    }
}

impl Serialize for CharacterPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            weight: Weight,
            #[serde(serialize_with = "serialize_count")]
            mult: BigInt,
        }
        let mut seq = s.serialize_seq(Some(self.poly.len()))?;
        for (weight, mult) in self.entries() {
            seq.serialize_element(&Entry { weight, mult })?;
        }
        seq.end()
    }
}

fn orbit_terms<'a>(
    cc: &'a ClosedCharacter,
    weights: impl IntoIterator<Item = &'a Weight>,
    n: u64,
) -> Result<Vec<FactoredRational>> {
    let mut parts = Vec::new();
    for nu in weights {
        let shift = nu.scale(n as i64).0;
        for t in cc.terms_at(nu) {
            let p = BigRational::from_integer(binomial_poly(t.order, n)?);
            parts.push(t.coeff.scale(&p).shift(&shift));
        }
    }
    Ok(parts)
}

/// `Char S^N V = sum_nu q^{N nu} sum_k A_{nu,k}(q) p_k(N)`.
///
/// The sum is formed over a common binomial denominator and then divided out
/// exactly; a remainder can only come from a bug upstream.
pub fn character_at(cc: &ClosedCharacter, n: u64) -> Result<CharacterPoly> {
    let parts = orbit_terms(cc, cc.source().support(), n)?;
    let total = FactoredRational::sum(cc.rank(), parts)?;
    let poly = total
        .to_laurent()
        .map_err(|e| Error::Internal(format!("Char S^{n} V is not a Laurent polynomial: {e}")))?;
    CharacterPoly::new(poly)
}

/// `m_{lambda,N}(mu)`: the constant term of `q^{-mu} Char S^N V`.
pub fn multiplicity_at(cp: &CharacterPoly, mu: &Weight) -> BigInt {
    if mu.rank() != cp.rank() {
        return BigInt::zero();
    }
    cp.poly.constant_term_shifted(mu.coords()).to_integer()
}

/// The part `f_{nu,N}` of `Char S^N V` carried by the Weyl orbit of a dominant
/// weight `nu`.
#[derive(Debug, Clone)]
pub struct OrbitSummand {
    pub dominant_weight: Weight,
    pub orbit_size: usize,
    pub value: FactoredRational,
}

impl Serialize for OrbitSummand {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrbitSummand", 3)?;
        st.serialize_field("dominant_weight", &self.dominant_weight)?;
        st.serialize_field("orbit_size", &self.orbit_size)?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// One summand per dominant weight of the support, in lexicographic order.
pub fn orbit_split(cc: &ClosedCharacter, rs: &RootSystem, n: u64) -> Result<Vec<OrbitSummand>> {
    if rs.rank() != cc.rank() {
        return Err(Error::RankMismatch(rs.rank(), cc.rank()));
    }
    let dominant: Vec<&Weight> = cc.source().support().filter(|w| w.is_dominant()).collect();
    dominant
        .into_iter()
        .map(|nu| {
            let orbit = rs.weyl_orbit(nu);
            let value = FactoredRational::sum(cc.rank(), orbit_terms(cc, orbit.iter(), n)?)?;
            Ok(OrbitSummand {
                dominant_weight: nu.clone(),
                orbit_size: orbit.len(),
                value,
            })
        })
        .collect()
}

/// `numerator / Phi_d(q)^k` with `deg numerator < deg Phi_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleTerm {
    pub d: usize,
    pub k: u32,
    pub numerator: UPoly,
}

/// Partial fraction decomposition in one variable: a Laurent part plus proper
/// fractions over powers of cyclotomic polynomials, sorted by `(d, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePfd {
    pub laurent_part: LaurentPoly,
    pub pole_terms: Vec<PoleTerm>,
}

impl UnivariatePfd {
    pub fn pole_term(&self, d: usize, k: u32) -> Option<&PoleTerm> {
        self.pole_terms.iter().find(|t| t.d == d && t.k == k)
    }

    /// Value at a rational point that is neither 0 nor a root of unity.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut acc = self.laurent_part.eval(std::slice::from_ref(x))?;
        for t in &self.pole_terms {
            let den = cyclotomic(t.d).pow(t.k).eval(x);
            if den.is_zero() {
                return Err(Error::Pole {
                    alpha: vec![t.d as i64],
                });
            }
            acc += t.numerator.eval(x) / den;
        }
        Ok(acc)
    }

    /// The decomposition recombined into `numerator / (q^s * denominator)`.
    pub fn to_fraction(&self) -> (UPoly, usize, UPoly) {
        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        for t in &self.pole_terms {
            let e = exps.entry(t.d).or_insert(0);
            *e = (*e).max(t.k);
        }
        let den = exps
            .iter()
            .fold(UPoly::one(), |acc, (&d, &k)| &acc * &cyclotomic(d).pow(k));
        let s = (-self.laurent_part.min_exponents()[0]).max(0) as usize;
        let mut num = &laurent_to_upoly(&self.laurent_part, s) * &den;
        for t in &self.pole_terms {
            let cof = den
                .exact_div(&cyclotomic(t.d).pow(t.k))
                .expect("Phi_d^k divides the common denominator");
            num = &num + &(&(&t.numerator * &cof) * &UPoly::monomial(s));
        }
        (num, s, den)
    }
}

fn laurent_to_upoly(p: &LaurentPoly, s: usize) -> UPoly {
    let top = p
        .terms()
        .keys()
        .map(|e| e[0] + s as i64)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let mut c = vec![Rational::zero(); top + 1];
    for (e, v) in p.terms() {
        c[(e[0] + s as i64) as usize] = v.clone();
    }
    UPoly::new(c)
}

impl Serialize for UnivariatePfd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pole {
            d: usize,
            k: u32,
            numerator: Vec<String>,
        }
        let poles: Vec<Pole> = self
            .pole_terms
            .iter()
            .map(|t| Pole {
                d: t.d,
                k: t.k,
                numerator: t.numerator.coeffs().iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        let mut st = s.serialize_struct("UnivariatePfd", 2)?;
        st.serialize_field("laurent_part", &self.laurent_part)?;
        st.serialize_field("pole_terms", &poles)?;
        st.end()
    }
}

impl fmt::Display for UnivariatePfd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laurent_part)?;
        for t in &self.pole_terms {
            let num = laurent_from_upoly(&t.numerator);
            let phi = laurent_from_upoly(&cyclotomic(t.d));
            let pow = if t.k == 1 {
                String::new()
            } else {
                format!("^{}", t.k)
            };
            write!(f, " + ({num})/({phi}){pow}")?;
        }
        Ok(())
    }
}

fn laurent_from_upoly(p: &UPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as i64], c.clone())),
    )
}

/// Partial fractions in `q` of a rank-one rational function with binomial
/// denominators.
///
/// Each `1 - q^a` is rewritten as a unit times `q^|a| - 1` and split into
/// cyclotomic factors. The part over `Phi_d^e` is `P C^{-1} mod Phi_d^e` with
/// `C` the cofactor, expanded `Phi_d`-adically into proper fractions; what is
/// left after subtracting all of them is the Laurent part.
pub fn univariate_pfd(f: &FactoredRational) -> Result<UnivariatePfd> {
    if f.rank() != 1 {
        return Err(Error::InvalidArgument(format!(
            "univariate partial fractions need rank 1, got rank {}",
            f.rank()
        )));
    }
    let mut unit_shift = 0i64;
    let mut negate = false;
    let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
    for (alpha, &k) in f.denominator() {
        let a = alpha[0];
        if a > 0 {
            // 1 - q^a = -(q^a - 1)
            negate ^= k % 2 == 1;
        } else {
            // 1 - q^{-b} = (q^b - 1) q^{-b}
            unit_shift += -a * k as i64;
        }
        for d in upoly::divisors(a.unsigned_abs() as usize) {
            *exps.entry(d).or_insert(0) += k;
        }
    }
    let mut u = f.numerator().shift(&[unit_shift]);
    if negate {
        u = -u;
    }
    if exps.is_empty() {
        return Ok(UnivariatePfd {
            laurent_part: u,
            pole_terms: Vec::new(),
        });
    }

    // f = P / (q^s D)
    let s = (-u.min_exponents()[0]).max(0) as usize;
    let p = laurent_to_upoly(&u, s);
    let blocks: Vec<(usize, u32, UPoly)> = exps
        .iter()
        .map(|(&d, &e)| (d, e, cyclotomic(d).pow(e)))
        .collect();
    let den = blocks.iter().fold(UPoly::one(), |acc, (_, _, b)| &acc * b);
    let qs = UPoly::monomial(s);

    let mut pole_terms = Vec::new();
    let mut covered = UPoly::zero();
    for (d, e, block) in &blocks {
        let cofactor = &qs * &den.exact_div(block)?;
        let part = (&p.rem(block)? * &cofactor.inverse_mod(block)?).rem(block)?;
        covered = &covered + &(&part * &cofactor);
        let phi = cyclotomic(*d);
        let mut rest = part;
        for j in 0..*e {
            let (q, digit) = rest.div_rem(&phi)?;
            if !digit.is_zero() {
                pole_terms.push(PoleTerm {
                    d: *d,
                    k: e - j,
                    numerator: digit,
                });
            }
            rest = q;
        }
        if !rest.is_zero() {
            return Err(Error::Internal(
                "proper fraction numerator too large".into(),
            ));
        }
    }
    let poly_part = (&p - &covered)
        .exact_div(&den)
        .map_err(|e| Error::Internal(format!("partial fraction remainder not divisible: {e}")))?;
    let laurent_part = laurent_from_upoly(&poly_part).shift(&[-(s as i64)]);
    pole_terms.sort_by_key(|t| (t.d, t.k));
    Ok(UnivariatePfd {
        laurent_part,
        pole_terms,
    })
}

/// Rank-one character rebuilt directly from a table: `sum m(nu) q^nu`.
pub fn character_of_table(table: &crate::weightsys::MultiplicityTable) -> LaurentPoly {
    LaurentPoly::from_terms(
        table.rank(),
        table
            .entries()
            .iter()
            .map(|(w, &m)| (w.0.clone(), BigRational::from_integer(BigInt::from(m)))),
    )
}

impl CharacterPoly {
    /// `Char S^0 V = 1`.
    pub fn trivial(rank: usize) -> Self {
        CharacterPoly {
            poly: LaurentPoly::one(rank),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.poly.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfdcore::pfd_decompose;
    use crate::polyring::{int, rat};
    use crate::weightsys::weight_system;

    fn setup(s: &str, l: &[i64]) -> (RootSystem, ClosedCharacter) {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        let t = weight_system(&rs, &Weight(l.to_vec())).unwrap();
        (rs, pfd_decompose(&t).unwrap())
    }

    fn p1(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], int(c))))
    }

    #[test]
    fn sl2_adjoint_rows() {
        let (_, cc) = setup("A1", &[2]);
        assert_eq!(
            character_at(&cc, 2).unwrap().into_poly(),
            p1(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert_eq!(
            character_at(&cc, 4).unwrap().into_poly(),
            p1(&[
                (8, 1),
                (6, 1),
                (4, 2),
                (2, 2),
                (0, 3),
                (-2, 2),
                (-4, 2),
                (-6, 1),
                (-8, 1)
            ])
        );
    }

    #[test]
    fn n_zero_is_trivial() {
        for (s, l) in [("A1", vec![2]), ("A2", vec![1, 1]), ("B2", vec![1, 0])] {
            let (_, cc) = setup(s, &l);
            assert!(character_at(&cc, 0).unwrap().is_trivial());
        }
    }

    #[test]
    fn n_one_is_the_module() {
        for (s, l) in [("A1", vec![3]), ("A2", vec![1, 1]), ("G2", vec![1, 0])] {
            let (_, cc) = setup(s, &l);
            assert_eq!(
                character_at(&cc, 1).unwrap().into_poly(),
                character_of_table(cc.source())
            );
        }
    }

    #[test]
    fn multiplicities() {
        let (_, cc) = setup("A1", &[2]);
        let cp = character_at(&cc, 4).unwrap();
        assert_eq!(multiplicity_at(&cp, &Weight(vec![2])), BigInt::from(2));
        assert_eq!(multiplicity_at(&cp, &Weight(vec![0])), BigInt::from(3));
        assert_eq!(multiplicity_at(&cp, &Weight(vec![100])), BigInt::zero());
        assert_eq!(multiplicity_at(&cp, &Weight(vec![1])), BigInt::zero());
    }

    #[test]
    fn sl2_v3_orbit_summands() {
        let (rs, cc) = setup("A1", &[3]);
        let n = 4u64;
        let split = orbit_split(&cc, &rs, n).unwrap();
        assert_eq!(split.len(), 2);
        let by = |w: i64| {
            split
                .iter()
                .find(|s| s.dominant_weight.0 == vec![w])
                .unwrap()
        };
        let mono = |e: i64, c: i64| LaurentPoly::monomial(vec![e], int(c));
        let den1 = [(vec![4], vec![0], 1), (vec![2], vec![0], 2)];
        let f1 = FactoredRational::over_binomials(mono(6 + n as i64, -1), &den1)
            .unwrap()
            .add(&FactoredRational::over_binomials(mono(2 - n as i64, 1), &den1).unwrap())
            .unwrap();
        assert!(by(1).value.semantic_eq(&f1));
        let den3 = [
            (vec![6], vec![0], 1),
            (vec![4], vec![0], 1),
            (vec![2], vec![0], 1),
        ];
        let f3 = FactoredRational::over_binomials(mono(12 + 3 * n as i64, 1), &den3)
            .unwrap()
            .add(&FactoredRational::over_binomials(mono(-3 * n as i64, -1), &den3).unwrap())
            .unwrap();
        assert!(by(3).value.semantic_eq(&f3));
    }

    #[test]
    fn sl3_adjoint_has_two_summands() {
        let (rs, cc) = setup("A2", &[1, 1]);
        let split = orbit_split(&cc, &rs, 2).unwrap();
        let sizes: Vec<_> = split
            .iter()
            .map(|s| (s.dominant_weight.0.clone(), s.orbit_size))
            .collect();
        assert_eq!(sizes, vec![(vec![0, 0], 1), (vec![1, 1], 6)]);
        let total = FactoredRational::sum(2, split.into_iter().map(|s| s.value)).unwrap();
        assert_eq!(
            total.to_laurent().unwrap(),
            character_at(&cc, 2).unwrap().into_poly()
        );
    }

    #[test]
    fn sl2_v3_f14_decomposition() {
        let (rs, cc) = setup("A1", &[3]);
        let split = orbit_split(&cc, &rs, 4).unwrap();
        let f1 = &split
            .iter()
            .find(|s| s.dominant_weight.0 == vec![1])
            .unwrap()
            .value;
        let pfd = univariate_pfd(f1).unwrap();
        assert_eq!(pfd.laurent_part, p1(&[(2, -1), (0, -2), (-2, -1)]));
        let c = |d, k| pfd.pole_term(d, k).unwrap().numerator.coeffs().to_vec();
        assert_eq!(c(1, 2), vec![rat(-3, 4)]);
        assert_eq!(c(1, 1), vec![rat(-3, 4)]);
        assert_eq!(c(2, 1), vec![rat(3, 4)]);
        assert_eq!(c(2, 2), vec![rat(-3, 4)]);
        assert_eq!(pfd.pole_terms.len(), 4);
    }

    #[test]
    fn laurent_input_has_no_poles() {
        let f = FactoredRational::from_poly(p1(&[(3, 2), (-1, 1)]));
        let pfd = univariate_pfd(&f).unwrap();
        assert_eq!(pfd.laurent_part, p1(&[(3, 2), (-1, 1)]));
        assert!(pfd.pole_terms.is_empty());
        // a binomial denominator that cancels completely
        let g = FactoredRational::new(LaurentPoly::one(1).mul_one_minus(&[4]), [(vec![-2], 1)])
            .unwrap();
        let pfd = univariate_pfd(&g).unwrap();
        assert!(pfd.pole_terms.is_empty());
        assert_eq!(pfd.laurent_part, p1(&[(4, -1), (2, -1)]));
    }

    #[test]
    fn univariate_pfd_rejects_higher_rank() {
        assert!(univariate_pfd(&FactoredRational::one(2)).is_err());
    }

    #[test]
    fn reassembly_matches_evaluation() {
        let f = FactoredRational::new(
            p1(&[(5, 3), (-3, 1), (1, -2)]),
            [(vec![2], 2), (vec![-3], 1), (vec![6], 1)],
        )
        .unwrap();
        let pfd = univariate_pfd(&f).unwrap();
        for t in &pfd.pole_terms {
            assert!(t.numerator.degree().unwrap() < cyclotomic(t.d).degree().unwrap());
        }
        for x in [rat(2, 1), rat(-3, 2), rat(5, 7), rat(11, 3)] {
            assert_eq!(
                pfd.eval(&x).unwrap(),
                f.eval(std::slice::from_ref(&x)).unwrap()
            );
        }
    }
}
