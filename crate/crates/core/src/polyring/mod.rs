//! Exact Laurent polynomials in `q1, ..., qr` over the rationals, and rational
//! functions whose denominators are products of binomials `(1 - q^alpha)^k`.

mod factored;

pub use factored::FactoredRational;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of `Q[q1^{+-1}, ..., qr^{+-1}]`, stored as a sparse map from exponent
/// vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn monomial(exp: Vec<i64>, c: Rational) -> Self {
        let rank = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { rank, terms }
    }

    /// `q^exp` with coefficient 1.
    pub fn q(exp: &[i64]) -> Self {
        Self::monomial(exp.to_vec(), Rational::one())
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Self {
        let mut p = LaurentPoly::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent vector of wrong length");
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(rank: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(rank, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Vec<i64>, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn coeff(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term of `q^{-shift} * self`.
    pub fn constant_term_shifted(&self, shift: &[i64]) -> Rational {
        self.coeff(shift)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch(self.rank, other.rank))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut acc: std::collections::HashMap<Vec<i64>, Rational> =
            std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                acc.entry(e).and_modify(|v| *v += &c).or_insert(c);
            }
        }
        Ok(LaurentPoly {
            rank: self.rank,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplication by the monomial `q^exp`.
    pub fn shift(&self, exp: &[i64]) -> Self {
        assert_eq!(exp.len(), self.rank, "shift of wrong length");
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Adams operation `psi^k`: every exponent vector `e` becomes `k e`.
    pub fn adams(&self, k: i64) -> Self {
        assert!(k != 0, "psi^0 is not an Adams operation");
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * k).collect(), c.clone()))
                .collect(),
        }
    }

    /// `self * (1 - q^alpha)`.
    pub fn mul_one_minus(&self, alpha: &[i64]) -> Self {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(
                e.iter().zip(alpha).map(|(x, y)| x + y).collect(),
                -c.clone(),
            );
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Coordinatewise minimum of the exponents; zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.rank];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank {
            return Err(Error::RankMismatch(point.len(), self.rank));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * monomial_value(e, point)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both operands are shifted by their minimal exponent vectors into the
    /// polynomial ring and divided by leading-term elimination in graded
    /// lexicographic order. A nonzero remainder is reported as an error.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InvalidArgument(
                "division by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let ma = self.min_exponents();
        let mb = divisor.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();

        let mut work: BTreeMap<Grlex, Rational> = self
            .shift(&neg(&ma))
            .terms
            .into_iter()
            .map(|(e, c)| (Grlex(e), c))
            .collect();
        let b: Vec<(Vec<i64>, Rational)> = {
            let mut v: Vec<_> = divisor.shift(&neg(&mb)).terms.into_iter().collect();
            v.sort_by(|x, y| Grlex::cmp_slices(&y.0, &x.0));
            v
        };
        let (lead_exp, lead_coef) = (&b[0].0, &b[0].1);

        let mut quotient = LaurentPoly::zero(self.rank);
        let mut remainder = LaurentPoly::zero(self.rank);
        while let Some((Grlex(e), c)) = work.pop_last() {
            if e.iter().zip(lead_exp).all(|(x, y)| x >= y) {
                let t: Vec<i64> = e.iter().zip(lead_exp).map(|(x, y)| x - y).collect();
                let f = c / lead_coef;
                for (eb, cb) in &b[1..] {
                    let key = Grlex(eb.iter().zip(&t).map(|(x, y)| x + y).collect());
                    let delta = -(&f * cb);
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
                quotient.add_term(t, f);
            } else {
                remainder.add_term(e, c);
            }
        }
        if !remainder.is_zero() {
            return Err(Error::InexactDivision {
                remainder: remainder.shift(&ma).to_string(),
            });
        }
        let offset: Vec<i64> = ma.iter().zip(&mb).map(|(a, b)| a - b).collect();
        Ok(quotient.shift(&offset))
    }

    /// Renders with `q` for rank 1 and `q1`, `q2`, ... otherwise.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(e, names);
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) if abs.is_integer() => out.push_str(&format!("{abs}{mono}")),
                (false, false) => out.push_str(&format!("({abs}){mono}")),
            }
        }
        out
    }
}

pub(crate) fn variable_names(rank: usize) -> Vec<String> {
    if rank == 1 {
        vec!["q".into()]
    } else {
        (1..=rank).map(|i| format!("q{i}")).collect()
    }
}

fn render_monomial(e: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(x, _)| **x != 0)
        .map(|(x, n)| {
            if *x == 1 {
                n.clone()
            } else {
                format!("{n}^{x}")
            }
        })
        .collect();
    parts.join("·")
}

pub(crate) fn monomial_value(e: &[i64], point: &[Rational]) -> Result<Rational> {
    let mut v = Rational::one();
    for (x, p) in e.iter().zip(point) {
        if *x < 0 && p.is_zero() {
            return Err(Error::Pole { alpha: e.to_vec() });
        }
        v *= num_traits::pow::Pow::pow(p, *x as i32);
    }
    Ok(v)
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Grlex(Vec<i64>);

impl Grlex {
    fn cmp_slices(a: &[i64], b: &[i64]) -> Ordering {
        let da: i64 = a.iter().sum();
        let db: i64 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    }
}

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        Grlex::cmp_slices(&self.0, &other.0)
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&variable_names(self.rank)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.rank, self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [i64],
            coef: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term {
                exp: e,
                coef: c.to_string(),
            })?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly rank mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly rank mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
