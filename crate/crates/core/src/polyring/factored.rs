use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{monomial_value, variable_names, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// `numerator / prod (1 - q^alpha)^k` with every `alpha` nonzero.
///
/// The representation is not canonical: the same function can carry `1 - q^alpha`
/// or `1 - q^{-alpha}` factors, and common factors are only cancelled on request.
/// Use [`semantic_eq`](Self::semantic_eq) for equality of functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRational {
    num: LaurentPoly,
    den: BTreeMap<Vec<i64>, u32>,
}

fn is_positive_direction(alpha: &[i64]) -> bool {
    alpha.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

impl FactoredRational {
    pub fn new(
        num: LaurentPoly,
        factors: impl IntoIterator<Item = (Vec<i64>, u32)>,
    ) -> Result<Self> {
        let rank = num.rank();
        let mut den = BTreeMap::new();
        for (alpha, k) in factors {
            if alpha.len() != rank {
                return Err(Error::RankMismatch(alpha.len(), rank));
            }
            if alpha.iter().all(|&x| x == 0) {
                return Err(Error::InvalidArgument(
                    "denominator factor 1 - q^0 is identically zero".into(),
                ));
            }
            if k > 0 {
                *den.entry(alpha).or_insert(0) += k;
            }
        }
        Ok(FactoredRational { num, den })
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        FactoredRational {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    /// `num / prod (q^a - q^b)^k`, rewriting each binomial as
    /// `q^a (1 - q^{b-a})`.
    pub fn over_binomials(
        num: LaurentPoly,
        binomials: &[(Vec<i64>, Vec<i64>, u32)],
    ) -> Result<Self> {
        let rank = num.rank();
        let mut unit = vec![0i64; rank];
        let mut factors = Vec::new();
        for (a, b, k) in binomials {
            if a.len() != rank || b.len() != rank {
                return Err(Error::RankMismatch(a.len(), rank));
            }
            for (u, x) in unit.iter_mut().zip(a) {
                *u -= x * *k as i64;
            }
            factors.push((b.iter().zip(a).map(|(y, x)| y - x).collect(), *k));
        }
        Self::new(num.shift(&unit), factors)
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<Vec<i64>, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn expanded_denominator(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one(self.rank());
        for (alpha, &k) in &self.den {
            for _ in 0..k {
                d = d.mul_one_minus(alpha);
            }
        }
        d
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            Err(Error::RankMismatch(self.rank(), other.rank()))
        } else {
            Ok(())
        }
    }

    pub fn neg(&self) -> Self {
        FactoredRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FactoredRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplication by `q^exp`.
    pub fn shift(&self, exp: &[i64]) -> Self {
        FactoredRational {
            num: self.num.shift(exp),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        FactoredRational {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    /// Field product; denominator factors are merged without cancellation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut den = self.den.clone();
        for (alpha, k) in &other.den {
            *den.entry(alpha.clone()).or_insert(0) += k;
        }
        Ok(FactoredRational {
            num: self.num.checked_mul(&other.num)?,
            den,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Self::sum(self.rank(), [self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Every factor turned to point in a fixed half-space (first nonzero
    /// coordinate positive), the unit `-q^alpha` moving into the numerator.
    pub fn normalized(&self) -> Self {
        self.reorient(is_positive_direction)
    }

    /// Flips every factor `1 - q^alpha` with `!keep(alpha)` to `1 - q^{-alpha}`.
    ///
    /// `1/(1 - q^alpha)^k = (-1)^k q^{-k alpha} / (1 - q^{-alpha})^k`
    pub fn reorient(&self, keep: impl Fn(&[i64]) -> bool) -> Self {
        let rank = self.rank();
        let mut unit = vec![0i64; rank];
        let mut sign_flips = 0u32;
        let mut den = BTreeMap::new();
        for (alpha, &k) in &self.den {
            if keep(alpha) {
                *den.entry(alpha.clone()).or_insert(0) += k;
            } else {
                for (u, a) in unit.iter_mut().zip(alpha) {
                    *u -= a * k as i64;
                }
                sign_flips += k;
                *den.entry(alpha.iter().map(|x| -x).collect()).or_insert(0) += k;
            }
        }
        let mut num = self.num.shift(&unit);
        if sign_flips % 2 == 1 {
            num = -num;
        }
        FactoredRational { num, den }
    }

    /// Sum over the least common multiple of the (normalized) denominators.
    pub fn sum(rank: usize, items: impl IntoIterator<Item = Self>) -> Result<Self> {
        let items: Vec<Self> = items
            .into_iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.normalized())
            .collect();
        if let Some(bad) = items.iter().find(|f| f.rank() != rank) {
            return Err(Error::RankMismatch(bad.rank(), rank));
        }
        let mut lcm: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        for f in &items {
            for (alpha, &k) in &f.den {
                let e = lcm.entry(alpha.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let num = items
            .par_iter()
            .map(|f| {
                let mut n = f.num.clone();
                for (alpha, &k) in &lcm {
                    for _ in f.den.get(alpha).copied().unwrap_or(0)..k {
                        n = n.mul_one_minus(alpha);
                    }
                }
                n
            })
            .reduce(|| LaurentPoly::zero(rank), |a, b| &a + &b);
        Ok(FactoredRational { num, den: lcm })
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        if num.is_zero() {
            return FactoredRational { num, den };
        }
        for (alpha, &k) in &self.den {
            let divisor = LaurentPoly::one(self.rank()).mul_one_minus(alpha);
            let mut left = k;
            while left > 0 {
                match num.exact_div(&divisor) {
                    Ok(q) => {
                        num = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                den.insert(alpha.clone(), left);
            }
        }
        FactoredRational { num, den }
    }

    /// Equality as rational functions, decided by cross-multiplication after
    /// cancelling the factors the two denominators share.
    pub fn semantic_eq(&self, other: &Self) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let a = self.normalized();
        let b = other.normalized();
        let mut da = a.den.clone();
        let mut db = b.den.clone();
        for (alpha, ka) in da.iter_mut() {
            if let Some(kb) = db.get_mut(alpha) {
                let m = (*ka).min(*kb);
                *ka -= m;
                *kb -= m;
            }
        }
        let lhs = FactoredRational::new(b.num.clone(), da).map(|f| f.expanded_denominator());
        let rhs = FactoredRational::new(a.num.clone(), db).map(|f| f.expanded_denominator());
        match (lhs, rhs) {
            (Ok(lhs), Ok(rhs)) => &a.num * &rhs == &b.num * &lhs,
            _ => false,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank() {
            return Err(Error::RankMismatch(point.len(), self.rank()));
        }
        let mut den = Rational::one();
        for (alpha, &k) in &self.den {
            let v = Rational::one() - monomial_value(alpha, point)?;
            if v.is_zero() {
                return Err(Error::Pole {
                    alpha: alpha.clone(),
                });
            }
            den *= num_traits::pow::Pow::pow(&v, k);
        }
        Ok(self.num.eval(point)? / den)
    }

    /// The Laurent polynomial this function equals, if it is one.
    ///
    /// The numerator is divided exactly by one binomial factor at a time; a
    /// remainder means the function has a genuine pole.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let mut num = self.num.clone();
        for (alpha, &k) in &self.den {
            let divisor = LaurentPoly::one(self.rank()).mul_one_minus(alpha);
            for _ in 0..k {
                num = num.exact_div(&divisor)?;
            }
        }
        Ok(num)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let num = self.num.display_with(names);
        if self.den.is_empty() {
            return num;
        }
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(alpha, &k)| {
                let s = format!("(1 - {})", super::render_monomial(alpha, names));
                if k == 1 {
                    s
                } else {
                    format!("{s}^{k}")
                }
            })
            .collect();
        if self.num.len() == 1 {
            format!("{num} / ({})", factors.join("·"))
        } else {
            format!("({num}) / ({})", factors.join("·"))
        }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&variable_names(self.rank())))
    }
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            alpha: &'a [i64],
            power: u32,
        }
        let den: Vec<Factor> = self
            .den
            .iter()
            .map(|(alpha, &power)| Factor { alpha, power })
            .collect();
        let mut st = s.serialize_struct("FactoredRational", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &den)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    fn q1(e: i64) -> Vec<i64> {
        vec![e]
    }

    fn mono(e: i64, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(vec![e], int(c))
    }

    /// `c q^e / prod (q^{a_i} - 1)`
    fn over_q_minus_one(e: i64, c: i64, exps: &[i64]) -> FactoredRational {
        let b: Vec<_> = exps.iter().map(|&a| (q1(a), q1(0), 1)).collect();
        FactoredRational::over_binomials(mono(e, c), &b).unwrap()
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let f = over_q_minus_one(2, 1, &[2, 2]);
        assert!(f.add(&FactoredRational::zero(1)).unwrap().semantic_eq(&f));
        let g = over_q_minus_one(2, -1, &[2, 2]);
        assert!(f.add(&g).unwrap().is_zero());
    }

    #[test]
    fn sl2_adjoint_coefficients_sum_to_one() {
        let a = over_q_minus_one(6, 1, &[4, 2]);
        let b = over_q_minus_one(2, -1, &[2, 2]);
        let c = over_q_minus_one(0, 1, &[4, 2]);
        let s = FactoredRational::sum(1, [a, b, c]).unwrap();
        assert!(s.semantic_eq(&FactoredRational::one(1)));
        assert!(s.to_laurent().unwrap().is_one());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = over_q_minus_one(0, 1, &[4, 2]);
        assert_eq!(f.eval(&[int(2)]).unwrap(), rat(1, 45));
        let g = over_q_minus_one(2, 1, &[2, 2]);
        assert_eq!(g.eval(&[int(3)]).unwrap(), rat(9, 64));
        assert!(matches!(f.eval(&[int(1)]), Err(Error::Pole { .. })));
        assert!(matches!(f.eval(&[int(-1)]), Err(Error::Pole { .. })));
    }

    #[test]
    fn zero_direction_rejected() {
        assert!(FactoredRational::new(LaurentPoly::one(2), [(vec![0, 0], 1)]).is_err());
        assert!(FactoredRational::new(LaurentPoly::one(2), [(vec![1], 1)]).is_err());
    }

    #[test]
    fn normalization_preserves_value() {
        let f = FactoredRational::new(mono(3, 2), [(q1(-2), 2), (q1(3), 1)]).unwrap();
        let g = f.normalized();
        assert!(g.denominator().keys().all(|a| a[0] > 0));
        for p in [int(2), int(-3), rat(1, 2), rat(5, 7)] {
            assert_eq!(
                f.eval(std::slice::from_ref(&p)).unwrap(),
                g.eval(&[p]).unwrap()
            );
        }
        assert!(f.semantic_eq(&g));
    }

    #[test]
    fn reduce_cancels() {
        // (1 - q^4) / ((1 - q^2)(1 - q^3)) = (1 + q^2) / (1 - q^3)
        let num = LaurentPoly::one(1).mul_one_minus(&[4]);
        let f = FactoredRational::new(num, [(q1(2), 1), (q1(3), 1)]).unwrap();
        let r = f.reduce();
        assert_eq!(r.denominator().len(), 1);
        assert!(r.semantic_eq(&f));
    }

    #[test]
    fn to_laurent_detects_poles() {
        let f = over_q_minus_one(0, 1, &[2]);
        assert!(matches!(f.to_laurent(), Err(Error::InexactDivision { .. })));
    }

    #[test]
    fn json_shape() {
        let f = FactoredRational::new(mono(2, -1), [(q1(2), 2)]).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"num":[{"exp":[2],"coef":"-1"}],"den":[{"alpha":[2],"power":2}]}"#
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fr() -> impl Strategy<Value = FactoredRational> {
            (
                prop::collection::vec((prop::collection::vec(-3i64..=3, 2), -5i64..=5), 1..4),
                prop::collection::vec((prop::collection::vec(-2i64..=2, 2), 1u32..=2), 0..3),
            )
                .prop_map(|(terms, den)| {
                    let num =
                        LaurentPoly::from_terms(2, terms.into_iter().map(|(e, c)| (e, int(c))));
                    let den = den.into_iter().filter(|(a, _)| a.iter().any(|&x| x != 0));
                    FactoredRational::new(num, den).unwrap()
                })
        }

        fn points() -> Vec<Vec<Rational>> {
            let vals = [rat(2, 3), rat(-5, 2), rat(7, 3), rat(3, 11), rat(-4, 5)];
            let mut out = Vec::new();
            for (i, a) in vals.iter().enumerate() {
                for b in vals.iter().skip(i % 2) {
                    out.push(vec![a.clone(), b.clone()]);
                }
            }
            out.truncate(20);
            out
        }

        fn pole_free(fs: &[&FactoredRational], p: &[Rational]) -> bool {
            fs.iter().all(|f| f.eval(p).is_ok())
        }

        proptest! {
            #[test]
            fn arithmetic_agrees_with_evaluation(f in fr(), g in fr()) {
                let sum = f.add(&g).unwrap();
                let prod = f.mul(&g).unwrap();
                for p in points() {
                    if !pole_free(&[&f, &g, &sum, &prod], &p) { continue; }
                    let (fv, gv) = (f.eval(&p).unwrap(), g.eval(&p).unwrap());
                    prop_assert_eq!(sum.eval(&p).unwrap(), &fv + &gv);
                    prop_assert_eq!(prod.eval(&p).unwrap(), fv * gv);
                }
            }

            #[test]
            fn semantic_eq_agrees_with_evaluation(f in fr(), g in fr()) {
                prop_assert!(f.semantic_eq(&f));
                prop_assert!(f.normalized().semantic_eq(&f));
                prop_assert_eq!(f.semantic_eq(&g), g.semantic_eq(&f));
                let eq = f.semantic_eq(&g);
                let mut all_equal = true;
                for p in points() {
                    if !pole_free(&[&f, &g], &p) { continue; }
                    if f.eval(&p).unwrap() != g.eval(&p).unwrap() { all_equal = false; }
                }
                if eq { prop_assert!(all_equal); }
                if !all_equal { prop_assert!(!eq); }
            }
        }
    }
}
