//! Dense univariate polynomials over the rationals, just enough for partial
//! fractions over cyclotomic factors.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::Rational;

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// `q^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = -Rational::one();
        c[n] = Rational::one();
        UPoly(c)
    }

    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        UPoly(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(UPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let (dd, dl) = match (d.degree(), d.lead()) {
            (Some(dd), Some(dl)) => (dd, dl.clone()),
            _ => return Err(Error::InvalidArgument("polynomial division by zero".into())),
        };
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn exact_div(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                remainder: format!(
                    "{:?}",
                    r.0.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                ),
            });
        }
        Ok(q)
    }

    /// Inverse of `self` modulo `m`, which must be coprime to it.
    pub fn inverse_mod(&self, m: &UPoly) -> Result<UPoly> {
        // extended Euclid tracking only the coefficient of `self`
        let (mut r0, mut r1) = (m.clone(), self.rem(m)?);
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return Err(Error::Internal("inverse_mod: operands not coprime".into()));
        }
        let c = Rational::one() / &r0.0[0];
        s0.scale(&c).rem(m)
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - rhs.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Phi_n(q) = (q^n - 1) / prod_{d | n, d < n} Phi_d(q)`
pub fn cyclotomic(n: usize) -> UPoly {
    assert!(n > 0, "cyclotomic index must be positive");
    let mut p = UPoly::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        p = p.exact_div(&cyclotomic(d)).expect("Phi_d divides q^n - 1");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), up(&[-1, 1]));
        assert_eq!(cyclotomic(2), up(&[1, 1]));
        assert_eq!(cyclotomic(3), up(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), up(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), up(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), up(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors() {
        for n in 1..=12 {
            let p = divisors(n)
                .iter()
                .fold(UPoly::one(), |acc, &d| &acc * &cyclotomic(d));
            assert_eq!(p, UPoly::x_pow_minus_one(n));
        }
    }

    #[test]
    fn division_and_inverse() {
        let (q, r) = up(&[1, 0, 1]).div_rem(&up(&[-1, 1])).unwrap();
        assert_eq!(q, up(&[1, 1]));
        assert_eq!(r, up(&[2]));
        let m = cyclotomic(4).pow(2);
        let a = up(&[3, 1, 0, 2]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m).unwrap(), UPoly::one());
        assert!(up(&[-1, 1]).inverse_mod(&up(&[-1, 0, 1])).is_err());
    }
}
