//! Partial fraction decomposition of the Molien series in `z`.
//!
//! For a module with weight multiplicities `m`,
//!
//! ```text
//! prod_nu (1 - q^nu z)^{-m(nu)} = sum_nu sum_{k=1}^{m(nu)} A_{nu,k}(q) (1 - q^nu z)^{-k}
//! ```
//!
//! and expanding `(1 - q^nu z)^{-k} = sum_N p_k(N) q^{N nu} z^N` with
//! `p_k(N) = C(N+k-1, N)` gives `Char S^N V` for every `N` at once.
//!
//! The coefficient of the top pole at `mu` is `G(q^{-mu})` where
//! `G(z) = prod_{nu != mu} (1 - q^nu z)^{-m(nu)}`; the lower ones need the
//! derivatives `G^(l)(q^{-mu})`, which are obtained here from the logarithmic
//! derivative `S = G'/G` and Leibniz' rule,
//! `G^(l+1) = sum_j C(l, j) G^(j) S^(l-j)`, without ever forming a polynomial
//! in `z`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::{FactoredRational, LaurentPoly, Rational};
use crate::rootsys::Weight;
use crate::weightsys::MultiplicityTable;

/// `p_k(N) = C(N + k - 1, N)`, the coefficient of `z^N` in `(1 - z)^{-k}`.
pub fn binomial_poly(k: u32, n: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidArgument("p_k(N) needs k >= 1".into()));
    }
    Ok(binomial(n + k as u64 - 1, k as u64 - 1))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// One summand `A_{nu,k}(q) / (1 - q^nu z)^k`.
#[derive(Debug, Clone)]
pub struct PfdTerm {
    pub weight: Weight,
    pub order: u32,
    pub coeff: FactoredRational,
}

impl Serialize for PfdTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PfdTerm", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("A", &self.coeff)?;
        st.end()
    }
}

/// All `A_{nu,k}` of one module, ordered by weight and then by `k`.
#[derive(Debug, Clone)]
pub struct ClosedCharacter {
    source: MultiplicityTable,
    terms: Vec<PfdTerm>,
}

impl ClosedCharacter {
    pub fn source(&self) -> &MultiplicityTable {
        &self.source
    }

    pub fn terms(&self) -> &[PfdTerm] {
        &self.terms
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    pub fn terms_at<'a>(&'a self, nu: &Weight) -> impl Iterator<Item = &'a PfdTerm> + 'a {
        let nu = nu.clone();
        self.terms.iter().filter(move |t| t.weight == nu)
    }

    /// `sum A_{nu,k}`, which must equal 1 (the case `N = 0`).
    pub fn coefficient_sum(&self) -> Result<FactoredRational> {
        FactoredRational::sum(self.rank(), self.terms.iter().map(|t| t.coeff.clone()))
    }

    /// `sum_k A_{nu,k}(q) p_k(N)` times `q^{N nu}`, the part of
    /// `Char S^N V` contributed by the pole at `nu`.
    pub fn weight_contribution(&self, nu: &Weight, n: u64) -> Result<FactoredRational> {
        let shift: Vec<i64> = nu.coords().iter().map(|c| c * n as i64).collect();
        let parts = self
            .terms_at(nu)
            .map(|t| {
                let p = BigRational::from_integer(binomial_poly(t.order, n)?);
                Ok(t.coeff.scale(&p).shift(&shift))
            })
            .collect::<Result<Vec<_>>>()?;
        FactoredRational::sum(self.rank(), parts)
    }
}

impl Serialize for ClosedCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

/// Computes every `A_{mu,k}` of the table, target weights in parallel.
pub fn pfd_decompose(table: &MultiplicityTable) -> Result<ClosedCharacter> {
    if table.is_empty() {
        return Err(Error::InvalidArgument("empty multiplicity table".into()));
    }
    let entries: Vec<(&Weight, u64)> = table.entries().iter().map(|(w, &m)| (w, m)).collect();
    let per_weight: Vec<Vec<PfdTerm>> = entries
        .par_iter()
        .map(|&(mu, m)| coefficients_at(&entries, mu, m))
        .collect::<Result<_>>()?;
    Ok(ClosedCharacter {
        source: table.clone(),
        terms: per_weight.into_iter().flatten().collect(),
    })
}

fn coefficients_at(entries: &[(&Weight, u64)], mu: &Weight, m: u64) -> Result<Vec<PfdTerm>> {
    let rank = mu.rank();
    // (nu - mu, m(nu)) for nu != mu; distinct because the support is a set
    let others: Vec<(Vec<i64>, u64, &Weight)> = entries
        .iter()
        .filter(|(nu, _)| *nu != mu)
        .map(|&(nu, mnu)| ((nu - mu).0, mnu, nu))
        .collect();
    if others.iter().any(|(d, _, _)| d.iter().all(|&x| x == 0)) {
        return Err(Error::Internal(format!("duplicate support weight {mu}")));
    }
    let diffs: BTreeSet<Vec<i64>> = others.iter().map(|(d, _, _)| d.clone()).collect();

    let g0 = FactoredRational::new(
        LaurentPoly::one(rank),
        others.iter().map(|(d, k, _)| (d.clone(), *k as u32)),
    )?;
    let depth = m as usize;

    // S^(j)(q^{-mu}) = sum_nu m(nu) j! q^{(j+1) nu} / (1 - q^{nu - mu})^{j+1}
    let log_derivs: Vec<FactoredRational> = (0..depth.saturating_sub(1))
        .map(|j| {
            let jf = BigRational::from_integer(factorial(j as u64));
            let parts = others.iter().map(|(d, mnu, nu)| {
                let c = &jf * BigRational::from_integer(BigInt::from(*mnu));
                let num = LaurentPoly::monomial(nu.scale(j as i64 + 1).0, c);
                FactoredRational::new(num, [(d.clone(), j as u32 + 1)])
            });
            let parts = parts.collect::<Result<Vec<_>>>()?;
            FactoredRational::sum(rank, parts)
        })
        .collect::<Result<_>>()?;

    let mut derivs = vec![g0];
    for l in 0..depth.saturating_sub(1) {
        let parts = (0..=l)
            .map(|j| {
                let c = BigRational::from_integer(crate::pfdcore::binomial(l as u64, j as u64));
                Ok(derivs[j].mul(&log_derivs[l - j])?.scale(&c))
            })
            .collect::<Result<Vec<_>>>()?;
        derivs.push(FactoredRational::sum(rank, parts)?);
    }

    // A_{mu, m-l} = (-1)^l / l! * q^{-l mu} * G^(l)(q^{-mu})
    let mut terms = Vec::with_capacity(depth);
    for (l, g) in derivs.iter().enumerate() {
        let mut c = Rational::one() / BigRational::from_integer(factorial(l as u64));
        if l % 2 == 1 {
            c = -c;
        }
        let shift = mu.scale(-(l as i64));
        let mut coeff = g.scale(&c).shift(&shift.0);
        if l > 0 {
            coeff = coeff.reduce();
        }
        let coeff = coeff.reorient(|a| diffs.contains(a));
        if coeff.denominator().keys().any(|a| !diffs.contains(a)) {
            return Err(Error::Internal(format!(
                "coefficient at {mu} has a factor outside the support differences"
            )));
        }
        terms.push(PfdTerm {
            weight: mu.clone(),
            order: (m - l as u64) as u32,
            coeff,
        });
    }
    terms.reverse();
    Ok(terms)
}

/// `A_{m-2i,1}` for `V(m)` of `sl2`:
/// `(-1)^i q^{(m-i)(m-i+1)} prod_{j != i} 1 / (q^{2|i-j|} - 1)`.
pub fn coeff_closed_form_sl2(m: u32, i: u32) -> Result<FactoredRational> {
    if i > m {
        return Err(Error::InvalidArgument(format!("i = {i} outside 0..={m}")));
    }
    let (m, i) = (m as i64, i as i64);
    let sign = if i % 2 == 0 { 1 } else { -1 };
    let num = LaurentPoly::monomial(vec![(m - i) * (m - i + 1)], crate::polyring::int(sign));
    let binomials: Vec<_> = (0..=m)
        .filter(|&j| j != i)
        .map(|j| (vec![2 * (i - j).abs()], vec![0], 1))
        .collect();
    FactoredRational::over_binomials(num, &binomials)
}

/// `A_{-w_i + w_{i+1}, 1}` for the defining module `V(w_1)` of `sl(r+1)`:
/// `q_{i+1}^r prod_{j != i} q_j / (q_j q_{i+1} - q_{j+1} q_i)`, with
/// `q_0 = q_{r+1} = 1`.
pub fn coeff_closed_form_fundamental(r: usize, i: usize) -> Result<FactoredRational> {
    if r == 0 || i > r {
        return Err(Error::InvalidArgument(format!("i = {i} outside 0..={r}")));
    }
    // exponent vector of q_j, with the boundary variables equal to 1
    let e = |j: usize| -> Vec<i64> {
        let mut v = vec![0i64; r];
        if (1..=r).contains(&j) {
            v[j - 1] = 1;
        }
        v
    };
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut num_exp: Vec<i64> = e(i + 1).iter().map(|x| x * r as i64).collect();
    let mut binomials = Vec::with_capacity(r);
    for j in (0..=r).filter(|&j| j != i) {
        num_exp = add(&num_exp, &e(j));
        binomials.push((add(&e(j), &e(i + 1)), add(&e(j + 1), &e(i)), 1));
    }
    FactoredRational::over_binomials(LaurentPoly::monomial(num_exp, Rational::one()), &binomials)
}
