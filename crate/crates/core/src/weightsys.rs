//! Weight multiplicities of irreducible modules via the Freudenthal recursion.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// The multiplicity function `m_lambda` of `V(lambda)`, restricted to its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    highest_weight: Weight,
    entries: BTreeMap<Weight, u64>,
}

impl MultiplicityTable {
    /// Builds a table from raw entries, dropping zero multiplicities.
    ///
    /// No representation-theoretic invariant is checked; use
    /// [`check_invariants`](Self::check_invariants) for that.
    pub fn from_entries(
        highest_weight: Weight,
        entries: impl IntoIterator<Item = (Weight, u64)>,
    ) -> Self {
        let entries = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        MultiplicityTable {
            highest_weight,
            entries,
        }
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn rank(&self) -> usize {
        self.highest_weight.rank()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn get(&self, mu: &Weight) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `dim V = sum of all multiplicities`.
    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    /// Every weight repeated by its multiplicity, in lexicographic order.
    pub fn weights_with_repetition(&self) -> Vec<Weight> {
        self.entries
            .iter()
            .flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }

    /// Checks highest-weight normalization, Weyl invariance, dominance and
    /// the Weyl dimension formula.
    pub fn check_invariants(&self, rs: &RootSystem) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        if self.get(&self.highest_weight) != 1 {
            return fail(format!("m({}) != 1", self.highest_weight));
        }
        for (mu, &m) in &self.entries {
            for i in 1..=rs.rank() {
                let img = rs.weyl_reflect(i, mu)?;
                if self.get(&img) != m {
                    return fail(format!(
                        "m({mu}) = {m} but m(s{i} {mu}) = {}",
                        self.get(&img)
                    ));
                }
            }
            let dom = rs.dominant_representative(mu);
            match rs.simple_root_expansion(&(&self.highest_weight - &dom)) {
                Some(n) if n.iter().all(|&x| x >= 0) => {}
                _ => return fail(format!("{dom} is not below {}", self.highest_weight)),
            }
        }
        let dim = dim_irrep(rs, &self.highest_weight)?;
        if dim != self.dim() as u128 {
            return fail(format!(
                "sum of multiplicities {} != Weyl dimension {dim}",
                self.dim()
            ));
        }
        Ok(())
    }
}

impl Serialize for MultiplicityTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            weight: &'a Weight,
            mult: u64,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (weight, &mult) in &self.entries {
            seq.serialize_element(&Entry { weight, mult })?;
        }
        seq.end()
    }
}

fn require_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if lambda.rank() != rs.rank() {
        return Err(Error::RankMismatch(lambda.rank(), rs.rank()));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    Ok(())
}

/// Complete multiplicity table of `V(lambda)`.
///
/// Weights are visited level by level (height of `lambda - mu`), each level in
/// lexicographic order. Only dominant weights go through Freudenthal; the rest
/// copy the multiplicity of their dominant representative, which always sits on
/// an earlier level.
pub fn weight_system(rs: &RootSystem, lambda: &Weight) -> Result<MultiplicityTable> {
    require_dominant(rs, lambda)?;
    let rho = rs.rho();
    let lr = lambda + rho;
    let top = rs.inner_scaled(&lr, &lr) as i128;
    let heights: Vec<i64> = rs
        .positive_roots_in_simple_basis()
        .iter()
        .map(|b| b.iter().sum())
        .collect();

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    let mut depth = 0i64;

    while !level.is_empty() {
        depth += 1;
        let candidates: BTreeSet<Weight> = level
            .iter()
            .flat_map(|mu| (0..rs.rank()).map(move |i| mu - &rs.simple_root(i)))
            .collect();
        let mut next = BTreeSet::new();
        for mu in candidates {
            let dom = rs.dominant_representative(&mu);
            let m = if dom != mu {
                mult.get(&dom).copied().unwrap_or(0)
            } else {
                freudenthal_step(rs, &mult, &mu, depth, &heights, top)?
            };
            if m > 0 {
                mult.insert(mu.clone(), m);
                next.insert(mu);
            }
        }
        level = next;
    }

    Ok(MultiplicityTable {
        highest_weight: lambda.clone(),
        entries: mult,
    })
}

fn freudenthal_step(
    rs: &RootSystem,
    mult: &BTreeMap<Weight, u64>,
    mu: &Weight,
    depth: i64,
    heights: &[i64],
    top: i128,
) -> Result<u64> {
    let mr = mu + rs.rho();
    let denom = top - rs.inner_scaled(&mr, &mr) as i128;
    let mut numer: i128 = 0;
    for (alpha, &h) in rs.positive_roots().iter().zip(heights) {
        let mut shifted = mu.clone();
        let mut k = 1;
        while k * h <= depth {
            shifted = &shifted + alpha;
            let m = mult
                .get(&rs.dominant_representative(&shifted))
                .copied()
                .unwrap_or(0);
            if m > 0 {
                numer += m as i128 * rs.inner_scaled(&shifted, alpha) as i128;
            }
            k += 1;
        }
    }
    numer *= 2;
    if denom == 0 {
        if numer == 0 {
            return Ok(0);
        }
        return Err(Error::Internal(format!(
            "Freudenthal denominator vanishes at {mu} below the highest weight"
        )));
    }
    if numer % denom != 0 || (numer / denom) < 0 {
        return Err(Error::Internal(format!(
            "Freudenthal produced non-integral multiplicity {numer}/{denom} at {mu}"
        )));
    }
    Ok((numer / denom) as u64)
}

/// `dim V(lambda)` by the Weyl dimension formula.
pub fn dim_irrep(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    require_dominant(rs, lambda)?;
    let lr = lambda + rs.rho();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in rs.positive_roots() {
        num *= rs.inner_scaled(&lr, alpha);
        den *= rs.inner_scaled(rs.rho(), alpha);
    }
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::Internal(
            "Weyl dimension formula not integral".into(),
        ));
    }
    (num / den)
        .to_u128()
        .ok_or_else(|| Error::Internal("dimension overflows u128".into()))
}
