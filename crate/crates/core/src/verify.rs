//! Cross-checks of the closed character against the oracles, as a flat report.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::charformula::{character_at, CharacterPoly};
use crate::error::Result;
use crate::oracle::{adams_symmetric_all, hsym_multiplicity_free, truncated_molien};
use crate::pfdcore::pfd_decompose;
use crate::polyring::{FactoredRational, LaurentPoly};
use crate::rootsys::{CartanType, RootSystem, Weight};
use crate::weightsys::weight_system;

/// `V(lambda)` of one algebra, checked for `N = 0..=N_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCase {
    pub algebra: CartanType,
    pub lambda: Weight,
    pub n_max: u64,
}

impl VerifyCase {
    pub fn new(algebra: CartanType, lambda: Weight, n_max: u64) -> Self {
        VerifyCase {
            algebra,
            lambda,
            n_max,
        }
    }

    pub fn name(&self) -> String {
        format!("{} V{}", self.algebra, self.lambda)
    }
}

/// The standard cases: `A1` with `m <= 4`, both small `A2` modules, and the
/// four-dimensional `B2` module.
pub fn default_suite() -> Vec<VerifyCase> {
    let ty = |s: &str| s.parse::<CartanType>().expect("valid type");
    let mut cases: Vec<VerifyCase> = (0..=4)
        .map(|m| VerifyCase::new(ty("A1"), Weight(vec![m]), 10))
        .collect();
    cases.push(VerifyCase::new(ty("A2"), Weight(vec![1, 0]), 8));
    cases.push(VerifyCase::new(ty("A2"), Weight(vec![1, 1]), 6));
    cases.push(VerifyCase::new(ty("B2"), Weight(vec![0, 1]), 4));
    cases
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One line of the report. `n` is absent for checks that do not depend on `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    pub case: String,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub check: &'static str,
    pub status: Status,
}

pub const CHAR_EQ_MOLIEN: &str = "character_at = truncated_molien";
pub const MOLIEN_EQ_ADAMS: &str = "truncated_molien = adams_symmetric";
pub const HSYM_EQ_ADAMS: &str = "hsym_multiplicity_free = adams_symmetric";
pub const DIMENSION: &str = "dimension";
pub const WEYL_INVARIANT: &str = "weyl_invariant";
pub const COEFFICIENT_SUM: &str = "sum of A = 1";

/// Runs every check on one case. Errors from the pipeline turn into failed
/// records; only invalid input (bad algebra or weight) is returned as `Err`.
pub fn verify_case(case: &VerifyCase) -> Result<Vec<VerifyRecord>> {
    let rs = RootSystem::new(case.algebra)?;
    let table = weight_system(&rs, &case.lambda)?;
    let name = case.name();
    let n_max = case.n_max as usize;
    let rank = rs.rank();

    let char_v = LaurentPoly::from_terms(
        rank,
        table
            .entries()
            .iter()
            .map(|(w, &m)| (w.0.clone(), BigRational::from_integer(m.into()))),
    );
    let molien = truncated_molien(&table, n_max).into_coefficients();
    let adams = adams_symmetric_all(&char_v, n_max).ok();
    let cc = pfd_decompose(&table);
    let support: Vec<Weight> = table.support().cloned().collect();
    let dim = table.dim();

    let mut records = vec![VerifyRecord {
        case: name.clone(),
        n: None,
        check: COEFFICIENT_SUM,
        status: Status::of(
            cc.as_ref()
                .ok()
                .and_then(|c| c.coefficient_sum().ok())
                .is_some_and(|s| s.semantic_eq(&FactoredRational::one(rank))),
        ),
    }];

    let per_n: Vec<Vec<VerifyRecord>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let record = |check, ok| VerifyRecord {
                case: name.clone(),
                n: Some(n as u64),
                check,
                status: Status::of(ok),
            };
            let cp: Option<CharacterPoly> = cc
                .as_ref()
                .ok()
                .and_then(|c| character_at(c, n as u64).ok());
            let adams_n = adams.as_ref().map(|h| &h[n]);
            let mut out = vec![
                record(
                    CHAR_EQ_MOLIEN,
                    cp.as_ref().is_some_and(|c| *c.poly() == molien[n]),
                ),
                record(MOLIEN_EQ_ADAMS, adams_n == Some(&molien[n])),
            ];
            if table.is_multiplicity_free() {
                let h = hsym_multiplicity_free(&support, n as u64).ok();
                out.push(record(HSYM_EQ_ADAMS, h.is_some() && h.as_ref() == adams_n));
            }
            let expect_dim = binomial(BigInt::from(dim + n as u64 - 1), BigInt::from(n));
            out.push(record(
                DIMENSION,
                cp.as_ref().is_some_and(|c| c.dimension() == expect_dim),
            ));
            out.push(record(
                WEYL_INVARIANT,
                cp.as_ref().is_some_and(|c| c.is_weyl_invariant(&rs)),
            ));
            out
        })
        .collect();
    records.extend(per_n.into_iter().flatten());
    Ok(records)
}

/// Runs all cases; records keep the order of `cases`.
pub fn verify_all(cases: &[VerifyCase]) -> Result<Vec<VerifyRecord>> {
    let per_case: Vec<Vec<VerifyRecord>> =
        cases.par_iter().map(verify_case).collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}

pub fn all_passed(records: &[VerifyRecord]) -> bool {
    records.iter().all(|r| r.status == Status::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(s: &str, l: &[i64], n: u64) -> VerifyCase {
        VerifyCase::new(s.parse().unwrap(), Weight(l.to_vec()), n)
    }

    #[test]
    fn small_cases_pass() {
        let recs = verify_case(&case("A1", &[2], 4)).unwrap();
        assert!(all_passed(&recs));
        // one case-level check, five per N for a multiplicity-free module
        assert_eq!(recs.len(), 1 + 5 * 5);
        let recs = verify_case(&case("A2", &[1, 1], 2)).unwrap();
        assert!(all_passed(&recs));
        assert_eq!(recs.len(), 1 + 4 * 3);
        let recs = verify_case(&case("A2", &[1, 0], 3)).unwrap();
        assert!(all_passed(&recs));
        assert!(recs.iter().any(|r| r.check == HSYM_EQ_ADAMS));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(verify_case(&case("A2", &[-1, 0], 2)).is_err());
        assert!(verify_case(&case("A2", &[1], 2)).is_err());
    }

    #[test]
    fn default_suite_shape() {
        let s = default_suite();
        assert_eq!(s.len(), 8);
        assert_eq!(s[6].name(), "A2 V(1,1)");
        assert_eq!(s[7].n_max, 4);
    }

    #[test]
    fn record_json() {
        let r = VerifyRecord {
            case: "A1 V(2)".into(),
            n: Some(3),
            check: DIMENSION,
            status: Status::Pass,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"case":"A1 V(2)","N":3,"check":"dimension","status":"pass"}"#
        );
    }
}
