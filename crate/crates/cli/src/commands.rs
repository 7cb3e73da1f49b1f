use std::fmt::Write as _;

use serde::Serialize;
use symchar::charformula::{univariate_pfd, OrbitSummand, UnivariatePfd};
use symchar::verify::{all_passed, default_suite, verify_all, VerifyCase, VerifyRecord};
use symchar::vpart::check_partition_equivalence;
use symchar::{
    character_at, multiplicity_at, orbit_split, pfd_decompose, weight_system, MultiplicityTable,
    Result, RootSystem, Weight,
};

use crate::{Format, Module};

pub struct Output {
    pub text: String,
    /// False when a check failed; the process then exits with status 2.
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    algebra: String,
    lambda: &'a Weight,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(m: &Module, body: T) -> String {
    let report = Report {
        algebra: m.algebra.to_string(),
        lambda: &m.lambda,
        body,
    };
    serde_json::to_string_pretty(&report).expect("reports serialize")
}

fn load(m: &Module) -> Result<(RootSystem, MultiplicityTable)> {
    let rs = RootSystem::new(m.algebra)?;
    let table = weight_system(&rs, &m.lambda)?;
    Ok((rs, table))
}

fn header(m: &Module) -> String {
    format!("{} V{}", m.algebra, m.lambda)
}

pub fn weights(m: &Module, format: Format) -> Result<Output> {
    let (_, table) = load(m)?;
    Ok(Output::ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                dim: u64,
                weights: &'a MultiplicityTable,
            }
            json(
                m,
                Body {
                    dim: table.dim(),
                    weights: &table,
                },
            )
        }
        Format::Text => {
            let mut s = format!("{}, dim {}\n", header(m), table.dim());
            for (w, mult) in table.entries() {
                writeln!(s, "{w}\t{mult}").unwrap();
            }
            s.trim_end().to_string()
        }
    }))
}

pub fn pfd(m: &Module, format: Format) -> Result<Output> {
    let (_, table) = load(m)?;
    let cc = pfd_decompose(&table)?;
    Ok(Output::ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a, T: Serialize> {
                terms: &'a T,
            }
            json(m, Body { terms: &cc })
        }
        Format::Text => {
            let mut s = header(m);
            for t in cc.terms() {
                write!(s, "\nA[{},{}] = {}", t.weight, t.order, t.coeff).unwrap();
            }
            s
        }
    }))
}

pub fn character(m: &Module, n: u64, format: Format) -> Result<Output> {
    let (_, table) = load(m)?;
    let cp = character_at(&pfd_decompose(&table)?, n)?;
    Ok(Output::ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a, T: Serialize> {
                #[serde(rename = "N")]
                n: u64,
                dim: String,
                character: &'a T,
            }
            json(
                m,
                Body {
                    n,
                    dim: cp.dimension().to_string(),
                    character: &cp,
                },
            )
        }
        Format::Text => cp.to_string(),
    }))
}

pub fn mult(m: &Module, n: u64, mu: &Weight, format: Format) -> Result<Output> {
    let (_, table) = load(m)?;
    if mu.rank() != table.rank() {
        return Err(symchar::Error::RankMismatch(table.rank(), mu.rank()));
    }
    let cp = character_at(&pfd_decompose(&table)?, n)?;
    let value = multiplicity_at(&cp, mu);
    Ok(Output::ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                #[serde(rename = "N")]
                n: u64,
                mu: &'a Weight,
                multiplicity: serde_json::Value,
            }
            let multiplicity = match u64::try_from(&value) {
                Ok(v) => v.into(),
                Err(_) => value.to_string().into(),
            };
            json(
                m,
                Body {
                    n,
                    mu,
                    multiplicity,
                },
            )
        }
        Format::Text => value.to_string(),
    }))
}

pub fn orbits(m: &Module, n: u64, format: Format) -> Result<Output> {
    let (rs, table) = load(m)?;
    let split = orbit_split(&pfd_decompose(&table)?, &rs, n)?;
    let pfds: Vec<Option<UnivariatePfd>> = if rs.rank() == 1 {
        split
            .iter()
            .map(|s| univariate_pfd(&s.value).map(Some))
            .collect::<Result<_>>()?
    } else {
        vec![None; split.len()]
    };
    Ok(Output::ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Summand<'a> {
                #[serde(flatten)]
                summand: &'a OrbitSummand,
                #[serde(skip_serializing_if = "Option::is_none")]
                pfd: &'a Option<UnivariatePfd>,
            }
            #[derive(Serialize)]
            struct Body<'a> {
                #[serde(rename = "N")]
                n: u64,
                summands: Vec<Summand<'a>>,
            }
            let summands = split
                .iter()
                .zip(&pfds)
                .map(|(summand, pfd)| Summand { summand, pfd })
                .collect();
            json(m, Body { n, summands })
        }
        Format::Text => {
            let mut s = format!("{}, N = {n}", header(m));
            for (summand, pfd) in split.iter().zip(&pfds) {
                write!(
                    s,
                    "\nf[{}] (orbit of size {}) = {}",
                    summand.dominant_weight, summand.orbit_size, summand.value
                )
                .unwrap();
                if let Some(p) = pfd {
                    write!(s, "\n    = {p}").unwrap();
                }
            }
            s
        }
    }))
}

pub fn vpart(m: &Module, n: u64, format: Format) -> Result<Output> {
    let (rs, table) = load(m)?;
    let report = check_partition_equivalence(&rs, &table, n)?;
    let ok = report.passed();
    let text = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a, T: Serialize> {
                #[serde(rename = "N")]
                n: u64,
                passed: bool,
                #[serde(flatten)]
                report: &'a T,
            }
            json(
                m,
                Body {
                    n,
                    passed: ok,
                    report: &report,
                },
            )
        }
        Format::Text => {
            let mut s = format!("{}, A =", header(m));
            for row in report.matrix.rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                write!(s, "\n  [{}]", cells.join(" ")).unwrap();
            }
            let p = report.properties;
            write!(
                s,
                "\ngrading: {}, symmetry: {}, multiplicity: {}",
                p.grading, p.symmetry, p.multiplicity
            )
            .unwrap();
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
            write!(
                s,
                "\n{} of {} checks of phi_A(mu, N) = m(mu) pass for N <= {n}",
                report.checks.len() - failed.len(),
                report.checks.len()
            )
            .unwrap();
            for c in failed {
                write!(
                    s,
                    "\nFAIL N={} mu={} phi={} m={}",
                    c.n, c.mu, c.phi, c.multiplicity
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output { text, ok })
}

pub fn verify(single: Option<&Module>, n: u64, format: Format) -> Result<Output> {
    let cases = match single {
        Some(m) => vec![VerifyCase::new(m.algebra, m.lambda.clone(), n)],
        None => default_suite(),
    };
    let records = verify_all(&cases)?;
    let ok = all_passed(&records);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&records).expect("records serialize"),
        Format::Text => render_table(&records),
    };
    Ok(Output { text, ok })
}

fn render_table(records: &[VerifyRecord]) -> String {
    let width = records
        .iter()
        .map(|r| r.case.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut s = format!("{:<8}{:<width$}  {:>3}  check", "status", "case", "N");
    for r in records {
        let n = r.n.map_or("-".to_string(), |n| n.to_string());
        write!(
            s,
            "\n{:<8}{:<width$}  {:>3}  {}",
            r.status, r.case, n, r.check
        )
        .unwrap();
    }
    let failed = records
        .iter()
        .filter(|r| r.status != symchar::verify::Status::Pass)
        .count();
    write!(s, "\n{} checks, {} failed", records.len(), failed).unwrap();
    s
}
