//! Weight multiplicities of `S^N V` as values of a vector partition function.
//!
//! The matrix `A` has one column per basis vector of `V` (its weight, followed
//! by a 1), so `phi_A(mu, N)` counts the monomials of degree `N` with total
//! weight `mu`, which is `m_{lambda,N}(mu)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::charformula::{character_at, multiplicity_at};
use crate::error::{Error, Result};
use crate::pfdcore::pfd_decompose;
use crate::rootsys::{RootSystem, Weight};
use crate::weightsys::MultiplicityTable;

/// `A in Z^{(r+1) x dim V}`, stored by columns in decreasing lexicographic
/// order so the highest weight comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatrix {
    rank: usize,
    columns: Vec<Weight>,
}

impl PartitionMatrix {
    /// The matrix of an arbitrary weight multiset.
    pub fn from_weights(rank: usize, mut columns: Vec<Weight>) -> Result<Self> {
        if let Some(w) = columns.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch(rank, w.rank()));
        }
        columns.sort_by(|a, b| b.cmp(a));
        Ok(PartitionMatrix { rank, columns })
    }

    /// Number of rows, `r + 1`.
    pub fn nrows(&self) -> usize {
        self.rank + 1
    }

    /// Number of columns, `dim V`.
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// The weight part of each column.
    pub fn columns(&self) -> &[Weight] {
        &self.columns
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let mut rows: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| self.columns.iter().map(|c| c.0[i]).collect())
            .collect();
        rows.push(vec![1; self.columns.len()]);
        rows
    }

    fn column_counts(&self) -> BTreeMap<&Weight, u64> {
        let mut counts = BTreeMap::new();
        for c in &self.columns {
            *counts.entry(c).or_insert(0) += 1;
        }
        counts
    }

    /// Checks grading, Weyl symmetry, and agreement with `table`.
    pub fn properties(&self, rs: &RootSystem, table: &MultiplicityTable) -> MatrixProperties {
        let grading = self
            .rows()
            .last()
            .is_some_and(|r| r.iter().all(|&x| x == 1));
        let counts = self.column_counts();
        let symmetry = rs.rank() == self.rank
            && (1..=self.rank).all(|i| {
                counts.iter().all(|(w, &m)| {
                    rs.weyl_reflect(i, w)
                        .is_ok_and(|img| counts.get(&img).copied() == Some(m))
                })
            });
        let multiplicity =
            counts.len() == table.len() && counts.iter().all(|(w, &m)| table.get(w) == m);
        MatrixProperties {
            grading,
            symmetry,
            multiplicity,
        }
    }
}

impl Serialize for PartitionMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// The structural properties of the weight matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixProperties {
    pub grading: bool,
    pub symmetry: bool,
    pub multiplicity: bool,
}

impl MatrixProperties {
    pub fn all(&self) -> bool {
        self.grading && self.symmetry && self.multiplicity
    }
}

/// Columns are the weights of `V(lambda)` repeated by multiplicity.
pub fn build_partition_matrix(
    rs: &RootSystem,
    table: &MultiplicityTable,
) -> Result<PartitionMatrix> {
    if rs.rank() != table.rank() {
        return Err(Error::RankMismatch(rs.rank(), table.rank()));
    }
    let a = PartitionMatrix::from_weights(table.rank(), table.weights_with_repetition())?;
    let props = a.properties(rs, table);
    if !props.all() {
        return Err(Error::Internal(format!("weight matrix fails {props:?}")));
    }
    Ok(a)
}

struct Search<'a> {
    cols: &'a [Weight],
    // per-coordinate min and max over columns j..
    suffix_min: Vec<Vec<i64>>,
    suffix_max: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn count(&self, j: usize, left: i64, target: &mut [i64]) -> u64 {
        let feasible = target
            .iter()
            .enumerate()
            .all(|(i, &t)| left * self.suffix_min[j][i] <= t && t <= left * self.suffix_max[j][i]);
        if !feasible {
            return 0;
        }
        if j + 1 == self.cols.len() {
            // the grading row forces the last column to take the rest
            let c = &self.cols[j].0;
            return u64::from(target.iter().zip(c).all(|(&t, &ci)| t == left * ci));
        }
        let mut total = 0;
        for x in 0..=left {
            for (t, ci) in target.iter_mut().zip(&self.cols[j].0) {
                *t -= x * ci;
            }
            total += self.count(j + 1, left - x, target);
            for (t, ci) in target.iter_mut().zip(&self.cols[j].0) {
                *t += x * ci;
            }
        }
        total
    }
}

/// `phi_A(b) = #{x in N^d : A x = b}`, by enumerating compositions of the
/// grading entry `b_m` with pruning on the remaining equations.
pub fn phi(a: &PartitionMatrix, b: &[i64]) -> Result<u64> {
    if b.len() != a.nrows() {
        return Err(Error::InvalidArgument(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let n = b[a.rank];
    if n < 0 {
        return Ok(0);
    }
    let d = a.columns.len();
    if d == 0 {
        return Ok(u64::from(n == 0 && b[..a.rank].iter().all(|&t| t == 0)));
    }
    let mut suffix_min = vec![vec![i64::MAX; a.rank]; d];
    let mut suffix_max = vec![vec![i64::MIN; a.rank]; d];
    for j in (0..d).rev() {
        for i in 0..a.rank {
            let c = a.columns[j].0[i];
            let (lo, hi) = if j + 1 < d {
                (suffix_min[j + 1][i], suffix_max[j + 1][i])
            } else {
                (c, c)
            };
            suffix_min[j][i] = lo.min(c);
            suffix_max[j][i] = hi.max(c);
        }
    }
    let search = Search {
        cols: &a.columns,
        suffix_min,
        suffix_max,
    };
    if d == 1 {
        return Ok(search.count(0, n, &mut b[..a.rank].to_vec()));
    }
    // split on the first coordinate
    let first = &a.columns[0].0;
    Ok((0..=n)
        .into_par_iter()
        .map(|x| {
            let mut target: Vec<i64> = b[..a.rank]
                .iter()
                .zip(first)
                .map(|(t, c)| t - x * c)
                .collect();
            search.count(1, n - x, &mut target)
        })
        .sum())
}

/// One comparison `phi_A(mu, N) = m_{lambda,N}(mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    #[serde(rename = "N")]
    pub n: u64,
    pub mu: Weight,
    pub phi: u64,
    pub multiplicity: String,
    pub pass: bool,
}

/// Matrix, its properties, and every `(N, mu)` comparison.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub matrix: PartitionMatrix,
    pub properties: MatrixProperties,
    pub checks: Vec<PartitionCheck>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.properties.all() && self.checks.iter().all(|c| c.pass)
    }
}

/// Compares `phi_A` with the multiplicities of `Char S^N V(lambda)` on the full
/// support, for `N = 0..=N_max`.
pub fn check_partition_equivalence(
    rs: &RootSystem,
    table: &MultiplicityTable,
    n_max: u64,
) -> Result<PartitionReport> {
    if rs.rank() != table.rank() {
        return Err(Error::RankMismatch(rs.rank(), table.rank()));
    }
    let matrix = PartitionMatrix::from_weights(table.rank(), table.weights_with_repetition())?;
    let properties = matrix.properties(rs, table);
    let cc = pfd_decompose(table)?;
    let mut checks = Vec::new();
    for n in 0..=n_max {
        let cp = character_at(&cc, n)?;
        for (mu, _) in cp.entries() {
            let mut b = mu.0.clone();
            b.push(n as i64);
            let count = phi(&matrix, &b)?;
            let m = multiplicity_at(&cp, &mu);
            checks.push(PartitionCheck {
                n,
                pass: BigInt::from(count) == m,
                mu,
                phi: count,
                multiplicity: m.to_string(),
            });
        }
    }
    Ok(PartitionReport {
        matrix,
        properties,
        checks,
    })
}
