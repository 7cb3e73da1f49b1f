//! Root systems of the simple Lie algebras and their Weyl groups.
//!
//! All weights live in the weight lattice `X` and are stored by their
//! coordinates in the fundamental-weight basis, so `q^mu = q1^c1 ... qr^cr`
//! reads the exponent vector off directly. Row `i` of the Cartan matrix is the
//! simple root `alpha_i` in those coordinates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point `mu = c1 w1 + ... + cr wr`, stored as `(c1, ..., cr)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated fundamental-weight coordinates, e.g. `"1,1"` or
/// `"(1,-1)"`.
impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner);
        let coords = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidArgument(format!("bad weight {s:?}: {e}")))?;
        Ok(Weight(coords))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A simple type such as `A2` or `G2`; the selector string used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::InvalidRootSystem {
                series: series.letter().to_string(),
                rank,
                reason: "not a simple type (A_r r>=1, B_r r>=2, C_r r>=3, D_r r>=4, E6-E8, F4, G2)",
            })
        }
    }

    /// |Phi+| from the classification; used only to check the closure.
    pub fn positive_root_count(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r * (r + 1) / 2,
            Series::B | Series::C => r * r,
            Series::D => r * (r - 1),
            Series::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    pub fn weyl_group_order(&self) -> u64 {
        let r = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.series {
            Series::A => fact(r + 1),
            Series::B | Series::C => (1u64 << r) * fact(r),
            Series::D => (1u64 << (r - 1)) * fact(r),
            Series::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Cartan matrix with entry `(i, j) = <alpha_i, alpha_j^vee>` in Bourbaki
    /// numbering, so row `i` is `alpha_i` in fundamental-weight coordinates.
    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..r.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..r - 2 {
                    link(i, i + 1);
                }
                link(r - 3, r - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..r - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Series::G => link(0, 1),
        }
        match self.series {
            // alpha_r short
            Series::B => c[r - 2][r - 1] = -2,
            // alpha_r long
            Series::C => c[r - 1][r - 2] = -2,
            // alpha_2 long, alpha_3 short
            Series::F => c[1][2] = -2,
            // alpha_1 short, alpha_2 long
            Series::G => c[1][0] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::BadSelector(s.to_string())),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::BadSelector(s.to_string()))?;
        CartanType::new(series, rank)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational64>,
    positive_roots: Vec<Weight>,
    /// `positive_roots[k]` expanded in simple roots.
    positive_root_heights: Vec<Vec<i64>>,
    rho: Weight,
    /// `form[i][j] / form_scale = (w_i, w_j)`.
    form: Vec<Vec<i64>>,
    form_scale: i64,
}

pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType::new(series, rank)?)
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Result<Self> {
        let r = ty.rank;
        let cartan = ty.cartan_matrix();

        // s_i c_ij = s_j c_ji, propagated along the (connected) Dynkin diagram
        let mut symmetrizer: Vec<Option<Rational64>> = vec![None; r];
        symmetrizer[0] = Some(Rational64::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let si = symmetrizer[i].unwrap();
            for j in 0..r {
                if j != i && cartan[i][j] != 0 && symmetrizer[j].is_none() {
                    symmetrizer[j] = Some(si * Rational64::new(cartan[i][j], cartan[j][i]));
                    queue.push_back(j);
                }
            }
        }
        let symmetrizer: Vec<Rational64> = symmetrizer
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::Internal("disconnected Dynkin diagram".into())))
            .collect::<Result<_>>()?;

        // (w_i, w_j) = (C^-1)_{ji} d_i with d_i = (alpha_i, alpha_i)/2 = 1/s_i
        let inv = invert(&cartan)?;
        let gram: Vec<Vec<Rational64>> = (0..r)
            .map(|i| (0..r).map(|j| inv[j][i] / symmetrizer[i]).collect())
            .collect();
        let form_scale = gram
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let form = gram
            .iter()
            .map(|row| row.iter().map(|x| (x * form_scale).to_integer()).collect())
            .collect();

        let (positive_roots, positive_root_heights) = positive_roots_by_reflection(&cartan);
        if positive_roots.len() != ty.positive_root_count() {
            return Err(Error::Internal(format!(
                "reflection closure produced {} positive roots for {ty}, expected {}",
                positive_roots.len(),
                ty.positive_root_count()
            )));
        }

        Ok(RootSystem {
            ty,
            cartan,
            symmetrizer,
            positive_roots,
            positive_root_heights,
            rho: Weight(vec![1; r]),
            form,
            form_scale,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn series(&self) -> Series {
        self.ty.series
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Rational64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in the simple-root basis, parallel to [`positive_roots`](Self::positive_roots).
    pub fn positive_roots_in_simple_basis(&self) -> &[Vec<i64>] {
        &self.positive_root_heights
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.ty.weyl_group_order()
    }

    /// Invariant form scaled by [`form_scale`](Self::form_scale) to an integer.
    pub fn inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let mut acc = 0i64;
        for (i, ai) in a.0.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                acc += ai * self.form[i][j] * bj;
            }
        }
        acc
    }

    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// `(a, b)` for the invariant form normalized by the symmetrizer.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational64 {
        Rational64::new(self.inner_scaled(a, b), self.form_scale)
    }

    fn check_weight(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank() {
            Err(Error::RankMismatch(mu.rank(), self.rank()))
        } else {
            Ok(())
        }
    }

    /// `s_i(mu) = mu - <mu, alpha_i^vee> alpha_i` with `i` counted from 1.
    pub fn weyl_reflect(&self, i: usize, mu: &Weight) -> Result<Weight> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        self.check_weight(mu)?;
        Ok(self.reflect0(i - 1, mu))
    }

    fn reflect0(&self, i: usize, mu: &Weight) -> Weight {
        let c = mu.0[i];
        Weight(
            mu.0.iter()
                .zip(&self.cartan[i])
                .map(|(m, a)| m - c * a)
                .collect(),
        )
    }

    /// The full orbit `W . mu` by breadth-first closure under simple reflections.
    pub fn weyl_orbit(&self, mu: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(nu) = queue.pop_front() {
            for i in 0..self.rank() {
                if nu.0[i] == 0 {
                    continue;
                }
                let img = self.reflect0(i, &nu);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        seen
    }

    pub fn dominant_representative(&self, mu: &Weight) -> Weight {
        let mut nu = mu.clone();
        // each step adds a positive multiple of a simple root, so this ends
        while let Some(i) = nu.0.iter().position(|&c| c < 0) {
            nu = self.reflect0(i, &nu);
        }
        nu
    }

    /// `lambda - mu` in the simple-root basis, if it lies in the root lattice.
    pub fn simple_root_expansion(&self, diff: &Weight) -> Option<Vec<i64>> {
        // diff = sum_k n_k alpha_k = sum_k n_k C[k] => n = diff * C^-1
        let inv = invert(&self.cartan).ok()?;
        (0..self.rank())
            .map(|k| {
                let acc = diff
                    .0
                    .iter()
                    .enumerate()
                    .fold(Rational64::zero(), |acc, (j, d)| acc + inv[j][k] * d);
                acc.is_integer().then(|| acc.to_integer())
            })
            .collect()
    }
}

fn positive_roots_by_reflection(cartan: &[Vec<i64>]) -> (Vec<Weight>, Vec<Vec<i64>>) {
    let r = cartan.len();
    let to_weight = |b: &[i64]| -> Weight {
        let mut w = vec![0i64; r];
        for (k, bk) in b.iter().enumerate() {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += bk * cartan[k][j];
            }
        }
        Weight(w)
    };
    // work in simple-root coordinates, where positivity is visible
    let simple: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(beta) = queue.pop_front() {
        let w = to_weight(&beta);
        for i in 0..r {
            let mut img = beta.clone();
            img[i] -= w.0[i];
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|b| b.iter().all(|&x| x >= 0))
        .collect();
    pos.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    let weights = pos.iter().map(|b| to_weight(b)).collect();
    (weights, pos)
}

fn invert(m: &[Vec<i64>]) -> Result<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}
