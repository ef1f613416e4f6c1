//! Integer partitions and Young-diagram arithmetic.
//!
//! A [`Partition`] doubles as a Young diagram: row `i` (1-based) holds
//! `parts[i-1]` boxes. Dimensions `d_λ` (the number of standard Young
//! tableaux) come from the hook length formula, exactly for `n ≤ 30` and
//! in log-space for any size.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Default upper bound on `n` for [`enumerate_partitions`].
pub const PARTITION_CAP: usize = 100;

/// Largest `n` for which dimensions are computed as exact integers.
pub const EXACT_DIM_CAP: usize = 30;

const LN_TABLE_LEN: usize = 4096;

struct LnTables {
    ln: Vec<f64>,
    ln_fact: Vec<f64>,
}

fn ln_tables() -> &'static LnTables {
    static TABLES: OnceLock<LnTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut ln = vec![f64::NEG_INFINITY; LN_TABLE_LEN];
        let mut ln_fact = vec![0.0; LN_TABLE_LEN];
        for k in 1..LN_TABLE_LEN {
            ln[k] = (k as f64).ln();
            ln_fact[k] = ln_fact[k - 1] + ln[k];
        }
        LnTables { ln, ln_fact }
    })
}

/// Natural log of a positive integer, served from a cached table when small.
#[inline]
pub fn ln_int(k: usize) -> f64 {
    if k < LN_TABLE_LEN {
        ln_tables().ln[k]
    } else {
        (k as f64).ln()
    }
}

/// `ln(k!)`, tabulated up to 4095 and summed directly beyond.
pub fn ln_factorial(k: usize) -> f64 {
    let t = ln_tables();
    if k < LN_TABLE_LEN {
        t.ln_fact[k]
    } else {
        t.ln_fact[LN_TABLE_LEN - 1] + (LN_TABLE_LEN..=k).map(|j| (j as f64).ln()).sum::<f64>()
    }
}

/// Exact `k!`.
pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * BigUint::from(j))
}

/// A partition of `n`: a non-increasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} contains a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// The unique partition of 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            n: 0,
        }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_parts_unchecked(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_parts_unchecked(vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the first row, `λ_1` (0 for the empty partition).
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Conjugate partition: `λ'_j = #{i : λ_i ≥ j}`.
    pub fn transpose(&self) -> Partition {
        let mut conj = vec![0usize; self.first()];
        for &p in &self.parts {
            for c in conj.iter_mut().take(p) {
                *c += 1;
            }
        }
        Partition {
            parts: conj,
            n: self.n,
        }
    }

    /// Hook lengths of every box, listed row by row.
    pub fn hooks(&self) -> Vec<usize> {
        self.hooks_with(&self.transpose())
    }

    fn hooks_with(&self, conj: &Partition) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n);
        for (i, &row_len) in self.parts.iter().enumerate() {
            for j in 0..row_len {
                // arm + leg + 1, with 0-based (i, j)
                out.push((row_len - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        out
    }

    /// `ln d_λ = ln n! − Σ ln h`.
    pub fn log_dim(&self) -> f64 {
        self.log_dim_with(&self.transpose())
    }

    pub(crate) fn log_dim_with(&self, conj: &Partition) -> f64 {
        let hook_sum: f64 = self.hooks_with(conj).into_iter().map(ln_int).sum();
        ln_factorial(self.n) - hook_sum
    }

    /// Number of standard Young tableaux of this shape.
    ///
    /// The exact value is present when `n ≤ EXACT_DIM_CAP`; the log value
    /// is always populated.
    pub fn dim(&self) -> BigDim {
        let conj = self.transpose();
        let log_value = self.log_dim_with(&conj);
        let value = (self.n <= EXACT_DIM_CAP).then(|| {
            let hook_product = self
                .hooks_with(&conj)
                .into_iter()
                .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
            let fact = factorial(self.n);
            debug_assert!((&fact % &hook_product) == BigUint::from(0u32));
            fact / hook_product
        });
        BigDim { value, log_value }
    }

    /// Removable boxes, ascending by row.
    pub fn corners(&self) -> Vec<Corner> {
        self.corner_rows()
            .map(|row| {
                let mut parts = self.parts.clone();
                parts[row - 1] -= 1;
                if parts[row - 1] == 0 {
                    parts.pop();
                }
                Corner {
                    row,
                    reduced: Partition::from_parts_unchecked(parts),
                }
            })
            .collect()
    }

    /// 1-based rows whose last box can be deleted.
    pub fn corner_rows(&self) -> impl Iterator<Item = usize> + '_ {
        let k = self.parts.len();
        (0..k)
            .filter(move |&i| i + 1 == k || self.parts[i] > self.parts[i + 1])
            .map(|i| i + 1)
    }

    /// `ln d_{λ^(i)}` for every corner, from the hook ratio
    /// `d_{λ^(i)} / d_λ = (1/n) Π h/(h−1)` over the boxes sharing the
    /// corner's row or column. Returns `(row, ln d)` pairs.
    pub fn corner_log_dims(&self, conj: &Partition, log_dim: f64) -> Vec<(usize, f64)> {
        let ln_n = ln_int(self.n);
        let ratio = |h: usize| ln_int(h) - ln_int(h - 1);
        self.corner_rows()
            .map(|row| {
                let i = row - 1;
                let len = self.parts[i];
                let mut acc = log_dim - ln_n;
                // boxes above the corner, in column `len`
                for l in 0..i {
                    acc += ratio(self.parts[l] - len + i - l + 1);
                }
                // boxes to the left of the corner, in row `row`
                for k in 0..len - 1 {
                    acc += ratio((len - k - 1) + (conj.parts[k] - i - 1) + 1);
                }
                (row, acc)
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    /// Comma-joined parts, e.g. `3,2`. The empty partition prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A removable box of a diagram and the diagram left after removing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corner {
    /// 1-based row index.
    pub row: usize,
    pub reduced: Partition,
}

/// A nonnegative integer carried exactly (when small enough) and as a log.
#[derive(Clone, Debug, PartialEq)]
pub struct BigDim {
    pub value: Option<BigUint>,
    pub log_value: f64,
}

impl BigDim {
    pub fn one() -> Self {
        BigDim {
            value: Some(BigUint::one()),
            log_value: 0.0,
        }
    }

    /// The exact value, or a size-limit error if it was not computed.
    pub fn exact(&self) -> Result<&BigUint> {
        self.value.as_ref().ok_or(Error::SizeLimit {
            what: "exact dimension",
            n: usize::MAX,
            max: EXACT_DIM_CAP,
        })
    }

    /// `exp(log_value)`, or the exact value converted when present.
    pub fn to_f64(&self) -> f64 {
        match &self.value {
            Some(v) => v.to_f64().unwrap_or(f64::INFINITY),
            None => self.log_value.exp(),
        }
    }
}

impl std::ops::Mul for &BigDim {
    type Output = BigDim;

    fn mul(self, rhs: &BigDim) -> BigDim {
        BigDim {
            value: match (&self.value, &rhs.value) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
            log_value: self.log_value + rhs.log_value,
        }
    }
}

/// Streams the partitions of `n` in reverse-lexicographic order, from `(n)`
/// down to `(1^n)`.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Partitions {
            current: Some(if n == 0 { Vec::new() } else { vec![n] }),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_parts_unchecked(cur.clone());

        // rightmost part greater than one
        if let Some(k) = cur.iter().rposition(|&p| p > 1) {
            let mut next = cur;
            let ones = next.len() - k - 1;
            let v = next[k] - 1;
            next.truncate(k);
            next.push(v);
            let mut rem = ones + 1;
            while rem > 0 {
                let take = rem.min(v);
                next.push(take);
                rem -= take;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `n ≤ PARTITION_CAP`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_with_cap(n, PARTITION_CAP)
}

pub fn enumerate_partitions_with_cap(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::SizeLimit {
            what: "partition enumeration",
            n,
            max: cap,
        });
    }
    Ok(Partitions::new(n).collect())
}
