//! Closed-form spectra of random transpositions and star transpositions.
//!
//! Both chains are diagonalized block by block over the partitions of `n`.
//! Random transpositions acts on the `d_λ²`-dimensional isotypic block of
//! `λ` as the scalar `s_λ`; inside the same block star transpositions has one
//! eigenvalue per removable corner of `λ`, with multiplicity `d_λ·d_{λ^(i)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::partitions::{BigDim, Partition, Partitions, EXACT_DIM_CAP, PARTITION_CAP};

/// Largest `n` for the exact rational trace and completeness sums.
pub const EXACT_SPECTRUM_CAP: usize = 12;

/// Which shuffle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Chain {
    /// Random transpositions (lazy: identity with probability 1/n).
    #[value(name = "rt")]
    RandomTranspositions,
    /// Star transpositions: swap a uniform card with the top card.
    #[value(name = "star")]
    StarTranspositions,
}

impl Chain {
    pub fn name(self) -> &'static str {
        match self {
            Chain::RandomTranspositions => "rt",
            Chain::StarTranspositions => "star",
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Random-transpositions eigenvalue of one isotypic block.
#[derive(Clone, Debug, PartialEq)]
pub struct RtEig {
    pub lambda: Partition,
    /// Normalized character ratio at a transposition.
    pub r: Rational64,
    /// Eigenvalue `1/n + (n−1)/n · r`.
    pub s: Rational64,
    /// `d_λ²`.
    pub mult: BigDim,
}

/// Star-transpositions eigenvalue attached to one corner of `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarEig {
    pub lambda: Partition,
    /// 1-based row of the removed box.
    pub corner_row: usize,
    /// Eigenvalue `(λ_i − i + 1)/n`.
    pub s_bar: Rational64,
    /// `d_λ · d_{λ^(i)}`.
    pub mult: BigDim,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBlock {
    pub lambda: Partition,
    pub rt: RtEig,
    pub star: Vec<StarEig>,
}

fn check_deck(n: usize) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("deck size must be at least 2, got {n}")));
    }
    Ok(())
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

/// `r_λ = Σ_i [C(λ_i,2) − C(λ'_i,2)] / C(n,2)`.
pub fn character_ratio(lambda: &Partition, conj: &Partition) -> Rational64 {
    let num: i64 = lambda.parts().iter().map(|&p| choose2(p)).sum::<i64>()
        - conj.parts().iter().map(|&p| choose2(p)).sum::<i64>();
    Rational64::new(num, choose2(lambda.n()))
}

/// `s_λ` from `r_λ`.
pub fn rt_from_ratio(n: usize, r: Rational64) -> Rational64 {
    let n = n as i64;
    Rational64::new(1, n) + Rational64::new(n - 1, n) * r
}

/// Star eigenvalue for the corner in (1-based) `row`.
pub fn star_value(lambda: &Partition, row: usize) -> Rational64 {
    let len = lambda.parts()[row - 1] as i64;
    Rational64::new(len - row as i64 + 1, lambda.n() as i64)
}

/// `r̄_{λ^(i)} = (λ_i − i)/(n − 1)`, so that `s̄ = 1/n + (n−1)/n · r̄`.
pub fn star_ratio(lambda: &Partition, row: usize) -> Rational64 {
    let len = lambda.parts()[row - 1] as i64;
    Rational64::new(len - row as i64, lambda.n() as i64 - 1)
}

pub fn rt_eigenvalue(lambda: &Partition) -> Result<RtEig> {
    check_deck(lambda.n())?;
    let conj = lambda.transpose();
    let r = character_ratio(lambda, &conj);
    let d = lambda.dim();
    Ok(RtEig {
        lambda: lambda.clone(),
        r,
        s: rt_from_ratio(lambda.n(), r),
        mult: &d * &d,
    })
}

pub fn star_eigenvalues(lambda: &Partition) -> Result<Vec<StarEig>> {
    check_deck(lambda.n())?;
    let d = lambda.dim();
    Ok(lambda
        .corners()
        .into_iter()
        .map(|corner| StarEig {
            lambda: lambda.clone(),
            corner_row: corner.row,
            s_bar: star_value(lambda, corner.row),
            mult: &d * &corner.reduced.dim(),
        })
        .collect())
}

pub fn spectral_block(lambda: &Partition) -> Result<SpectralBlock> {
    Ok(SpectralBlock {
        lambda: lambda.clone(),
        rt: rt_eigenvalue(lambda)?,
        star: star_eigenvalues(lambda)?,
    })
}

/// One block per partition of `n`, in enumeration order.
pub fn full_spectrum(n: usize) -> Result<Vec<SpectralBlock>> {
    check_deck(n)?;
    if n > PARTITION_CAP {
        return Err(Error::SizeLimit {
            what: "spectrum",
            n,
            max: PARTITION_CAP,
        });
    }
    let partitions: Vec<Partition> = Partitions::new(n).collect();
    partitions.par_iter().map(spectral_block).collect()
}

/// Flattened `(eigenvalue, multiplicity)` list of one chain, block order.
pub fn eigenvalues(chain: Chain, n: usize) -> Result<Vec<(Partition, Rational64, BigDim)>> {
    let blocks = full_spectrum(n)?;
    Ok(blocks
        .into_iter()
        .flat_map(|b| match chain {
            Chain::RandomTranspositions => vec![(b.lambda, b.rt.s, b.rt.mult)],
            Chain::StarTranspositions => b
                .star
                .into_iter()
                .map(|e| (e.lambda, e.s_bar, e.mult))
                .collect(),
        })
        .collect())
}

fn exact_cap(n: usize) -> Result<()> {
    if n > EXACT_SPECTRUM_CAP {
        return Err(Error::SizeLimit {
            what: "exact spectrum",
            n,
            max: EXACT_SPECTRUM_CAP,
        });
    }
    Ok(())
}

/// Distinct eigenvalues with their total exact multiplicity.
pub fn eigenvalue_multiset(chain: Chain, n: usize) -> Result<BTreeMap<Rational64, BigUint>> {
    if n > EXACT_DIM_CAP {
        return Err(Error::SizeLimit {
            what: "exact multiplicities",
            n,
            max: EXACT_DIM_CAP,
        });
    }
    let mut out: BTreeMap<Rational64, BigUint> = BTreeMap::new();
    for (_, eig, mult) in eigenvalues(chain, n)? {
        *out.entry(eig).or_default() += mult.exact()?;
    }
    Ok(out)
}

/// `Σ mult`, which must equal `n!`.
pub fn total_multiplicity(chain: Chain, n: usize) -> Result<BigUint> {
    exact_cap(n)?;
    eigenvalues(chain, n)?
        .iter()
        .try_fold(BigUint::zero(), |acc, (_, _, m)| Ok(acc + m.exact()?))
}

/// `Σ mult · eigenvalue`, the trace of the transition matrix.
pub fn spectrum_trace(chain: Chain, n: usize) -> Result<BigRational> {
    exact_cap(n)?;
    let mut acc = BigRational::zero();
    for (_, eig, mult) in eigenvalues(chain, n)? {
        let m = BigInt::from(mult.exact()?.clone());
        let e = BigRational::new(BigInt::from(*eig.numer()), BigInt::from(*eig.denom()));
        acc += e * BigRational::from_integer(m);
    }
    Ok(acc)
}
