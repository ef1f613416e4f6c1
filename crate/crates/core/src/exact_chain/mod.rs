//! Brute-force engine over `S_n` for small decks.
//!
//! States are permutations indexed by Lehmer rank. A step multiplies the
//! current arrangement on the right by a random generator; for star
//! transpositions the generator is `(1 j)` with `j` uniform on `1..=n`
//! (`j = 1` is the identity).
//!
//! Throughout, `t` is the number of random-transposition steps and `t_star`
//! the number of star-transposition steps.

pub mod jacobi;
pub mod matrix;
pub mod perm;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::EXACT_DIM_CAP;
use crate::spectra::{full_spectrum, Chain};

pub use jacobi::{bin_sorted, jacobi_eigen, SymmetricEigen};
pub use matrix::{SparseScaledMatrix, MAX_MATRIX_N};
pub use perm::{factorial_usize, perm_rank, perm_unrank, PermIndex};

/// Largest deck for dense eigensolving (720 × 720).
pub const MAX_EIGEN_N: usize = 6;
/// Largest deck for the exact commutation product.
pub const MAX_PRODUCT_N: usize = 7;
/// Largest deck for [`l2_comparison_check`].
pub const MAX_L2_CHECK_N: usize = 6;

/// A probability vector over `S_n`, indexed by Lehmer rank.
#[derive(Clone, Debug, PartialEq)]
pub struct DistVector {
    n: usize,
    probs: Vec<f64>,
}

impl DistVector {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != factorial_usize(n) {
            return Err(Error::Domain(format!(
                "expected {} entries for n = {n}, got {}",
                factorial_usize(n),
                probs.len()
            )));
        }
        let d = DistVector { n, probs };
        if !d.is_valid() {
            return Err(Error::Domain("not a probability vector".into()));
        }
        Ok(d)
    }

    pub fn point_mass(at: PermIndex) -> Result<Self> {
        if at.n > MAX_MATRIX_N {
            return Err(Error::SizeLimit {
                what: "distribution",
                n: at.n,
                max: MAX_MATRIX_N,
            });
        }
        let size = factorial_usize(at.n);
        if at.rank >= size {
            return Err(Error::Domain(format!("rank {} out of range", at.rank)));
        }
        let mut probs = vec![0.0; size];
        probs[at.rank] = 1.0;
        Ok(DistVector { n: at.n, probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n > MAX_MATRIX_N {
            return Err(Error::SizeLimit {
                what: "distribution",
                n,
                max: MAX_MATRIX_N,
            });
        }
        let size = factorial_usize(n);
        Ok(DistVector {
            n,
            probs: vec![1.0 / size as f64; size],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Entries ≥ −1e-15 and total mass within 1e-9 of one.
    pub fn is_valid(&self) -> bool {
        let sum: f64 = self.probs.iter().sum();
        self.probs.iter().all(|&p| p >= -1e-15) && (sum - 1.0).abs() <= 1e-9
    }
}

fn step(transposed: &SparseScaledMatrix, v: &[f64]) -> Vec<f64> {
    let denom = transposed.denominator() as f64;
    transposed
        .rows()
        .par_iter()
        .map(|col| {
            col.iter()
                .map(|&(x, w)| v[x as usize] * w as f64)
                .sum::<f64>()
                / denom
        })
        .collect()
}

/// Distributions after `0, 1, …, t_max` steps from `start`.
pub fn evolve_trajectory(
    m: &SparseScaledMatrix,
    start: PermIndex,
    t_max: usize,
) -> Result<Vec<DistVector>> {
    if start.n != m.n() {
        return Err(Error::SizeMismatch {
            left: start.n,
            right: m.n(),
        });
    }
    let transposed = m.transpose();
    let mut out = Vec::with_capacity(t_max + 1);
    let mut cur = DistVector::point_mass(start)?;
    for _ in 0..t_max {
        let next = DistVector {
            n: cur.n,
            probs: step(&transposed, &cur.probs),
        };
        out.push(std::mem::replace(&mut cur, next));
    }
    out.push(cur);
    Ok(out)
}

/// Law of the walk after `t` steps from `start`.
pub fn evolve(m: &SparseScaledMatrix, start: PermIndex, t: usize) -> Result<DistVector> {
    Ok(evolve_trajectory(m, start, t)?
        .pop()
        .expect("non-empty trajectory"))
}

/// `½ Σ |p − 1/n!|`.
pub fn tv_to_uniform(d: &DistVector) -> f64 {
    let u = 1.0 / d.probs.len() as f64;
    0.5 * d.probs.iter().map(|p| (p - u).abs()).sum::<f64>()
}

/// `½ Σ |a − b|`.
pub fn tv_between(a: &DistVector, b: &DistVector) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(0.5
        * a.probs
            .iter()
            .zip(&b.probs)
            .map(|(x, y)| (x - y).abs())
            .sum::<f64>())
}

/// Exact distance to uniform from the identity for `t = 0..=t_max`.
pub fn tv_curve(chain: Chain, n: usize, t_max: usize) -> Result<Vec<f64>> {
    let m = SparseScaledMatrix::build(chain, n)?;
    Ok(evolve_trajectory(&m, PermIndex::identity(n), t_max)?
        .iter()
        .map(tv_to_uniform)
        .collect())
}

/// Whether `ab == ba` as integer matrices.
pub fn commutes(a: &SparseScaledMatrix, b: &SparseScaledMatrix) -> Result<bool> {
    if a.n() > MAX_PRODUCT_N {
        return Err(Error::SizeLimit {
            what: "exact matrix product",
            n: a.n(),
            max: MAX_PRODUCT_N,
        });
    }
    Ok(a.mul(b)? == b.mul(a)?)
}

/// `(nP)(n²Q) == (n²Q)(nP)` for star `P` and random transpositions `Q`.
pub fn commutation_check(n: usize) -> Result<bool> {
    if !(2..=MAX_PRODUCT_N).contains(&n) {
        return Err(Error::SizeLimit {
            what: "commutation check",
            n,
            max: MAX_PRODUCT_N,
        });
    }
    let p = SparseScaledMatrix::build(Chain::StarTranspositions, n)?;
    let q = SparseScaledMatrix::build(Chain::RandomTranspositions, n)?;
    commutes(&p, &q)
}

/// All `n!` eigenvalues of a symmetric transition matrix, ascending.
pub fn numeric_eig_multiset(m: &SparseScaledMatrix) -> Result<Vec<f64>> {
    if m.n() > MAX_EIGEN_N {
        return Err(Error::SizeLimit {
            what: "dense eigensolver",
            n: m.n(),
            max: MAX_EIGEN_N,
        });
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(jacobi_eigen(m.to_dense(), m.dim(), false)?.values)
}

/// Both sides of the comparison inequality at one pair of times.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L2Check {
    /// `2·TV(P^{t_star} δ_id, Q^t δ_id)`.
    pub lhs: f64,
    /// `sqrt(Σ_λ d_λ Σ_i d_{λ^(i)} (s_λ^t − s̄_{λ^(i)}^{t_star})²)`.
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L2GridPoint {
    pub t: usize,
    pub t_star: usize,
    pub check: L2Check,
}

/// Paired spectral sum in plain double precision; `n ≤ 30`.
pub fn spectral_rhs_squared(n: usize, t: usize, t_star: usize) -> Result<f64> {
    if n > EXACT_DIM_CAP {
        return Err(Error::SizeLimit {
            what: "paired spectral sum",
            n,
            max: EXACT_DIM_CAP,
        });
    }
    let mut sum = 0.0;
    for block in full_spectrum(n)? {
        let rt = to_f64(block.rt.s).powi(t as i32);
        for e in &block.star {
            let diff = rt - to_f64(e.s_bar).powi(t_star as i32);
            sum += e.mult.to_f64() * diff * diff;
        }
    }
    Ok(sum)
}

fn to_f64(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn check_l2_n(n: usize) -> Result<()> {
    if !(2..=MAX_L2_CHECK_N).contains(&n) {
        return Err(Error::SizeLimit {
            what: "comparison inequality check",
            n,
            max: MAX_L2_CHECK_N,
        });
    }
    Ok(())
}

pub fn l2_comparison_check(n: usize, t: usize, t_star: usize) -> Result<L2Check> {
    check_l2_n(n)?;
    let id = PermIndex::identity(n);
    let star = evolve(
        &SparseScaledMatrix::build(Chain::StarTranspositions, n)?,
        id,
        t_star,
    )?;
    let rt = evolve(
        &SparseScaledMatrix::build(Chain::RandomTranspositions, n)?,
        id,
        t,
    )?;
    Ok(L2Check {
        lhs: 2.0 * tv_between(&star, &rt)?,
        rhs: spectral_rhs_squared(n, t, t_star)?.sqrt(),
    })
}

/// [`l2_comparison_check`] for every `(t, t_star) ∈ [0, t_max]²`, sharing one
/// trajectory per chain.
pub fn l2_comparison_grid(n: usize, t_max: usize) -> Result<Vec<L2GridPoint>> {
    check_l2_n(n)?;
    let id = PermIndex::identity(n);
    let star = evolve_trajectory(
        &SparseScaledMatrix::build(Chain::StarTranspositions, n)?,
        id,
        t_max,
    )?;
    let rt = evolve_trajectory(
        &SparseScaledMatrix::build(Chain::RandomTranspositions, n)?,
        id,
        t_max,
    )?;
    let mut out = Vec::with_capacity((t_max + 1) * (t_max + 1));
    for (t, rt_t) in rt.iter().enumerate() {
        for (t_star, star_t) in star.iter().enumerate() {
            out.push(L2GridPoint {
                t,
                t_star,
                check: L2Check {
                    lhs: 2.0 * tv_between(star_t, rt_t)?,
                    rhs: spectral_rhs_squared(n, t, t_star)?.sqrt(),
                },
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evolve_basics() {
        let m = SparseScaledMatrix::build(Chain::StarTranspositions, 3).unwrap();
        let id = PermIndex::identity(3);
        assert_eq!(
            evolve(&m, id, 0).unwrap(),
            DistVector::point_mass(id).unwrap()
        );
        let d = evolve(&m, id, 1).unwrap();
        let support: Vec<usize> = [vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0]]
            .iter()
            .map(|p| perm_rank(p).unwrap().rank)
            .collect();
        for (r, &p) in d.probs().iter().enumerate() {
            let want = if support.contains(&r) { 1.0 / 3.0 } else { 0.0 };
            assert!((p - want).abs() < 1e-15);
        }
        assert!(evolve(&m, PermIndex::identity(4), 1).is_err());
    }

    #[test]
    fn converges_to_uniform() {
        for chain in [Chain::StarTranspositions, Chain::RandomTranspositions] {
            let m = SparseScaledMatrix::build(chain, 5).unwrap();
            let d = evolve(&m, PermIndex::identity(5), 200).unwrap();
            assert!(d.is_valid());
            let dev = d
                .probs()
                .iter()
                .map(|p| (p - 1.0 / 120.0).abs())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "{chain}: {dev}");
        }
    }

    #[test]
    fn tv_examples() {
        let pm = DistVector::point_mass(PermIndex::identity(3)).unwrap();
        assert!((tv_to_uniform(&pm) - 5.0 / 6.0).abs() < 1e-15);
        assert!(tv_to_uniform(&DistVector::uniform(4).unwrap()).abs() < 1e-15);

        let pm4 = DistVector::point_mass(PermIndex::identity(4)).unwrap();
        let u4 = DistVector::uniform(4).unwrap();
        assert!((tv_between(&pm4, &u4).unwrap() - 23.0 / 24.0).abs() < 1e-15);
        assert_eq!(
            tv_between(&pm4, &u4).unwrap(),
            tv_between(&u4, &pm4).unwrap()
        );
        assert_eq!(tv_between(&pm4, &pm4).unwrap(), 0.0);
        assert!(matches!(
            tv_between(&pm, &u4),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn tv_nonincreasing_star_n5() {
        let curve = tv_curve(Chain::StarTranspositions, 5, 100).unwrap();
        for w in curve.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert!(curve.iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
    }

    #[test]
    fn dist_vector_validation() {
        assert!(DistVector::new(2, vec![0.5, 0.5]).is_ok());
        assert!(DistVector::new(2, vec![0.7, 0.5]).is_err());
        assert!(DistVector::new(2, vec![1.5, -0.5]).is_err());
        assert!(DistVector::new(3, vec![1.0]).is_err());
    }

    #[test]
    fn commutation_small() {
        assert!(commutation_check(3).unwrap());
        assert!(commutation_check(8).is_err());
        // non-conjugacy-invariant weights do not commute with star
        let skewed =
            SparseScaledMatrix::from_generators(3, 1, &[(vec![1, 0, 2], 2), (vec![2, 1, 0], 1)])
                .unwrap();
        let star = SparseScaledMatrix::build(Chain::StarTranspositions, 3).unwrap();
        assert!(!commutes(&star, &skewed).unwrap());
    }

    #[test]
    fn jacobi_spectrum_n3() {
        let star =
            numeric_eig_multiset(&SparseScaledMatrix::build(Chain::StarTranspositions, 3).unwrap())
                .unwrap();
        let want = [-1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0, 2.0 / 3.0, 1.0];
        for (a, b) in star.iter().zip(want) {
            assert!((a - b).abs() < 1e-8);
        }
        let rt = numeric_eig_multiset(
            &SparseScaledMatrix::build(Chain::RandomTranspositions, 3).unwrap(),
        )
        .unwrap();
        let want = [-1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0];
        for (a, b) in rt.iter().zip(want) {
            assert!((a - b).abs() < 1e-8);
        }
        let skewed = SparseScaledMatrix::from_generators(3, 1, &[(vec![1, 2, 0], 3)]).unwrap();
        assert!(matches!(
            numeric_eig_multiset(&skewed),
            Err(Error::NotSymmetric)
        ));
        assert!(numeric_eig_multiset(
            &SparseScaledMatrix::build(Chain::StarTranspositions, 7).unwrap()
        )
        .is_err());
    }

    #[test]
    fn l2_check_at_time_zero() {
        let c = l2_comparison_check(4, 0, 0).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert_eq!(c.rhs, 0.0);
        assert!(l2_comparison_check(7, 1, 1).is_err());
    }
}
