//! Lehmer-code ranking of permutations in one-line notation (0-based).

use crate::error::{domain, Error, Result};

/// Largest deck size for which ranks are offered.
pub const MAX_RANK_N: usize = 10;

/// Position of a permutation of `0..n` in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermIndex {
    pub rank: usize,
    pub n: usize,
}

impl PermIndex {
    pub fn identity(n: usize) -> Self {
        PermIndex { rank: 0, n }
    }
}

pub fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_RANK_N {
        return Err(Error::SizeLimit {
            what: "permutation rank",
            n,
            max: MAX_RANK_N,
        });
    }
    Ok(())
}

pub fn perm_rank(perm: &[usize]) -> Result<PermIndex> {
    let n = perm.len();
    check_size(n)?;
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(domain(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(PermIndex {
        rank: rank_unchecked(perm),
        n,
    })
}

pub fn perm_unrank(idx: PermIndex) -> Result<Vec<usize>> {
    check_size(idx.n)?;
    if idx.rank >= factorial_usize(idx.n) {
        return Err(domain(format!(
            "rank {} out of range for n = {}",
            idx.rank, idx.n
        )));
    }
    let mut out = vec![0; idx.n];
    unrank_into(idx.rank, &mut out);
    Ok(out)
}

pub(crate) fn rank_unchecked(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub(crate) fn unrank_into(mut rank: usize, out: &mut [usize]) {
    let n = out.len();
    // factorial-radix digits, least significant last
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let radix = n - i;
        digits[i] = rank % radix;
        rank /= radix;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    for (slot, d) in out.iter_mut().zip(digits) {
        *slot = pool.remove(d);
    }
}
