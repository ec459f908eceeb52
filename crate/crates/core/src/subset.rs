//! Colex ranking of k-subsets of `{0, ..., n-1}`.
//!
//! `rank(A) = sum_i C(a_i, i + 1)` for `a_0 < a_1 < ... < a_{k-1}`. The rank
//! is independent of `n`, so the same integer names a subset in every
//! universe that contains it.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::BitIter;

/// Largest universe the codec supports.
pub const MAX_UNIVERSE: usize = 64;

/// `C(n, k)`, or `None` on `u64` overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = acc as u128 * (n - i) as u128 / (i + 1) as u128;
        acc = u64::try_from(num).ok()?;
    }
    Some(acc)
}

/// A strictly increasing list of `k` vertices below `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    members: Vec<usize>,
    n: usize,
}

impl KSubset {
    /// Accepts members in any order; rejects duplicates and out-of-range entries.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::NoSuchVertex { vertex: v, n });
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("repeated member".into()));
        }
        Ok(KSubset { members, n })
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n == 64 || mask >> n == 0);
        KSubset {
            members: BitIter(mask).collect(),
            n,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Bitmask form; only valid for universes of at most 64 vertices.
    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    /// `V \ A` within the same universe.
    pub fn complement(&self) -> KSubset {
        let members = (0..self.n).filter(|v| !self.contains(*v)).collect();
        KSubset { members, n: self.n }
    }

    /// Symmetric difference with another subset of the same universe.
    pub fn symmetric_difference(&self, other: &KSubset) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .members
            .iter()
            .filter(|v| !other.contains(**v))
            .chain(other.members.iter().filter(|v| !self.contains(**v)))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Bijection between k-subsets of an n-set and `0..C(n,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCodec {
    n: usize,
    k: usize,
    /// `table[i][j] = C(i, j)` for `i <= n`, `j <= k`.
    table: Vec<Vec<u64>>,
}

impl SubsetCodec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > MAX_UNIVERSE {
            return Err(Error::SizeLimitExceeded {
                what: "subset universe",
                size: n,
                limit: MAX_UNIVERSE,
            });
        }
        if k > n {
            return Err(Error::BadK { n, k });
        }
        let mut table = vec![vec![0u64; k + 1]; n + 1];
        for i in 0..=n {
            table[i][0] = 1;
            for j in 1..=k.min(i) {
                let above = if j < i { table[i - 1][j] } else { 0 };
                table[i][j] = table[i - 1][j - 1]
                    .checked_add(above)
                    .expect("C(n,k) fits in u64 for n <= 64");
            }
        }
        Ok(SubsetCodec { n, k, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `C(n, k)`.
    pub fn count(&self) -> u64 {
        self.table[self.n][self.k]
    }

    fn c(&self, i: usize, j: usize) -> u64 {
        if j > i {
            0
        } else {
            self.table[i][j]
        }
    }

    pub fn rank(&self, s: &KSubset) -> u64 {
        debug_assert_eq!(s.len(), self.k);
        debug_assert_eq!(s.universe(), self.n);
        s.members
            .iter()
            .enumerate()
            .map(|(i, &a)| self.c(a, i + 1))
            .sum()
    }

    pub fn rank_mask(&self, mask: u64) -> u64 {
        debug_assert_eq!(mask.count_ones() as usize, self.k);
        BitIter(mask)
            .enumerate()
            .map(|(i, a)| self.c(a, i + 1))
            .sum()
    }

    /// Members of the subset of rank `r`, in increasing order.
    fn unrank_members(&self, mut r: u64) -> Vec<usize> {
        let mut members = vec![0; self.k];
        let mut hi = self.n;
        for i in (1..=self.k).rev() {
            // largest a < hi with C(a, i) <= r
            let mut a = hi - 1;
            while self.c(a, i) > r {
                a -= 1;
            }
            members[i - 1] = a;
            r -= self.c(a, i);
            hi = a;
        }
        members
    }

    pub fn unrank(&self, r: u64) -> Result<KSubset> {
        self.check_rank(r)?;
        Ok(KSubset {
            members: self.unrank_members(r),
            n: self.n,
        })
    }

    pub fn unrank_mask(&self, r: u64) -> Result<u64> {
        self.check_rank(r)?;
        Ok(self.unrank_members(r).iter().fold(0, |acc, &v| acc | 1 << v))
    }

    fn check_rank(&self, r: u64) -> Result<()> {
        if r < self.count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                rank: r,
                n: self.n,
                k: self.k,
                count: self.count(),
            })
        }
    }

    /// All subsets as masks, in rank order.
    pub fn masks(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.count() as usize);
        if self.k == 0 {
            out.push(0);
            return out;
        }
        // Gosper's hack enumerates equal-popcount words in increasing
        // numeric order, which is exactly colex order.
        let mut x: u64 = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        let limit = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        loop {
            out.push(x);
            if out.len() as u64 == self.count() {
                break;
            }
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
            debug_assert!(x <= limit);
        }
        out
    }
}
