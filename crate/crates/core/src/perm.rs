//! Permutations of `[n]` in one-line notation, 0-based internally.
//!
//! Composition follows `(a ∘ b)(i) = a(b(i))`. Ranks are Lehmer-code ranks,
//! which coincide with the lexicographic rank of the one-line notation; the
//! identity has rank 0. Serialized group functions and families rely on this
//! indexing, so it must not change.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{reject, Result};
use crate::partitions::Partition;

/// Serialized in 1-based one-line notation, e.g. `[2,1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<u8>);

impl TryFrom<Vec<usize>> for Perm {
    type Error = crate::error::Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::from_one_based(&images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.0.iter().map(|&x| x as usize + 1).collect()
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Builds from 0-based images, validating that they form a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return reject(format!("not a permutation: {images:?}"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.iter().any(|&x| x == 0 || x > 255) {
            return reject(format!("not a 1-based permutation: {images:?}"));
        }
        Self::from_images(images.iter().map(|&x| (x - 1) as u8).collect())
    }

    /// Builds from disjoint cycles written 1-based, e.g. `[[1, 2], [3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return reject(format!("cycle entry out of range in {cycle:?}"));
                }
                images[a - 1] = (b - 1) as u8;
            }
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()
    }

    /// Number of points on which the two permutations agree.
    pub fn agreements(&self, other: &Perm) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths())
    }

    pub fn is_even(&self) -> bool {
        (self.n() - self.cycle_lengths().len()).is_multiple_of(2)
    }

    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        Perm(digits.into_iter().map(|d| pool.remove(d)).collect())
    }
}

impl fmt::Display for Perm {
    /// 1-based one-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All permutations of `[n]` in rank order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    (0..factorial(n) as usize).map(|r| Perm::unrank(n, r)).collect()
}

/// Ordered `k`-tuples of distinct elements of `ground`, lexicographic in the
/// order of `ground`.
pub fn tuples_over(ground: &[u8], k: usize) -> Vec<Vec<u8>> {
    fn rec(ground: &[u8], k: usize, used: &mut Vec<bool>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (idx, &g) in ground.iter().enumerate() {
            if !used[idx] {
                used[idx] = true;
                cur.push(g);
                rec(ground, k, used, cur, out);
                cur.pop();
                used[idx] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(ground, k, &mut vec![false; ground.len()], &mut Vec::new(), &mut out);
    out
}

/// Ordered `k`-tuples of distinct elements of `[n]` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<u8>> {
    let ground: Vec<u8> = (0..n as u8).collect();
    tuples_over(&ground, k)
}

/// Falling factorial `(n)_k`.
pub fn falling(n: usize, k: usize) -> usize {
    (0..k).map(|i| n - i).product()
}
