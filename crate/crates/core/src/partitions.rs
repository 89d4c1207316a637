//! Integer partitions: orders, transposes, hooks, irreducible dimensions and
//! the fat/tall/medium classification relative to `k`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One};
use serde::{Deserialize, Serialize};

use crate::error::{reject, Error, Result};

/// A partition of `n`: positive parts in non-increasing order.
///
/// Doubles as a cycle type and as the label of an irreducible representation.
/// The derived ordering is lexicographic on parts, which is the usual
/// lexicographic order for partitions of the same `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionClass {
    Trivial,
    Fat,
    Tall,
    Medium,
    Sign,
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionClass::Trivial => "trivial",
            PartitionClass::Fat => "fat",
            PartitionClass::Tall => "tall",
            PartitionClass::Medium => "medium",
            PartitionClass::Sign => "sign",
        };
        f.write_str(s)
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return reject("a partition needs at least one part");
        }
        if parts.contains(&0) {
            return reject(format!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return reject(format!("partition parts must be non-increasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros. Panics on an all-zero input.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(!parts.is_empty(), "empty partition");
        Partition { parts }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(n-k, 1^k)`; requires `n-k >= 1`.
    pub fn hook(n: usize, k: usize) -> Self {
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.parts[0]
    }

    /// Multiplicity of `part`.
    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Parity of the conjugacy class with this cycle type.
    pub fn is_even_class(&self) -> bool {
        (self.n() - self.len()).is_multiple_of(2)
    }

    /// Sign character value at this cycle type.
    pub fn sign(&self) -> i64 {
        if self.is_even_class() {
            1
        } else {
            -1
        }
    }

    pub fn transpose(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// Hook lengths row by row over the Young diagram.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let cols = self.transpose();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| (row - j - 1) + (cols.parts[j] - i - 1) + 1).collect())
            .collect()
    }

    pub fn hook_product(&self) -> BigInt {
        self.hook_lengths()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, &h| acc * h)
    }

    /// Dimension of the irreducible representation, by the hook length formula.
    pub fn dim(&self) -> u64 {
        let n_fact: BigInt = (1..=self.n()).fold(BigInt::one(), |acc, i| acc * i);
        let hooks = self.hook_product();
        let (q, r) = num::Integer::div_rem(&n_fact, &hooks);
        assert!(num::Zero::is_zero(&r), "hook product does not divide n! for {self}");
        u64::try_from(q).expect("dimension overflows u64")
    }

    /// Label in decreasing form `3+2+2`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3+2+2`, `3,2,2` or the JSON form `[3,2,2]`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = trimmed
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn same_n(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return reject(format!("partitions of different sizes: {a} vs {b}"));
    }
    Ok(())
}

/// All partitions of `n` in strictly decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    assert!(n >= 1, "partitions of n need n >= 1");
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partition numbers `p_0, ..., p_n`.
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

/// Dominance order: every prefix sum of `a` is at least that of `b`.
pub fn dominates(a: &Partition, b: &Partition) -> Result<bool> {
    same_n(a, b)?;
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..len {
        sa += a.parts.get(i).copied().unwrap_or(0);
        sb += b.parts.get(i).copied().unwrap_or(0);
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn lex_compare(a: &Partition, b: &Partition) -> Result<Ordering> {
    same_n(a, b)?;
    Ok(a.cmp(b))
}

/// `(p_1 - k - 1, k + 1, p_2, ...)`, flipping the class parity.
pub fn split(p: &Partition, k: usize) -> Result<Partition> {
    let n = p.n();
    if k == 0 || n <= 3 * k + 1 {
        return reject(format!("split needs n > 3k+1 (n={n}, k={k})"));
    }
    if p.first() < n - k {
        return reject(format!("split needs first part >= n-k, got {p} with k={k}"));
    }
    let mut parts = vec![p.first() - k - 1, k + 1];
    parts.extend_from_slice(&p.parts[1..]);
    Partition::new(parts)
}

/// Fat/tall/medium label relative to `k`. Requires `n >= 2k+1`.
pub fn classify(p: &Partition, k: usize) -> Result<PartitionClass> {
    let n = p.n();
    if n < 2 * k + 1 {
        return reject(format!("classification needs n >= 2k+1 (n={n}, k={k})"));
    }
    Ok(if p.len() == 1 {
        PartitionClass::Trivial
    } else if p.first() == 1 {
        PartitionClass::Sign
    } else if p.first() + k >= n {
        PartitionClass::Fat
    } else if p.len() + k >= n {
        PartitionClass::Tall
    } else {
        PartitionClass::Medium
    })
}

/// All partitions `>= (n-k, 1^k)` in decreasing lexicographic order.
pub fn fat_list(n: usize, k: usize) -> Result<Vec<Partition>> {
    if n < 2 * k || n == 0 {
        return reject(format!("fat_list needs n >= 2k (n={n}, k={k})"));
    }
    let hook = Partition::hook(n, k);
    Ok(enumerate_partitions(n).into_iter().filter(|p| *p >= hook).collect())
}

/// Exact form of the long-row hook inequality:
/// `prod hooks <= t! (n-t)! (1 + t/(n-t))^(n-t)` where `n-t` is the longest
/// row or column. Both sides are scaled by `(n-t)^(n-t)` to stay integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongRowInequality {
    pub t: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

pub fn long_row_inequality(p: &Partition) -> LongRowInequality {
    let n = p.n();
    let long = p.first().max(p.len());
    let t = n - long;
    let m = n - t;
    let fact = |x: usize| (1..=x).fold(BigInt::one(), |acc, i| acc * i);
    let lhs = p.hook_product() * num::pow(BigInt::from(m), m);
    let rhs = fact(t) * fact(m) * num::pow(BigInt::from(n), m);
    LongRowInequality {
        t,
        holds: lhs <= rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimBoundReport {
    pub n: usize,
    pub k: usize,
    pub min_medium_dim: u64,
    pub min_medium_partitions: Vec<Partition>,
    pub long_row_checks: bool,
    pub long_row_checked: usize,
}

pub fn dim_bound_report(n: usize, k: usize) -> Result<DimBoundReport> {
    if n < 2 * k + 2 {
        return reject(format!("dim_bound_report needs n >= 2k+2 (n={n}, k={k})"));
    }
    let all = enumerate_partitions(n);
    let mut min_dim = u64::MAX;
    let mut argmin = Vec::new();
    let mut checked = 0;
    let mut ok = true;
    for p in &all {
        if classify(p, k)? == PartitionClass::Medium {
            let d = p.dim();
            match d.cmp(&min_dim) {
                Ordering::Less => {
                    min_dim = d;
                    argmin = vec![p.clone()];
                }
                Ordering::Equal => argmin.push(p.clone()),
                Ordering::Greater => {}
            }
        }
        let t = n - p.first().max(p.len());
        if t > k && 2 * t < n {
            checked += 1;
            ok &= long_row_inequality(p).holds;
        }
    }
    if argmin.is_empty() {
        return reject(format!("no medium partitions of {n} for k={k}"));
    }
    Ok(DimBoundReport {
        n,
        k,
        min_medium_dim: min_dim,
        min_medium_partitions: argmin,
        long_row_checks: ok,
        long_row_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Brute force: all non-increasing compositions, unsorted output.
    fn brute_count(n: usize) -> usize {
        fn rec(rem: usize, max: usize) -> usize {
            if rem == 0 {
                return 1;
            }
            (1..=rem.min(max)).map(|x| rec(rem - x, x)).sum()
        }
        rec(n, n)
    }

    #[test]
    fn enumerates_in_decreasing_lex_order() {
        let four: Vec<Vec<usize>> = enumerate_partitions(4).iter().map(|q| q.parts.clone()).collect();
        assert_eq!(
            four,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        assert_eq!(enumerate_partitions(7).len(), brute_count(7));
        assert_eq!(brute_count(7), 15);
        for n in 1..=12 {
            let ps = enumerate_partitions(n);
            assert_eq!(ps.len() as u64, partition_numbers(n)[n]);
            assert!(ps.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!("3+x".parse::<Partition>().is_err());
        assert_eq!("3+2+2".parse::<Partition>().unwrap(), p(&[3, 2, 2]));
        assert_eq!("[3,1]".parse::<Partition>().unwrap(), p(&[3, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominates(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(dominates(&p(&[2, 2]), &p(&[2, 2])).unwrap());
        assert!(dominates(&p(&[3]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&p(&[3, 1]), &p(&[2, 2])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&p(&[2, 2]), &p(&[2, 2])).unwrap(), Ordering::Equal);
        assert!(lex_compare(&p(&[2]), &p(&[2, 1])).is_err());
    }

    #[test]
    fn lex_refines_dominance() {
        for n in 1..=9 {
            let ps = enumerate_partitions(n);
            for a in &ps {
                for b in &ps {
                    if dominates(a, b).unwrap() {
                        assert_ne!(lex_compare(a, b).unwrap(), Ordering::Less, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 2, 2]).transpose(), p(&[3, 3, 1]));
        assert_eq!(p(&[6]).transpose(), Partition::column(6));
        assert_eq!(p(&[2, 2]).transpose(), p(&[2, 2]));
        for n in 1..=10 {
            for q in enumerate_partitions(n) {
                assert_eq!(q.transpose().transpose(), q);
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(&p(&[9, 1]), 2).unwrap(), p(&[6, 3, 1]));
        assert_eq!(split(&p(&[6]), 1).unwrap(), p(&[4, 2]));
        assert_eq!(split(&p(&[8, 2]), 2).unwrap(), p(&[5, 3, 2]));
        assert!(split(&p(&[7, 1, 1]), 3).is_err(), "n=9 is not > 3k+1");
        assert!(split(&p(&[5, 5]), 2).is_err(), "first part below n-k");
    }

    #[test]
    fn split_flips_parity_and_keeps_ones() {
        for n in 2..=14 {
            for k in 1..=3 {
                if n <= 3 * k + 1 {
                    continue;
                }
                for q in enumerate_partitions(n).into_iter().filter(|q| q.first() >= n - k) {
                    let s = split(&q, k).unwrap();
                    assert_ne!(s.is_even_class(), q.is_even_class());
                    assert_eq!(s.multiplicity(1), q.multiplicity(1));
                }
            }
        }
    }

    #[test]
    fn hook_examples() {
        assert_eq!(p(&[2, 2]).hook_lengths(), vec![vec![3, 2], vec![2, 1]]);
        assert_eq!(p(&[4]).hook_lengths(), vec![vec![4, 3, 2, 1]]);
        assert_eq!(p(&[3, 1]).hook_lengths(), vec![vec![4, 2, 1], vec![1]]);
    }

    /// Counts standard Young tableaux by removing the largest entry from a corner.
    fn syt_count(parts: &[usize]) -> u64 {
        if parts.iter().sum::<usize>() <= 1 {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let is_corner = i + 1 == parts.len() || parts[i + 1] < parts[i];
            if is_corner {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                smaller.retain(|&x| x > 0);
                total += syt_count(&smaller);
            }
        }
        total
    }

    #[test]
    fn dims_match_tableau_counts() {
        assert_eq!(syt_count(&[2, 2]), 2);
        assert_eq!(p(&[2, 2]).dim(), 2);
        assert_eq!(p(&[4, 1]).dim(), 4);
        assert_eq!(Partition::column(5).dim(), 1);
        for n in 1..=9 {
            for q in enumerate_partitions(n) {
                assert_eq!(q.dim(), syt_count(q.parts()), "{q}");
            }
        }
    }

    #[test]
    fn dims_square_sum_and_transpose() {
        for n in 1..=12 {
            let mut total: u128 = 0;
            for q in enumerate_partitions(n) {
                total += (q.dim() as u128).pow(2);
                assert_eq!(q.dim(), q.transpose().dim());
            }
            assert_eq!(total, crate::perm::factorial(n) as u128);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&p(&[8, 1, 1]), 2).unwrap(), PartitionClass::Fat);
        assert_eq!(
            classify(&p(&[3, 1, 1, 1, 1, 1, 1, 1]), 2).unwrap(),
            PartitionClass::Tall
        );
        assert_eq!(classify(&p(&[5, 5]), 2).unwrap(), PartitionClass::Medium);
        assert_eq!(classify(&p(&[10]), 2).unwrap(), PartitionClass::Trivial);
        assert_eq!(classify(&Partition::column(10), 2).unwrap(), PartitionClass::Sign);
        assert!(classify(&p(&[2, 2]), 2).is_err());
    }

    #[test]
    fn fat_list_examples() {
        let l = fat_list(10, 2).unwrap();
        assert_eq!(l, vec![p(&[10]), p(&[9, 1]), p(&[8, 2]), p(&[8, 1, 1])]);
        assert_eq!(fat_list(10, 1).unwrap().len(), 2);
        assert_eq!(fat_list(12, 3).unwrap().len(), 7);
        let pn = partition_numbers(4);
        for n in 1..=14 {
            for k in 0..=4 {
                if n >= 2 * k {
                    let q: u64 = pn[..=k].iter().sum();
                    assert_eq!(fat_list(n, k).unwrap().len() as u64, q, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn dim_bound_examples() {
        let r = dim_bound_report(8, 1).unwrap();
        assert_eq!(r.min_medium_dim, 14);
        assert!(r.min_medium_partitions.contains(&p(&[4, 4])));
        assert!(dim_bound_report(6, 1).unwrap().long_row_checks);
        let ineq = long_row_inequality(&p(&[4, 1]));
        assert_eq!(ineq.t, 1);
        assert!(ineq.holds);
        // 30 * 4^4 <= 1! * 4! * 5^4
        assert_eq!(ineq.lhs, (30 * 256).to_string());
        assert_eq!(ineq.rhs, (24 * 625).to_string());
        assert!(dim_bound_report(5, 2).is_err());
        for n in 4..=14 {
            assert!(dim_bound_report(n, 1).unwrap().long_row_checks, "n={n}");
        }
    }
}
