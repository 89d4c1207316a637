//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

/// Murnaghan–Nakayama rule on beta-sets: remove rim hooks of length
/// `mu[idx]` one part at a time, with sign `(-1)^{leg length}`.
pub struct MnOracle {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MnOracle {
    pub fn new() -> Self {
        MnOracle { memo: HashMap::new() }
    }

    pub fn chi(&mut self, shape: &[usize], cycle_type: &[usize]) -> i64 {
        let len = shape.len();
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        self.rec(beta, cycle_type.to_vec())
    }

    fn rec(&mut self, beta: Vec<usize>, rest: Vec<usize>) -> i64 {
        let Some((&r, tail)) = rest.split_first() else {
            return 1;
        };
        let key = (beta.clone(), rest.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for i in 0..beta.len() {
            let b = beta[i];
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let between = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next = beta.clone();
            next[i] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.rec(next, tail.to_vec());
        }
        self.memo.insert(key, total);
        total
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|X| = n! / z_μ`.
pub fn class_size(mu: &[usize]) -> u128 {
    let n: usize = mu.iter().sum();
    let mut z: u128 = 1;
    let mut counts: HashMap<usize, u32> = HashMap::new();
    for &p in mu {
        *counts.entry(p).or_default() += 1;
    }
    for (p, a) in counts {
        z *= (p as u128).pow(a) * factorial(a as usize);
    }
    factorial(n) / z
}

/// Twelve permutations of `[5]` (one-line, 1-based) whose indicator is
/// Boolean and lies in `V_2` but contains no 2-coset.
pub const NO_COSET_V2: [[usize; 5]; 12] = [
    [1, 2, 4, 5, 3],
    [1, 3, 4, 5, 2],
    [1, 5, 4, 2, 3],
    [1, 5, 4, 3, 2],
    [2, 1, 3, 4, 5],
    [2, 3, 1, 4, 5],
    [2, 4, 1, 3, 5],
    [2, 4, 3, 1, 5],
    [3, 1, 4, 5, 2],
    [3, 2, 4, 5, 1],
    [3, 5, 4, 1, 2],
    [3, 5, 4, 2, 1],
];
