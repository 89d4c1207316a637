//! Kostka numbers, permutation characters and the character table of `S_n`.
//!
//! The table is obtained from Young's rule `K^t C = D`: the Kostka matrix `K`
//! is unit upper-triangular in decreasing lexicographic order, so `C` follows
//! from `D` by forward substitution in exact integers.

use std::collections::HashMap;

use num::BigInt;
use serde::Serialize;

use crate::error::{check_cap, reject, violation, Result};
use crate::linalg::determinant;
use crate::partitions::{enumerate_partitions, fat_list, split, Partition};

/// Largest `n` for which the library builds a full character table.
pub const MAX_TABLE_N: usize = 14;

#[derive(Default)]
struct KostkaMemo {
    memo: HashMap<(Vec<usize>, Vec<usize>), u64>,
}

impl KostkaMemo {
    /// Semistandard fillings of `shape` using the first `len` content values.
    /// The largest value occupies a horizontal strip of size `content[len-1]`.
    fn count(&mut self, shape: &[usize], content: &[usize], len: usize) -> u64 {
        if len == 0 {
            return u64::from(shape.iter().all(|&s| s == 0));
        }
        if shape.iter().sum::<usize>() != content[..len].iter().sum::<usize>() {
            return 0;
        }
        // Values 1..=len fill at most `len` rows.
        if shape.iter().filter(|&&s| s > 0).count() > len {
            return 0;
        }
        let key = (shape.to_vec(), content[..len].to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let strip = content[len - 1];
        let mut inner = shape.to_vec();
        let mut total = 0;
        self.strips(shape, 0, strip, &mut inner, content, len, &mut total);
        self.memo.insert(key, total);
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn strips(
        &mut self,
        shape: &[usize],
        row: usize,
        remaining: usize,
        inner: &mut Vec<usize>,
        content: &[usize],
        len: usize,
        total: &mut u64,
    ) {
        if row == shape.len() {
            if remaining == 0 {
                let trimmed: Vec<usize> = inner.iter().copied().filter(|&x| x > 0).collect();
                *total += self.count(&trimmed, content, len - 1);
            }
            return;
        }
        // Interlacing: shape[row+1] <= inner[row] <= shape[row].
        let floor = shape.get(row + 1).copied().unwrap_or(0);
        let max_take = (shape[row] - floor).min(remaining);
        for take in 0..=max_take {
            inner[row] = shape[row] - take;
            self.strips(shape, row + 1, remaining - take, inner, content, len, total);
        }
        inner[row] = shape[row];
    }
}

fn same_n(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return reject(format!("partitions of different sizes: {a} vs {b}"));
    }
    Ok(())
}

/// Number of semistandard tableaux of the given shape and content.
pub fn kostka_number(shape: &Partition, content: &Partition) -> Result<u64> {
    same_n(shape, content)?;
    Ok(KostkaMemo::default().count(shape.parts(), content.parts(), content.len()))
}

/// Number of `shape`-tabloids fixed by a permutation of the given cycle type:
/// the ways of assigning the (distinguishable) cycles to rows so that every
/// row is exactly filled.
pub fn perm_character(shape: &Partition, cycle_type: &Partition) -> Result<u64> {
    same_n(shape, cycle_type)?;
    Ok(PermCharCounter::new(cycle_type).count(shape.parts()))
}

struct PermCharCounter {
    /// (cycle length, multiplicity), longest first.
    groups: Vec<(usize, usize)>,
    factorials: Vec<u64>,
    memo: HashMap<(usize, Vec<usize>), u64>,
}

impl PermCharCounter {
    fn new(cycle_type: &Partition) -> Self {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &c in cycle_type.parts() {
            match groups.last_mut() {
                Some((len, mult)) if *len == c => *mult += 1,
                _ => groups.push((c, 1)),
            }
        }
        let n = cycle_type.n();
        let factorials = (0..=n).scan(1u64, |acc, i| {
            if i > 0 {
                *acc *= i as u64;
            }
            Some(*acc)
        });
        PermCharCounter {
            groups,
            factorials: factorials.collect(),
            memo: HashMap::new(),
        }
    }

    fn count(&mut self, rows: &[usize]) -> u64 {
        self.go(0, rows.to_vec())
    }

    fn go(&mut self, g: usize, caps: Vec<usize>) -> u64 {
        if g == self.groups.len() {
            return u64::from(caps.iter().all(|&c| c == 0));
        }
        let key = (g, caps.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (len, mult) = self.groups[g];
        let mut total = 0u64;
        let mut counts = vec![0usize; caps.len()];
        self.distribute(g, len, mult, 0, &caps, &mut counts, &mut total);
        self.memo.insert(key, total);
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &mut self,
        g: usize,
        len: usize,
        left: usize,
        row: usize,
        caps: &[usize],
        counts: &mut Vec<usize>,
        total: &mut u64,
    ) {
        if row == caps.len() {
            if left == 0 {
                let mult = self.groups[g].1;
                let mut ways = self.factorials[mult];
                for &c in counts.iter() {
                    ways /= self.factorials[c];
                }
                let next: Vec<usize> = caps.iter().zip(counts.iter()).map(|(&cap, &c)| cap - c * len).collect();
                *total += ways * self.go(g + 1, next);
            }
            return;
        }
        let max = (caps[row] / len).min(left);
        for c in 0..=max {
            counts[row] = c;
            self.distribute(g, len, left - c, row + 1, caps, counts, total);
        }
        counts[row] = 0;
    }
}

/// Square integer matrix indexed by the partitions of `n` in decreasing
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionMatrix {
    pub n: usize,
    pub order: Vec<Partition>,
    pub rows: Vec<Vec<i64>>,
}

impl PartitionMatrix {
    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row[..i].iter().all(|&x| x == 0))
    }
}

/// `K[λ][μ]`, the number of semistandard λ-tableaux of content μ.
pub fn kostka_matrix(n: usize) -> PartitionMatrix {
    let order = enumerate_partitions(n);
    let mut memo = KostkaMemo::default();
    let rows = order
        .iter()
        .map(|shape| {
            order
                .iter()
                .map(|content| memo.count(shape.parts(), content.parts(), content.len()) as i64)
                .collect()
        })
        .collect();
    PartitionMatrix { n, order, rows }
}

/// `D[λ][μ] = ξ_λ(σ_μ)`, fixed λ-tabloids of a permutation of type μ.
pub fn perm_char_matrix(n: usize) -> PartitionMatrix {
    let order = enumerate_partitions(n);
    let counters: Vec<PermCharCounter> = order.iter().map(PermCharCounter::new).collect();
    let mut counters = counters;
    let rows = order
        .iter()
        .map(|shape| counters.iter_mut().map(|c| c.count(shape.parts()) as i64).collect())
        .collect();
    PartitionMatrix { n, order, rows }
}

/// The character table: `rows[λ][μ] = χ_λ(σ_μ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub order: Vec<Partition>,
    pub rows: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `χ_rep` at the class with cycle type `class`.
    pub fn value(&self, rep: &Partition, class: &Partition) -> i64 {
        let i = self
            .index_of(rep)
            .unwrap_or_else(|| panic!("{rep} is not a partition of {}", self.n));
        let j = self
            .index_of(class)
            .unwrap_or_else(|| panic!("{class} is not a partition of {}", self.n));
        self.rows[i][j]
    }

    pub fn row(&self, rep: &Partition) -> &[i64] {
        &self.rows[self.index_of(rep).expect("unknown partition")]
    }

    /// CSV with a header of class labels; each row starts with its label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rep");
        for p in &self.order {
            out.push(',');
            out.push_str(&p.label());
        }
        out.push('\n');
        for (p, row) in self.order.iter().zip(&self.rows) {
            out.push_str(&p.label());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Builds the character table of `S_n` from `K^t C = D`.
pub fn character_table(n: usize) -> Result<CharacterTable> {
    if n == 0 {
        return reject("character table needs n >= 1");
    }
    check_cap("character table n", n, MAX_TABLE_N)?;
    let k = kostka_matrix(n);
    let d = perm_char_matrix(n);
    let size = k.order.len();
    for i in 0..size {
        if k.rows[i][i] != 1 {
            return violation(format!("Kostka diagonal at {} is {}", k.order[i], k.rows[i][i]));
        }
        if d.rows[i][i] <= 0 {
            return violation(format!(
                "permutation character diagonal at {} is not positive",
                d.order[i]
            ));
        }
    }
    if !k.is_upper_triangular() || !d.is_upper_triangular() {
        return violation(format!("K or D is not upper-triangular at n={n}"));
    }
    // K^t is unit lower-triangular: C[i][c] = D[i][c] - sum_{j<i} K[j][i] C[j][c].
    let mut rows = vec![vec![0i64; size]; size];
    for c in 0..size {
        for i in 0..size {
            let mut acc = d.rows[i][c] as i128;
            for j in 0..i {
                acc -= k.rows[j][i] as i128 * rows[j][c] as i128;
            }
            rows[i][c] = i64::try_from(acc).expect("character value overflows i64");
        }
    }
    let index = k.order.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(CharacterTable {
        n,
        order: k.order,
        rows,
        index,
    })
}

/// A labelled square minor of the character table with its exact determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minor {
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
    pub determinant: String,
}

fn build_minor(table: &CharacterTable, rows: Vec<Partition>, cols: Vec<Partition>) -> Minor {
    let entries: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| table.value(r, c)).collect())
        .collect();
    let big: Vec<Vec<BigInt>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Minor {
        determinant: determinant(&big).to_string(),
        rows,
        cols,
        entries,
    }
}

/// Partitions strictly above `(n-k, 1^k)`, decreasing.
pub fn above_hook(n: usize, k: usize) -> Result<Vec<Partition>> {
    let mut list = fat_list(n, k)?;
    list.pop();
    Ok(list)
}

/// The top-left minor over partitions `> (n-k, 1^k)`, certified invertible.
pub fn minor_tilde(table: &CharacterTable, k: usize) -> Result<Minor> {
    let n = table.n;
    if n <= 2 * k {
        return reject(format!("minor_tilde needs n > 2k (n={n}, k={k})"));
    }
    let phis = above_hook(n, k)?;
    let minor = build_minor(table, phis.clone(), phis);
    if minor.determinant == "0" {
        return violation(format!("top-left minor is singular at n={n}, k={k}"));
    }
    Ok(minor)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitChoice {
    Keep,
    Split,
}

/// Minor with rows `φ_i` and columns `φ_i` or `split(φ_i)`, which must equal
/// the top-left minor.
pub fn minor_breve(table: &CharacterTable, k: usize, choices: &[SplitChoice]) -> Result<Minor> {
    let n = table.n;
    if n <= 3 * k + 1 {
        return reject(format!("minor_breve needs n > 3k+1 (n={n}, k={k})"));
    }
    let phis = above_hook(n, k)?;
    if choices.len() != phis.len() {
        return reject(format!("expected {} split choices, got {}", phis.len(), choices.len()));
    }
    let cols = phis
        .iter()
        .zip(choices)
        .map(|(p, c)| match c {
            SplitChoice::Keep => Ok(p.clone()),
            SplitChoice::Split => split(p, k),
        })
        .collect::<Result<Vec<_>>>()?;
    let breve = build_minor(table, phis, cols);
    let tilde = minor_tilde(table, k)?;
    if breve.entries != tilde.entries {
        return violation(format!("split minor differs from the top-left minor at n={n}, k={k}"));
    }
    Ok(breve)
}
