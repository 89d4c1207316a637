//! Exact functions on `S_n` for small `n`.
//!
//! Values are indexed by Lehmer rank (rank 0 is the identity). Convolution
//! carries the `1/|G|` normalization, so the isotypic projection onto `λ` is
//! `dim λ · (χ_λ * f)` and `Af = |G| (1_X * f)` for a Cayley adjacency matrix.
//! No matrix representations are ever built: every Fourier statement is made
//! through class sums against the character table.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::AddAssign;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{check_cap, reject, violation, Error, Result};
use crate::linalg::integer_rank;
use crate::partitions::Partition;
use crate::perm::{all_perms, factorial, falling, tuples, Perm};
use crate::rational::{common_denominator, int, Rational};

/// Largest `n` for convolution and projections.
pub const MAX_GROUP_N: usize = 7;
/// Largest `n` for exact span-rank computations.
pub const MAX_RANK_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroupFunction")]
pub struct GroupFunction {
    pub n: usize,
    #[serde(with = "crate::rational::vec")]
    pub values: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawGroupFunction {
    n: usize,
    #[serde(with = "crate::rational::vec")]
    values: Vec<Rational>,
}

impl TryFrom<RawGroupFunction> for GroupFunction {
    type Error = Error;

    fn try_from(raw: RawGroupFunction) -> Result<Self> {
        GroupFunction::new(raw.n, raw.values)
    }
}

impl GroupFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        check_cap("group function n", n, MAX_GROUP_N)?;
        if values.len() as u64 != factorial(n) {
            return reject(format!(
                "a function on S_{n} needs {} values, got {}",
                factorial(n),
                values.len()
            ));
        }
        Ok(GroupFunction { n, values })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![Rational::zero(); factorial(n) as usize])
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        Self::new(n, vec![c; factorial(n) as usize])
    }

    /// Indicator of the identity.
    pub fn delta(n: usize) -> Result<Self> {
        let mut f = Self::zero(n)?;
        f.values[0] = int(1);
        Ok(f)
    }

    pub fn sign(n: usize) -> Result<Self> {
        check_cap("group function n", n, MAX_GROUP_N)?;
        Self::new(
            n,
            all_perms(n)
                .iter()
                .map(|p| int(if p.is_even() { 1 } else { -1 }))
                .collect(),
        )
    }

    pub fn indicator<'a>(n: usize, members: impl IntoIterator<Item = &'a Perm>) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for p in members {
            if p.n() != n {
                return reject(format!("permutation {p} is not in S_{n}"));
            }
            f.values[p.rank()] = int(1);
        }
        Ok(f)
    }

    /// The class function taking value `χ_λ` on each permutation.
    pub fn character(lambda: &Partition, table: &CharacterTable) -> Result<Self> {
        check_cap("group function n", table.n, MAX_GROUP_N)?;
        let row = table.row(lambda);
        let classes = ClassIndex::new(table)?;
        Self::new(table.n, classes.class_of.iter().map(|&c| int(row[c])).collect())
    }

    pub fn value(&self, p: &Perm) -> &Rational {
        &self.values[p.rank()]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same_n(self, other)?;
        GroupFunction::new(
            self.n,
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same_n(self, other)?;
        GroupFunction::new(
            self.n,
            self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> GroupFunction {
        GroupFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `⟨f, g⟩ = Σ_σ f(σ) g(σ)`.
    pub fn inner(&self, other: &GroupFunction) -> Result<Rational> {
        same_n(self, other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum())
    }
}

fn same_n(f: &GroupFunction, g: &GroupFunction) -> Result<()> {
    if f.n != g.n {
        return reject(format!("functions on S_{} and S_{}", f.n, g.n));
    }
    Ok(())
}

/// Permutations of `S_n` in rank order with their inverses and class indices.
struct ClassIndex {
    perms: Vec<Perm>,
    inverse_rank: Vec<usize>,
    /// Index into the character table's class order.
    class_of: Vec<usize>,
}

impl ClassIndex {
    fn new(table: &CharacterTable) -> Result<Self> {
        let perms = all_perms(table.n);
        let inverse_rank = perms.iter().map(|p| p.inverse().rank()).collect();
        let class_of = perms
            .iter()
            .map(|p| table.index_of(&p.cycle_type()).expect("cycle type missing from table"))
            .collect();
        Ok(ClassIndex {
            perms,
            inverse_rank,
            class_of,
        })
    }
}

/// Integer numerators over a common denominator, as `i128` when the caller's
/// magnitude budget allows, else `BigInt`.
enum Scaled {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

fn scale_to_integers(values: &[Rational], budget_bits: u64) -> (Scaled, BigInt) {
    let d = common_denominator(values);
    let nums: Vec<BigInt> = values.iter().map(|v| v.numer() * (&d / v.denom())).collect();
    let fits = nums.iter().all(|a| a.bits() <= budget_bits);
    if fits {
        (
            Scaled::Small(
                nums.iter()
                    .map(|a| a.to_i128().expect("checked by bit budget"))
                    .collect(),
            ),
            d,
        )
    } else {
        (Scaled::Big(nums), d)
    }
}

fn bits_for(count: usize) -> u64 {
    usize::BITS as u64 - count.leading_zeros() as u64
}

/// `f * g (t) = (1/|G|) Σ_s f(t s^{-1}) g(s)`.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    same_n(f, g)?;
    let n = f.n;
    let perms = all_perms(n);
    let order = perms.len();
    let inverses: Vec<Perm> = perms.iter().map(|p| p.inverse()).collect();
    // Each product term is bounded by 2^(2b); |G| of them must fit in 126 bits.
    let budget = (126 - bits_for(order)) / 2;
    let (fa, fd) = scale_to_integers(&f.values, budget);
    let (ga, gd) = scale_to_integers(&g.values, budget);
    let g_support = g.support();
    let numerators: Vec<BigInt> = match (fa, ga) {
        (Scaled::Small(fa), Scaled::Small(ga)) => convolve_kernel(&perms, &inverses, &g_support, &fa, &ga)
            .into_iter()
            .map(BigInt::from)
            .collect(),
        (fa, ga) => {
            let to_big = |s: Scaled| match s {
                Scaled::Small(v) => v.into_iter().map(BigInt::from).collect::<Vec<_>>(),
                Scaled::Big(v) => v,
            };
            convolve_kernel(&perms, &inverses, &g_support, &to_big(fa), &to_big(ga))
        }
    };
    let denom = fd * gd * BigInt::from(order);
    GroupFunction::new(
        n,
        numerators
            .into_iter()
            .map(|a| Rational::new(a, denom.clone()))
            .collect(),
    )
}

fn convolve_kernel<T>(perms: &[Perm], inverses: &[Perm], g_support: &[usize], fa: &[T], ga: &[T]) -> Vec<T>
where
    T: Zero + Clone + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    perms
        .iter()
        .map(|t| {
            let mut acc = T::zero();
            for &s in g_support {
                let u = t.compose(&inverses[s]).rank();
                acc += &(&fa[u] * &ga[s]);
            }
            acc
        })
        .collect()
}

/// `S_t[c] = Σ_s [t s^{-1} ∈ class c] f(s)`, scaled by a common denominator.
struct ClassSums {
    sums: Vec<Vec<BigInt>>,
    denom: BigInt,
}

fn class_sums(f: &GroupFunction, table: &CharacterTable) -> Result<ClassSums> {
    if f.n != table.n {
        return reject(format!("function on S_{} but table for n={}", f.n, table.n));
    }
    check_cap("group function n", f.n, MAX_GROUP_N)?;
    let idx = ClassIndex::new(table)?;
    let classes = table.order.len();
    let budget = 126 - bits_for(idx.perms.len());
    let (scaled, denom) = scale_to_integers(&f.values, budget);
    let support = f.support();
    let inverses: Vec<&Perm> = idx.inverse_rank.iter().map(|&r| &idx.perms[r]).collect();
    fn kernel<T: Zero + Clone + for<'a> AddAssign<&'a T>>(
        idx: &ClassIndex,
        inverses: &[&Perm],
        support: &[usize],
        a: &[T],
        classes: usize,
    ) -> Vec<Vec<T>> {
        idx.perms
            .iter()
            .map(|t| {
                let mut row = vec![T::zero(); classes];
                for &s in support {
                    let c = idx.class_of[t.compose(inverses[s]).rank()];
                    row[c] += &a[s];
                }
                row
            })
            .collect()
    }
    let sums = match scaled {
        Scaled::Small(a) => kernel(&idx, &inverses, &support, &a, classes)
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
        Scaled::Big(a) => kernel(&idx, &inverses, &support, &a, classes),
    };
    Ok(ClassSums { sums, denom })
}

impl ClassSums {
    /// Numerators of `|G| · P_λ f / dim λ`, i.e. `Σ_c χ_λ(c) S_t[c]`.
    fn projection_numerators(&self, chi: &[i64]) -> Vec<BigInt> {
        self.sums
            .iter()
            .map(|row| row.iter().zip(chi).map(|(s, &x)| s * x).sum())
            .collect()
    }
}

/// `P_λ f = dim λ · (χ_λ * f)`.
pub fn isotypic_project(f: &GroupFunction, lambda: &Partition, table: &CharacterTable) -> Result<GroupFunction> {
    if lambda.n() != f.n {
        return reject(format!("{lambda} is not a partition of {}", f.n));
    }
    let sums = class_sums(f, table)?;
    Ok(project_from_sums(&sums, lambda, table, f.n))
}

fn project_from_sums(sums: &ClassSums, lambda: &Partition, table: &CharacterTable, n: usize) -> GroupFunction {
    let nums = sums.projection_numerators(table.row(lambda));
    let denom = &sums.denom * BigInt::from(factorial(n));
    let dim = BigInt::from(lambda.dim());
    GroupFunction {
        n,
        values: nums
            .into_iter()
            .map(|a| Rational::new(a * &dim, denom.clone()))
            .collect(),
    }
}

/// All isotypic projections, in table order.
pub fn all_projections(f: &GroupFunction, table: &CharacterTable) -> Result<Vec<(Partition, GroupFunction)>> {
    let sums = class_sums(f, table)?;
    Ok(table
        .order
        .iter()
        .map(|l| (l.clone(), project_from_sums(&sums, l, table, f.n)))
        .collect())
}

/// Partitions with a nonzero isotypic projection, in table order.
pub fn fourier_support(f: &GroupFunction, table: &CharacterTable) -> Result<Vec<Partition>> {
    let sums = class_sums(f, table)?;
    Ok(table
        .order
        .iter()
        .filter(|l| sums.projection_numerators(table.row(l)).iter().any(|a| !a.is_zero()))
        .cloned()
        .collect())
}

/// The `k`-coset `T_{a_1 ↦ b_1, …, a_k ↦ b_k} = {σ : σ(a_t) = b_t}`.
/// Stored 0-based; serialized and displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLabel", into = "RawLabel")]
pub struct CosetLabel {
    sources: Vec<u8>,
    targets: Vec<u8>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawLabel {
    sources: Vec<usize>,
    targets: Vec<usize>,
}

impl TryFrom<RawLabel> for CosetLabel {
    type Error = Error;

    fn try_from(raw: RawLabel) -> Result<Self> {
        if raw.sources.iter().chain(&raw.targets).any(|&x| x == 0 || x > 255) {
            return reject("coset labels are 1-based");
        }
        CosetLabel::new(
            raw.sources.iter().map(|&x| (x - 1) as u8).collect(),
            raw.targets.iter().map(|&x| (x - 1) as u8).collect(),
        )
    }
}

impl From<CosetLabel> for RawLabel {
    fn from(l: CosetLabel) -> Self {
        RawLabel {
            sources: l.sources.iter().map(|&x| x as usize + 1).collect(),
            targets: l.targets.iter().map(|&x| x as usize + 1).collect(),
        }
    }
}

fn distinct(v: &[u8]) -> bool {
    v.iter().collect::<BTreeSet<_>>().len() == v.len()
}

impl CosetLabel {
    /// 0-based sources and targets.
    pub fn new(sources: Vec<u8>, targets: Vec<u8>) -> Result<Self> {
        if sources.len() != targets.len() || !distinct(&sources) || !distinct(&targets) {
            return reject(format!("invalid coset label {sources:?} -> {targets:?}"));
        }
        Ok(CosetLabel { sources, targets })
    }

    pub fn k(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[u8] {
        &self.sources
    }

    pub fn targets(&self) -> &[u8] {
        &self.targets
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.sources
            .iter()
            .zip(&self.targets)
            .all(|(&a, &b)| p.apply(a as usize) == b as usize)
    }

    fn fits(&self, n: usize) -> bool {
        self.sources.iter().chain(&self.targets).all(|&x| (x as usize) < n)
    }

    /// Members in rank order.
    pub fn members(&self, n: usize) -> Result<Vec<Perm>> {
        if n == 0 || !self.fits(n) || self.k() > n - 1 {
            return reject(format!("coset {self} does not fit in S_{n} with k <= n-1"));
        }
        let free_sources: Vec<usize> = (0..n).filter(|i| !self.sources.contains(&(*i as u8))).collect();
        let free_targets: Vec<u8> = (0..n as u8).filter(|j| !self.targets.contains(j)).collect();
        let mut out: Vec<Perm> = crate::perm::tuples_over(&free_targets, free_targets.len())
            .into_iter()
            .map(|img| {
                let mut images = vec![0u8; n];
                for (&a, &b) in self.sources.iter().zip(&self.targets) {
                    images[a as usize] = b;
                }
                for (&i, &b) in free_sources.iter().zip(&img) {
                    images[i] = b;
                }
                Perm::from_images(images).expect("coset member is a bijection")
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `σ T_{a↦b} τ = T_{τ^{-1}(a) ↦ σ(b)}`.
    pub fn translate(&self, left: &Perm, right: &Perm) -> CosetLabel {
        let rinv = right.inverse();
        CosetLabel {
            sources: self.sources.iter().map(|&a| rinv.apply(a as usize) as u8).collect(),
            targets: self.targets.iter().map(|&b| left.apply(b as usize) as u8).collect(),
        }
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sources
            .iter()
            .zip(&self.targets)
            .map(|(a, b)| format!("{}->{}", a + 1, b + 1))
            .collect();
        write!(f, "T{{{}}}", parts.join(","))
    }
}

/// All `((n)_k)^2` labels, sources then targets in lexicographic tuple order.
pub fn all_coset_labels(n: usize, k: usize) -> Vec<CosetLabel> {
    let ts = tuples(n, k);
    let mut out = Vec::with_capacity(ts.len() * ts.len());
    for a in &ts {
        for b in &ts {
            out.push(CosetLabel {
                sources: a.clone(),
                targets: b.clone(),
            });
        }
    }
    out
}

pub fn coset_indicator(label: &CosetLabel, n: usize) -> Result<GroupFunction> {
    if n == 0 || label.k() > n - 1 {
        return reject(format!("coset {label} needs k <= n-1 (n={n})"));
    }
    GroupFunction::indicator(n, label.members(n)?.iter())
}

/// Whether every partition in the Fourier support is `>= (n-k, 1^k)`.
pub fn is_in_vk(f: &GroupFunction, k: usize, table: &CharacterTable) -> Result<bool> {
    if k == 0 || k >= f.n {
        return reject(format!("V_k needs 1 <= k <= n-1 (n={}, k={k})", f.n));
    }
    let hook = Partition::hook(f.n, k);
    Ok(fourier_support(f, table)?.iter().all(|l| *l >= hook))
}

/// `Σ_{λ >= (n-k,1^k)} dim(λ)^2`.
pub fn vk_dimension(n: usize, k: usize) -> u64 {
    let hook = Partition::hook(n, k);
    crate::partitions::enumerate_partitions(n)
        .into_iter()
        .filter(|l| *l >= hook)
        .map(|l| l.dim() * l.dim())
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanRank {
    pub n: usize,
    pub k: usize,
    pub cosets: usize,
    pub rank: usize,
    pub expected: u64,
}

/// Rank of the `((n)_k)^2` coset indicators; a mismatch with `dim V_k` is a
/// theorem violation.
pub fn coset_span_rank(n: usize, k: usize) -> Result<SpanRank> {
    check_cap("span rank n", n, MAX_RANK_N)?;
    if k == 0 || k >= n {
        return reject(format!("coset span needs 1 <= k <= n-1 (n={n}, k={k})"));
    }
    let order = factorial(n) as usize;
    let labels = all_coset_labels(n, k);
    let rows: Vec<Vec<i64>> = labels
        .iter()
        .map(|l| {
            let mut row = vec![0i64; order];
            for p in l.members(n).expect("label fits") {
                row[p.rank()] = 1;
            }
            row
        })
        .collect();
    let rank = integer_rank(&rows);
    let expected = vk_dimension(n, k);
    if rank as u64 != expected {
        return violation(format!(
            "span of {k}-cosets in S_{n} has rank {rank}, expected {expected}"
        ));
    }
    debug_assert_eq!(labels.len(), falling(n, k) * falling(n, k));
    Ok(SpanRank {
        n,
        k,
        cosets: labels.len(),
        rank,
        expected,
    })
}

/// `g(σ) = f(left · σ · right)`.
pub fn double_translate(f: &GroupFunction, left: &Perm, right: &Perm) -> Result<GroupFunction> {
    if left.n() != f.n || right.n() != f.n {
        return reject("translating permutations must lie in the same S_n");
    }
    let values = all_perms(f.n)
        .iter()
        .map(|s| f.values[left.compose(s).compose(right).rank()].clone())
        .collect();
    GroupFunction::new(f.n, values)
}

/// `(Af)(σ) = Σ_τ 1_X(σ τ^{-1}) f(τ)` with `X` the union of the given classes,
/// evaluated entry by entry from the explicit adjacency relation.
pub fn apply_cayley(f: &GroupFunction, classes: &[Partition]) -> Result<GroupFunction> {
    check_cap("explicit matrix n", f.n, crate::spectrum::MAX_EXPLICIT_N)?;
    let perms = all_perms(f.n);
    let values = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .zip(&f.values)
                .filter(|(t, _)| classes.contains(&s.compose(&t.inverse()).cycle_type()))
                .map(|(_, v)| v.clone())
                .sum()
        })
        .collect();
    GroupFunction::new(f.n, values)
}

/// The indicator of the union of the given classes.
pub fn class_indicator(n: usize, classes: &[Partition]) -> Result<GroupFunction> {
    check_cap("group function n", n, MAX_GROUP_N)?;
    GroupFunction::new(
        n,
        all_perms(n)
            .iter()
            .map(|p| {
                if classes.contains(&p.cycle_type()) {
                    int(1)
                } else {
                    int(0)
                }
            })
            .collect(),
    )
}

/// `Σ_λ ⟨P_λ f, P_λ f⟩`, equal to `⟨f, f⟩`.
pub fn plancherel_sum(f: &GroupFunction, table: &CharacterTable) -> Result<Rational> {
    let mut total = Rational::zero();
    for (_, p) in all_projections(f, table)? {
        total += p.inner(&p)?;
    }
    Ok(total)
}

pub(crate) fn nonnegative(f: &GroupFunction) -> bool {
    f.values.iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_table;
    use crate::rational::frac;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn random_fn(n: usize, rng: &mut ChaCha8Rng) -> GroupFunction {
        let values = (0..factorial(n))
            .map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
            .collect();
        GroupFunction::new(n, values).unwrap()
    }

    fn label(src: &[u8], dst: &[u8]) -> CosetLabel {
        CosetLabel::new(src.iter().map(|x| x - 1).collect(), dst.iter().map(|x| x - 1).collect()).unwrap()
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(GroupFunction::new(3, vec![int(1); 5]).is_err());
        assert!(GroupFunction::new(8, vec![]).is_err());
        let json = r#"{"n": 2, "values": ["1/1"]}"#;
        assert!(serde_json::from_str::<GroupFunction>(json).is_err());
        let json = r#"{"n": 2, "values": ["1/2", "3"]}"#;
        let f: GroupFunction = serde_json::from_str(json).unwrap();
        assert_eq!(f.values[1], int(3));
    }

    #[test]
    fn delta_convolution_scales() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_fn(4, &mut rng);
        let d = GroupFunction::delta(4).unwrap();
        assert_eq!(convolve(&d, &g).unwrap(), g.scale(&frac(1, 24)));
        assert_eq!(convolve(&g, &d).unwrap(), g.scale(&frac(1, 24)));
    }

    #[test]
    fn convolution_with_constant() {
        let x = class_indicator(4, &[p(&[4]), p(&[2, 2])]).unwrap();
        let ones = GroupFunction::constant(4, int(1)).unwrap();
        let c = convolve(&x, &ones).unwrap();
        assert!(c.values.iter().all(|v| *v == frac(9, 24)));
    }

    #[test]
    fn cayley_matches_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let classes = crate::spectrum::fpf_classes(4, 1);
        let x = class_indicator(4, &classes).unwrap();
        for _ in 0..3 {
            let f = GroupFunction::new(4, (0..24).map(|_| int(rng.gen_range(-9..=9))).collect()).unwrap();
            let lhs = apply_cayley(&f, &classes).unwrap();
            let rhs = convolve(&x, &f).unwrap().scale(&int(24));
            assert_eq!(lhs, rhs);
        }
        let classes5 = vec![p(&[5]), p(&[3, 2])];
        let x5 = class_indicator(5, &classes5).unwrap();
        let f = random_fn(5, &mut rng);
        assert_eq!(
            apply_cayley(&f, &classes5).unwrap(),
            convolve(&x5, &f).unwrap().scale(&int(120))
        );
    }

    #[test]
    fn convolution_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (f, g, h) = (random_fn(4, &mut rng), random_fn(4, &mut rng), random_fn(4, &mut rng));
        let left = convolve(&convolve(&f, &g).unwrap(), &h).unwrap();
        let right = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn projection_examples() {
        let t4 = character_table(4).unwrap();
        let c = GroupFunction::constant(4, frac(3, 2)).unwrap();
        for l in &t4.order {
            let pr = isotypic_project(&c, l, &t4).unwrap();
            if *l == p(&[4]) {
                assert_eq!(pr, c);
            } else {
                assert!(pr.is_zero());
            }
        }
        let s = GroupFunction::sign(4).unwrap();
        assert_eq!(isotypic_project(&s, &Partition::column(4), &t4).unwrap(), s);
        let t = coset_indicator(&label(&[1], &[1]), 4).unwrap();
        assert_eq!(fourier_support(&t, &t4).unwrap(), vec![p(&[4]), p(&[3, 1])]);
    }

    #[test]
    fn projections_sum_and_are_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 3..=5 {
            let t = character_table(n).unwrap();
            let f = random_fn(n, &mut rng);
            let projs = all_projections(&f, &t).unwrap();
            let mut total = GroupFunction::zero(n).unwrap();
            for (l, pf) in &projs {
                total = total.add(pf).unwrap();
                assert_eq!(&isotypic_project(pf, l, &t).unwrap(), pf);
            }
            assert_eq!(total, f);
        }
    }

    #[test]
    fn plancherel_and_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 3..=6 {
            let t = character_table(n).unwrap();
            let f = random_fn(n, &mut rng);
            assert_eq!(plancherel_sum(&f, &t).unwrap(), f.inner(&f).unwrap());
        }
        for n in 3..=5 {
            let t = character_table(n).unwrap();
            let f = all_projections(&random_fn(n, &mut rng), &t).unwrap();
            let g = all_projections(&random_fn(n, &mut rng), &t).unwrap();
            for (i, (_, pf)) in f.iter().enumerate() {
                for (j, (_, pg)) in g.iter().enumerate() {
                    if i != j {
                        assert!(pf.inner(pg).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn support_examples() {
        let t5 = character_table(5).unwrap();
        let t = coset_indicator(&label(&[2], &[4]), 5).unwrap();
        assert_eq!(fourier_support(&t, &t5).unwrap(), vec![p(&[5]), p(&[4, 1])]);
        let c = GroupFunction::constant(5, int(1)).unwrap();
        assert_eq!(fourier_support(&c, &t5).unwrap(), vec![p(&[5])]);
        let d = GroupFunction::delta(5).unwrap();
        assert_eq!(fourier_support(&d, &t5).unwrap(), t5.order);
        for (l, pr) in all_projections(&d, &t5).unwrap() {
            assert_eq!(pr.values[0], frac((l.dim() * l.dim()) as i64, 120));
        }
    }

    #[test]
    fn coset_indicator_examples() {
        let a = coset_indicator(&label(&[1], &[1]), 4).unwrap();
        assert_eq!(a.support().len(), 6);
        let b = coset_indicator(&label(&[1, 2], &[1, 2]), 4).unwrap();
        assert_eq!(b.support().len(), 2);
        let c = coset_indicator(&label(&[1, 2], &[2, 1]), 4).unwrap();
        assert_eq!(c.support().len(), 2);
        assert!(b.inner(&c).unwrap().is_zero());
        assert!(coset_indicator(&label(&[1, 2, 3, 4], &[1, 2, 3, 4]), 4).is_err());
        assert!(CosetLabel::new(vec![0, 0], vec![1, 2]).is_err());
        for l in all_coset_labels(5, 2) {
            let f = coset_indicator(&l, 5).unwrap();
            assert_eq!(f.support().len(), 6);
            for r in f.support() {
                assert!(l.contains(&Perm::unrank(5, r)));
            }
        }
    }

    #[test]
    fn label_json_is_one_based() {
        let l = label(&[1, 3], &[2, 1]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"sources":[1,3],"targets":[2,1]}"#);
        assert_eq!(serde_json::from_str::<CosetLabel>(&s).unwrap(), l);
        assert_eq!(l.to_string(), "T{1->2,3->1}");
    }

    #[test]
    fn vk_examples() {
        let t5 = character_table(5).unwrap();
        for k in 1..=2 {
            for l in all_coset_labels(5, k).iter().step_by(7) {
                assert!(is_in_vk(&coset_indicator(l, 5).unwrap(), k, &t5).unwrap());
            }
        }
        assert!(!is_in_vk(&GroupFunction::sign(5).unwrap(), 2, &t5).unwrap());
        let u = coset_indicator(&label(&[1], &[2]), 5)
            .unwrap()
            .add(&coset_indicator(&label(&[1], &[3]), 5).unwrap())
            .unwrap();
        assert!(is_in_vk(&u, 1, &t5).unwrap());
    }

    #[test]
    fn span_rank_examples() {
        assert_eq!(coset_span_rank(4, 1).unwrap().rank, 10);
        assert_eq!(coset_span_rank(5, 1).unwrap().rank, 17);
        assert_eq!(coset_span_rank(5, 2).unwrap().rank, 78);
        assert_eq!(vk_dimension(6, 1), 26);
        assert!(coset_span_rank(7, 1).is_err());
    }

    #[test]
    fn translation_examples() {
        let t4 = character_table(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_fn(4, &mut rng);
        let id = Perm::identity(4);
        assert_eq!(double_translate(&f, &id, &id).unwrap(), f);
        let l = label(&[1, 3], &[2, 4]);
        let (a, b) = (Perm::unrank(4, 7), Perm::unrank(4, 17));
        let moved = double_translate(&coset_indicator(&l, 4).unwrap(), &a, &b).unwrap();
        // g(σ) = 1 iff aσb ∈ T iff σ ∈ a^{-1} T b^{-1}.
        let expected = coset_indicator(&l.translate(&a.inverse(), &b.inverse()), 4).unwrap();
        assert_eq!(moved, expected);
        // Project a random function into V_1, translate, and re-check.
        let projs = all_projections(&f, &t4).unwrap();
        let v1 = projs[0].1.add(&projs[1].1).unwrap();
        assert!(is_in_vk(&v1, 1, &t4).unwrap());
        assert!(is_in_vk(&double_translate(&v1, &a, &b).unwrap(), 1, &t4).unwrap());
    }
}
