//! Brute-force ground truth at tiny `n`: maximum `k`-intersecting families
//! as maximum independent sets of `Γ_k`, cross-intersecting pairs,
//! sharply-transitive partition certificates and the conjectured families
//! `M_i`.
//!
//! The independent-set search is a bitset branch and bound with a greedy
//! colouring bound. The Hoffman bound of `Γ_k` is an admissible cutoff: once
//! a family of that size is found the search stops, and the bound itself
//! certifies optimality.

use std::collections::{BTreeSet, HashSet};

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::character_table;
use crate::error::{check_cap, reject, violation, Result};
use crate::field::Field;
use crate::group_algebra::{all_coset_labels, is_in_vk, GroupFunction};
use crate::perm::{all_perms, factorial, Perm};
use crate::rational::{self, int, Rational};
use crate::spectrum::fpf_spectrum;

/// Largest `n` for exhaustive search.
pub const MAX_SEARCH_N: usize = 5;
/// Largest `n` for the conjectured families.
pub const MAX_CONJECTURE_N: usize = 8;
/// Largest `n` for sharply-transitive certificates.
pub const MAX_CERTIFICATE_N: usize = 9;

pub fn k_intersects(sigma: &Perm, tau: &Perm, k: usize) -> bool {
    sigma.agreements(tau) >= k
}

pub fn is_k_intersecting(family: &[Perm], k: usize) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, s)| family[i + 1..].iter().all(|t| k_intersects(s, t, k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Compatibility graph: `σ ~ τ` iff they agree on at least `k` points.
struct Compat {
    neighbours: Vec<Bits>,
}

impl Compat {
    fn new(perms: &[Perm], k: usize) -> Self {
        let neighbours = perms
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut b = Bits::empty(perms.len());
                for (j, t) in perms.iter().enumerate() {
                    if i != j && k_intersects(s, t, k) {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        Compat { neighbours }
    }

    /// Vertices of `p` in colour order with their running colour counts:
    /// every colour class is pairwise incompatible, so it holds at most one
    /// member of any family.
    fn colour_sort(&self, p: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                uncoloured.clear(v);
                q.and_not(&self.neighbours[v]);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}

struct Search<'a> {
    compat: &'a Compat,
    best: Vec<usize>,
    /// Stop as soon as a family of this size is found.
    cutoff: usize,
    /// When set, collect every family of exactly this size.
    enumerate: Option<usize>,
    found: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.enumerate.is_none() && self.best.len() >= self.cutoff
    }

    fn expand(&mut self, chosen: &mut Vec<usize>, mut p: Bits) {
        self.nodes += 1;
        let (order, colours) = self.compat.colour_sort(&p);
        for idx in (0..order.len()).rev() {
            let bound = chosen.len() + colours[idx];
            match self.enumerate {
                Some(target) if bound < target => return,
                None if bound <= self.best.len() => return,
                _ => {}
            }
            let v = order[idx];
            chosen.push(v);
            let next = p.and(&self.compat.neighbours[v]);
            if let Some(target) = self.enumerate {
                if chosen.len() == target {
                    let mut fam = chosen.clone();
                    fam.sort_unstable();
                    self.found.push(fam);
                } else if !next.is_empty() {
                    self.expand(chosen, next);
                }
            } else {
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                }
                if !next.is_empty() && !self.done() {
                    self.expand(chosen, next);
                }
            }
            chosen.pop();
            p.clear(v);
            if self.done() {
                return;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub all_extremal: bool,
    /// Search only families through the identity; `Γ_k` is a Cayley graph,
    /// so every family has a left translate of that form.
    pub symmetry_reduce: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub n: usize,
    pub k: usize,
    pub max_size: usize,
    /// `⌊n!·(-λ_min)/(d - λ_min)⌋` for `Γ_k`.
    pub hoffman_bound: usize,
    /// Families as sorted Lehmer ranks; empty unless `all_extremal`.
    pub extremal_families: Vec<Vec<usize>>,
    /// Every listed family equals one of the `k`-cosets.
    pub all_are_cosets: bool,
    pub nodes: u64,
}

/// `⌊n! · (-λ_min) / (d - λ_min)⌋` from the exact spectrum of `Γ_k`.
pub fn gamma_k_hoffman_bound(n: usize, k: usize) -> Result<usize> {
    let table = character_table(n)?;
    let spec = fpf_spectrum(n, k, &table)?;
    let min = spec.min().clone();
    if !min.is_negative() {
        return Ok(factorial(n) as usize);
    }
    let ratio = -&min / (&spec.degree - &min);
    let bound = ratio * int(factorial(n) as i64);
    Ok(bound.floor().to_integer().to_usize().expect("small bound"))
}

/// Maximum `k`-intersecting families of `S_n`, by exhaustive search.
pub fn max_k_intersecting(n: usize, k: usize, options: SearchOptions) -> Result<FamilyReport> {
    if !(n <= MAX_SEARCH_N || (n == 6 && k == 1 && !options.all_extremal)) {
        return reject(format!(
            "exhaustive search supports n <= {MAX_SEARCH_N}, or n = 6 with k = 1 for the maximum only (n={n}, k={k})"
        ));
    }
    if k == 0 || k >= n {
        return reject(format!("search needs 1 <= k <= n-1 (n={n}, k={k})"));
    }
    let perms = all_perms(n);
    let compat = Compat::new(&perms, k);
    let hoffman_bound = gamma_k_hoffman_bound(n, k)?;
    let (mut chosen, start) = if options.symmetry_reduce {
        (vec![0usize], compat.neighbours[0].clone())
    } else {
        let mut all = Bits::empty(perms.len());
        for i in 0..perms.len() {
            all.set(i);
        }
        (Vec::new(), all)
    };
    let mut search = Search {
        compat: &compat,
        best: chosen.clone(),
        cutoff: hoffman_bound,
        enumerate: None,
        found: Vec::new(),
        nodes: 0,
    };
    search.expand(&mut chosen, start.clone());
    let max_size = search.best.len();
    if max_size > hoffman_bound {
        return violation(format!(
            "family of size {max_size} exceeds the Hoffman bound {hoffman_bound}"
        ));
    }
    let mut nodes = search.nodes;
    let mut families = Vec::new();
    if options.all_extremal {
        search.enumerate = Some(max_size);
        search.nodes = 0;
        if chosen.len() == max_size {
            search.found.push(chosen.clone());
        } else {
            search.expand(&mut chosen, start);
        }
        nodes += search.nodes;
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for fam in search.found {
            if options.symmetry_reduce {
                for s in &perms {
                    let mut moved: Vec<usize> = fam.iter().map(|&r| s.compose(&perms[r]).rank()).collect();
                    moved.sort_unstable();
                    set.insert(moved);
                }
            } else {
                set.insert(fam);
            }
        }
        families = set.into_iter().collect();
    }
    for fam in &families {
        let members: Vec<Perm> = fam.iter().map(|&r| perms[r].clone()).collect();
        if members.len() != max_size || !is_k_intersecting(&members, k) {
            return violation("search returned a family that fails re-verification");
        }
    }
    let cosets: HashSet<Vec<usize>> = all_coset_labels(n, k)
        .iter()
        .map(|l| Ok(l.members(n)?.iter().map(Perm::rank).collect()))
        .collect::<Result<_>>()?;
    let all_are_cosets = families.iter().all(|f| cosets.contains(f));
    Ok(FamilyReport {
        n,
        k,
        max_size,
        hoffman_bound,
        extremal_families: families,
        all_are_cosets,
        nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub n: usize,
    pub k: usize,
    pub cross_intersecting: bool,
    /// A pair `(σ ∈ I, τ ∈ J)` agreeing on fewer than `k` points.
    pub witness: Option<(Perm, Perm)>,
    pub product: u64,
    pub bound: u64,
    pub within_bound: bool,
}

/// Checks that every `σ ∈ I`, `τ ∈ J` agree on at least `k` points, and
/// compares `|I||J|` with `((n-k)!)^2`.
pub fn cross_product_check(n: usize, k: usize, i: &[Perm], j: &[Perm]) -> Result<CrossReport> {
    check_cap("cross-check n", n, MAX_SEARCH_N)?;
    if k == 0 || k >= n || i.iter().chain(j).any(|p| p.n() != n) {
        return reject(format!("cross-check needs permutations of [{n}] and 1 <= k <= n-1"));
    }
    let witness = i.iter().find_map(|s| {
        j.iter()
            .find(|t| !k_intersects(s, t, k))
            .map(|t| (s.clone(), t.clone()))
    });
    let product = (i.len() * j.len()) as u64;
    let bound = factorial(n - k).pow(2);
    Ok(CrossReport {
        n,
        k,
        cross_intersecting: witness.is_none(),
        witness,
        product,
        bound,
        within_bound: product <= bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "order")]
pub enum CertificateMode {
    /// `⟨(1 2 … n)⟩`: distinct members agree nowhere.
    Cyclic(usize),
    /// `x ↦ ax + b` over the field of order `q`: distinct members agree on
    /// at most one point.
    Affine(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitiveCertificate {
    pub mode: CertificateMode,
    pub n: usize,
    /// The `k` for which each cell meets a `k`-intersecting family at most once.
    pub k: usize,
    pub subgroup: Vec<Perm>,
    pub cell_count: usize,
    pub cell_size: usize,
    /// Largest number of agreements between distinct members of one cell.
    pub max_agreement: usize,
    /// `(n-k)!`, the family bound the partition yields.
    pub family_bound: u64,
    pub verified: bool,
    /// Left cosets of the subgroup, as sorted Lehmer ranks.
    #[serde(skip)]
    pub cells: Vec<Vec<usize>>,
}

fn cyclic_group(n: usize) -> Vec<Perm> {
    let shift = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u8).collect()).expect("n-cycle");
    let mut out = vec![Perm::identity(n)];
    for _ in 1..n {
        let next = out.last().expect("nonempty").compose(&shift);
        out.push(next);
    }
    out
}

fn affine_group(field: &Field) -> Vec<Perm> {
    let mut out = Vec::new();
    for a in field.elements().filter(|&a| a != 0) {
        for b in field.elements() {
            let images: Vec<u8> = field.elements().map(|x| field.add(field.mul(a, x), b) as u8).collect();
            out.push(Perm::from_images(images).expect("affine maps are bijections"));
        }
    }
    out
}

/// Partition of `S_n` into left cosets of a sharply transitive subgroup,
/// with every pair inside every cell checked.
pub fn sharply_transitive_certificate(mode: CertificateMode) -> Result<TransitiveCertificate> {
    let (n, k, subgroup) = match mode {
        CertificateMode::Cyclic(n) => {
            if n < 2 {
                return reject("cyclic certificate needs n >= 2");
            }
            check_cap("certificate n", n, MAX_CERTIFICATE_N)?;
            (n, 1, cyclic_group(n))
        }
        CertificateMode::Affine(q) => {
            let field = Field::new(q)?;
            if q < 3 {
                return reject("affine certificate needs q >= 3 so that k = 2 < n");
            }
            (q, 2, affine_group(&field))
        }
    };
    let total = factorial(n) as usize;
    let mut seen = vec![false; total];
    let mut cells = Vec::with_capacity(total / subgroup.len());
    let mut max_agreement = 0;
    for r in 0..total {
        if seen[r] {
            continue;
        }
        let sigma = Perm::unrank(n, r);
        let cell: Vec<Perm> = subgroup.iter().map(|h| sigma.compose(h)).collect();
        for (a, p) in cell.iter().enumerate() {
            for q in &cell[a + 1..] {
                max_agreement = max_agreement.max(p.agreements(q));
            }
        }
        let mut ranks: Vec<usize> = cell.iter().map(Perm::rank).collect();
        for &x in &ranks {
            if seen[x] {
                return violation("left cosets overlap");
            }
            seen[x] = true;
        }
        ranks.sort_unstable();
        cells.push(ranks);
    }
    let verified = max_agreement < k
        && cells.iter().all(|c| c.len() == subgroup.len())
        && cells.len() as u64 == factorial(n - k)
        && seen.iter().all(|&s| s);
    Ok(TransitiveCertificate {
        mode,
        n,
        k,
        cell_size: subgroup.len(),
        subgroup,
        cell_count: cells.len(),
        max_agreement,
        family_bound: factorial(n - k),
        verified,
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureFamily {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    /// Sorted Lehmer ranks.
    pub members: Vec<usize>,
    pub size: usize,
    /// `(k+2)(n-k-1)! - (k+1)(n-k-2)!`, stated for `i = 1`.
    #[serde(with = "rational::option")]
    pub formula: Option<Rational>,
    pub k_intersecting: bool,
}

/// `M_i = {σ : σ has at least k+i fixed points in [k+2i]}`.
pub fn conjecture_family(n: usize, k: usize, i: usize) -> Result<ConjectureFamily> {
    check_cap("conjecture n", n, MAX_CONJECTURE_N)?;
    if k == 0 || k + 2 * i > n {
        return reject(format!("M_i needs k >= 1 and k + 2i <= n (n={n}, k={k}, i={i})"));
    }
    let window = k + 2 * i;
    let perms = all_perms(n);
    let members: Vec<usize> = perms
        .iter()
        .filter(|p| (0..window).filter(|&x| p.apply(x) == x).count() >= k + i)
        .map(Perm::rank)
        .collect();
    let family: Vec<Perm> = members.iter().map(|&r| perms[r].clone()).collect();
    let formula = (i == 1 && n >= k + 2).then(|| {
        let f = |m: usize| BigInt::from(factorial(m));
        Rational::from_integer(BigInt::from(k + 2) * f(n - k - 1) - BigInt::from(k + 1) * f(n - k - 2))
    });
    Ok(ConjectureFamily {
        n,
        k,
        i,
        size: members.len(),
        members,
        formula,
        k_intersecting: is_k_intersecting(&family, k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub n: usize,
    pub k: usize,
    pub max_size: usize,
    pub expected: u64,
    pub hoffman_bound: usize,
    pub families: usize,
    pub all_in_vk: bool,
    pub all_single_coset: bool,
    pub passes: bool,
}

/// Every maximum family has size `(n-k)!`, lies in `V_k`, and peels into a
/// single `k`-coset.
pub fn verify_upper_bound_pipeline(n: usize, k: usize) -> Result<PipelineReport> {
    let report = max_k_intersecting(
        n,
        k,
        SearchOptions {
            all_extremal: true,
            symmetry_reduce: true,
        },
    )?;
    let table = character_table(n)?;
    let mut all_in_vk = true;
    let mut all_single_coset = true;
    for fam in &report.extremal_families {
        let mut values = vec![Rational::zero(); factorial(n) as usize];
        for &r in fam {
            values[r] = Rational::one();
        }
        let f = GroupFunction::new(n, values)?;
        let in_vk = is_in_vk(&f, k, &table)?;
        all_in_vk &= in_vk;
        if in_vk {
            all_single_coset &= crate::birkhoff::boolean_peel(&f, k)?.len() == 1;
        } else {
            all_single_coset = false;
        }
    }
    let expected = factorial(n - k);
    let passes =
        report.max_size as u64 == expected && all_in_vk && all_single_coset && !report.extremal_families.is_empty();
    Ok(PipelineReport {
        n,
        k,
        max_size: report.max_size,
        expected,
        hoffman_bound: report.hoffman_bound,
        families: report.extremal_families.len(),
        all_in_vk,
        all_single_coset,
        passes,
    })
}

/// Whether `n` is a prime power, as required by the affine certificate.
pub fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|&d| n.is_multiple_of(d)).expect("n >= 2");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}
