//! Matrices indexed by ordered `k`-tuples of distinct points, `k`-lines,
//! the `k`-bistochastic predicate, the generalized Birkhoff decomposition,
//! nonnegative `k`-coset representations and Boolean peeling.
//!
//! Rows and columns are ordered lexicographically on tuples. A `k`-line at a
//! level with free coordinates `S` and ground sets `R`, `C` picks a
//! coordinate `c ∈ S` and a row `α_c = i` (or column `β_c = j`) of the
//! `n × n` block grid, then one `(k-1)`-line inside every block along it.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::assignment::{min_cost_assignment, perfect_matching};
use crate::characters::character_table;
use crate::error::{check_cap, reject, violation, Error, Result};
use crate::group_algebra::{coset_indicator, is_in_vk, nonnegative, CosetLabel, GroupFunction};
use crate::linalg::{null_vector, solve_any};
use crate::lp::{phase_one, Feasibility};
use crate::perm::{all_perms, falling, tuples, Perm};
use crate::rational::{int, Rational};

/// Largest `n` for tuple matrices.
pub const MAX_TUPLE_N: usize = 7;
/// Largest `n` for Boolean peeling.
pub const MAX_PEEL_N: usize = 6;
/// Largest `n` for the `k = 1` representation solver.
pub const MAX_REPRESENTATION_N: usize = 6;
/// Largest `n` for the `k >= 2` representation LP.
pub const MAX_REPRESENTATION_LP_N: usize = 5;

/// Lexicographic rank of a `k`-tuple of distinct elements of `[n]`.
pub fn tuple_index(n: usize, t: &[u8]) -> usize {
    let k = t.len();
    let mut idx = 0;
    for (pos, &v) in t.iter().enumerate() {
        let smaller_unused = (0..v).filter(|x| !t[..pos].contains(x)).count();
        idx += smaller_unused * falling(n - pos - 1, k - pos - 1);
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTupleMatrix")]
pub struct TupleMatrix {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::rational::matrix")]
    pub entries: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawTupleMatrix {
    n: usize,
    k: usize,
    #[serde(with = "crate::rational::matrix")]
    entries: Vec<Vec<Rational>>,
}

impl TryFrom<RawTupleMatrix> for TupleMatrix {
    type Error = Error;

    fn try_from(raw: RawTupleMatrix) -> Result<Self> {
        TupleMatrix::new(raw.n, raw.k, raw.entries)
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    check_cap("tuple matrix n", n, MAX_TUPLE_N)?;
    if k == 0 || k >= n {
        return reject(format!("tuple matrices need 1 <= k <= n-1 (n={n}, k={k})"));
    }
    Ok(())
}

impl TupleMatrix {
    pub fn new(n: usize, k: usize, entries: Vec<Vec<Rational>>) -> Result<Self> {
        check_shape(n, k)?;
        let d = falling(n, k);
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return reject(format!("a ({n},{k}) tuple matrix is {d} x {d}"));
        }
        Ok(TupleMatrix { n, k, entries })
    }

    pub fn zero(n: usize, k: usize) -> Result<Self> {
        let d = falling(n, k);
        TupleMatrix::new(n, k, vec![vec![Rational::zero(); d]; d])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn tuples(&self) -> Vec<Vec<u8>> {
        tuples(self.n, self.k)
    }

    pub fn get(&self, alpha: &[u8], beta: &[u8]) -> &Rational {
        &self.entries[tuple_index(self.n, alpha)][tuple_index(self.n, beta)]
    }

    /// `Σ_t w_t P_{σ_t}^{(k)}`.
    pub fn convex_combination(n: usize, k: usize, terms: &[(Rational, Perm)]) -> Result<Self> {
        let mut m = TupleMatrix::zero(n, k)?;
        for (w, p) in terms {
            if p.n() != n {
                return reject("permutation size does not match the matrix");
            }
            m.add_induced(p, w);
        }
        Ok(m)
    }

    fn add_induced(&mut self, sigma: &Perm, w: &Rational) {
        for alpha in tuples(self.n, self.k) {
            let image: Vec<u8> = alpha.iter().map(|&a| sigma.apply(a as usize) as u8).collect();
            let (r, c) = (tuple_index(self.n, &alpha), tuple_index(self.n, &image));
            self.entries[r][c] += w;
        }
    }

    /// The function `σ ↦ Σ_α M_{α,σ(α)}` it represents as a combination of
    /// `k`-coset indicators.
    pub fn represented_function(&self) -> Result<GroupFunction> {
        let ts = self.tuples();
        let values = all_perms(self.n)
            .iter()
            .map(|s| {
                ts.iter()
                    .enumerate()
                    .map(|(r, a)| {
                        let image: Vec<u8> = a.iter().map(|&x| s.apply(x as usize) as u8).collect();
                        self.entries[r][tuple_index(self.n, &image)].clone()
                    })
                    .sum()
            })
            .collect();
        GroupFunction::new(self.n, values)
    }
}

/// `M'` with `M'_{α∘π, β∘π} = M_{α,β}`: the same matrix with tuple
/// coordinates relabeled by `π ∈ S_k` (0-based images).
pub fn permute_coordinates(m: &TupleMatrix, pi: &[usize]) -> Result<TupleMatrix> {
    let mut seen = pi.to_vec();
    seen.sort_unstable();
    if seen != (0..m.k).collect::<Vec<_>>() {
        return reject(format!("{pi:?} is not a permutation of the {} coordinates", m.k));
    }
    let ts = m.tuples();
    let relabel = |t: &[u8]| -> usize {
        let moved: Vec<u8> = (0..t.len()).map(|c| t[pi[c]]).collect();
        tuple_index(m.n, &moved)
    };
    let mut out = TupleMatrix::zero(m.n, m.k)?;
    for (r, a) in ts.iter().enumerate() {
        for (c, b) in ts.iter().enumerate() {
            out.entries[relabel(a)][relabel(b)] = m.entries[r][c].clone();
        }
    }
    Ok(out)
}

/// `P_σ^{(k)}`: entry `(α, σ(α))` is 1.
pub fn induced_perm_matrix(sigma: &Perm, k: usize) -> Result<TupleMatrix> {
    TupleMatrix::convex_combination(sigma.n(), k, &[(int(1), sigma.clone())])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

/// Recursive `k`-line descriptor. `position` is the tuple coordinate split
/// on, `value` the chosen block row (`Row`) or block column (`Col`), and
/// `subs` holds one sub-line per block along it, ordered by the other ground
/// value; `subs` is empty on the last coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLine {
    pub position: usize,
    pub axis: Axis,
    pub value: u8,
    pub subs: Vec<KLine>,
}

/// A cell `(α, β)` of a tuple matrix.
pub type Cell = (Vec<u8>, Vec<u8>);

/// The cells of a line, in block order.
pub fn k_line_cells(line: &KLine, n: usize, k: usize) -> Result<Vec<Cell>> {
    check_shape(n, k)?;
    let ground: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(falling(n, k));
    let free: Vec<usize> = (0..k).collect();
    collect_cells(
        line,
        &free,
        &ground,
        &ground,
        &mut vec![0; k],
        &mut vec![0; k],
        &mut out,
    )?;
    Ok(out)
}

fn collect_cells(
    line: &KLine,
    free: &[usize],
    rows: &[u8],
    cols: &[u8],
    alpha: &mut Vec<u8>,
    beta: &mut Vec<u8>,
    out: &mut Vec<Cell>,
) -> Result<()> {
    if !free.contains(&line.position) {
        return reject(format!(
            "k-line splits on coordinate {} which is not free",
            line.position
        ));
    }
    let (fixed_ground, other_ground) = match line.axis {
        Axis::Row => (rows, cols),
        Axis::Col => (cols, rows),
    };
    if !fixed_ground.contains(&line.value) {
        return reject(format!("k-line value {} is not in the ground set", line.value));
    }
    let rest: Vec<usize> = free.iter().copied().filter(|&c| c != line.position).collect();
    let want_subs = if rest.is_empty() { 0 } else { other_ground.len() };
    if line.subs.len() != want_subs {
        return reject(format!("k-line needs {want_subs} sub-lines, got {}", line.subs.len()));
    }
    for (t, &other) in other_ground.iter().enumerate() {
        let (i, j) = match line.axis {
            Axis::Row => (line.value, other),
            Axis::Col => (other, line.value),
        };
        alpha[line.position] = i;
        beta[line.position] = j;
        if rest.is_empty() {
            out.push((alpha.clone(), beta.clone()));
        } else {
            let r: Vec<u8> = rows.iter().copied().filter(|&x| x != i).collect();
            let c: Vec<u8> = cols.iter().copied().filter(|&x| x != j).collect();
            collect_cells(&line.subs[t], &rest, &r, &c, alpha, beta, out)?;
        }
    }
    Ok(())
}

pub fn line_sum(m: &TupleMatrix, line: &KLine) -> Result<Rational> {
    Ok(k_line_cells(line, m.n, m.k)?
        .iter()
        .map(|(a, b)| m.get(a, b).clone())
        .sum())
}

/// The `k`-cosets `T_{α↦β}` of a line's cells.
pub fn line_cosets(cells: &[Cell]) -> Vec<CosetLabel> {
    cells
        .iter()
        .map(|(a, b)| CosetLabel::new(a.clone(), b.clone()).expect("cells hold distinct tuples"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BistochasticCheck {
    pub holds: bool,
    pub reason: Option<String>,
}

pub fn is_k_bistochastic(m: &TupleMatrix) -> bool {
    check_k_bistochastic(m).holds
}

/// Decides `k`-bistochasticity through the block recursion over every
/// coordinate ordering.
pub fn check_k_bistochastic(m: &TupleMatrix) -> BistochasticCheck {
    check_with_first(m, None)
}

/// As [`check_k_bistochastic`], but the top-level split uses only coordinate
/// `first`; deeper levels still range over every ordering.
pub fn check_k_bistochastic_from(m: &TupleMatrix, first: usize) -> Result<BistochasticCheck> {
    if first >= m.k {
        return reject(format!("coordinate {first} out of range for k={}", m.k));
    }
    Ok(check_with_first(m, Some(first)))
}

fn check_with_first(m: &TupleMatrix, first: Option<usize>) -> BistochasticCheck {
    let ts = m.tuples();
    for (r, row) in m.entries.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if v.is_negative() {
                return BistochasticCheck {
                    holds: false,
                    reason: Some(format!(
                        "negative entry at {:?}, {:?}",
                        one_based(&ts[r]),
                        one_based(&ts[c])
                    )),
                };
            }
        }
    }
    let all: Vec<usize> = (0..ts.len()).collect();
    let free: Vec<usize> = (0..m.k).collect();
    match scaled_lines(m, &ts, &all, &all, &free, &int(1), first) {
        None => BistochasticCheck {
            holds: true,
            reason: None,
        },
        Some(reason) => BistochasticCheck {
            holds: false,
            reason: Some(reason),
        },
    }
}

fn one_based(t: &[u8]) -> Vec<usize> {
    t.iter().map(|&x| x as usize + 1).collect()
}

/// Every line of the sub-matrix `rows × cols` over free coordinates `free`
/// sums to `target`; returns the first failure.
fn scaled_lines(
    m: &TupleMatrix,
    ts: &[Vec<u8>],
    rows: &[usize],
    cols: &[usize],
    free: &[usize],
    target: &Rational,
    first: Option<usize>,
) -> Option<String> {
    let choices: Vec<usize> = match first {
        Some(c) => vec![c],
        None => free.to_vec(),
    };
    for &c in &choices {
        let row_values: BTreeSet<u8> = rows.iter().map(|&r| ts[r][c]).collect();
        let col_values: BTreeSet<u8> = cols.iter().map(|&r| ts[r][c]).collect();
        let row_groups: Vec<(u8, Vec<usize>)> = row_values
            .iter()
            .map(|&v| (v, rows.iter().copied().filter(|&r| ts[r][c] == v).collect()))
            .collect();
        let col_groups: Vec<(u8, Vec<usize>)> = col_values
            .iter()
            .map(|&v| (v, cols.iter().copied().filter(|&r| ts[r][c] == v).collect()))
            .collect();
        // r_ij = (block sum) / (block size); R must be target-scaled bistochastic.
        let mut r = vec![vec![Rational::zero(); col_groups.len()]; row_groups.len()];
        for (a, (_, rg)) in row_groups.iter().enumerate() {
            for (b, (_, cg)) in col_groups.iter().enumerate() {
                let s: Rational = rg
                    .iter()
                    .flat_map(|&i| cg.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| m.entries[i][j].clone())
                    .sum();
                r[a][b] = s / int(rg.len() as i64);
            }
        }
        for (a, (v, _)) in row_groups.iter().enumerate() {
            let s: Rational = r[a].iter().sum();
            if s != *target {
                return Some(format!(
                    "block row {} on coordinate {} sums to {s}, expected {target}",
                    v + 1,
                    c + 1
                ));
            }
        }
        for (b, (v, _)) in col_groups.iter().enumerate() {
            let s: Rational = r.iter().map(|row| &row[b]).sum();
            if s != *target {
                return Some(format!(
                    "block column {} on coordinate {} sums to {s}, expected {target}",
                    v + 1,
                    c + 1
                ));
            }
        }
        if free.len() > 1 {
            let rest: Vec<usize> = free.iter().copied().filter(|&x| x != c).collect();
            for (a, (_, rg)) in row_groups.iter().enumerate() {
                for (b, (_, cg)) in col_groups.iter().enumerate() {
                    if let Some(reason) = scaled_lines(m, ts, rg, cg, &rest, &r[a][b], None) {
                        return Some(reason);
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    #[serde(with = "crate::rational")]
    pub weight: Rational,
    pub perm: Perm,
}

fn resum(n: usize, k: usize, terms: &[DecompositionTerm]) -> Result<TupleMatrix> {
    let pairs: Vec<(Rational, Perm)> = terms.iter().map(|t| (t.weight.clone(), t.perm.clone())).collect();
    TupleMatrix::convex_combination(n, k, &pairs)
}

/// Classical Birkhoff–von Neumann decomposition of a bistochastic matrix,
/// reduced to at most `(n-1)^2 + 1` terms.
pub fn birkhoff_decompose(m: &TupleMatrix) -> Result<Vec<DecompositionTerm>> {
    if m.k != 1 {
        return reject("birkhoff_decompose needs k = 1");
    }
    let check = check_k_bistochastic(m);
    if !check.holds {
        return reject(format!(
            "matrix is not bistochastic: {}",
            check.reason.unwrap_or_default()
        ));
    }
    let n = m.n;
    let mut rest = m.entries.clone();
    let mut terms = Vec::new();
    while rest.iter().flatten().any(|v| !v.is_zero()) {
        let allowed: Vec<Vec<bool>> = rest
            .iter()
            .map(|r| r.iter().map(|v| v.is_positive()).collect())
            .collect();
        let Some(matching) = perfect_matching(&allowed) else {
            return violation("no perfect matching on the positive support of a bistochastic remainder");
        };
        let eps = (0..n).map(|i| rest[i][matching[i]].clone()).min().expect("n >= 1");
        for i in 0..n {
            rest[i][matching[i]] -= &eps;
        }
        terms.push(DecompositionTerm {
            weight: eps,
            perm: Perm::from_images(matching.iter().map(|&j| j as u8).collect())?,
        });
    }
    let terms = caratheodory_reduce(n, terms, (n - 1) * (n - 1) + 1);
    if resum(n, 1, &terms)? != *m {
        return violation("Birkhoff decomposition does not re-sum to the input");
    }
    Ok(terms)
}

/// Drops terms through affine dependences until at most `limit` remain.
fn caratheodory_reduce(n: usize, mut terms: Vec<DecompositionTerm>, limit: usize) -> Vec<DecompositionTerm> {
    while terms.len() > limit {
        // Columns: vec(P_t) stacked over a row of ones.
        let mut a = vec![vec![Rational::zero(); terms.len()]; n * n + 1];
        for (t, term) in terms.iter().enumerate() {
            for i in 0..n {
                a[i * n + term.perm.apply(i)][t] = int(1);
            }
            a[n * n][t] = int(1);
        }
        let lambda = null_vector(&a).expect("more terms than the affine dimension");
        let (drop, theta) = lambda
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_positive())
            .map(|(t, l)| (t, &terms[t].weight / l))
            .min_by(|x, y| x.1.cmp(&y.1))
            .expect("a null vector with zero sum has a positive entry");
        for (t, term) in terms.iter_mut().enumerate() {
            term.weight -= &theta * &lambda[t];
        }
        terms[drop].weight = Rational::zero();
        terms.retain(|t| t.weight.is_positive());
    }
    terms
}

/// Decomposes a `k`-bistochastic matrix into induced permutation matrices
/// by repeatedly peeling `ε P_σ^{(k)}` off a positive diagonal.
pub fn gen_birkhoff_decompose(m: &TupleMatrix) -> Result<Vec<DecompositionTerm>> {
    let check = check_k_bistochastic(m);
    if !check.holds {
        return reject(format!(
            "matrix is not {}-bistochastic: {}",
            m.k,
            check.reason.unwrap_or_default()
        ));
    }
    let (n, k) = (m.n, m.k);
    let ts = m.tuples();
    let mut rest = m.entries.clone();
    let mut terms = Vec::new();
    while rest.iter().flatten().any(|v| !v.is_zero()) {
        let Some(sigma) = positive_induced(&rest, n, &ts) else {
            return violation(format!(
                "no permutation induces a positive diagonal of a {k}-bistochastic remainder (n={n})"
            ));
        };
        let cells: Vec<(usize, usize)> = ts
            .iter()
            .enumerate()
            .map(|(r, a)| {
                let image: Vec<u8> = a.iter().map(|&x| sigma.apply(x as usize) as u8).collect();
                (r, tuple_index(n, &image))
            })
            .collect();
        let eps = cells.iter().map(|&(r, c)| rest[r][c].clone()).min().expect("nonempty");
        for &(r, c) in &cells {
            rest[r][c] -= &eps;
        }
        terms.push(DecompositionTerm {
            weight: eps,
            perm: sigma,
        });
    }
    if resum(n, k, &terms)? != *m {
        return violation("generalized Birkhoff decomposition does not re-sum to the input");
    }
    Ok(terms)
}

/// Backtracking over partial maps; after fixing `σ(p)` every tuple inside
/// `{0..=p}` that uses `p` must hit a positive entry.
fn positive_induced(rest: &[Vec<Rational>], n: usize, ts: &[Vec<u8>]) -> Option<Perm> {
    fn extend(
        p: usize,
        images: &mut Vec<u8>,
        used: &mut [bool],
        rest: &[Vec<Rational>],
        n: usize,
        ts: &[Vec<u8>],
        by_max: &[Vec<usize>],
    ) -> bool {
        if p == n {
            return true;
        }
        for v in 0..n as u8 {
            if used[v as usize] {
                continue;
            }
            images.push(v);
            let ok = by_max[p].iter().all(|&r| {
                let image: Vec<u8> = ts[r].iter().map(|&x| images[x as usize]).collect();
                rest[r][tuple_index(n, &image)].is_positive()
            });
            if ok {
                used[v as usize] = true;
                if extend(p + 1, images, used, rest, n, ts, by_max) {
                    return true;
                }
                used[v as usize] = false;
            }
            images.pop();
        }
        false
    }
    // Tuples grouped by their largest element.
    let mut by_max = vec![Vec::new(); n];
    for (r, t) in ts.iter().enumerate() {
        by_max[*t.iter().max().expect("k >= 1") as usize].push(r);
    }
    let mut images = Vec::with_capacity(n);
    if extend(0, &mut images, &mut vec![false; n], rest, n, ts, &by_max) {
        Some(Perm::from_images(images).expect("bijection"))
    } else {
        None
    }
}

/// Either nonnegative coefficients `b_{α,β}` with `Σ b_{α,β} 1_{T_{α↦β}} = f`,
/// or a certificate `y` on `S_n` whose sum over every `k`-coset is
/// nonnegative while `⟨y, f⟩ < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CosetRepresentation {
    Nonnegative { coefficients: TupleMatrix },
    Infeasible { certificate: GroupFunction },
}

/// A nonnegative `k`-coset representation of `f ∈ V_k`, or a verified
/// certificate that none exists.
pub fn coset_representation(f: &GroupFunction, k: usize) -> Result<CosetRepresentation> {
    let n = f.n;
    check_shape(n, k)?;
    let cap = if k == 1 {
        MAX_REPRESENTATION_N
    } else {
        MAX_REPRESENTATION_LP_N
    };
    check_cap("representation n", n, cap)?;
    let table = character_table(n)?;
    if !is_in_vk(f, k, &table)? {
        return reject(format!("function is not in V_{k}"));
    }
    let out = if k == 1 {
        assignment_representation(f)?
    } else {
        lp_representation(f, k)?
    };
    match &out {
        CosetRepresentation::Nonnegative { coefficients } => {
            if coefficients.entries.iter().flatten().any(|v| v.is_negative())
                || coefficients.represented_function()? != *f
            {
                return violation("coset representation failed its re-summation check");
            }
        }
        CosetRepresentation::Infeasible { certificate } => {
            if !certifies(certificate, f, k)? {
                return violation("infeasibility certificate failed verification");
            }
        }
    }
    Ok(out)
}

/// Nonnegative `k`-coset representation of `f ∈ V_k`. An infeasible
/// outcome for nonnegative `f` is a theorem violation; for `k >= 2` such `f`
/// exist, and [`non_birkhoff_witness`] turns them into matrices.
pub fn nonneg_coset_representation(f: &GroupFunction, k: usize) -> Result<CosetRepresentation> {
    let out = coset_representation(f, k)?;
    if matches!(out, CosetRepresentation::Infeasible { .. }) && nonnegative(f) {
        return violation(format!(
            "nonnegative f in V_{k} has no nonnegative k-coset representation (n={})",
            f.n
        ));
    }
    Ok(out)
}

/// A `k`-bistochastic matrix outside the convex hull of induced permutation
/// matrices, derived from a nonnegative `f ∈ V_k` with no nonnegative coset
/// representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonBirkhoffWitness {
    /// `y` with every `k`-coset sum `>= 0` and `⟨y, f⟩ < 0`.
    pub certificate: GroupFunction,
    /// `C = Σ_σ y(σ) P_σ / Σ_σ y(σ)`. Nonnegative because its entries are
    /// coset sums of `y`; every `k`-line sums to 1. If `C = Σ s_σ P_σ` with
    /// `s >= 0`, then `s - y/Σy` annihilates `V_k`, so `⟨s, f⟩ < 0`, which
    /// is impossible for `f >= 0`.
    pub matrix: TupleMatrix,
}

/// `None` when `f` has a nonnegative representation.
pub fn non_birkhoff_witness(f: &GroupFunction, k: usize) -> Result<Option<NonBirkhoffWitness>> {
    if !nonnegative(f) {
        return reject("the witness needs a nonnegative function");
    }
    let CosetRepresentation::Infeasible { certificate } = coset_representation(f, k)? else {
        return Ok(None);
    };
    let total: Rational = certificate.values.iter().sum();
    if !total.is_positive() {
        return violation("certificate has nonpositive total mass");
    }
    let n = f.n;
    let mut matrix = TupleMatrix::zero(n, k)?;
    for (sigma, y) in all_perms(n).iter().zip(&certificate.values) {
        if y.is_zero() {
            continue;
        }
        let w = y / &total;
        for (r, a) in tuples(n, k).iter().enumerate() {
            let image: Vec<u8> = a.iter().map(|&x| sigma.apply(x as usize) as u8).collect();
            matrix.entries[r][tuple_index(n, &image)] += &w;
        }
    }
    if !is_k_bistochastic(&matrix) {
        return violation("witness matrix is not k-bistochastic");
    }
    Ok(Some(NonBirkhoffWitness { certificate, matrix }))
}

fn certifies(y: &GroupFunction, f: &GroupFunction, k: usize) -> Result<bool> {
    let yf: Rational = y.values.iter().zip(&f.values).map(|(a, b)| a * b).sum();
    if !yf.is_negative() {
        return Ok(false);
    }
    for label in crate::group_algebra::all_coset_labels(f.n, k) {
        let s: Rational = label.members(f.n)?.iter().map(|p| y.value(p).clone()).sum();
        if s.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `k = 1`: solve for any representation `A`, then shift by the optimal
/// assignment potentials, `b_ij = a_ij - u_i - v_j + min f / n >= 0`.
fn assignment_representation(f: &GroupFunction) -> Result<CosetRepresentation> {
    let n = f.n;
    let perms = all_perms(n);
    let rows: Vec<Vec<Rational>> = perms
        .iter()
        .map(|s| {
            let mut row = vec![Rational::zero(); n * n];
            for i in 0..n {
                row[i * n + s.apply(i)] = int(1);
            }
            row
        })
        .collect();
    let Some(a) = solve_any(&rows, &f.values) else {
        return violation("a function in V_1 has no 1-coset expansion");
    };
    let a: Vec<Vec<Rational>> = a.chunks(n).map(|r| r.to_vec()).collect();
    let best = min_cost_assignment(&a);
    if best.cost.is_negative() {
        let sigma = Perm::from_images(best.row_to_col.iter().map(|&j| j as u8).collect())?;
        let mut values = vec![Rational::zero(); perms.len()];
        values[sigma.rank()] = int(1);
        return Ok(CosetRepresentation::Infeasible {
            certificate: GroupFunction::new(n, values)?,
        });
    }
    let shift = &best.cost / int(n as i64);
    let entries = (0..n)
        .map(|i| (0..n).map(|j| &a[i][j] - &best.u[i] - &best.v[j] + &shift).collect())
        .collect();
    Ok(CosetRepresentation::Nonnegative {
        coefficients: TupleMatrix::new(n, 1, entries)?,
    })
}

/// `k >= 2`: phase-1 LP over all `((n)_k)^2` coset coefficients.
fn lp_representation(f: &GroupFunction, k: usize) -> Result<CosetRepresentation> {
    let n = f.n;
    let ts = tuples(n, k);
    let d = ts.len();
    let perms = all_perms(n);
    let rows: Vec<Vec<Rational>> = perms
        .iter()
        .map(|s| {
            let mut row = vec![Rational::zero(); d * d];
            for (r, a) in ts.iter().enumerate() {
                let image: Vec<u8> = a.iter().map(|&x| s.apply(x as usize) as u8).collect();
                row[r * d + tuple_index(n, &image)] = int(1);
            }
            row
        })
        .collect();
    Ok(match phase_one(&rows, &f.values) {
        Feasibility::Feasible(x) => CosetRepresentation::Nonnegative {
            coefficients: TupleMatrix::new(n, k, x.chunks(d).map(|r| r.to_vec()).collect())?,
        },
        Feasibility::Infeasible(y) => CosetRepresentation::Infeasible {
            certificate: GroupFunction::new(n, y)?,
        },
    })
}

/// Exact-cover search over the cosets inside the support: branch on the
/// uncovered permutation with the fewest fitting cosets, trying them in label
/// order. A wrong early choice can strand the rest, so plain greedy removal
/// is not enough.
struct CoverSearch<'a> {
    members: &'a [Vec<usize>],
    /// Cosets containing each permutation, by Lehmer rank.
    containing: Vec<Vec<usize>>,
    uncovered: Vec<bool>,
    chosen: Vec<usize>,
}

impl CoverSearch<'_> {
    fn fits(&self, t: usize) -> bool {
        self.members[t].iter().all(|&r| self.uncovered[r])
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for r in (0..self.uncovered.len()).filter(|&r| self.uncovered[r]) {
            let fitting: Vec<usize> = self.containing[r].iter().copied().filter(|&t| self.fits(t)).collect();
            if best.as_ref().is_none_or(|(_, b)| fitting.len() < b.len()) {
                let done = fitting.len() <= 1;
                best = Some((r, fitting));
                if done {
                    break;
                }
            }
        }
        let Some((_, candidates)) = best else {
            return true;
        };
        for t in candidates {
            for &r in &self.members[t] {
                self.uncovered[r] = false;
            }
            self.chosen.push(t);
            if self.solve() {
                return true;
            }
            self.chosen.pop();
            for &r in &self.members[t] {
                self.uncovered[r] = true;
            }
        }
        false
    }
}

/// Splits a Boolean `f ∈ V_k` into disjoint `k`-cosets. A Boolean function
/// in `V_k` whose support admits no such partition is reported as a theorem
/// violation; for `k >= 2` these exist (already at `n = 5`).
pub fn boolean_peel(f: &GroupFunction, k: usize) -> Result<Vec<CosetLabel>> {
    let n = f.n;
    check_cap("peel n", n, MAX_PEEL_N)?;
    if k == 0 || k >= n {
        return reject(format!("peeling needs 1 <= k <= n-1 (n={n}, k={k})"));
    }
    if !f.is_boolean() {
        return reject("peeling needs a {0,1}-valued function");
    }
    let table = character_table(n)?;
    if !is_in_vk(f, k, &table)? {
        return reject(format!("function is not in V_{k}"));
    }
    let labels = crate::group_algebra::all_coset_labels(n, k);
    let members: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| Ok(l.members(n)?.iter().map(Perm::rank).collect()))
        .collect::<Result<_>>()?;
    let mut containing = vec![Vec::new(); f.values.len()];
    for (t, m) in members.iter().enumerate() {
        for &r in m {
            containing[r].push(t);
        }
    }
    let mut search = CoverSearch {
        members: &members,
        containing,
        uncovered: f.values.iter().map(|v| v.is_one()).collect(),
        chosen: Vec::new(),
    };
    if !search.solve() {
        return violation(format!(
            "Boolean function in V_{k} with support {} is not a disjoint union of {k}-cosets (n={n})",
            f.support().len()
        ));
    }
    let out: Vec<CosetLabel> = search.chosen.iter().map(|&t| labels[t].clone()).collect();
    let mut total = GroupFunction::zero(n)?;
    for l in &out {
        total = total.add(&coset_indicator(l, n)?)?;
    }
    if total != *f {
        return violation("peeled cosets do not re-sum to the input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn perm(images: &[usize]) -> Perm {
        Perm::from_one_based(images).unwrap()
    }

    fn random_line(n: usize, k: usize, rng: &mut ChaCha8Rng) -> KLine {
        fn rec(free: &[usize], rows: &[u8], cols: &[u8], rng: &mut ChaCha8Rng) -> KLine {
            let position = *free.choose(rng).unwrap();
            let axis = if rng.gen_bool(0.5) { Axis::Row } else { Axis::Col };
            let value = *match axis {
                Axis::Row => rows,
                Axis::Col => cols,
            }
            .choose(rng)
            .unwrap();
            let rest: Vec<usize> = free.iter().copied().filter(|&c| c != position).collect();
            let other = match axis {
                Axis::Row => cols,
                Axis::Col => rows,
            };
            let subs = if rest.is_empty() {
                Vec::new()
            } else {
                other
                    .iter()
                    .map(|&o| {
                        let (i, j) = match axis {
                            Axis::Row => (value, o),
                            Axis::Col => (o, value),
                        };
                        let r: Vec<u8> = rows.iter().copied().filter(|&x| x != i).collect();
                        let c: Vec<u8> = cols.iter().copied().filter(|&x| x != j).collect();
                        rec(&rest, &r, &c, rng)
                    })
                    .collect()
            };
            KLine {
                position,
                axis,
                value,
                subs,
            }
        }
        let ground: Vec<u8> = (0..n as u8).collect();
        rec(&(0..k).collect::<Vec<_>>(), &ground, &ground, rng)
    }

    #[test]
    fn tuple_index_is_lexicographic() {
        for (n, k) in [(3, 1), (4, 2), (5, 3), (5, 4)] {
            for (i, t) in tuples(n, k).iter().enumerate() {
                assert_eq!(tuple_index(n, t), i);
            }
        }
    }

    #[test]
    fn induced_matrices() {
        let id = induced_perm_matrix(&Perm::identity(4), 2).unwrap();
        for (i, row) in id.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { int(1) } else { int(0) });
            }
        }
        let t = induced_perm_matrix(&perm(&[2, 1, 3]), 1).unwrap();
        assert_eq!(t.entries[0][1], int(1));
        assert_eq!(t.entries[2][2], int(1));
        let c = induced_perm_matrix(&perm(&[2, 3, 1]), 2).unwrap();
        assert_eq!(*c.get(&[0, 1], &[1, 2]), int(1));
        assert_eq!(*c.get(&[2, 0], &[0, 1]), int(1));
        assert!(is_k_bistochastic(&c));
    }

    #[test]
    fn non_induced_permutation_matrix_fails() {
        // Swap the images of (1,2) and (2,1) in the identity of A_2, n = 3.
        let mut m = induced_perm_matrix(&Perm::identity(3), 2).unwrap();
        let (a, b) = (tuple_index(3, &[0, 1]), tuple_index(3, &[1, 0]));
        m.entries[a][a] = int(0);
        m.entries[b][b] = int(0);
        m.entries[a][b] = int(1);
        m.entries[b][a] = int(1);
        let check = check_k_bistochastic(&m);
        assert!(!check.holds);
        assert!(check.reason.is_some());
    }

    #[test]
    fn negative_entry_is_reported() {
        let mut m = induced_perm_matrix(&Perm::identity(3), 1).unwrap();
        m.entries[0][0] = int(2);
        m.entries[0][1] = int(-1);
        m.entries[1][1] = int(0);
        m.entries[1][0] = int(1);
        let check = check_k_bistochastic(&m);
        assert!(!check.holds);
        assert!(check.reason.unwrap().contains("negative"));
    }

    #[test]
    fn line_cells_for_small_cases() {
        let row = KLine {
            position: 0,
            axis: Axis::Row,
            value: 1,
            subs: vec![],
        };
        let cells = k_line_cells(&row, 4, 1).unwrap();
        assert_eq!(cells, (0..4u8).map(|j| (vec![1], vec![j])).collect::<Vec<_>>());
        // n = 3, k = 2: block row 1 on the first coordinate, rows inside.
        let line = KLine {
            position: 0,
            axis: Axis::Row,
            value: 0,
            subs: (0..3u8)
                .map(|j| KLine {
                    position: 1,
                    axis: Axis::Row,
                    value: if j == 1 { 2 } else { 1 },
                    subs: vec![],
                })
                .collect(),
        };
        let cells = k_line_cells(&line, 3, 2).unwrap();
        assert_eq!(cells.len(), 6);
        let mut covered = vec![0; 6];
        for label in line_cosets(&cells) {
            for p in label.members(3).unwrap() {
                covered[p.rank()] += 1;
            }
        }
        assert_eq!(covered, vec![1; 6]);
        let bad = KLine {
            position: 1,
            ..line.clone()
        };
        assert!(k_line_cells(&bad, 3, 2).is_err());
    }

    #[test]
    fn line_cosets_partition_the_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, k) in [(3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (5, 2), (4, 3)] {
            for _ in 0..20 {
                let line = random_line(n, k, &mut rng);
                let cells = k_line_cells(&line, n, k).unwrap();
                assert_eq!(cells.len(), falling(n, k));
                let mut covered = vec![0u32; crate::perm::factorial(n) as usize];
                for label in line_cosets(&cells) {
                    for p in label.members(n).unwrap() {
                        covered[p.rank()] += 1;
                    }
                }
                assert!(covered.iter().all(|&c| c == 1), "({n},{k}) {line:?}");
            }
        }
    }

    #[test]
    fn induced_lines_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, k) in [(4, 2), (5, 2), (4, 3)] {
            let perms = all_perms(n);
            let m = induced_perm_matrix(perms.choose(&mut rng).unwrap(), k).unwrap();
            for _ in 0..20 {
                assert_eq!(line_sum(&m, &random_line(n, k, &mut rng)).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn convex_combinations_are_bistochastic_and_decompose() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (n, k) in [(3, 1), (4, 2), (5, 2), (4, 3)] {
            let perms = all_perms(n);
            for _ in 0..5 {
                let t = rng.gen_range(1..5);
                let raw: Vec<i64> = (0..t).map(|_| rng.gen_range(1..6)).collect();
                let total: i64 = raw.iter().sum();
                let terms: Vec<(Rational, Perm)> = raw
                    .iter()
                    .map(|&w| (frac(w, total), perms.choose(&mut rng).unwrap().clone()))
                    .collect();
                let m = TupleMatrix::convex_combination(n, k, &terms).unwrap();
                assert!(is_k_bistochastic(&m));
                let dec = gen_birkhoff_decompose(&m).unwrap();
                assert!(dec.iter().all(|t| t.weight.is_positive()));
                assert_eq!(dec.iter().map(|t| t.weight.clone()).sum::<Rational>(), int(1));
                assert_eq!(resum(n, k, &dec).unwrap(), m);
            }
        }
    }

    #[test]
    fn half_half_at_four_three() {
        let (s, t) = (perm(&[2, 1, 3, 4]), perm(&[1, 3, 4, 2]));
        let m = TupleMatrix::convex_combination(4, 3, &[(frac(1, 2), s), (frac(1, 2), t)]).unwrap();
        let dec = gen_birkhoff_decompose(&m).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.iter().all(|t| t.weight == frac(1, 2)));
    }

    #[test]
    fn classical_birkhoff() {
        let p = induced_perm_matrix(&perm(&[3, 1, 2]), 1).unwrap();
        let dec = birkhoff_decompose(&p).unwrap();
        assert_eq!(
            dec,
            vec![DecompositionTerm {
                weight: int(1),
                perm: perm(&[3, 1, 2])
            }]
        );
        let half = TupleMatrix::new(2, 1, vec![vec![frac(1, 2); 2]; 2]).unwrap();
        let dec = birkhoff_decompose(&half).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.iter().all(|t| t.weight == frac(1, 2)));
        for n in 2..=5 {
            let flat = TupleMatrix::new(n, 1, vec![vec![frac(1, n as i64); n]; n]).unwrap();
            let dec = birkhoff_decompose(&flat).unwrap();
            assert!(dec.len() <= (n - 1) * (n - 1) + 1);
            assert_eq!(resum(n, 1, &dec).unwrap(), flat);
        }
        let not = TupleMatrix::new(2, 1, vec![vec![int(1), int(1)], vec![int(0), int(0)]]).unwrap();
        assert!(matches!(birkhoff_decompose(&not), Err(Error::RejectedInput(_))));
    }

    #[test]
    fn caratheodory_keeps_the_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 3;
        let perms = all_perms(n);
        // Six distinct terms exceed the bound (n-1)^2 + 1 = 5.
        let terms: Vec<DecompositionTerm> = perms
            .iter()
            .map(|p| DecompositionTerm {
                weight: frac(rng.gen_range(1..5), 60),
                perm: p.clone(),
            })
            .collect();
        let before = resum(n, 1, &terms).unwrap();
        let after = caratheodory_reduce(n, terms, 5);
        assert!(after.len() <= 5);
        assert_eq!(resum(n, 1, &after).unwrap(), before);
    }

    fn indicator_sum(n: usize, labels: &[(Vec<u8>, Vec<u8>)], weights: &[i64]) -> GroupFunction {
        let mut f = GroupFunction::zero(n).unwrap();
        for ((a, b), &w) in labels.iter().zip(weights) {
            let ind = coset_indicator(&CosetLabel::new(a.clone(), b.clone()).unwrap(), n).unwrap();
            f = f.add(&ind.scale(&int(w))).unwrap();
        }
        f
    }

    #[test]
    fn k1_representations() {
        let single = indicator_sum(4, &[(vec![0], vec![0])], &[1]);
        let ones = GroupFunction::constant(4, int(1)).unwrap();
        let mixed = indicator_sum(4, &[(vec![0], vec![0]), (vec![1], vec![0])], &[2, 1]);
        for f in [single, ones, mixed] {
            match nonneg_coset_representation(&f, 1).unwrap() {
                CosetRepresentation::Nonnegative { coefficients } => {
                    assert_eq!(coefficients.represented_function().unwrap(), f)
                }
                other => panic!("{other:?}"),
            }
        }
        // Negative somewhere: the certificate is a point mass at a minimizer.
        let neg = indicator_sum(4, &[(vec![0], vec![0]), (vec![1], vec![1])], &[1, -2]);
        match nonneg_coset_representation(&neg, 1).unwrap() {
            CosetRepresentation::Infeasible { certificate } => assert!(certifies(&certificate, &neg, 1).unwrap()),
            other => panic!("{other:?}"),
        }
        assert!(nonneg_coset_representation(&GroupFunction::sign(4).unwrap(), 1).is_err());
    }

    #[test]
    fn k2_representation_by_lp() {
        let f = indicator_sum(4, &[(vec![0, 1], vec![2, 3]), (vec![1, 2], vec![0, 1])], &[1, 3]);
        match nonneg_coset_representation(&f, 2).unwrap() {
            CosetRepresentation::Nonnegative { coefficients } => {
                assert_eq!(coefficients.represented_function().unwrap(), f)
            }
            other => panic!("{other:?}"),
        }
        let neg = f.scale(&int(-1));
        assert!(matches!(
            nonneg_coset_representation(&neg, 2).unwrap(),
            CosetRepresentation::Infeasible { .. }
        ));
    }

    #[test]
    fn peeling() {
        assert!(boolean_peel(&GroupFunction::zero(4).unwrap(), 1).unwrap().is_empty());
        let f = indicator_sum(4, &[(vec![0], vec![1]), (vec![0], vec![2])], &[1, 1]);
        let got: BTreeSet<CosetLabel> = boolean_peel(&f, 1).unwrap().into_iter().collect();
        let want: BTreeSet<CosetLabel> = [
            CosetLabel::new(vec![0], vec![1]).unwrap(),
            CosetLabel::new(vec![0], vec![2]).unwrap(),
        ]
        .into();
        assert_eq!(got, want);
        let not_boolean = indicator_sum(4, &[(vec![0], vec![1])], &[2]);
        assert!(boolean_peel(&not_boolean, 1).is_err());
    }

    #[test]
    fn tuple_matrix_json_round_trip() {
        let m =
            TupleMatrix::convex_combination(3, 2, &[(frac(1, 3), perm(&[2, 3, 1])), (frac(2, 3), Perm::identity(3))])
                .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"2/3\""));
        let back: TupleMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<TupleMatrix>(r#"{"n":3,"k":2,"entries":[["1"]]}"#).is_err());
    }
}
