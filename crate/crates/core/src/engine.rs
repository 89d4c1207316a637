//! The weighted pseudo-adjacency construction.
//!
//! Coefficients `d_j` are solved on the partitions strictly above the hook
//! `(n-k, 1^k)`; the hook equation is deliberately left out of the system and
//! checked afterwards. `Y_even` and `Y_odd` use classes of one parity each
//! (splitting a generator when its parity is wrong) and `Y` averages them so
//! the tall eigenvalues cancel.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{above_hook, CharacterTable};
use crate::error::{reject, violation, Result};
use crate::lp::{self, Feasibility};
use crate::partitions::{classify, split, Partition, PartitionClass};
use crate::perm::{factorial, falling};
use crate::rational::{big, int, Rational};
use crate::spectrum::{cayley_eigenvalue, fpf_classes, in_fpf, EigenEntry};

pub use crate::spectrum::{ComboTerm, WeightedClassCombo};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omega {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::rational")]
    pub value: Rational,
}

/// `ω = -1/((n)_k - 1)`, the Hoffman ratio a `k`-coset must attain.
pub fn omega(n: usize, k: usize) -> Result<Omega> {
    if !(n > k && k >= 1) {
        return reject(format!("omega needs n > k >= 1 (n={n}, k={k})"));
    }
    let value = Rational::new(-BigInt::one(), BigInt::from(falling(n, k)) - 1);
    Ok(Omega { n, k, value })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityChoice {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Even,
    Odd,
    Combined,
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Variant::Even),
            "odd" => Ok(Variant::Odd),
            "combined" => Ok(Variant::Combined),
            other => reject(format!("unknown variant {other:?}")),
        }
    }
}

fn check_construction_range(n: usize, k: usize) -> Result<()> {
    if k == 0 || n <= 3 * k + 1 {
        return reject(format!("construction needs n > 3k+1 and k >= 1 (n={n}, k={k})"));
    }
    Ok(())
}

/// One generator per partition above the hook: the partition itself when its
/// class has the requested parity, its split otherwise.
pub fn choose_generators(n: usize, k: usize, parity: ParityChoice) -> Result<Vec<Partition>> {
    check_construction_range(n, k)?;
    let want_even = parity == ParityChoice::Even;
    let mut out = Vec::new();
    for phi in above_hook(n, k)? {
        let g = if phi.is_even_class() == want_even {
            phi
        } else {
            split(&phi, k)?
        };
        if g.is_even_class() != want_even || !in_fpf(&g, k) {
            return violation(format!("generator {g} is not an admissible {parity:?} class for k={k}"));
        }
        out.push(g);
    }
    Ok(out)
}

/// Solves `M d = b` with `M[i][j] = λ_{φ_i}(X_{μ_j})` and `b = (1, ω, …, ω)`,
/// then confirms the unsolved hook equation.
pub fn solve_coefficients(table: &CharacterTable, k: usize, generators: &[Partition]) -> Result<Vec<Rational>> {
    let n = table.n;
    check_construction_range(n, k)?;
    let phis = above_hook(n, k)?;
    if generators.len() != phis.len() {
        return reject(format!("expected {} generators, got {}", phis.len(), generators.len()));
    }
    for g in generators {
        if g.n() != n || !in_fpf(g, k) {
            return reject(format!("generator {g} is not in FPF_{k} of S_{n}"));
        }
    }
    let w = omega(n, k)?.value;
    let m = phis
        .iter()
        .map(|phi| {
            generators
                .iter()
                .map(|g| cayley_eigenvalue(g, phi, table))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b: Vec<Rational> = (0..phis.len())
        .map(|i| if i == 0 { int(1) } else { w.clone() })
        .collect();
    let Some(d) = crate::linalg::solve(&m, &b) else {
        return violation(format!("coefficient system is singular for n={n}, k={k}"));
    };
    let mut hook_value = Rational::zero();
    for (g, dj) in generators.iter().zip(&d) {
        hook_value += dj * cayley_eigenvalue(g, &Partition::hook(n, k), table)?;
    }
    if hook_value != w {
        return violation(format!(
            "eigenvalue at the hook is {} instead of {}",
            crate::rational::to_string(&hook_value),
            crate::rational::to_string(&w)
        ));
    }
    Ok(d)
}

/// Per-class flags, each recomputed from the eigenvalue list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictFlags {
    pub trivial_is_one: bool,
    pub fat_equal_omega: bool,
    pub tall_matches: bool,
    pub sign_matches: bool,
    pub medium_strictly_smaller: bool,
    pub omega_is_min: bool,
    pub omega_is_second_largest_abs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumVerdict {
    pub variant: Variant,
    pub eigenvalues: Vec<EigenEntry>,
    pub omega: Omega,
    #[serde(with = "crate::rational")]
    pub expected_tall: Rational,
    #[serde(with = "crate::rational")]
    pub expected_sign: Rational,
    #[serde(with = "crate::rational")]
    pub max_medium_abs: Rational,
    /// `n (max_medium / |ω|)^2`, the square of the empirical `c_k` in the
    /// `c_k |ω| / √n` envelope. Reported only.
    #[serde(with = "crate::rational")]
    pub medium_envelope_sq: Rational,
    pub flags: VerdictFlags,
}

impl SpectrumVerdict {
    pub fn from_eigenvalues(variant: Variant, omega: Omega, eigenvalues: Vec<EigenEntry>) -> Self {
        let n = omega.n;
        let w = omega.value.clone();
        let (expected_tall, expected_sign) = match variant {
            Variant::Even => (w.clone(), int(1)),
            Variant::Odd => (-w.clone(), int(-1)),
            Variant::Combined => (Rational::zero(), Rational::zero()),
        };
        let of = |c: PartitionClass| eigenvalues.iter().filter(move |e| e.class == Some(c));
        let trivial_is_one = of(PartitionClass::Trivial).all(|e| e.value.is_one());
        let fat_equal_omega = of(PartitionClass::Fat).all(|e| e.value == w);
        let tall_matches = of(PartitionClass::Tall).all(|e| e.value == expected_tall);
        let sign_matches = of(PartitionClass::Sign).all(|e| e.value == expected_sign);
        let max_medium_abs = of(PartitionClass::Medium)
            .map(|e| e.value.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let medium_strictly_smaller = max_medium_abs < w.abs();
        let omega_is_min = eigenvalues.iter().all(|e| {
            if e.class == Some(PartitionClass::Fat) {
                e.value == w
            } else {
                e.value > w
            }
        });
        let omega_is_second_largest_abs = eigenvalues
            .iter()
            .filter(|e| e.class != Some(PartitionClass::Trivial))
            .map(|e| e.value.abs())
            .max()
            .is_some_and(|m| m == w.abs());
        let ratio = &max_medium_abs / w.abs();
        let medium_envelope_sq = &ratio * &ratio * big(n as u64);
        SpectrumVerdict {
            variant,
            eigenvalues,
            omega,
            expected_tall,
            expected_sign,
            max_medium_abs,
            medium_envelope_sq,
            flags: VerdictFlags {
                trivial_is_one,
                fat_equal_omega,
                tall_matches,
                sign_matches,
                medium_strictly_smaller,
                omega_is_min,
                omega_is_second_largest_abs,
            },
        }
    }

    /// The exact per-class equalities; the medium cell is asymptotic and excluded.
    pub fn equalities_hold(&self) -> bool {
        let f = &self.flags;
        f.trivial_is_one && f.fat_equal_omega && f.tall_matches && f.sign_matches
    }

    pub fn value(&self, rep: &Partition) -> Option<&Rational> {
        self.eigenvalues.iter().find(|e| &e.partition == rep).map(|e| &e.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YConstruction {
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    pub generators: Vec<Partition>,
    #[serde(with = "crate::rational::vec")]
    pub coefficients: Vec<Rational>,
    /// `max_j |d_j| (n-1)!`, the quantity bounded by `B_k`.
    #[serde(with = "crate::rational")]
    pub scaled_max_coefficient: Rational,
    pub combo: WeightedClassCombo,
    pub verdict: SpectrumVerdict,
}

fn combination_spectrum(combo: &WeightedClassCombo, table: &CharacterTable) -> Result<Vec<EigenEntry>> {
    let k = combo.k;
    Ok(combo
        .spectrum(table)?
        .into_iter()
        .map(|(partition, value)| EigenEntry {
            class: classify(&partition, k).ok(),
            partition,
            value,
        })
        .collect())
}

/// Builds `Y_even`, `Y_odd` or `Y = ½(Y_even + Y_odd)` and classifies its
/// spectrum. A failed per-class equality is a theorem violation.
pub fn build_y(table: &CharacterTable, k: usize, variant: Variant) -> Result<YConstruction> {
    let n = table.n;
    check_construction_range(n, k)?;
    let parities: &[ParityChoice] = match variant {
        Variant::Even => &[ParityChoice::Even],
        Variant::Odd => &[ParityChoice::Odd],
        Variant::Combined => &[ParityChoice::Even, ParityChoice::Odd],
    };
    let weight = Rational::new(BigInt::one(), BigInt::from(parities.len()));
    let mut generators = Vec::new();
    let mut coefficients = Vec::new();
    let mut merged: BTreeMap<Partition, Rational> = BTreeMap::new();
    for &parity in parities {
        let gens = choose_generators(n, k, parity)?;
        let d = solve_coefficients(table, k, &gens)?;
        for (g, dj) in gens.iter().zip(&d) {
            *merged.entry(g.clone()).or_insert_with(Rational::zero) += dj * &weight;
        }
        generators.extend(gens);
        coefficients.extend(d);
    }
    // Decreasing order, matching the character table.
    let terms: Vec<(Partition, Rational)> = merged.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
    let combo = WeightedClassCombo::new(n, k, terms)?;
    let verdict = SpectrumVerdict::from_eigenvalues(variant, omega(n, k)?, combination_spectrum(&combo, table)?);
    if !verdict.equalities_hold() {
        return violation(format!(
            "per-class equalities fail for n={n}, k={k}, variant {variant:?}: {:?}",
            verdict.flags
        ));
    }
    let scaled_max_coefficient = coefficients
        .iter()
        .map(|d| d.abs())
        .max()
        .unwrap_or_else(Rational::zero)
        * big(factorial(n - 1));
    Ok(YConstruction {
        n,
        k,
        variant,
        generators,
        coefficients,
        scaled_max_coefficient,
        combo,
        verdict,
    })
}

/// `-λ_min / (λ_1 - λ_min)`, the Hoffman bound on the measure of an independent set.
pub fn hoffman_ratio(lambda1: &Rational, lambda_min: &Rational) -> Result<Rational> {
    if !(lambda_min.is_negative() && lambda1.is_positive()) {
        return reject("hoffman_ratio needs lambda_min < 0 < lambda1");
    }
    Ok(-lambda_min / (lambda1 - lambda_min))
}

/// `|λ_2| / (λ_1 + |λ_2|)`, the bound on `√(|I||J|) / |V|` for cross-independent sets.
pub fn cross_ratio(lambda1: &Rational, lambda2_abs: &Rational) -> Result<Rational> {
    if lambda2_abs.is_negative() || !lambda1.is_positive() {
        return reject("cross_ratio needs lambda2_abs >= 0 < lambda1");
    }
    Ok(lambda2_abs / (lambda1 + lambda2_abs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub partition: Partition,
    #[serde(with = "crate::rational")]
    pub multiplier: Rational,
    pub constraint: ConstraintKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    EqualOne,
    EqualOmega,
    AboveOmega,
}

/// Which inequality is imposed on the non-fat eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeMode {
    /// `λ_ρ >= ω`: the Hoffman bound `(n-k)!` alone.
    Weak,
    /// `λ_ρ > ω`: `ω` attained only on the fat partitions, as the equality
    /// characterization requires.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ProbeOutcome {
    /// Coefficients on the FPF classes meeting every constraint.
    Feasible { witness: WeightedClassCombo },
    /// Multipliers `y` on the eigenvalue rows with `Σ_ρ y_ρ λ_ρ(X) = 0` for
    /// every FPF class `X` and `y_ρ <= 0` on non-fat rows. Weak mode:
    /// `Σ_ρ y_ρ b_ρ < 0`. Strict mode: `Σ_ρ y_ρ b_ρ <= 0` with `y` nonzero on
    /// some non-fat row, which forces `λ_ρ <= ω` off the fat set.
    Infeasible { certificate: Vec<CertificateEntry> },
}

impl ProbeOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ProbeOutcome::Feasible { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub k: usize,
    pub omega: Omega,
    pub classes: Vec<Partition>,
    /// The verdict: the strict outcome.
    pub feasible: bool,
    pub weak: ProbeOutcome,
    pub strict: ProbeOutcome,
    /// Both outcomes were re-verified from scratch against the constraints.
    pub verified: bool,
}

impl ProbeReport {
    pub fn is_feasible(&self) -> bool {
        self.feasible
    }
}

struct ProbeSystem {
    n: usize,
    k: usize,
    rows: Vec<Partition>,
    kinds: Vec<ConstraintKind>,
    classes: Vec<Partition>,
    /// `lambda[ρ][X]`.
    lambda: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

fn probe_system(table: &CharacterTable, k: usize) -> Result<ProbeSystem> {
    let n = table.n;
    let w = omega(n, k)?.value;
    let classes = fpf_classes(n, k);
    let rows = table.order.clone();
    let mut kinds = Vec::new();
    let mut lambda = Vec::new();
    let mut rhs = Vec::new();
    for rho in &rows {
        let kind = match classify(rho, k)? {
            PartitionClass::Trivial => ConstraintKind::EqualOne,
            PartitionClass::Fat => ConstraintKind::EqualOmega,
            _ => ConstraintKind::AboveOmega,
        };
        rhs.push(if kind == ConstraintKind::EqualOne {
            int(1)
        } else {
            w.clone()
        });
        kinds.push(kind);
        lambda.push(
            classes
                .iter()
                .map(|x| cayley_eigenvalue(x, rho, table))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(ProbeSystem {
        n,
        k,
        rows,
        kinds,
        classes,
        lambda,
        rhs,
    })
}

impl ProbeSystem {
    fn values(&self, beta: &[Rational]) -> Vec<Rational> {
        self.lambda
            .iter()
            .map(|row| row.iter().zip(beta).map(|(l, c)| l * c).sum())
            .collect()
    }

    fn check_witness(&self, beta: &[Rational], mode: ProbeMode) -> bool {
        self.values(beta)
            .iter()
            .zip(&self.kinds)
            .zip(&self.rhs)
            .all(|((v, kind), b)| match (kind, mode) {
                (ConstraintKind::AboveOmega, ProbeMode::Weak) => v >= b,
                (ConstraintKind::AboveOmega, ProbeMode::Strict) => v > b,
                _ => v == b,
            })
    }

    fn check_certificate(&self, y: &[Rational], mode: ProbeMode) -> bool {
        let balanced = (0..self.classes.len()).all(|j| {
            let s: Rational = y.iter().zip(&self.lambda).map(|(yi, row)| yi * &row[j]).sum();
            s.is_zero()
        });
        let inequality_rows = || {
            y.iter()
                .zip(&self.kinds)
                .filter(|(_, kind)| **kind == ConstraintKind::AboveOmega)
        };
        let signs = inequality_rows().all(|(yi, _)| !yi.is_positive());
        let yb: Rational = y.iter().zip(&self.rhs).map(|(p, q)| p * q).sum();
        let tail = match mode {
            ProbeMode::Weak => yb.is_negative(),
            ProbeMode::Strict => !yb.is_positive() && inequality_rows().any(|(yi, _)| !yi.is_zero()),
        };
        balanced && signs && tail
    }

    fn slack_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.kinds[i] == ConstraintKind::AboveOmega)
            .collect()
    }

    /// Columns `β⁺, β⁻`, then `extra` columns given per row, then one
    /// surplus column per inequality row.
    fn matrix(&self, extra: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let c = self.classes.len();
        let slack = self.slack_rows();
        let e = extra.first().map_or(0, |r| r.len());
        (0..self.rows.len())
            .map(|i| {
                let mut row = vec![Rational::zero(); 2 * c + e + slack.len()];
                for j in 0..c {
                    row[j] = self.lambda[i][j].clone();
                    row[c + j] = -self.lambda[i][j].clone();
                }
                for (j, v) in extra.get(i).into_iter().flatten().enumerate() {
                    row[2 * c + j] = v.clone();
                }
                if let Some(s) = slack.iter().position(|&r| r == i) {
                    row[2 * c + e + s] = int(-1);
                }
                row
            })
            .collect()
    }

    fn beta_of(&self, x: &[Rational]) -> Vec<Rational> {
        let c = self.classes.len();
        (0..c).map(|j| &x[j] - &x[c + j]).collect()
    }

    fn combo(&self, beta: Vec<Rational>) -> Result<WeightedClassCombo> {
        let terms = self
            .classes
            .iter()
            .cloned()
            .zip(beta)
            .filter(|(_, b)| !b.is_zero())
            .collect();
        WeightedClassCombo::new(self.n, self.k, terms)
    }

    fn certificate(&self, y: Vec<Rational>) -> Vec<CertificateEntry> {
        self.rows
            .iter()
            .zip(&self.kinds)
            .zip(y)
            .map(|((p, kind), multiplier)| CertificateEntry {
                partition: p.clone(),
                multiplier,
                constraint: *kind,
            })
            .collect()
    }

    /// `Λβ = b` on fat rows, `Λβ >= b` elsewhere.
    fn weak(&self) -> (Option<Vec<Rational>>, Option<Vec<Rational>>) {
        match lp::phase_one(&self.matrix(&[]), &self.rhs) {
            Feasibility::Feasible(x) => (Some(self.beta_of(&x)), None),
            Feasibility::Infeasible(y) => (None, Some(y)),
        }
    }

    /// Homogenized strict system: `Λβ' - τ b = 0` on fat rows and
    /// `Λβ' - τ b >= 1` elsewhere, `τ >= 0`. Together with a weak point this is
    /// equivalent to strict feasibility; its Farkas certificate alone refutes it.
    fn strict(&self, weak_point: Option<&[Rational]>) -> (Option<Vec<Rational>>, Option<Vec<Rational>>) {
        let tau: Vec<Vec<Rational>> = self.rhs.iter().map(|b| vec![-b.clone()]).collect();
        let rhs: Vec<Rational> = self
            .kinds
            .iter()
            .map(|kind| {
                if *kind == ConstraintKind::AboveOmega {
                    int(1)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        match lp::phase_one(&self.matrix(&tau), &rhs) {
            Feasibility::Feasible(x) => {
                let direction = self.beta_of(&x);
                let t = x[2 * self.classes.len()].clone();
                let beta = if t.is_positive() {
                    direction.iter().map(|d| d / &t).collect()
                } else {
                    // A recession direction: step from the weak point.
                    let Some(base) = weak_point else {
                        return (None, None);
                    };
                    base.iter().zip(&direction).map(|(b, d)| b + d).collect()
                };
                (Some(beta), None)
            }
            Feasibility::Infeasible(y) => (None, Some(y)),
        }
    }
}

/// Exact LP decision: are there real coefficients on all FPF_k classes with
/// `λ_(n) = 1`, `λ_ρ = ω` on every other fat `ρ`, and `λ_ρ > ω` (strict) or
/// `λ_ρ >= ω` (weak) elsewhere? Both modes are decided; the verdict is the
/// strict one.
pub fn feasibility_probe(table: &CharacterTable, k: usize) -> Result<ProbeReport> {
    let n = table.n;
    if k == 0 || n <= 2 * k {
        return reject(format!("probe needs n > 2k >= 2 (n={n}, k={k})"));
    }
    let sys = probe_system(table, k)?;
    let mut verified = true;
    let (weak_point, weak_cert) = sys.weak();
    let (strict_point, strict_cert) = sys.strict(weak_point.as_deref());
    let mut outcome =
        |point: Option<Vec<Rational>>, cert: Option<Vec<Rational>>, mode: ProbeMode| -> Result<ProbeOutcome> {
            match (point, cert) {
                (Some(beta), _) => {
                    verified &= sys.check_witness(&beta, mode);
                    Ok(ProbeOutcome::Feasible {
                        witness: sys.combo(beta)?,
                    })
                }
                (None, Some(y)) => {
                    verified &= sys.check_certificate(&y, mode);
                    Ok(ProbeOutcome::Infeasible {
                        certificate: sys.certificate(y),
                    })
                }
                (None, None) => {
                    // Strict direction exists but the weak system is infeasible:
                    // the weak certificate refutes the strict system too.
                    let y = weak_cert.clone().expect("weak outcome missing");
                    verified &= sys.check_certificate(&y, ProbeMode::Weak);
                    Ok(ProbeOutcome::Infeasible {
                        certificate: sys.certificate(y),
                    })
                }
            }
        };
    let weak = outcome(weak_point.clone(), weak_cert.clone(), ProbeMode::Weak)?;
    let strict = outcome(strict_point, strict_cert, ProbeMode::Strict)?;
    if !verified {
        return violation(format!("probe outcome for n={n}, k={k} failed exact re-verification"));
    }
    Ok(ProbeReport {
        n,
        k,
        omega: omega(n, k)?,
        classes: sys.classes,
        feasible: strict.is_feasible(),
        weak,
        strict,
        verified,
    })
}

/// Whether a combination satisfies the probe's constraints in the given mode.
pub fn satisfies_probe_constraints(
    table: &CharacterTable,
    combo: &WeightedClassCombo,
    mode: ProbeMode,
) -> Result<bool> {
    let sys = probe_system(table, combo.k)?;
    let beta: Vec<Rational> = sys
        .classes
        .iter()
        .map(|x| {
            combo
                .terms
                .iter()
                .filter(|t| &t.cycle_type == x)
                .map(|t| t.coefficient.clone())
                .sum()
        })
        .collect();
    Ok(sys.check_witness(&beta, mode))
}
