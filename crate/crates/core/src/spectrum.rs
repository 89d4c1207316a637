//! Conjugacy classes of `S_n` and the spectra of Cayley graphs generated by
//! unions of classes.
//!
//! For a class `X` and irreducible `ρ` the eigenvalue is
//! `|X| χ_ρ(X) / dim ρ`; nothing here ever builds an eigenvector. The
//! explicit-matrix moment check is the independent cross-validation.

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{check_cap, reject, Result};
use crate::partitions::{classify, enumerate_partitions, Partition, PartitionClass};
use crate::perm::{all_perms, factorial};
use crate::rational::{self, big, Rational};

/// Largest `n` for which explicit `n! x n!` matrices are built.
pub const MAX_EXPLICIT_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    pub cycle_type: Partition,
    pub size: u64,
    pub parity: Parity,
    pub fixed_points: usize,
}

/// `|X| = n! / prod_j j^{a_j} a_j!`.
pub fn class_size(cycle_type: &Partition) -> u64 {
    let mut denom: u64 = 1;
    let mut j = 0;
    let parts = cycle_type.parts();
    while j < parts.len() {
        let len = parts[j];
        let mult = parts[j..].iter().take_while(|&&p| p == len).count();
        denom *= (len as u64).pow(mult as u32) * factorial(mult);
        j += mult;
    }
    factorial(cycle_type.n()) / denom
}

pub fn class_info(cycle_type: &Partition) -> ConjClass {
    ConjClass {
        cycle_type: cycle_type.clone(),
        size: class_size(cycle_type),
        parity: if cycle_type.is_even_class() {
            Parity::Even
        } else {
            Parity::Odd
        },
        fixed_points: cycle_type.multiplicity(1),
    }
}

/// Whether the class has fewer than `k` fixed points.
pub fn in_fpf(cycle_type: &Partition, k: usize) -> bool {
    cycle_type.multiplicity(1) < k
}

/// All cycle types with fewer than `k` fixed points, decreasing.
pub fn fpf_classes(n: usize, k: usize) -> Vec<Partition> {
    enumerate_partitions(n).into_iter().filter(|p| in_fpf(p, k)).collect()
}

fn check_same_n(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return reject(format!("partitions of different sizes: {a} vs {b}"));
    }
    Ok(())
}

/// Eigenvalue of `Cay(S_n, X)` on the isotypic component of `rep`.
pub fn cayley_eigenvalue(generating_type: &Partition, rep: &Partition, table: &CharacterTable) -> Result<Rational> {
    check_same_n(generating_type, rep)?;
    if rep.n() != table.n {
        return reject(format!("table is for n={}, got partitions of {}", table.n, rep.n()));
    }
    let size = BigInt::from(class_size(generating_type));
    let chi = BigInt::from(table.value(rep, generating_type));
    Ok(Rational::new(size * chi, BigInt::from(rep.dim())))
}

/// Eigenvalue and fat/tall/medium label of one irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub partition: Partition,
    #[serde(with = "crate::rational")]
    pub value: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<PartitionClass>,
}

fn label(p: &Partition, k: Option<usize>) -> Option<PartitionClass> {
    k.and_then(|k| classify(p, k).ok())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSpectrum {
    pub generating_type: Partition,
    pub class_size: u64,
    pub eigenvalues: Vec<EigenEntry>,
}

/// The full spectrum of the Cayley graph generated by one class.
pub fn class_spectrum(generating_type: &Partition, table: &CharacterTable, k: Option<usize>) -> Result<ClassSpectrum> {
    let eigenvalues = table
        .order
        .iter()
        .map(|rep| {
            Ok(EigenEntry {
                value: cayley_eigenvalue(generating_type, rep, table)?,
                class: label(rep, k),
                partition: rep.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassSpectrum {
        generating_type: generating_type.clone(),
        class_size: class_size(generating_type),
        eigenvalues,
    })
}

/// Spectrum of `Γ_k`, the Cayley graph generated by all permutations with
/// fewer than `k` fixed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpfSpectrum {
    pub n: usize,
    pub k: usize,
    pub classes: Vec<Partition>,
    #[serde(with = "crate::rational")]
    pub degree: Rational,
    pub eigenvalues: Vec<EigenEntry>,
}

impl FpfSpectrum {
    pub fn value(&self, rep: &Partition) -> Option<&Rational> {
        self.eigenvalues.iter().find(|e| &e.partition == rep).map(|e| &e.value)
    }

    pub fn min(&self) -> &Rational {
        self.eigenvalues.iter().map(|e| &e.value).min().expect("empty spectrum")
    }
}

pub fn fpf_spectrum(n: usize, k: usize, table: &CharacterTable) -> Result<FpfSpectrum> {
    if n < 2 {
        return reject("fpf_spectrum needs n >= 2");
    }
    if table.n != n {
        return reject(format!("table is for n={}, requested n={n}", table.n));
    }
    let classes = fpf_classes(n, k);
    let eigenvalues = table
        .order
        .iter()
        .map(|rep| {
            let mut sum = Rational::zero();
            for x in &classes {
                sum += cayley_eigenvalue(x, rep, table)?;
            }
            Ok(EigenEntry {
                partition: rep.clone(),
                value: sum,
                class: if n > 2 * k { label(rep, Some(k)) } else { None },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let degree = eigenvalues[0].value.clone();
    Ok(FpfSpectrum {
        n,
        k,
        classes,
        degree,
        eigenvalues,
    })
}

/// `d_n = sum_i (-1)^i n!/i!`.
pub fn derangement_number(n: usize) -> BigInt {
    let mut total = BigInt::zero();
    // n!/i! = (i+1)(i+2)...n
    for i in 0..=n {
        let term: BigInt = ((i + 1)..=n).fold(BigInt::one(), |acc, x| acc * x);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `λ^(k)_(n-1,1) = (1/(n-1)) sum_{i<k} C(n,i) d_{n-i} (i-1)`.
pub fn gamma_k_second_eigenvalue_formula(n: usize, k: usize) -> Result<Rational> {
    if n <= 2 * k {
        return reject(format!("needs n > 2k (n={n}, k={k})"));
    }
    let mut sum = BigInt::zero();
    for i in 0..k {
        sum += binomial(n, i) * derangement_number(n - i) * (i as i64 - 1);
    }
    Ok(Rational::new(sum, BigInt::from(n - 1)))
}

/// Limit of `(n-1) λ^(k)_(n-1,1) / (n!/e)` computed two ways: termwise
/// `sum_{i<k} (i-1)/i!`, and the closed form `-(1 - sum_{j=1}^{k-2} j/(j+1)!)`.
/// The two agree for every `k`, so the `k-2` upper limit is consistent.
pub fn gamma_k_leading_coefficient(k: usize) -> (Rational, Rational) {
    let inv_fact = |i: usize| Rational::new(BigInt::one(), BigInt::from(factorial(i)));
    let termwise: Rational = (0..k).map(|i| big(i as i64 - 1) * inv_fact(i)).sum();
    let tail: Rational = (1..=k.saturating_sub(2)).map(|j| big(j as i64) * inv_fact(j + 1)).sum();
    (termwise, -(Rational::one() - tail))
}

/// `|λ|^2 dim^2 <= n! |X|`, the squared Cauchy-Schwarz eigenvalue bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MagnitudeCheck {
    #[serde(with = "crate::rational")]
    pub eigenvalue: Rational,
    pub dim: u64,
    #[serde(with = "crate::rational")]
    pub lhs: Rational,
    pub rhs: String,
    pub holds: bool,
}

pub fn eigenvalue_magnitude_bound(
    generating_type: &Partition,
    rep: &Partition,
    table: &CharacterTable,
) -> Result<MagnitudeCheck> {
    let eigenvalue = cayley_eigenvalue(generating_type, rep, table)?;
    let dim = rep.dim();
    let lhs = &eigenvalue * &eigenvalue * big(dim) * big(dim);
    let rhs = BigInt::from(factorial(rep.n())) * BigInt::from(class_size(generating_type));
    let holds = lhs <= Rational::from_integer(rhs.clone());
    Ok(MagnitudeCheck {
        eigenvalue,
        dim,
        lhs,
        rhs: rhs.to_string(),
        holds,
    })
}

/// A real combination `sum_j β_j Cay(S_n, X_j)` of class-generated Cayley graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedClassCombo {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<ComboTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub cycle_type: Partition,
    #[serde(with = "crate::rational")]
    pub coefficient: Rational,
}

impl WeightedClassCombo {
    pub fn new(n: usize, k: usize, terms: Vec<(Partition, Rational)>) -> Result<Self> {
        for (p, _) in &terms {
            if p.n() != n {
                return reject(format!("class {p} is not a cycle type of S_{n}"));
            }
            if !in_fpf(p, k) {
                return reject(format!("class {p} has at least {k} fixed points"));
            }
        }
        Ok(WeightedClassCombo {
            n,
            k,
            terms: terms
                .into_iter()
                .map(|(cycle_type, coefficient)| ComboTerm {
                    cycle_type,
                    coefficient,
                })
                .collect(),
        })
    }

    pub fn eigenvalue(&self, rep: &Partition, table: &CharacterTable) -> Result<Rational> {
        let mut sum = Rational::zero();
        for t in &self.terms {
            sum += &t.coefficient * cayley_eigenvalue(&t.cycle_type, rep, table)?;
        }
        Ok(sum)
    }

    /// Eigenvalues for every partition in table order.
    pub fn spectrum(&self, table: &CharacterTable) -> Result<Vec<(Partition, Rational)>> {
        table
            .order
            .iter()
            .map(|rep| Ok((rep.clone(), self.eigenvalue(rep, table)?)))
            .collect()
    }
}

/// Explicit pseudo-adjacency matrix `A[σ][τ] = sum_j β_j [σ τ^{-1} ∈ X_j]`,
/// rows and columns in Lehmer-rank order.
pub fn explicit_matrix(combo: &WeightedClassCombo) -> Result<Vec<Vec<Rational>>> {
    check_cap("explicit matrix n", combo.n, MAX_EXPLICIT_N)?;
    let perms = all_perms(combo.n);
    let coefficient_of = |t: &Partition| -> Rational {
        combo
            .terms
            .iter()
            .filter(|term| &term.cycle_type == t)
            .map(|term| term.coefficient.clone())
            .sum()
    };
    let by_type: std::collections::HashMap<Partition, Rational> = enumerate_partitions(combo.n)
        .into_iter()
        .map(|p| {
            let c = coefficient_of(&p);
            (p, c)
        })
        .collect();
    Ok(perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| by_type[&s.compose(&t.inverse()).cycle_type()].clone())
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentCheck {
    pub m: usize,
    #[serde(with = "crate::rational")]
    pub trace: Rational,
    #[serde(with = "crate::rational")]
    pub spectral_sum: Rational,
    pub holds: bool,
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (l, a_il) in a[i].iter().enumerate() {
            if a_il.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += a_il * &b[l][j];
                }
            }
        }
    }
    out
}

/// `trace(A^m) = sum_ρ dim(ρ)^2 λ_ρ^m`, with `A` built explicitly.
pub fn moment_check(combo: &WeightedClassCombo, m: usize, table: &CharacterTable) -> Result<MomentCheck> {
    if m > 4 {
        return reject(format!("moment order {m} exceeds 4"));
    }
    if table.n != combo.n {
        return reject("table and combination disagree on n");
    }
    let a = explicit_matrix(combo)?;
    let size = a.len();
    let pair_trace = |x: &[Vec<Rational>], y: &[Vec<Rational>]| -> Rational {
        let mut t = Rational::zero();
        for i in 0..size {
            for j in 0..size {
                if !x[i][j].is_zero() && !y[j][i].is_zero() {
                    t += &x[i][j] * &y[j][i];
                }
            }
        }
        t
    };
    let trace = match m {
        0 => big(size as i64),
        1 => (0..size).map(|i| a[i][i].clone()).sum(),
        2 => pair_trace(&a, &a),
        _ => {
            let a2 = mat_mul(&a, &a);
            if m == 3 {
                pair_trace(&a2, &a)
            } else {
                pair_trace(&a2, &a2)
            }
        }
    };
    let mut spectral_sum = Rational::zero();
    for (rep, lambda) in combo.spectrum(table)? {
        let d = big(rep.dim());
        spectral_sum += &d * &d * num::pow(lambda, m);
    }
    Ok(MomentCheck {
        m,
        holds: trace == spectral_sum,
        trace,
        spectral_sum,
    })
}

/// Largest absolute eigenvalue among the listed entries.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
}

pub fn format_value(r: &Rational) -> String {
    rational::to_string(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_table;
    use crate::perm::Perm;
    use crate::rational::{frac, int};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn brute_class_size(t: &Partition) -> usize {
        all_perms(t.n()).iter().filter(|s| &s.cycle_type() == t).count()
    }

    fn brute_derangements(n: usize) -> usize {
        all_perms(n).iter().filter(|s| s.fixed_points() == 0).count()
    }

    #[test]
    fn class_info_examples() {
        let c = class_info(&p(&[2, 1, 1]));
        assert_eq!(c.size, 6);
        assert_eq!(brute_class_size(&p(&[2, 1, 1])), 6);
        assert_eq!(c.parity, Parity::Odd);
        assert_eq!(c.fixed_points, 2);
        assert_eq!(class_info(&p(&[3, 2])).size, 20);
        assert_eq!(brute_class_size(&p(&[3, 2])), 20);
        for n in 2..=7 {
            let c = class_info(&Partition::row(n));
            assert_eq!(c.size, factorial(n - 1));
            assert_eq!(c.parity == Parity::Even, (n - 1) % 2 == 0);
        }
        for n in 1..=6 {
            for t in enumerate_partitions(n) {
                assert_eq!(class_size(&t) as usize, brute_class_size(&t));
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=12 {
            let total: u64 = enumerate_partitions(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn cycle_measure_bounds() {
        for n in 2..=12 {
            for x in enumerate_partitions(n) {
                let t = n - x.first();
                if 2 * t >= n {
                    continue;
                }
                let size = class_size(&x) as u128;
                let lower_num = factorial(n) as u128;
                let lower_den = (n - t) as u128 * (t as u128).pow(t as u32);
                assert!(size * lower_den >= lower_num, "{x}");
                assert!(size <= 2 * factorial(n - 1) as u128, "{x}");
            }
        }
    }

    #[test]
    fn in_fpf_examples() {
        assert!(in_fpf(&p(&[3, 2]), 2));
        assert!(!in_fpf(&p(&[3, 1, 1]), 2));
        assert!(!in_fpf(&p(&[5, 1]), 1));
    }

    #[test]
    fn cayley_eigenvalue_examples() {
        let t5 = character_table(5).unwrap();
        assert_eq!(cayley_eigenvalue(&p(&[5]), &p(&[4, 1]), &t5).unwrap(), int(-6));
        assert_eq!(
            cayley_eigenvalue(&p(&[3, 2]), &Partition::column(5), &t5).unwrap(),
            int(-20)
        );
        for x in enumerate_partitions(5) {
            assert_eq!(cayley_eigenvalue(&x, &p(&[5]), &t5).unwrap(), big(class_size(&x)));
        }
        assert!(cayley_eigenvalue(&p(&[4]), &p(&[5]), &t5).is_err());
    }

    #[test]
    fn transpose_symmetry_of_eigenvalues() {
        for n in 2..=10 {
            let t = character_table(n).unwrap();
            for x in &t.order {
                for rho in &t.order {
                    let a = cayley_eigenvalue(x, rho, &t).unwrap();
                    let b = cayley_eigenvalue(x, &rho.transpose(), &t).unwrap();
                    assert_eq!(b, a * int(x.sign()));
                }
            }
        }
    }

    #[test]
    fn identity_free_generators_have_zero_trace() {
        for n in 2..=10 {
            let t = character_table(n).unwrap();
            for x in t.order.iter().filter(|x| x.len() < n) {
                let s: Rational = t
                    .order
                    .iter()
                    .map(|rho| big(rho.dim()) * big(rho.dim()) * cayley_eigenvalue(x, rho, &t).unwrap())
                    .sum();
                assert!(s.is_zero(), "{x}");
            }
        }
    }

    #[test]
    fn derangement_examples() {
        assert_eq!(derangement_number(4), BigInt::from(9));
        assert_eq!(derangement_number(5), BigInt::from(44));
        assert_eq!(derangement_number(0), BigInt::from(1));
        for n in 0..=7 {
            assert_eq!(derangement_number(n), BigInt::from(brute_derangements(n)));
        }
    }

    #[test]
    fn fpf_spectrum_examples() {
        let t5 = character_table(5).unwrap();
        let s = fpf_spectrum(5, 1, &t5).unwrap();
        assert_eq!(s.value(&p(&[5])).unwrap(), &int(44));
        assert_eq!(s.value(&p(&[4, 1])).unwrap(), &int(-11));
        assert_eq!(s.value(&Partition::column(5)).unwrap(), &int(4));
        let t4 = character_table(4).unwrap();
        assert_eq!(fpf_spectrum(4, 1, &t4).unwrap().value(&p(&[4])).unwrap(), &int(9));
    }

    #[test]
    fn derangement_graph_second_eigenvalue() {
        for n in 5..=10 {
            let t = character_table(n).unwrap();
            let s = fpf_spectrum(n, 1, &t).unwrap();
            let d = big(derangement_number(n));
            let bound = &d / big(n as i64 - 1);
            assert_eq!(s.value(&Partition::row(n)).unwrap(), &d);
            assert_eq!(s.value(&Partition::hook(n, 1)).unwrap(), &(-bound.clone()));
            for e in &s.eigenvalues {
                if e.partition != Partition::row(n) && e.partition != Partition::hook(n, 1) {
                    assert!(e.value.abs() < bound, "n={n} {}", e.partition);
                }
            }
        }
    }

    #[test]
    fn second_eigenvalue_formula() {
        assert_eq!(gamma_k_second_eigenvalue_formula(5, 1).unwrap(), int(-11));
        assert_eq!(gamma_k_second_eigenvalue_formula(6, 2).unwrap(), int(-53));
        assert_eq!(gamma_k_second_eigenvalue_formula(4, 1).unwrap(), int(-3));
        for k in 1..=3 {
            for n in (2 * k + 1)..=11 {
                let t = character_table(n).unwrap();
                let s = fpf_spectrum(n, k, &t).unwrap();
                assert_eq!(
                    s.value(&Partition::hook(n, 1)).unwrap(),
                    &gamma_k_second_eigenvalue_formula(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn leading_coefficient_closed_form_agrees() {
        for k in 1..=8 {
            let (a, b) = gamma_k_leading_coefficient(k);
            assert_eq!(a, b, "k={k}");
            assert!(a.is_negative());
        }
        assert_eq!(gamma_k_leading_coefficient(3).0, frac(-1, 2));
    }

    #[test]
    fn magnitude_bound_examples() {
        let t5 = character_table(5).unwrap();
        let c = eigenvalue_magnitude_bound(&p(&[5]), &p(&[3, 2]), &t5).unwrap();
        assert!(c.eigenvalue.is_zero() && c.holds);
        let c = eigenvalue_magnitude_bound(&p(&[3, 2]), &p(&[3, 1, 1]), &t5).unwrap();
        assert!(c.holds);
        for x in enumerate_partitions(5) {
            let c = eigenvalue_magnitude_bound(&x, &p(&[5]), &t5).unwrap();
            assert!(c.holds);
        }
        for n in 2..=9 {
            let t = character_table(n).unwrap();
            for x in &t.order {
                for rho in &t.order {
                    assert!(eigenvalue_magnitude_bound(x, rho, &t).unwrap().holds);
                }
            }
        }
    }

    fn gamma1(n: usize) -> WeightedClassCombo {
        let terms = fpf_classes(n, 1).into_iter().map(|x| (x, int(1))).collect();
        WeightedClassCombo::new(n, 1, terms).unwrap()
    }

    #[test]
    fn moment_examples() {
        let t4 = character_table(4).unwrap();
        let g = gamma1(4);
        let m1 = moment_check(&g, 1, &t4).unwrap();
        assert!(m1.holds && m1.trace.is_zero());
        let m2 = moment_check(&g, 2, &t4).unwrap();
        assert!(m2.holds);
        assert_eq!(m2.trace, int(24 * 9));
        let m0 = moment_check(&g, 0, &t4).unwrap();
        assert_eq!(m0.trace, int(24));
        assert!(m0.holds);
    }

    #[test]
    fn moments_of_weighted_combinations() {
        let t5 = character_table(5).unwrap();
        let combo = WeightedClassCombo::new(
            5,
            2,
            vec![(p(&[5]), frac(1, 3)), (p(&[3, 2]), frac(-2, 7)), (p(&[4, 1]), int(2))],
        )
        .unwrap();
        for m in 0..=4 {
            assert!(moment_check(&combo, m, &t5).unwrap().holds, "m={m}");
        }
        assert!(moment_check(&combo, 5, &t5).is_err());
    }

    #[test]
    fn explicit_matrix_is_cayley() {
        let g = gamma1(4);
        let a = explicit_matrix(&g).unwrap();
        let perms = all_perms(4);
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                let adj = s.agreements(t) == 0;
                assert_eq!(a[i][j], if adj { int(1) } else { int(0) });
            }
        }
        assert_eq!(Perm::identity(4).rank(), 0);
        assert!(explicit_matrix(&WeightedClassCombo::new(6, 1, vec![]).unwrap()).is_err());
    }
}
