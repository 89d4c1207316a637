//! Brute-force extremal results cross-checked against Cayley-graph
//! independence, spectral bounds, certificates and the conjectured families.

use proptest::prelude::*;
use snspec_core::engine::{hoffman_ratio, omega};
use snspec_core::extremal::{
    conjecture_family, gamma_k_hoffman_bound, is_k_intersecting, max_k_intersecting, sharply_transitive_certificate,
    CertificateMode, SearchOptions,
};
use snspec_core::perm::{all_perms, factorial, Perm};
use snspec_core::rational::int;

/// Edge of `Γ_k`: `σ τ^{-1}` has fewer than `k` fixed points.
fn gamma_edge(s: &Perm, t: &Perm, k: usize) -> bool {
    s.compose(&t.inverse()).fixed_points() < k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn intersecting_iff_independent(n in 3usize..6, k in 1usize..3, picks in proptest::collection::vec(0usize..120, 0..8)) {
        prop_assume!(k < n);
        let perms = all_perms(n);
        let family: Vec<Perm> = picks.iter().map(|&r| perms[r % perms.len()].clone()).collect();
        let independent = family
            .iter()
            .enumerate()
            .all(|(i, s)| family[i + 1..].iter().all(|t| !gamma_edge(s, t, k)));
        prop_assert_eq!(is_k_intersecting(&family, k), independent);
    }
}

#[test]
fn spectral_bounds_dominate_brute_force() {
    for (n, k) in [(4, 1), (5, 1), (4, 2), (5, 2), (4, 3)] {
        let r = max_k_intersecting(
            n,
            k,
            SearchOptions {
                all_extremal: false,
                symmetry_reduce: true,
            },
        )
        .unwrap();
        assert!(gamma_k_hoffman_bound(n, k).unwrap() >= r.max_size, "({n},{k})");
        assert_eq!(r.max_size as u64, factorial(n - k), "({n},{k})");
    }
    // The weighted bound n!·(-ω)/(1-ω) meets the maximum exactly.
    for (n, k) in [(4, 1), (5, 1), (4, 2)] {
        let w = omega(n, k).unwrap().value;
        let bound = hoffman_ratio(&int(1), &w).unwrap() * int(factorial(n) as i64);
        let r = max_k_intersecting(n, k, SearchOptions::default()).unwrap();
        assert_eq!(bound, int(r.max_size as i64), "({n},{k})");
    }
    // Plain Γ_k is tight only for k = 1 here.
    assert_eq!(gamma_k_hoffman_bound(4, 2).unwrap(), 3);
}

#[test]
fn symmetry_reduction_does_not_change_the_answer() {
    for (n, k) in [(4, 1), (4, 2), (5, 3)] {
        let a = max_k_intersecting(
            n,
            k,
            SearchOptions {
                all_extremal: true,
                symmetry_reduce: false,
            },
        )
        .unwrap();
        let b = max_k_intersecting(
            n,
            k,
            SearchOptions {
                all_extremal: true,
                symmetry_reduce: true,
            },
        )
        .unwrap();
        assert_eq!(a.max_size, b.max_size);
        assert_eq!(a.extremal_families, b.extremal_families);
        assert!(a.all_are_cosets);
    }
}

#[test]
fn cyclic_cells_meet_maximum_families_once() {
    for n in [4, 5] {
        let cert = sharply_transitive_certificate(CertificateMode::Cyclic(n)).unwrap();
        let r = max_k_intersecting(
            n,
            1,
            SearchOptions {
                all_extremal: true,
                symmetry_reduce: true,
            },
        )
        .unwrap();
        for fam in &r.extremal_families {
            for cell in &cert.cells {
                let hits = cell.iter().filter(|x| fam.binary_search(x).is_ok()).count();
                assert!(hits <= 1);
            }
        }
        assert_eq!(r.max_size, cert.cell_count);
    }
}

#[test]
fn affine_subgroups_are_sharply_two_transitive_groups() {
    for q in [4usize, 5, 7, 8, 9] {
        let cert = sharply_transitive_certificate(CertificateMode::Affine(q)).unwrap();
        assert_eq!(cert.subgroup.len(), q * (q - 1));
        let set: std::collections::HashSet<&Perm> = cert.subgroup.iter().collect();
        for a in &cert.subgroup {
            for b in &cert.subgroup {
                assert!(set.contains(&a.compose(b)));
            }
        }
        // Any ordered pair of distinct points goes to any other by exactly one map.
        for (x, y) in [(0usize, 1usize), (1, q - 1)] {
            for u in 0..q {
                for v in (0..q).filter(|&v| v != u) {
                    let count = cert
                        .subgroup
                        .iter()
                        .filter(|h| h.apply(x) == u && h.apply(y) == v)
                        .count();
                    assert_eq!(count, 1, "q={q}");
                }
            }
        }
    }
}

#[test]
fn conjectured_families_are_intersecting() {
    for n in 3..=7 {
        for k in 1..=2usize {
            if k >= n {
                continue;
            }
            for i in 0..=(n - k) / 2 {
                let m = conjecture_family(n, k, i).unwrap();
                assert!(m.k_intersecting, "n={n} k={k} i={i}");
                if i == 0 {
                    assert_eq!(m.size as u64, factorial(n - k));
                }
                if let Some(f) = &m.formula {
                    assert_eq!(*f, int(m.size as i64), "n={n} k={k}");
                }
            }
        }
    }
}
