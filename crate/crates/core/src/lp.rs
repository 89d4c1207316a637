//! Exact feasibility of `A x = b, x >= 0` by phase-1 simplex over the
//! rationals with Bland's rule, returning either a feasible point or a
//! Farkas certificate `y` with `yᵀA >= 0` and `yᵀb < 0`.

use num::{Signed, Zero};

use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `A x = b, x >= 0`. Every returned object is
/// re-verified exactly before being handed back.
pub fn phase_one(a: &[Vec<Rational>], b: &[Rational]) -> Feasibility {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    // Flip rows so the right-hand side is nonnegative.
    let signs: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if signs[i] { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for j in 0..m {
                row.push(if i == j { int(1) } else { Rational::zero() });
            }
            row.push(if signs[i] { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-1 objective: sum of artificials.
    let mut cost = vec![Rational::zero(); width];
    for j in n..n + m {
        cost[j] = int(1);
    }
    for row in &t {
        for j in 0..width {
            cost[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded in phase 1 is impossible: the objective is bounded below by 0.
            unreachable!("phase-1 objective is bounded below");
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = t[r].clone();
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    if !pivot_row[j].is_zero() {
                        let v = &t[i][j] - &f * &pivot_row[j];
                        t[i][j] = v;
                    }
                }
            }
        }
        let f = cost[enter].clone();
        for j in 0..width {
            if !pivot_row[j].is_zero() {
                let v = &cost[j] - &f * &pivot_row[j];
                cost[j] = v;
            }
        }
        basis[r] = enter;
    }

    let objective = -cost[width - 1].clone();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &v) in basis.iter().enumerate() {
            if v < n {
                x[v] = t[i][width - 1].clone();
            }
        }
        debug_assert!(verify_point(a, b, &x));
        Feasibility::Feasible(x)
    } else {
        // π = c_Bᵀ B⁻¹; B⁻¹ sits in the artificial columns of the tableau.
        let mut pi = vec![Rational::zero(); m];
        for (i, &v) in basis.iter().enumerate() {
            if v >= n {
                for (l, p) in pi.iter_mut().enumerate() {
                    *p += &t[i][n + l];
                }
            }
        }
        let y: Vec<Rational> = pi
            .into_iter()
            .zip(&signs)
            .map(|(p, &flip)| if flip { p } else { -p })
            .collect();
        debug_assert!(verify_certificate(a, b, &y));
        Feasibility::Infeasible(y)
    }
}

pub fn verify_point(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, rhs)| {
            let lhs: Rational = row.iter().zip(x).map(|(p, q)| p * q).sum();
            lhs == *rhs
        })
}

/// `yᵀA >= 0` componentwise and `yᵀb < 0`.
pub fn verify_certificate(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    let yb: Rational = y.iter().zip(b).map(|(p, q)| p * q).sum();
    yb.is_negative()
        && (0..n).all(|j| {
            let s: Rational = y.iter().zip(a).map(|(yi, row)| yi * &row[j]).sum();
            !s.is_negative()
        })
}
