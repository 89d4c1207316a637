//! Exact assignment problems: minimum-cost perfect matching with optimal
//! dual potentials, and perfect matchings on a support pattern.

use num::Zero;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// `row_to_col[i]` is the column matched to row `i`.
    pub row_to_col: Vec<usize>,
    pub cost: Rational,
    /// Row potentials `u` and column potentials `v` with `u_i + v_j <= a_ij`
    /// and `Σu + Σv = cost`.
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

/// Hungarian algorithm over the rationals (square cost matrix).
pub fn min_cost_assignment(a: &[Vec<Rational>]) -> Assignment {
    let n = a.len();
    // 1-based arrays; index 0 is the virtual root column.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &a[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    let cost = (0..n).map(|i| a[i][row_to_col[i]].clone()).sum();
    Assignment {
        row_to_col,
        cost,
        u: u[1..].to_vec(),
        v: v[1..].to_vec(),
    }
}

/// A perfect matching using only allowed cells, by augmenting paths.
pub fn perfect_matching(allowed: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = allowed.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, allowed: &[Vec<bool>], seen: &mut [bool], col_owner: &mut [Option<usize>]) -> bool {
        for j in 0..allowed[i].len() {
            if allowed[i][j] && !seen[j] {
                seen[j] = true;
                if col_owner[j].is_none_or(|o| augment(o, allowed, seen, col_owner)) {
                    col_owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, allowed, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut row_to_col = vec![0usize; n];
    for (j, o) in col_owner.iter().enumerate() {
        row_to_col[o.expect("perfect")] = j;
    }
    Some(row_to_col)
}
