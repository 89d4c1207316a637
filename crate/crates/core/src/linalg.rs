//! Small exact linear algebra: determinants, ranks and square solves.

use num::{BigInt, Integer, Signed, Zero};

use crate::rational::Rational;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Rank over the rationals of an integer matrix.
///
/// Rows are kept primitive (divided by their content) after every update so
/// entries stay small on the 0/1 matrices this is used for.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[c].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            let g = pivot.gcd(&factor);
            let (mp, mf) = (&pivot / &g, &factor / &g);
            let row = &mut rows[r];
            for j in c..cols {
                row[j] = &row[j] * &mp - &pivot_row[j] * &mf;
            }
            make_primitive(row);
        }
        rank += 1;
    }
    rank
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot_row[c];
            for j in c..cols {
                let v = &a[r][j] - &f * &pivot_row[j];
                a[r][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[c].clone();
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=n {
                    let v = &m[r][j] - &f * &pivot_row[j];
                    m[r][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A particular solution of a possibly non-square, consistent system
/// `A x = b`; `None` when inconsistent. Free variables are set to zero.
pub fn solve_any(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(p) = (r0..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(r0, p);
        let inv = m[r0][c].recip();
        for x in m[r0].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r0].clone();
        for r in 0..rows {
            if r != r0 && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] - &f * &pivot_row[j];
                    m[r][j] = v;
                }
            }
        }
        pivots.push(c);
        r0 += 1;
        if r0 == rows {
            break;
        }
    }
    if m[r0..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// A nonzero `x` with `A x = 0`, or `None` when the columns are independent.
pub fn null_vector(a: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(p) = (r0..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(r0, p);
        let inv = m[r0][c].recip();
        for x in m[r0].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r0].clone();
        for r in 0..rows {
            if r != r0 && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..cols {
                    let v = &m[r][j] - &f * &pivot_row[j];
                    m[r][j] = v;
                }
            }
        }
        pivots.push(c);
        r0 += 1;
        if r0 == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::from_integer(BigInt::from(1));
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -m[r][free].clone();
    }
    Some(x)
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
