//! Finite fields of order `q = p^m <= 9`.
//!
//! An element is encoded as the integer `Σ c_i p^i` of its coefficient
//! vector over `F_p`. Non-prime orders use fixed moduli: `x^2+x+1` for
//! `q = 4`, `x^3+x+1` for `q = 8`, `x^2+1` for `q = 9`.

use crate::error::{reject, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    pub q: usize,
    pub p: usize,
    pub m: usize,
    /// Low coefficients of the monic modulus `x^m + Σ_{i<m} c_i x^i`.
    modulus: Vec<usize>,
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (p, m, modulus) = match q {
            2 | 3 | 5 | 7 => (q, 1, vec![0]),
            4 => (2, 2, vec![1, 1]),
            8 => (2, 3, vec![1, 1, 0]),
            9 => (3, 2, vec![1, 0]),
            _ => return reject(format!("q = {q} is not a prime power in 2..=9")),
        };
        Ok(Field { q, p, m, modulus })
    }

    fn digits(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0; self.m];
        let mut v = x;
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&sum)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.m == 1 {
            return a * b % self.p;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0; 2 * self.m - 1];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // Reduce with x^m = -Σ c_i x^i.
        for deg in (self.m..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, c) in self.modulus.iter().enumerate() {
                let t = deg - self.m + i;
                prod[t] = (prod[t] + (self.p - lead * c % self.p)) % self.p;
            }
        }
        self.encode(&prod[..self.m])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.q
    }
}
