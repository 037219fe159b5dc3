//! Dense matrices over GF(p) with machine-word entries, for the hot loops of the
//! automorphism checks.

use crate::arith::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub data: Vec<u64>,
}

/// Residue of a prime-field scalar.
pub fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue { value, .. } => *value,
        Scalar::Rational(_) => panic!("expected a prime-field scalar"),
    }
}

pub fn scalar(p: u64, x: u64) -> Scalar {
    Scalar::Residue {
        value: x % p,
        modulus: p,
    }
}

pub fn modulus(field: FieldSpec) -> Option<u64> {
    match field {
        FieldSpec::Prime(p) => Some(p),
        FieldSpec::Rationals => None,
    }
}

impl FpMat {
    pub fn zeros(p: u64, n: usize, m: usize) -> Self {
        FpMat {
            p,
            n,
            m,
            data: vec![0; n * m],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut a = Self::zeros(p, n, n);
        for i in 0..n {
            a.data[i * n + i] = 1;
        }
        a
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.m + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.m + j] = v % self.p;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let k = i * self.m + j;
        self.data[k] = (self.data[k] + v) % self.p;
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.m, other.n, "shape mismatch");
        let p = self.p;
        // Products are below p^2 < 2^62; flush the accumulator before it can overflow.
        let flush = (u64::MAX / (p * p) - 1).clamp(1, 1 << 20) as usize;
        let mut out = FpMat::zeros(p, self.n, other.m);
        let mut acc = vec![0u64; other.m];
        for i in 0..self.n {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0usize;
            for k in 0..self.m {
                let a = self.data[i * self.m + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.m..(k + 1) * other.m];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b;
                }
                pending += 1;
                if pending == flush {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.m + j] = x % p;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.m, v.len());
        let p = self.p;
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.m..(i + 1) * self.m];
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn add_scaled(&mut self, c: u64, other: &FpMat) {
        let p = self.p;
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x = (*x + c * y) % p;
        }
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.m {
            let Some(piv) = (r..a.n).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            for j in 0..a.m {
                a.data.swap(r * a.m + j, piv * a.m + j);
            }
            let inv = pow_mod(a.get(r, c), p - 2, p);
            for j in c..a.m {
                let v = a.get(r, j) * inv % p;
                a.data[r * a.m + j] = v;
            }
            for i in 0..a.n {
                if i == r {
                    continue;
                }
                let f = a.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..a.m {
                    let v = (a.get(i, j) + p - f * a.get(r, j) % p) % p;
                    a.data[i * a.m + j] = v;
                }
            }
            r += 1;
            if r == a.n {
                break;
            }
        }
        r
    }
}

/// One solution of `A x = b` over GF(p), with `A` given by rows.
pub fn solve_mod(p: u64, mut a: Vec<Vec<u64>>, b: &[u64]) -> Option<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    for (row, &v) in a.iter_mut().zip(b) {
        row.push(v % p);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if a[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = a[row][cols];
    }
    Some(x)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_matches_definition() {
        let p = 5;
        let mut a = FpMat::zeros(p, 2, 3);
        let mut b = FpMat::zeros(p, 3, 2);
        for (k, x) in [1, 2, 3, 4, 0, 4].iter().enumerate() {
            a.data[k] = *x;
        }
        for (k, x) in [4, 1, 3, 3, 2, 0].iter().enumerate() {
            b.data[k] = *x;
        }
        let c = a.mul(&b);
        // rows: (16, 7) and (24, 4)
        assert_eq!(c.data, vec![1, 2, 4, 4]);
        assert_eq!(FpMat::identity(p, 3).mul(&b), b);
    }

    #[test]
    fn modular_solve() {
        // x + 2y = 3, 2x + y = 3 over GF(5): x = y = 1
        assert_eq!(
            solve_mod(5, vec![vec![1, 2], vec![2, 1]], &[3, 3]),
            Some(vec![1, 1])
        );
        assert_eq!(solve_mod(5, vec![vec![1, 2], vec![2, 4]], &[1, 1]), None);
        let x = solve_mod(7, vec![vec![0, 1, 1]], &[3]).unwrap();
        assert_eq!((x[1] + x[2]) % 7, 3);
    }

    #[test]
    fn rank_and_inverse() {
        let mut a = FpMat::zeros(7, 2, 2);
        a.data = vec![1, 2, 2, 4];
        assert_eq!(a.rank(), 1);
        assert_eq!(inv_mod(3, 7) * 3 % 7, 1);
    }
}
