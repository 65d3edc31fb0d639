//! Prime fields and dense exact linear algebra.
//!
//! Elements are canonical residues stored as `u64`; all arithmetic goes
//! through a [`PrimeField`] handle so a matrix can carry its modulus around.
//! Kernel and rank are computed by plain Gaussian elimination; at the sizes
//! this crate needs (a few hundred rows) dense elimination is exact and fast.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("all {k}x{k} minors vanish")]
    AllMinorsZero { k: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// F_p for a prime modulus; elements are residues in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Canonical residue of a signed integer.
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn sample(&self, rng: &mut impl rand::Rng) -> u64 {
        rng.random_range(0..self.p)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Self {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // find a pivot
            let mut pivot = None;
            for r in row..self.rows {
                if self.get(r, col) != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..self.cols {
                    let a = self.get(row, j);
                    let b = self.get(p, j);
                    self.set(row, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = f.inv(self.get(row, col));
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for j in col..self.cols {
                        let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Exact kernel: (dimension, basis vectors of length `cols`).
    pub fn kernel(&self) -> (usize, Vec<Vec<u64>>) {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // row r reads: x_pc + sum over later cols = 0
                v[pc] = f.neg(m.get(r, fc));
            }
            basis.push(v);
        }
        (free.len(), basis)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }
}

/// Kernel of a coefficient matrix: dimension plus an explicit basis.
pub fn matrix_kernel(m: &FpMatrix) -> (usize, Vec<Vec<u64>>) {
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(1009).is_ok());
        assert_eq!(PrimeField::new(1), Err(LinalgError::NotPrime(1)));
        assert_eq!(PrimeField::new(1008), Err(LinalgError::NotPrime(1008)));
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.reduce_i64(-1), 6);
        assert_eq!(f.pow(3, 6), 1);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let f = PrimeField::new(5).unwrap();
        let m = FpMatrix::identity(f, 3);
        let (dim, basis) = matrix_kernel(&m);
        assert_eq!(dim, 0);
        assert!(basis.is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let f = PrimeField::new(5).unwrap();
        let m = FpMatrix::zeros(f, 2, 2);
        let (dim, _) = matrix_kernel(&m);
        assert_eq!(dim, 2);
    }

    #[test]
    fn kernel_of_linear_form_relation() {
        // s*f + t*g = 0 for linear forms f = f0 s + f1 t, g = g0 s + g1 t over F_5:
        // coefficients of s^2, st, t^2 give three equations in (f0, f1, g0, g1).
        let f = PrimeField::new(5).unwrap();
        let m = FpMatrix::from_rows(
            f,
            vec![
                vec![1, 0, 0, 0], // s^2: f0
                vec![0, 1, 1, 0], // st:  f1 + g0
                vec![0, 0, 0, 1], // t^2: g1
            ],
        );
        let (dim, basis) = matrix_kernel(&m);
        assert_eq!(dim, 1);
        // basis vector is (0, 1, -1, 0) up to scale: f = t, g = -s
        let v = &basis[0];
        assert_eq!(v[0], 0);
        assert_eq!(v[3], 0);
        assert_ne!(v[1], 0);
        assert_eq!(f.add(v[1], v[2]), 0);
    }

    #[test]
    fn rank_plus_nullity_on_random_matrices() {
        let field = PrimeField::new(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let rows = rng.random_range(1..12);
            let cols = rng.random_range(1..12);
            let mut m = FpMatrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, field.sample(&mut rng));
                }
            }
            let (dim, basis) = m.kernel();
            assert_eq!(m.rank() + dim, cols);
            for v in &basis {
                assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }
    }
}
