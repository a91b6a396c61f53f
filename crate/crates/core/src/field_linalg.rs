//! Dense exact linear algebra over a prime field `Z/p`, `3 < p < 2^31`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} must be greater than 3 and below 2^31")]
    PrimeOutOfRange(u64),
    #[error("cannot stack a matrix with {found} columns onto {expected} columns")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl TryFrom<u64> for PrimeField {
    type Error = LinalgError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p <= 3 || p >= 1 << 31 {
            return Err(LinalgError::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }
}

/// Row-major dense matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PrimeMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows, reducing entries mod p.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(PrimeMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = self.field.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (PrimeMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            for j in c..cols {
                m.data[r * cols + j] = f.mul(m.data[r * cols + j], inv);
            }
            let pivot_row: Vec<u64> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let row = &mut m.data[i * cols + c..(i + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.field, self.cols);
        (0..self.rows).filter(|&i| basis.insert(self.row(i))).count()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, each with a
    /// 1 in its free column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.field.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Vertical concatenation; every input must have `cols` columns.
    pub fn stack(field: PrimeField, cols: usize, ms: &[&PrimeMatrix]) -> Result<Self, LinalgError> {
        let mut out = Self::zeros(field, 0, cols);
        for m in ms {
            if m.cols != cols {
                return Err(LinalgError::ColumnMismatch {
                    expected: cols,
                    found: m.cols,
                });
            }
            out.data.extend(m.data.iter().map(|&x| field.reduce(x)));
            out.rows += m.rows;
        }
        Ok(out)
    }
}

/// Incrementally grown row echelon basis: `insert` reports whether a vector
/// is independent of everything inserted so far.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, width: usize) -> Self {
        EchelonBasis {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut w: Vec<u64> = v.iter().map(|&x| f.reduce(x)).collect();
        for (pc, row) in &self.rows {
            let factor = w[*pc];
            if factor != 0 {
                for (x, &y) in w[*pc..].iter_mut().zip(&row[*pc..]) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]);
        for x in &mut w[pc..] {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((pc, w));
        true
    }
}
