//! Dense matrices over a prime field `F_p`.

use std::fmt;

use crate::arith::inv_mod;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|x| x % p).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(p: u64, len: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        other.scale(self.p - 1).add(self)
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let mut out = self.clone();
        let s = s % self.p;
        for x in &mut out.data {
            *x = *x * s % self.p;
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), p).expect("nonzero entries are units mod p");
            for c in 0..m.cols {
                let v = m.get(row, c) * inv % p;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                let f = m.get(r, col);
                if r == row || f == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = (m.get(r, c) + (p - f) * m.get(row, c)) % p;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<u64>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Dimension of the span of the given vectors.
pub fn span_dim(p: u64, len: usize, vectors: &[Vec<u64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FpMatrix::from_columns(p, len, vectors).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(p: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(p, v.len(), &all) == span_dim(p, v.len(), basis)
}
