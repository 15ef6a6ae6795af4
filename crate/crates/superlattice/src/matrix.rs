//! Minimal dense real matrix storage for sector Hamiltonians.
//!
//! Every target system in this crate lives in a sector of dimension well
//! below a thousand, so a flat row-major `Vec<f64>` beats any sparse or
//! external representation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    /// Builds from row-major data; `data.len()` must be `n * n`.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] += value;
    }

    pub fn scale(&mut self, factor: f64) {
        for x in &mut self.data {
            *x *= factor;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Exact (bitwise) symmetry check; Hamiltonians are built symmetrically.
    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// y = A x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }

    /// Projects onto the span of orthonormal `columns`: returns Qᵀ A Q.
    ///
    /// The result is mirrored from its upper triangle so it is exactly
    /// symmetric even though floating-point sums of the two triangles could
    /// differ in the last bit.
    pub fn project(&self, columns: &[Vec<f64>]) -> Matrix {
        let k = columns.len();
        let applied: Vec<Vec<f64>> = columns.iter().map(|q| self.apply(q)).collect();
        let mut out = Matrix::zeros(k);
        for a in 0..k {
            for b in a..k {
                let v: f64 = columns[a].iter().zip(&applied[b]).map(|(x, y)| x * y).sum();
                out.set(a, b, v);
                out.set(b, a, v);
            }
        }
        out
    }
}
