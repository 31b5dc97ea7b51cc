//! Banded LU factorization with partial pivoting.
//!
//! Band storage follows the LAPACK `dgbtrf` layout: a matrix with `kl`
//! subdiagonals and `ku` superdiagonals is stored in `2*kl + ku + 1` rows,
//! the top `kl` rows reserved for pivoting fill-in. Entry `(i, j)` lives at
//! storage row `kl + ku + i - j`, column `j`.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        BandedMatrix {
            n,
            kl,
            ku,
            data: vec![0.0; (2 * kl + ku + 1) * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        debug_assert!(j + self.kl >= i && i + self.ku + self.kl >= j);
        (self.kl + self.ku + i - j) * self.n + j
    }

    /// Sets `A[i][j]`. Panics in debug builds if `(i, j)` lies outside the
    /// declared band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.data[s] = value;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.data[s] += value;
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.slot(i, j)]
    }

    /// Factors the matrix in place. The matrix must have been built with
    /// `kl` subdiagonals and `ku` superdiagonals; the factorization may fill
    /// up to `kl + ku` superdiagonals.
    pub fn factor(mut self) -> Result<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let kv = kl + ku; // superdiagonals of U after pivoting
        let mut pivots = vec![0usize; n];

        for j in 0..n {
            let pivot_rows = (j + 1 + kl).min(n) - j;
            let mut p = 0;
            let mut pmax = 0.0f64;
            for i in 0..pivot_rows {
                let v = self.data[(kl + ku + i) * n + j].abs();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax == 0.0 {
                return Err(Error::SpuriousSolution {
                    detail: format!("singular banded matrix at column {j}"),
                });
            }
            pivots[j] = j + p;
            if p != 0 {
                // Swap rows j and j+p across the active columns.
                let last_col = (j + kv).min(n - 1);
                for col in j..=last_col {
                    let r1 = (kl + ku + j - col) * n + col;
                    let r2 = (kl + ku + j + p - col) * n + col;
                    self.data.swap(r1, r2);
                }
            }
            let diag = self.data[(kl + ku) * n + j];
            let last_row = (j + kl).min(n - 1);
            let last_col = (j + kv).min(n - 1);
            for i in (j + 1)..=last_row {
                let m = self.data[(kl + ku + i - j) * n + j] / diag;
                self.data[(kl + ku + i - j) * n + j] = m;
                for col in (j + 1)..=last_col {
                    let above = self.data[(kl + ku + j - col) * n + col];
                    self.data[(kl + ku + i - col) * n + col] -= m * above;
                }
            }
        }

        Ok(BandedLu {
            n,
            kl,
            ku,
            data: self.data,
            pivots,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    /// Solves `A x = rhs` in place.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        assert_eq!(rhs.len(), n);
        let kv = kl + ku;
        // Forward: apply pivots and L.
        for j in 0..n {
            let p = self.pivots[j];
            if p != j {
                rhs.swap(j, p);
            }
            let last_row = (j + kl).min(n - 1);
            for i in (j + 1)..=last_row {
                rhs[i] -= self.data[(kl + ku + i - j) * n + j] * rhs[j];
            }
        }
        // Backward: solve U x = y.
        for j in (0..n).rev() {
            let mut acc = rhs[j];
            let last_col = (j + kv).min(n - 1);
            for col in (j + 1)..=last_col {
                acc -= self.data[(kl + ku + j - col) * n + col] * rhs[col];
            }
            rhs[j] = acc / self.data[(kl + ku) * n + j];
        }
    }
}
