//! Dense kernels for small symmetric (positive-definite) matrices.
//!
//! Storage is row-major `Vec<f64>`. Matrices here are at most a few dozen
//! rows, so no blocking or pivoting is attempted.

use crate::error::{Error, Result};

/// Relative pivot tolerance for positive-definiteness, scaled by the largest
/// diagonal entry.
pub const PD_TOLERANCE: f64 = 1e-13;

/// Dense symmetric matrix with no definiteness requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Builds a symmetric matrix from row-major entries, symmetrizing as
    /// `(A + Aᵀ) / 2`.
    pub fn from_row_major(dim: usize, entries: &[f64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let mut sym = vec![0.0; dim * dim];
        for i in 0..dim {
            sym[i * dim + i] = entries[i * dim + i];
            for j in 0..i {
                let avg = 0.5 * (entries[i * dim + j] + entries[j * dim + i]);
                sym[i * dim + j] = avg;
                sym[j * dim + i] = avg;
            }
        }
        Ok(Self { dim, entries: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut flat = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_row_major(dim, &flat)
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![0.0; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self { dim, entries }
    }

    /// Outer product `x xᵀ`.
    pub fn outer(x: &[f64]) -> Self {
        let dim = x.len();
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = x[i] * x[j];
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn lincomb(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.check_dim(other.dim)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    /// Full elementwise dot product, i.e. `tr(Aᵀ B)`.
    pub fn frobenius_dot(&self, other: &Self) -> Result<f64> {
        self.check_dim(other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x * y)
            .sum())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        Ok(self
            .entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `xᵀ A x`, no definiteness assumed.
    pub fn bilinear(&self, x: &[f64]) -> Result<f64> {
        let ax = self.mul_vec(x)?;
        Ok(ax.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

/// Symmetric positive-definite matrix together with its lower Cholesky factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    matrix: SymMatrix,
    chol: Vec<f64>,
}

impl SpdMatrix {
    /// Factorizes a square row-major matrix (symmetrized first).
    pub fn cholesky(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_sym(SymMatrix::from_row_major(dim, entries)?)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_sym(SymMatrix::from_rows(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_sym(SymMatrix::identity(dim)).expect("identity is positive definite")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::from_sym(SymMatrix::diagonal(diag))
    }

    pub fn from_sym(matrix: SymMatrix) -> Result<Self> {
        let n = matrix.dim;
        let a = &matrix.entries;
        let max_diag = (0..n).fold(0.0_f64, |m, i| m.max(a[i * n + i].abs()));
        let tol = PD_TOLERANCE * max_diag;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > tol) || !d.is_finite() {
                return Err(Error::NotPositiveDefinite { index: j, pivot: d });
            }
            let ljj = d.sqrt();
            l[j * n + j] = ljj;
            for i in (j + 1)..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / ljj;
            }
        }
        Ok(Self { matrix, chol: l })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    /// Lower Cholesky factor `L` (row-major) with `A = L Lᵀ`.
    pub fn factor(&self) -> &[f64] {
        &self.chol
    }

    pub fn log_det(&self) -> f64 {
        let n = self.dim();
        2.0 * (0..n).map(|i| self.chol[i * n + i].ln()).sum::<f64>()
    }

    /// Solves `L y = b`.
    pub fn forward_solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        self.matrix.check_dim(b.len())?;
        let l = &self.chol;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= l[i * n + k] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        Ok(y)
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        let l = &self.chol;
        let mut x = self.forward_solve(b)?;
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= l[k * n + i] * x[k];
            }
            x[i] = s / l[i * n + i];
        }
        Ok(x)
    }

    /// `xᵀ A⁻¹ x`, computed as `‖L⁻¹x‖²`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        Ok(self.forward_solve(x)?.iter().map(|y| y * y).sum())
    }

    /// `L x`, mapping standard-normal draws onto `N(0, A)`.
    pub fn factor_mul(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..=i).map(|k| self.chol[i * n + k] * x[k]).sum())
            .collect()
    }

    pub fn inverse(&self) -> Result<SpdMatrix> {
        let n = self.dim();
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e)?;
            for i in 0..n {
                inv[i * n + j] = col[i];
            }
        }
        SpdMatrix::cholesky(n, &inv)
    }

    /// Product `L Lᵀ` from the stored factor.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.dim();
        let l = &self.chol;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..=i.min(j)).map(|k| l[i * n + k] * l[j * n + k]).sum();
            }
        }
        SymMatrix {
            dim: n,
            entries: out,
        }
    }
}
