//! Minimal dense-matrix support: storage, products, a cyclic Jacobi
//! eigensolver for symmetric matrices and a pivoted solve for small
//! systems. Everything here is plain `f64` row-major storage sized for
//! desk-scale problems (a few hundred rows).

use crate::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds an `n × n` matrix from an entry generator.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest absolute deviation from symmetry, `max |A_ij - A_ji|`.
    pub fn symmetry_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                dev = dev.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Off-diagonal Frobenius mass of a symmetric matrix whose current
    /// state lives in the upper triangle (the Jacobi sweeps below keep
    /// only that half up to date).
    fn off_diagonal_frobenius_upper(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.get(i, j);
                s += v * v;
            }
        }
        (2.0 * s).sqrt()
    }
}

/// Eigen-decomposition of a symmetric matrix.
pub struct SymmetricEigen {
    /// Eigenvalues, unsorted (in Jacobi termination order).
    pub values: Vec<f64>,
    /// Matching eigenvectors, stored as columns.
    pub vectors: Matrix,
}

/// Cyclic Jacobi iteration for a dense symmetric matrix.
///
/// Sweeps all upper-triangle pairs in row order, rotating each away, until
/// the off-diagonal Frobenius mass drops below `1e-14` times the Frobenius
/// norm of the input. Fails after `max_sweeps` full sweeps.
///
/// Jacobi retains high relative accuracy for the small eigenvalues of
/// symmetric positive matrices, which is what the spectral reports need:
/// the small eigenvalues of the resolvent map to the largest biharmonic
/// eigenvalues.
pub fn jacobi_eigen(a: &Matrix, max_sweeps: usize) -> Result<SymmetricEigen> {
    let n = a.size();
    let tol = 1e-14 * a.frobenius_norm();
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    // Numerical Recipes bookkeeping: d carries the running diagonal, z the
    // within-sweep corrections, b the diagonal committed after each sweep.
    let mut b: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    let mut d = b.clone();
    let mut z = vec![0.0; n];

    if n == 1 {
        return Ok(SymmetricEigen {
            values: d,
            vectors: v,
        });
    }

    for _sweep in 0..max_sweeps {
        if a.off_diagonal_frobenius_upper() <= tol {
            for i in 0..n {
                a.set(i, i, d[i]);
            }
            return Ok(SymmetricEigen {
                values: d,
                vectors: v,
            });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let diff = d[q] - d[p];
                let t = if apq.abs() < diff.abs() * 1e-36 {
                    apq / diff
                } else {
                    let theta = 0.5 * diff / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a.set(p, q, 0.0);
                let rotate = |a: &mut Matrix, i: usize, j: usize, k: usize, l: usize| {
                    let g = a.get(i, j);
                    let hkl = a.get(k, l);
                    a.set(i, j, g - s * (hkl + g * tau));
                    a.set(k, l, hkl + s * (g - hkl * tau));
                };
                for j in 0..p {
                    rotate(&mut a, j, p, j, q);
                }
                for j in (p + 1)..q {
                    rotate(&mut a, p, j, j, q);
                }
                for j in (q + 1)..n {
                    rotate(&mut a, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    Err(Error::JacobiNoConvergence(max_sweeps))
}

/// Solves `A x = rhs` for a small dense system by Gaussian elimination
/// with partial pivoting. Reports singularity instead of dividing by a
/// vanishing pivot.
pub fn solve_dense(a: &Matrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = a.size();
    debug_assert_eq!(rhs.len(), n);
    let mut m = a.clone();
    let mut x = rhs.to_vec();
    let scale = m.max_abs();
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, m.get(r, col)))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("non-empty column");
        if pivot.abs() <= 1e-14 * scale {
            return Err(Error::SingularSystem("pivot below threshold"));
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = m.get(col, j);
                m.set(col, j, m.get(pivot_row, j));
                m.set(pivot_row, j, tmp);
            }
            x.swap(col, pivot_row);
        }
        for r in (col + 1)..n {
            let factor = m.get(r, col) / m.get(col, col);
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m.get(r, j) - factor * m.get(col, j);
                m.set(r, j, v);
            }
            x[r] -= factor * x[col];
        }
    }
    for r in (0..n).rev() {
        let mut s = x[r];
        for j in (r + 1)..n {
            s -= m.get(r, j) * x[j];
        }
        x[r] = s / m.get(r, r);
    }
    Ok(x)
}
