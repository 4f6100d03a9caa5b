//! Compact finite-difference operators on homogeneous grid functions.
//!
//! All operators act on `l²_{h,0}` and return values at the interior nodes
//! `j = 1..=N-1` only (a `Vec` of length `N-1`; index `i` corresponds to
//! node `j = i + 1`); boundary rows are never materialized.
//!
//! The Hermitian derivative `u_x` is defined implicitly by
//! `σ_x u_x = δ_x u` with `(u_x)_0 = (u_x)_N = 0`, where `σ_x` is the
//! Simpson averaging operator with stencil `(1/6, 2/3, 1/6)`. The discrete
//! biharmonic operator is then
//!
//! ```text
//! δ_x⁴ u = (12 / h²) (δ_x u_x − δ_x² u)
//! ```
//!
//! and the fourth-order second-derivative replacement is
//! `δ̃_x² u = 2 δ_x² u − δ_x u_x`.

use crate::grid::{Grid, HomogeneousGridFunction};
use crate::matrix::Matrix;

/// Tridiagonal system stored by diagonals.
///
/// The solver runs plain forward elimination / back substitution without
/// pivoting; callers are expected to pass diagonally dominant systems (the
/// Simpson operator has main diagonal 2/3 against off-diagonals 1/6).
#[derive(Debug, Clone)]
pub struct TridiagonalSystem {
    sub: Vec<f64>,
    main: Vec<f64>,
    sup: Vec<f64>,
}

impl TridiagonalSystem {
    /// Creates a system of size `main.len()`; `sub` and `sup` must be one
    /// entry shorter.
    pub fn new(sub: Vec<f64>, main: Vec<f64>, sup: Vec<f64>) -> Self {
        assert_eq!(sub.len() + 1, main.len());
        assert_eq!(sup.len() + 1, main.len());
        TridiagonalSystem { sub, main, sup }
    }

    /// The Simpson operator `σ_x` restricted to the interior nodes of a
    /// grid with `m = N - 1` unknowns.
    pub fn simpson(m: usize) -> Self {
        TridiagonalSystem {
            sub: vec![1.0 / 6.0; m.saturating_sub(1)],
            main: vec![2.0 / 3.0; m],
            sup: vec![1.0 / 6.0; m.saturating_sub(1)],
        }
    }

    pub fn size(&self) -> usize {
        self.main.len()
    }

    /// Thomas solve. `rhs` length must match the system size.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.main.len();
        assert_eq!(rhs.len(), n);
        if n == 0 {
            return Vec::new();
        }
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = if n > 1 { self.sup[0] / self.main[0] } else { 0.0 };
        dp[0] = rhs[0] / self.main[0];
        for i in 1..n {
            let denom = self.main[i] - self.sub[i - 1] * cp[i - 1];
            if i < n - 1 {
                cp[i] = self.sup[i] / denom;
            }
            dp[i] = (rhs[i] - self.sub[i - 1] * dp[i - 1]) / denom;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    }
}

/// Central first difference `(δ_x u)_j = (u_{j+1} − u_{j−1}) / (2h)`.
pub fn delta_x(u: &HomogeneousGridFunction) -> Vec<f64> {
    let grid = u.grid();
    let v = u.values();
    let inv2h = 0.5 / grid.mesh();
    (1..grid.n_intervals())
        .map(|j| (v[j + 1] - v[j - 1]) * inv2h)
        .collect()
}

/// Central second difference `(δ_x² u)_j = (u_{j+1} − 2u_j + u_{j−1}) / h²`.
pub fn delta_x2(u: &HomogeneousGridFunction) -> Vec<f64> {
    let grid = u.grid();
    let v = u.values();
    let inv_h2 = 1.0 / (grid.mesh() * grid.mesh());
    (1..grid.n_intervals())
        .map(|j| (v[j + 1] - 2.0 * v[j] + v[j - 1]) * inv_h2)
        .collect()
}

/// Simpson average `(σ_x u)_j = u_{j−1}/6 + 2u_j/3 + u_{j+1}/6`.
pub fn sigma_x(u: &HomogeneousGridFunction) -> Vec<f64> {
    let grid = u.grid();
    let v = u.values();
    (1..grid.n_intervals())
        .map(|j| v[j - 1] / 6.0 + 2.0 * v[j] / 3.0 + v[j + 1] / 6.0)
        .collect()
}

/// Hermitian derivative: the homogeneous grid function `u_x` with
/// `σ_x u_x = δ_x u` at the interior nodes and zero endpoint values.
pub fn hermitian_derivative(u: &HomogeneousGridFunction) -> HomogeneousGridFunction {
    let grid = u.grid();
    let rhs = delta_x(u);
    let interior = TridiagonalSystem::simpson(grid.n_interior()).solve(&rhs);
    HomogeneousGridFunction::from_interior(grid, interior).expect("interior length matches")
}

/// Discrete biharmonic operator `δ_x⁴ u = (12/h²)(δ_x u_x − δ_x² u)`.
pub fn delta_x4(u: &HomogeneousGridFunction) -> Vec<f64> {
    delta_x4_with_derivative(u, &hermitian_derivative(u))
}

/// `δ_x⁴` when the Hermitian derivative is already available.
pub fn delta_x4_with_derivative(
    u: &HomogeneousGridFunction,
    ux: &HomogeneousGridFunction,
) -> Vec<f64> {
    let grid = u.grid();
    let scale = 12.0 / (grid.mesh() * grid.mesh());
    let dx_ux = delta_x(ux);
    let dx2_u = delta_x2(u);
    dx_ux
        .iter()
        .zip(&dx2_u)
        .map(|(a, b)| scale * (a - b))
        .collect()
}

/// Fourth-order second-derivative replacement
/// `δ̃_x² u = 2 δ_x² u − δ_x u_x`.
pub fn delta_tilde_x2(u: &HomogeneousGridFunction) -> Vec<f64> {
    let ux = hermitian_derivative(u);
    let dx_ux = delta_x(&ux);
    let dx2_u = delta_x2(u);
    dx2_u
        .iter()
        .zip(&dx_ux)
        .map(|(a, b)| 2.0 * a - b)
        .collect()
}

/// Dense matrix of `δ_x⁴` acting on interior unknowns.
#[derive(Debug, Clone)]
pub struct DboMatrix {
    grid: Grid,
    mat: Matrix,
}

impl DboMatrix {
    /// Assembles the `(N-1) × (N-1)` matrix column by column: column `c`
    /// is `δ_x⁴` applied to the unit grid function supported at node
    /// `c + 1`.
    pub fn assemble(grid: Grid) -> Self {
        let m = grid.n_interior();
        let mut mat = Matrix::zeros(m);
        for c in 0..m {
            let mut interior = vec![0.0; m];
            interior[c] = 1.0;
            let e = HomogeneousGridFunction::from_interior(grid, interior)
                .expect("interior length matches");
            for (r, v) in delta_x4(&e).into_iter().enumerate() {
                mat.set(r, c, v);
            }
        }
        DboMatrix { grid, mat }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Entry `D_{jk}` in interior indexing (`0..N-1`).
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.mat.get(j, k)
    }

    /// Applies the matrix to interior values.
    pub fn apply(&self, interior: &[f64]) -> Vec<f64> {
        self.mat.mul_vec(interior)
    }
}
