//! Green's kernel of the clamped biharmonic problem and its discrete
//! resolvent.
//!
//! The continuous kernel is
//!
//! ```text
//! K(x,y) = (1/6) (1-x)² y² [2x(1-y) + x - y]   for y < x,
//! ```
//!
//! with the symmetric branch for `x < y` and `K(x,x) = x³(1-x)³/3` on the
//! diagonal. The discrete resolvent — the inverse of the discrete
//! biharmonic matrix — is exactly the scaled grid sampling
//! `K^h_{ij} = h·K(x_i, x_j)` on interior nodes. A second, independent
//! construction of the same matrix comes from the generating-polynomial
//! route, which also yields a 4×4 moment system for the boundary-adjacent
//! solution values.
//!
//! Interior indexing: matrix index `i` corresponds to grid node
//! `j = i + 1`.

use crate::grid::{Grid, GridFunction, HomogeneousGridFunction};
use crate::matrix::{solve_dense, Matrix};
use crate::operators::hermitian_derivative;
use crate::quad::{gauss, GAUSS_4, GAUSS_8};
use crate::{Error, Result};

/// Continuous Green's kernel `K(x, y)`; rejects arguments outside `[0,1]`.
pub fn greens_kernel(x: f64, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutOfDomain(y));
    }
    Ok(kernel_unchecked(x, y))
}

/// Kernel evaluation without the domain check, for assembly loops.
///
/// The diagonal uses the explicit `x³(1-x)³/3` form; both branches agree
/// there, and the explicit form avoids the branch ambiguity at `x = y`.
#[inline]
pub(crate) fn kernel_unchecked(x: f64, y: f64) -> f64 {
    if x == y {
        let p = x * (1.0 - x);
        p * p * p / 3.0
    } else if y < x {
        let a = 1.0 - x;
        (a * a) * (y * y) * (2.0 * x * (1.0 - y) + x - y) / 6.0
    } else {
        let a = 1.0 - y;
        (a * a) * (x * x) * (2.0 * y * (1.0 - x) + y - x) / 6.0
    }
}

/// Dense symmetric resolvent matrix `K^h` on the interior nodes.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    grid: Grid,
    mat: Matrix,
}

impl KernelMatrix {
    /// `K^h_{ij} = h·K(x_i, x_j)` from the continuous kernel. Symmetry is
    /// exact by construction (entries are mirrored, not recomputed).
    pub fn assemble(grid: Grid) -> Self {
        let m = grid.n_interior();
        let h = grid.mesh();
        let mut mat = Matrix::zeros(m);
        for i in 0..m {
            let xi = grid.node(i + 1);
            for j in i..m {
                let v = h * kernel_unchecked(xi, grid.node(j + 1));
                mat.set(i, j, v);
                mat.set(j, i, v);
            }
        }
        KernelMatrix { grid, mat }
    }

    /// Closed form from the generating-polynomial route:
    /// `K^h_{jk} = (1/6N)(1-x_j)² x_k² [2x_j(1-x_k) + x_j - x_k]` for
    /// `k ≤ j`, mirrored for `k > j`. Shares no code with
    /// [`KernelMatrix::assemble`].
    pub fn closed_form(grid: Grid) -> Self {
        let m = grid.n_interior();
        let inv6n = 1.0 / (6.0 * grid.n_intervals() as f64);
        let mut mat = Matrix::zeros(m);
        for row in 0..m {
            let xj = grid.node(row + 1);
            for col in 0..=row {
                let xk = grid.node(col + 1);
                let a = 1.0 - xj;
                let v = inv6n * (a * a) * (xk * xk) * (2.0 * xj * (1.0 - xk) + xj - xk);
                mat.set(row, col, v);
                mat.set(col, row, v);
            }
        }
        KernelMatrix { grid, mat }
    }

    /// Wraps an arbitrary matrix as a kernel matrix. Used by the
    /// negative-control path of the verification suites to inject a
    /// corrupted kernel; no invariants are checked.
    pub(crate) fn from_matrix_for_test(grid: Grid, mat: Matrix) -> Self {
        debug_assert_eq!(mat.size(), grid.n_interior());
        KernelMatrix { grid, mat }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Entry in interior indexing (`0..N-1`).
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat.get(i, j)
    }

    /// Smallest entry (for the positivity invariant this is ≥ 0).
    pub fn min_entry(&self) -> f64 {
        let m = self.mat.size();
        let mut min = f64::INFINITY;
        for i in 0..m {
            for j in 0..m {
                min = min.min(self.mat.get(i, j));
            }
        }
        min
    }

    /// Applies `K^h` to the interior values of a forcing and wraps the
    /// result as a homogeneous grid function.
    pub fn solve(&self, f: &GridFunction) -> Result<HomogeneousGridFunction> {
        if f.grid() != self.grid {
            return Err(Error::GridMismatch(
                f.grid().n_intervals(),
                self.grid.n_intervals(),
            ));
        }
        let interior = self.mat.mul_vec(f.interior());
        HomogeneousGridFunction::from_interior(self.grid, interior)
    }
}

/// Solves the discrete biharmonic problem `δ_x⁴ u = f` on the interior
/// nodes through the resolvent, `u = K^h f`, with zero boundary values.
///
/// Only the interior values of `f` enter the solve; the equation is posed
/// at interior nodes, so boundary samples of the forcing are irrelevant
/// and nonzero ones are accepted.
pub fn solve_biharmonic(f: &GridFunction) -> HomogeneousGridFunction {
    KernelMatrix::assemble(f.grid())
        .solve(f)
        .expect("grids match by construction")
}

/// Piecewise-constant comparison kernel `K_h(x, y) = K(x_i, x_j)` on the
/// `h`-cell centered at the nearest node pair; boundary cells are
/// half-width and carry the value 0 since the kernel vanishes there.
pub fn piecewise_kernel(grid: Grid, x: f64, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutOfDomain(y));
    }
    let n = grid.n_intervals() as f64;
    let i = (x * n).round().min(n) as usize;
    let j = (y * n).round().min(n) as usize;
    Ok(kernel_unchecked(grid.node(i), grid.node(j)))
}

/// Hilbert–Schmidt distance `(∬ |K - K_h|²)^{1/2}` between the continuous
/// and the piecewise-constant kernel.
///
/// Integration is cell-by-cell: off-diagonal cells take a 4-point tensor
/// Gauss rule (the integrand is a polynomial of degree ≤ 6 per variable
/// there, so the rule is exact), diagonal cells are split along `y = x`
/// into two triangles, each mapped to the unit square and integrated with
/// the 8-point tensor rule (the collapse map raises the polynomial degree,
/// which the larger rule still integrates exactly).
pub fn hs_norm_difference(grid: Grid) -> f64 {
    hs_squared_difference(grid).sqrt()
}

/// The squared Hilbert–Schmidt distance `∬ |K - K_h|² dx dy`.
pub fn hs_squared_difference(grid: Grid) -> f64 {
    let n = grid.n_intervals();
    let h = grid.mesh();
    let cell = |i: usize| -> (f64, f64) {
        let c = grid.node(i);
        ((c - 0.5 * h).max(0.0), (c + 0.5 * h).min(1.0))
    };
    let mut total = 0.0;
    for i in 0..=n {
        let (ax, bx) = cell(i);
        for j in 0..=n {
            let (ay, by) = cell(j);
            let kc = kernel_unchecked(grid.node(i), grid.node(j));
            if i == j {
                // Lower triangle (ax,ay)-(bx,ay)-(bx,by): y runs from the
                // cell floor up to the diagonal.
                total += gauss(&GAUSS_8, ax, bx, |x| {
                    gauss(&GAUSS_8, ay, x, |y| {
                        let d = kernel_unchecked(x, y) - kc;
                        d * d
                    })
                });
                // Upper triangle, mirrored roles.
                total += gauss(&GAUSS_8, ay, by, |y| {
                    gauss(&GAUSS_8, ax, y, |x| {
                        let d = kernel_unchecked(x, y) - kc;
                        d * d
                    })
                });
            } else {
                total += gauss(&GAUSS_4, ax, bx, |x| {
                    gauss(&GAUSS_4, ay, by, |y| {
                        let d = kernel_unchecked(x, y) - kc;
                        d * d
                    })
                });
            }
        }
    }
    total
}

/// Boundary-adjacent solution values from the moment system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValues {
    /// `u_1`
    pub u_first: f64,
    /// `u_{N-1}`
    pub u_last: f64,
    /// `(u_x)_1`
    pub ux_first: f64,
    /// `(u_x)_{N-1}`
    pub ux_last: f64,
}

/// Solves the 4×4 moment system of the generating-polynomial route for
/// `(u_1, u_{N-1}, (u_x)_1, (u_x)_{N-1})` given the forcing `f`.
///
/// The right-hand side is driven by the factorial moments
/// `m_r = Σ_k k(k-1)···(k-r+1) f_k` over the interior nodes. For `N = 2`
/// the four unknowns collapse pairwise and the system is singular, which
/// is reported as an error.
pub fn boundary_moment_solve(f: &HomogeneousGridFunction) -> Result<BoundaryValues> {
    let grid = f.grid();
    let n = grid.n_intervals() as f64;
    let h = grid.mesh();

    let mut m0 = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    for (idx, &fk) in f.interior().iter().enumerate() {
        let k = (idx + 1) as f64;
        m0 += fk;
        m1 += k * fk;
        m2 += k * (k - 1.0) * fk;
        m3 += k * (k - 1.0) * (k - 2.0) * fk;
    }

    let inv_h2 = 1.0 / (h * h);
    let inv_2h = 0.5 / h;
    let h2 = h * h;

    // Rows: vanishing of r(z) and its first three derivatives at z = 1.
    // Unknown order: (u_1, u_{N-1}, (u_x)_1, (u_x)_{N-1}).
    let mut a = Matrix::zeros(4);
    let rows = [
        [1.0 * inv_h2, 1.0 * inv_h2, -inv_2h, inv_2h],
        [
            2.5 * inv_h2,
            (n + 1.5) * inv_h2,
            -7.0 / 3.0 * inv_2h,
            (n + 5.0 / 3.0) * inv_2h,
        ],
        [
            23.0 / 6.0 * inv_h2,
            (n * n + 2.0 * n + 5.0 / 6.0) * inv_h2,
            -10.0 / 3.0 * inv_2h,
            (n * n + 7.0 / 3.0 * n + 4.0 / 3.0) * inv_2h,
        ],
        [
            2.5 * inv_h2,
            (n * n * n + 1.5 * n * n - 0.5) * inv_h2,
            -2.0 * inv_2h,
            (n * n * n + 2.0 * n * n + n) * inv_2h,
        ],
    ];
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            a.set(r, c, *v);
        }
    }
    let rhs = [
        h2 / 12.0 * m0,
        h2 / 6.0 * m0 + h2 / 12.0 * m1,
        7.0 * h2 / 36.0 * m0 + h2 / 3.0 * m1 + h2 / 12.0 * m2,
        h2 / 12.0 * m0 + 7.0 * h2 / 12.0 * m1 + h2 / 2.0 * m2 + h2 / 12.0 * m3,
    ];
    let x = solve_dense(&a, &rhs)?;
    Ok(BoundaryValues {
        u_first: x[0],
        u_last: x[1],
        ux_first: x[2],
        ux_last: x[3],
    })
}

/// Convenience pairing: the same four boundary-adjacent values read off a
/// kernel solve and its Hermitian derivative. Oracle side of the moment
/// system.
pub fn boundary_values_from_solve(f: &HomogeneousGridFunction) -> BoundaryValues {
    let u = solve_biharmonic(f);
    let ux = hermitian_derivative(&u);
    let n = f.grid().n_intervals();
    BoundaryValues {
        u_first: u.value(1),
        u_last: u.value(n - 1),
        ux_first: ux.value(1),
        ux_last: ux.value(n - 1),
    }
}
