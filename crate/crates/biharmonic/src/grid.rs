//! Uniform grids on `[0,1]` and grid-function arithmetic.
//!
//! A grid with `N` intervals has nodes `x_j = j/N`, `j = 0..=N`, and mesh
//! size `h = 1/N`. Grid functions carry one value per node; the
//! homogeneous subspace `l²_{h,0}` consists of those vanishing at both
//! endpoints. The discrete scalar product weights every node, including
//! the endpoints, with the full `h`.

use crate::{Error, Result};

/// Uniform partition of `[0,1]` into `N ≥ 2` intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    n: usize,
}

impl Grid {
    /// Builds the grid with `n` intervals. Rejects `n < 2` since the
    /// interior would otherwise be empty.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridTooCoarse(n));
        }
        Ok(Grid { n })
    }

    /// Number of intervals `N`.
    pub fn n_intervals(&self) -> usize {
        self.n
    }

    /// Number of nodes, `N + 1`.
    pub fn n_nodes(&self) -> usize {
        self.n + 1
    }

    /// Number of interior nodes, `N - 1`.
    pub fn n_interior(&self) -> usize {
        self.n - 1
    }

    /// Mesh size `h = 1/N`.
    pub fn mesh(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Node coordinate `x_j = j/N`. Exact at both endpoints.
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n);
        j as f64 / self.n as f64
    }

    /// All node coordinates `x_0..x_N`.
    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|j| self.node(j)).collect()
    }
}

/// Real values attached to every node of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    /// Wraps a value vector; its length must be `N + 1`.
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::LengthMismatch {
                expected: grid.n_nodes(),
                got: values.len(),
            });
        }
        Ok(GridFunction { grid, values })
    }

    /// Samples `f` at every node: `v_j = f(x_j)`.
    pub fn sample<F: Fn(f64) -> f64>(grid: Grid, f: F) -> Self {
        let values = (0..=grid.n_intervals()).map(|j| f(grid.node(j))).collect();
        GridFunction { grid, values }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at node `j`.
    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Values at the interior nodes `j = 1..=N-1`.
    pub fn interior(&self) -> &[f64] {
        &self.values[1..self.grid.n_intervals()]
    }

    /// `sqrt(h Σ v_j²)` over all nodes.
    pub fn norm_h(&self) -> f64 {
        inner_product_h(self, self).expect("same grid").sqrt()
    }

    /// `max_j |v_j|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Grid function vanishing at both endpoints (the space `l²_{h,0}`).
///
/// The endpoint values are exactly zero by construction; all operators in
/// [`crate::operators`] act on this type.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousGridFunction(GridFunction);

impl HomogeneousGridFunction {
    /// Builds from interior values `v_1..v_{N-1}`, padding exact zeros at
    /// the endpoints.
    pub fn from_interior(grid: Grid, interior: Vec<f64>) -> Result<Self> {
        if interior.len() != grid.n_interior() {
            return Err(Error::LengthMismatch {
                expected: grid.n_interior(),
                got: interior.len(),
            });
        }
        let mut values = Vec::with_capacity(grid.n_nodes());
        values.push(0.0);
        values.extend(interior);
        values.push(0.0);
        Ok(HomogeneousGridFunction(GridFunction { grid, values }))
    }

    /// Checks the endpoint values of `g` and reinterprets it; the values
    /// must be exactly zero.
    pub fn try_from_grid_function(g: GridFunction) -> Result<Self> {
        let first = g.values[0];
        let last = *g.values.last().expect("non-empty");
        if first != 0.0 || last != 0.0 {
            return Err(Error::NotHomogeneous(first, last));
        }
        Ok(HomogeneousGridFunction(g))
    }

    /// Samples `f` at the interior nodes and forces exact zeros at the
    /// endpoints.
    pub fn sample_interior<F: Fn(f64) -> f64>(grid: Grid, f: F) -> Self {
        let interior = (1..grid.n_intervals()).map(|j| f(grid.node(j))).collect();
        Self::from_interior(grid, interior).expect("interior length matches by construction")
    }

    /// The zero element of `l²_{h,0}`.
    pub fn zero(grid: Grid) -> Self {
        Self::from_interior(grid, vec![0.0; grid.n_interior()]).expect("length matches")
    }
}

impl std::ops::Deref for HomogeneousGridFunction {
    type Target = GridFunction;

    fn deref(&self) -> &GridFunction {
        &self.0
    }
}

impl From<HomogeneousGridFunction> for GridFunction {
    fn from(h: HomogeneousGridFunction) -> GridFunction {
        h.0
    }
}

/// Discrete scalar product `(u,v)_h = h Σ_{j=0}^{N} u_j v_j`.
///
/// Endpoint terms carry full weight `h`; for homogeneous functions they
/// vanish anyway.
pub fn inner_product_h(u: &GridFunction, v: &GridFunction) -> Result<f64> {
    if u.grid != v.grid {
        return Err(Error::GridMismatch(
            u.grid.n_intervals(),
            v.grid.n_intervals(),
        ));
    }
    let sum: f64 = u
        .values
        .iter()
        .zip(&v.values)
        .map(|(a, b)| a * b)
        .sum();
    Ok(u.grid.mesh() * sum)
}

/// Scalar product of interior-value slices against a grid, `h Σ u_j v_j`
/// over `j = 1..=N-1`. Interior slices are what the difference operators
/// return, so this avoids round-tripping through grid functions.
pub fn inner_product_interior(grid: Grid, u: &[f64], v: &[f64]) -> f64 {
    debug_assert_eq!(u.len(), grid.n_interior());
    debug_assert_eq!(v.len(), grid.n_interior());
    grid.mesh() * u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()
}
