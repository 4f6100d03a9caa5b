//! Discrete biharmonic calculus on the unit interval.
//!
//! The library implements the compact fourth-order machinery for the
//! clamped biharmonic problem `u'''' = f` on `[0,1]` with
//! `u(0) = u'(0) = u(1) = u'(1) = 0`:
//!
//! * [`grid`] — uniform grids and grid functions with the discrete
//!   `l²_h` inner product and norms,
//! * [`operators`] — central differences, the Simpson averaging operator,
//!   the implicit Hermitian derivative and the discrete biharmonic
//!   operator built from it,
//! * [`spline`] — clamped ("type I") cubic splines in Hermite form,
//!   their bending energy and the third-derivative jump law that links
//!   them to the discrete operator,
//! * [`kernel`] — the explicit Green's kernel of the continuous problem,
//!   the discrete resolvent matrix (two independent constructions),
//!   biharmonic solves and Hilbert–Schmidt comparisons,
//! * [`spectra`] — clamped-beam eigenvalues `β⁴` with `cos β cosh β = 1`,
//!   discrete eigenvalues via a Jacobi sweep on the resolvent matrix,
//!   trace identities and convergence diagnostics,
//! * [`verify`] — seeded verification suites bundling the identities
//!   above into pass/fail reports.
//!
//! Eigenvalues are indexed from `k = 1`; the first positive root of the
//! characteristic equation (the one in `(3π/2, 2π)`) corresponds to `k = 1`.

pub mod grid;
pub mod kernel;
pub mod matrix;
pub mod operators;
pub mod quad;
pub mod rng;
pub mod spectra;
pub mod spline;
pub mod verify;

use thiserror::Error;

/// Errors reported by the discrete biharmonic calculus.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Grids need at least two intervals so that an interior node exists.
    #[error("grid must have at least 2 intervals, got {0}")]
    GridTooCoarse(usize),
    /// Value sequence does not match the grid it claims to live on.
    #[error("expected {expected} node values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    /// Two grid functions live on different grids.
    #[error("grid functions live on different grids ({0} vs {1} intervals)")]
    GridMismatch(usize, usize),
    /// A grid function required to vanish at the endpoints does not.
    #[error("grid function is not homogeneous: endpoint values ({0}, {1})")]
    NotHomogeneous(f64, f64),
    /// Point evaluation outside the unit interval.
    #[error("coordinate {0} lies outside [0,1]")]
    OutOfDomain(f64),
    /// Node index outside the valid interior range `1..=N-1`.
    #[error("interior node index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    /// The boundary-moment system was numerically singular.
    #[error("singular linear system: {0}")]
    SingularSystem(&'static str),
    /// A root bracket did not straddle a sign change and its endpoint
    /// residual was too large to accept the endpoint as the root.
    #[error("characteristic root {index}: bracket endpoints have equal sign and residual {residual:e} exceeds tolerance")]
    BracketDefect { index: usize, residual: f64 },
    /// Jacobi iteration failed to reach the off-diagonal tolerance.
    #[error("Jacobi eigenvalue iteration did not converge within {0} sweeps")]
    JacobiNoConvergence(usize),
    /// Eigenfunction coefficients degenerated to (0, 0).
    #[error("degenerate eigenfunction coefficients for beta = {0}")]
    DegenerateEigenfunction(f64),
    /// A precondition on requested eigenvalue indices failed.
    #[error("invalid eigenvalue request: {0}")]
    InvalidRequest(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
