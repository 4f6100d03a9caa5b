//! Clamped ("type I") cubic splines in Hermite form.
//!
//! The interpolating spline of homogeneous grid data keeps its nodal
//! first derivatives equal to the Hermitian derivative of the data, so the
//! spline is stored as the pair (node values, node derivatives) and each
//! interval carries the unique Hermite cubic for its endpoint data. The
//! clamped boundary conditions are zeros in both vectors.
//!
//! The bending energy `∫ |s''|²` is evaluated interval-wise from the
//! closed form
//!
//! ```text
//! B_j = (Δd)²/h + 3 [ (d_j + d_{j+1}) − 2 Δv / h ]² / h
//! ```
//!
//! with `Δv = v_{j+1} − v_j`, `Δd = d_{j+1} − d_j`, while the cross energy
//! `∫ s_u'' s_v''` integrates the per-interval quadratic exactly with a
//! three-point Simpson rule. The two routes agree only because the spline
//! identities hold, which is what the tests pin down.

use crate::grid::{Grid, HomogeneousGridFunction};
use crate::operators::hermitian_derivative;
use crate::{Error, Result};

/// Piecewise Hermite cubic with clamped homogeneous boundary.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    grid: Grid,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl CubicSpline {
    /// Builds the interpolating spline of `u`: node values are `u` itself
    /// and node derivatives are the Hermitian derivative of `u`.
    pub fn build(u: &HomogeneousGridFunction) -> Self {
        let derivs = hermitian_derivative(u);
        CubicSpline {
            grid: u.grid(),
            values: u.values().to_vec(),
            derivs: derivs.values().to_vec(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn node_values(&self) -> &[f64] {
        &self.values
    }

    pub fn node_derivs(&self) -> &[f64] {
        &self.derivs
    }

    /// Locates the interval of `x` and the local coordinate `t ∈ [0,1]`.
    /// `x = 1` falls into the last interval with `t = 1`.
    fn locate(&self, x: f64) -> Result<(usize, f64)> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfDomain(x));
        }
        let n = self.grid.n_intervals();
        let scaled = x * n as f64;
        let j = (scaled.floor() as usize).min(n - 1);
        Ok((j, scaled - j as f64))
    }

    fn piece(&self, j: usize) -> HermitePiece {
        HermitePiece {
            h: self.grid.mesh(),
            v0: self.values[j],
            v1: self.values[j + 1],
            d0: self.derivs[j],
            d1: self.derivs[j + 1],
        }
    }

    /// Spline value at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (j, t) = self.locate(x)?;
        Ok(self.piece(j).value(t))
    }

    /// First derivative at `x`.
    pub fn eval_d1(&self, x: f64) -> Result<f64> {
        let (j, t) = self.locate(x)?;
        Ok(self.piece(j).d1(t))
    }

    /// Second derivative at `x`. The spline is C², so at interior nodes
    /// the two one-sided values coincide up to roundoff and either piece
    /// may be used.
    pub fn eval_d2(&self, x: f64) -> Result<f64> {
        let (j, t) = self.locate(x)?;
        Ok(self.piece(j).d2(t))
    }

    /// Jump of the third derivative at interior node `j`:
    /// `s'''(x_j⁺) − s'''(x_j⁻)`. Each piece has constant third
    /// derivative, so the jump is exact given the Hermite data.
    pub fn third_derivative_jump(&self, j: usize) -> Result<f64> {
        let n = self.grid.n_intervals();
        if j == 0 || j >= n {
            return Err(Error::IndexOutOfRange { index: j, max: n - 1 });
        }
        Ok(self.piece(j).d3() - self.piece(j - 1).d3())
    }
}

/// One Hermite cubic on `[0, h]` in local coordinate `t = (x - x_j)/h`.
struct HermitePiece {
    h: f64,
    v0: f64,
    v1: f64,
    d0: f64,
    d1: f64,
}

impl HermitePiece {
    fn value(&self, t: f64) -> f64 {
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.v0 + h10 * self.h * self.d0 + h01 * self.v1 + h11 * self.h * self.d1
    }

    fn d1(&self, t: f64) -> f64 {
        let t2 = t * t;
        let h00 = 6.0 * t2 - 6.0 * t;
        let h10 = 3.0 * t2 - 4.0 * t + 1.0;
        let h01 = -6.0 * t2 + 6.0 * t;
        let h11 = 3.0 * t2 - 2.0 * t;
        (h00 * self.v0 + h01 * self.v1) / self.h + h10 * self.d0 + h11 * self.d1
    }

    fn d2(&self, t: f64) -> f64 {
        let h00 = 12.0 * t - 6.0;
        let h10 = 6.0 * t - 4.0;
        let h01 = -12.0 * t + 6.0;
        let h11 = 6.0 * t - 2.0;
        (h00 * self.v0 + h01 * self.v1) / (self.h * self.h) + (h10 * self.d0 + h11 * self.d1) / self.h
    }

    fn d3(&self) -> f64 {
        let h3 = self.h * self.h * self.h;
        (12.0 * (self.v0 - self.v1)) / h3 + 6.0 * (self.d0 + self.d1) / (self.h * self.h)
    }
}

/// Bending energy `∫₀¹ |s_u''|²` of the interpolating spline of `u`,
/// summed interval-wise from the closed form.
pub fn energy(u: &HomogeneousGridFunction) -> f64 {
    let ux = hermitian_derivative(u);
    hermite_energy(u.grid(), u.values(), ux.values())
}

/// Interval-wise bending energy of an arbitrary piecewise Hermite cubic
/// given its node values and node derivatives. The closed form needs only
/// endpoint data per interval, so it applies to perturbed (merely C¹)
/// interpolants as well as to the spline itself.
pub(crate) fn hermite_energy(grid: Grid, values: &[f64], derivs: &[f64]) -> f64 {
    let h = grid.mesh();
    let mut total = 0.0;
    for j in 0..grid.n_intervals() {
        let dv = values[j + 1] - values[j];
        let dd = derivs[j + 1] - derivs[j];
        let mean_term = derivs[j + 1] + derivs[j] - 2.0 * dv / h;
        total += dd * dd / h + 3.0 * mean_term * mean_term / h;
    }
    total
}

/// Cross bending energy `∫₀¹ s_u'' s_v''`, integrated exactly: the
/// integrand is quadratic on each interval, so the three-point Simpson
/// rule is exact there.
pub fn cross_energy(u: &HomogeneousGridFunction, v: &HomogeneousGridFunction) -> Result<f64> {
    if u.grid() != v.grid() {
        return Err(Error::GridMismatch(
            u.grid().n_intervals(),
            v.grid().n_intervals(),
        ));
    }
    let su = CubicSpline::build(u);
    let sv = CubicSpline::build(v);
    let h = u.grid().mesh();
    let mut total = 0.0;
    for j in 0..u.grid().n_intervals() {
        let pu = su.piece(j);
        let pv = sv.piece(j);
        let ends = pu.d2(0.0) * pv.d2(0.0) + pu.d2(1.0) * pv.d2(1.0);
        let mid = pu.d2(0.5) * pv.d2(0.5);
        total += h / 6.0 * (ends + 4.0 * mid);
    }
    Ok(total)
}

/// Third-derivative jumps at all interior nodes, as a vector indexed by
/// interior node (`index i` ↔ node `j = i+1`).
pub fn third_derivative_jumps(s: &CubicSpline) -> Vec<f64> {
    (1..s.grid().n_intervals())
        .map(|j| s.third_derivative_jump(j).expect("j in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{inner_product_interior, Grid, HomogeneousGridFunction};
    use crate::operators::{delta_tilde_x2, delta_x2, delta_x4};
    use crate::rng::SplitMix64;

    fn spike(grid: Grid) -> HomogeneousGridFunction {
        let mut interior = vec![0.0; grid.n_interior()];
        interior[0] = 1.0;
        HomogeneousGridFunction::from_interior(grid, interior).unwrap()
    }

    fn random_u(rng: &mut SplitMix64, grid: Grid) -> HomogeneousGridFunction {
        HomogeneousGridFunction::from_interior(grid, rng.symmetric_vec(grid.n_interior())).unwrap()
    }

    #[test]
    fn zero_spline() {
        let g = Grid::new(4).unwrap();
        let s = CubicSpline::build(&HomogeneousGridFunction::zero(g));
        for i in 0..=40 {
            let x = i as f64 / 40.0;
            assert_eq!(s.eval(x).unwrap(), 0.0);
        }
        for j in 1..4 {
            assert_eq!(s.third_derivative_jump(j).unwrap(), 0.0);
        }
        assert_eq!(energy(&HomogeneousGridFunction::zero(g)), 0.0);
    }

    #[test]
    fn spike_node_derivatives() {
        let g = Grid::new(4).unwrap();
        let s = CubicSpline::build(&spike(g));
        let expect = [0.0, 6.0 / 7.0, -24.0 / 7.0, 6.0 / 7.0, 0.0];
        for (got, want) in s.node_derivs().iter().zip(expect) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolation_and_domain() {
        let g = Grid::new(8).unwrap();
        let u = HomogeneousGridFunction::sample_interior(g, |x| (x * (1.0 - x)).powi(2));
        let s = CubicSpline::build(&u);
        for j in 0..=8 {
            let x = g.node(j);
            assert!((s.eval(x).unwrap() - u.value(j)).abs() <= 1e-13);
        }
        // A quartic is not reproduced between nodes.
        let mid = 1.0 / 16.0;
        let exact = (mid * (1.0 - mid)) * (mid * (1.0 - mid));
        assert!((s.eval(mid).unwrap() - exact).abs() > 1e-9);

        assert!(matches!(s.eval(-0.1), Err(Error::OutOfDomain(_))));
        assert!(matches!(s.eval(1.5), Err(Error::OutOfDomain(_))));
        assert!(matches!(s.third_derivative_jump(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.third_derivative_jump(8), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn nodal_first_derivative_matches_hermitian() {
        let mut rng = SplitMix64::new(0x41);
        for n in [4usize, 8, 32] {
            let g = Grid::new(n).unwrap();
            let u = random_u(&mut rng, g);
            let s = CubicSpline::build(&u);
            let ux = hermitian_derivative(&u);
            for j in 1..n {
                let d = s.eval_d1(g.node(j)).unwrap();
                assert!((d - ux.value(j)).abs() <= 1e-12 * ux.sup_norm().max(1.0));
            }
        }
    }

    #[test]
    fn c2_continuity_at_nodes() {
        let mut rng = SplitMix64::new(0xC2);
        for n in [4usize, 8, 16, 64] {
            let g = Grid::new(n).unwrap();
            let u = random_u(&mut rng, g);
            let s = CubicSpline::build(&u);
            for j in 1..n {
                let left = s.piece(j - 1).d2(1.0);
                let right = s.piece(j).d2(0.0);
                let scale = left.abs().max(right.abs()).max(1.0);
                assert!((left - right).abs() <= 1e-9 * scale, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn second_derivative_identities() {
        let mut rng = SplitMix64::new(0x2D);
        for n in [4usize, 8, 32] {
            let g = Grid::new(n).unwrap();
            let h2 = g.mesh() * g.mesh();
            let u = random_u(&mut rng, g);
            let s = CubicSpline::build(&u);
            let dt = delta_tilde_x2(&u);
            let d2 = delta_x2(&u);
            let d4 = delta_x4(&u);
            for j in 1..n {
                let sd2 = s.eval_d2(g.node(j)).unwrap();
                let main = dt[j - 1] - h2 / 12.0 * d4[j - 1];
                let variant = d2[j - 1] - h2 / 6.0 * d4[j - 1];
                let scale = sd2.abs().max(1.0);
                assert!((sd2 - main).abs() <= 1e-9 * scale, "n={n} j={j}");
                assert!((sd2 - variant).abs() <= 1e-9 * scale, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn jump_identity_spike() {
        let g = Grid::new(4).unwrap();
        let s = CubicSpline::build(&spike(g));
        let jump = s.third_derivative_jump(2).unwrap();
        assert!((jump - (-768.0)).abs() < 1e-9 * 768.0);
    }

    #[test]
    fn jump_identity_random() {
        let mut rng = SplitMix64::new(0x7A);
        for n in [4usize, 8, 16, 64] {
            let g = Grid::new(n).unwrap();
            let h = g.mesh();
            for _ in 0..25 {
                let u = random_u(&mut rng, g);
                let s = CubicSpline::build(&u);
                let d4 = delta_x4(&u);
                let scale = d4.iter().fold(0.0f64, |m, v| m.max((h * v).abs())).max(1e-300);
                for j in 1..n {
                    let jump = s.third_derivative_jump(j).unwrap();
                    assert!(
                        (jump - h * d4[j - 1]).abs() <= 1e-9 * scale,
                        "n={n} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn energy_examples() {
        let g = Grid::new(4).unwrap();
        let u = spike(g);
        let e = energy(&u);
        let expect = 8448.0 / 7.0;
        assert!((e - expect).abs() <= 1e-9 * expect);

        // Energy of the zero function is zero, and small data has small
        // energy (definiteness is exercised through the quadratic form).
        assert_eq!(energy(&HomogeneousGridFunction::zero(g)), 0.0);
    }

    #[test]
    fn energy_definite() {
        let mut rng = SplitMix64::new(0xED);
        for n in [2usize, 4, 16] {
            let g = Grid::new(n).unwrap();
            for _ in 0..20 {
                let u = random_u(&mut rng, g);
                if u.values().iter().any(|&v| v != 0.0) {
                    assert!(energy(&u) > 0.0);
                }
            }
        }
    }

    #[test]
    fn energy_identity_against_quadratic_form() {
        let mut rng = SplitMix64::new(0xE1);
        for n in [2usize, 4, 8, 32] {
            let g = Grid::new(n).unwrap();
            for _ in 0..25 {
                let u = random_u(&mut rng, g);
                let e = energy(&u);
                let q = inner_product_interior(g, &delta_x4(&u), u.interior());
                assert!((e - q).abs() <= 1e-9 * e.abs().max(q.abs()).max(1e-300), "n={n}");
            }
        }
    }

    #[test]
    fn cross_energy_identities() {
        let mut rng = SplitMix64::new(0xCE);
        for n in [2usize, 4, 8, 32] {
            let g = Grid::new(n).unwrap();
            for _ in 0..20 {
                let u = random_u(&mut rng, g);
                let v = random_u(&mut rng, g);

                let cuv = cross_energy(&u, &v).unwrap();
                let cvu = cross_energy(&v, &u).unwrap();
                let scale = cuv.abs().max(1e-300);
                assert!((cuv - cvu).abs() <= 1e-12 * scale);

                let quad = inner_product_interior(g, &delta_x4(&u), v.interior());
                assert!((cuv - quad).abs() <= 1e-9 * scale.max(quad.abs()), "n={n}");

                let cuu = cross_energy(&u, &u).unwrap();
                let e = energy(&u);
                assert!((cuu - e).abs() <= 1e-12 * e.max(1e-300));

                let zero = HomogeneousGridFunction::zero(g);
                assert_eq!(cross_energy(&u, &zero).unwrap(), 0.0);
            }
        }

        let a = HomogeneousGridFunction::zero(Grid::new(4).unwrap());
        let b = HomogeneousGridFunction::zero(Grid::new(5).unwrap());
        assert!(matches!(cross_energy(&a, &b), Err(Error::GridMismatch(4, 5))));
    }

    #[test]
    fn spline_minimizes_energy_among_interpolants() {
        // Perturbing the node derivatives (keeping node values and the
        // clamped ends) leaves the interpolation constraints intact but
        // may only increase the bending energy.
        let mut rng = SplitMix64::new(0x3E);
        for n in [4usize, 8, 16] {
            let g = Grid::new(n).unwrap();
            let u = random_u(&mut rng, g);
            let ux = hermitian_derivative(&u);
            let base = hermite_energy(g, u.values(), ux.values());
            for _ in 0..100 {
                let mut derivs = ux.values().to_vec();
                for d in derivs.iter_mut().take(n).skip(1) {
                    *d += 0.5 * rng.next_symmetric();
                }
                let perturbed = hermite_energy(g, u.values(), &derivs);
                assert!(perturbed >= base - 1e-9, "n={n}: {perturbed} < {base}");
            }
        }
    }
}
