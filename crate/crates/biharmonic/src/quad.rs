//! Quadrature rules used by the kernel comparisons and eigenfunction
//! normalization: fixed Gauss–Legendre rules and composite Simpson.

/// 4-point Gauss–Legendre rule on `[-1, 1]` as `(node, weight)` pairs.
/// Exact for polynomials of degree ≤ 7.
pub const GAUSS_4: [(f64, f64); 4] = [
    (-0.8611363115940526, 0.3478548451374538),
    (-0.3399810435848563, 0.6521451548625461),
    (0.3399810435848563, 0.6521451548625461),
    (0.8611363115940526, 0.3478548451374538),
];

/// 8-point Gauss–Legendre rule on `[-1, 1]`. Exact for degree ≤ 15.
pub const GAUSS_8: [(f64, f64); 8] = [
    (-0.9602898564975363, 0.1012285362903763),
    (-0.7966664774136267, 0.2223810344533745),
    (-0.5255324099163290, 0.3137066458778873),
    (-0.1834346424956498, 0.3626837833783620),
    (0.1834346424956498, 0.3626837833783620),
    (0.5255324099163290, 0.3137066458778873),
    (0.7966664774136267, 0.2223810344533745),
    (0.9602898564975363, 0.1012285362903763),
];

/// Integrates `f` over `[a, b]` with a Gauss–Legendre rule given on `[-1, 1]`.
pub fn gauss<F: FnMut(f64) -> f64>(rule: &[(f64, f64)], a: f64, b: f64, mut f: F) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    half * rule
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

/// Composite Simpson rule over `[a, b]` with `intervals` subintervals
/// (must be even).
pub fn composite_simpson<F: FnMut(f64) -> f64>(a: f64, b: f64, intervals: usize, mut f: F) -> f64 {
    assert!(intervals >= 2 && intervals % 2 == 0, "need an even interval count");
    let h = (b - a) / intervals as f64;
    let mut sum = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}
