//! Screened-Coulomb (Yukawa) potentials and the exponential approximation
//! chain that connects them to the closed-form Riccati solution.
//!
//! The chain has three rungs:
//!
//! 1. A Greene–Aldrich-type approximation of the centrifugal term,
//!    `1/r² ≈ 4a²e^{-2ar}/(1-e^{-2ar})²`, valid for `ar ≪ 1`, with relative
//!    error `(ar)²/3 + O((ar)⁴)`.
//! 2. Its positive square root `1/r ≈ 2a·e^{-ar}/(1-e^{-2ar})`, used to
//!    replace the `1/r` of the exact potential `V(r) = -V₀e^{-2ar}/r`.
//! 3. An identification `r ↔ z`, `a = 4λ` that rewrites the approximated
//!    potential in the variables of the closed-form solution. Two published
//!    constraints on the numerator strength β — `β² = 4a² = 64λ²` and
//!    `|β| = 4√(λ²+1)` — are mutually consistent only at `λ = √(1/3)`;
//!    [`parameter_map`] reports all of them instead of silently choosing.
//!
//! Two approximated potentials are provided: [`yukawa_approx_z`] with
//! numerator `e^{-8λz}` (the headline form) and [`yukawa_approx_consistent`]
//! with numerator `e^{-12λz}`, which is what the rung-2 substitution
//! actually yields once every factor is carried through. Their ratio is
//! exactly `e^{-4λz}`; keeping both lets downstream spectra quantify the
//! difference.

use num_complex::Complex64 as C64;
use thiserror::Error;

/// 1/α: the inverse fine-structure constant used to derive V₀ from an
/// atomic number.
pub const INV_FINE_STRUCTURE: f64 = 137.037;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaParams {
    /// Strength V₀ > 0.
    pub v0: f64,
    /// Screening parameter a > 0; the potential decays as e^{-2ar}.
    pub a: f64,
    /// Optional atomic number; when set, v0 = z/137.037.
    pub z_number: Option<u32>,
}

impl YukawaParams {
    pub fn new(v0: f64, a: f64) -> Self {
        YukawaParams { v0, a, z_number: None }
    }

    /// Strength from an atomic number: V₀ = Z/137.037.
    pub fn from_atomic_number(z: u32, a: f64) -> Self {
        YukawaParams { v0: z as f64 / INV_FINE_STRUCTURE, a, z_number: Some(z) }
    }
}

/// How the approximation parameters relate under the `r ↔ z`, `a = 4λ`
/// identification, carrying every published constraint on β at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapReport {
    pub lambda: C64,
    /// a = 4λ.
    pub a_from_lambda: f64,
    /// β² = 4a² = 64λ².
    pub beta_sq_map: f64,
    /// |β| = 4√(λ²+1).
    pub beta_abs_matched: f64,
    /// β = -4(λ+i), the value the Riccati solution actually requires.
    pub beta_riccati: C64,
    /// Whether beta_sq_map equals beta_abs_matched² (within 1e-12). True
    /// only at λ = √(1/3); the two constraints conflict everywhere else.
    pub consistent: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum YukawaError {
    #[error("radial grid is empty")]
    EmptyGrid,
    #[error("radial grid must be positive and strictly ascending")]
    BadGrid,
}

/// Exponential approximation of the centrifugal term:
/// `1/r² ≈ 4a²e^{-2ar}/(1-e^{-2ar})² = a²/sinh²(ar)`.
pub fn centrifugal_approx(r: f64, a: f64) -> f64 {
    debug_assert!(r > 0.0 && a > 0.0);
    let s = (a * r).sinh();
    (a / s) * (a / s)
}

/// Relative error of [`centrifugal_approx`] against the exact 1/r²:
/// `|approx - 1/r²|·r²`. Behaves as `(ar)²/3 - (ar)⁴/15 + …` for small `ar`.
pub fn centrifugal_rel_error(r: f64, a: f64) -> f64 {
    let exact = 1.0 / (r * r);
    (centrifugal_approx(r, a) - exact).abs() * r * r
}

/// Positive branch of the square root of [`centrifugal_approx`]:
/// `1/r ≈ 2a·e^{-ar}/(1-e^{-2ar}) = a/sinh(ar)`.
pub fn inv_r_approx(r: f64, a: f64) -> f64 {
    debug_assert!(r > 0.0 && a > 0.0);
    a / (a * r).sinh()
}

/// Exact screened-Coulomb potential `V(r) = -V₀·e^{-2ar}/r`.
pub fn yukawa_exact(r: f64, p: &YukawaParams) -> f64 {
    -p.v0 * (-2.0 * p.a * r).exp() / r
}

/// Approximated potential in the z variable, headline form:
/// `V(z) = -V₀·|β|·e^{-8λz}/(1-e^{-8λz})`, with `|β| = 4√(λ²+1)`.
///
/// This is exactly the Hulthén functional form `-W·e^{-δr}/(1-e^{-δr})`
/// with strength `W = V₀|β|` and screening `δ = 8λ` under `z ↔ r`.
pub fn yukawa_approx_z(z: f64, lambda: f64, v0: f64) -> f64 {
    debug_assert!(z > 0.0 && lambda > 0.0);
    let e = (-8.0 * lambda * z).exp();
    -v0 * beta_abs_matched(lambda) * e / (1.0 - e)
}

/// Approximated potential with every substitution factor carried through:
/// `V(z) = -V₀·|β|·e^{-12λz}/(1-e^{-8λz})` — i.e. `e^{-2ar}·(1/r-approx)`
/// with the module's own identification `e^{-2ar} = e^{-8λz}`. Ratio to
/// [`yukawa_approx_z`] is exactly `e^{-4λz}`.
pub fn yukawa_approx_consistent(z: f64, lambda: f64, v0: f64) -> f64 {
    debug_assert!(z > 0.0 && lambda > 0.0);
    let e4 = (-4.0 * lambda * z).exp();
    let e8 = e4 * e4;
    -v0 * beta_abs_matched(lambda) * e4 * e8 / (1.0 - e8)
}

/// |β| = 4√(λ²+1) for real λ.
pub fn beta_abs_matched(lambda: f64) -> f64 {
    4.0 * (lambda * lambda + 1.0).sqrt()
}

/// Assemble the [`MapReport`] for a real λ > 0.
pub fn parameter_map(lambda: f64) -> MapReport {
    let a = 4.0 * lambda;
    let beta_sq_map = 4.0 * a * a;
    let beta_abs = beta_abs_matched(lambda);
    MapReport {
        lambda: C64::new(lambda, 0.0),
        a_from_lambda: a,
        beta_sq_map,
        beta_abs_matched: beta_abs,
        beta_riccati: -4.0 * (C64::new(lambda, 0.0) + C64::i()),
        consistent: (beta_sq_map - beta_abs * beta_abs).abs() <= 1e-12,
    }
}

/// The unique real λ at which the two β constraints agree:
/// `64λ² = 16(λ²+1) ⇔ λ = √(1/3)`.
pub fn consistent_lambda() -> f64 {
    (1.0f64 / 3.0).sqrt()
}

/// One row of the exact-vs-approximated comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub r: f64,
    pub v_exact: f64,
    /// Headline approximation ([`yukawa_approx_z`]), numerator e^{-8λz}.
    pub v_approx: f64,
    /// Fully-substituted variant, numerator e^{-12λz}.
    pub v_approx_consistent: f64,
    /// |v_approx - v_exact|.
    pub abs_err: f64,
    /// abs_err / |v_exact|.
    pub rel_err: f64,
}

/// Tabulate exact vs approximated potentials along an ascending positive
/// grid, using the literal `z ↔ r` identification.
pub fn error_profile(
    r_grid: &[f64],
    p: &YukawaParams,
    lambda: f64,
) -> Result<Vec<ErrorRow>, YukawaError> {
    if r_grid.is_empty() {
        return Err(YukawaError::EmptyGrid);
    }
    let ascending = r_grid.windows(2).all(|w| w[0] < w[1]);
    if !ascending || r_grid[0] <= 0.0 || r_grid.iter().any(|r| !r.is_finite()) {
        return Err(YukawaError::BadGrid);
    }
    Ok(r_grid
        .iter()
        .map(|&r| {
            let v_exact = yukawa_exact(r, p);
            let v_approx = yukawa_approx_z(r, lambda, p.v0);
            let v_approx_consistent = yukawa_approx_consistent(r, lambda, p.v0);
            let abs_err = (v_approx - v_exact).abs();
            ErrorRow {
                r,
                v_exact,
                v_approx,
                v_approx_consistent,
                abs_err,
                rel_err: abs_err / v_exact.abs(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn centrifugal_approx_values() {
        // a=1, r=1: 4e^{-2}/(1-e^{-2})² = 1/sinh²(1).
        assert_relative_eq!(centrifugal_approx(1.0, 1.0), 0.724062, max_relative = 1e-6);
        // The sinh form and the literal exponential form agree.
        let (a, r): (f64, f64) = (0.7, 0.9);
        let e = (-2.0 * a * r).exp();
        let literal = 4.0 * a * a * e / ((1.0 - e) * (1.0 - e));
        assert_relative_eq!(centrifugal_approx(r, a), literal, max_relative = 1e-14);
    }

    #[test]
    fn centrifugal_scaling_law() {
        // value(r, a) = a²·value(ar, 1).
        for &(r, a) in &[(0.3, 2.0), (1.7, 0.25), (0.01, 5.0)] {
            assert_relative_eq!(
                centrifugal_approx(r, a),
                a * a * centrifugal_approx(a * r, 1.0),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn centrifugal_error_follows_small_argument_law() {
        // rel error = (ar)²/3 - (ar)⁴/15 + O((ar)⁶).
        assert_relative_eq!(
            centrifugal_rel_error(1e-3, 1.0),
            1e-6 / 3.0,
            max_relative = 1e-5
        );
        let x: f64 = 0.1;
        assert_relative_eq!(
            centrifugal_rel_error(x, 1.0),
            x * x / 3.0 - x.powi(4) / 15.0,
            max_relative = 1e-4
        );
        assert!(centrifugal_rel_error(0.3, 1.0) <= 0.033);
    }

    #[test]
    fn inv_r_approx_positive_branch_and_value() {
        assert_relative_eq!(inv_r_approx(1.0, 1.0), 0.850918, max_relative = 1e-6);
        for &(r, a) in &[(0.1, 1.0), (3.0, 0.5), (10.0, 2.0)] {
            let v = inv_r_approx(r, a);
            assert!(v > 0.0);
            assert_relative_eq!(v * v, centrifugal_approx(r, a), max_relative = 1e-14);
        }
        // Relative error vs 1/r is (ar)²/6 to leading order.
        let x: f64 = 1e-2;
        let rel = (inv_r_approx(x, 1.0) - 1.0 / x).abs() * x;
        assert_relative_eq!(rel, x * x / 6.0, max_relative = 1e-3);
    }

    #[test]
    fn yukawa_exact_values_and_coulomb_limit() {
        let p = YukawaParams::new(1.0, 0.5);
        assert_relative_eq!(yukawa_exact(1.0, &p), -(-1.0f64).exp(), max_relative = 1e-12);
        let weak = YukawaParams::new(1.0, 1e-9);
        assert_relative_eq!(yukawa_exact(2.0, &weak), -0.5, max_relative = 1e-8);
        let hydrogen = YukawaParams::from_atomic_number(1, 0.1);
        assert_relative_eq!(hydrogen.v0, 7.2973e-3, max_relative = 1e-4);
    }

    #[test]
    fn approx_z_matches_hand_value() {
        // λ=1, z=ln2/8: e^{-8λz}=1/2 → -V0·4√2·(1/2)/(1/2) = -4√2.
        let z = 2f64.ln() / 8.0;
        assert_relative_eq!(yukawa_approx_z(z, 1.0, 1.0), -4.0 * 2f64.sqrt(), max_relative = 1e-13);
        // Same point, fully-substituted variant: extra e^{-4λz} = 1/√2 → -4.
        assert_relative_eq!(yukawa_approx_consistent(z, 1.0, 1.0), -4.0, max_relative = 1e-13);
    }

    #[test]
    fn consistent_variant_ratio_is_exp_minus_4_lambda_z() {
        for &(z, lam) in &[(0.05, 1.0), (0.3, 0.4), (1.2, 0.9)] {
            let ratio = yukawa_approx_consistent(z, lam, 2.0) / yukawa_approx_z(z, lam, 2.0);
            assert_relative_eq!(ratio, (-4.0 * lam * z).exp(), max_relative = 1e-13);
        }
    }

    #[test]
    fn parameter_map_reports_the_conflict() {
        let m = parameter_map(1.0);
        assert_relative_eq!(m.a_from_lambda, 4.0);
        assert_relative_eq!(m.beta_sq_map, 64.0);
        assert_relative_eq!(m.beta_abs_matched * m.beta_abs_matched, 32.0);
        assert!(!m.consistent);
        assert_relative_eq!(m.beta_riccati.re, -4.0);
        assert_relative_eq!(m.beta_riccati.im, -4.0);
        // The constraints intersect only at λ = √(1/3).
        let lc = consistent_lambda();
        assert!(parameter_map(lc).consistent);
        assert_relative_eq!(64.0 * lc * lc, 16.0 * lc * lc + 16.0, max_relative = 1e-14);
        assert!(!parameter_map(lc * 1.01).consistent);
    }

    #[test]
    fn error_profile_rows_and_guards() {
        let p = YukawaParams::new(1.0, 4.0); // a = 4λ with λ = 1
        let grid = [0.05, 0.1, 0.2, 0.4];
        let rows = error_profile(&grid, &p, 1.0).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert_relative_eq!(row.v_exact, yukawa_exact(row.r, &p), max_relative = 1e-15);
            assert!(row.abs_err >= 0.0 && row.rel_err >= 0.0);
        }
        // rel_err of the headline form grows monotonically on (0, 1/a] in
        // the |β| ≥ 2a regime (λ ≤ √(1/3)): the approx/exact ratio is
        // (|β|/2a)·g(2ar) with g(x) = x/(1−e^{−x}) increasing, so it stays
        // ≥ 1 and climbs. (At larger λ the ratio starts below 1 and the
        // relative error dips through zero instead.)
        let p_mono = YukawaParams::new(1.0, 2.0); // a = 4λ with λ = 1/2
        let fine: Vec<f64> = (1..=100).map(|k| k as f64 * (0.5 / 100.0)).collect();
        let rows = error_profile(&fine, &p_mono, 0.5).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].rel_err >= w[0].rel_err, "not monotone at r = {}", w[1].r);
        }
        assert_eq!(error_profile(&[], &p, 1.0).unwrap_err(), YukawaError::EmptyGrid);
        assert_eq!(error_profile(&[0.2, 0.1], &p, 1.0).unwrap_err(), YukawaError::BadGrid);
        assert_eq!(error_profile(&[-0.1, 0.1], &p, 1.0).unwrap_err(), YukawaError::BadGrid);
    }
}
