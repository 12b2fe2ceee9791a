//! Lax pair for the quantum Painlevé II equation and its zero-curvature
//! residual.
//!
//! The scalar equation under study is
//!
//! ```text
//! f'' = 2f³ - 4zf - 2iħf + c,                                     (QPII)
//! ```
//!
//! a one-parameter (ħ) deformation of classical Painlevé II. It is encoded by
//! the connection pair
//!
//! ```text
//! A(z, λ) = (8iλ² + if² - 2iz)·σ3 + f'·σ2 + (c/(4λ) - 4λf)·σ1 + iħ·σ2,
//! B(z, λ) = -2iλ·σ3 + f·σ1 + f·I,
//! ```
//!
//! whose zero-curvature combination `R = ∂z A - ∂λ B + [A, B]` collapses to
//!
//! ```text
//! R = 4iλħ·σ1 + (f'' - 2f³ + 4zf - c)·σ2 + 2ħf·σ3.
//! ```
//!
//! The σ2 coefficient is exactly the QPII residual with the ħ-term excluded,
//! so for ħ = 0 the curvature vanishes precisely on solutions; for ħ > 0 the
//! σ1 and σ3 coefficients are the irreducible quantum corrections and the
//! pair is compatible only modulo those terms. This module evaluates both the
//! residual matrix and the scalar right-hand-side residual so the two notions
//! can be compared numerically.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::pauli::PauliMatrix2;

/// Parameters shared by the connection matrices: spectral parameter λ,
/// integration constant c, and deformation parameter ħ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub lambda: C64,
    pub c: C64,
    pub hbar: f64,
}

/// A point on (or off) a solution: position z and the 2-jet of f there.
/// Operations that do not need `fpp` ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint {
    pub z: C64,
    pub f: C64,
    pub fp: C64,
    pub fpp: C64,
}

#[derive(Debug, Error, PartialEq)]
pub enum LaxError {
    /// The σ1 coefficient of A contains c/(4λ); λ = 0 is admissible only
    /// when c = 0 (the term is then absent).
    #[error("spectral parameter lambda = 0 is singular for c = {c} != 0")]
    SingularSpectralParam { c: C64 },
    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },
}

fn check_finite(p: &JetPoint, sp: &SpectralParams) -> Result<(), LaxError> {
    let finite =
        |v: C64| v.re.is_finite() && v.im.is_finite();
    if !(finite(p.z) && finite(p.f) && finite(p.fp) && finite(p.fpp)) {
        return Err(LaxError::NonFinite { what: "jet point" });
    }
    if !(finite(sp.lambda) && finite(sp.c) && sp.hbar.is_finite()) {
        return Err(LaxError::NonFinite { what: "spectral parameters" });
    }
    Ok(())
}

/// The coefficient c/(4λ), with the convention that it is identically zero
/// when c = 0 (so λ = 0 stays admissible there).
fn coulomb_term(sp: &SpectralParams) -> Result<C64, LaxError> {
    if sp.c == C64::new(0.0, 0.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    if sp.lambda == C64::new(0.0, 0.0) {
        return Err(LaxError::SingularSpectralParam { c: sp.c });
    }
    Ok(sp.c / (4.0 * sp.lambda))
}

/// Assemble `A(z, λ)` from the 1-jet (z, f, f'). `p.fpp` is ignored.
pub fn build_a(p: &JetPoint, sp: &SpectralParams) -> Result<PauliMatrix2, LaxError> {
    check_finite(p, sp)?;
    let i = C64::i();
    let lam = sp.lambda;
    let c1 = coulomb_term(sp)? - 4.0 * lam * p.f;
    let c2 = p.fp + i * sp.hbar;
    let c3 = i * (8.0 * lam * lam + p.f * p.f - 2.0 * p.z);
    Ok(PauliMatrix2::new(C64::new(0.0, 0.0), c1, c2, c3))
}

/// Assemble `B(z, λ)` from the 0-jet (f alone enters).
pub fn build_b(p: &JetPoint, sp: &SpectralParams) -> Result<PauliMatrix2, LaxError> {
    check_finite(p, sp)?;
    let i = C64::i();
    Ok(PauliMatrix2::new(
        p.f,
        p.f,
        C64::new(0.0, 0.0),
        -2.0 * i * sp.lambda,
    ))
}

/// Zero-curvature residual `R = ∂z A - ∂λ B + [A, B]`, evaluated on the full
/// 2-jet. The z-derivative of A is taken along the jet
/// (`∂z A = (2iff' - 2i)·σ3 + f''·σ2 - 4λf'·σ1`; the c/(4λ) term has no
/// explicit z-dependence) and `∂λ B = -2i·σ3`.
pub fn zero_curvature_residual(
    p: &JetPoint,
    sp: &SpectralParams,
) -> Result<PauliMatrix2, LaxError> {
    let a = build_a(p, sp)?;
    let b = build_b(p, sp)?;
    let i = C64::i();
    let dz_a = PauliMatrix2::new(
        C64::new(0.0, 0.0),
        -4.0 * sp.lambda * p.fp,
        p.fpp,
        2.0 * i * p.f * p.fp - 2.0 * i,
    );
    let dlam_b = PauliMatrix2::new(
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        -2.0 * i,
    );
    Ok(dz_a.sub(&dlam_b).add(&a.comm(&b)))
}

/// Scalar residual of the QPII right-hand side:
/// `f'' - (2f³ - 4zf - 2iħf + c)`. Zero exactly on solution jets.
pub fn qpii_rhs_residual(p: &JetPoint, sp: &SpectralParams) -> C64 {
    let i = C64::i();
    p.fpp - (2.0 * p.f * p.f * p.f - 4.0 * p.z * p.f - 2.0 * i * sp.hbar * p.f + sp.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn zero_jet() -> JetPoint {
        JetPoint {
            z: c(0.0, 0.0),
            f: c(0.0, 0.0),
            fp: c(0.0, 0.0),
            fpp: c(0.0, 0.0),
        }
    }

    #[test]
    fn build_a_classical_zero_jet() {
        // f = f' = 0, c = 0, hbar = 0, lambda = 1, z = 0  ->  8i sigma3.
        let sp = SpectralParams { lambda: c(1.0, 0.0), c: c(0.0, 0.0), hbar: 0.0 };
        let a = build_a(&zero_jet(), &sp).unwrap();
        assert_eq!(a.c, [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 8.0)]);
    }

    #[test]
    fn build_a_hbar_adds_sigma2() {
        let sp = SpectralParams { lambda: c(1.0, 0.0), c: c(0.0, 0.0), hbar: 1.0 };
        let a = build_a(&zero_jet(), &sp).unwrap();
        assert_eq!(a.c, [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(0.0, 8.0)]);
    }

    #[test]
    fn lambda_zero_with_coulomb_term_is_singular() {
        let sp = SpectralParams { lambda: c(0.0, 0.0), c: c(1.0, 0.0), hbar: 0.0 };
        assert_eq!(
            build_a(&zero_jet(), &sp).unwrap_err(),
            LaxError::SingularSpectralParam { c: c(1.0, 0.0) }
        );
        // ... but is fine when c = 0.
        let sp0 = SpectralParams { lambda: c(0.0, 0.0), c: c(0.0, 0.0), hbar: 0.0 };
        assert!(build_a(&zero_jet(), &sp0).is_ok());
    }

    #[test]
    fn build_b_coefficients() {
        let p = JetPoint { f: c(0.3, -0.2), ..zero_jet() };
        let sp = SpectralParams { lambda: c(0.5, 0.1), c: c(0.0, 0.0), hbar: 0.0 };
        let b = build_b(&p, &sp).unwrap();
        assert_eq!(b.c[0], p.f);
        assert_eq!(b.c[1], p.f);
        assert_eq!(b.c[2], c(0.0, 0.0));
        assert_eq!(b.c[3], c(0.2, -1.0)); // -2i(0.5 + 0.1i)
    }

    #[test]
    fn residual_on_trivial_jet_is_quantum_term_only() {
        // f = 0, hbar = 1, lambda = 1: R = 4i sigma1, ||R||_F = 4 sqrt(2).
        let sp = SpectralParams { lambda: c(1.0, 0.0), c: c(0.0, 0.0), hbar: 1.0 };
        let r = zero_curvature_residual(&zero_jet(), &sp).unwrap();
        assert_relative_eq!(r.c[1].im, 4.0, max_relative = 1e-15);
        assert!(r.c[0].norm() < 1e-15 && r.c[2].norm() < 1e-15 && r.c[3].norm() < 1e-15);
        assert_relative_eq!(r.fro_norm(), 4.0 * 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn residual_coefficients_match_closed_form() {
        // On an arbitrary jet the decomposition is
        //   R = 4i lambda hbar sigma1 + (f'' - 2f^3 + 4zf - c) sigma2 + 2 hbar f sigma3.
        let p = JetPoint {
            z: c(0.4, -0.7),
            f: c(-0.9, 0.35),
            fp: c(0.2, 1.1),
            fpp: c(-1.3, 0.6),
        };
        let sp = SpectralParams { lambda: c(0.8, 0.25), c: c(0.3, -0.1), hbar: 0.6 };
        let r = zero_curvature_residual(&p, &sp).unwrap();
        let i = c(0.0, 1.0);
        let want1 = 4.0 * i * sp.lambda * sp.hbar;
        let want2 = p.fpp - 2.0 * p.f * p.f * p.f + 4.0 * p.z * p.f - sp.c;
        let want3 = 2.0 * sp.hbar * p.f;
        for (got, want) in [(r.c[1], want1), (r.c[2], want2), (r.c[3], want3)] {
            assert_relative_eq!(got.re, want.re, epsilon = 1e-13);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-13);
        }
        assert!(r.c[0].norm() < 1e-13);
    }

    #[test]
    fn sigma2_coefficient_is_classical_rhs_residual() {
        // The sigma2 part of R equals qpii_rhs_residual with the hbar term
        // excluded; with hbar = 0 they coincide identically.
        let p = JetPoint {
            z: c(-0.2, 0.5),
            f: c(0.7, -0.4),
            fp: c(0.1, 0.1),
            fpp: c(0.9, -0.2),
        };
        let sp = SpectralParams { lambda: c(1.2, 0.0), c: c(-0.5, 0.2), hbar: 0.0 };
        let r = zero_curvature_residual(&p, &sp).unwrap();
        let scalar = qpii_rhs_residual(&p, &sp);
        assert_relative_eq!(r.c[2].re, scalar.re, epsilon = 1e-13);
        assert_relative_eq!(r.c[2].im, scalar.im, epsilon = 1e-13);
    }

    #[test]
    fn rhs_residual_examples() {
        // Zero jet with c = 1: residual -1.
        let sp = SpectralParams { lambda: c(1.0, 0.0), c: c(1.0, 0.0), hbar: 0.0 };
        assert_eq!(qpii_rhs_residual(&zero_jet(), &sp), c(-1.0, 0.0));
        // f = 1, f'' = 0, z = 0, hbar = 0, c = 0: residual -2.
        let p = JetPoint { f: c(1.0, 0.0), ..zero_jet() };
        let sp0 = SpectralParams { lambda: c(1.0, 0.0), c: c(0.0, 0.0), hbar: 0.0 };
        assert_eq!(qpii_rhs_residual(&p, &sp0), c(-2.0, 0.0));
    }
}
