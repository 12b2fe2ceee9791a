//! Integration of the quantum Painlevé II equation along complex rays.
//!
//! The equation
//!
//! ```text
//! f'' = 2f³ - 4zf - 2iħf + c                                      (QPII)
//! ```
//!
//! is integrated as a first-order system in the real arclength s along the
//! straight ray z(s) = z0 + s·d, |d| = 1, s ∈ [0, L]:
//!
//! ```text
//! df/ds  = d·f',      df'/ds = d·(2f³ - 4zf - 2iħf + c).
//! ```
//!
//! Painlevé II solutions have movable poles — locally f ≈ 1/(z - z₀), which
//! satisfies f'' = 2f³ exactly — so any trajectory can blow up in finite
//! arclength. The integrators treat that as a first-class outcome
//! ([`PiiError::BlowUp`]) rather than an accuracy failure: growth past
//! |f| > 1e8 or adaptive-step collapse below 1e-12·L reports the last good z.
//!
//! Two stepping modes are provided: classical fixed-step RK4 (order 4, used
//! where uniformly spaced output is wanted, e.g. for finite-difference
//! residual checks) and an embedded Dormand–Prince 5(4) pair with a PI step
//! controller (absolute = relative tolerance, default 1e-10).

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::lax::SpectralParams;

/// |f| beyond this is treated as a movable-pole blow-up.
pub const OVERFLOW_GUARD: f64 = 1e8;

/// Adaptive steps below this fraction of the ray length signal a pole.
pub const MIN_STEP_FRACTION: f64 = 1e-12;

/// Default adaptive tolerance (absolute = relative).
pub const DEFAULT_TOL: f64 = 1e-10;

/// State of the first-order system at a point on the ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PIIState {
    pub z: C64,
    pub f: C64,
    pub fp: C64,
}

/// Stepping strategy for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stepping {
    /// Fixed-step RK4 with the given number of steps; output is uniformly
    /// spaced (steps + 1 samples including both endpoints).
    Fixed(usize),
    /// Embedded 5(4) pair, accepted-step output (non-uniform spacing).
    Adaptive { tol: f64 },
}

/// A straight integration ray z(s) = z0 + s·direction, s ∈ [0, length].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RaySpec {
    pub z0: C64,
    /// Unit direction in the z-plane (|direction| = 1 within 1e-12).
    pub direction: C64,
    pub length: f64,
    pub stepping: Stepping,
}

#[derive(Debug, Error, PartialEq)]
pub enum PiiError {
    #[error("solution blew up (movable pole) near z = {z_re} + {z_im}i")]
    BlowUp { z_re: f64, z_im: f64 },
    #[error("invalid ray: {reason}")]
    BadRay { reason: String },
    #[error("initial state z does not lie at the ray origin")]
    InitialPointOffRay,
    #[error("trajectory has fewer than 5 samples; cannot form a central-difference residual")]
    TooFewSamples,
    #[error("trajectory samples are not uniformly spaced; residual needs fixed-step output")]
    NonUniformSpacing,
}

impl RaySpec {
    pub fn validate(&self) -> Result<(), PiiError> {
        let bad = |reason: &str| Err(PiiError::BadRay { reason: reason.to_string() });
        if !(self.z0.re.is_finite() && self.z0.im.is_finite()) {
            return bad("non-finite origin");
        }
        if (self.direction.norm() - 1.0).abs() > 1e-12 {
            return bad("direction must be a unit complex number");
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return bad("length must be positive and finite");
        }
        match self.stepping {
            Stepping::Fixed(steps) if steps == 0 => bad("fixed stepping needs >= 1 step"),
            Stepping::Adaptive { tol } if !(tol > 0.0 && tol.is_finite()) => {
                bad("adaptive tolerance must be positive")
            }
            _ => Ok(()),
        }
    }
}

/// Right-hand side of the first-order system in z (before the ray
/// direction factor): returns (df/dz, df'/dz) = (f', f'').
pub fn pii_rhs(s: &PIIState, sp: &SpectralParams) -> (C64, C64) {
    let i = C64::i();
    let fpp = 2.0 * s.f * s.f * s.f - 4.0 * s.z * s.f - 2.0 * i * sp.hbar * s.f + sp.c;
    (s.fp, fpp)
}

#[derive(Clone, Copy)]
struct Sys {
    z0: C64,
    dir: C64,
    sp: SpectralParams,
}

impl Sys {
    /// Derivative of (f, f') with respect to arclength s.
    fn deriv(&self, s: f64, y: [C64; 2]) -> [C64; 2] {
        let state = PIIState { z: self.z0 + s * self.dir, f: y[0], fp: y[1] };
        let (df, dfp) = pii_rhs(&state, &self.sp);
        [self.dir * df, self.dir * dfp]
    }
}

fn finite(y: &[C64; 2]) -> bool {
    y.iter().all(|v| v.re.is_finite() && v.im.is_finite())
}

fn blow_up_at(z: C64) -> PiiError {
    PiiError::BlowUp { z_re: z.re, z_im: z.im }
}

/// Integrate QPII along a ray. Returns the trajectory including both
/// endpoints; fixed-step output is uniformly spaced in z.
pub fn integrate(
    initial: &PIIState,
    ray: &RaySpec,
    sp: &SpectralParams,
) -> Result<Vec<PIIState>, PiiError> {
    ray.validate()?;
    if (initial.z - ray.z0).norm() > 1e-12 * (1.0 + ray.z0.norm()) {
        return Err(PiiError::InitialPointOffRay);
    }
    let sys = Sys { z0: ray.z0, dir: ray.direction, sp: *sp };
    match ray.stepping {
        Stepping::Fixed(steps) => integrate_rk4(initial, ray, sys, steps),
        Stepping::Adaptive { tol } => integrate_dp54(initial, ray, sys, tol),
    }
}

fn integrate_rk4(
    initial: &PIIState,
    ray: &RaySpec,
    sys: Sys,
    steps: usize,
) -> Result<Vec<PIIState>, PiiError> {
    let h = ray.length / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = [initial.f, initial.fp];
    out.push(*initial);
    for k in 0..steps {
        let s = k as f64 * h;
        let k1 = sys.deriv(s, y);
        let k2 = sys.deriv(s + 0.5 * h, axpy(&y, 0.5 * h, &k1));
        let k3 = sys.deriv(s + 0.5 * h, axpy(&y, 0.5 * h, &k2));
        let k4 = sys.deriv(s + h, axpy(&y, h, &k3));
        for j in 0..2 {
            y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let z = ray.z0 + (s + h) * ray.direction;
        if !finite(&y) || y[0].norm() > OVERFLOW_GUARD {
            return Err(blow_up_at(ray.z0 + s * ray.direction));
        }
        out.push(PIIState { z, f: y[0], fp: y[1] });
    }
    Ok(out)
}

fn axpy(y: &[C64; 2], a: f64, k: &[C64; 2]) -> [C64; 2] {
    [y[0] + a * k[0], y[1] + a * k[1]]
}

/// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C_NODES: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
/// 5th-order weights minus embedded 4th-order weights (k7 = derivative at the
/// proposed endpoint enters the error estimate only).
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

fn integrate_dp54(
    initial: &PIIState,
    ray: &RaySpec,
    sys: Sys,
    tol: f64,
) -> Result<Vec<PIIState>, PiiError> {
    let len = ray.length;
    let min_step = MIN_STEP_FRACTION * len;
    let mut out = vec![*initial];
    let mut y = [initial.f, initial.fp];
    let mut s = 0.0_f64;
    let mut h = (len / 100.0).min(1e-2_f64.max(len * 1e-4));
    // PI controller memory (Hairer's beta-stabilized step selection).
    let mut err_old: f64 = 1e-4;
    const SAFE: f64 = 0.9;
    const MIN_FAC: f64 = 0.2;
    const MAX_FAC: f64 = 5.0;
    const ALPHA: f64 = 0.7 / 5.0;
    const BETA: f64 = 0.4 / 5.0;

    while s < len {
        h = h.min(len - s);
        let mut k = [[C64::new(0.0, 0.0); 2]; 7];
        k[0] = sys.deriv(s, y);
        for stage in 0..6 {
            let mut ys = y;
            for j in 0..=stage {
                let a = A[stage][j];
                if a != 0.0 {
                    ys[0] += h * a * k[j][0];
                    ys[1] += h * a * k[j][1];
                }
            }
            k[stage + 1] = sys.deriv(s + C_NODES[stage] * h, ys);
        }
        // 5th-order proposal is the stage-6 state (b row equals A[5]).
        let mut y5 = y;
        for j in 0..6 {
            let a = A[5][j];
            if a != 0.0 {
                y5[0] += h * a * k[j][0];
                y5[1] += h * a * k[j][1];
            }
        }
        // Scaled error norm over the four real components.
        let mut err_sq = 0.0;
        for comp in 0..2 {
            let mut e = C64::new(0.0, 0.0);
            for j in 0..7 {
                if E[j] != 0.0 {
                    e += h * E[j] * k[j][comp];
                }
            }
            let sc = tol + tol * y[comp].norm().max(y5[comp].norm());
            err_sq += (e.norm() / sc).powi(2);
        }
        let err = (err_sq / 2.0).sqrt().max(1e-30);

        if !finite(&y5) || y5[0].norm() > OVERFLOW_GUARD {
            // Shrink toward the singularity; give up once steps collapse.
            h *= 0.25;
            if h < min_step {
                return Err(blow_up_at(ray.z0 + s * ray.direction));
            }
            continue;
        }

        if err <= 1.0 {
            s += h;
            y = y5;
            out.push(PIIState { z: ray.z0 + s * ray.direction, f: y[0], fp: y[1] });
            let fac = (SAFE * err.powf(-ALPHA) * err_old.powf(BETA)).clamp(MIN_FAC, MAX_FAC);
            err_old = err;
            h *= fac;
        } else {
            h *= (SAFE * err.powf(-0.2)).clamp(MIN_FAC, 1.0);
        }
        if h < min_step && s < len {
            return Err(blow_up_at(ray.z0 + s * ray.direction));
        }
    }
    Ok(out)
}

/// Central-difference residual of QPII along a uniformly spaced trajectory:
/// at each interior sample, estimate f'' from neighbors and subtract the
/// right-hand side. Returns one residual per interior point (length n - 2).
///
/// The estimate is second-order accurate, so on an exact solution the
/// residual scales as O(Δz²) — halving the spacing quarters it.
pub fn trajectory_residual(
    traj: &[PIIState],
    sp: &SpectralParams,
) -> Result<Vec<C64>, PiiError> {
    if traj.len() < 5 {
        return Err(PiiError::TooFewSamples);
    }
    let dz = traj[1].z - traj[0].z;
    let scale = dz.norm();
    for w in traj.windows(2) {
        if ((w[1].z - w[0].z) - dz).norm() > 1e-9 * scale {
            return Err(PiiError::NonUniformSpacing);
        }
    }
    let i = C64::i();
    let dz2 = dz * dz;
    Ok(traj
        .windows(3)
        .map(|w| {
            let (zm, z0, zp) = (w[0].f, w[1].f, w[2].f);
            let fpp_est = (zp - 2.0 * z0 + zm) / dz2;
            let s = &w[1];
            fpp_est
                - (2.0 * s.f * s.f * s.f - 4.0 * s.z * s.f - 2.0 * i * sp.hbar * s.f + sp.c)
        })
        .collect())
}

/// Largest residual magnitude, the headline number of
/// [`trajectory_residual`].
pub fn max_abs(residuals: &[C64]) -> f64 {
    residuals.iter().map(|r| r.norm()).fold(0.0, f64::max)
}
