//! Non-stationary 1-D Schrödinger reduction of the quantum Painlevé II
//! equation, verified two independent ways:
//!
//! * **z-space**: along the ray z = iκx (κ = √(2m)/ħ), a function f with
//!   f″ = 2f³ − 4zf − αħf makes ψ(x,t) = f(z(x))·e^{iαt} an exact solution
//!   of iħψ_t = −(ħ²/2m)ψ_xx + Vψ with V = 4z − 2f². [`reduction_residual`]
//!   measures that ODE identity on integrated trajectories by central
//!   differences.
//! * **x,t-space**: [`pde_residual_fd`] applies the PDE stencil directly to
//!   three time slices, and [`propagate_cn`] evolves the initial slice with
//!   Crank–Nicolson and compares against the phase-rotating ansatz.
//!
//! Sign conventions are explicit rather than baked in. [`TimeSign`] selects
//! which side the i∂_t term enters the PDE with, and [`ReductionSign`]
//! selects the sign of the αħf term in the reduced ODE. Direct substitution
//! of the ansatz (see the derivation tests) shows the matched pairs are
//! `(TimeSign::Standard, α = +2i)` and `(TimeSign::Flipped, α = −2i)`;
//! the defaults are the standard-form members of that family.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::painleve2::PIIState;
use crate::riccati::{self, PoleGuard};

/// Physical constants of the reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass: f64,
    pub hbar: f64,
    /// Ansatz frequency: ψ carries the factor e^{iαt}.
    pub alpha: C64,
    /// Spectral parameter of the closed-form f.
    pub lambda: C64,
}

impl PhysicalParams {
    pub fn new(mass: f64, hbar: f64, alpha: C64, lambda: C64) -> Result<Self, SchrodingerError> {
        if !(mass > 0.0 && mass.is_finite()) || !(hbar > 0.0 && hbar.is_finite()) {
            return Err(SchrodingerError::BadParams {
                reason: "mass and hbar must be positive and finite".into(),
            });
        }
        Ok(PhysicalParams { mass, hbar, alpha, lambda })
    }

    /// Canonical units m = 1/2, ħ = 1 (so κ = 1 and z = ix exactly) with
    /// the matched frequency α = 2i.
    pub fn canonical(lambda: C64) -> Self {
        PhysicalParams { mass: 0.5, hbar: 1.0, alpha: C64::new(0.0, 2.0), lambda }
    }

    /// κ = √(2m)/ħ, the scale in z = iκx.
    pub fn kappa(&self) -> f64 {
        (2.0 * self.mass).sqrt() / self.hbar
    }
}

/// Which sign the iħ∂_t term carries in the PDE whose residual is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimeSign {
    /// iħψ_t = −(ħ²/2m)ψ_xx + Vψ; matched by α = +2i.
    #[default]
    Standard,
    /// −iħψ_t = −(ħ²/2m)ψ_xx + Vψ; matched by α = −2i.
    Flipped,
}

/// Sign s of the αħf term in the reduced ODE residual
/// f″ − (2f³ − 4zf − s·αħf).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionSign {
    /// s = +1: the sign produced by substituting the ansatz into the
    /// standard-form PDE (the derivation-oracle default).
    #[default]
    Plus,
    /// s = −1: the opposite convention, kept measurable.
    Minus,
}

impl ReductionSign {
    pub fn value(self) -> f64 {
        match self {
            ReductionSign::Plus => 1.0,
            ReductionSign::Minus => -1.0,
        }
    }
}

/// Uniform spatial grid on [x_min, x_max] with n nodes (n ≥ 16).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, SchrodingerError> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(SchrodingerError::BadParams {
                reason: "grid requires finite x_max > x_min".into(),
            });
        }
        if n < 16 {
            return Err(SchrodingerError::BadParams { reason: "grid requires n >= 16".into() });
        }
        Ok(GridSpec { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n).map(|j| self.x_min + j as f64 * dx).collect()
    }

    /// Reject windows that contain (within margin 10·Δx) a pole of the
    /// closed-form f along the real-x ray. Poles sit at the real solutions
    /// of 8λ·z(x) = 2πik, i.e. x_k = −πk/(4κλ), k ∈ ℤ; x_0 = 0 always.
    pub fn validate_pole_margin(&self, p: &PhysicalParams) -> Result<(), SchrodingerError> {
        if p.lambda == C64::new(0.0, 0.0) {
            return Err(SchrodingerError::BadParams {
                reason: "lambda = 0 has no pole lattice (degenerate closed form)".into(),
            });
        }
        let margin = 10.0 * self.dx();
        let kappa = p.kappa();
        let step = -std::f64::consts::PI / (4.0 * kappa) * p.lambda.inv(); // x_k = k·step
        let reach = self.x_min.abs().max(self.x_max.abs()) + margin;
        let k_max = (reach / step.norm()).ceil() as i64 + 1;
        for k in -k_max..=k_max {
            let xk = step * k as f64;
            if xk.im.abs() <= margin
                && xk.re >= self.x_min - margin
                && xk.re <= self.x_max + margin
            {
                return Err(SchrodingerError::PoleInWindow { x: xk.re });
            }
        }
        Ok(())
    }
}

/// A complex field sampled on a grid at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub grid: GridSpec,
    pub t: f64,
    pub values: Vec<C64>,
}

impl WaveField {
    pub fn new(grid: GridSpec, t: f64, values: Vec<C64>) -> Result<Self, SchrodingerError> {
        if values.len() != grid.n {
            return Err(SchrodingerError::GridMismatch {
                reason: "value count differs from grid size".into(),
            });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(SchrodingerError::GridMismatch {
                reason: "non-finite field value".into(),
            });
        }
        Ok(WaveField { grid, t, values })
    }

    /// Discrete L2 norm sqrt(Σ|ψ_j|²·Δx).
    pub fn l2_norm(&self) -> f64 {
        let dx = self.grid.dx();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * dx).sqrt()
    }
}

/// Relative L2 deviation ‖a − b‖ / ‖b‖ of two fields on the same grid.
pub fn rel_l2_dev(a: &WaveField, b: &WaveField) -> Result<f64, SchrodingerError> {
    if a.grid != b.grid {
        return Err(SchrodingerError::GridMismatch { reason: "different grids".into() });
    }
    let dx = a.grid.dx();
    let diff = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        * dx;
    Ok(diff.sqrt() / b.l2_norm())
}

/// Where the profile f comes from when sampling fields on a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum FSource {
    /// Evaluate the closed-form f(z(x)); `beta` of `None` means the matched
    /// β = −4(λ+i).
    ClosedForm { beta: Option<C64> },
    /// Use precomputed samples, one per grid node (e.g. the f column of an
    /// integrated trajectory along z = iκx).
    Samples(Vec<C64>),
}

#[derive(Debug, Error, PartialEq)]
pub enum SchrodingerError {
    #[error("invalid parameters: {reason}")]
    BadParams { reason: String },
    #[error("grid/field mismatch: {reason}")]
    GridMismatch { reason: String },
    #[error("potential pole at x = {x} inside the grid window (margin 10*dx)")]
    PoleInWindow { x: f64 },
    #[error("too few samples for a central-difference residual (need >= 3)")]
    TooFewSamples,
    #[error("trajectory samples are not uniformly spaced in z")]
    NonUniformSpacing,
    #[error("tridiagonal solve hit a vanishing pivot at step {step}")]
    SingularStep { step: usize },
    #[error(transparent)]
    Riccati(#[from] riccati::RiccatiError),
}

/// Map the physical coordinate to the reduction variable: z = iκx.
pub fn x_to_z(x: f64, p: &PhysicalParams) -> C64 {
    C64::new(0.0, p.kappa() * x)
}

/// Reduction potential V = 4z − 2f².
pub fn potential_v(z: C64, f: C64) -> C64 {
    4.0 * z - 2.0 * f * f
}

/// Sample f on the grid from the chosen source.
pub fn sample_f(
    grid: &GridSpec,
    p: &PhysicalParams,
    source: &FSource,
    guard: &PoleGuard,
) -> Result<Vec<C64>, SchrodingerError> {
    match source {
        FSource::ClosedForm { beta } => {
            grid.validate_pole_margin(p)?;
            let beta = beta.unwrap_or_else(|| riccati::beta_for(p.lambda));
            grid.xs()
                .iter()
                .map(|&x| {
                    riccati::closed_form_f(x_to_z(x, p), p.lambda, beta, guard)
                        .map_err(SchrodingerError::from)
                })
                .collect()
        }
        FSource::Samples(vals) => {
            if vals.len() != grid.n {
                return Err(SchrodingerError::GridMismatch {
                    reason: "f sample count differs from grid size".into(),
                });
            }
            Ok(vals.clone())
        }
    }
}

/// Potential samples V_j = 4z(x_j) − 2f_j² for given f samples.
pub fn potential_on_grid(
    grid: &GridSpec,
    p: &PhysicalParams,
    f: &[C64],
) -> Result<Vec<C64>, SchrodingerError> {
    if f.len() != grid.n {
        return Err(SchrodingerError::GridMismatch {
            reason: "f sample count differs from grid size".into(),
        });
    }
    Ok(grid
        .xs()
        .iter()
        .zip(f)
        .map(|(&x, &fj)| potential_v(x_to_z(x, p), fj))
        .collect())
}

/// Ansatz value ψ(x,t) = f(z(x))·e^{iαt} with closed-form f.
pub fn ansatz_psi(
    x: f64,
    t: f64,
    p: &PhysicalParams,
    beta: Option<C64>,
    guard: &PoleGuard,
) -> Result<C64, SchrodingerError> {
    let beta = beta.unwrap_or_else(|| riccati::beta_for(p.lambda));
    let f = riccati::closed_form_f(x_to_z(x, p), p.lambda, beta, guard)?;
    Ok(f * (C64::i() * p.alpha * t).exp())
}

/// Ansatz field ψ_j = f_j·e^{iαt} from precomputed f samples.
pub fn ansatz_field(
    grid: &GridSpec,
    t: f64,
    p: &PhysicalParams,
    f: &[C64],
) -> Result<WaveField, SchrodingerError> {
    if f.len() != grid.n {
        return Err(SchrodingerError::GridMismatch {
            reason: "f sample count differs from grid size".into(),
        });
    }
    let phase = (C64::i() * p.alpha * t).exp();
    WaveField::new(*grid, t, f.iter().map(|&fj| fj * phase).collect())
}

/// Residual of the reduced ODE f″ − (2f³ − 4zf − s·αħf) on a uniformly
/// spaced trajectory, with f″ from central differences. Returns one value
/// per interior sample (length n − 2).
pub fn reduction_residual(
    traj: &[PIIState],
    alpha: C64,
    hbar: f64,
    sign: ReductionSign,
) -> Result<Vec<C64>, SchrodingerError> {
    if traj.len() < 3 {
        return Err(SchrodingerError::TooFewSamples);
    }
    let dz = traj[1].z - traj[0].z;
    if dz.norm() == 0.0 {
        return Err(SchrodingerError::NonUniformSpacing);
    }
    for w in traj.windows(2) {
        if ((w[1].z - w[0].z) - dz).norm() > 1e-9 * dz.norm() {
            return Err(SchrodingerError::NonUniformSpacing);
        }
    }
    let s = sign.value();
    Ok(traj
        .windows(3)
        .map(|w| {
            let fpp = (w[2].f - 2.0 * w[1].f + w[0].f) / (dz * dz);
            let (z, f) = (w[1].z, w[1].f);
            fpp - (2.0 * f * f * f - 4.0 * z * f - s * alpha * hbar * f)
        })
        .collect())
}

/// PDE residual by central differences on three consecutive time slices:
///
/// ```text
/// Standard: iħ·(ψ⁺−ψ⁻)/(2Δt) + (ħ²/2m)·D²ψ⁰ − V·ψ⁰
/// Flipped: −iħ·(ψ⁺−ψ⁻)/(2Δt) + (ħ²/2m)·D²ψ⁰ − V·ψ⁰
/// ```
///
/// Boundary nodes of the returned field are zero; only interior nodes carry
/// the stencil.
pub fn pde_residual_fd(
    prev: &WaveField,
    mid: &WaveField,
    next: &WaveField,
    v: &[C64],
    p: &PhysicalParams,
    time_sign: TimeSign,
) -> Result<WaveField, SchrodingerError> {
    if prev.grid != mid.grid || mid.grid != next.grid {
        return Err(SchrodingerError::GridMismatch { reason: "different grids".into() });
    }
    if v.len() != mid.grid.n {
        return Err(SchrodingerError::GridMismatch {
            reason: "potential sample count differs from grid size".into(),
        });
    }
    let dt_fwd = next.t - mid.t;
    let dt_bwd = mid.t - prev.t;
    if dt_fwd <= 0.0 || (dt_fwd - dt_bwd).abs() > 1e-12 * dt_fwd.abs() {
        return Err(SchrodingerError::GridMismatch {
            reason: "time slices must be uniformly spaced and increasing".into(),
        });
    }
    let dx = mid.grid.dx();
    let kin = p.hbar * p.hbar / (2.0 * p.mass);
    let it = C64::i()
        * p.hbar
        * match time_sign {
            TimeSign::Standard => 1.0,
            TimeSign::Flipped => -1.0,
        };
    let n = mid.grid.n;
    let mut res = vec![C64::new(0.0, 0.0); n];
    for j in 1..n - 1 {
        let psi_t = (next.values[j] - prev.values[j]) / (2.0 * dt_fwd);
        let psi_xx =
            (mid.values[j + 1] - 2.0 * mid.values[j] + mid.values[j - 1]) / (dx * dx);
        res[j] = it * psi_t + kin * psi_xx - v[j] * mid.values[j];
    }
    WaveField::new(mid.grid, mid.t, res)
}

/// Boundary handling for Crank–Nicolson propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// ψ = 0 at both ends throughout.
    Dirichlet0,
    /// Edge values follow the ansatz phase: ψ_edge(t) = ψ_edge(t₀)·e^{iα(t−t₀)}.
    PinnedAnsatz,
}

/// Crank–Nicolson propagation of the standard-form equation
/// iħψ_t = −(ħ²/2m)ψ_xx + Vψ:
///
/// ```text
/// (I + iΔt/(2ħ)·H)ψ_{k+1} = (I − iΔt/(2ħ)·H)ψ_k,   H = −(ħ²/2m)D² + V.
/// ```
///
/// One complex tridiagonal (Thomas) solve per step. V may be complex, in
/// which case H is non-Hermitian and the L2 norm is not conserved.
pub fn propagate_cn(
    initial: &WaveField,
    v: &[C64],
    dt: f64,
    steps: usize,
    p: &PhysicalParams,
    boundary: Boundary,
) -> Result<WaveField, SchrodingerError> {
    if v.len() != initial.grid.n {
        return Err(SchrodingerError::GridMismatch {
            reason: "potential sample count differs from grid size".into(),
        });
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(SchrodingerError::BadParams { reason: "dt must be positive".into() });
    }
    let n = initial.grid.n;
    let dx = initial.grid.dx();
    let kin = p.hbar * p.hbar / (2.0 * p.mass);
    let r = C64::i() * dt / (2.0 * p.hbar);
    // H coefficients: off-diagonal e, diagonal d_j.
    let e = C64::new(-kin / (dx * dx), 0.0);
    let diag: Vec<C64> = v.iter().map(|&vj| 2.0 * kin / (dx * dx) + vj).collect();

    // Interior unknowns j = 1..n-1. LHS tridiagonal is constant in time.
    let m = n - 2;
    let lower: Vec<C64> = vec![r * e; m];
    let upper: Vec<C64> = vec![r * e; m];
    let center: Vec<C64> = (1..n - 1).map(|j| 1.0 + r * diag[j]).collect();

    let mut psi = initial.values.clone();
    let (edge0_l, edge0_r) = (psi[0], psi[n - 1]);
    let mut rhs = vec![C64::new(0.0, 0.0); m];
    let mut cp = vec![C64::new(0.0, 0.0); m];
    let mut dp = vec![C64::new(0.0, 0.0); m];

    for step in 0..steps {
        let (bl_new, br_new) = match boundary {
            Boundary::Dirichlet0 => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            Boundary::PinnedAnsatz => {
                let ph_new = (C64::i() * p.alpha * ((step + 1) as f64 * dt)).exp();
                (edge0_l * ph_new, edge0_r * ph_new)
            }
        };
        // RHS = (I − rH)ψ_old on the interior, plus boundary contributions
        // moved across: rhs_1 -= r·e·(ψ_0^old + ψ_0^new), same at the far end.
        for j in 1..n - 1 {
            let hpsi = e * psi[j - 1] + diag[j] * psi[j] + e * psi[j + 1];
            rhs[j - 1] = psi[j] - r * hpsi;
        }
        rhs[0] -= r * e * bl_new;
        rhs[m - 1] -= r * e * br_new;
        // ψ_old boundary values are already inside the hpsi sum via psi[0],
        // psi[n-1]; for Dirichlet0 they are zero, for pinned they hold the
        // previous-step pinned values.

        // Thomas forward sweep.
        let mut denom = center[0];
        if denom.norm() < 1e-300 {
            return Err(SchrodingerError::SingularStep { step });
        }
        cp[0] = upper[0] / denom;
        dp[0] = rhs[0] / denom;
        for i in 1..m {
            denom = center[i] - lower[i] * cp[i - 1];
            if denom.norm() < 1e-300 {
                return Err(SchrodingerError::SingularStep { step });
            }
            cp[i] = upper[i] / denom;
            dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom;
        }
        // Back substitution.
        let mut x = dp[m - 1];
        psi[m] = x; // j = n-2
        for i in (0..m - 1).rev() {
            x = dp[i] - cp[i] * x;
            psi[i + 1] = x;
        }
        psi[0] = bl_new;
        psi[n - 1] = br_new;
    }

    WaveField::new(initial.grid, initial.t + steps as f64 * dt, psi)
}
