//! Radial Schrödinger bound states in units ħ = 2m = 1:
//!
//! ```text
//! u″(r) + [E − V(r) − l(l+1)/r²]·u(r) = 0,   u(0) = u(r_max) = 0,
//! ```
//!
//! for four potential families — the exact screened Coulomb (Yukawa)
//! potential, two exponential approximations of it in Hulthén form, and the
//! unscreened Coulomb limit — solved by two independent methods:
//!
//! * [`solve_numerov`]: outward Numerov integration with node-count
//!   bisection on the energy;
//! * [`solve_fd_matrix`]: three-point finite-difference matrix with
//!   Sturm-sequence bisection for the lowest eigenvalues.
//!
//! Both methods re-solve on a doubled grid and report [`RadialError::GridTooCoarse`]
//! when the eigenvalue shifts by more than 1e-6.
//!
//! [`hulthen_analytic_s`] provides the closed-form s-wave Hulthén energies
//! E_n = −[(V₁ − n²δ²)/(2nδ)]² (bound iff V₁ > n²δ²), obtained by the
//! standard substitution q = e^{−δr}, u = q^ν(1−q)·F(q); it is validated
//! against the finite-difference solver in the test fixtures before
//! anything downstream relies on it.
//!
//! Conventions: Coulomb energies are E_n = −V₀²/(4n²) with
//! n = n_radial + l + 1 (e.g. V₀ = 1 → ground state −0.25).

use thiserror::Error;

use crate::yukawa;

/// Potential families, all attractive with strength v0 > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialKind {
    /// Exact screened Coulomb: V(r) = −v0·e^{−2ar}/r.
    Yukawa { v0: f64, a: f64 },
    /// Hulthén-form approximation mapped to r with a = 4λ:
    /// V(r) = −8λ·v0·e^{−8λr}/(1−e^{−8λr}) (strength W = v0·δ, δ = 8λ, so
    /// the Coulomb limit λ→0 recovers −v0/r).
    HulthenApprox { v0: f64, lambda: f64 },
    /// Variant carrying the full substitution factor: numerator e^{−12λr}
    /// instead of e^{−8λr}; same strength and screening scale.
    HulthenConsistent { v0: f64, lambda: f64 },
    /// Unscreened Coulomb: V(r) = −v0/r.
    Coulomb { v0: f64 },
}

impl PotentialKind {
    /// Potential value at r > 0 (centrifugal term excluded).
    pub fn v(&self, r: f64) -> f64 {
        match *self {
            PotentialKind::Yukawa { v0, a } => -v0 * (-2.0 * a * r).exp() / r,
            PotentialKind::HulthenApprox { v0, lambda } => {
                let e = (-8.0 * lambda * r).exp();
                -8.0 * lambda * v0 * e / (1.0 - e)
            }
            PotentialKind::HulthenConsistent { v0, lambda } => {
                let e4 = (-4.0 * lambda * r).exp();
                let e8 = e4 * e4;
                -8.0 * lambda * v0 * e4 * e8 / (1.0 - e8)
            }
            PotentialKind::Coulomb { v0 } => -v0 / r,
        }
    }

    /// Exponential decay rate of the potential tail (None for Coulomb).
    pub fn screening(&self) -> Option<f64> {
        match *self {
            PotentialKind::Yukawa { a, .. } => Some(2.0 * a),
            PotentialKind::HulthenApprox { lambda, .. } => Some(8.0 * lambda),
            PotentialKind::HulthenConsistent { lambda, .. } => Some(8.0 * lambda),
            PotentialKind::Coulomb { .. } => None,
        }
    }

    /// Strength of the −C/r singularity at the origin; all four families
    /// approach −v0/r as r → 0.
    pub fn coulomb_strength(&self) -> f64 {
        self.strength()
    }

    /// The bare strength parameter v0.
    pub fn strength(&self) -> f64 {
        match *self {
            PotentialKind::Yukawa { v0, .. }
            | PotentialKind::HulthenApprox { v0, .. }
            | PotentialKind::HulthenConsistent { v0, .. }
            | PotentialKind::Coulomb { v0 } => v0,
        }
    }

    fn validate(&self) -> Result<(), RadialError> {
        let ok = match *self {
            PotentialKind::Yukawa { v0, a } => v0 > 0.0 && a > 0.0,
            PotentialKind::HulthenApprox { v0, lambda }
            | PotentialKind::HulthenConsistent { v0, lambda } => v0 > 0.0 && lambda > 0.0,
            PotentialKind::Coulomb { v0 } => v0 > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(RadialError::InvalidSpec {
                reason: "strength and screening parameters must be positive".into(),
            })
        }
    }
}

/// How the l(l+1)/r² term is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CentrifugalMode {
    #[default]
    Exact,
    /// Replace 1/r² by the exponential approximation
    /// 4a²e^{−2ar}/(1−e^{−2ar})² with a = the potential's own screening/2.
    GreeneAldrich,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSpec {
    pub potential: PotentialKind,
    pub l: u32,
    pub centrifugal: CentrifugalMode,
}

impl RadialSpec {
    pub fn new(potential: PotentialKind, l: u32, centrifugal: CentrifugalMode) -> Self {
        RadialSpec { potential, l, centrifugal }
    }

    fn validate(&self) -> Result<(), RadialError> {
        self.potential.validate()?;
        if self.centrifugal == CentrifugalMode::GreeneAldrich
            && self.l > 0
            && self.potential.screening().is_none()
        {
            return Err(RadialError::InvalidSpec {
                reason: "the exponential centrifugal mode needs a screened potential".into(),
            });
        }
        Ok(())
    }

    /// Effective potential W(r) = V(r) + centrifugal term.
    pub fn effective_w(&self, r: f64) -> f64 {
        let mut w = self.potential.v(r);
        if self.l > 0 {
            let ll1 = (self.l * (self.l + 1)) as f64;
            w += match self.centrifugal {
                CentrifugalMode::Exact => ll1 / (r * r),
                CentrifugalMode::GreeneAldrich => {
                    let a = self.potential.screening().expect("validated") / 2.0;
                    ll1 * yukawa::centrifugal_approx(r, a)
                }
            };
        }
        w
    }
}

/// Uniform radial grid: nodes r_i = i·h, i = 0..=n, h = r_max/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n: usize,
}

impl RadialGrid {
    fn validate(&self) -> Result<(), RadialError> {
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(RadialError::InvalidSpec { reason: "r_max must be positive".into() });
        }
        if self.n < 1000 {
            return Err(RadialError::InvalidSpec { reason: "grid requires n >= 1000".into() });
        }
        Ok(())
    }
}

/// Default box size: 40 / min(screening rate, sqrt(|E_guess|)), clamped to
/// [20, 400]. Large enough that both the potential tail and the bound-state
/// tail have decayed by ~e^{−40}.
pub fn default_r_max(screening: Option<f64>, e_guess: f64) -> f64 {
    let kappa = e_guess.abs().sqrt().max(1e-3);
    let rate = screening.unwrap_or(f64::INFINITY).min(kappa);
    (40.0 / rate).clamp(20.0, 400.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numerov,
    FdMatrix,
    AnalyticHulthen,
    AnalyticCoulomb,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Numerov => "numerov",
            Method::FdMatrix => "fd-matrix",
            Method::AnalyticHulthen => "analytic-hulthen",
            Method::AnalyticCoulomb => "analytic-coulomb",
        })
    }
}

/// One bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Number of interior nodes of u (radial quantum number).
    pub n_radial: u32,
    pub l: u32,
    /// Energy, always < 0.
    pub energy: f64,
    pub method: Method,
    pub grid_meta: String,
}

#[derive(Debug, Error, PartialEq)]
pub enum RadialError {
    #[error("no bound state with n_radial = {n_target}, l = {l} in the search window")]
    NoBoundState { n_target: u32, l: u32 },
    #[error("grid too coarse: doubling n shifts the eigenvalue by {shift:e} (> 1e-6)")]
    GridTooCoarse { shift: f64 },
    #[error("invalid spec: {reason}")]
    InvalidSpec { reason: String },
}

/// Closed-form s-wave Hulthén energies for V(r) = −V₁·e^{−δr}/(1−e^{−δr}):
/// E_n = −[(V₁ − n²δ²)/(2nδ)]², n ≥ 1; a bound state exists iff V₁ > n²δ².
pub fn hulthen_analytic_s(v1: f64, delta: f64, n: u32) -> Result<f64, RadialError> {
    if !(v1 > 0.0 && delta > 0.0) || n < 1 {
        return Err(RadialError::InvalidSpec {
            reason: "need V1 > 0, delta > 0, n >= 1".into(),
        });
    }
    let nd = n as f64 * delta;
    if v1 <= nd * nd {
        return Err(RadialError::NoBoundState { n_target: n - 1, l: 0 });
    }
    let kappa = (v1 - nd * nd) / (2.0 * nd);
    Ok(-kappa * kappa)
}

/// Closed-form Coulomb energies: E = −v0²/(4n²), n = n_radial + l + 1.
pub fn coulomb_analytic(v0: f64, n_radial: u32, l: u32) -> f64 {
    let n = (n_radial + l + 1) as f64;
    -v0 * v0 / (4.0 * n * n)
}

/// Precomputed effective potential on the grid nodes (index i ↔ r = i·h;
/// index 0 unused).
fn sample_w(spec: &RadialSpec, r_max: f64, n: usize) -> Vec<f64> {
    let h = r_max / n as f64;
    let mut w = vec![0.0; n + 1];
    for (i, wi) in w.iter_mut().enumerate().skip(1) {
        *wi = spec.effective_w(i as f64 * h);
    }
    w
}

/// Count interior nodes of the outward Numerov solution at energy e.
/// By the oscillation theorem this equals the number of Dirichlet
/// eigenvalues below e.
fn numerov_node_count(spec: &RadialSpec, w: &[f64], h: f64, e: f64) -> usize {
    let n = w.len() - 1;
    let h2 = h * h;
    // Series start u = r^{l+1}·(1 − A·r/(2l+2)) from the −A/r origin behavior.
    let a = spec.potential.coulomb_strength();
    let lp = spec.l as f64 + 1.0;
    let seed = |r: f64| r.powf(lp) * (1.0 - a * r / (2.0 * lp));
    let mut u_prev = seed(h);
    let mut u_cur = seed(2.0 * h);
    let mut nodes = 0usize;
    let mut last_sign = if u_prev != 0.0 { u_prev.signum() } else { 0.0 };
    if u_cur != 0.0 {
        if last_sign != 0.0 && u_cur.signum() != last_sign {
            nodes += 1;
        }
        last_sign = u_cur.signum();
    }
    let coeff = |g: f64| 1.0 - h2 * g / 12.0;
    let mut g_prev = w[1] - e;
    let mut g_cur = w[2] - e;
    for i in 2..n {
        let g_next = w[i + 1] - e;
        let u_next =
            (2.0 * u_cur * (1.0 + 5.0 * h2 * g_cur / 12.0) - u_prev * coeff(g_prev)) / coeff(g_next);
        if u_next != 0.0 {
            if last_sign != 0.0 && u_next.signum() != last_sign {
                nodes += 1;
            }
            last_sign = u_next.signum();
        }
        u_prev = u_cur;
        u_cur = u_next;
        g_prev = g_cur;
        g_cur = g_next;
        if u_cur.abs() > 1e100 {
            u_cur *= 1e-100;
            u_prev *= 1e-100;
        }
    }
    nodes
}

fn numerov_eigen(
    spec: &RadialSpec,
    n_target: u32,
    r_max: f64,
    n: usize,
) -> Result<f64, RadialError> {
    let w = sample_w(spec, r_max, n);
    let h = r_max / n as f64;
    let target = n_target as usize;
    let hi = -1e-12;
    if numerov_node_count(spec, &w, h, hi) <= target {
        return Err(RadialError::NoBoundState { n_target, l: spec.l });
    }
    let s = spec.potential.strength();
    let mut lo = -10.0 * s * s;
    let mut tries = 0;
    while numerov_node_count(spec, &w, h, lo) > target {
        lo *= 4.0;
        tries += 1;
        if tries > 8 {
            return Err(RadialError::InvalidSpec {
                reason: "energy window bottom still above the target state".into(),
            });
        }
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if numerov_node_count(spec, &w, h, mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Tail precondition for exponentially screened potentials: the box must be
/// large enough that |V(r_max)| ≤ 1e−8·|E|. Coulomb is exempt (its tail is
/// polynomial; the Dirichlet truncation error decays as e^{−2κ·r_max}).
fn check_tail(spec: &RadialSpec, r_max: f64, energy: f64) -> Result<(), RadialError> {
    if spec.potential.screening().is_some()
        && spec.potential.v(r_max).abs() > 1e-8 * energy.abs()
    {
        return Err(RadialError::InvalidSpec {
            reason: format!(
                "r_max = {r_max} too small: |V(r_max)| > 1e-8*|E| for E = {energy}"
            ),
        });
    }
    Ok(())
}

/// Numerov shooting: the bound state with exactly `n_target` interior
/// nodes. The eigenvalue is bracketed by node counting and bisected to
/// |ΔE| ≤ 1e−10, then re-solved on a doubled grid as a discretization
/// check (the finer value is returned).
pub fn solve_numerov(
    spec: &RadialSpec,
    n_target: u32,
    grid: &RadialGrid,
) -> Result<EigenResult, RadialError> {
    spec.validate()?;
    grid.validate()?;
    let e1 = numerov_eigen(spec, n_target, grid.r_max, grid.n)?;
    let e2 = numerov_eigen(spec, n_target, grid.r_max, grid.n * 2)?;
    let shift = (e2 - e1).abs();
    if shift > 1e-6 {
        return Err(RadialError::GridTooCoarse { shift });
    }
    check_tail(spec, grid.r_max, e2)?;
    Ok(EigenResult {
        n_radial: n_target,
        l: spec.l,
        energy: e2,
        method: Method::Numerov,
        grid_meta: format!(
            "uniform r-grid, r_max={}, n={} (doubling shift {:.2e})",
            grid.r_max, grid.n, shift
        ),
    })
}

/// Sturm-sequence negative-pivot count of (T − E·I) for the symmetric
/// tridiagonal T with diagonal d and constant off-diagonal `off`; equals
/// the number of eigenvalues below E.
fn sturm_count(d: &[f64], off2: f64, e: f64) -> usize {
    let mut cnt = 0usize;
    let mut q = 1.0f64;
    for (i, &di) in d.iter().enumerate() {
        q = if i == 0 { di - e } else { di - e - off2 / q };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            cnt += 1;
        }
    }
    cnt
}

fn fd_levels(spec: &RadialSpec, k: usize, r_max: f64, n: usize) -> Vec<f64> {
    let h = r_max / n as f64;
    let inv_h2 = 1.0 / (h * h);
    // Interior nodes i = 1..n-1 (u_0 = u_n = 0).
    let d: Vec<f64> = (1..n).map(|i| 2.0 * inv_h2 + spec.effective_w(i as f64 * h)).collect();
    let off2 = inv_h2 * inv_h2;
    let gersh_lo = d.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * inv_h2;
    let hi0 = -1e-14;
    let mut out = Vec::new();
    for j in 0..k {
        if sturm_count(&d, off2, hi0) <= j {
            break; // no further negative eigenvalues
        }
        let (mut lo, mut hi) = (gersh_lo, hi0);
        while hi - lo > 1e-11 {
            let mid = 0.5 * (lo + hi);
            if sturm_count(&d, off2, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// Finite-difference matrix method: the k lowest eigenvalues of the
/// 3-point discretization of −u″ + W·u = E·u, keeping only bound (E < 0)
/// levels. By Sturm theory the j-th returned level has exactly j interior
/// nodes. A doubled-grid re-solve guards discretization error; the finer
/// values are returned.
pub fn solve_fd_matrix(
    spec: &RadialSpec,
    k: usize,
    grid: &RadialGrid,
) -> Result<Vec<EigenResult>, RadialError> {
    spec.validate()?;
    grid.validate()?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let coarse = fd_levels(spec, k, grid.r_max, grid.n);
    let fine = fd_levels(spec, k, grid.r_max, grid.n * 2);
    let mut out = Vec::new();
    for (j, &ef) in fine.iter().enumerate() {
        // A level may appear only on the finer grid (marginally bound);
        // the coarse check applies where both grids found it.
        if let Some(&ec) = coarse.get(j) {
            let shift = (ef - ec).abs();
            if shift > 1e-6 {
                return Err(RadialError::GridTooCoarse { shift });
            }
            check_tail(spec, grid.r_max, ef)?;
            out.push(EigenResult {
                n_radial: j as u32,
                l: spec.l,
                energy: ef,
                method: Method::FdMatrix,
                grid_meta: format!(
                    "uniform r-grid, r_max={}, n={} (doubling shift {:.2e})",
                    grid.r_max, grid.n, shift
                ),
            });
        }
    }
    Ok(out)
}

/// One row of a two-potential spectrum comparison. Absent sides (no bound
/// state) are None.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n_radial: u32,
    pub l: u32,
    pub e_a: Option<f64>,
    pub e_b: Option<f64>,
    pub abs_diff: Option<f64>,
    /// |E_A − E_B| / |E_A|.
    pub rel_diff: Option<f64>,
}

/// Solve both specs (Numerov) for every requested (n_radial, l) level and
/// tabulate the differences, ordered by (l, n_radial). `NoBoundState` marks
/// the side absent; other errors propagate.
pub fn compare_spectra(
    spec_a: &RadialSpec,
    spec_b: &RadialSpec,
    levels: &[(u32, u32)],
    grid: &RadialGrid,
) -> Result<Vec<ComparisonRow>, RadialError> {
    let mut lv: Vec<(u32, u32)> = levels.to_vec();
    lv.sort_by_key(|&(n_r, l)| (l, n_r));
    lv.dedup();
    let mut rows = Vec::with_capacity(lv.len());
    for (n_r, l) in lv {
        let solve = |spec: &RadialSpec| -> Result<Option<f64>, RadialError> {
            let s = RadialSpec { l, ..*spec };
            match solve_numerov(&s, n_r, grid) {
                Ok(r) => Ok(Some(r.energy)),
                Err(RadialError::NoBoundState { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        };
        let e_a = solve(spec_a)?;
        let e_b = solve(spec_b)?;
        let abs_diff = match (e_a, e_b) {
            (Some(a), Some(b)) => Some((a - b).abs()),
            _ => None,
        };
        let rel_diff = match (abs_diff, e_a) {
            (Some(d), Some(a)) => Some(d / a.abs()),
            _ => None,
        };
        rows.push(ComparisonRow { n_radial: n_r, l, e_a, e_b, abs_diff, rel_diff });
    }
    Ok(rows)
}
