//! Numerical laboratory for the quantum Painlevé II equation and its
//! spectral applications.
//!
//! The crate is organized as a chain of small, independently testable
//! modules:
//!
//! * [`pauli`] — exact 2×2 matrix algebra in the Pauli basis
//!   (the arithmetic substrate for the compatibility checks);
//! * [`lax`] — the spectral matrices A(λ, z), B(λ, z) and the
//!   zero-curvature residual that encodes the quantum Painlevé II equation;
//! * [`painleve2`] — fixed-step and adaptive complex-ray integration of
//!   f″ = 2f³ − 4zf − 2iħf + c, with movable-pole (blow-up) detection;
//! * [`riccati`] — the closed-form solution of the associated Riccati
//!   equation, its analytic jet, residual identities, and pole lattice;
//! * [`schrodinger1d`] — the reduction of the equation to a non-stationary
//!   1-D Schrödinger problem: ansatz fields, finite-difference residuals,
//!   and Crank–Nicolson propagation;
//! * [`yukawa`] — screened-Coulomb potentials and the exponential
//!   (Hulthén-form) approximation chain with its error laws;
//! * [`radial`] — radial bound-state solvers (Numerov shooting and a
//!   Sturm-bisection finite-difference matrix method) quantifying that
//!   approximation on actual spectra.
//!
//! Complex scalars are [`num_complex::Complex64`], re-exported as [`C64`].

pub mod lax;
pub mod painleve2;
pub mod pauli;
pub mod radial;
pub mod riccati;
pub mod schrodinger1d;
pub mod yukawa;

pub use num_complex::Complex64 as C64;

pub use lax::{build_a, build_b, qpii_rhs_residual, zero_curvature_residual, JetPoint, LaxError,
    SpectralParams};
pub use painleve2::{integrate, max_abs, pii_rhs, trajectory_residual, PIIState, PiiError,
    RaySpec, Stepping};
pub use pauli::{Dense2, PauliMatrix2};
pub use radial::{compare_spectra, coulomb_analytic, default_r_max, hulthen_analytic_s,
    solve_fd_matrix, solve_numerov, CentrifugalMode, ComparisonRow, EigenResult, Method,
    PotentialKind, RadialError, RadialGrid, RadialSpec};
pub use riccati::{beta_for, closed_form_delta, closed_form_f, closed_form_jet, pole_lattice,
    qpii_residual_of_closed_form, riccati_residual, residual_scale, PoleGuard, RiccatiError};
pub use schrodinger1d::{ansatz_field, ansatz_psi, pde_residual_fd, potential_on_grid,
    potential_v, propagate_cn, reduction_residual, rel_l2_dev, sample_f, x_to_z, Boundary,
    FSource, GridSpec, PhysicalParams, ReductionSign, SchrodingerError, TimeSign, WaveField};
pub use yukawa::{centrifugal_approx, centrifugal_rel_error, consistent_lambda, error_profile,
    inv_r_approx, parameter_map, yukawa_approx_consistent, yukawa_approx_z, yukawa_exact,
    ErrorRow, MapReport, YukawaError, YukawaParams};
