//! Shared fixtures for the benchmark suite: representative, pole-free
//! problem setups sized so a single iteration is meaningful but quick.

use qpii_core::{GridSpec, PIIState, PhysicalParams, RaySpec, SpectralParams, Stepping, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A smooth trajectory segment that stays away from movable poles.
pub fn smooth_arc(stepping: Stepping) -> (PIIState, RaySpec, SpectralParams) {
    (
        PIIState { z: c(0.0, 0.0), f: c(0.4, 0.1), fp: c(-0.2, 0.0) },
        RaySpec { z0: c(0.0, 0.0), direction: c(1.0, 0.0), length: 1.0, stepping },
        SpectralParams { lambda: c(1.0, 0.0), c: c(0.3, 0.1), hbar: 1.0 },
    )
}

/// Spatial grid plus canonical physical constants for wave propagation.
pub fn propagation_setup() -> (GridSpec, PhysicalParams) {
    (GridSpec::new(0.1, 0.65, 4_001).unwrap(), PhysicalParams::canonical(c(1.0, 0.0)))
}
