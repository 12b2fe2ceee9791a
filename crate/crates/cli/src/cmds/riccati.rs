//! `riccati-verify` — check the closed form against its first-order
//! relation at random pole-free points.

use qpii_core::{
    beta_for, closed_form_delta, pole_lattice, riccati_residual, PoleGuard, RiccatiError, C64,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::emit::{json_c64, json_f64, to_pretty, write_atomic};
use crate::resolve::{validation, Resolver, RunError};
use crate::Common;

/// z samples are drawn uniformly from this square in the complex plane.
const WINDOW: (f64, f64) = (-1.0, 1.0);

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    common.format.check_supported(false, true, "riccati-verify")?;
    let lambda = r.c64("lambda")?;
    if lambda == C64::new(0.0, 0.0) {
        return Err(validation("--lambda must be nonzero (the closed form degenerates)"));
    }
    if lambda.norm() > 100.0 {
        return Err(validation("--lambda magnitude above 100 overflows the exponentials"));
    }
    let samples = r.usize("samples")?;
    if samples == 0 {
        return Err(validation("--samples must be at least 1"));
    }
    let guard = PoleGuard { min_denominator: r.f64("guard")? };
    if guard.min_denominator <= 0.0 {
        return Err(validation("--guard must be positive"));
    }
    let beta = r.opt_c64("beta")?.unwrap_or_else(|| beta_for(lambda));

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let mut max_residual: f64 = 0.0;
    for _ in 0..samples {
        // Resample until the point clears the pole guard; with guard values
        // near the pole spacing this can stall, so cap the attempts.
        let mut accepted = None;
        for _ in 0..10_000 {
            let z = C64::new(
                rng.gen_range(WINDOW.0..=WINDOW.1),
                rng.gen_range(WINDOW.0..=WINDOW.1),
            );
            match riccati_residual(z, lambda, beta, &guard) {
                Ok(res) => {
                    accepted = Some((z, res));
                    break;
                }
                Err(RiccatiError::NearPole { .. }) => continue,
                Err(e) => return Err(validation(e.to_string())),
            }
        }
        let Some((z, res)) = accepted else {
            return Err(validation(
                "could not find pole-free sample points; lower --guard or move --lambda",
            ));
        };
        let rel = res.norm() / closed_form_delta(z, lambda).norm();
        max_residual = max_residual.max(rel);
    }

    let poles = pole_lattice(lambda, WINDOW, WINDOW)
        .map_err(|e| validation(e.to_string()))?;

    let doc = json!({
        "max_residual": json_f64(max_residual),
        "samples": samples,
        "beta": json_c64(beta),
        "pole_count_in_window": poles.len(),
    });
    if common.format.wants_json() {
        write_atomic(&common.out, "riccati_verify.json", &to_pretty(&doc)?)?;
    }
    Ok(())
}
