//! `lax-residual` — sample the zero-curvature residual over a (z, λ) grid.

use qpii_core::{
    beta_for, closed_form_jet, zero_curvature_residual, JetPoint, PoleGuard, SpectralParams, C64,
};

use crate::emit::{fmt_f64, write_atomic, Csv};
use crate::resolve::{validation, Resolver, RunError};
use crate::Common;

/// Evenly spaced samples from `start` to `end` inclusive. One step means
/// just `start`.
fn segment(start: C64, end: C64, steps: usize) -> Result<Vec<C64>, RunError> {
    if steps == 0 {
        return Err(validation("a grid needs at least one sample"));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let d = (end - start) / (steps - 1) as f64;
    Ok((0..steps).map(|k| start + d * k as f64).collect())
}

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    common.format.check_supported(true, false, "lax-residual")?;
    let z_grid = segment(r.c64("z-start")?, r.c64("z-end")?, r.usize("z-steps")?)?;
    let l_grid = segment(
        r.c64("lambda-start")?,
        r.c64("lambda-end")?,
        r.usize("lambda-steps")?,
    )?;
    let jet_kind = r.one_of("jet", &["closed-form", "zero"])?;
    let beta = r.opt_c64("beta")?;
    let c = r.c64("c")?;
    let hbar = r.f64("hbar")?;
    let guard = PoleGuard { min_denominator: r.f64("guard")? };
    if guard.min_denominator <= 0.0 {
        return Err(validation("--guard must be positive"));
    }

    let mut csv = Csv::new(&[
        "z_re", "z_im", "lambda_re", "lambda_im", "r1_re", "r1_im", "r2_re", "r2_im", "r3_re",
        "r3_im", "fro_norm",
    ]);
    for &lambda in &l_grid {
        let sp = SpectralParams { lambda, c, hbar };
        for &z in &z_grid {
            let jet = match jet_kind.as_str() {
                "zero" => JetPoint {
                    z,
                    f: C64::new(0.0, 0.0),
                    fp: C64::new(0.0, 0.0),
                    fpp: C64::new(0.0, 0.0),
                },
                _ => {
                    let b = beta.unwrap_or_else(|| beta_for(lambda));
                    let (f, fp, fpp) = closed_form_jet(z, lambda, b, &guard)
                        .map_err(|e| validation(e.to_string()))?;
                    JetPoint { z, f, fp, fpp }
                }
            };
            let res = zero_curvature_residual(&jet, &sp)
                .map_err(|e| validation(e.to_string()))?;
            csv.row(&[
                fmt_f64(z.re),
                fmt_f64(z.im),
                fmt_f64(lambda.re),
                fmt_f64(lambda.im),
                fmt_f64(res.c[1].re),
                fmt_f64(res.c[1].im),
                fmt_f64(res.c[2].re),
                fmt_f64(res.c[2].im),
                fmt_f64(res.c[3].re),
                fmt_f64(res.c[3].im),
                fmt_f64(res.fro_norm()),
            ]);
        }
    }
    if common.format.wants_csv() {
        write_atomic(&common.out, "lax_residual.csv", &csv.finish())?;
    }
    Ok(())
}
