//! `pii-integrate` — integrate the field equation along a complex ray.

use qpii_core::{integrate, PIIState, PiiError, RaySpec, SpectralParams, Stepping, C64};

use crate::emit::{fmt_f64, write_atomic, Csv};
use crate::resolve::{numerical, validation, Resolver, RunError};
use crate::Common;

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    common.format.check_supported(true, false, "pii-integrate")?;
    let z0 = r.c64("z0")?;
    let dir_raw = r.c64("dir")?;
    if dir_raw.norm() == 0.0 {
        return Err(validation("--dir must be a nonzero direction"));
    }
    let direction = dir_raw / dir_raw.norm();
    let length = r.f64("len")?;
    let stepping = match r.exclusive_opt("steps", "tol")? {
        None => Stepping::Fixed(400),
        Some((key, v)) if key == "steps" => {
            let steps: usize = v
                .parse()
                .map_err(|_| validation(format!("--steps expects an integer, got `{v}`")))?;
            Stepping::Fixed(steps)
        }
        Some((_, v)) => Stepping::Adaptive { tol: crate::resolve::parse_f64(&v, "tol")? },
    };
    let sp = SpectralParams {
        lambda: C64::new(1.0, 0.0), // unused by the scalar equation
        c: r.c64("c")?,
        hbar: r.f64("hbar")?,
    };
    let initial = PIIState { z: z0, f: r.c64("f0")?, fp: r.c64("fp0")? };
    let ray = RaySpec { z0, direction, length, stepping };

    let traj = integrate(&initial, &ray, &sp).map_err(|e| match e {
        PiiError::BlowUp { .. } => numerical(e.to_string()),
        other => validation(other.to_string()),
    })?;

    let mut csv = Csv::new(&["z_re", "z_im", "f_re", "f_im", "fp_re", "fp_im"]);
    for s in &traj {
        csv.row(&[
            fmt_f64(s.z.re),
            fmt_f64(s.z.im),
            fmt_f64(s.f.re),
            fmt_f64(s.f.im),
            fmt_f64(s.fp.re),
            fmt_f64(s.fp.im),
        ]);
    }
    if common.format.wants_csv() {
        write_atomic(&common.out, "pii_trajectory.csv", &csv.finish())?;
    }
    Ok(())
}
