//! `yukawa-error` — tabulate the screened-Coulomb potential against its
//! exponential approximation.

use qpii_core::yukawa::YukawaParams;
use qpii_core::{error_profile, yukawa::INV_FINE_STRUCTURE};

use crate::emit::{fmt_f64, write_atomic, Csv};
use crate::gnuplot::emit_script;
use crate::resolve::{parse_f64, validation, Resolver, RunError};
use crate::Common;

/// Resolve `--V0 | --Z` into a strength (Z is divided by the inverse fine
/// structure constant).
pub fn resolve_strength(r: &Resolver) -> Result<f64, RunError> {
    let (key, v) = r.exclusive("V0", "Z")?;
    let x = parse_f64(&v, &key)?;
    if !(x > 0.0) {
        return Err(validation(format!("--{key} must be positive")));
    }
    Ok(if key == "Z" { x / INV_FINE_STRUCTURE } else { x })
}

/// Resolve `--a | --lambda` into (a, lambda) under the fixed map a = 4λ.
pub fn resolve_screening(r: &Resolver) -> Result<(f64, f64), RunError> {
    let (key, v) = r.exclusive("a", "lambda")?;
    let x = parse_f64(&v, &key)?;
    if !(x > 0.0) {
        return Err(validation(format!("--{key} must be positive")));
    }
    Ok(if key == "a" { (x, x / 4.0) } else { (4.0 * x, x) })
}

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    common.format.check_supported(true, false, "yukawa-error")?;
    let v0 = resolve_strength(r)?;
    let (a, lambda) = resolve_screening(r)?;
    let r_min = r.f64("rmin")?;
    let r_max = r.f64("rmax")?;
    let n = r.usize("n")?;
    if !(r_min > 0.0 && r_max > r_min) {
        return Err(validation("need 0 < rmin < rmax"));
    }
    if n < 2 {
        return Err(validation("--n must be at least 2"));
    }
    let log_grid = r.flag("log-grid")?;
    let want_script = r.flag("gnuplot")?;

    let grid: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if log_grid {
                r_min * (r_max / r_min).powf(t)
            } else {
                r_min + t * (r_max - r_min)
            }
        })
        .collect();

    let rows = error_profile(&grid, &YukawaParams::new(v0, a), lambda)
        .map_err(|e| validation(e.to_string()))?;

    let mut csv = Csv::new(&["r", "v_exact", "v_approx", "v_approx_consistent", "abs_err", "rel_err"]);
    for row in &rows {
        csv.row(&[
            fmt_f64(row.r),
            fmt_f64(row.v_exact),
            fmt_f64(row.v_approx),
            fmt_f64(row.v_approx_consistent),
            fmt_f64(row.abs_err),
            fmt_f64(row.rel_err),
        ]);
    }
    if common.format.wants_csv() {
        let path = write_atomic(&common.out, "yukawa_error.csv", &csv.finish())?;
        if want_script {
            emit_script(&path, None, &common.out)?;
        }
    } else if want_script {
        return Err(validation("--gnuplot needs the CSV output; do not disable it"));
    }
    Ok(())
}
