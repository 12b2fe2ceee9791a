//! `bound-states` — radial bound-state spectra, optionally comparing two
//! potential models on the same strength and screening scale.

use qpii_core::{
    compare_spectra, solve_fd_matrix, solve_numerov, CentrifugalMode, EigenResult,
    PotentialKind, RadialError, RadialGrid, RadialSpec,
};
use serde_json::{json, Value};

use crate::cmds::yukawa::{resolve_screening, resolve_strength};
use crate::emit::{fmt_f64, json_f64, to_pretty, write_atomic, Csv};
use crate::resolve::{numerical, validation, Resolver, RunError};
use crate::Common;

fn map_radial(e: RadialError) -> RunError {
    match e {
        RadialError::InvalidSpec { .. } => validation(e.to_string()),
        other => numerical(other.to_string()),
    }
}

/// Build one potential from shared strength/screening values. `v0_eff`
/// overrides the well depth of the exponential (Hulthén-form) models only.
fn build_potential(
    name: &str,
    v0: f64,
    screening: Option<(f64, f64)>,
    v0_eff: Option<f64>,
) -> Result<PotentialKind, RunError> {
    let need_screening = || {
        screening.ok_or_else(|| {
            validation(format!("--potential {name} needs --a or --lambda"))
        })
    };
    match name {
        "yukawa" => {
            let (a, _) = need_screening()?;
            Ok(PotentialKind::Yukawa { v0, a })
        }
        "hulthen-approx" => {
            let (_, lambda) = need_screening()?;
            Ok(PotentialKind::HulthenApprox { v0: v0_eff.unwrap_or(v0), lambda })
        }
        "hulthen-consistent" => {
            let (_, lambda) = need_screening()?;
            Ok(PotentialKind::HulthenConsistent { v0: v0_eff.unwrap_or(v0), lambda })
        }
        "coulomb" => Ok(PotentialKind::Coulomb { v0 }),
        other => Err(validation(format!(
            "unknown potential `{other}` (yukawa, hulthen-approx, hulthen-consistent, coulomb)"
        ))),
    }
}

fn results_json(results: &[EigenResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|e| {
                json!({
                    "n_radial": e.n_radial,
                    "l": e.l,
                    "energy": json_f64(e.energy),
                    "method": e.method.to_string(),
                    "grid_meta": e.grid_meta,
                })
            })
            .collect(),
    )
}

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    let primary = r.one_of(
        "potential",
        &["yukawa", "hulthen-approx", "hulthen-consistent", "coulomb"],
    )?;
    let compare = r.raw("compare");
    let v0 = resolve_strength(r)?;
    let v0_eff = r.opt_f64("v0-eff")?;
    if let Some(x) = v0_eff {
        if !(x > 0.0) {
            return Err(validation("--v0-eff must be positive"));
        }
    }

    // Screening is shared by both sides of a comparison; Coulomb-only runs
    // must not carry a meaningless screening value.
    let exponential = |name: &str| name != "coulomb";
    let any_screened =
        exponential(&primary) || compare.as_deref().map(exponential).unwrap_or(false);
    let screening = if any_screened {
        Some(resolve_screening(r)?)
    } else {
        if r.raw("a").is_some() || r.raw("lambda").is_some() {
            return Err(validation("--a/--lambda do not apply to the Coulomb potential"));
        }
        None
    };
    let uses_v0_eff = |name: &str| name.starts_with("hulthen");
    if v0_eff.is_some()
        && !uses_v0_eff(&primary)
        && !compare.as_deref().map(uses_v0_eff).unwrap_or(false)
    {
        return Err(validation(
            "--v0-eff only applies to the hulthen-approx / hulthen-consistent models",
        ));
    }

    let l = r.u32("l")?;
    let levels = r.usize("levels")?;
    if levels == 0 {
        return Err(validation("--levels must be at least 1"));
    }
    let centrifugal = match r.one_of("centrifugal", &["exact", "greene-aldrich"])?.as_str() {
        "exact" => CentrifugalMode::Exact,
        _ => CentrifugalMode::GreeneAldrich,
    };
    let grid = RadialGrid { r_max: r.f64("rmax")?, n: r.usize("n")? };
    let spec = RadialSpec::new(build_potential(&primary, v0, screening, v0_eff)?, l, centrifugal);

    if let Some(second) = compare {
        common.format.check_supported(true, false, "bound-states --compare")?;
        let allowed = ["yukawa", "hulthen-approx", "hulthen-consistent", "coulomb"];
        if !allowed.contains(&second.as_str()) {
            return Err(validation(format!(
                "unknown potential `{second}` for --compare"
            )));
        }
        let spec_b =
            RadialSpec::new(build_potential(&second, v0, screening, v0_eff)?, l, centrifugal);
        let requested: Vec<(u32, u32)> = (0..levels).map(|k| (k as u32, l)).collect();
        let rows = compare_spectra(&spec, &spec_b, &requested, &grid).map_err(map_radial)?;
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        let mut csv = Csv::new(&["n_radial", "l", "e_a", "e_b", "abs_diff", "rel_diff"]);
        for row in &rows {
            csv.row(&[
                row.n_radial.to_string(),
                row.l.to_string(),
                opt(row.e_a),
                opt(row.e_b),
                opt(row.abs_diff),
                opt(row.rel_diff),
            ]);
        }
        if common.format.wants_csv() {
            write_atomic(&common.out, "bound_states_comparison.csv", &csv.finish())?;
        }
        return Ok(());
    }

    common.format.check_supported(false, true, "bound-states")?;
    let method = r.one_of("method", &["fd-matrix", "numerov"])?;
    let results: Vec<EigenResult> = match method.as_str() {
        "numerov" => {
            // Collect levels from the bottom up; the first missing level
            // ends the ladder (deeper levels cannot reappear above it).
            let mut out = Vec::new();
            for n_r in 0..levels as u32 {
                match solve_numerov(&spec, n_r, &grid) {
                    Ok(res) => out.push(res),
                    Err(RadialError::NoBoundState { .. }) => break,
                    Err(e) => return Err(map_radial(e)),
                }
            }
            out
        }
        _ => solve_fd_matrix(&spec, levels, &grid).map_err(map_radial)?,
    };
    if results.is_empty() {
        return Err(numerical(format!(
            "no bound states for this configuration (l = {l}, {levels} level(s) requested)"
        )));
    }
    if common.format.wants_json() {
        write_atomic(&common.out, "bound_states.json", &to_pretty(&results_json(&results))?)?;
    }
    Ok(())
}
