//! Gnuplot script emission for the CSV outputs this tool produces.
//!
//! The script kind is normally sniffed from the CSV header; files with an
//! unrecognized header are rejected rather than plotted blindly.

use std::path::Path;

use crate::emit::write_atomic;
use crate::resolve::{validation, RunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Exact vs approximate potential curves (column 1 against 2 and 3).
    Potential,
    /// Relative error profile on a log scale (column 1 against 6).
    Error,
    /// Residual norm along a parameter sweep (column 1 against 11).
    Residual,
}

impl PlotKind {
    pub fn parse(v: &str) -> Result<Self, RunError> {
        match v {
            "potential" => Ok(PlotKind::Potential),
            "error" => Ok(PlotKind::Error),
            "residual" => Ok(PlotKind::Residual),
            other => Err(validation(format!(
                "--kind must be one of potential, error, residual (got `{other}`)"
            ))),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            PlotKind::Potential => "potential",
            PlotKind::Error => "error",
            PlotKind::Residual => "residual",
        }
    }
}

const POTENTIAL_HEADER: &str = "r,v_exact,v_approx,v_approx_consistent,abs_err,rel_err";
const RESIDUAL_HEADER: &str =
    "z_re,z_im,lambda_re,lambda_im,r1_re,r1_im,r2_re,r2_im,r3_re,r3_im,fro_norm";

/// Decide the default plot kind from the first line of the CSV.
pub fn sniff_kind(header: &str) -> Result<PlotKind, RunError> {
    let header = header.trim_end();
    if header == POTENTIAL_HEADER {
        Ok(PlotKind::Potential)
    } else if header == RESIDUAL_HEADER {
        Ok(PlotKind::Residual)
    } else {
        Err(validation(format!(
            "unrecognized CSV schema (header `{header}`); pass --kind to choose a plot style"
        )))
    }
}

fn script_body(kind: PlotKind, data_name: &str, png_name: &str) -> String {
    let common = format!(
        "set terminal pngcairo size 900,600 enhanced\n\
         set output '{png_name}'\n\
         set datafile separator ','\n\
         set grid\n"
    );
    match kind {
        PlotKind::Potential => format!(
            "{common}set xlabel 'r'\n\
             set ylabel 'V(r)'\n\
             set key top right\n\
             plot '{data_name}' skip 1 using 1:2 with lines lw 2 title 'exact', \\\n\
             \x20    '{data_name}' skip 1 using 1:3 with lines lw 2 dashtype 2 title 'approximation'\n"
        ),
        PlotKind::Error => format!(
            "{common}set xlabel 'r'\n\
             set ylabel 'relative error'\n\
             set logscale y\n\
             set key top left\n\
             plot '{data_name}' skip 1 using 1:6 with lines lw 2 title 'relative error'\n"
        ),
        PlotKind::Residual => format!(
            "{common}set xlabel 'Re z'\n\
             set ylabel 'residual norm'\n\
             set key top right\n\
             plot '{data_name}' skip 1 using 1:11 with lines lw 2 title 'residual norm'\n"
        ),
    }
}

/// Write a gnuplot script next to (or into `out_dir` for) the given CSV.
/// Returns the script file name.
pub fn emit_script(
    csv_path: &Path,
    kind: Option<PlotKind>,
    out_dir: &Path,
) -> Result<String, RunError> {
    let text = std::fs::read_to_string(csv_path)
        .map_err(|e| validation(format!("cannot read {}: {e}", csv_path.display())))?;
    let header = text.lines().next().unwrap_or("");
    let kind = match kind {
        Some(k) => k,
        None => sniff_kind(header)?,
    };
    let stem = csv_path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| validation(format!("bad CSV path {}", csv_path.display())))?;
    let data_name = csv_path
        .file_name()
        .and_then(|s| s.to_str())
        .ok_or_else(|| validation(format!("bad CSV path {}", csv_path.display())))?;
    let script_name = format!("{stem}_{}.gp", kind.suffix());
    let png_name = format!("{stem}_{}.png", kind.suffix());
    let body = script_body(kind, data_name, &png_name);
    write_atomic(out_dir, &script_name, &body)?;
    Ok(script_name)
}
