//! `gnuplot` — emit a plot script for a CSV produced by this tool.

use std::path::Path;

use crate::gnuplot::{emit_script, PlotKind};
use crate::resolve::{Resolver, RunError};
use crate::Common;

pub fn run(r: &Resolver, common: &Common) -> Result<(), RunError> {
    let csv = r.string("csv")?;
    let kind = r.raw("kind").map(|v| PlotKind::parse(&v)).transpose()?;
    emit_script(Path::new(&csv), kind, &common.out)?;
    Ok(())
}
