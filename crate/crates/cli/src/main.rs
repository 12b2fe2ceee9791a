//! `qpii` — command-line laboratory for a quantum Painlevé II equation and
//! the spectral problems attached to it.
//!
//! Exit codes: 0 success, 2 invalid input (bad flags, bad config, malformed
//! values, unusable problem specifications), 3 numerical failure (blow-up,
//! unconverged grids, absent bound states).

mod cmds;
mod emit;
mod gnuplot;
mod resolve;

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Arg, ArgAction, Command};

use crate::resolve::{Resolver, RunError};

fn value_arg(id: &'static str, help: &'static str) -> Arg {
    Arg::new(id)
        .long(id)
        .help(help)
        .num_args(1)
        .allow_hyphen_values(true)
}

fn value_arg_default(id: &'static str, default: &'static str, help: &'static str) -> Arg {
    value_arg(id, help).default_value(default)
}

/// Args shared by every subcommand.
fn common_args(cmd: Command) -> Command {
    cmd.arg(value_arg_default("out", ".", "output directory"))
        .arg(value_arg_default("seed", "0", "RNG seed recorded in the manifest"))
        .arg(value_arg_default("format", "both", "output kinds: csv, json, or both"))
        .arg(value_arg("config", "key = value config file; flags override it"))
}

fn build_cli() -> Command {
    Command::new("qpii")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Numerical laboratory for a quantum Painlevé II equation, its zero-curvature representation, and screened-Coulomb spectra")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(common_args(
            Command::new("lax-residual")
                .about("Evaluate the zero-curvature residual over a grid in (z, lambda)")
                .arg(value_arg_default("z-start", "0.2,0", "first z sample (re,im)"))
                .arg(value_arg_default("z-end", "1,0", "last z sample (re,im)"))
                .arg(value_arg_default("z-steps", "9", "number of z samples"))
                .arg(value_arg_default("lambda-start", "1,0", "first lambda sample (re,im)"))
                .arg(value_arg_default("lambda-end", "1,0", "last lambda sample (re,im)"))
                .arg(value_arg_default("lambda-steps", "1", "number of lambda samples"))
                .arg(value_arg_default("jet", "closed-form", "jet source: closed-form or zero"))
                .arg(value_arg("beta", "closed-form amplitude override (re,im)"))
                .arg(value_arg_default("c", "0,0", "inhomogeneous constant (re,im)"))
                .arg(value_arg_default("hbar", "1", "deformation parameter"))
                .arg(value_arg_default("guard", "1e-6", "minimum pole-denominator magnitude")),
        ))
        .subcommand(common_args(
            Command::new("pii-integrate")
                .about("Integrate the second-order field equation along a ray in the complex plane")
                .arg(value_arg_default("z0", "0,0", "ray start (re,im)"))
                .arg(value_arg_default("dir", "1,0", "ray direction (re,im), normalized internally"))
                .arg(value_arg_default("len", "1", "ray length"))
                .arg(value_arg("steps", "fixed step count (mutually exclusive with --tol)"))
                .arg(value_arg("tol", "adaptive error tolerance (mutually exclusive with --steps)"))
                .arg(value_arg_default("c", "0,0", "inhomogeneous constant (re,im)"))
                .arg(value_arg_default("hbar", "1", "deformation parameter"))
                .arg(value_arg_default("f0", "0.1,0", "initial field value (re,im)"))
                .arg(value_arg_default("fp0", "0,0", "initial field derivative (re,im)")),
        ))
        .subcommand(common_args(
            Command::new("riccati-verify")
                .about("Check the exponential closed-form solution against its first-order relation at random points")
                .arg(value_arg("lambda", "spectral parameter (re,im), required").required(true))
                .arg(value_arg_default("samples", "200", "number of random sample points"))
                .arg(value_arg_default("guard", "0.1", "minimum pole-denominator magnitude for accepted samples"))
                .arg(value_arg("beta", "amplitude override (re,im); defaults to the matched value")),
        ))
        .subcommand(common_args(
            Command::new("schrodinger-evolve")
                .about("Drive the non-stationary Schrödinger reduction: ansatz residual check or Crank-Nicolson propagation")
                .arg(value_arg_default("lambda", "1,0", "spectral parameter for the closed-form field (re,im)"))
                .arg(value_arg_default("alpha-sign", "plus", "phase frequency sign: plus or minus"))
                .arg(value_arg_default("xmin", "0.1", "left edge of the spatial window"))
                .arg(value_arg_default("xmax", "0.65", "right edge of the spatial window"))
                .arg(value_arg_default("nx", "2001", "number of spatial grid points"))
                .arg(value_arg_default("dt", "1e-4", "time step"))
                .arg(value_arg_default("steps", "500", "number of time steps (propagate mode)"))
                .arg(value_arg_default("mode", "propagate", "ansatz-check or propagate"))
                .arg(value_arg_default("f-source", "closed-form", "field source: closed-form or trajectory"))
                .arg(value_arg_default("f0", "0.2,0", "trajectory initial field value (re,im)"))
                .arg(value_arg_default("fp0", "0,0", "trajectory initial derivative (re,im)"))
                .arg(value_arg("beta", "closed-form amplitude override (re,im)"))
                .arg(value_arg_default("guard", "1e-6", "minimum pole-denominator magnitude")),
        ))
        .subcommand(common_args(
            Command::new("yukawa-error")
                .about("Tabulate a screened-Coulomb potential against its exponential approximation")
                .arg(value_arg("V0", "potential strength (mutually exclusive with --Z)"))
                .arg(value_arg("Z", "nuclear charge; strength becomes Z/137.037"))
                .arg(value_arg("a", "screening parameter (mutually exclusive with --lambda)"))
                .arg(value_arg("lambda", "spectral parameter; screening becomes 4*lambda"))
                .arg(value_arg_default("rmin", "0.01", "smallest radius"))
                .arg(value_arg_default("rmax", "10", "largest radius"))
                .arg(value_arg_default("n", "200", "number of radii"))
                .arg(
                    Arg::new("log-grid")
                        .long("log-grid")
                        .help("space radii geometrically instead of linearly")
                        .action(ArgAction::SetTrue),
                )
                .arg(
                    Arg::new("gnuplot")
                        .long("gnuplot")
                        .help("also emit a gnuplot script for the error table")
                        .action(ArgAction::SetTrue),
                ),
        ))
        .subcommand(common_args(
            Command::new("bound-states")
                .about("Solve radial bound states for screened-Coulomb potentials, optionally comparing two models")
                .arg(value_arg("potential", "yukawa, hulthen-approx, hulthen-consistent, or coulomb").required(true))
                .arg(value_arg("V0", "potential strength (mutually exclusive with --Z)"))
                .arg(value_arg("Z", "nuclear charge; strength becomes Z/137.037"))
                .arg(value_arg("a", "screening parameter (mutually exclusive with --lambda)"))
                .arg(value_arg("lambda", "spectral parameter; screening becomes 4*lambda"))
                .arg(value_arg("v0-eff", "override the well depth of the exponential models"))
                .arg(value_arg_default("l", "0", "orbital angular momentum"))
                .arg(value_arg_default("levels", "1", "number of radial levels"))
                .arg(value_arg_default("centrifugal", "exact", "centrifugal term: exact or greene-aldrich"))
                .arg(value_arg_default("rmax", "100", "domain radius"))
                .arg(value_arg_default("n", "20000", "radial grid intervals"))
                .arg(value_arg_default("method", "fd-matrix", "solver: fd-matrix or numerov"))
                .arg(value_arg("compare", "second potential model to compare against")),
        ))
        .subcommand(common_args(
            Command::new("gnuplot")
                .about("Emit a gnuplot script for a CSV produced by this tool")
                .arg(value_arg("csv", "path to the CSV file").required(true))
                .arg(value_arg("kind", "plot style: potential, error, residual (default: sniffed from the header)")),
        ))
}

/// Argument ids a subcommand defines, used to validate config-file keys.
fn valid_keys(subcommand: &str) -> BTreeSet<String> {
    build_cli()
        .find_subcommand(subcommand)
        .map(|sc| {
            sc.get_arguments()
                .map(|a| a.get_id().to_string())
                .filter(|id| id != "help" && id != "version")
                .collect()
        })
        .unwrap_or_default()
}

pub struct Common {
    pub out: PathBuf,
    pub seed: u64,
    pub format: emit::FormatSel,
}

fn run(name: &str, matches: &clap::ArgMatches) -> Result<(), RunError> {
    let keys = valid_keys(name);
    let r = Resolver::new(matches, &keys)?;
    let common = Common {
        out: PathBuf::from(r.string("out")?),
        seed: r.u64("seed")?,
        format: emit::FormatSel::parse(&r.string("format")?)?,
    };
    match name {
        "lax-residual" => cmds::lax::run(&r, &common),
        "pii-integrate" => cmds::pii::run(&r, &common),
        "riccati-verify" => cmds::riccati::run(&r, &common),
        "schrodinger-evolve" => cmds::schrodinger::run(&r, &common),
        "yukawa-error" => cmds::yukawa::run(&r, &common),
        "bound-states" => cmds::bound::run(&r, &common),
        "gnuplot" => cmds::plot::run(&r, &common),
        _ => unreachable!("subcommand_required guarantees a known name"),
    }?;
    emit::write_manifest(&common.out, name, &r.manifest_config(), common.seed)
}

fn main() {
    let matches = match build_cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            // clap's own exit codes: 0 for --help/--version, 2 for usage errors.
            e.exit();
        }
    };
    let (name, sub) = matches
        .subcommand()
        .expect("subcommand_required guarantees a subcommand");
    if let Err(e) = run(name, sub) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code() as i32);
    }
}
