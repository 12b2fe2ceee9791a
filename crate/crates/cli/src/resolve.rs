//! Flag/config resolution.
//!
//! Every subcommand accepts `--config FILE` with `key = value` lines (a
//! TOML-compatible subset: full-line `#` comments, optional double quotes
//! around values). Config values fill in for flags that were not given on
//! the command line; explicit flags always win. Unknown config keys are
//! rejected.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use clap::parser::{ArgMatches, ValueSource};
use qpii_core::C64;

/// Failure classes mapped to process exit codes: validation errors exit 2,
/// numerical failures exit 3.
#[derive(Debug)]
pub enum RunError {
    Validation(String),
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Validation(m) | RunError::Numerical(m) => m,
        }
    }
}

pub fn validation(msg: impl Into<String>) -> RunError {
    RunError::Validation(msg.into())
}

pub fn numerical(msg: impl Into<String>) -> RunError {
    RunError::Numerical(msg.into())
}

/// Parse a `key = value` config file into a map.
fn parse_config(text: &str, path: &str) -> Result<BTreeMap<String, String>, RunError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(validation(format!(
                "{path}:{}: expected `key = value`, got `{line}`",
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        let mut value = value.trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        if key.is_empty() {
            return Err(validation(format!("{path}:{}: empty key", lineno + 1)));
        }
        if map.insert(key.clone(), value.to_string()).is_some() {
            return Err(validation(format!(
                "{path}:{}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(map)
}

/// Resolves parameter values with the precedence
/// command line > config file > built-in default, recording every resolved
/// value so the manifest can echo the full effective configuration.
pub struct Resolver<'a> {
    matches: &'a ArgMatches,
    config: BTreeMap<String, String>,
    seen: RefCell<BTreeMap<String, String>>,
}

impl<'a> Resolver<'a> {
    /// `valid_keys` is the set of argument ids the subcommand defines; any
    /// config key outside it is rejected.
    pub fn new(matches: &'a ArgMatches, valid_keys: &BTreeSet<String>) -> Result<Self, RunError> {
        let mut config = BTreeMap::new();
        if let Some(path) = matches.get_one::<String>("config") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| validation(format!("cannot read config file {path}: {e}")))?;
            config = parse_config(&text, path)?;
            for key in config.keys() {
                if key == "config" || !valid_keys.contains(key) {
                    return Err(validation(format!(
                        "unknown config key `{key}` in {path}"
                    )));
                }
            }
        }
        Ok(Resolver { matches, config, seen: RefCell::new(BTreeMap::new()) })
    }

    fn record(&self, key: &str, value: &str) {
        self.seen.borrow_mut().insert(key.to_string(), value.to_string());
    }

    fn from_cli(&self, key: &str) -> Option<String> {
        match self.matches.value_source(key) {
            Some(ValueSource::CommandLine) => {
                self.matches.get_one::<String>(key).cloned()
            }
            _ => None,
        }
    }

    /// Raw resolved string (command line > config > clap default), if any.
    pub fn raw(&self, key: &str) -> Option<String> {
        let v = self
            .from_cli(key)
            .or_else(|| self.config.get(key).cloned())
            .or_else(|| self.matches.get_one::<String>(key).cloned());
        if let Some(ref v) = v {
            self.record(key, v);
        }
        v
    }

    pub fn string(&self, key: &str) -> Result<String, RunError> {
        self.raw(key)
            .ok_or_else(|| validation(format!("missing required value for --{key}")))
    }

    /// One of a closed set of keywords.
    pub fn one_of(&self, key: &str, allowed: &[&str]) -> Result<String, RunError> {
        let v = self.string(key)?;
        if allowed.contains(&v.as_str()) {
            Ok(v)
        } else {
            Err(validation(format!(
                "--{key} must be one of {} (got `{v}`)",
                allowed.join(", ")
            )))
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64, RunError> {
        parse_f64(&self.string(key)?, key)
    }

    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>, RunError> {
        self.raw(key).map(|v| parse_f64(&v, key)).transpose()
    }

    pub fn u64(&self, key: &str) -> Result<u64, RunError> {
        let v = self.string(key)?;
        v.parse::<u64>()
            .map_err(|_| validation(format!("--{key} expects a non-negative integer, got `{v}`")))
    }

    pub fn usize(&self, key: &str) -> Result<usize, RunError> {
        let v = self.string(key)?;
        v.parse::<usize>()
            .map_err(|_| validation(format!("--{key} expects a non-negative integer, got `{v}`")))
    }

    pub fn u32(&self, key: &str) -> Result<u32, RunError> {
        let v = self.string(key)?;
        v.parse::<u32>()
            .map_err(|_| validation(format!("--{key} expects a non-negative integer, got `{v}`")))
    }

    pub fn c64(&self, key: &str) -> Result<C64, RunError> {
        parse_c64(&self.string(key)?, key)
    }

    pub fn opt_c64(&self, key: &str) -> Result<Option<C64>, RunError> {
        self.raw(key).map(|v| parse_c64(&v, key)).transpose()
    }

    /// Boolean switch. On the command line it is a bare flag; in a config
    /// file it takes `true`/`false`.
    pub fn flag(&self, key: &str) -> Result<bool, RunError> {
        let v = match self.matches.value_source(key) {
            Some(ValueSource::CommandLine) => self.matches.get_flag(key),
            _ => match self.config.get(key) {
                Some(s) => match s.as_str() {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    other => {
                        return Err(validation(format!(
                            "config key `{key}` expects true or false, got `{other}`"
                        )))
                    }
                },
                None => false,
            },
        };
        self.record(key, if v { "true" } else { "false" });
        Ok(v)
    }

    /// Exactly one of two mutually exclusive keys must resolve; command-line
    /// presence beats config presence, and two values from the same source
    /// conflict.
    pub fn exclusive(&self, a: &str, b: &str) -> Result<(String, String), RunError> {
        let pick = |key: &str, v: String| {
            self.record(key, &v);
            Ok((key.to_string(), v))
        };
        match (self.from_cli(a), self.from_cli(b)) {
            (Some(_), Some(_)) => Err(validation(format!(
                "--{a} and --{b} are mutually exclusive"
            ))),
            (Some(v), None) => pick(a, v),
            (None, Some(v)) => pick(b, v),
            (None, None) => match (self.config.get(a).cloned(), self.config.get(b).cloned()) {
                (Some(_), Some(_)) => Err(validation(format!(
                    "config file sets both `{a}` and `{b}`, which are mutually exclusive"
                ))),
                (Some(v), None) => pick(a, v),
                (None, Some(v)) => pick(b, v),
                (None, None) => Err(validation(format!("one of --{a} or --{b} is required"))),
            },
        }
    }

    /// Like [`exclusive`](Self::exclusive) but both sides optional.
    pub fn exclusive_opt(&self, a: &str, b: &str) -> Result<Option<(String, String)>, RunError> {
        match self.exclusive(a, b) {
            Ok(pair) => Ok(Some(pair)),
            Err(RunError::Validation(msg)) if msg.contains("is required") => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Snapshot of every resolved key → value, for the manifest.
    pub fn manifest_config(&self) -> BTreeMap<String, String> {
        self.seen.borrow().clone()
    }
}

pub fn parse_f64(v: &str, key: &str) -> Result<f64, RunError> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| validation(format!("--{key} expects a number, got `{v}`")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(validation(format!("--{key} must be finite, got `{v}`")))
    }
}

/// Complex values are written `re,im`; a bare `re` means imaginary part 0.
pub fn parse_c64(v: &str, key: &str) -> Result<C64, RunError> {
    let parts: Vec<&str> = v.split(',').collect();
    let err = || {
        validation(format!(
            "--{key} expects a complex value as `re,im` (or a bare real), got `{v}`"
        ))
    };
    match parts.as_slice() {
        [re] => {
            let re: f64 = re.trim().parse().map_err(|_| err())?;
            if !re.is_finite() {
                return Err(err());
            }
            Ok(C64::new(re, 0.0))
        }
        [re, im] => {
            let re: f64 = re.trim().parse().map_err(|_| err())?;
            let im: f64 = im.trim().parse().map_err(|_| err())?;
            if !re.is_finite() || !im.is_finite() {
                return Err(err());
            }
            Ok(C64::new(re, im))
        }
        _ => Err(err()),
    }
}
