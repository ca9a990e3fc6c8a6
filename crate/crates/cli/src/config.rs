//! Run configuration: optional TOML file, overridden field by field by
//! command-line flags, resolved against defaults. The exponents r and t
//! accept the literal `inf`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde::Deserialize;

use lfbesov::besov::BesovParams;
use lfbesov::field::FieldParams;

use crate::error::{io_err, CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ExpValue {
    Num(f64),
    Word(String),
}

impl ExpValue {
    fn to_f64(&self) -> CliResult<f64> {
        match self {
            ExpValue::Num(v) => Ok(*v),
            ExpValue::Word(w) => parse_exponent(w),
        }
    }
}

pub fn parse_exponent(text: &str) -> CliResult<f64> {
    if text.eq_ignore_ascii_case("inf") || text.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    text.parse::<f64>()
        .map_err(|_| CliError::Config(format!("`{text}` is not a number or `inf`")))
}

/// The TOML file schema; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<u64>,
    pub c: Option<u32>,
    pub s: Option<f64>,
    pub r: Option<ExpValue>,
    pub t: Option<ExpValue>,
    pub kmax: Option<i32>,
    pub jmax: Option<i32>,
    pub i_level: Option<i32>,
    pub seed: Option<u64>,
    pub num_terms: Option<usize>,
    pub max_level: Option<i32>,
    pub centers: Option<usize>,
    pub function: Option<String>,
    pub builtin: Option<String>,
    pub out: Option<String>,
    pub plot: Option<String>,
}

pub fn read_file_config(path: &std::path::Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Field characteristic (a prime)
    #[arg(long)]
    pub p: Option<u64>,
    /// Field extension degree, q = p^c
    #[arg(long)]
    pub c: Option<u32>,
    /// Smoothness index s
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Inner exponent r (number or `inf`)
    #[arg(long)]
    pub r: Option<String>,
    /// Outer exponent t (number or `inf`)
    #[arg(long)]
    pub t: Option<String>,
    /// Largest dilation step for dilate-scan
    #[arg(long)]
    pub kmax: Option<i32>,
    /// Largest dilation step for localize-scan
    #[arg(long)]
    pub jmax: Option<i32>,
    /// Coset level of the localization centers
    #[arg(long = "i-level", allow_hyphen_values = true)]
    pub i_level: Option<i32>,
    /// Seed for the random function source
    #[arg(long)]
    pub seed: Option<u64>,
    /// Term count for the random function source
    #[arg(long = "num-terms")]
    pub num_terms: Option<usize>,
    /// Level bound for the random function source
    #[arg(long = "max-level")]
    pub max_level: Option<i32>,
    /// Number of localization centers
    #[arg(long)]
    pub centers: Option<usize>,
    /// Read the input function from a function document
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Use a named builtin function: unit-ball or ball@<level>
    #[arg(long)]
    pub builtin: Option<String>,
    /// Write the CSV (or the transformed document) here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG chart of the scan curves
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

/// The function input named by a run.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
    Random {
        seed: u64,
        num_terms: usize,
        max_level: i32,
    },
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub p: u64,
    pub c: u32,
    /// Field flags that were given explicitly, kept so a function document
    /// with its own field header can be checked against them.
    pub p_given: Option<u64>,
    pub c_given: Option<u32>,
    pub s: f64,
    pub r: f64,
    pub t: f64,
    pub kmax: i32,
    pub jmax: i32,
    pub i_level: i32,
    pub centers: Option<usize>,
    pub source: Source,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl Resolved {
    pub fn merge(file: FileConfig, flags: &CommonArgs) -> CliResult<Resolved> {
        let r = match (&flags.r, &file.r) {
            (Some(text), _) => parse_exponent(text)?,
            (None, Some(v)) => v.to_f64()?,
            (None, None) => 2.0,
        };
        let t = match (&flags.t, &file.t) {
            (Some(text), _) => parse_exponent(text)?,
            (None, Some(v)) => v.to_f64()?,
            (None, None) => 2.0,
        };
        let function = flags
            .function
            .clone()
            .or_else(|| file.function.as_ref().map(PathBuf::from));
        let builtin = flags.builtin.clone().or_else(|| file.builtin.clone());
        let seed = flags.seed.or(file.seed);
        let source = if let Some(path) = function {
            Source::File(path)
        } else if let Some(name) = builtin {
            Source::Builtin(name)
        } else if let Some(seed) = seed {
            Source::Random {
                seed,
                num_terms: flags.num_terms.or(file.num_terms).unwrap_or(4),
                max_level: flags.max_level.or(file.max_level).unwrap_or(2),
            }
        } else {
            return Err(CliError::Config(
                "no input: give --function, --builtin, or --seed for a random function".into(),
            ));
        };
        let p_given = flags.p.or(file.p);
        let c_given = flags.c.or(file.c);
        Ok(Resolved {
            p: p_given.unwrap_or(2),
            c: c_given.unwrap_or(1),
            p_given,
            c_given,
            s: flags.s.or(file.s).unwrap_or(1.0),
            r,
            t,
            kmax: flags.kmax.or(file.kmax).unwrap_or(8),
            jmax: flags.jmax.or(file.jmax).unwrap_or(6),
            i_level: flags.i_level.or(file.i_level).unwrap_or(0),
            centers: flags.centers.or(file.centers),
            source,
            out: flags.out.clone().or_else(|| file.out.as_ref().map(PathBuf::from)),
            plot: flags.plot.clone().or_else(|| file.plot.as_ref().map(PathBuf::from)),
        })
    }

    pub fn field_params(&self) -> CliResult<Arc<FieldParams>> {
        Ok(FieldParams::new_shared(self.p, self.c)?)
    }

    pub fn besov_params(&self) -> CliResult<BesovParams> {
        Ok(BesovParams::new(self.s, self.r, self.t)?)
    }

    /// One-line echo of the resolved numeric configuration.
    pub fn echo(&self) -> String {
        let src = match &self.source {
            Source::File(p) => format!("file:{}", p.display()),
            Source::Builtin(n) => format!("builtin:{n}"),
            Source::Random {
                seed,
                num_terms,
                max_level,
            } => format!("random:seed={seed},terms={num_terms},level={max_level}"),
        };
        format!(
            "p={} c={} s={} r={} t={} kmax={} jmax={} i_level={} source={}",
            self.p, self.c, self.s, self.r, self.t, self.kmax, self.jmax, self.i_level, src
        )
    }
}
