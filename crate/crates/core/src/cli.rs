//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on usage errors, 3 when the
//! trace routes disagree. Failures are also reported as one JSON object on
//! stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotics::{build_asymp_table, divisor_trace, ColoredDivisor, TraceMethod};
use crate::cartan::{
    build_root_system, project_to_quotient, Coweight, ParabolicType, RootSystem, RootSystemSpec,
};
use crate::error::Error;
use crate::kostant::enumerate_partitions;
use crate::strata::{
    defect_poset, enumerate_local_strata, enumerate_parabolic_strata, LocalStratumRepr,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IDENTITY: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Kostant,
    Series,
    Oracle,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrataKind {
    /// Coordinate strata of the adjoint torus closure, one per Levi subset.
    Parabolic,
    /// Local-model triples (theta1, mu, theta2) over --theta.
    Local,
    /// Defect poset up to --height.
    Poset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized trace table for all positive coweights up to --height.
    Table,
    /// Normalized trace at a single coweight --theta.
    Trace,
    /// Stratification index sets.
    Strata {
        #[arg(value_enum)]
        kind: StrataKind,
    },
    /// Factorized trace at a colored divisor --divisor.
    Divisor,
    /// Root system summary: Cartan matrix and positive coroots.
    Roots,
    /// Kostant partitions of --theta.
    Partitions,
}

#[derive(Debug, Parser)]
#[command(name = "asymp", version, about = "Exact Frobenius-trace tables and stratification combinatorics for reductive root data")]
pub struct RunConfig {
    /// Series letter (A-G); requires --rank.
    #[arg(long = "type", global = true, value_name = "LETTER")]
    pub series: Option<char>,

    #[arg(long, global = true)]
    pub rank: Option<usize>,

    /// Config file: `type=A rank=3` or a JSON Cartan matrix.
    #[arg(long, global = true, value_name = "FILE", conflicts_with_all = ["series", "rank"])]
    pub cartan: Option<PathBuf>,

    /// Height bound for tables and posets.
    #[arg(long, global = true, default_value_t = 0)]
    pub height: u32,

    /// Coweight coordinates "n1,n2,...".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Levi vertices "i,j,..." (1-based); empty means the Borel.
    #[arg(long, global = true)]
    pub levi: Option<String>,

    /// Divisor "x:n1,n2;y:...".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub divisor: Option<String>,

    #[arg(long, global = true, value_enum, default_value = "kostant")]
    pub method: Method,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Check every table entry against all three routes (default).
    #[arg(long, global = true, overrides_with = "no_verify")]
    pub verify: bool,

    #[arg(long = "no-verify", global = true)]
    pub no_verify: bool,

    /// Curve genus, recorded with the normalization metadata.
    #[arg(long, global = true)]
    pub genus: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

enum Failure {
    Usage(String),
    Identity(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationMismatch { .. } => Failure::Identity(e),
            Error::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl RunConfig {
    fn root_system(&self) -> Result<RootSystem, Failure> {
        let spec = match (&self.cartan, self.series, self.rank) {
            (Some(path), _, _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                RootSystemSpec::from_config_str(&text)?
            }
            (None, Some(s), Some(r)) => RootSystemSpec::series(s, r),
            _ => {
                return Err(Failure::Usage(
                    "specify a root system with --type and --rank, or --cartan <file>".into(),
                ))
            }
        };
        Ok(build_root_system(&spec)?)
    }

    fn theta(&self, rs: &RootSystem) -> Result<Coweight, Failure> {
        let text = self
            .theta
            .as_deref()
            .ok_or_else(|| Failure::Usage("this command needs --theta".into()))?;
        let coords = parse_list::<i64>(text)
            .map_err(|_| Failure::Usage(format!("bad --theta {text:?}")))?;
        let theta = Coweight::new(coords);
        theta.check_positive(rs.rank())?;
        Ok(theta)
    }

    fn parabolic(&self, rs: &RootSystem) -> Result<ParabolicType, Failure> {
        let Some(text) = self.levi.as_deref() else {
            return Ok(ParabolicType::borel(rs.rank()));
        };
        let vertices = parse_list::<usize>(text)
            .map_err(|_| Failure::Usage(format!("bad --levi {text:?}")))?;
        if vertices.contains(&0) {
            return Err(Failure::Usage("Levi vertices are numbered from 1".into()));
        }
        Ok(ParabolicType::new(
            rs.rank(),
            vertices.into_iter().map(|v| v - 1),
        )?)
    }

    fn verify(&self) -> bool {
        !self.no_verify || self.verify
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, T::Err> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Usage(format!("format {format:?} is not available for {command}"))
}

fn execute(cfg: &RunConfig) -> Result<String, Failure> {
    let rs = cfg.root_system()?;
    match &cfg.command {
        Command::Table => {
            let table = build_asymp_table(&rs, cfg.height, cfg.verify())?.with_genus(cfg.genus);
            match cfg.format.unwrap_or(Format::Json) {
                Format::Json => Ok(table.to_json_string()),
                Format::Csv => Ok(table.to_csv_string()),
                Format::Text => Ok(table.to_text()),
                f => Err(unsupported(f, "table")),
            }
        }
        Command::Trace => {
            let theta = cfg.theta(&rs)?;
            let methods: Vec<TraceMethod> = match cfg.method {
                Method::Kostant => vec![TraceMethod::Kostant],
                Method::Series => vec![TraceMethod::Series],
                Method::Oracle => vec![TraceMethod::Oracle],
                Method::All => TraceMethod::ALL.to_vec(),
            };
            let values = methods
                .iter()
                .map(|m| m.trace(&rs, &theta).map(|v| (*m, v)))
                .collect::<Result<Vec<_>, _>>()?;
            if values.iter().any(|(_, v)| v != &values[0].1) {
                let get = |m: TraceMethod| {
                    values
                        .iter()
                        .find(|(k, _)| *k == m)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                };
                return Err(Failure::Identity(Error::VerificationMismatch {
                    theta: theta.coords().to_vec(),
                    kostant: get(TraceMethod::Kostant),
                    series: get(TraceMethod::Series),
                    oracle: get(TraceMethod::Oracle),
                }));
            }
            match cfg.format.unwrap_or(Format::Text) {
                Format::Text if values.len() == 1 => Ok(format!("{}\n", values[0].1)),
                Format::Text => Ok(values
                    .iter()
                    .map(|(m, v)| format!("{}: {v}\n", m.name()))
                    .collect()),
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("theta".into(), json!(theta));
                    for (m, v) in &values {
                        obj.insert(m.name().into(), json!(v));
                    }
                    Ok(pretty(&serde_json::Value::Object(obj)))
                }
                f => Err(unsupported(f, "trace")),
            }
        }
        Command::Strata { kind } => strata(cfg, &rs, *kind),
        Command::Divisor => {
            let text = cfg
                .divisor
                .as_deref()
                .ok_or_else(|| Failure::Usage("this command needs --divisor".into()))?;
            let d = ColoredDivisor::parse(rs.rank(), text)?;
            let value = divisor_trace(&rs, &d)?;
            match cfg.format.unwrap_or(Format::Text) {
                Format::Text => Ok(format!("{value}\n")),
                Format::Json => Ok(pretty(&json!({
                    "divisor": d.to_string(),
                    "total_weight": d.total_weight(),
                    "trace": value,
                }))),
                f => Err(unsupported(f, "divisor")),
            }
        }
        Command::Roots => match cfg.format.unwrap_or(Format::Json) {
            Format::Json => Ok(pretty(&json!(rs.summary()))),
            Format::Text => Ok(rs
                .positive_coroots()
                .iter()
                .map(|c| format!("{c}\t{}\n", c.height()))
                .collect()),
            f => Err(unsupported(f, "roots")),
        },
        Command::Partitions => {
            let theta = cfg.theta(&rs)?;
            let parts = enumerate_partitions(&rs, &theta)?;
            match cfg.format.unwrap_or(Format::Json) {
                Format::Json => Ok(pretty(&json!({
                    "theta": theta,
                    "partitions": parts.iter().map(|k| k.to_json(&rs)).collect::<Vec<_>>(),
                }))),
                Format::Text => Ok(parts
                    .iter()
                    .map(|k| {
                        let terms: Vec<String> = k
                            .to_pairs(&rs)
                            .into_iter()
                            .map(|(c, n)| format!("{n}*{}", Coweight::new(c)))
                            .collect();
                        format!("{}\n", terms.join(" + "))
                    })
                    .collect()),
                f => Err(unsupported(f, "partitions")),
            }
        }
    }
}

fn strata(cfg: &RunConfig, rs: &RootSystem, kind: StrataKind) -> Result<String, Failure> {
    match kind {
        StrataKind::Parabolic => {
            let strata = enumerate_parabolic_strata(rs);
            match cfg.format.unwrap_or(Format::Json) {
                Format::Json => Ok(pretty(&json!(strata
                    .iter()
                    .map(|s| s.repr())
                    .collect::<Vec<_>>()))),
                Format::Text => Ok(strata
                    .iter()
                    .map(|s| {
                        let r = s.repr();
                        format!("{:?}\t{:?}\n", r.levi, r.point)
                    })
                    .collect()),
                f => Err(unsupported(f, "parabolic strata")),
            }
        }
        StrataKind::Local => {
            let p = cfg.parabolic(rs)?;
            let theta = project_to_quotient(rs, &p, &cfg.theta(rs)?)?;
            let strata = enumerate_local_strata(rs, &p, &theta)?;
            let reprs: Vec<LocalStratumRepr> = strata.iter().map(|s| s.repr()).collect();
            match cfg.format.unwrap_or(Format::Json) {
                Format::Json => Ok(pretty(&json!(reprs))),
                Format::Text => Ok(reprs
                    .iter()
                    .map(|r| format!("{:?}\t{:?}\t{:?}\n", r.theta1, r.mu, r.theta2))
                    .collect()),
                f => Err(unsupported(f, "local strata")),
            }
        }
        StrataKind::Poset => {
            let p = cfg.parabolic(rs)?;
            let poset = defect_poset(rs, &p, cfg.height);
            match cfg.format.unwrap_or(Format::Dot) {
                Format::Dot => Ok(poset.to_dot()),
                Format::Json => Ok(pretty(&json!({
                    "elements": poset.elements.iter().map(|e| e.coords().to_vec()).collect::<Vec<_>>(),
                    "covers": poset.covers,
                }))),
                f => Err(unsupported(f, "poset")),
            }
        }
    }
}

fn report(failure: &Failure) -> (i32, serde_json::Value) {
    match failure {
        Failure::Usage(msg) => (EXIT_USAGE, json!({"error": "usage", "message": msg})),
        Failure::Io(msg) => (EXIT_IO, json!({"error": "io", "message": msg})),
        Failure::Identity(Error::VerificationMismatch {
            theta,
            kostant,
            series,
            oracle,
        }) => (
            EXIT_IDENTITY,
            json!({
                "error": "identity_failure",
                "theta": theta,
                "kostant": kostant,
                "series": series,
                "oracle": oracle,
            }),
        ),
        Failure::Identity(other) => (
            EXIT_IDENTITY,
            json!({"error": "identity_failure", "message": other.to_string()}),
        ),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let outcome = execute(&cfg).and_then(|text| match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let (code, body) = report(&failure);
            let _ = writeln!(stderr, "{body}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["asymp"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn trace_methods() {
        let (code, out, _) = call(&["--type", "A", "--rank", "1", "--theta", "2", "--method", "all", "trace"]);
        assert_eq!(code, 0);
        assert_eq!(out, "kostant: 1 - q\nseries: 1 - q\noracle: 1 - q\n");
        let (code, out, _) = call(&["--type", "A", "--rank", "2", "--theta", "0,0", "trace"]);
        assert_eq!((code, out.as_str()), (0, "1\n"));
        let (code, out, _) = call(&["trace", "--type", "A", "--rank", "2", "--theta", "1,1"]);
        assert_eq!((code, out.as_str()), (0, "1 - q\n"));
    }

    #[test]
    fn usage_errors() {
        for args in [
            vec!["--type", "A", "--rank", "2", "--theta", "1,-1", "trace"],
            vec!["--type", "A", "--rank", "2", "--theta", "1", "trace"],
            vec!["--type", "A", "--rank", "2", "trace"],
            vec!["--type", "E", "--rank", "3", "table"],
            vec!["--rank", "3", "table"],
            vec!["--type", "A", "--rank", "1", "--divisor", "x:1;x:1", "divisor"],
            vec!["--type", "A", "--rank", "1", "--format", "dot", "table"],
            vec!["--type", "A", "--rank", "1", "frobnicate"],
            vec!["--type", "A", "--rank", "2", "--levi", "0", "--height", "1", "strata", "poset"],
        ] {
            let (code, out, err) = call(&args);
            assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
            assert!(out.is_empty());
            assert!(!err.is_empty());
        }
        let (_, _, err) = call(&["--type", "A", "--rank", "2", "--theta", "1,-1", "trace"]);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "usage");
    }

    #[test]
    fn identity_failure_report() {
        let failure = Failure::Identity(Error::VerificationMismatch {
            theta: vec![1, 2],
            kostant: crate::qlaurent::LaurentPoly::one(),
            series: crate::qlaurent::LaurentPoly::one(),
            oracle: crate::qlaurent::LaurentPoly::zero(),
        });
        let (code, body) = report(&failure);
        assert_eq!(code, EXIT_IDENTITY);
        assert_eq!(body["theta"], json!([1, 2]));
        assert_eq!(body["oracle"], json!([]));
    }

    #[test]
    fn verify_flag_defaults_on() {
        let parse = |args: &[&str]| {
            let mut full = vec!["asymp"];
            full.extend_from_slice(args);
            RunConfig::try_parse_from(full).unwrap().verify()
        };
        assert!(parse(&["table"]));
        assert!(parse(&["table", "--verify"]));
        assert!(!parse(&["table", "--no-verify"]));
    }
}
