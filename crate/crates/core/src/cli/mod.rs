//! The `bkp` command-line interface.
//!
//! [`run`] parses arguments, executes one subcommand and returns what should be
//! written to stdout and stderr together with the process exit code
//! (0 success or pass, 1 verification failure, 2 usage or precondition error).

mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

pub use config::{FileConfig, Format, RunConfig};

use crate::affine::{phi_basis, AffineCoordinates, CoordTable, SpinHurwitz};
use crate::hirota::{hirota_check, wave::wave_suite};
use crate::kacschwarz::verify_theorem;
use crate::npoint::{
    connected_npoint, extractable, hurwitz_connected, hurwitz_single, hurwitz_table, Variant,
};
use crate::partitions::{strict_partitions_up_to, OddPartition, StrictPartition};
use crate::report::{Failure, Report};
use crate::ring::{LaurentZ, Scalar};
use crate::schurq::{q_strict, specialize_delta, specialize_principal, TPoly};
use crate::tau::{fermion::default_order, oracle_coeff, tau_coeff, tau_expand};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "bkp",
    version,
    about = "Exact BKP tau-functions, spin Hurwitz numbers and their identities"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct Opts {
    /// Completed-cycle parameter (even, at least 2)
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long = "beta-order", global = true)]
    pub beta_order: Option<u32>,
    /// Laurent truncation depth I
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    /// Weight cutoff W
    #[arg(long, visible_alias = "max-weight", global = true)]
    pub weight: Option<u32>,
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Strict partition, e.g. 3,1
    #[arg(long, global = true)]
    pub mu: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with any of the keys above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Opts {
    fn as_layer(&self) -> FileConfig {
        FileConfig {
            r: self.r,
            beta_order: self.beta_order,
            depth: self.depth,
            weight: self.weight,
            kmax: self.kmax,
            mu: self.mu.clone(),
            format: self.format,
            threads: self.threads,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        RunConfig::resolve(&[&file, &self.as_layer()])
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Connected spin Hurwitz numbers for all odd μ with |μ| ≤ W
    Hurwitz,
    /// Run a verification suite and print its JSON report
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Serialize an intermediate object
    Dump {
        #[command(subcommand)]
        what: DumpWhat,
    },
    /// Q_μ(t/2) with its δ and principal specializations
    Schurq,
    /// Table of affine coordinates a_{n,m}, 0 ≤ n,m ≤ nmax
    Affine {
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum Suite {
    Ks,
    Hirota,
    Wave,
    TauOracle,
    NpointConsistency,
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum DumpWhat {
    Affine {
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
    Schurq,
    Tau,
    Phi {
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
}

/// Everything a process invocation produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn usage(msg: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: msg,
            code: 2,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let cfg = match cli.opts.resolve() {
        Ok(c) => c,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    match pool.install(|| execute(&cli.command, &cfg)) {
        Ok(o) => o,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let text = match *cmd {
        Command::Hurwitz => cmd_hurwitz(cfg)?,
        Command::Verify { suite } => {
            let report = cmd_verify(cfg, suite)?;
            let code = if report.passed() { 0 } else { 1 };
            return Ok(Outcome {
                stdout: report.to_json() + "\n",
                stderr: String::new(),
                code,
            });
        }
        Command::Dump { what } => cmd_dump(cfg, what)?,
        Command::Schurq => cmd_schurq(cfg)?,
        Command::Affine { nmax } => cmd_dump(cfg, DumpWhat::Affine { nmax })?,
    };
    Ok(Outcome::ok(text))
}

fn provider(cfg: &RunConfig) -> Result<SpinHurwitz> {
    SpinHurwitz::new(cfg.r, cfg.beta_order)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// One CSV row per `p^i β^j` term, each prefixed with `key`.
fn scalar_rows(key: &[String], s: &Scalar) -> Vec<Vec<String>> {
    s.terms()
        .map(|(&(p, b), c)| {
            let mut row = key.to_vec();
            row.extend([
                p.to_string(),
                b.to_string(),
                format!("{}/{}", c.numer(), c.denom()),
            ]);
            row
        })
        .collect()
}

fn require_mu(cfg: &RunConfig) -> Result<&StrictPartition> {
    cfg.mu
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("--mu is required".into()))
}

pub fn cmd_hurwitz(cfg: &RunConfig) -> Result<String> {
    let rows = hurwitz_table(cfg.r, cfg.beta_order, cfg.weight)?;
    match cfg.format {
        Format::Json => to_json(&json!({
            "r": cfg.r,
            "beta_order": cfg.beta_order,
            "max_weight": cfg.weight,
            "rows": rows,
        })),
        Format::Csv => csv_table(
            &["mu", "b", "g", "coefficient"],
            rows.into_iter().map(|r| {
                vec![
                    r.mu,
                    r.b.to_string(),
                    r.g.map(|g| g.to_string()).unwrap_or_default(),
                    r.coefficient,
                ]
            }),
        ),
    }
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Report> {
    match suite {
        Suite::Ks => verify_theorem(cfg.r, cfg.beta_order, cfg.kmax, cfg.depth),
        Suite::Hirota => hirota_check(&provider(cfg)?, cfg.weight, cfg.depth),
        Suite::Wave => wave_suite(&provider(cfg)?, cfg.kmax, cfg.depth, cfg.weight),
        Suite::TauOracle => verify_tau_oracle(cfg),
        Suite::NpointConsistency => verify_npoint(cfg),
    }
}

fn verify_tau_oracle(cfg: &RunConfig) -> Result<Report> {
    let a = provider(cfg)?;
    let mus = match &cfg.mu {
        Some(mu) => vec![mu.clone()],
        None => strict_partitions_up_to(cfg.weight),
    };
    let mut report = Report::new("tau-oracle")
        .param("r", cfg.r)
        .param("beta_order", cfg.beta_order)
        .param("max_weight", cfg.weight);
    if let Some(mu) = &cfg.mu {
        report = report.param("mu", mu.to_string());
    }
    for mu in &mus {
        let pf = tau_coeff(&a, mu);
        let wick = oracle_coeff(&a, mu, default_order(mu))?;
        if pf != wick {
            report.fail(Failure {
                check: "pfaffian vs wick".into(),
                location: format!("mu={mu}"),
                left: Some(pf.to_json()),
                right: Some(wick.to_json()),
            });
            break;
        }
    }
    let hi = mus.iter().map(|m| m.weight()).max().unwrap_or(0);
    if report.passed() {
        report.checked("pfaffian vs wick", "|mu|", 0, hi as i64);
    }
    Ok(report)
}

fn verify_npoint(cfg: &RunConfig) -> Result<Report> {
    let a = provider(cfg)?;
    let d = cfg.weight;
    let mut report = Report::new("npoint-consistency")
        .param("r", cfg.r)
        .param("beta_order", cfg.beta_order)
        .param("degree", d);
    for n in 2..=d.min(3) as usize {
        let check = format!("n={n} full vs simplified");
        let full = extractable(&connected_npoint(&a, n, d, Variant::Full)?, d);
        let simp = extractable(&connected_npoint(&a, n, d, Variant::Simplified)?, d);
        let mut keys: Vec<&Vec<i32>> = full.terms().chain(simp.terms()).map(|(e, _)| e).collect();
        keys.sort();
        keys.dedup();
        match keys.into_iter().find(|e| full.coeff(e) != simp.coeff(e)) {
            None => report.checked(check, "total degree", -(d as i64), -(n as i64)),
            Some(e) => {
                let loc = e
                    .iter()
                    .map(|x| format!("z^{x}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                report.fail(Failure {
                    check,
                    location: loc,
                    left: Some(full.coeff(e).to_json()),
                    right: Some(simp.coeff(e).to_json()),
                });
            }
        }
    }
    for n in (1..=d).step_by(2) {
        let mu = OddPartition::new(vec![n])?;
        let single = hurwitz_single(n, cfg.r, cfg.beta_order)?;
        let conn = hurwitz_connected(&a, &mu, n)?;
        if single != conn {
            report.fail(Failure {
                check: "single part vs connected".into(),
                location: format!("mu={n}"),
                left: Some(single.to_json()),
                right: Some(conn.to_json()),
            });
        }
    }
    if d >= 1 {
        report.checked("single part vs connected", "n", 1, d as i64);
    }
    Ok(report)
}

fn tpoly_out(cfg: &RunConfig, poly: &TPoly, extra: Value) -> Result<String> {
    match cfg.format {
        Format::Json => {
            let mut v = extra;
            v["terms"] = serde_json::to_value(poly.to_entries())?;
            to_json(&v)
        }
        Format::Csv => csv_table(
            &["monomial", "weight", "p", "beta", "coefficient"],
            poly.sorted_terms()
                .into_iter()
                .flat_map(|(m, c)| scalar_rows(&[m.to_string(), m.weight().to_string()], c)),
        ),
    }
}

fn laurent_json(s: &LaurentZ) -> Value {
    json!({
        "lo": s.lo(),
        "hi": s.hi(),
        "coefficients": s
            .iter_desc()
            .map(|(d, c)| json!({"degree": d, "coeff": c.to_json()}))
            .collect::<Vec<_>>(),
    })
}

pub fn cmd_dump(cfg: &RunConfig, what: DumpWhat) -> Result<String> {
    let a = provider(cfg)?;
    match what {
        DumpWhat::Affine { nmax } => {
            let table = CoordTable::new(&a, nmax);
            match cfg.format {
                Format::Json => {
                    let rows: Vec<Vec<_>> = table
                        .rows()
                        .iter()
                        .map(|row| row.iter().map(Scalar::to_json).collect())
                        .collect();
                    to_json(&json!({
                        "provider": a.label(),
                        "nmax": nmax,
                        "a": rows,
                    }))
                }
                Format::Csv => {
                    let mut rows = Vec::new();
                    for n in 0..=nmax {
                        for m in 0..=nmax {
                            rows.extend(scalar_rows(
                                &[n.to_string(), m.to_string()],
                                table.get(n, m),
                            ));
                        }
                    }
                    csv_table(&["n", "m", "p", "beta", "coefficient"], rows)
                }
            }
        }
        DumpWhat::Schurq => {
            let mu = require_mu(cfg)?;
            let poly = q_strict(mu, cfg.weight, cfg.beta_order);
            tpoly_out(
                cfg,
                &poly,
                json!({"mu": mu.to_string(), "weight": cfg.weight}),
            )
        }
        DumpWhat::Tau => {
            let tau = tau_expand(&a, cfg.weight);
            tpoly_out(
                cfg,
                &tau,
                json!({"provider": a.label(), "weight": cfg.weight}),
            )
        }
        DumpWhat::Phi { k } => {
            let phi = phi_basis(&a, k, cfg.depth);
            match cfg.format {
                Format::Json => {
                    let mut v = laurent_json(&phi);
                    v["provider"] = a.label().into();
                    v["k"] = k.into();
                    to_json(&v)
                }
                Format::Csv => csv_table(
                    &["degree", "p", "beta", "coefficient"],
                    phi.iter_desc()
                        .flat_map(|(d, c)| scalar_rows(&[d.to_string()], c)),
                ),
            }
        }
    }
}

pub fn cmd_schurq(cfg: &RunConfig) -> Result<String> {
    let mu = require_mu(cfg)?;
    let weight = cfg.weight.max(mu.weight());
    let poly = q_strict(mu, weight, cfg.beta_order);
    let extra = json!({
        "mu": mu.to_string(),
        "weight": weight,
        "delta": specialize_delta(mu, cfg.beta_order).to_json(),
        "principal": laurent_json(&specialize_principal(mu, cfg.depth, cfg.beta_order)),
    });
    tpoly_out(cfg, &poly, extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("bkp").chain(args.iter().copied()))
    }

    #[test]
    fn hurwitz_examples() {
        let out = run_args(&[
            "hurwitz",
            "--weight",
            "1",
            "--beta-order",
            "2",
            "--format",
            "csv",
        ]);
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "mu,b,g,coefficient");
        assert_eq!(lines[1], "1,0,0,1/2");
        assert_eq!(lines[2], "1,1,1,1/6");
        let empty = run_args(&["hurwitz", "--weight", "0", "--format", "csv"]);
        assert_eq!(empty.stdout, "mu,b,g,coefficient\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["verify", "nope"]).code, 2);
        assert_eq!(run_args(&["hurwitz", "--r", "3"]).code, 2);
        let shallow = run_args(&["verify", "ks", "--depth", "2"]);
        assert_eq!(shallow.code, 2);
        assert!(shallow.stderr.contains("insufficient window"));
        assert_eq!(run_args(&["dump", "schurq"]).code, 2);
    }

    #[test]
    fn partition_labels_are_quoted() {
        let out = run_args(&[
            "dump", "schurq", "--mu", "2,1", "--weight", "3", "--format", "csv",
        ]);
        assert_eq!(out.code, 0);
        assert!(out
            .stdout
            .starts_with("monomial,weight,p,beta,coefficient\n"));
        let csv = run_args(&[
            "hurwitz",
            "--weight",
            "3",
            "--beta-order",
            "2",
            "--format",
            "csv",
        ]);
        assert!(csv.stdout.contains("\"1,1,1\""));
    }
}
