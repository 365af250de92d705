//! Run configuration: command-line flags over an optional `key=value` file
//! over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pegs_core::solver::SolveOptions;
use pegs_core::testmaps::TestMapKind;
use pegs_core::verify::DEFAULT_SEED;
use serde::Serialize;

/// Keys accepted in a `--config` file.
pub const KEYS: &[&str] =
    &["curve", "kind", "grid", "tol", "stratum-threshold", "fd-step", "seed", "out", "svg", "threads"];

/// Flat `key = value` file; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), i + 1);
        };
        let k = k.trim();
        if !KEYS.contains(&k) {
            bail!("{}:{}: unknown key {k:?}", path.display(), i + 1);
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Values from the command line; `None` means not given.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub curve: Option<String>,
    pub kind: Option<TestMapKind>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub stratum_threshold: Option<f64>,
    pub fd_step: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Everything a run depends on, echoed into its JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub curve: Option<String>,
    pub kind: Option<TestMapKind>,
    pub grid: usize,
    pub tol: f64,
    pub stratum_threshold: f64,
    pub fd_step: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn pick<T: std::str::FromStr>(cli: Option<T>, file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    if cli.is_some() {
        return Ok(cli);
    }
    match file.get(key) {
        Some(v) => v.parse().map(Some).map_err(|e| anyhow::anyhow!("config key {key}: {e}")),
        None => Ok(None),
    }
}

impl RunConfig {
    pub fn resolve(subcommand: &str, cli: Overrides, file: &BTreeMap<String, String>) -> Result<Self> {
        let d = SolveOptions::default();
        Ok(RunConfig {
            subcommand: subcommand.to_string(),
            curve: pick(cli.curve, file, "curve")?,
            kind: pick(cli.kind, file, "kind")?,
            grid: pick(cli.grid, file, "grid")?.unwrap_or(d.grid),
            tol: pick(cli.tol, file, "tol")?.unwrap_or(d.tol),
            stratum_threshold: pick(cli.stratum_threshold, file, "stratum-threshold")?.unwrap_or(d.stratum_threshold),
            fd_step: pick(cli.fd_step, file, "fd-step")?.unwrap_or(d.fd_step),
            seed: pick(cli.seed, file, "seed")?.unwrap_or(DEFAULT_SEED),
            out: pick(cli.out, file, "out")?,
            svg: pick(cli.svg, file, "svg")?,
            threads: pick(cli.threads, file, "threads")?,
        })
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            grid: self.grid,
            tol: self.tol,
            stratum_threshold: self.stratum_threshold,
            fd_step: self.fd_step,
            ..SolveOptions::default()
        }
    }
}
