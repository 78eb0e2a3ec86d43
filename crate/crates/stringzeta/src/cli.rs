//! Command-line front end.
//!
//! One subcommand per capability:
//!
//! * `zeta` — sum rules Z(s) by the kernel-trace or diagrammatic route,
//!   as a JSON table `{bc, method, orders[], values[], err_est[]}`.
//! * `bounds` — Euler-style brackets `Z(s+1)^{-1/(s+1)} ≤ E₁ ≤ Z(s)/Z(s+1)`.
//! * `estimate` — Waring and tail-subtracted (Berry) ground-state columns
//!   plus the repeated-Shanks table, from computed sum rules or from the
//!   frozen closed-form fixture set (`--fixtures horgan-chan`).
//! * `spectrum` — finite-difference/finite-element oracle eigenvalues with
//!   Richardson error estimates, `{bc, eigenvalues[], err_est[]}`.
//! * `sweep` — bounds/Shanks/oracle columns along a one-parameter family of
//!   densities, as CSV with NaN printed as an empty cell.
//! * `diagrams` — the cyclic-diagram expansion underlying the simplex route
//!   (debugging aid).
//!
//! Exit codes: 0 on success, 2 for usage/domain errors (bad flags, malformed
//! density specs, out-of-range orders), 3 for numerical failures (accuracy
//! targets missed, inconsistent tails, singular systems).  On an accuracy
//! failure the partial results are still emitted as JSON on stderr.
//!
//! A `--config <path>` file in `key=value` format supplies defaults for any
//! long flag of the invoked subcommand (and the globals `threads`, `tol`,
//! `out`); explicit command-line flags win over config values.  Boolean
//! keys only switch features on — they cannot un-set a flag.
//!
//! Output is deterministic: runs with different `--threads` values produce
//! byte-identical output (parallel reductions collect per-item results in
//! input order before summing sequentially), and floats are printed in
//! shortest round-trip form, so re-parsing the JSON reproduces the values
//! bitwise.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::asymptotics::{bc_corrected_coeffs, AsymptoticCoefficients};
use crate::density::DensityProfile;
use crate::diagrams;
use crate::error::{Error, Result};
use crate::extrapolate::{
    berry_sequence, berry_sequence_dd, euler_bounds, shanks_table, shanks_table_dd,
    waring_sequence, BoundPair,
};
use crate::fixtures;
use crate::greens::BoundaryCondition;
use crate::oracle::{solve_spectrum, OracleConfig};
use crate::sumrules::{zeta_diagram_table, zeta_kernel_trace, QuadratureConfig, SumRuleTable};
use crate::dd;

/// Maximum Shanks depth offered by default (each depth consumes two
/// sequence entries).
const DEFAULT_SHANKS_DEPTH: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "stringzeta",
    version,
    about = "Exact spectral sum rules, bounds and estimates for inhomogeneous strings",
    after_help = "Density specs: uniform | borg:alpha=<f> | horgan-chan | oscillating:eps=<f> \
                  | gottlieb:base=<spec>,alpha=<f> | table:path=<csv>\n\
                  Exit codes: 0 ok, 2 usage/domain error, 3 numerical/accuracy error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Size of the worker pool for parallel work (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Absolute accuracy target; outputs whose error estimate exceeds it
    /// fail with exit code 3 (partial results on stderr).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// key=value file supplying defaults for the invoked subcommand's flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sum rules Z(s) from Green's-function traces (no eigenvalues needed).
    Zeta(ZetaArgs),
    /// Euler-style two-sided brackets for the ground state.
    Bounds(BoundsArgs),
    /// Ground-state estimate columns and the repeated-Shanks table.
    Estimate(EstimateArgs),
    /// Oracle spectrum by mesh eigensolve with Richardson error estimates.
    Spectrum(SpectrumArgs),
    /// Bounds/Shanks/oracle columns along a one-parameter density family (CSV).
    Sweep(SweepArgs),
    /// Enumerate the cyclic diagrams of the simplex expansion (debug).
    Diagrams(DiagramsArgs),
}

#[derive(Args, Debug, Default)]
pub struct ZetaArgs {
    /// Density spec (see --help for the grammar).
    #[arg(long)]
    pub density: Option<String>,
    /// Boundary condition: dd, nn, dn, nd or pp.
    #[arg(long)]
    pub bc: Option<String>,
    /// Orders, e.g. "1..4", "2", or "1,3,5" (ranges inclusive).
    #[arg(long)]
    pub orders: Option<String>,
    /// Route: kernel (Nyström trace, any order) or diagram (simplex
    /// quadrature, capped at order 5).
    #[arg(long)]
    pub method: Option<String>,
    /// Gauss-Legendre nodes per simplex dimension (diagram route).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Minimum panels per simplex dimension (diagram route).
    #[arg(long)]
    pub min_panels: Option<usize>,
    /// Three comma-separated Nyström panel counts (kernel route).
    #[arg(long)]
    pub panels: Option<String>,
    /// Report raw regularized-kernel traces for NN/PP instead of spectral
    /// sums (skips the zero-mode projection).
    #[arg(long)]
    pub no_projection: bool,
}

#[derive(Args, Debug, Default)]
pub struct BoundsArgs {
    /// Density spec.
    #[arg(long)]
    pub density: Option<String>,
    /// Boundary condition: dd, nn, dn, nd or pp.
    #[arg(long)]
    pub bc: Option<String>,
    /// Highest sum-rule order to use (pairs (s, s+1) up to this).
    #[arg(long)]
    pub max_order: Option<u32>,
    /// Report raw NN/PP traces instead of spectral sums.
    #[arg(long)]
    pub no_projection: bool,
}

#[derive(Args, Debug, Default)]
pub struct EstimateArgs {
    /// Density spec (mutually exclusive with --fixtures).
    #[arg(long)]
    pub density: Option<String>,
    /// Use a frozen exact sum-rule set instead of quadrature; only
    /// "horgan-chan" is available.
    #[arg(long)]
    pub fixtures: Option<String>,
    /// Boundary condition (fixture set is Dirichlet-Dirichlet).
    #[arg(long)]
    pub bc: Option<String>,
    /// Highest order q of the estimate columns.
    #[arg(long)]
    pub qmax: Option<u32>,
    /// Maximum repeated-Shanks depth.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Carry the Berry column and its Shanks table in double-double
    /// precision (reported as decimal strings).
    #[arg(long)]
    pub dd: bool,
    /// Override the tail-model coefficient α of Eₙ ≈ (nπ/α)² + β.
    #[arg(long, allow_hyphen_values = true)]
    pub tail_alpha: Option<f64>,
    /// Override the tail-model coefficient β.
    #[arg(long, allow_hyphen_values = true)]
    pub tail_beta: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct SpectrumArgs {
    /// Density spec.
    #[arg(long)]
    pub density: Option<String>,
    /// Boundary condition: dd, nn, dn, nd or pp.
    #[arg(long)]
    pub bc: Option<String>,
    /// Number of eigenvalues to report.
    #[arg(long)]
    pub modes: Option<usize>,
    /// Fine-grid interval count (open chains; the periodic mesh uses a
    /// quarter of it).
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// Density spec template containing the literal token {param},
    /// e.g. "borg:alpha={param}".
    #[arg(long)]
    pub density: Option<String>,
    /// Boundary condition: dd, nn, dn, nd or pp.
    #[arg(long)]
    pub bc: Option<String>,
    /// First parameter value.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<f64>,
    /// Last parameter value.
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    /// Number of sweep points (endpoints included).
    #[arg(long)]
    pub points: Option<usize>,
    /// Sum-rule orders for the bound columns, e.g. "3,4"; the bracket uses
    /// the highest adjacent pair, the Shanks column the whole Waring ladder.
    #[arg(long)]
    pub orders: Option<String>,
    /// Space the points geometrically instead of linearly.
    #[arg(long)]
    pub log: bool,
    /// Add an oracle E₁ column from the mesh eigensolver.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle fine-grid interval count.
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct DiagramsArgs {
    /// Diagram order n (the trace power).
    #[arg(long)]
    pub order: Option<usize>,
    /// List at most this many diagrams (the count is always exact).
    #[arg(long)]
    pub limit: Option<usize>,
}

/// Entry point for the binary: parse `std::env::args`, run, translate
/// errors into exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own message; usage errors exit 2, --help 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout();
    match run(cli, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            let kind = error_kind(&e);
            let obj = serde_json::json!({ "error": e.to_string(), "kind": kind });
            eprintln!("{obj}");
            e.exit_code()
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OutOfDomain { .. } => "out-of-domain",
        Error::Parameter(_) => "parameter",
        Error::Profile(_) => "profile",
        Error::Ordering { .. } => "ordering",
        Error::Accuracy(_) => "accuracy",
        Error::Capability(_) => "capability",
        Error::Data(_) => "data",
        Error::TailInconsistency(_) => "tail-inconsistency",
        Error::Numerical(_) => "numerical",
        Error::Usage(_) => "usage",
        Error::Io(_) => "io",
    }
}

/// Run a parsed command, writing its output to `sink` (or to `--out`).
pub fn run<W: Write>(mut cli: Cli, sink: &mut W) -> Result<()> {
    apply_config(&mut cli)?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        // a second initialization (tests, repeated calls) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let bytes = match &cli.command {
        Command::Zeta(args) => cmd_zeta(args, cli.tol)?,
        Command::Bounds(args) => cmd_bounds(args)?,
        Command::Estimate(args) => cmd_estimate(args)?,
        Command::Spectrum(args) => cmd_spectrum(args, cli.tol)?,
        Command::Sweep(args) => cmd_sweep(args)?,
        Command::Diagrams(args) => cmd_diagrams(args)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => {
            sink.write_all(&bytes)?;
            sink.flush()?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// config file

fn load_kv(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Usage(format!(
                "config line {} is not key=value: '{raw}'",
                lineno + 1
            )));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn parse_config_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Usage(format!(
            "config key '{key}' wants true/false, got '{v}'"
        ))),
    }
}

fn parse_config_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Usage(format!("config key '{key}' has malformed value '{v}'")))
}

macro_rules! fill {
    ($slot:expr, $key:expr, $v:expr) => {
        if $slot.is_none() {
            $slot = Some(parse_config_num($key, $v)?);
        }
    };
}

macro_rules! fill_str {
    ($slot:expr, $v:expr) => {
        if $slot.is_none() {
            $slot = Some($v.to_string());
        }
    };
}

fn apply_config(cli: &mut Cli) -> Result<()> {
    let Some(path) = cli.config.clone() else {
        return Ok(());
    };
    let map = load_kv(&path)?;
    for (k, v) in &map {
        let key = k.as_str();
        // globals first
        match key {
            "threads" => {
                fill!(cli.threads, key, v);
                continue;
            }
            "tol" => {
                fill!(cli.tol, key, v);
                continue;
            }
            "out" => {
                if cli.out.is_none() {
                    cli.out = Some(PathBuf::from(v));
                }
                continue;
            }
            _ => {}
        }
        let known = match &mut cli.command {
            Command::Zeta(a) => match key {
                "density" => {
                    fill_str!(a.density, v);
                    true
                }
                "bc" => {
                    fill_str!(a.bc, v);
                    true
                }
                "orders" => {
                    fill_str!(a.orders, v);
                    true
                }
                "method" => {
                    fill_str!(a.method, v);
                    true
                }
                "nodes" => {
                    fill!(a.nodes, key, v);
                    true
                }
                "min-panels" => {
                    fill!(a.min_panels, key, v);
                    true
                }
                "panels" => {
                    fill_str!(a.panels, v);
                    true
                }
                "no-projection" => {
                    a.no_projection |= parse_config_bool(key, v)?;
                    true
                }
                _ => false,
            },
            Command::Bounds(a) => match key {
                "density" => {
                    fill_str!(a.density, v);
                    true
                }
                "bc" => {
                    fill_str!(a.bc, v);
                    true
                }
                "max-order" => {
                    fill!(a.max_order, key, v);
                    true
                }
                "no-projection" => {
                    a.no_projection |= parse_config_bool(key, v)?;
                    true
                }
                _ => false,
            },
            Command::Estimate(a) => match key {
                "density" => {
                    fill_str!(a.density, v);
                    true
                }
                "fixtures" => {
                    fill_str!(a.fixtures, v);
                    true
                }
                "bc" => {
                    fill_str!(a.bc, v);
                    true
                }
                "qmax" => {
                    fill!(a.qmax, key, v);
                    true
                }
                "depth" => {
                    fill!(a.depth, key, v);
                    true
                }
                "dd" => {
                    a.dd |= parse_config_bool(key, v)?;
                    true
                }
                "tail-alpha" => {
                    fill!(a.tail_alpha, key, v);
                    true
                }
                "tail-beta" => {
                    fill!(a.tail_beta, key, v);
                    true
                }
                _ => false,
            },
            Command::Spectrum(a) => match key {
                "density" => {
                    fill_str!(a.density, v);
                    true
                }
                "bc" => {
                    fill_str!(a.bc, v);
                    true
                }
                "modes" => {
                    fill!(a.modes, key, v);
                    true
                }
                "grid" => {
                    fill!(a.grid, key, v);
                    true
                }
                _ => false,
            },
            Command::Sweep(a) => match key {
                "density" => {
                    fill_str!(a.density, v);
                    true
                }
                "bc" => {
                    fill_str!(a.bc, v);
                    true
                }
                "start" => {
                    fill!(a.start, key, v);
                    true
                }
                "stop" => {
                    fill!(a.stop, key, v);
                    true
                }
                "points" => {
                    fill!(a.points, key, v);
                    true
                }
                "orders" => {
                    fill_str!(a.orders, v);
                    true
                }
                "log" => {
                    a.log |= parse_config_bool(key, v)?;
                    true
                }
                "oracle" => {
                    a.oracle |= parse_config_bool(key, v)?;
                    true
                }
                "grid" => {
                    fill!(a.grid, key, v);
                    true
                }
                _ => false,
            },
            Command::Diagrams(a) => match key {
                "order" => {
                    fill!(a.order, key, v);
                    true
                }
                "limit" => {
                    fill!(a.limit, key, v);
                    true
                }
                _ => false,
            },
        };
        if !known {
            return Err(Error::Usage(format!(
                "config key '{k}' does not match any flag of this subcommand"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// argument helpers

fn require<T>(opt: &Option<T>, flag: &str) -> Result<T>
where
    T: Clone,
{
    opt.clone()
        .ok_or_else(|| Error::Usage(format!("missing --{flag} (flag or config key)")))
}

/// Parse an orders expression: comma-separated integers or inclusive
/// ranges, e.g. "1..4", "2", "1,3,5", "1..3,7".  Result is sorted and
/// deduplicated.
pub fn parse_orders(expr: &str) -> Result<Vec<u32>> {
    let mut orders = Vec::new();
    for token in expr.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = token.split_once("..") {
            let lo: u32 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad order range '{token}'")))?;
            let hi: u32 = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| Error::Usage(format!("bad order range '{token}'")))?;
            if lo > hi {
                return Err(Error::Usage(format!("empty order range '{token}'")));
            }
            orders.extend(lo..=hi);
        } else {
            orders.push(
                token
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad order '{token}'")))?,
            );
        }
    }
    orders.sort_unstable();
    orders.dedup();
    if orders.is_empty() {
        return Err(Error::Usage(format!("no orders in '{expr}'")));
    }
    if orders[0] == 0 {
        return Err(Error::Usage("order 0 sum rule is divergent".into()));
    }
    Ok(orders)
}

fn parse_panels(expr: &str) -> Result<[usize; 3]> {
    let parts: Vec<usize> = expr
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad panel count '{t}'")))
        })
        .collect::<Result<_>>()?;
    if parts.len() != 3 {
        return Err(Error::Usage(format!(
            "--panels wants three comma-separated counts, got {}",
            parts.len()
        )));
    }
    Ok([parts[0], parts[1], parts[2]])
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Shortest round-trip float formatting; NaN becomes the empty cell.
fn csv_cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x}"),
        _ => String::new(),
    }
}

// ---------------------------------------------------------------------------
// zeta

fn quad_config(args: &ZetaArgs) -> Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(n) = args.nodes {
        cfg.diagram_nodes = n;
    }
    if let Some(p) = args.min_panels {
        cfg.diagram_min_panels = p;
    }
    if let Some(expr) = &args.panels {
        cfg.kernel_panels = parse_panels(expr)?;
    }
    cfg.spectral_projection = !args.no_projection;
    Ok(cfg)
}

fn cmd_zeta(args: &ZetaArgs, tol: Option<f64>) -> Result<Vec<u8>> {
    let profile = DensityProfile::parse(&require(&args.density, "density")?)?;
    let bc = BoundaryCondition::parse(&require(&args.bc, "bc")?)?;
    let orders = parse_orders(&require(&args.orders, "orders")?)?;
    let method = args.method.as_deref().unwrap_or("kernel");
    let cfg = quad_config(args)?;
    let n_max = *orders.last().expect("orders nonempty");

    let full = match method {
        "kernel" => zeta_kernel_trace(&profile, bc, n_max, &cfg)?,
        "diagram" => zeta_diagram_table(&profile, bc, n_max, &cfg)?,
        other => {
            return Err(Error::Usage(format!(
                "unknown method '{other}' (expected kernel or diagram)"
            )))
        }
    };
    // the routes compute 1..=n_max; keep the requested rows
    let mut values = Vec::with_capacity(orders.len());
    let mut errs = Vec::with_capacity(orders.len());
    for &s in &orders {
        values.push(full.value(s).expect("order in computed range"));
        errs.push(full.err(s).expect("order in computed range"));
    }
    let table = SumRuleTable::new(bc, orders, values, full.method.clone(), errs)?;

    if let Some(tol) = tol {
        let worst = table.err_est.iter().cloned().fold(0.0, f64::max);
        if worst > tol {
            let partial = json_bytes(&table)?;
            std::io::stderr().write_all(&partial).ok();
            return Err(Error::Accuracy(format!(
                "sum-rule error estimate {worst:.3e} exceeds --tol {tol:.3e}"
            )));
        }
    }
    json_bytes(&table)
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Serialize)]
struct BoundsOutput {
    bc: BoundaryCondition,
    method: String,
    bounds: Vec<BoundPair>,
}

fn cmd_bounds(args: &BoundsArgs) -> Result<Vec<u8>> {
    let profile = DensityProfile::parse(&require(&args.density, "density")?)?;
    let bc = BoundaryCondition::parse(&require(&args.bc, "bc")?)?;
    let max_order = args.max_order.unwrap_or(4);
    if max_order < 2 {
        return Err(Error::Usage(
            "--max-order must be at least 2 (bounds pair s with s+1)".into(),
        ));
    }
    let mut cfg = QuadratureConfig::default();
    cfg.spectral_projection = !args.no_projection;
    let table = zeta_kernel_trace(&profile, bc, max_order, &cfg)?;
    let bounds = euler_bounds(&table)?;
    json_bytes(&BoundsOutput {
        bc,
        method: table.method.clone(),
        bounds,
    })
}

// ---------------------------------------------------------------------------
// estimate

#[derive(Serialize)]
struct EstimateOutput {
    bc: BoundaryCondition,
    method: String,
    /// Tail model Eₙ ≈ (nπ/α)² + β used for the Berry column.
    tail_alpha: f64,
    tail_beta: f64,
    q: Vec<u32>,
    /// Tail-subtracted (Berry) ground-state estimates — the primary column.
    estimate: Vec<f64>,
    waring: Vec<f64>,
    bounds: Vec<BoundPair>,
    /// Repeated Shanks transformation of `estimate`; column k is depth k+1.
    shanks_columns: Vec<Vec<f64>>,
    stalled: Vec<Vec<bool>>,
    deepest: f64,
    /// Shanks ladder of the Waring column, for reference.
    shanks_columns_waring: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate_dd: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shanks_columns_dd: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deepest_dd: Option<String>,
}

fn cmd_estimate(args: &EstimateArgs) -> Result<Vec<u8>> {
    let qmax = args.qmax.unwrap_or(9);
    if qmax < 1 {
        return Err(Error::Usage("--qmax must be at least 1".into()));
    }
    let depth = args.depth.unwrap_or(DEFAULT_SHANKS_DEPTH);

    // assemble the sum-rule table, tail model, and (for --dd) dd values
    let (bc, table, mut coeffs, zeta_dd) = match (&args.fixtures, &args.density) {
        (Some(which), None) => {
            if which != "horgan-chan" {
                return Err(Error::Usage(format!(
                    "only the horgan-chan fixture set is available, got '{which}'"
                )));
            }
            if let Some(bc) = &args.bc {
                if BoundaryCondition::parse(bc)? != BoundaryCondition::DD {
                    return Err(Error::Usage(
                        "the horgan-chan fixture set is Dirichlet-Dirichlet".into(),
                    ));
                }
            }
            if qmax > fixtures::HORGAN_CHAN_ZETA_MAX {
                return Err(Error::Parameter(format!(
                    "fixture sum rules stop at order {}",
                    fixtures::HORGAN_CHAN_ZETA_MAX
                )));
            }
            let orders: Vec<u32> = (1..=qmax).collect();
            let values: Vec<f64> = orders
                .iter()
                .map(|&s| fixtures::horgan_chan_zeta(s))
                .collect::<Result<_>>()?;
            let dd_values: Vec<twofloat::TwoFloat> = orders
                .iter()
                .map(|&s| fixtures::horgan_chan_zeta_dd(s))
                .collect::<Result<_>>()?;
            let table =
                SumRuleTable::exact(BoundaryCondition::DD, orders, values, "fixture-exact")?;
            // the historical reference ladders use β = ln2/2, not the true 3/8
            let coeffs = fixtures::horgan_chan_reference_tail();
            (BoundaryCondition::DD, table, coeffs, Some(dd_values))
        }
        (None, Some(density)) => {
            let profile = DensityProfile::parse(density)?;
            let bc = BoundaryCondition::parse(&require(&args.bc, "bc")?)?;
            let table = zeta_kernel_trace(&profile, bc, qmax, &QuadratureConfig::default())?;
            let coeffs = bc_corrected_coeffs(&profile, bc)?;
            (bc, table, coeffs, None)
        }
        (Some(_), Some(_)) => {
            return Err(Error::Usage(
                "--fixtures and --density are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Usage(
                "one of --density or --fixtures is required".into(),
            ))
        }
    };
    if let Some(alpha) = args.tail_alpha {
        coeffs = AsymptoticCoefficients::with_length(alpha, coeffs.beta, coeffs.a)?;
    }
    if let Some(beta) = args.tail_beta {
        coeffs = AsymptoticCoefficients::with_length(coeffs.alpha, beta, coeffs.a)?;
    }

    let berry = berry_sequence(&table, &coeffs, bc)?;
    let waring = waring_sequence(&table)?;
    let bounds = euler_bounds(&table).unwrap_or_default();
    let ladder = shanks_table(&berry.values, depth)?;
    let waring_ladder = shanks_table(&waring.values, depth)?;
    let (deepest, _) = ladder.deepest();

    let (estimate_dd, shanks_columns_dd, deepest_dd) = if args.dd {
        let dd_values = match zeta_dd {
            Some(v) => v,
            None => {
                return Err(Error::Capability(
                    "--dd needs exact fixture sum rules (quadrature values carry \
                     no extra digits); use --fixtures horgan-chan"
                        .into(),
                ))
            }
        };
        let berry_dd = berry_sequence_dd(&table.orders, &dd_values, &coeffs, bc)?;
        let ladder_dd = shanks_table_dd(&berry_dd, depth)?;
        let fmt = |x: &twofloat::TwoFloat| dd::format_fixed(*x, 16);
        let cols: Vec<Vec<String>> = ladder_dd
            .columns
            .iter()
            .map(|col| col.iter().map(fmt).collect())
            .collect();
        let (deep, _) = ladder_dd.deepest();
        (Some(berry_dd.iter().map(fmt).collect()), Some(cols), Some(fmt(&deep)))
    } else {
        (None, None, None)
    };

    json_bytes(&EstimateOutput {
        bc,
        method: format!("berry+shanks[{}]", table.method),
        tail_alpha: coeffs.alpha,
        tail_beta: coeffs.beta,
        q: table.orders.clone(),
        estimate: berry.values,
        waring: waring.values,
        bounds,
        shanks_columns: ladder.columns,
        stalled: ladder.stalled,
        deepest,
        shanks_columns_waring: waring_ladder.columns,
        estimate_dd,
        shanks_columns_dd,
        deepest_dd,
    })
}

// ---------------------------------------------------------------------------
// spectrum

fn cmd_spectrum(args: &SpectrumArgs, tol: Option<f64>) -> Result<Vec<u8>> {
    let profile = DensityProfile::parse(&require(&args.density, "density")?)?;
    let bc = BoundaryCondition::parse(&require(&args.bc, "bc")?)?;
    let mut cfg = OracleConfig::default();
    if let Some(m) = args.modes {
        cfg.num_modes = m;
    }
    if let Some(g) = args.grid {
        cfg.grid_size = g;
        cfg.pp_grid_size = (g / 4).max(8);
    }
    let spectrum = solve_spectrum(&profile, bc, &cfg)?;
    if let Some(tol) = tol {
        let worst = spectrum.err_est.iter().cloned().fold(0.0, f64::max);
        if worst > tol {
            let partial = json_bytes(&spectrum)?;
            std::io::stderr().write_all(&partial).ok();
            return Err(Error::Accuracy(format!(
                "spectrum error estimate {worst:.3e} exceeds --tol {tol:.3e}"
            )));
        }
    }
    json_bytes(&spectrum)
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    param: f64,
    lower: Option<f64>,
    upper: Option<f64>,
    shanks: Option<f64>,
    oracle: Option<f64>,
    status: String,
}

fn sweep_point(
    template: &str,
    bc: BoundaryCondition,
    param: f64,
    orders: &[u32],
    want_oracle: bool,
    grid: Option<usize>,
) -> SweepRow {
    let mut row = SweepRow {
        param,
        lower: None,
        upper: None,
        shanks: None,
        oracle: None,
        status: "ok".into(),
    };
    // {param} -> shortest round-trip decimal of the value
    let spec = template.replace("{param}", &format!("{param}"));
    let attempt = || -> Result<(Option<f64>, Option<f64>, Option<f64>, Option<f64>)> {
        let profile = DensityProfile::parse(&spec)?;
        let n_max = *orders.last().expect("orders nonempty");
        let table = zeta_kernel_trace(&profile, bc, n_max, &QuadratureConfig::default())?;

        // bracket from the highest adjacent requested pair
        let mut pair = None;
        for w in orders.windows(2).rev() {
            if w[1] == w[0] + 1 {
                pair = Some(w[0]);
                break;
            }
        }
        let (lower, upper) = match pair {
            Some(s) => {
                let sub = SumRuleTable::new(
                    bc,
                    vec![s, s + 1],
                    vec![
                        table.value(s).expect("in range"),
                        table.value(s + 1).expect("in range"),
                    ],
                    table.method.clone(),
                    vec![table.err(s).expect("in range"), table.err(s + 1).expect("in range")],
                )?;
                let bs = euler_bounds(&sub)?;
                let b = bs.first().expect("one pair requested");
                (Some(b.lower), Some(b.upper))
            }
            None => (None, None),
        };

        // Shanks acceleration of the full Waring ladder
        let waring = waring_sequence(&table)?;
        let shanks = if waring.values.len() >= 3 {
            let ladder = shanks_table(&waring.values, DEFAULT_SHANKS_DEPTH)?;
            Some(ladder.deepest().0)
        } else {
            None
        };

        let oracle = if want_oracle {
            let mut cfg = OracleConfig {
                num_modes: 1,
                ..OracleConfig::default()
            };
            if let Some(g) = grid {
                cfg.grid_size = g;
                cfg.pp_grid_size = (g / 4).max(8);
            }
            Some(solve_spectrum(&profile, bc, &cfg)?.eigenvalues[0])
        } else {
            None
        };
        Ok((lower, upper, shanks, oracle))
    };
    match attempt() {
        Ok((lower, upper, shanks, oracle)) => {
            row.lower = lower;
            row.upper = upper;
            row.shanks = shanks;
            row.oracle = oracle;
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

fn cmd_sweep(args: &SweepArgs) -> Result<Vec<u8>> {
    use rayon::prelude::*;

    let template = require(&args.density, "density")?;
    if !template.contains("{param}") {
        return Err(Error::Usage(
            "sweep --density must contain the token {param}, e.g. borg:alpha={param}".into(),
        ));
    }
    let bc = BoundaryCondition::parse(&require(&args.bc, "bc")?)?;
    let start = require(&args.start, "start")?;
    let stop = require(&args.stop, "stop")?;
    let points = require(&args.points, "points")?;
    if points == 0 {
        return Err(Error::Usage("--points must be at least 1".into()));
    }
    let orders = parse_orders(args.orders.as_deref().unwrap_or("3,4"))?;
    if args.log && !(start > 0.0 && stop > 0.0) {
        return Err(Error::Usage(
            "--log spacing needs positive start/stop".into(),
        ));
    }

    let params: Vec<f64> = (0..points)
        .map(|i| {
            let t = if points == 1 {
                0.0
            } else {
                i as f64 / (points - 1) as f64
            };
            if args.log {
                (start.ln() + t * (stop.ln() - start.ln())).exp()
            } else {
                start + t * (stop - start)
            }
        })
        .collect();

    // independent points in parallel; collect preserves input order
    let rows: Vec<SweepRow> = params
        .par_iter()
        .map(|&p| sweep_point(&template, bc, p, &orders, args.oracle, args.grid))
        .collect();

    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["param", "lower", "upper", "shanks", "oracle", "status"])
        .map_err(|e| Error::Data(format!("csv write failed: {e}")))?;
    for r in &rows {
        wtr.write_record([
            csv_cell(Some(r.param)),
            csv_cell(r.lower),
            csv_cell(r.upper),
            csv_cell(r.shanks),
            csv_cell(r.oracle),
            r.status.clone(),
        ])
        .map_err(|e| Error::Data(format!("csv write failed: {e}")))?;
    }
    wtr.into_inner()
        .map_err(|e| Error::Data(format!("csv flush failed: {e}")))
}

// ---------------------------------------------------------------------------
// diagrams

#[derive(Serialize)]
struct DiagramsOutput {
    order: usize,
    prefactor: f64,
    count: usize,
    /// prefactor × count = n! for n ≥ 3 (2 and 2·2 below that)
    weighted_total: f64,
    diagrams: Vec<Vec<usize>>,
    truncated: bool,
}

fn cmd_diagrams(args: &DiagramsArgs) -> Result<Vec<u8>> {
    let order = require(&args.order, "order")?;
    if order == 0 {
        return Err(Error::Usage("--order must be at least 1".into()));
    }
    if order > 9 {
        return Err(Error::Capability(format!(
            "diagram enumeration is supported up to order 9 ((n-1)!/2 growth), got {order}"
        )));
    }
    let count = diagrams::diagram_count(order);
    let limit = args.limit.unwrap_or(20).min(count);
    let all = diagrams::enumerate(order)?;
    debug_assert_eq!(all.len(), count);
    let listed: Vec<Vec<usize>> = all.iter().take(limit).map(|d| d.cycle().to_vec()).collect();
    json_bytes(&DiagramsOutput {
        order,
        prefactor: diagrams::prefactor(order),
        count,
        weighted_total: diagrams::prefactor(order) * count as f64,
        diagrams: listed,
        truncated: limit < count,
    })
}
