//! Command-line driver for the `ecgraph` toolkit.
//!
//! One binary, batch-style subcommands: `generate`, `partition`,
//! `metrics`, `scan`, `schedule`, `groundstate`, and `estimate-pc`.
//! Every artifact records its provenance — tool version, fully resolved
//! configuration, and seed — either inline under a `"meta"` key (JSON
//! reports) or in a `<file>.meta.json` sidecar (edge lists, partitions,
//! CSV tables). Re-running the same command line reproduces every output
//! byte for byte; no timestamps or machine identifiers are written.
//!
//! Exit status is 0 on success, 1 on validation errors (bad flags,
//! malformed input files, out-of-domain parameters), and 2 on internal
//! failures (eigensolver non-convergence, panics). All errors are
//! reported as a single `error: ...` line on standard error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{Value, json};

use ecgraph::families::{self, FamilySpec};
use ecgraph::partition::block_graph;
use ecgraph::partitioner::{MaxBlock, PartitionStrategy};
use ecgraph::schedule::build_schedule;
use ecgraph::spin::{self, SolveMethod, SpinModel};
use ecgraph::{control, Error, Graph, Partition};

/// Default cost exponent `x` in the elementary cost `2^(2mx)/eps_gate`.
const DEFAULT_X: f64 = 1.0;

/// Default elementary gate accuracy `eps_gate`.
const DEFAULT_EPS_GATE: f64 = 0.1;

#[derive(Parser, Debug)]
#[command(
    name = "ecgraph",
    version,
    about = "Graph families, separator partitions, control costs, and certified \
             cluster ground-state estimates",
    disable_help_subcommand = true
)]
struct Cli {
    /// Seed for every randomized step (families, strategies, models).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cost exponent x >= 1 (default 1).
    #[arg(long, global = true)]
    x: Option<f64>,

    /// Elementary gate accuracy in (0, 1] (default 0.1).
    #[arg(long = "eps-gate", global = true)]
    eps_gate: Option<f64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a family instance as an edge-list file plus metadata.
    Generate {
        /// Family kind: chain, lattice, sierpinski, percolated-lattice,
        /// erdos-renyi, scale-free, fully-connected.
        family: String,
        /// Family parameters, e.g. `N=16 L=2` or `n=1000 p=0.01`.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Output edge-list path (sidecar goes to `<output>.meta.json`).
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the canonical partition (families that define one).
        #[arg(long)]
        partition_out: Option<PathBuf>,
    },

    /// Partition a graph into connected blocks and control vertices.
    Partition {
        /// Edge-list file to partition.
        #[arg(value_name = "GRAPH")]
        graph: PathBuf,
        /// Strategy: grow, delta-removal, high-degree.
        #[arg(long)]
        strategy: String,
        /// Strategy parameters, e.g. `max_block=8`, `delta=0.1`, `f=0.02`.
        #[arg(long = "strategy-arg", value_name = "KEY=VALUE")]
        strategy_args: Vec<String>,
        /// Output partition path (sidecar goes to `<output>.meta.json`).
        #[arg(short, long)]
        output: PathBuf,
    },

    /// Compute control metrics for a (graph, partition) pair.
    Metrics {
        #[arg(value_name = "GRAPH")]
        graph: PathBuf,
        #[arg(value_name = "PARTITION")]
        partition: PathBuf,
        /// Output JSON path (standard output when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Scan a family across sizes and classify its controllability.
    Scan {
        /// Family kind (as for `generate`; `fully-connected` excluded).
        family: String,
        /// `sizes=16,64,256,1024` plus family parameters; `x=` and `eps=`
        /// are accepted here as aliases for the cost-model flags.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Strategy: canonical, grow, delta-removal, high-degree.
        #[arg(long, default_value = "canonical")]
        strategy: String,
        /// Strategy parameters, e.g. `max_block=log2`, `delta=0.1`.
        #[arg(long = "strategy-arg", value_name = "KEY=VALUE")]
        strategy_args: Vec<String>,
        /// Cap on the fitted complexity exponent (default 3).
        #[arg(long)]
        poly_cap: Option<f64>,
        /// Output prefix: writes `<prefix>.csv`, `<prefix>.json`, and
        /// `<prefix>.verdict.json` (full JSON to standard output when
        /// omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Build the cheapest control schedule between two blocks.
    Schedule {
        #[arg(value_name = "GRAPH")]
        graph: PathBuf,
        #[arg(value_name = "PARTITION")]
        partition: PathBuf,
        /// Source block index.
        #[arg(long)]
        src: u32,
        /// Destination block index.
        #[arg(long)]
        dst: u32,
        /// Output JSON path (standard output when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Approximate a spin model's ground energy by cluster decoupling.
    Groundstate {
        #[arg(value_name = "GRAPH")]
        graph: PathBuf,
        #[arg(value_name = "PARTITION")]
        partition: PathBuf,
        /// Model: ising-zz, transverse-ising, heisenberg, random.
        #[arg(long)]
        model: String,
        /// Model parameters, e.g. `j=1`, `h=0.5`, `amplitude=1`.
        #[arg(long = "model-arg", value_name = "KEY=VALUE")]
        model_args: Vec<String>,
        /// Also compute the exact ground energy of the full Hamiltonian;
        /// added to the report when the instance is within solver size
        /// caps, omitted otherwise.
        #[arg(long)]
        oracle: bool,
        /// Solver: auto, dense, iterative.
        #[arg(long, default_value = "auto")]
        solver: String,
        /// Output JSON path (standard output when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Estimate the site-percolation threshold of a d-dimensional grid.
    EstimatePc {
        /// Parameters: `side=200` (required), `d=2`, `trials=20`.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Output JSON path (standard output when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// Error plumbing: user errors exit 1, internal failures exit 2.

/// CLI-level failure, already classified for the exit-status contract.
enum CliError {
    /// Validation problem attributable to flags, parameters, or input
    /// files; exit status 1.
    User(String),
    /// Failure inside the tool (solver non-convergence, serialization,
    /// panic); exit status 2.
    Internal(String),
}

type CliResult<T> = Result<T, CliError>;

fn user(msg: impl Into<String>) -> CliError {
    CliError::User(msg.into())
}

fn internal(msg: impl Into<String>) -> CliError {
    CliError::Internal(msg.into())
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            // A failed eigensolve on valid input is the tool's problem,
            // not the user's.
            Error::NonConvergence { .. } | Error::DenseFailure => internal(e.to_string()),
            other => user(other.to_string()),
        }
    }
}

/// Collapse a message to one line so stderr stays machine-parsable.
fn one_line(msg: &str) -> String {
    msg.lines().collect::<Vec<_>>().join("; ")
}

fn main() {
    // The default panic hook prints a multi-line message; suppress it and
    // report panics through the single-line error channel instead.
    std::panic::set_hook(Box::new(|_| {}));
    let code = match std::panic::catch_unwind(run) {
        Ok(Ok(())) => 0,
        Ok(Err(CliError::User(msg))) => {
            eprintln!("error: {}", one_line(&msg));
            1
        }
        Ok(Err(CliError::Internal(msg))) => {
            eprintln!("error: internal: {}", one_line(&msg));
            2
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            eprintln!("error: internal: panic: {}", one_line(&msg));
            2
        }
    };
    std::process::exit(code);
}

fn run() -> CliResult<()> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    Ok(())
                }
                _ => {
                    let first = e.to_string();
                    let first = first.lines().next().unwrap_or("bad arguments");
                    let first = first.strip_prefix("error: ").unwrap_or(first);
                    Err(user(format!("usage: {first}")))
                }
            };
        }
    };

    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(user("threads must be >= 1"));
        }
        // A second initialization (tests in-process, or races) is harmless:
        // the existing pool stays in effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }

    let ctx = Ctx {
        seed: cli.seed,
        threads: cli.threads,
        x: cli.x,
        eps_gate: cli.eps_gate,
    };
    match cli.cmd {
        Cmd::Generate {
            family,
            params,
            output,
            partition_out,
        } => cmd_generate(&ctx, &family, &params, &output, partition_out.as_deref()),
        Cmd::Partition {
            graph,
            strategy,
            strategy_args,
            output,
        } => cmd_partition(&ctx, &graph, &strategy, &strategy_args, &output),
        Cmd::Metrics {
            graph,
            partition,
            output,
        } => cmd_metrics(&ctx, &graph, &partition, output.as_deref()),
        Cmd::Scan {
            family,
            params,
            strategy,
            strategy_args,
            poly_cap,
            output,
        } => cmd_scan(
            &ctx,
            &family,
            &params,
            &strategy,
            &strategy_args,
            poly_cap,
            output.as_deref(),
        ),
        Cmd::Schedule {
            graph,
            partition,
            src,
            dst,
            output,
        } => cmd_schedule(&ctx, &graph, &partition, src, dst, output.as_deref()),
        Cmd::Groundstate {
            graph,
            partition,
            model,
            model_args,
            oracle,
            solver,
            output,
        } => cmd_groundstate(
            &ctx,
            &graph,
            &partition,
            &model,
            &model_args,
            oracle,
            &solver,
            output.as_deref(),
        ),
        Cmd::EstimatePc { params, output } => cmd_estimate_pc(&ctx, &params, output.as_deref()),
    }
}

/// Global flags shared by every subcommand.
struct Ctx {
    seed: u64,
    threads: Option<usize>,
    x: Option<f64>,
    eps_gate: Option<f64>,
}

impl Ctx {
    /// Resolve the cost model from flags, with optional key=value
    /// overrides already extracted by the caller (flags win).
    fn cost_model(&self, kv_x: Option<f64>, kv_eps: Option<f64>) -> CliResult<(ecgraph::CostModel, f64, f64)> {
        let x = self.x.or(kv_x).unwrap_or(DEFAULT_X);
        let eps = self.eps_gate.or(kv_eps).unwrap_or(DEFAULT_EPS_GATE);
        let model = control::CostModel::new(x, eps)?;
        Ok((model, x, eps))
    }

    /// Assemble the provenance header for one run.
    fn meta(&self, command: &'static str, entries: Vec<(&'static str, Value)>) -> Meta {
        let mut config: BTreeMap<&'static str, Value> = entries.into_iter().collect();
        config.insert("threads", json!(self.threads));
        Meta {
            tool: "ecgraph",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            seed: self.seed,
        }
    }
}

// ---------------------------------------------------------------------------
// Artifact metadata and output documents.

/// Provenance header embedded in every artifact.
#[derive(Serialize, Clone)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: BTreeMap<&'static str, Value>,
    seed: u64,
}

#[derive(Serialize)]
struct MetaOnly {
    meta: Meta,
}

#[derive(Serialize)]
struct GraphSidecar {
    meta: Meta,
    n: usize,
    m: usize,
}

#[derive(Serialize)]
struct PartitionSidecar {
    meta: Meta,
    n_blocks: usize,
    n_controls: usize,
}

#[derive(Serialize)]
struct MetricsDoc {
    meta: Meta,
    report: ecgraph::MetricsReport,
}

#[derive(Serialize)]
struct ScanDoc {
    meta: Meta,
    scan: ecgraph::ScanReport,
}

#[derive(Serialize)]
struct VerdictDoc {
    meta: Meta,
    verdict: ecgraph::Verdict,
}

#[derive(Serialize)]
struct ScanStdoutDoc {
    meta: Meta,
    scan: ecgraph::ScanReport,
    verdict: ecgraph::Verdict,
}

#[derive(Serialize)]
struct ScheduleDoc {
    meta: Meta,
    schedule: ecgraph::Schedule,
}

#[derive(Serialize)]
struct EnergyDoc {
    meta: Meta,
    report: ecgraph::EnergyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_exact: Option<f64>,
}

#[derive(Serialize)]
struct PcDoc {
    meta: Meta,
    p_c: f64,
}

fn to_json_bytes(doc: &impl Serialize) -> CliResult<Vec<u8>> {
    let mut buf =
        serde_json::to_vec_pretty(doc).map_err(|e| internal(format!("serialize: {e}")))?;
    buf.push(b'\n');
    Ok(buf)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| user(format!("{}: {e}", path.display())))
}

/// Write a JSON document to `out`, or to standard output when `None`.
fn emit_json(out: Option<&Path>, doc: &impl Serialize) -> CliResult<()> {
    let bytes = to_json_bytes(doc)?;
    match out {
        Some(p) => write_file(p, &bytes),
        None => {
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| internal(format!("stdout: {e}")))?;
            Ok(())
        }
    }
}

/// `<data file>.meta.json`, the sidecar naming rule for text artifacts.
fn sidecar_path(data: &Path) -> PathBuf {
    suffixed(data, ".meta.json")
}

fn suffixed(base: &Path, suffix: &str) -> PathBuf {
    let mut s = base.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn path_value(p: &Path) -> Value {
    json!(p.to_string_lossy())
}

fn opt_path_value(p: Option<&Path>) -> Value {
    match p {
        Some(p) => path_value(p),
        None => Value::Null,
    }
}

// ---------------------------------------------------------------------------
// Input readers.

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text =
        fs::read_to_string(path).map_err(|e| user(format!("{}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| user(format!("{}: {e}", path.display())))
}

fn read_partition(path: &Path) -> CliResult<Partition> {
    let text =
        fs::read_to_string(path).map_err(|e| user(format!("{}: {e}", path.display())))?;
    Partition::parse(&text).map_err(|e| user(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// KEY=VALUE parameter lists.

/// Parsed `KEY=VALUE` arguments with consuming, typed accessors; leftover
/// keys are rejected so typos cannot silently no-op.
struct KvArgs {
    map: BTreeMap<String, String>,
}

impl KvArgs {
    fn parse(args: &[String]) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        for a in args {
            let Some((k, v)) = a.split_once('=') else {
                return Err(user(format!("expected KEY=VALUE, got '{a}'")));
            };
            if k.is_empty() || v.is_empty() {
                return Err(user(format!("expected KEY=VALUE, got '{a}'")));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(user(format!("duplicate parameter '{k}'")));
            }
        }
        Ok(Self { map })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn take_parsed<T: std::str::FromStr>(
        &mut self,
        key: &str,
        what: &str,
    ) -> CliResult<Option<T>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| user(format!("parameter '{key}' must be {what}, got '{v}'"))),
        }
    }

    fn require<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> CliResult<T> {
        self.take_parsed(key, what)?
            .ok_or_else(|| user(format!("missing required parameter '{key}'")))
    }

    fn finish(self, context: &str) -> CliResult<()> {
        if let Some(k) = self.map.keys().next() {
            return Err(user(format!("unknown parameter '{k}' for {context}")));
        }
        Ok(())
    }
}

fn parse_sizes(raw: &str) -> CliResult<Vec<u64>> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| user(format!("parameter 'sizes' must list integers, got '{tok}'")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Families, strategies, models from CLI spellings.

/// A generatable family: a [`FamilySpec`] kind, or the fully-connected
/// block family (which has no size scan and is not a [`FamilySpec`] kind).
enum FamilyInstance {
    Spec(FamilySpec),
    FullyConnected { n_blocks: u64, beta: f64 },
}

const FAMILY_KINDS: &str =
    "chain, lattice, sierpinski, percolated-lattice, erdos-renyi, scale-free, fully-connected";

/// Resolve a family name plus KEY=VALUE parameters into a generatable
/// instance and the resolved-parameter map echoed into metadata.
fn build_family(
    kind: &str,
    args: &[String],
    seed: u64,
    x: f64,
) -> CliResult<(FamilyInstance, Value)> {
    let mut kv = KvArgs::parse(args)?;
    let (inst, params) = match kind {
        "chain" => {
            let n: u64 = kv.require("N", "an integer")?;
            let l: u32 = match kv.take_parsed("L", "an integer")? {
                Some(l) => l,
                None => families::chain_block_param(n, x),
            };
            (
                FamilyInstance::Spec(FamilySpec::Chain { n_blocks: n, l }),
                json!({"N": n, "L": l}),
            )
        }
        "lattice" => {
            let d: u32 = kv.take_parsed("d", "an integer")?.unwrap_or(2);
            let n: u64 = kv.require("N", "an integer")?;
            let l: u32 = match kv.take_parsed("L", "an integer")? {
                Some(l) => l,
                None => families::lattice_block_param(d, n, x),
            };
            (
                FamilyInstance::Spec(FamilySpec::Lattice { d, n_blocks: n, l }),
                json!({"d": d, "N": n, "L": l}),
            )
        }
        "sierpinski" => {
            let depth: u32 = kv.require("depth", "an integer")?;
            (
                FamilyInstance::Spec(FamilySpec::Sierpinski { depth }),
                json!({"depth": depth}),
            )
        }
        "percolated-lattice" => {
            let side: u32 = kv.require("side", "an integer")?;
            let d: u32 = kv.take_parsed("d", "an integer")?.unwrap_or(2);
            let p: f64 = kv.require("p", "a probability")?;
            (
                FamilyInstance::Spec(FamilySpec::PercolatedLattice { side, d, p, seed }),
                json!({"side": side, "d": d, "p": p}),
            )
        }
        "erdos-renyi" => {
            let n: u64 = kv.require("n", "an integer")?;
            let p: f64 = kv.require("p", "a probability")?;
            (
                FamilyInstance::Spec(FamilySpec::ErdosRenyi { n, p, seed }),
                json!({"n": n, "p": p}),
            )
        }
        "scale-free" => {
            let n: u64 = kv.require("n", "an integer")?;
            let alpha: f64 = kv.require("alpha", "a number")?;
            let kmin: u32 = kv.take_parsed("kmin", "an integer")?.unwrap_or(2);
            (
                FamilyInstance::Spec(FamilySpec::ScaleFree {
                    n,
                    alpha,
                    kmin,
                    seed,
                }),
                json!({"n": n, "alpha": alpha, "kmin": kmin}),
            )
        }
        "fully-connected" => {
            let n: u64 = kv.require("N", "an integer")?;
            let beta: f64 = kv.take_parsed("beta", "a number")?.unwrap_or(0.5);
            (
                FamilyInstance::FullyConnected { n_blocks: n, beta },
                json!({"N": n, "beta": beta}),
            )
        }
        other => {
            return Err(user(format!(
                "unknown family '{other}' (expected {FAMILY_KINDS})"
            )));
        }
    };
    kv.finish(&format!("family '{kind}'"))?;
    if let FamilyInstance::Spec(spec) = &inst {
        spec.validate()?;
    }
    Ok((inst, params))
}

fn generate_family(inst: &FamilyInstance) -> CliResult<(Graph, Option<Partition>)> {
    match inst {
        FamilyInstance::Spec(spec) => {
            let g = spec.generate()?;
            Ok((g.graph, g.partition))
        }
        FamilyInstance::FullyConnected { n_blocks, beta } => {
            let (g, p) = families::gen_fully_connected_blocks(*n_blocks, *beta)?;
            Ok((g, Some(p)))
        }
    }
}

/// Scan template: per-size parameters are re-derived by the scan itself,
/// so only the size-independent knobs are read here.
fn build_scan_template(
    kind: &str,
    kv: &mut KvArgs,
    seed: u64,
) -> CliResult<(FamilySpec, Value)> {
    let out = match kind {
        "chain" => (FamilySpec::Chain { n_blocks: 2, l: 2 }, json!({})),
        "lattice" => {
            let d: u32 = kv.take_parsed("d", "an integer")?.unwrap_or(2);
            (
                FamilySpec::Lattice {
                    d,
                    n_blocks: 2,
                    l: 2,
                },
                json!({"d": d}),
            )
        }
        "sierpinski" => (FamilySpec::Sierpinski { depth: 1 }, json!({})),
        "percolated-lattice" => {
            let d: u32 = kv.take_parsed("d", "an integer")?.unwrap_or(2);
            let p: f64 = kv.require("p", "a probability")?;
            (
                FamilySpec::PercolatedLattice {
                    side: 16,
                    d,
                    p,
                    seed,
                },
                json!({"d": d, "p": p}),
            )
        }
        "erdos-renyi" => {
            let p: f64 = kv.require("p", "a probability")?;
            (FamilySpec::ErdosRenyi { n: 2, p, seed }, json!({"p": p}))
        }
        "scale-free" => {
            let alpha: f64 = kv.require("alpha", "a number")?;
            let kmin: u32 = kv.take_parsed("kmin", "an integer")?.unwrap_or(2);
            (
                FamilySpec::ScaleFree {
                    n: 2,
                    alpha,
                    kmin,
                    seed,
                },
                json!({"alpha": alpha, "kmin": kmin}),
            )
        }
        "fully-connected" => {
            return Err(user(
                "family 'fully-connected' has no size scan (no per-size canonical parameters)",
            ));
        }
        other => {
            return Err(user(format!(
                "unknown family '{other}' (expected {FAMILY_KINDS})"
            )));
        }
    };
    Ok(out)
}

const STRATEGY_KINDS: &str = "canonical, grow, delta-removal, high-degree";

fn build_strategy(
    kind: &str,
    args: &[String],
    seed: u64,
) -> CliResult<(PartitionStrategy, Value)> {
    let mut kv = KvArgs::parse(args)?;
    let (strategy, described) = match kind {
        "canonical" => (PartitionStrategy::Canonical, json!({"kind": "canonical"})),
        "grow" => {
            let (max_block, shown) = match kv.take("max_block") {
                None => (MaxBlock::Log2Ceil, json!("log2")),
                Some(v) if v == "log2" => (MaxBlock::Log2Ceil, json!("log2")),
                Some(v) => {
                    let c: u32 = v.parse().map_err(|_| {
                        user(format!(
                            "parameter 'max_block' must be an integer or 'log2', got '{v}'"
                        ))
                    })?;
                    (MaxBlock::Fixed(c), json!(c))
                }
            };
            (
                PartitionStrategy::Grow { max_block },
                json!({"kind": "grow", "max_block": shown}),
            )
        }
        "delta-removal" => {
            let delta: f64 = kv.require("delta", "a number")?;
            (
                PartitionStrategy::DeltaRemoval { delta, seed },
                json!({"kind": "delta-removal", "delta": delta}),
            )
        }
        "high-degree" => {
            let f: f64 = kv.require("f", "a number")?;
            (
                PartitionStrategy::HighDegree { f },
                json!({"kind": "high-degree", "f": f}),
            )
        }
        other => {
            return Err(user(format!(
                "unknown strategy '{other}' (expected {STRATEGY_KINDS})"
            )));
        }
    };
    kv.finish(&format!("strategy '{kind}'"))?;
    strategy.validate()?;
    Ok((strategy, described))
}

const MODEL_KINDS: &str = "ising-zz, transverse-ising, heisenberg, random";

fn build_model(kind: &str, args: &[String], seed: u64) -> CliResult<(SpinModel<f64>, Value)> {
    let mut kv = KvArgs::parse(args)?;
    let (model, described) = match kind {
        "ising-zz" => {
            let j: f64 = kv.take_parsed("j", "a number")?.unwrap_or(1.0);
            (SpinModel::IsingZz { j }, json!({"kind": "ising-zz", "j": j}))
        }
        "transverse-ising" => {
            let j: f64 = kv.take_parsed("j", "a number")?.unwrap_or(1.0);
            let h: f64 = kv.take_parsed("h", "a number")?.unwrap_or(1.0);
            (
                SpinModel::TransverseIsing { j, h },
                json!({"kind": "transverse-ising", "j": j, "h": h}),
            )
        }
        "heisenberg" => {
            let j: f64 = kv.take_parsed("j", "a number")?.unwrap_or(1.0);
            (
                SpinModel::Heisenberg { j },
                json!({"kind": "heisenberg", "j": j}),
            )
        }
        "random" => {
            let amplitude: f64 = kv.take_parsed("amplitude", "a number")?.unwrap_or(1.0);
            (
                SpinModel::Random { amplitude, seed },
                json!({"kind": "random", "amplitude": amplitude}),
            )
        }
        other => {
            return Err(user(format!(
                "unknown model '{other}' (expected {MODEL_KINDS})"
            )));
        }
    };
    kv.finish(&format!("model '{kind}'"))?;
    Ok((model, described))
}

// ---------------------------------------------------------------------------
// Subcommand implementations.

fn cmd_generate(
    ctx: &Ctx,
    family: &str,
    params: &[String],
    output: &Path,
    partition_out: Option<&Path>,
) -> CliResult<()> {
    let x = ctx.x.unwrap_or(DEFAULT_X);
    let (inst, params_v) = build_family(family, params, ctx.seed, x)?;
    let (graph, partition) = generate_family(&inst)?;

    let partition = match (partition_out, partition) {
        (Some(_), None) => {
            return Err(user(format!(
                "family '{family}' has no canonical partition to write"
            )));
        }
        (_, p) => p,
    };

    let meta = ctx.meta(
        "generate",
        vec![
            ("family", json!(family)),
            ("params", params_v),
            ("x", json!(x)),
            ("output", path_value(output)),
            ("partition_out", opt_path_value(partition_out)),
        ],
    );

    write_file(output, graph.to_text().as_bytes())?;
    emit_json(
        Some(&sidecar_path(output)),
        &GraphSidecar {
            meta: meta.clone(),
            n: graph.n(),
            m: graph.m(),
        },
    )?;
    if let Some(pp) = partition_out {
        let p = partition.expect("checked above");
        write_file(pp, p.to_text().as_bytes())?;
        emit_json(
            Some(&sidecar_path(pp)),
            &PartitionSidecar {
                meta,
                n_blocks: p.n_blocks(),
                n_controls: p.controls().len(),
            },
        )?;
    }
    Ok(())
}

fn cmd_partition(
    ctx: &Ctx,
    graph: &Path,
    strategy: &str,
    strategy_args: &[String],
    output: &Path,
) -> CliResult<()> {
    let g = read_graph(graph)?;
    let (s, described) = build_strategy(strategy, strategy_args, ctx.seed)?;
    let p = s.apply(&g)?;
    let meta = ctx.meta(
        "partition",
        vec![
            ("graph", path_value(graph)),
            ("strategy", described),
            ("output", path_value(output)),
        ],
    );
    write_file(output, p.to_text().as_bytes())?;
    emit_json(
        Some(&sidecar_path(output)),
        &PartitionSidecar {
            meta,
            n_blocks: p.n_blocks(),
            n_controls: p.controls().len(),
        },
    )
}

fn cmd_metrics(
    ctx: &Ctx,
    graph: &Path,
    partition: &Path,
    output: Option<&Path>,
) -> CliResult<()> {
    let (model, x, eps) = ctx.cost_model(None, None)?;
    let g = read_graph(graph)?;
    let p = read_partition(partition)?;
    let report = control::partition_metrics(&g, &p, &model)?;
    let meta = ctx.meta(
        "metrics",
        vec![
            ("graph", path_value(graph)),
            ("partition", path_value(partition)),
            ("x", json!(x)),
            ("eps_gate", json!(eps)),
            ("output", opt_path_value(output)),
        ],
    );
    emit_json(output, &MetricsDoc { meta, report })
}

fn cmd_scan(
    ctx: &Ctx,
    family: &str,
    params: &[String],
    strategy: &str,
    strategy_args: &[String],
    poly_cap: Option<f64>,
    output: Option<&Path>,
) -> CliResult<()> {
    let mut kv = KvArgs::parse(params)?;
    let sizes = match kv.take("sizes") {
        Some(raw) => parse_sizes(&raw)?,
        None => return Err(user("scan requires sizes=..., e.g. sizes=16,64,256")),
    };
    let kv_x: Option<f64> = kv.take_parsed("x", "a number")?;
    let kv_eps: Option<f64> = kv.take_parsed("eps", "a number")?;
    let (template, params_v) = build_scan_template(family, &mut kv, ctx.seed)?;
    kv.finish(&format!("family '{family}'"))?;

    let (model, x, eps) = ctx.cost_model(kv_x, kv_eps)?;
    let (strat, strat_v) = build_strategy(strategy, strategy_args, ctx.seed)?;
    let cap = poly_cap.unwrap_or_else(control::default_poly_cap::<f64>);

    let scan = control::family_scan(&template, &strat, &sizes, &model)?;
    let verdict = control::classify(&scan, cap)?;

    let meta = ctx.meta(
        "scan",
        vec![
            ("family", json!(family)),
            ("params", params_v),
            ("sizes", json!(sizes)),
            ("strategy", strat_v),
            ("x", json!(x)),
            ("eps_gate", json!(eps)),
            ("poly_cap", json!(cap)),
            ("output", opt_path_value(output)),
        ],
    );

    match output {
        Some(prefix) => {
            let csv_path = suffixed(prefix, ".csv");
            write_file(csv_path.as_path(), control::scan_to_csv(&scan).as_bytes())?;
            emit_json(Some(&sidecar_path(&csv_path)), &MetaOnly { meta: meta.clone() })?;
            emit_json(
                Some(&suffixed(prefix, ".json")),
                &ScanDoc {
                    meta: meta.clone(),
                    scan: scan.clone(),
                },
            )?;
            emit_json(
                Some(&suffixed(prefix, ".verdict.json")),
                &VerdictDoc { meta, verdict },
            )
        }
        None => emit_json(None, &ScanStdoutDoc { meta, scan, verdict }),
    }
}

fn cmd_schedule(
    ctx: &Ctx,
    graph: &Path,
    partition: &Path,
    src: u32,
    dst: u32,
    output: Option<&Path>,
) -> CliResult<()> {
    let (model, x, eps) = ctx.cost_model(None, None)?;
    let g = read_graph(graph)?;
    let p = read_partition(partition)?;
    let bg = block_graph(&g, &p)?;
    let schedule = build_schedule(&bg, &p, src, dst, &model)?;
    let meta = ctx.meta(
        "schedule",
        vec![
            ("graph", path_value(graph)),
            ("partition", path_value(partition)),
            ("src", json!(src)),
            ("dst", json!(dst)),
            ("x", json!(x)),
            ("eps_gate", json!(eps)),
            ("output", opt_path_value(output)),
        ],
    );
    let summary = format!(
        "schedule: src={src} dst={dst} steps={} total_cost={}",
        schedule.steps.len(),
        schedule.total_cost
    );
    emit_json(output, &ScheduleDoc { meta, schedule })?;
    println!("{summary}");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_groundstate(
    ctx: &Ctx,
    graph: &Path,
    partition: &Path,
    model: &str,
    model_args: &[String],
    oracle: bool,
    solver: &str,
    output: Option<&Path>,
) -> CliResult<()> {
    let method: SolveMethod = solver.parse().map_err(user)?;
    let g = read_graph(graph)?;
    let p = read_partition(partition)?;
    let (m, model_v) = build_model(model, model_args, ctx.seed)?;
    let h = spin::build_hamiltonian(&g, &m)?;
    let report = spin::approx_ground_energy(&h, &p, method)?;
    let e_exact = if oracle {
        match spin::exact_ground_energy(&h, method) {
            Ok(solve) => Some(solve.energy),
            // The oracle is best-effort by contract: beyond the size caps
            // the field is simply omitted.
            Err(Error::SizeCap { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let meta = ctx.meta(
        "groundstate",
        vec![
            ("graph", path_value(graph)),
            ("partition", path_value(partition)),
            ("model", model_v),
            ("solver", json!(method.to_string())),
            ("oracle", json!(oracle)),
            ("output", opt_path_value(output)),
        ],
    );
    emit_json(output, &EnergyDoc { meta, report, e_exact })
}

fn cmd_estimate_pc(ctx: &Ctx, params: &[String], output: Option<&Path>) -> CliResult<()> {
    let mut kv = KvArgs::parse(params)?;
    let side: u32 = kv.require("side", "an integer")?;
    let d: u32 = kv.take_parsed("d", "an integer")?.unwrap_or(2);
    let trials: u32 = kv.take_parsed("trials", "an integer")?.unwrap_or(20);
    kv.finish("estimate-pc")?;
    let p_c = families::estimate_pc(side, d, trials, ctx.seed)?;
    let meta = ctx.meta(
        "estimate-pc",
        vec![
            ("side", json!(side)),
            ("d", json!(d)),
            ("trials", json!(trials)),
            ("output", opt_path_value(output)),
        ],
    );
    emit_json(output, &PcDoc { meta, p_c })
}
