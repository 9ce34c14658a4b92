//! `relloc` — play, verify, and sweep the pursuit game from the shell.
//!
//! Exit codes are a stable contract for CI: 0 success, 1 verification
//! failure (a bound or claim violated), 2 usage or parse error, 3 engine
//! error while running a game.
//!
//! Every run with a fixed seed produces byte-identical outputs. The seed
//! resolves flag first, then config file (for `play`), then the
//! `RELLOC_SEED` environment variable, then 0.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use relloc::engine::{play_game, verify_trace, EngineError, GameConfig};
use relloc::harness::{run_suite, run_sweep, SuiteOptions};
use relloc::specs::{
    default_horizon, default_slowness, default_target, parse_cat, parse_graph, parse_mouse,
    SpecError,
};

#[derive(Parser)]
#[command(name = "relloc", version, about = "Graph pursuit with one-bit distance feedback")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play one game; print the JSON summary and optionally write files.
    Play(PlayArgs),
    /// Run a verification suite; exit 0 only if every case passes.
    Verify(VerifyArgs),
    /// Shorthand for `verify --suite oracle`.
    Oracle(SuiteKnobs),
    /// Play a grid of (size, trial) games and emit a CSV table.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct PlayArgs {
    /// Graph spec: path:n=N | grid:n=C,m=R | substar:k=K |
    /// tree:n=N,dmax=D[,seed=S] | file:PATH
    #[arg(long)]
    graph: Option<String>,
    /// Cat spec: tree | grid | path | slow | random[:seed=S]
    #[arg(long)]
    cat: Option<String>,
    /// Mouse spec: greedy | stationary:v=V | random[:seed=S] |
    /// exhaustive:T=H,d=D | certificate:PATH
    #[arg(long)]
    mouse: Option<String>,
    /// Rounds to play; defaults to the cat's guarantee on this graph.
    #[arg(long)]
    horizon: Option<usize>,
    /// Mouse may move every k-th round; defaults to the cat's game.
    #[arg(long)]
    slowness: Option<usize>,
    /// Radius that counts as successful localization.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the per-round JSONL trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the JSON summary here (it is always printed to stdout).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// JSON file supplying defaults for the flags above; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// The `play` flags that may come from a `--config` file instead.
#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PlayConfig {
    graph: Option<String>,
    cat: Option<String>,
    mouse: Option<String>,
    horizon: Option<usize>,
    slowness: Option<usize>,
    target: Option<usize>,
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: oracle, tree, grid, path, slow, splitting.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    knobs: SuiteKnobs,
}

#[derive(Args)]
struct SuiteKnobs {
    /// Randomized cases / trials per parameter point (suite default
    /// otherwise).
    #[arg(long)]
    trials: Option<usize>,
    /// Size cap; its meaning is the suite's documented n.
    #[arg(long)]
    max_n: Option<usize>,
    /// Maximum degree parameter for suites that take one.
    #[arg(long)]
    dmax: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the per-case CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Graph family: path, grid (square), substar, or tree.
    #[arg(long)]
    family: String,
    /// Sizes: a comma list (8,16,32), a range (4..19), a stepped range
    /// (10..100:+10), or a geometric range (8..512:x2).
    #[arg(long)]
    sizes: String,
    /// Cat spec; defaults to the family's specialist.
    #[arg(long)]
    cat: Option<String>,
    /// Mouse spec.
    #[arg(long, default_value = "greedy")]
    mouse: String,
    /// Games per size.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Degree cap for the tree family.
    #[arg(long, default_value_t = 3)]
    dmax: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Failures carrying their contract exit code.
#[derive(Debug)]
enum Failure {
    /// Exit 1: a suite case or bound failed.
    Verification(String),
    /// Exit 2: bad flags, specs, or config.
    Usage(String),
    /// Exit 3: the engine rejected or aborted a game, or I/O failed.
    Engine(String),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Engine(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits 2 on its own parse errors
    let out = match cli.cmd {
        Cmd::Play(a) => cmd_play(a),
        Cmd::Verify(a) => cmd_verify(&a.suite, a.knobs),
        Cmd::Oracle(k) => cmd_verify("oracle", k),
        Cmd::Sweep(a) => cmd_sweep(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("relloc: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("relloc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("relloc: engine error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn env_seed() -> Option<u64> {
    let raw = std::env::var("RELLOC_SEED").ok()?;
    raw.parse().ok()
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Engine(format!("cannot write {}: {e}", path.display())))
}

fn cmd_play(args: PlayArgs) -> Result<(), Failure> {
    let file: PlayConfig = match &args.config {
        None => PlayConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
        }
    };
    let graph_spec = args
        .graph
        .or(file.graph)
        .ok_or_else(|| Failure::Usage("--graph is required (flag or config)".into()))?;
    let cat_spec = args
        .cat
        .or(file.cat)
        .ok_or_else(|| Failure::Usage("--cat is required (flag or config)".into()))?;
    let mouse_spec = args.mouse.or(file.mouse).unwrap_or_else(|| "greedy".into());
    let seed = args.seed.or(file.seed).or_else(env_seed).unwrap_or(0);

    let g = parse_graph(&graph_spec)?;
    let mut cat = parse_cat(&cat_spec, seed)?;
    let mut mouse = parse_mouse(&mouse_spec, cat.as_ref(), seed ^ 0x6D)?;
    let slowness = args
        .slowness
        .or(file.slowness)
        .unwrap_or_else(|| default_slowness(&cat_spec, &g));
    let horizon = args
        .horizon
        .or(file.horizon)
        .unwrap_or_else(|| default_horizon(&cat_spec, &g, slowness));
    let target = args.target.or(file.target).unwrap_or_else(|| default_target(&cat_spec, &g));
    let cfg = GameConfig::new(horizon, slowness, target, seed)?;

    let trace = play_game(&g, cat.as_mut(), mouse.as_mut(), &cfg)?;
    verify_trace(&trace, &g)
        .map_err(|e| Failure::Verification(format!("trace failed re-verification: {e}")))?;

    if let Some(path) = &args.trace {
        write_file(path, &trace.to_jsonl(&g))?;
    }
    let summary = trace.to_summary_json();
    if let Some(path) = &args.summary {
        write_file(path, &format!("{summary}\n"))?;
    }
    println!("{summary}");
    Ok(())
}

fn cmd_verify(suite: &str, knobs: SuiteKnobs) -> Result<(), Failure> {
    let opts = SuiteOptions {
        seed: knobs.seed.or_else(env_seed).unwrap_or(0),
        trials: knobs.trials,
        max_n: knobs.max_n,
        dmax: knobs.dmax,
    };
    let report = run_suite(suite, &opts).map_err(Failure::Usage)?;
    if let Some(path) = &knobs.csv {
        write_file(path, &report.to_csv())?;
    }
    println!("{}", report.one_line());
    if report.passed() {
        Ok(())
    } else {
        for f in report.failures().iter().take(20) {
            eprintln!("  {}: {}", f.id, f.detail);
        }
        Err(Failure::Verification(format!(
            "{} case(s) failed in suite {suite}",
            report.failures().len()
        )))
    }
}

/// Expands the `--sizes` syntax into an explicit list.
fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = |why: &str| Failure::Usage(format!("bad --sizes `{text}`: {why}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once("..") {
            None => out.push(part.parse().map_err(|_| bad("not an integer"))?),
            Some((lo, rest)) => {
                let lo: usize = lo.parse().map_err(|_| bad("bad range start"))?;
                let (hi, step) = match rest.split_once(':') {
                    None => (rest, "+1"),
                    Some((hi, step)) => (hi, step),
                };
                let hi: usize = hi.parse().map_err(|_| bad("bad range end"))?;
                let mut v = lo;
                match step.split_at(1) {
                    ("+", k) => {
                        let k: usize = k.parse().map_err(|_| bad("bad step"))?;
                        if k == 0 {
                            return Err(bad("zero step"));
                        }
                        while v <= hi {
                            out.push(v);
                            v += k;
                        }
                    }
                    ("x", k) => {
                        let k: usize = k.parse().map_err(|_| bad("bad factor"))?;
                        if k < 2 {
                            return Err(bad("factor must be at least 2"));
                        }
                        while v <= hi {
                            out.push(v);
                            v *= k;
                        }
                    }
                    _ => return Err(bad("step must be +K or xK")),
                }
            }
        }
    }
    if out.is_empty() {
        return Err(bad("no sizes"));
    }
    Ok(out)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let sizes = parse_sizes(&args.sizes)?;
    let cat_spec = args.cat.unwrap_or_else(|| match args.family.as_str() {
        "grid" => "grid".into(),
        "path" => "path".into(),
        "tree" => "tree".into(),
        _ => "random".into(),
    });
    let seed = args.seed.or_else(env_seed).unwrap_or(0);
    let csv = run_sweep(
        &args.family,
        &sizes,
        &cat_spec,
        &args.mouse,
        args.trials,
        args.dmax,
        seed,
    )
    .map_err(Failure::Usage)?;
    match &args.csv {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
