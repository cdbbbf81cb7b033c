use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use adsyn::abstraction::{parse_rational, AbstractionConfig};
use adsyn::adaptive::build_ats;
use adsyn::frontend::{
    compile_spec, replay, run_case_study, scalar_config, CaseStudyRequest, GridWorldConfig, RunManifest,
};
use adsyn::logic::{mentioned_props, parse_dra, write_dra, Alphabet, Dra};
use adsyn::simulation::{simulate, DisturbanceMode, PtsPlant, ScalarPlant, Trace};
use adsyn::synthesis::{records_to_json, StrategyTable, Synthesis};
use adsyn::systems::{robustify, Pts};

#[derive(Parser)]
#[command(name = "adsyn", version, about = "Adaptive controller synthesis for parametric transition systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate an LTL formula to a Rabin automaton.
    CompileSpec {
        formula: String,
        /// Comma-separated propositions; defaults to those in the formula.
        #[arg(long, value_delimiter = ',')]
        props: Option<Vec<String>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Abstract a scalar parametric affine system into a PTS.
    Abstract {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        #[arg(long, value_parser = ["scalar"])]
        preset: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Build the adaptive transition system of a PTS.
    BuildAts {
        #[arg(long)]
        pts: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Solve the adaptive (or robust) game and export the strategy.
    Synthesize {
        #[arg(long)]
        pts: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        /// Forget the parameter instead of estimating it.
        #[arg(long)]
        robust: bool,
        #[arg(short, long)]
        output: PathBuf,
        /// Write the winning initial states as JSON.
        #[arg(long)]
        winning: Option<PathBuf>,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Run an exported strategy in closed loop and write the trace as CSV.
    Simulate {
        /// Play on a finite PTS; the true parameter and x0 are names.
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        pts: Option<PathBuf>,
        /// Play on the scalar system; the true parameter and x0 are numbers.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        strategy: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta_star: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        adversarial: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// End-to-end case-study pipelines.
    Casestudy {
        #[command(subcommand)]
        study: Study,
    },
    /// Re-run a case-study manifest and compare artifact hashes.
    Replay {
        manifest: PathBuf,
        /// Write the fresh artifacts here instead of discarding them.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecArgs {
    /// Rabin automaton file.
    #[arg(long)]
    dra: Option<PathBuf>,
    /// LTL formula over the system propositions.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    adversarial: bool,
    #[arg(long)]
    emit_dot: bool,
}

#[derive(Subcommand)]
enum Study {
    /// Grid world with an unknown drift band.
    Grid {
        /// Layout JSON; the built-in 15×10 layout when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scalar affine system with three unknown coefficients.
    Scalar {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta_star: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long)]
        runs: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// Failures mapped to exit codes: input problems are 2, an empty winning
/// region is 1.
enum Failure {
    Input(anyhow::Error),
    Infeasible(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_pts(path: &Path) -> Result<Pts> {
    Pts::from_json(&read(path)?, true, &[]).with_context(|| format!("loading {}", path.display()))
}

fn load_spec(spec: &SpecArgs, alphabet: &Alphabet) -> Result<Dra> {
    match (&spec.dra, &spec.spec) {
        (Some(p), _) => parse_dra(&read(p)?).with_context(|| format!("loading {}", p.display())),
        (None, Some(f)) => Ok(compile_spec(f, alphabet)?.1),
        (None, None) => bail!("one of --dra or --spec is required"),
    }
}

fn compile_cmd(formula: &str, props: Option<Vec<String>>, output: Option<PathBuf>, emit_dot: Option<PathBuf>) -> Result<()> {
    let names = match props {
        Some(p) => p,
        None => mentioned_props(formula)?,
    };
    let alphabet = Alphabet::new(names)?;
    let (_, dra) = compile_spec(formula, &alphabet)?;
    let text = write_dra(&dra);
    match output {
        Some(p) => write(&p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = emit_dot {
        write(&p, dra.to_dot())?;
    }
    eprintln!("{} states, {} pair(s)", dra.state_count(), dra.pairs().len());
    Ok(())
}

fn abstract_cmd(config: Option<PathBuf>, output: &Path, emit_dot: Option<PathBuf>) -> Result<()> {
    let cfg = match config {
        Some(p) => AbstractionConfig::from_json(&read(&p)?).with_context(|| format!("loading {}", p.display()))?,
        None => scalar_config(),
    };
    let q = cfg.build()?;
    write(output, q.pts.to_json())?;
    if let Some(p) = emit_dot {
        write(&p, q.pts.to_dot())?;
    }
    println!(
        "{} states ({} cells + sink), {} inputs, {} parameter cells",
        q.pts.state_count(),
        q.x_cells.len(),
        q.pts.input_count(),
        q.pts.param_count()
    );
    Ok(())
}

fn build_ats_cmd(pts: &Path, output: &Path, stats: Option<PathBuf>, emit_dot: Option<PathBuf>) -> Result<()> {
    let p = load_pts(pts)?;
    let t = Instant::now();
    let ats = build_ats(&p)?;
    let wall = t.elapsed().as_secs_f64();
    write(output, ats.to_json())?;
    if let Some(path) = emit_dot {
        write(&path, ats.to_dot())?;
    }
    let s = json!({
        "ats_nodes": ats.node_count(),
        "ats_edges": ats.edge_count(),
        "node_bound": ats.node_bound().to_string(),
        "wall_time_s": { "ats": wall },
    });
    if let Some(path) = stats {
        write(&path, serde_json::to_string_pretty(&s)?)?;
    }
    println!("reachable ATS nodes: {}", ats.node_count());
    Ok(())
}

fn synthesize_cmd(
    pts: &Path,
    spec: &SpecArgs,
    robust: bool,
    output: &Path,
    winning: Option<PathBuf>,
    emit_dot: Option<PathBuf>,
) -> Result<(), Failure> {
    let p = load_pts(pts)?;
    let dra = load_spec(spec, p.alphabet())?;
    let sink = p.sink();
    let (records, region, count, dot) = if robust {
        let syn = Synthesis::solve(robustify(&p), dra).map_err(anyhow::Error::from)?;
        let dot = emit_dot.is_some().then(|| syn.strategy_dot());
        (syn.strategy_records(), syn.winning_initial(), syn.winning_count(), dot)
    } else {
        let syn = Synthesis::adaptive(&p, dra).map_err(anyhow::Error::from)?;
        let dot = emit_dot.is_some().then(|| syn.strategy_dot());
        (syn.strategy_records(), syn.project_initial(), syn.winning_count(), dot)
    };
    let region: Vec<&str> = region.into_iter().filter(|&x| Some(x) != sink).map(|x| p.states()[x].as_str()).collect();
    write(output, records_to_json(&records))?;
    if let Some(path) = winning {
        write(&path, serde_json::to_string_pretty(&json!({ "winning_nodes": count, "initial_states": region })).map_err(anyhow::Error::from)?)?;
    }
    if let (Some(path), Some(dot)) = (emit_dot, dot) {
        write(&path, dot)?;
    }
    println!("winning product nodes: {count}");
    println!("winning initial states ({}): {}", region.len(), region.join(" "));
    if region.is_empty() {
        return Err(Failure::Infeasible("winning region is empty".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate_cmd(
    pts: Option<PathBuf>,
    config: Option<PathBuf>,
    strategy: &Path,
    spec: &SpecArgs,
    theta_star: &[String],
    x0: &str,
    horizon: usize,
    seed: u64,
    adversarial: bool,
    output: &Path,
) -> Result<(), Failure> {
    let mode = if adversarial { DisturbanceMode::Adversarial } else { DisturbanceMode::Uniform { seed } };
    let text = read(strategy)?;
    let trace: Trace = match (pts, config) {
        (Some(path), _) => {
            let p = load_pts(&path)?;
            let dra = load_spec(spec, p.alphabet())?;
            let [name] = theta_star else {
                return Err(anyhow!("--theta-star takes one parameter name with --pts").into());
            };
            let theta = p.param_index(name).ok_or_else(|| anyhow!("unknown parameter '{name}'"))?;
            let x = p.state_index(x0).ok_or_else(|| anyhow!("unknown state '{x0}'"))?;
            let table = StrategyTable::from_json(&p, &text).map_err(anyhow::Error::from)?;
            let plant = PtsPlant::new(p, theta);
            simulate(&table, &plant, &dra, x, horizon, mode).map_err(|e| Failure::Infeasible(e.to_string()))?
        }
        (None, Some(path)) => {
            let cfg = AbstractionConfig::from_json(&read(&path)?).with_context(|| format!("loading {}", path.display()))?;
            let q = cfg.build().map_err(anyhow::Error::from)?;
            let dra = load_spec(spec, q.pts.alphabet())?;
            let theta = theta_star.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>, _>>().map_err(anyhow::Error::from)?;
            let x = parse_rational(x0).map_err(anyhow::Error::from)?;
            let table = StrategyTable::from_json(&q.pts, &text).map_err(anyhow::Error::from)?;
            let plant = ScalarPlant::new(q, theta).map_err(anyhow::Error::from)?;
            simulate(&table, &plant, &dra, x, horizon, mode).map_err(|e| Failure::Infeasible(e.to_string()))?
        }
        (None, None) => return Err(anyhow!("one of --pts or --config is required").into()),
    };
    write(output, trace.to_csv())?;
    let last = trace.steps.last().expect("at least one row");
    println!("{} steps, final state {}, final estimate {} parameter(s)", horizon, last.x, last.theta_set.len());
    Ok(())
}

fn casestudy_cmd(study: Study) -> Result<(), Failure> {
    let (mut req, inputs, run) = match study {
        Study::Grid { config, run } => {
            let mut req = CaseStudyRequest::grid_default();
            let mut inputs = Vec::new();
            if let (CaseStudyRequest::Grid { config: c, .. }, Some(p)) = (&mut req, config) {
                *c = serde_json::from_str::<GridWorldConfig>(&read(&p)?).with_context(|| format!("loading {}", p.display()))?;
                inputs.push(p.display().to_string());
            }
            (req, inputs, run)
        }
        Study::Scalar { config, theta_star, x0, runs, run } => {
            let mut req = CaseStudyRequest::scalar_default();
            let mut inputs = Vec::new();
            if let CaseStudyRequest::Scalar { config: c, theta_star: t, x0: x, runs: r, .. } = &mut req {
                if let Some(p) = config {
                    *c = AbstractionConfig::from_json(&read(&p)?).with_context(|| format!("loading {}", p.display()))?;
                    inputs.push(p.display().to_string());
                }
                if let Some(v) = theta_star {
                    *t = v;
                }
                if let Some(v) = x0 {
                    *x = v;
                }
                if let Some(v) = runs {
                    *r = v;
                }
            }
            (req, inputs, run)
        }
    };
    match &mut req {
        CaseStudyRequest::Scalar { horizon, seed, adversarial, emit_dot, .. }
        | CaseStudyRequest::Grid { horizon, seed, adversarial, emit_dot, .. } => {
            *horizon = run.horizon.unwrap_or(*horizon);
            *seed = run.seed.unwrap_or(*seed);
            *adversarial = run.adversarial;
            *emit_dot = run.emit_dot;
        }
    }
    let out = run_case_study(&req, inputs, &run.out).map_err(anyhow::Error::from)?;
    out.write().map_err(anyhow::Error::from)?;
    for line in &out.summary {
        println!("{line}");
    }
    println!("artifacts written to {}", run.out.display());
    if out.region_empty {
        return Err(Failure::Infeasible("winning region is empty".into()));
    }
    Ok(())
}

fn replay_cmd(path: &Path, out: Option<PathBuf>) -> Result<(), Failure> {
    let m = RunManifest::from_json(&read(path)?).map_err(anyhow::Error::from)?;
    let (fresh, bad) = replay(&m).map_err(anyhow::Error::from)?;
    if let Some(dir) = out {
        fresh.artifacts.write_to(&dir).map_err(anyhow::Error::from)?;
    }
    if !bad.is_empty() {
        return Err(anyhow!("artifacts differ from the manifest: {}", bad.join(", ")).into());
    }
    println!("{} artifact hashes reproduced", m.artifacts.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::CompileSpec { formula, props, output, emit_dot } => compile_cmd(&formula, props, output, emit_dot)?,
        Command::Abstract { config, preset: _, output, emit_dot } => abstract_cmd(config, &output, emit_dot)?,
        Command::BuildAts { pts, output, stats, emit_dot } => build_ats_cmd(&pts, &output, stats, emit_dot)?,
        Command::Synthesize { pts, spec, robust, output, winning, emit_dot } => {
            synthesize_cmd(&pts, &spec, robust, &output, winning, emit_dot)?
        }
        Command::Simulate { pts, config, strategy, spec, theta_star, x0, horizon, seed, adversarial, output } => {
            simulate_cmd(pts, config, &strategy, &spec, &theta_star, &x0, horizon, seed, adversarial, &output)?
        }
        Command::Casestudy { study } => casestudy_cmd(study)?,
        Command::Replay { manifest, out } => replay_cmd(&manifest, out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            // error types that embed their source would otherwise print it twice
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    msg = if msg.is_empty() { cause } else { format!("{msg}: {cause}") };
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
