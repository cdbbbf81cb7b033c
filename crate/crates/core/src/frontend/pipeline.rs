use std::collections::{BTreeMap, HashSet, VecDeque};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::{gen_gridworld, FrontendError, GridWorldConfig, GRID_SPEC, SCALAR_SPEC};
use crate::abstraction::{format_rational, AbstractionConfig, Interval, Quotient, Rational};
use crate::adaptive::{build_ats, Ats};
use crate::logic::{compile_to_dra, parse_ltl, write_dra, Alphabet, Dra, LogicError, Ltl};
use crate::simulation::{check_trace, simulate, DisturbanceMode, Plant, PtsPlant, ScalarPlant, Trace, TraceReport};
use crate::synthesis::{records_to_json, Synthesis};
use crate::systems::{robustify, LabeledSystem, Pts, StateId, TransitionSystem};

/// Parse `text` over `alphabet` and translate it to a Rabin automaton.
pub fn compile_spec(text: &str, alphabet: &Alphabet) -> Result<(Ltl, Dra), LogicError> {
    let f = parse_ltl(text, alphabet)?;
    let dra = compile_to_dra(&f, alphabet)?;
    Ok((f, dra))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Named output files, kept in memory until written.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    files: BTreeMap<String, Vec<u8>>,
}

impl Artifacts {
    pub fn add(&mut self, name: impl Into<String>, contents: impl Into<Vec<u8>>) {
        self.files.insert(name.into(), contents.into());
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    /// SHA-256 of every file except `stats.json`, whose wall-times vary.
    pub fn hashes(&self) -> BTreeMap<String, String> {
        self.files.iter().filter(|(n, _)| n.as_str() != "stats.json").map(|(n, c)| (n.clone(), sha256_hex(c))).collect()
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), FrontendError> {
        let io = |p: &Path, source| FrontendError::Io { path: p.display().to_string(), source };
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        for (name, contents) in &self.files {
            let p = dir.join(name);
            std::fs::write(&p, contents).map_err(|e| io(&p, e))?;
        }
        Ok(())
    }
}

/// Everything needed to re-run a pipeline and check its outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub spec: String,
    pub seeds: Vec<u64>,
    pub partition: Value,
    pub output_dir: String,
    pub artifacts: BTreeMap<String, String>,
    /// Full settings of the run; enough to replay it.
    pub request: CaseStudyRequest,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FrontendError> {
        serde_json::from_str(text).map_err(|e| FrontendError::InvalidConfig(format!("manifest: {e}")))
    }

    /// Artifacts whose hash differs from the recorded one, or that are missing.
    pub fn mismatches(&self, artifacts: &Artifacts) -> Vec<String> {
        let got = artifacts.hashes();
        let mut bad: Vec<String> =
            self.artifacts.iter().filter(|(n, h)| got.get(*n) != Some(*h)).map(|(n, _)| n.clone()).collect();
        bad.extend(got.keys().filter(|n| !self.artifacts.contains_key(*n)).cloned());
        bad
    }
}

/// Product nodes reachable from the winning initial nodes when the
/// environment resolves every choice and the controller may use any input
/// that keeps all successors winning.
pub fn closed_loop_nodes<T: LabeledSystem>(syn: &Synthesis<T>, seeds: &[StateId]) -> usize {
    let p = syn.product();
    let sol = syn.solution();
    let n_inputs = p.game().input_count();
    let mut seen = vec![false; p.node_count()];
    let mut queue: VecDeque<usize> = seeds.iter().map(|&x| p.initial(x)).filter(|&n| sol.is_winning(n)).collect();
    for &n in &queue {
        seen[n] = true;
    }
    let mut count = queue.len();
    while let Some(n) = queue.pop_front() {
        for u in 0..n_inputs {
            let succ = p.successors(n, u);
            if succ.is_empty() || !succ.iter().all(|&m| sol.is_winning(m)) {
                continue;
            }
            for &m in succ {
                if !seen[m] {
                    seen[m] = true;
                    count += 1;
                    queue.push_back(m);
                }
            }
        }
    }
    count
}

fn secs(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1000.0).round() / 1000.0
}

/// Simulation settings shared by both studies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationOptions {
    pub runs: usize,
    pub horizon: usize,
    pub seed: u64,
    pub adversarial: bool,
}

/// Outcome of a batch of closed-loop runs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub runs: usize,
    /// Runs that visited a state violating a safety conjunct.
    pub unsafe_runs: usize,
    /// Runs aborted by the simulator (left the winning region, lost θ*).
    pub aborted_runs: usize,
    /// Runs whose estimate ever grew or dropped θ*.
    pub estimator_failures: usize,
    /// Longest wait between recurrence visits over all runs.
    pub worst_wait: usize,
}

impl BatchSummary {
    pub fn is_clean(&self) -> bool {
        self.unsafe_runs == 0 && self.aborted_runs == 0 && self.estimator_failures == 0
    }

    fn record(&mut self, trace: Result<&Trace, ()>, report: Option<&TraceReport>, star: usize) {
        self.runs += 1;
        let Ok(t) = trace else {
            self.aborted_runs += 1;
            return;
        };
        if !t.is_monotone() || !t.steps.iter().all(|s| s.theta_set.contains(star)) {
            self.estimator_failures += 1;
        }
        if let Some(r) = report {
            if !r.is_safe() {
                self.unsafe_runs += 1;
            }
            let w = r.recurrence.iter().map(|c| c.worst_wait(t.len())).max().unwrap_or(0);
            self.worst_wait = self.worst_wait.max(w);
        }
    }
}

/// Result of the scalar affine study.
pub struct ScalarStudy {
    pub config: AbstractionConfig,
    pub quotient: Quotient,
    pub formula: Ltl,
    pub synthesis: Synthesis<Ats>,
    pub robust: Synthesis<TransitionSystem>,
    /// Plant cells winning from the uninformed estimate.
    pub region: Vec<StateId>,
    pub robust_region: Vec<StateId>,
    pub closed_loop_nodes: usize,
    pub batch: Option<BatchSummary>,
    /// First simulated run, if any.
    pub trace: Option<Trace>,
    pub timings: BTreeMap<String, f64>,
}

impl ScalarStudy {
    /// Union of the region cells when it is one contiguous interval.
    pub fn region_hull(&self) -> Option<Interval> {
        let cells: Vec<&Interval> = self.region.iter().map(|&c| &self.quotient.x_cells[c]).collect();
        let first = cells.first()?;
        let contiguous = cells.windows(2).all(|w| w[0].hi() == w[1].lo());
        contiguous.then(|| Interval::new(first.lo().clone(), cells[cells.len() - 1].hi().clone()).expect("ordered"))
    }

    pub fn stats(&self) -> Value {
        json!({
            "ats_nodes": self.synthesis.system().node_count(),
            "product_nodes": self.synthesis.product().node_count(),
            "winning_nodes": self.synthesis.winning_count(),
            "closed_loop_nodes": self.closed_loop_nodes,
            "x0_max_cells": self.region.len(),
            "x0_max": self.region_hull().map(|h| h.to_string()),
            "robust_winning_nodes": self.robust.winning_count(),
            "robust_x0_cells": self.robust_region.len(),
            "simulation": self.batch,
            "wall_time_s": self.timings,
        })
    }

    pub fn artifacts(&self) -> Artifacts {
        let mut a = Artifacts::default();
        a.add("config.json", self.config.to_json());
        a.add("pts.json", self.quotient.pts.to_json());
        a.add("spec.dra", write_dra(self.synthesis.dra()));
        a.add("strategy.json", records_to_json(&self.synthesis.strategy_records()));
        if let Some(t) = &self.trace {
            a.add("trace.csv", t.to_csv());
        }
        a.add("stats.json", serde_json::to_string_pretty(&self.stats()).expect("stats serialize"));
        a
    }
}

/// Scalar study: abstraction, adaptive and robust synthesis, then seeded runs
/// from `x0` under the true parameter `theta_star`.
pub fn run_scalar_study(
    config: &AbstractionConfig,
    theta_star: &[Rational],
    x0: &Rational,
    sim: &SimulationOptions,
) -> Result<ScalarStudy, FrontendError> {
    let core = |e: crate::Error| FrontendError::Core(e);
    let mut timings = BTreeMap::new();
    let t_all = Instant::now();

    let t = Instant::now();
    let quotient = config.build().map_err(|e| core(e.into()))?;
    timings.insert("abstraction".to_string(), secs(t));

    let spec = config.spec.clone().unwrap_or_else(|| SCALAR_SPEC.to_string());
    let (formula, dra) = compile_spec(&spec, quotient.pts.alphabet()).map_err(|e| core(e.into()))?;

    let t = Instant::now();
    let ats = build_ats(&quotient.pts).map_err(|e| core(e.into()))?;
    timings.insert("ats".to_string(), secs(t));

    let t = Instant::now();
    let synthesis = Synthesis::solve(ats, dra.clone()).map_err(|e| core(e.into()))?;
    timings.insert("synthesis".to_string(), secs(t));
    let sink = quotient.pts.sink();
    let region: Vec<StateId> = synthesis.project_initial().into_iter().filter(|&x| Some(x) != sink).collect();

    let t = Instant::now();
    let robust = Synthesis::solve(robustify(&quotient.pts), dra).map_err(|e| core(e.into()))?;
    timings.insert("robust_synthesis".to_string(), secs(t));
    let robust_region: Vec<StateId> = robust.winning_initial().into_iter().filter(|&x| Some(x) != sink).collect();

    let seeds: Vec<StateId> = (0..quotient.pts.state_count()).map(|x| synthesis.system().seed(x)).collect();
    let closed_loop = closed_loop_nodes(&synthesis, &seeds);

    let mut batch = None;
    let mut trace = None;
    if sim.runs > 0 {
        let t = Instant::now();
        let plant = ScalarPlant::new(quotient.clone(), theta_star.to_vec()).map_err(|e| core(e.into()))?;
        let alphabet = synthesis.dra().alphabet().clone();
        let mut summary = BatchSummary::default();
        for i in 0..sim.runs {
            let mode = if sim.adversarial {
                DisturbanceMode::Adversarial
            } else {
                DisturbanceMode::Uniform { seed: sim.seed.wrapping_add(i as u64) }
            };
            let run = simulate(&synthesis, &plant, synthesis.dra(), x0.clone(), sim.horizon, mode);
            let report = run.as_ref().ok().map(|t| check_trace(t, &formula, &alphabet)).transpose().map_err(|e| core(e.into()))?;
            summary.record(run.as_ref().map_err(|_| ()), report.as_ref(), plant.true_param());
            if i == 0 {
                trace = run.ok();
            }
        }
        timings.insert("simulation".to_string(), secs(t));
        batch = Some(summary);
    }
    timings.insert("total".to_string(), secs(t_all));

    Ok(ScalarStudy {
        config: config.clone(),
        quotient,
        formula,
        synthesis,
        robust,
        region,
        robust_region,
        closed_loop_nodes: closed_loop,
        batch,
        trace,
        timings,
    })
}

/// Per-drift outcome of the grid study.
#[derive(Debug, Clone, Serialize)]
pub struct GridRun {
    pub theta: String,
    pub unsafe_visits: usize,
    /// Longest wait for A and for B, counting both ends of the run.
    pub worst_wait_a: usize,
    pub worst_wait_b: usize,
    pub visits_a: usize,
    pub visits_b: usize,
    pub final_estimate: Vec<String>,
    pub error: Option<String>,
}

/// Result of the grid study.
pub struct GridStudy {
    pub config: GridWorldConfig,
    pub pts: Pts,
    pub formula: Ltl,
    pub synthesis: Synthesis<Ats>,
    pub robust: Synthesis<TransitionSystem>,
    pub region: Vec<StateId>,
    pub robust_region: Vec<StateId>,
    pub start: StateId,
    pub runs: Vec<GridRun>,
    pub traces: Vec<(String, Trace)>,
    pub timings: BTreeMap<String, f64>,
}

impl GridStudy {
    pub fn stats(&self) -> Value {
        json!({
            "ats_nodes": self.synthesis.system().node_count(),
            "product_nodes": self.synthesis.product().node_count(),
            "winning_nodes": self.synthesis.winning_count(),
            "x0_max_cells": self.region.len(),
            "robust_winning_nodes": self.robust.winning_count(),
            "robust_x0_cells": self.robust_region.len(),
            "start": self.pts.states()[self.start],
            "runs": self.runs,
            "wall_time_s": self.timings,
        })
    }

    pub fn artifacts(&self) -> Artifacts {
        let mut a = Artifacts::default();
        a.add("config.json", serde_json::to_string_pretty(&self.config).expect("config serializes"));
        a.add("pts.json", self.pts.to_json());
        a.add("spec.dra", write_dra(self.synthesis.dra()));
        a.add("strategy.json", records_to_json(&self.synthesis.strategy_records()));
        for (theta, t) in &self.traces {
            a.add(format!("trace_theta{theta}.csv"), t.to_csv());
        }
        a.add("stats.json", serde_json::to_string_pretty(&self.stats()).expect("stats serialize"));
        a
    }

    /// Cells that cannot reach both A and B in the drift-free grid without
    /// entering the band or an unsafe cell.
    pub fn band_dependent_cells(&self) -> Vec<StateId> {
        let cfg = &self.config;
        let blocked: HashSet<_> = cfg.band.iter().chain(&cfg.unsafe_cells).copied().collect();
        let reach = |targets: &[super::Cell]| {
            let mut seen: HashSet<super::Cell> = targets.iter().copied().filter(|c| !blocked.contains(c)).collect();
            let mut queue: VecDeque<super::Cell> = seen.iter().copied().collect();
            while let Some((c, r)) = queue.pop_front() {
                for n in [(c - 1, r), (c + 1, r), (c, r - 1), (c, r + 1)] {
                    let inside = (0..cfg.width).contains(&n.0) && (0..cfg.height).contains(&n.1);
                    if inside && !blocked.contains(&n) && seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            seen
        };
        let (ra, rb) = (reach(&cfg.a), reach(&cfg.b));
        (0..cfg.height)
            .flat_map(|r| (0..cfg.width).map(move |c| (c, r)))
            .filter(|c| !(ra.contains(c) && rb.contains(c)))
            .filter_map(|c| self.pts.state_index(&GridWorldConfig::state_name(c)))
            .collect()
    }
}

/// Grid study: adaptive and robust synthesis, then one run per drift value
/// from `start` (default: the first A cell).
pub fn run_grid_study(
    config: &GridWorldConfig,
    start: Option<super::Cell>,
    sim: &SimulationOptions,
) -> Result<GridStudy, FrontendError> {
    let core = |e: crate::Error| FrontendError::Core(e);
    let mut timings = BTreeMap::new();
    let t_all = Instant::now();
    let pts = gen_gridworld(config)?;
    let (formula, dra) = compile_spec(GRID_SPEC, pts.alphabet()).map_err(|e| core(e.into()))?;

    let t = Instant::now();
    let ats = build_ats(&pts).map_err(|e| core(e.into()))?;
    timings.insert("ats".to_string(), secs(t));
    let t = Instant::now();
    let synthesis = Synthesis::solve(ats, dra.clone()).map_err(|e| core(e.into()))?;
    timings.insert("synthesis".to_string(), secs(t));
    let robust = Synthesis::solve(robustify(&pts), dra).map_err(|e| core(e.into()))?;
    let sink = pts.sink();
    let region: Vec<StateId> = synthesis.project_initial().into_iter().filter(|&x| Some(x) != sink).collect();
    let robust_region: Vec<StateId> = robust.winning_initial().into_iter().filter(|&x| Some(x) != sink).collect();

    let start_cell = start.or_else(|| config.a.first().copied()).ok_or_else(|| FrontendError::InvalidConfig("no start cell".into()))?;
    let start = pts
        .state_index(&GridWorldConfig::state_name(start_cell))
        .ok_or_else(|| FrontendError::InvalidConfig(format!("start cell {start_cell:?} is outside the grid")))?;

    let t = Instant::now();
    let alphabet = synthesis.dra().alphabet().clone();
    let mut runs = Vec::new();
    let mut traces = Vec::new();
    for theta in 0..pts.param_count() {
        let plant = PtsPlant::new(pts.clone(), theta);
        let mode = if sim.adversarial { DisturbanceMode::Adversarial } else { DisturbanceMode::Uniform { seed: sim.seed } };
        let name = pts.params()[theta].clone();
        match simulate(&synthesis, &plant, synthesis.dra(), start, sim.horizon, mode) {
            Ok(trace) => {
                let r = check_trace(&trace, &formula, &alphabet).map_err(|e| core(e.into()))?;
                let rec = |i: usize| r.recurrence.get(i);
                runs.push(GridRun {
                    theta: name.clone(),
                    unsafe_visits: r.safety_violations.len(),
                    worst_wait_a: rec(0).map_or(trace.len(), |c| c.worst_wait(trace.len())),
                    worst_wait_b: rec(1).map_or(trace.len(), |c| c.worst_wait(trace.len())),
                    visits_a: rec(0).map_or(0, |c| c.visits.len()),
                    visits_b: rec(1).map_or(0, |c| c.visits.len()),
                    final_estimate: trace.steps.last().map(|s| s.theta_set.iter().map(|t| pts.params()[t].clone()).collect()).unwrap_or_default(),
                    error: None,
                });
                traces.push((name, trace));
            }
            Err(e) => runs.push(GridRun {
                theta: name,
                unsafe_visits: 0,
                worst_wait_a: sim.horizon + 1,
                worst_wait_b: sim.horizon + 1,
                visits_a: 0,
                visits_b: 0,
                final_estimate: Vec::new(),
                error: Some(e.to_string()),
            }),
        }
    }
    timings.insert("simulation".to_string(), secs(t));
    timings.insert("total".to_string(), secs(t_all));

    Ok(GridStudy {
        config: config.clone(),
        pts,
        formula,
        synthesis,
        robust,
        region,
        robust_region,
        start,
        runs,
        traces,
        timings,
    })
}

/// Settings of an end-to-end case-study run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "study", rename_all = "snake_case")]
pub enum CaseStudyRequest {
    Scalar {
        config: AbstractionConfig,
        theta_star: Vec<String>,
        x0: String,
        runs: usize,
        horizon: usize,
        seed: u64,
        adversarial: bool,
        #[serde(default)]
        emit_dot: bool,
    },
    Grid {
        config: GridWorldConfig,
        start: Option<super::Cell>,
        horizon: usize,
        seed: u64,
        adversarial: bool,
        #[serde(default)]
        emit_dot: bool,
    },
}

impl CaseStudyRequest {
    /// The reference scalar setup: θ* = (0.45, 1.11, −0.18), x0 = 0,
    /// 1000 runs of 100 steps.
    pub fn scalar_default() -> Self {
        CaseStudyRequest::Scalar {
            config: super::scalar_config(),
            theta_star: ["0.45", "1.11", "-0.18"].map(String::from).to_vec(),
            x0: "0".into(),
            runs: 1000,
            horizon: 100,
            seed: 0,
            adversarial: false,
            emit_dot: false,
        }
    }

    pub fn grid_default() -> Self {
        CaseStudyRequest::Grid {
            config: GridWorldConfig::default_layout(),
            start: None,
            horizon: 500,
            seed: 0,
            adversarial: false,
            emit_dot: false,
        }
    }

    fn command(&self) -> &'static str {
        match self {
            CaseStudyRequest::Scalar { .. } => "casestudy scalar",
            CaseStudyRequest::Grid { .. } => "casestudy grid",
        }
    }
}

/// Artifacts, manifest and a printable summary of a case-study run.
pub struct CaseStudyOutcome {
    pub artifacts: Artifacts,
    pub manifest: RunManifest,
    pub summary: Vec<String>,
    /// No plant state is winning from the uninformed estimate.
    pub region_empty: bool,
}

impl CaseStudyOutcome {
    /// Write every artifact plus `manifest.json` into the output directory.
    pub fn write(&self) -> Result<(), FrontendError> {
        let dir = Path::new(&self.manifest.output_dir);
        self.artifacts.write_to(dir)?;
        let p = dir.join("manifest.json");
        std::fs::write(&p, self.manifest.to_json()).map_err(|e| FrontendError::Io { path: p.display().to_string(), source: e })
    }
}

fn parse_values(values: &[String]) -> Result<Vec<Rational>, FrontendError> {
    values
        .iter()
        .map(|v| crate::abstraction::parse_rational(v).map_err(|e| FrontendError::InvalidConfig(format!("'{v}': {e}"))))
        .collect()
}

/// Run a case study; `inputs` are the model paths recorded in the manifest.
pub fn run_case_study(req: &CaseStudyRequest, inputs: Vec<String>, output_dir: &Path) -> Result<CaseStudyOutcome, FrontendError> {
    let (artifacts, summary, region_empty, spec, seeds, partition) = match req {
        CaseStudyRequest::Scalar { config, theta_star, x0, runs, horizon, seed, adversarial, emit_dot } => {
            let theta = parse_values(theta_star)?;
            let x0 = parse_values(std::slice::from_ref(x0))?.remove(0);
            let sim = SimulationOptions { runs: *runs, horizon: *horizon, seed: *seed, adversarial: *adversarial };
            let s = run_scalar_study(config, &theta, &x0, &sim)?;
            let hull = s.region_hull().map_or_else(|| "(empty or disconnected)".to_string(), |h| h.to_string());
            let mut summary = vec![
                format!("reachable ATS nodes: {}", s.synthesis.system().node_count()),
                format!("product nodes: {}", s.synthesis.product().node_count()),
                format!("winning product nodes: {}", s.synthesis.winning_count()),
                format!("closed-loop product nodes: {}", s.closed_loop_nodes),
                format!("projected winning region: {hull} ({} cells)", s.region.len()),
                format!("robust winning region: {} cells", s.robust_region.len()),
            ];
            if let Some(b) = &s.batch {
                summary.push(format!(
                    "simulation: {} runs, {} unsafe, {} aborted, {} estimator failures",
                    b.runs, b.unsafe_runs, b.aborted_runs, b.estimator_failures
                ));
            }
            let spec = config.spec.clone().unwrap_or_else(|| SCALAR_SPEC.to_string());
            // run i uses seed + i
            let seeds = if *adversarial { Vec::new() } else { vec![*seed] };
            let mut a = s.artifacts();
            if *emit_dot {
                a.add("pts.dot", s.quotient.pts.to_dot());
                a.add("spec.dot", s.synthesis.dra().to_dot());
            }
            (a, summary, s.region.is_empty(), spec, seeds, partition_of(config))
        }
        CaseStudyRequest::Grid { config, start, horizon, seed, adversarial, emit_dot } => {
            let sim = SimulationOptions { runs: 1, horizon: *horizon, seed: *seed, adversarial: *adversarial };
            let s = run_grid_study(config, *start, &sim)?;
            let mut summary = vec![
                format!("reachable ATS nodes: {}", s.synthesis.system().node_count()),
                format!("product nodes: {}", s.synthesis.product().node_count()),
                format!("winning product nodes: {}", s.synthesis.winning_count()),
                format!("adaptive winning cells: {}", s.region.len()),
                format!("robust winning cells: {}", s.robust_region.len()),
            ];
            for r in &s.runs {
                summary.push(match &r.error {
                    None => format!(
                        "theta {}: {} unsafe visits, A visited {}x (worst wait {}), B visited {}x (worst wait {})",
                        r.theta, r.unsafe_visits, r.visits_a, r.worst_wait_a, r.visits_b, r.worst_wait_b
                    ),
                    Some(e) => format!("theta {}: {e}", r.theta),
                });
            }
            let partition = json!({ "width": config.width, "height": config.height, "drifts": config.drifts });
            let mut a = s.artifacts();
            if *emit_dot {
                a.add("pts.dot", s.pts.to_dot());
                a.add("spec.dot", s.synthesis.dra().to_dot());
                a.add("strategy.dot", s.synthesis.strategy_dot());
            }
            (a, summary, s.region.is_empty(), GRID_SPEC.to_string(), vec![*seed], partition)
        }
    };
    let manifest = RunManifest {
        command: req.command().to_string(),
        inputs,
        spec,
        seeds,
        partition,
        output_dir: output_dir.display().to_string(),
        artifacts: artifacts.hashes(),
        request: req.clone(),
    };
    Ok(CaseStudyOutcome { artifacts, manifest, summary, region_empty })
}

/// Re-run a manifest; returns the fresh outcome and the artifacts whose
/// hashes differ from the recorded ones.
pub fn replay(manifest: &RunManifest) -> Result<(CaseStudyOutcome, Vec<String>), FrontendError> {
    let out = run_case_study(&manifest.request, manifest.inputs.clone(), Path::new(&manifest.output_dir))?;
    let bad = manifest.mismatches(&out.artifacts);
    Ok((out, bad))
}

/// Partition summary of an abstraction config, for manifests.
pub fn partition_of(config: &AbstractionConfig) -> Value {
    json!({
        "x": config.x,
        "theta": config.theta,
        "u": config.u,
        "inputs": config.inputs().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()).unwrap_or_default(),
    })
}
