//! Controller synthesis: product with a Rabin automaton, game solving,
//! strategy extraction and projection back to the plant.

mod check;
mod game;
mod product;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adaptive::{Ats, AtsNode};
use crate::estimation::ParamSet;
use crate::logic::{Dra, DraState};
use crate::systems::{InputId, LabeledSystem, Pts, StateId, TransitionSystem};

pub use check::{verify_solution, StrategyViolation};
pub use game::{solve_game, Game, GamePair, GameSolution, Set};
pub use product::{build_product, ProductAutomaton, ProductNode};

#[derive(Debug, Error)]
pub enum SynthesisError {
    #[error("system propositions {system} are not covered by the automaton alphabet {automaton}")]
    AlphabetMismatch { system: String, automaton: String },
    #[error("system is blocking at ({state}, {input})")]
    Blocking { state: String, input: String },
    #[error("({0}) is outside the winning region")]
    NotWinning(String),
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("malformed strategy file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Solve the Rabin game on a product automaton.
pub fn solve_rabin(p: &ProductAutomaton) -> GameSolution {
    let sol = solve_game(p.game());
    log::info!("winning product nodes: {} of {}", sol.winning_count(), p.node_count());
    sol
}

/// System states `x` whose initial product node `(x, s0)` is winning.
pub fn winning_initial(sol: &GameSolution, p: &ProductAutomaton) -> Vec<StateId> {
    (0..p.system_states()).filter(|&x| sol.is_winning(p.initial(x))).collect()
}

/// Plant states `x0` from which the adaptive controller wins starting with
/// no parameter knowledge, i.e. `((x0, Θ), s0)` is winning.
pub fn project_initial(sol: &GameSolution, p: &ProductAutomaton, ats: &Ats) -> Vec<StateId> {
    (0..ats.pts().state_count()).filter(|&x| sol.is_winning(p.initial(ats.seed(x)))).collect()
}

/// Memoryless strategy at `(x, ϑ, s)` of an adaptive product.
pub fn execute_strategy(
    sol: &GameSolution,
    p: &ProductAutomaton,
    ats: &Ats,
    x: StateId,
    v: ParamSet,
    s: DraState,
) -> Result<InputId, SynthesisError> {
    let not_winning = || SynthesisError::NotWinning(format!("{}, {}, s{s}", ats.pts().states()[x], v.format(ats.pts().params())));
    let node = ats.node_id(AtsNode { x, params: v }).ok_or_else(not_winning)?;
    let pn = p.node_id(node, s).ok_or_else(not_winning)?;
    sol.strategy[pn].ok_or_else(not_winning)
}

/// Anything that maps the current plant state, estimate and automaton state
/// to an input.
pub trait Controller {
    fn input(&self, x: StateId, v: ParamSet, s: DraState) -> Result<InputId, SynthesisError>;

    fn is_winning(&self, x: StateId, v: ParamSet, s: DraState) -> bool {
        self.input(x, v, s).is_ok()
    }
}

/// One line of an exported strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyRecord {
    pub x: String,
    pub theta_set: Vec<String>,
    pub dra_state: DraState,
    pub input: String,
}

/// A solved game together with everything needed to query and export it.
#[derive(Debug, Clone)]
pub struct Synthesis<T> {
    system: T,
    dra: Dra,
    product: ProductAutomaton,
    solution: GameSolution,
}

impl<T: LabeledSystem> Synthesis<T> {
    pub fn solve(system: T, dra: Dra) -> Result<Self, SynthesisError> {
        let product = build_product(&system, &dra)?;
        let solution = solve_rabin(&product);
        Ok(Synthesis { system, dra, product, solution })
    }

    pub fn system(&self) -> &T {
        &self.system
    }

    pub fn dra(&self) -> &Dra {
        &self.dra
    }

    pub fn product(&self) -> &ProductAutomaton {
        &self.product
    }

    pub fn solution(&self) -> &GameSolution {
        &self.solution
    }

    pub fn winning_count(&self) -> usize {
        self.solution.winning_count()
    }

    /// System states whose initial product node is winning.
    pub fn winning_initial(&self) -> Vec<StateId> {
        winning_initial(&self.solution, &self.product)
    }

    /// Input at system state `x` (a composite node for adaptive systems) and
    /// automaton state `s`.
    pub fn node_input(&self, x: StateId, s: DraState) -> Result<InputId, SynthesisError> {
        self.product
            .node_id(x, s)
            .and_then(|n| self.solution.strategy[n])
            .ok_or_else(|| SynthesisError::NotWinning(format!("{}, s{s}", self.system.state_name(x))))
    }

    pub fn verify(&self) -> Result<(), StrategyViolation> {
        verify_solution(self.product.game(), &self.solution)
    }

    /// Strategy-induced subgraph on the winning region.
    pub fn strategy_dot(&self) -> String {
        let mut out = String::from("digraph strategy {\n  rankdir=LR;\n");
        for n in self.solution.winning.ones() {
            let (x, s) = self.product.node(n);
            let init = if n < self.product.system_states() { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "  n{n} [label=\"{} | {}\"{init}];", self.system.state_name(x), self.dra.state_name(s));
        }
        for n in self.solution.winning.ones() {
            let u = self.solution.strategy[n].expect("defined on winning nodes");
            for &m in self.product.successors(n, u) {
                let _ = writeln!(out, "  n{n} -> n{m} [label=\"{}\"];", self.system.input_name(u));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Synthesis<TransitionSystem> {
    pub fn strategy_records(&self) -> Vec<StrategyRecord> {
        self.solution
            .winning
            .ones()
            .map(|n| {
                let (x, s) = self.product.node(n);
                StrategyRecord {
                    x: self.system.states()[x].clone(),
                    theta_set: Vec::new(),
                    dra_state: s,
                    input: self.system.inputs()[self.solution.strategy[n].expect("winning")].clone(),
                }
            })
            .collect()
    }
}

impl Synthesis<Ats> {
    /// Build the adaptive system from `pts` and solve against `dra`.
    pub fn adaptive(pts: &Pts, dra: Dra) -> Result<Self, crate::Error> {
        let ats = crate::adaptive::build_ats(pts)?;
        Ok(Self::solve(ats, dra)?)
    }

    /// Plant states winning without prior parameter knowledge.
    pub fn project_initial(&self) -> Vec<StateId> {
        project_initial(&self.solution, &self.product, &self.system)
    }

    pub fn strategy_records(&self) -> Vec<StrategyRecord> {
        let pts = self.system.pts();
        self.solution
            .winning
            .ones()
            .map(|n| {
                let (a, s) = self.product.node(n);
                let node = self.system.node(a);
                StrategyRecord {
                    x: pts.states()[node.x].clone(),
                    theta_set: node.params.iter().map(|t| pts.params()[t].clone()).collect(),
                    dra_state: s,
                    input: pts.inputs()[self.solution.strategy[n].expect("winning")].clone(),
                }
            })
            .collect()
    }
}

impl Controller for Synthesis<Ats> {
    fn input(&self, x: StateId, v: ParamSet, s: DraState) -> Result<InputId, SynthesisError> {
        execute_strategy(&self.solution, &self.product, &self.system, x, v, s)
    }
}

/// A strategy loaded from its exported records, resolved against a PTS.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    table: HashMap<(StateId, u64, DraState), InputId>,
}

impl StrategyTable {
    pub fn from_records(pts: &Pts, records: &[StrategyRecord]) -> Result<Self, SynthesisError> {
        let unknown = |kind, name: &str| SynthesisError::Unknown { kind, name: name.to_string() };
        let mut table = HashMap::with_capacity(records.len());
        for r in records {
            let x = pts.state_index(&r.x).ok_or_else(|| unknown("state", &r.x))?;
            let u = pts.input_index(&r.input).ok_or_else(|| unknown("input", &r.input))?;
            let v = if r.theta_set.is_empty() {
                ParamSet::full(pts.param_count())
            } else {
                let ids = r
                    .theta_set
                    .iter()
                    .map(|t| pts.param_index(t).ok_or_else(|| unknown("parameter", t)))
                    .collect::<Result<Vec<_>, _>>()?;
                ParamSet::from_ids(ids)
            };
            table.insert((x, v.bits(), r.dra_state), u);
        }
        Ok(StrategyTable { table })
    }

    pub fn from_json(pts: &Pts, text: &str) -> Result<Self, SynthesisError> {
        let records: Vec<StrategyRecord> = serde_json::from_str(text)?;
        Self::from_records(pts, &records)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl Controller for StrategyTable {
    fn input(&self, x: StateId, v: ParamSet, s: DraState) -> Result<InputId, SynthesisError> {
        self.table
            .get(&(x, v.bits(), s))
            .copied()
            .ok_or_else(|| SynthesisError::NotWinning(format!("x{x}, {v}, s{s}")))
    }
}

pub fn records_to_json(records: &[StrategyRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}
