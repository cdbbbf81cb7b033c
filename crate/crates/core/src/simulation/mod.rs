//! Closed-loop execution of a synthesized controller against a plant whose
//! parameter is fixed but hidden from the controller.

mod plants;
mod trace;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::estimation::{estimate_step, ParamSet};
use crate::logic::{Dra, DraState};
use crate::synthesis::Controller;
use crate::systems::{InputId, ParamId, Pts, StateId};

pub use plants::{PtsPlant, ScalarPlant};
pub use trace::{check_trace, RecurrenceReport, Trace, TraceReport, TraceStep};

/// A concrete system observed through a PTS abstraction.
pub trait Plant {
    type State: Clone;

    /// The abstraction the controller was synthesized on.
    fn pts(&self) -> &Pts;

    /// PTS state of a concrete state.
    fn abstract_state(&self, x: &Self::State) -> StateId;

    fn describe(&self, x: &Self::State) -> String;

    /// Parameter of the PTS that contains the hidden true parameter.
    fn true_param(&self) -> ParamId;

    /// One step under the true parameter with a random disturbance; returns
    /// the successor and a printable disturbance.
    fn sample(&self, x: &Self::State, u: InputId, rng: &mut ChaCha8Rng) -> (Self::State, String);

    /// Finitely many successors under the true parameter, for adversarial play.
    fn candidates(&self, x: &Self::State, u: InputId) -> Vec<(Self::State, String)>;

    /// Distance from a concrete state to a PTS state (0 when inside).
    fn distance(&self, x: &Self::State, q: StateId) -> f64;
}


/// How the non-determinism left to the environment is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisturbanceMode {
    /// Seeded uniform sampling.
    Uniform { seed: u64 },
    /// The successor closest to a losing abstract state.
    Adversarial,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimulationError {
    #[error("step {k}: ({node}) left the winning region")]
    LeftWinningRegion { k: usize, node: String },
    #[error("step {k}: observed transition is inconsistent with every remaining parameter")]
    Inconsistent { k: usize },
    #[error("step {k}: the true parameter was discarded from the estimate")]
    LostTrueParameter { k: usize },
}

/// Run `controller` on `plant` for `horizon` steps from `x0`.
///
/// Each step maps the concrete state to its abstract state, asks the
/// controller for an input at `(state, estimate, automaton state)`, applies the
/// concrete dynamics, refines the estimate on the abstraction and advances the
/// automaton on the label of the state just left.
pub fn simulate<P: Plant, C: Controller + ?Sized>(
    controller: &C,
    plant: &P,
    dra: &Dra,
    x0: P::State,
    horizon: usize,
    mode: DisturbanceMode,
) -> Result<Trace, SimulationError> {
    let pts = plant.pts();
    let mut rng = ChaCha8Rng::seed_from_u64(match mode {
        DisturbanceMode::Uniform { seed } => seed,
        DisturbanceMode::Adversarial => 0,
    });
    let star = plant.true_param();
    let mut x = x0;
    let mut v = ParamSet::full(pts.param_count());
    let mut s: DraState = dra.initial();
    let mut steps = Vec::with_capacity(horizon + 1);
    for k in 0..=horizon {
        let q = plant.abstract_state(&x);
        let label = pts.label(q);
        let mut step = TraceStep {
            k,
            x: plant.describe(&x),
            cell: q,
            theta_set: v,
            dra_state: s,
            input: None,
            disturbance: None,
            label,
        };
        if k == horizon {
            steps.push(step);
            break;
        }
        let u = controller.input(q, v, s).map_err(|_| SimulationError::LeftWinningRegion {
            k,
            node: format!("{}, {}, s{s}", pts.states()[q], v.format(pts.params())),
        })?;
        let s_next = dra.step(s, label);
        let (x_next, d) = match mode {
            DisturbanceMode::Uniform { .. } => plant.sample(&x, u, &mut rng),
            DisturbanceMode::Adversarial => adversarial(controller, plant, q, v, u, s_next, plant.candidates(&x, u)),
        };
        let q_next = plant.abstract_state(&x_next);
        let v_next = estimate_step(pts, v, q, u, q_next).map_err(|_| SimulationError::Inconsistent { k })?;
        if !v_next.contains(star) {
            return Err(SimulationError::LostTrueParameter { k });
        }
        step.input = Some(u);
        step.disturbance = Some(d);
        steps.push(step);
        x = x_next;
        v = v_next;
        s = s_next;
    }
    Ok(Trace::new(pts, steps))
}

fn adversarial<P: Plant, C: Controller + ?Sized>(
    controller: &C,
    plant: &P,
    q: StateId,
    v: ParamSet,
    u: InputId,
    s_next: DraState,
    candidates: Vec<(P::State, String)>,
) -> (P::State, String) {
    let pts = plant.pts();
    let losing: Vec<StateId> = (0..pts.state_count())
        .filter(|&q2| match estimate_step(pts, v, q, u, q2) {
            Ok(v2) => !controller.is_winning(q2, v2, s_next),
            Err(_) => false,
        })
        .collect();
    let score = |x: &P::State| losing.iter().map(|&l| plant.distance(x, l)).fold(f64::INFINITY, f64::min);
    candidates
        .into_iter()
        .map(|c| (score(&c.0), c))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c)
        .expect("plant offers at least one successor")
}
