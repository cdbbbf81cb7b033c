use crate::logic::{Alphabet, Letter};

use super::{
    check_unique, sink_name, sorted_unique, InputId, ParamId, StateId, SystemsError, TransitionSystem, MAX_PARAMS,
};

/// Finite parametric transition system: the successor set of `(x, u)`
/// depends on a parameter drawn once from `params` and never revealed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pts {
    states: Vec<String>,
    inputs: Vec<String>,
    params: Vec<String>,
    alphabet: Alphabet,
    labels: Vec<Letter>,
    /// `succ[(x * |U| + u) * |Θ| + θ]`, sorted and deduplicated.
    succ: Vec<Vec<StateId>>,
    sink: Option<StateId>,
}

impl Pts {
    pub fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        params: Vec<String>,
        alphabet: Alphabet,
        labels: Vec<Letter>,
        mut successors: impl FnMut(StateId, InputId, ParamId) -> Vec<StateId>,
    ) -> Result<Self, SystemsError> {
        for (kind, v) in [("state", &states), ("input", &inputs), ("parameter", &params)] {
            if v.is_empty() {
                return Err(SystemsError::Empty(kind));
            }
            check_unique(kind, v)?;
        }
        if params.len() > MAX_PARAMS {
            return Err(SystemsError::TooManyParams(params.len()));
        }
        if labels.len() != states.len() {
            return Err(SystemsError::InvalidPartition("label count differs from state count".into()));
        }
        let n = states.len();
        let mut succ = Vec::with_capacity(n * inputs.len() * params.len());
        for x in 0..n {
            for u in 0..inputs.len() {
                for t in 0..params.len() {
                    let s = sorted_unique(successors(x, u, t));
                    if let Some(&bad) = s.last().filter(|&&b| b >= n) {
                        return Err(SystemsError::UnknownName { kind: "state id", name: bad.to_string() });
                    }
                    succ.push(s);
                }
            }
        }
        Ok(Pts { states, inputs, params, alphabet, labels, succ, sink: None })
    }

    pub(crate) fn with_sink(mut self, sink: Option<StateId>) -> Self {
        self.sink = sink;
        self
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn label(&self, x: StateId) -> Letter {
        self.labels[x]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// The completion sink, if one was added.
    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn input_index(&self, name: &str) -> Option<InputId> {
        self.inputs.iter().position(|s| s == name)
    }

    pub fn param_index(&self, name: &str) -> Option<ParamId> {
        self.params.iter().position(|s| s == name)
    }

    /// γ(x, u, θ)
    pub fn successors(&self, x: StateId, u: InputId, theta: ParamId) -> &[StateId] {
        &self.succ[(x * self.inputs.len() + u) * self.params.len() + theta]
    }

    pub fn is_nonblocking(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    /// First blocking `(x, u)` pair, by name.
    pub fn blocking_pair(&self) -> Option<(String, String)> {
        let per_x = self.inputs.len() * self.params.len();
        self.succ
            .iter()
            .position(Vec::is_empty)
            .map(|i| (self.states[i / per_x].clone(), self.inputs[(i % per_x) / self.params.len()].clone()))
    }

    /// Route every blocking `(x, u, θ)` to an absorbing sink labelled
    /// `sink_label`. An existing sink is reused.
    pub fn make_nonblocking(&self, sink_label: Letter) -> (Pts, Option<StateId>) {
        if self.is_nonblocking() {
            return (self.clone(), self.sink);
        }
        let mut out = self.clone();
        let sink = match self.sink {
            Some(s) => s,
            None => {
                out.states.push(sink_name(&self.states));
                out.labels.push(sink_label);
                out.succ.extend((0..self.inputs.len() * self.params.len()).map(|_| Vec::new()));
                self.states.len()
            }
        };
        for s in &mut out.succ {
            if s.is_empty() {
                s.push(sink);
            }
        }
        out.sink = Some(sink);
        (out, Some(sink))
    }

    /// The transition system obtained by fixing θ.
    pub fn slice(&self, theta: ParamId) -> TransitionSystem {
        TransitionSystem::new(
            self.states.clone(),
            self.inputs.clone(),
            self.alphabet.clone(),
            self.labels.clone(),
            |x, u| self.successors(x, u, theta).to_vec(),
        )
        .expect("slice of a valid PTS")
    }
}

/// Forget the parameter: β(x, u) = ⋃_θ γ(x, u, θ).
pub fn robustify(p: &Pts) -> TransitionSystem {
    TransitionSystem::new(
        p.states.clone(),
        p.inputs.clone(),
        p.alphabet.clone(),
        p.labels.clone(),
        |x, u| (0..p.param_count()).flat_map(|t| p.successors(x, u, t).iter().copied()).collect(),
    )
    .expect("robustification of a valid PTS")
}
