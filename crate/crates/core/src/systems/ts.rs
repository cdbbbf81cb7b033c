use crate::logic::{Alphabet, Letter};

use super::{check_unique, sink_name, sorted_unique, InputId, LabeledSystem, StateId, SystemsError};

/// Finite non-deterministic transition system with labelled states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    states: Vec<String>,
    inputs: Vec<String>,
    alphabet: Alphabet,
    labels: Vec<Letter>,
    /// `succ[x * |U| + u]`, sorted and deduplicated.
    succ: Vec<Vec<StateId>>,
}

impl TransitionSystem {
    /// Builds a system from a successor function. Empty successor sets are
    /// allowed here; see [`TransitionSystem::make_nonblocking`].
    pub fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        alphabet: Alphabet,
        labels: Vec<Letter>,
        mut successors: impl FnMut(StateId, InputId) -> Vec<StateId>,
    ) -> Result<Self, SystemsError> {
        if states.is_empty() {
            return Err(SystemsError::Empty("state"));
        }
        if inputs.is_empty() {
            return Err(SystemsError::Empty("input"));
        }
        check_unique("state", &states)?;
        check_unique("input", &inputs)?;
        if labels.len() != states.len() {
            return Err(SystemsError::InvalidPartition("label count differs from state count".into()));
        }
        let n = states.len();
        let mut succ = Vec::with_capacity(n * inputs.len());
        for x in 0..n {
            for u in 0..inputs.len() {
                let s = sorted_unique(successors(x, u));
                if let Some(&bad) = s.last().filter(|&&b| b >= n) {
                    return Err(SystemsError::UnknownName { kind: "state id", name: bad.to_string() });
                }
                succ.push(s);
            }
        }
        Ok(TransitionSystem { states, inputs, alphabet, labels, succ })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn is_nonblocking(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    /// Route every blocking `(x, u)` to a fresh absorbing sink labelled `sink_label`.
    ///
    /// Returns the system unchanged and `None` when nothing blocks.
    pub fn make_nonblocking(&self, sink_label: Letter) -> (TransitionSystem, Option<StateId>) {
        if self.is_nonblocking() {
            return (self.clone(), None);
        }
        let sink = self.states.len();
        let mut out = self.clone();
        out.states.push(sink_name(&self.states));
        out.labels.push(sink_label);
        for s in &mut out.succ {
            if s.is_empty() {
                s.push(sink);
            }
        }
        out.succ.extend((0..self.inputs.len()).map(|_| vec![sink]));
        (out, Some(sink))
    }

    /// Every finite run `x_0 u_0 x_1 ... x_len` has `x_{k+1} ∈ β(x_k, u_k)`.
    pub fn has_trace(&self, states: &[StateId], inputs: &[InputId]) -> bool {
        states.len() == inputs.len() + 1
            && inputs
                .iter()
                .enumerate()
                .all(|(k, &u)| self.successors(states[k], u).binary_search(&states[k + 1]).is_ok())
    }

    /// View as a single-parameter PTS.
    pub fn into_pts(self, param: &str) -> super::Pts {
        let nu = self.inputs.len();
        let succ = self.succ;
        super::Pts::new(self.states, self.inputs, vec![param.to_string()], self.alphabet, self.labels, |x, u, _| {
            succ[x * nu + u].clone()
        })
        .expect("a valid transition system is a valid one-parameter PTS")
    }
}

impl LabeledSystem for TransitionSystem {
    fn state_count(&self) -> usize {
        self.states.len()
    }

    fn input_count(&self) -> usize {
        self.inputs.len()
    }

    fn successors(&self, x: StateId, u: InputId) -> &[StateId] {
        &self.succ[x * self.inputs.len() + u]
    }

    fn label(&self, x: StateId) -> Letter {
        self.labels[x]
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn state_name(&self, x: StateId) -> String {
        self.states[x].clone()
    }

    fn input_name(&self, u: InputId) -> &str {
        &self.inputs[u]
    }
}
