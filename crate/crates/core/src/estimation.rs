//! Set-valued parameter estimation.
//!
//! The estimator keeps every parameter that explains the observed history;
//! it never discards the true parameter and never grows.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::systems::{InputId, ParamId, Pts, StateId};

/// Non-empty subset of the parameter indices, as a 64-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamSet(u64);

impl ParamSet {
    /// Θ itself.
    pub fn full(n_params: usize) -> Self {
        assert!(n_params > 0 && n_params <= 64, "parameter count {n_params} out of range");
        ParamSet(u64::MAX >> (64 - n_params))
    }

    pub fn singleton(theta: ParamId) -> Self {
        ParamSet(1 << theta)
    }

    pub fn from_bits(bits: u64) -> Self {
        ParamSet(bits)
    }

    pub fn from_ids(ids: impl IntoIterator<Item = ParamId>) -> Self {
        ParamSet(ids.into_iter().fold(0, |acc, t| acc | (1 << t)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, theta: ParamId) -> bool {
        theta < 64 && self.0 & (1 << theta) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ParamSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ParamId> {
        let bits = self.0;
        (0..64).filter(move |&t| bits & (1 << t) != 0)
    }

    pub fn ids(self) -> Vec<ParamId> {
        self.iter().collect()
    }

    /// `{a,b}` using the given parameter names.
    pub fn format(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|t| names[t].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EstimationError {
    #[error("observed history is inconsistent with every parameter (failed at step {step})")]
    Inconsistent { step: usize },
    #[error("history length mismatch: {states} states for {inputs} inputs")]
    LengthMismatch { states: usize, inputs: usize },
    #[error("estimator set is empty")]
    EmptySet,
}

/// ϑ_k: parameters θ with `x_{i+1} ∈ γ(x_i, u_i, θ)` for every recorded step.
pub fn estimate_batch(p: &Pts, states: &[StateId], inputs: &[InputId]) -> Result<ParamSet, EstimationError> {
    if states.len() != inputs.len() + 1 {
        return Err(EstimationError::LengthMismatch { states: states.len(), inputs: inputs.len() });
    }
    let consistent = (0..p.param_count()).filter(|&t| {
        inputs
            .iter()
            .enumerate()
            .all(|(i, &u)| p.successors(states[i], u, t).binary_search(&states[i + 1]).is_ok())
    });
    let set = ParamSet::from_ids(consistent);
    if set.is_empty() {
        // locate the first step at which every parameter had been ruled out
        let mut v = ParamSet::full(p.param_count());
        for (i, &u) in inputs.iter().enumerate() {
            v = refine(p, v, states[i], u, states[i + 1]);
            if v.is_empty() {
                return Err(EstimationError::Inconsistent { step: i });
            }
        }
        return Err(EstimationError::Inconsistent { step: inputs.len().saturating_sub(1) });
    }
    Ok(set)
}

/// `{θ ∈ v | x_next ∈ γ(x, u, θ)}`, possibly empty.
pub(crate) fn refine(p: &Pts, v: ParamSet, x: StateId, u: InputId, x_next: StateId) -> ParamSet {
    ParamSet::from_ids(v.iter().filter(|&t| p.successors(x, u, t).binary_search(&x_next).is_ok()))
}

/// One recursive update ϑ_{k+1} = {θ ∈ ϑ_k | x_{k+1} ∈ γ(x_k, u_k, θ)}.
pub fn estimate_step(
    p: &Pts,
    v: ParamSet,
    x: StateId,
    u: InputId,
    x_next: StateId,
) -> Result<ParamSet, EstimationError> {
    if v.is_empty() {
        return Err(EstimationError::EmptySet);
    }
    let next = refine(p, v, x, u, x_next);
    if next.is_empty() {
        Err(EstimationError::Inconsistent { step: 0 })
    } else {
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_pts as three_state;

    const X1: usize = 0;
    const X2: usize = 1;
    const X3: usize = 2;
    const U1: usize = 0;
    const U2: usize = 1;

    #[test]
    fn empty_history_gives_full_set() {
        let p = three_state();
        assert_eq!(estimate_batch(&p, &[X2], &[]).unwrap(), ParamSet::full(2));
    }

    #[test]
    fn example_batch_histories() {
        let p = three_state();
        assert_eq!(estimate_batch(&p, &[X1, X2], &[U1]).unwrap(), ParamSet::from_ids([0, 1]));
        assert_eq!(estimate_batch(&p, &[X1, X2, X3], &[U1, U1]).unwrap(), ParamSet::singleton(1));
    }

    #[test]
    fn example_recursive_steps() {
        let p = three_state();
        let both = ParamSet::full(2);
        assert_eq!(estimate_step(&p, both, X2, U1, X2).unwrap(), ParamSet::singleton(0));
        assert_eq!(estimate_step(&p, both, X2, U2, X2).unwrap(), both);
        let t2 = ParamSet::singleton(1);
        assert_eq!(estimate_step(&p, t2, X2, U1, X3).unwrap(), t2);
    }

    #[test]
    fn inconsistent_history_is_an_error() {
        let p = three_state();
        // x1 --u1--> x3 is impossible for both parameters
        assert_eq!(estimate_batch(&p, &[X1, X3], &[U1]), Err(EstimationError::Inconsistent { step: 0 }));
        assert_eq!(
            estimate_batch(&p, &[X1, X2, X2, X3], &[U1, U1, U1]),
            Err(EstimationError::Inconsistent { step: 2 })
        );
        assert!(estimate_step(&p, ParamSet::singleton(0), X2, U1, X3).is_err());
        assert_eq!(estimate_step(&p, ParamSet::from_bits(0), X2, U1, X3), Err(EstimationError::EmptySet));
        assert!(matches!(estimate_batch(&p, &[X1], &[U1]), Err(EstimationError::LengthMismatch { .. })));
    }

    #[test]
    fn param_set_basics() {
        let s = ParamSet::from_ids([0, 3]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && !s.contains(1));
        assert!(ParamSet::singleton(3).is_subset(s));
        assert_eq!(s.to_string(), "{0,3}");
        assert_eq!(ParamSet::full(64).len(), 64);
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        assert_eq!(s.format(&names), "{a,d}");
    }
}
