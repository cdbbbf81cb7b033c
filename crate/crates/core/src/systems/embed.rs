use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use crate::logic::{Alphabet, Letter};

use super::{sink_name, Pts, StateId, SystemsError};

type Update<'a, S, U, P, D> = Box<dyn Fn(&S, &U, &P, &D) -> S + 'a>;
type Predicate<'a, S> = Box<dyn Fn(&S) -> bool + 'a>;

/// Finite discrete-time dynamics `x⁺ = F(x, u, θ, d)` with Boolean outputs.
///
/// Names of states, inputs and parameters come from their `Display` impls.
pub struct DynamicsSpec<'a, S, U, P, D> {
    pub states: Vec<S>,
    pub inputs: Vec<U>,
    pub params: Vec<P>,
    pub disturbances: Vec<D>,
    pub update: Update<'a, S, U, P, D>,
    /// Output predicates `μ_i`, one proposition each.
    pub predicates: Vec<(String, Predicate<'a, S>)>,
    /// Propositions carried by the sink that absorbs out-of-domain moves.
    pub sink_label: Vec<String>,
}

/// Embed finite dynamics into a PTS: γ(x,u,θ) = {F(x,u,θ,d) | d ∈ D} and
/// O(x) = {π_i | μ_i(x)}. Successors outside `states` go to a sink.
pub fn embed<S, U, P, D>(dyn_spec: &DynamicsSpec<'_, S, U, P, D>) -> Result<Pts, SystemsError>
where
    S: Eq + Hash + Display,
    U: Display,
    P: Display,
{
    if dyn_spec.disturbances.is_empty() {
        return Err(SystemsError::Empty("disturbance"));
    }
    if dyn_spec.params.is_empty() {
        return Err(SystemsError::Empty("parameter"));
    }
    if dyn_spec.states.is_empty() {
        return Err(SystemsError::Empty("state"));
    }
    let alphabet = Alphabet::new(dyn_spec.predicates.iter().map(|(n, _)| n.clone()))?;
    let index: HashMap<&S, StateId> = dyn_spec.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = dyn_spec.states.len();
    let (nu, np) = (dyn_spec.inputs.len(), dyn_spec.params.len());

    let mut table: Vec<Vec<StateId>> = Vec::with_capacity(n * nu * np);
    let mut uses_sink = false;
    for x in &dyn_spec.states {
        for u in &dyn_spec.inputs {
            for t in &dyn_spec.params {
                let succ = dyn_spec
                    .disturbances
                    .iter()
                    .map(|d| {
                        let next = (dyn_spec.update)(x, u, t, d);
                        index.get(&next).copied().unwrap_or_else(|| {
                            uses_sink = true;
                            n
                        })
                    })
                    .collect();
                table.push(succ);
            }
        }
    }

    let mut names: Vec<String> = dyn_spec.states.iter().map(ToString::to_string).collect();
    let mut labels: Vec<Letter> = dyn_spec
        .states
        .iter()
        .map(|x| {
            dyn_spec
                .predicates
                .iter()
                .enumerate()
                .filter(|(_, (_, mu))| mu(x))
                .fold(Letter::EMPTY, |l, (i, _)| l.with(i))
        })
        .collect();
    let sink = uses_sink.then(|| {
        names.push(sink_name(&names));
        n
    });
    if sink.is_some() {
        labels.push(alphabet.letter(&dyn_spec.sink_label)?);
    }
    let inputs = dyn_spec.inputs.iter().map(ToString::to_string).collect();
    let params = dyn_spec.params.iter().map(ToString::to_string).collect();
    let pts = Pts::new(names, inputs, params, alphabet, labels, |x, u, t| {
        if Some(x) == sink {
            vec![x]
        } else {
            table[(x * nu + u) * np + t].clone()
        }
    })?;
    Ok(pts.with_sink(sink))
}
