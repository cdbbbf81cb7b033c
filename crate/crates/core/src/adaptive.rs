//! Adaptive transition systems: the reachable part of `X × (2^Θ \ ∅)` where
//! each move also refines the parameter estimate.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::estimation::{refine, ParamSet};
use crate::logic::{Alphabet, Letter};
use crate::systems::{InputId, LabeledSystem, Pts, StateId, TransitionSystem};

pub type NodeId = usize;

/// A state of the adaptive system: plant state and current estimator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtsNode {
    pub x: StateId,
    pub params: ParamSet,
}

#[derive(Debug, Error)]
pub enum AdaptiveError {
    #[error("PTS is blocking at ({x}, {u}); complete it first")]
    Blocking { x: String, u: String },
}

/// Successors of `node` under `u`: every `x'` some θ in the estimate allows,
/// paired with the estimate refined by the observed step.
pub fn ats_successors(p: &Pts, node: AtsNode, u: InputId) -> Vec<AtsNode> {
    let mut next: Vec<StateId> = node.params.iter().flat_map(|t| p.successors(node.x, u, t).iter().copied()).collect();
    next.sort_unstable();
    next.dedup();
    next.into_iter()
        .map(|x2| AtsNode { x: x2, params: refine(p, node.params, node.x, u, x2) })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Ats {
    pts: Pts,
    nodes: Vec<AtsNode>,
    index: HashMap<AtsNode, NodeId>,
    /// `succ[node * |U| + u]`, sorted node ids.
    succ: Vec<Vec<NodeId>>,
}

/// Initial nodes of the worklist closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Seeds {
    /// Only `(x, Θ)`: the controller starts knowing nothing.
    Uninformed,
    /// `(x, Θ)` and every `(x, {θ})`, so known-parameter starts are included.
    #[default]
    UninformedAndKnown,
}

/// Worklist closure with the default seeds.
pub fn build_ats(p: &Pts) -> Result<Ats, AdaptiveError> {
    build_ats_from(p, Seeds::default())
}

/// Worklist closure from the given seeds. Nodes are numbered in discovery
/// order; `(x, Θ)` always gets id `x`.
pub fn build_ats_from(p: &Pts, seeds: Seeds) -> Result<Ats, AdaptiveError> {
    if let Some((x, u)) = p.blocking_pair() {
        return Err(AdaptiveError::Blocking { x, u });
    }
    let full = ParamSet::full(p.param_count());
    let mut nodes: Vec<AtsNode> = (0..p.state_count()).map(|x| AtsNode { x, params: full }).collect();
    if seeds == Seeds::UninformedAndKnown && p.param_count() > 1 {
        for x in 0..p.state_count() {
            nodes.extend((0..p.param_count()).map(|t| AtsNode { x, params: ParamSet::singleton(t) }));
        }
    }
    let mut index: HashMap<AtsNode, NodeId> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut queue: VecDeque<NodeId> = (0..nodes.len()).collect();
    let nu = p.input_count();
    let mut succ: Vec<Vec<NodeId>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let node = nodes[id];
        if succ.len() < (id + 1) * nu {
            succ.resize((id + 1) * nu, Vec::new());
        }
        for u in 0..nu {
            let mut ids: Vec<NodeId> = ats_successors(p, node, u)
                .into_iter()
                .map(|n| {
                    *index.entry(n).or_insert_with(|| {
                        nodes.push(n);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            succ[id * nu + u] = ids;
        }
    }
    succ.resize(nodes.len() * nu, Vec::new());
    log::debug!("ATS: {} nodes from {} states, {} parameters", nodes.len(), p.state_count(), p.param_count());
    Ok(Ats { pts: p.clone(), nodes, index, succ })
}

impl Ats {
    pub fn pts(&self) -> &Pts {
        &self.pts
    }

    pub fn nodes(&self) -> &[AtsNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> AtsNode {
        self.nodes[id]
    }

    pub fn node_id(&self, node: AtsNode) -> Option<NodeId> {
        self.index.get(&node).copied()
    }

    /// Id of the seed `(x, Θ)`.
    pub fn seed(&self, x: StateId) -> NodeId {
        x
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// `|X| · (2^|Θ| − 1)`, saturating.
    pub fn node_bound(&self) -> u128 {
        let np = self.pts.param_count() as u32;
        (self.pts.state_count() as u128).saturating_mul((1u128 << np) - 1)
    }

    pub fn node_label(&self, id: NodeId) -> String {
        let n = self.nodes[id];
        format!("{},{}", self.pts.states()[n.x], n.params.format(self.pts.params()))
    }

    /// The adaptive system as a plain transition system with composite state names.
    pub fn to_transition_system(&self) -> TransitionSystem {
        let names = (0..self.nodes.len()).map(|i| self.node_label(i)).collect();
        let labels = self.nodes.iter().map(|n| self.pts.label(n.x)).collect();
        TransitionSystem::new(names, self.pts.inputs().to_vec(), self.pts.alphabet().clone(), labels, |x, u| {
            self.successors(x, u).to_vec()
        })
        .expect("ATS is a valid transition system")
    }

    /// JSON in the PTS schema with a single placeholder parameter.
    pub fn to_json(&self) -> String {
        self.to_transition_system().into_pts("adaptive").to_json()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ats {\n  rankdir=LR;\n");
        for i in 0..self.nodes.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.node_label(i));
        }
        let nu = self.pts.input_count();
        for i in 0..self.nodes.len() {
            let mut by_target: Vec<(NodeId, Vec<&str>)> = Vec::new();
            for u in 0..nu {
                for &j in self.successors(i, u) {
                    match by_target.iter_mut().find(|(t, _)| *t == j) {
                        Some((_, us)) => us.push(&self.pts.inputs()[u]),
                        None => by_target.push((j, vec![&self.pts.inputs()[u]])),
                    }
                }
            }
            for (j, us) in by_target {
                let _ = writeln!(out, "  n{i} -> n{j} [label=\"{}\"];", us.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl LabeledSystem for Ats {
    fn state_count(&self) -> usize {
        self.nodes.len()
    }

    fn input_count(&self) -> usize {
        self.pts.input_count()
    }

    fn successors(&self, x: StateId, u: InputId) -> &[StateId] {
        &self.succ[x * self.pts.input_count() + u]
    }

    fn label(&self, x: StateId) -> Letter {
        self.pts.label(self.nodes[x].x)
    }

    fn alphabet(&self) -> &Alphabet {
        self.pts.alphabet()
    }

    fn state_name(&self, x: StateId) -> String {
        self.node_label(x)
    }

    fn input_name(&self, u: InputId) -> &str {
        &self.pts.inputs()[u]
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::fixtures::example_pts as three_state;

    fn n(x: usize, ids: &[usize]) -> AtsNode {
        AtsNode { x, params: ParamSet::from_ids(ids.iter().copied()) }
    }

    #[test]
    fn example_successor_queries() {
        let p = three_state();
        assert_eq!(ats_successors(&p, n(0, &[0, 1]), 1), vec![n(2, &[0, 1])]);
        assert_eq!(ats_successors(&p, n(2, &[0, 1]), 1), vec![n(0, &[0]), n(2, &[1])]);
        assert_eq!(ats_successors(&p, n(1, &[0, 1]), 0), vec![n(1, &[0]), n(2, &[1])]);
        assert_eq!(ats_successors(&p, n(1, &[1]), 0), vec![n(2, &[1])]);
    }

    #[test]
    fn example_full_ats() {
        let ats = build_ats(&three_state()).unwrap();
        assert_eq!(ats.state_count(), 9);
        let mut edges = BTreeSet::new();
        for i in 0..ats.state_count() {
            for u in 0..2 {
                for &j in ats.successors(i, u) {
                    edges.insert((ats.node(i), u, ats.node(j)));
                }
            }
        }
        let (b, t1, t2) = (&[0, 1][..], &[0][..], &[1][..]);
        let expect: BTreeSet<_> = [
            (n(0, b), 0, n(1, b)),
            (n(0, b), 1, n(2, b)),
            (n(1, b), 1, n(1, b)),
            (n(1, b), 0, n(1, t1)),
            (n(1, b), 0, n(2, t2)),
            (n(2, b), 0, n(2, b)),
            (n(2, b), 1, n(2, t2)),
            (n(2, b), 1, n(0, t1)),
            (n(0, t1), 0, n(1, t1)),
            (n(0, t1), 1, n(2, t1)),
            (n(1, t1), 0, n(1, t1)),
            (n(1, t1), 1, n(1, t1)),
            (n(2, t1), 0, n(2, t1)),
            (n(2, t1), 1, n(0, t1)),
            (n(0, t2), 0, n(1, t2)),
            (n(0, t2), 1, n(2, t2)),
            (n(1, t2), 0, n(2, t2)),
            (n(1, t2), 1, n(1, t2)),
            (n(2, t2), 0, n(2, t2)),
            (n(2, t2), 1, n(2, t2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(edges, expect);
    }

    #[test]
    fn uninformed_seeds_reach_seven_nodes() {
        let ats = build_ats_from(&three_state(), Seeds::Uninformed).unwrap();
        assert_eq!(ats.state_count(), 7);
        assert!(ats.node_id(n(0, &[1])).is_none());
        assert!(ats.node_id(n(1, &[1])).is_none());
    }

    #[test]
    fn single_parameter_mirrors_plain_system() {
        let p = three_state().slice(0).into_pts("only");
        let ats = build_ats(&p).unwrap();
        assert_eq!(ats.state_count(), p.state_count());
        for i in 0..ats.state_count() {
            assert_eq!(ats.node(i).x, i);
            for u in 0..2 {
                assert_eq!(ats.successors(i, u), p.successors(i, u, 0));
            }
        }
    }

    #[test]
    fn blocking_pts_rejected() {
        let p = Pts::new(vec!["a".into()], vec!["u".into()], vec!["t".into()], Alphabet::default(), vec![Letter(0)], |_, _, _| {
            vec![]
        })
        .unwrap();
        assert!(matches!(build_ats(&p), Err(AdaptiveError::Blocking { .. })));
    }

    #[test]
    fn exports() {
        let ats = build_ats(&three_state()).unwrap();
        let dot = ats.to_dot();
        assert!(dot.contains("x2,{t1,t2}"));
        let json = ats.to_json();
        let back = Pts::from_json(&json, false, &[]).unwrap();
        assert_eq!(back.state_count(), 9);
    }
}
