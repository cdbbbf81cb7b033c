use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::logic::{Dra, DraState, Letter};
use crate::systems::{InputId, LabeledSystem, StateId};

use super::game::{Game, GamePair};
use super::SynthesisError;

pub type ProductNode = usize;

/// Reachable part of `system × automaton`.
///
/// `(x, s) --u--> (x', α(s, O(x)))` for `x' ∈ β(x, u)`: the automaton reads
/// the label of the state being left. Ids `0..|X|` are the initial nodes
/// `(x, s0)`.
#[derive(Debug, Clone)]
pub struct ProductAutomaton {
    nodes: Vec<(StateId, DraState)>,
    index: HashMap<(StateId, DraState), ProductNode>,
    game: Game,
    system_states: usize,
    dra_initial: DraState,
}

pub fn build_product<T: LabeledSystem>(t: &T, r: &Dra) -> Result<ProductAutomaton, SynthesisError> {
    if !t.alphabet().is_subset_of(r.alphabet()) {
        return Err(SynthesisError::AlphabetMismatch {
            system: t.alphabet().to_string(),
            automaton: r.alphabet().to_string(),
        });
    }
    let n = t.state_count();
    let nu = t.input_count();
    let letters: Vec<Letter> = (0..n)
        .map(|x| t.alphabet().translate(t.label(x), r.alphabet()).expect("alphabet checked"))
        .collect();
    let s0 = r.initial();
    let mut nodes: Vec<(StateId, DraState)> = (0..n).map(|x| (x, s0)).collect();
    let mut index: HashMap<(StateId, DraState), ProductNode> = nodes.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut queue: VecDeque<ProductNode> = (0..n).collect();
    let mut succ: Vec<Vec<ProductNode>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (x, s) = nodes[id];
        let s_next = r.step(s, letters[x]);
        if succ.len() < (id + 1) * nu {
            succ.resize((id + 1) * nu, Vec::new());
        }
        for u in 0..nu {
            let mut ids: Vec<ProductNode> = t
                .successors(x, u)
                .iter()
                .map(|&x2| {
                    *index.entry((x2, s_next)).or_insert_with(|| {
                        nodes.push((x2, s_next));
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            if ids.is_empty() {
                return Err(SynthesisError::Blocking { state: t.state_name(x), input: t.input_name(u).to_string() });
            }
            succ[id * nu + u] = ids;
        }
    }
    succ.resize(nodes.len() * nu, Vec::new());
    let pairs = r
        .pairs()
        .iter()
        .map(|p| {
            let mut fin = FixedBitSet::with_capacity(nodes.len());
            let mut inf = FixedBitSet::with_capacity(nodes.len());
            for (i, &(_, s)) in nodes.iter().enumerate() {
                fin.set(i, p.fin.contains(s));
                inf.set(i, p.inf.contains(s));
            }
            GamePair { fin, inf }
        })
        .collect();
    let game = Game::new(nodes.len(), nu, succ, pairs);
    log::debug!("product: {} nodes, {} edges", nodes.len(), game.edge_count());
    Ok(ProductAutomaton { nodes, index, game, system_states: n, dra_initial: s0 })
}

impl ProductAutomaton {
    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: ProductNode) -> (StateId, DraState) {
        self.nodes[id]
    }

    pub fn node_id(&self, x: StateId, s: DraState) -> Option<ProductNode> {
        self.index.get(&(x, s)).copied()
    }

    /// Product node `(x, s0)`.
    pub fn initial(&self, x: StateId) -> ProductNode {
        debug_assert!(x < self.system_states);
        x
    }

    pub fn system_states(&self) -> usize {
        self.system_states
    }

    pub fn dra_initial(&self) -> DraState {
        self.dra_initial
    }

    pub fn successors(&self, id: ProductNode, u: InputId) -> &[ProductNode] {
        self.game.successors(id, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive::build_ats;
    use crate::fixtures::{example_dra, example_pts};
    use crate::logic::{compile_to_dra, parse_ltl, Alphabet, RabinPair};
    use crate::systems::TransitionSystem;

    #[test]
    fn single_state_loop_reaches_accepting_state() {
        let a = Alphabet::new(["pi1", "pi2"]).unwrap();
        let t = TransitionSystem::new(vec!["x".into()], vec!["u".into()], a, vec![Letter(3)], |_, _| vec![0]).unwrap();
        let p = build_product(&t, &example_dra()).unwrap();
        assert_eq!(p.node_count(), 2);
        assert_eq!(p.node(1), (0, 2));
        assert_eq!(p.successors(1, 0), &[1]);
        assert!(p.game().pairs()[0].inf.contains(1));
    }

    #[test]
    fn universal_automaton_gives_isomorphic_product() {
        let pts = example_pts();
        let t = pts.slice(0);
        let universal = Dra::new(Alphabet::default(), 0, vec![vec![0]], vec![RabinPair::new(1, &[], &[0])]).unwrap();
        let p = build_product(&t, &universal).unwrap();
        assert_eq!(p.node_count(), t.state_count());
        for x in 0..t.state_count() {
            for u in 0..2 {
                assert_eq!(p.successors(x, u), t.successors(x, u));
            }
        }
    }

    #[test]
    fn ats_times_trivial_safety() {
        let ats = build_ats(&example_pts()).unwrap();
        let a = Alphabet::default();
        let r = compile_to_dra(&parse_ltl("G true", &a).unwrap(), &a).unwrap();
        let p = build_product(&ats, &r).unwrap();
        assert_eq!(p.node_count(), ats.state_count());
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let a = Alphabet::new(["other"]).unwrap();
        let t = TransitionSystem::new(vec!["x".into()], vec!["u".into()], a, vec![Letter(0)], |_, _| vec![0]).unwrap();
        assert!(matches!(build_product(&t, &example_dra()), Err(SynthesisError::AlphabetMismatch { .. })));
    }

    #[test]
    fn labels_translate_between_orderings() {
        // system orders props (pi2, pi1); automaton orders (pi1, pi2)
        let a = Alphabet::new(["pi2", "pi1"]).unwrap();
        let t = TransitionSystem::new(vec!["x".into()], vec!["u".into()], a, vec![Letter(0b01)], |_, _| vec![0]).unwrap();
        let p = build_product(&t, &example_dra()).unwrap();
        // reading {pi2} from s0 moves to s1
        assert_eq!(p.node(1), (0, 1));
    }
}
