//! Turn-based Rabin games: the controller picks an input, the environment
//! resolves non-determinism.
//!
//! The solver evaluates the nested fixpoint
//!
//! ```text
//! Win(P, S, T) = μX. T ∪ ⋃_{i∈P} νY. Win(P∖{i}, S∖F_i, T ∪ (S ∩ CPre X) ∪ (S∖F_i ∩ I_i ∩ CPre Y))
//! Win(∅, S, T) = μZ. T ∪ (S ∩ CPre Z)
//! ```
//!
//! at `Win(all pairs, V, ∅)`. For one pair this is the familiar
//! three-alternation formula. Memoryless strategies are read off the final
//! iterates: a node commits to the first layer of X and the first pair that
//! wins it.

use fixedbitset::FixedBitSet;

use crate::systems::InputId;

pub type Set = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GamePair {
    pub fin: Set,
    pub inf: Set,
}

/// Game graph with `succ[node * inputs + u]` non-empty for every node and input.
#[derive(Debug, Clone)]
pub struct Game {
    nodes: usize,
    inputs: usize,
    succ: Vec<Vec<usize>>,
    pairs: Vec<GamePair>,
}

impl Game {
    /// Panics when a successor set is empty or out of range; games are
    /// built from non-blocking systems.
    pub fn new(nodes: usize, inputs: usize, succ: Vec<Vec<usize>>, pairs: Vec<GamePair>) -> Self {
        assert_eq!(succ.len(), nodes * inputs, "successor table size");
        for s in &succ {
            assert!(!s.is_empty(), "game graph must be non-blocking");
            assert!(s.iter().all(|&v| v < nodes), "successor out of range");
        }
        let mut pairs = pairs;
        for p in &mut pairs {
            p.fin.grow(nodes);
            p.inf.grow(nodes);
        }
        Game { nodes, inputs, succ, pairs }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn successors(&self, n: usize, u: InputId) -> &[usize] {
        &self.succ[n * self.inputs + u]
    }

    pub fn pairs(&self) -> &[GamePair] {
        &self.pairs
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

/// Winning region and a memoryless strategy defined exactly on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    pub winning: Set,
    pub strategy: Vec<Option<InputId>>,
}

impl GameSolution {
    pub fn is_winning(&self, n: usize) -> bool {
        self.winning.contains(n)
    }

    pub fn winning_count(&self) -> usize {
        self.winning.count_ones(..)
    }
}

struct Solver<'a> {
    g: &'a Game,
    /// `(predecessor, input)` for every edge into a node.
    pred: Vec<Vec<(u32, u32)>>,
}

type Strategy = Vec<Option<InputId>>;

impl<'a> Solver<'a> {
    fn new(g: &'a Game) -> Self {
        let mut pred = vec![Vec::new(); g.nodes];
        for n in 0..g.nodes {
            for u in 0..g.inputs {
                for &v in g.successors(n, u) {
                    pred[v].push((n as u32, u as u32));
                }
            }
        }
        Solver { g, pred }
    }

    fn empty(&self) -> Set {
        FixedBitSet::with_capacity(self.g.nodes)
    }

    fn full(&self) -> Set {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    /// Lowest input whose successors all lie in `z`.
    fn witness(&self, n: usize, z: &Set) -> Option<InputId> {
        (0..self.g.inputs).find(|&u| self.g.successors(n, u).iter().all(|&v| z.contains(v)))
    }

    /// Nodes of `within` with an input keeping every successor in `z`.
    fn cpre(&self, z: &Set, within: &Set) -> Set {
        let mut out = self.empty();
        for n in within.ones() {
            if self.witness(n, z).is_some() {
                out.insert(n);
            }
        }
        out
    }

    /// μZ. T ∪ (S ∩ CPre Z) with a rank-decreasing choice for every added node.
    fn attractor(&self, target: &Set, within: &Set) -> (Set, Strategy) {
        let nu = self.g.inputs;
        let mut z = target.clone();
        let mut strat = vec![None; self.g.nodes];
        let mut missing: Vec<u32> = vec![0; self.g.nodes * nu];
        for n in within.ones() {
            if !z.contains(n) {
                for u in 0..nu {
                    missing[n * nu + u] = self.g.successors(n, u).len() as u32;
                }
            }
        }
        let mut queue: Vec<usize> = target.ones().collect();
        while let Some(v) = queue.pop() {
            for &(p, u) in &self.pred[v] {
                let (p, u) = (p as usize, u as usize);
                if z.contains(p) || !within.contains(p) {
                    continue;
                }
                let slot = &mut missing[p * nu + u];
                *slot -= 1;
                if *slot == 0 {
                    z.insert(p);
                    let best = (0..nu).find(|&w| missing[p * nu + w] == 0).unwrap_or(u);
                    strat[p] = Some(best);
                    queue.push(p);
                }
            }
        }
        (z, strat)
    }

    fn win(&self, pairs: &[usize], s: &Set, t: &Set) -> (Set, Strategy) {
        if pairs.is_empty() {
            return self.attractor(t, s);
        }
        let mut x = t.clone();
        let mut strat: Strategy = vec![None; self.g.nodes];
        loop {
            let x_prev = x.clone();
            let escape = self.cpre(&x_prev, s);
            for (k, &i) in pairs.iter().enumerate() {
                let pair = &self.g.pairs[i];
                let mut s_i = s.clone();
                s_i.difference_with(&pair.fin);
                let mut keep = s_i.clone();
                keep.intersect_with(&pair.inf);
                let rest: Vec<usize> = pairs.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &p)| p).collect();

                let mut y = self.full();
                let (y, sub, recur) = loop {
                    let mut goal = t.clone();
                    goal.union_with(&escape);
                    let recur = self.cpre(&y, &keep);
                    goal.union_with(&recur);
                    let (w, sub) = self.win(&rest, &s_i, &goal);
                    if w == y {
                        break (w, sub, recur);
                    }
                    y = w;
                };
                for n in y.ones() {
                    if x_prev.contains(n) || strat[n].is_some() {
                        continue;
                    }
                    strat[n] = if escape.contains(n) {
                        self.witness(n, &x_prev)
                    } else if recur.contains(n) {
                        self.witness(n, &y)
                    } else {
                        sub[n]
                    };
                    debug_assert!(strat[n].is_some(), "winning node without a choice");
                }
                x.union_with(&y);
            }
            if x == x_prev {
                return (x, strat);
            }
        }
    }
}

/// Winning region and memoryless strategy of the controller.
pub fn solve_game(g: &Game) -> GameSolution {
    let solver = Solver::new(g);
    let all: Vec<usize> = (0..g.pairs.len()).collect();
    let (winning, mut strategy) = solver.win(&all, &solver.full(), &solver.empty());
    for (n, s) in strategy.iter_mut().enumerate() {
        if !winning.contains(n) {
            *s = None;
        }
    }
    GameSolution { winning, strategy }
}
