//! Independent verification of a game solution.

use fixedbitset::FixedBitSet;

use super::game::{Game, GameSolution, Set};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyViolation {
    /// Strategy undefined on a winning node, or defined off it.
    Domain(usize),
    /// The chosen input can leave the winning region.
    Escapes { node: usize, to: usize },
    /// The environment can loop forever through these nodes without
    /// satisfying any pair.
    RejectingCycle(Vec<usize>),
}

/// Strongly connected components of the graph restricted to `alive`.
fn sccs(alive: &Set, next: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let n = alive.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = FixedBitSet::with_capacity(n);
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in alive.ones() {
        if index[root] != usize::MAX {
            continue;
        }
        // (node, successor list, cursor)
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack.insert(root);
        call.push((root, next(root), 0));
        while let Some((v, succ, pos)) = call.last_mut() {
            let v = *v;
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if !alive.contains(w) {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    call.push((w, next(w), 0));
                } else if on_stack.contains(w) {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = stack.pop() {
                        on_stack.set(w, false);
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// A strongly connected set inside `alive` that satisfies no pair, if any.
fn rejecting_cycle(g: &Game, alive: Set, next: &dyn Fn(usize) -> Vec<usize>) -> Option<Vec<usize>> {
    for comp in sccs(&alive, next) {
        let nontrivial = comp.len() > 1 || next(comp[0]).contains(&comp[0]);
        if !nontrivial {
            continue;
        }
        let mut members = FixedBitSet::with_capacity(alive.len());
        comp.iter().for_each(|&v| members.insert(v));
        let mut shrunk = members.clone();
        let mut accepted = false;
        for p in g.pairs() {
            if p.fin.is_disjoint(&members) && !p.inf.is_disjoint(&members) {
                accepted = true;
                shrunk.difference_with(&p.inf);
            }
        }
        if !accepted {
            return Some(comp);
        }
        if let Some(bad) = rejecting_cycle(g, shrunk, next) {
            return Some(bad);
        }
    }
    None
}

/// Check closure of the winning region under the strategy and that every
/// play it allows satisfies the Rabin condition.
pub fn verify_solution(g: &Game, sol: &GameSolution) -> Result<(), StrategyViolation> {
    for n in 0..g.node_count() {
        if sol.winning.contains(n) != sol.strategy[n].is_some() {
            return Err(StrategyViolation::Domain(n));
        }
    }
    for n in sol.winning.ones() {
        let u = sol.strategy[n].expect("checked");
        if let Some(&to) = g.successors(n, u).iter().find(|&&v| !sol.winning.contains(v)) {
            return Err(StrategyViolation::Escapes { node: n, to });
        }
    }
    let next = |v: usize| -> Vec<usize> {
        match sol.strategy[v] {
            Some(u) => g.successors(v, u).to_vec(),
            None => Vec::new(),
        }
    };
    match rejecting_cycle(g, sol.winning.clone(), &next) {
        Some(c) => Err(StrategyViolation::RejectingCycle(c)),
        None => Ok(()),
    }
}
