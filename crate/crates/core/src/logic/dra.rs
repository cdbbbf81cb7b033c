use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::{Alphabet, LassoWord, Letter, LogicError};

/// Index of a Rabin automaton state.
pub type DraState = usize;

/// One acceptance pair: `fin` must be visited finitely often, `inf` infinitely often.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RabinPair {
    pub fin: FixedBitSet,
    pub inf: FixedBitSet,
}

impl RabinPair {
    pub fn new(n_states: usize, fin: &[DraState], inf: &[DraState]) -> Self {
        let mut f = FixedBitSet::with_capacity(n_states);
        let mut i = FixedBitSet::with_capacity(n_states);
        fin.iter().for_each(|&s| f.insert(s));
        inf.iter().for_each(|&s| i.insert(s));
        RabinPair { fin: f, inf: i }
    }

    /// Whether a set of infinitely-visited states satisfies this pair.
    pub fn accepts_inf(&self, inf_set: &FixedBitSet) -> bool {
        self.fin.is_disjoint(inf_set) && !self.inf.is_disjoint(inf_set)
    }
}

/// Deterministic Rabin automaton over the letters of an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dra {
    alphabet: Alphabet,
    initial: DraState,
    /// `delta[s][letter]`
    delta: Vec<Vec<DraState>>,
    pairs: Vec<RabinPair>,
    names: Vec<String>,
}

impl Dra {
    pub fn new(
        alphabet: Alphabet,
        initial: DraState,
        delta: Vec<Vec<DraState>>,
        pairs: Vec<RabinPair>,
    ) -> Result<Self, LogicError> {
        let names = (0..delta.len()).map(|s| format!("s{s}")).collect();
        Self::with_names(alphabet, initial, delta, pairs, names)
    }

    pub fn with_names(
        alphabet: Alphabet,
        initial: DraState,
        delta: Vec<Vec<DraState>>,
        pairs: Vec<RabinPair>,
        names: Vec<String>,
    ) -> Result<Self, LogicError> {
        let n = delta.len();
        if n == 0 || initial >= n {
            return Err(LogicError::Dangling { what: "initial".into(), id: initial });
        }
        if pairs.is_empty() {
            return Err(LogicError::NoPairs);
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.letter_count() {
                let missing = Letter(row.len() as u32);
                return Err(LogicError::NonTotal { state: s, letter: alphabet.format_letter(missing) });
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(LogicError::Dangling { what: format!("transition from {s}"), id: bad });
            }
        }
        for p in &pairs {
            let bad = p.fin.ones().chain(p.inf.ones()).find(|&s| s >= n);
            if let Some(bad) = bad {
                return Err(LogicError::Dangling { what: "acceptance pair".into(), id: bad });
            }
        }
        let mut pairs = pairs;
        for p in &mut pairs {
            p.fin.grow(n);
            p.inf.grow(n);
        }
        Ok(Dra { alphabet, initial, delta, pairs, names })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> DraState {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn pairs(&self) -> &[RabinPair] {
        &self.pairs
    }

    pub fn state_name(&self, s: DraState) -> &str {
        &self.names[s]
    }

    pub fn step(&self, s: DraState, letter: Letter) -> DraState {
        self.delta[s][letter.index()]
    }

    /// States visited infinitely often on the run over `w`.
    pub fn inf_states(&self, w: &LassoWord) -> FixedBitSet {
        let mut s = w.prefix().iter().fold(self.initial, |s, &a| self.step(s, a));
        let n = w.cycle().len();
        let mut seen: HashMap<(DraState, usize), usize> = HashMap::new();
        let mut trail = Vec::new();
        let mut pos = 0;
        let loop_start = loop {
            if let Some(&at) = seen.get(&(s, pos)) {
                break at;
            }
            seen.insert((s, pos), trail.len());
            trail.push(s);
            s = self.step(s, w.cycle()[pos]);
            pos = (pos + 1) % n;
        };
        let mut inf = FixedBitSet::with_capacity(self.state_count());
        trail[loop_start..].iter().for_each(|&q| inf.insert(q));
        inf
    }

    pub fn accepts(&self, w: &LassoWord) -> bool {
        let inf = self.inf_states(w);
        self.pairs.iter().any(|p| p.accepts_inf(&inf))
    }

    /// Graphviz rendering with letters grouped per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dra {\n  rankdir=LR;\n  init [shape=point];\n");
        for s in 0..self.state_count() {
            let mut tags = Vec::new();
            for (i, p) in self.pairs.iter().enumerate() {
                if p.fin.contains(s) {
                    tags.push(format!("F{}", i + 1));
                }
                if p.inf.contains(s) {
                    tags.push(format!("I{}", i + 1));
                }
            }
            let label = if tags.is_empty() {
                self.names[s].clone()
            } else {
                format!("{}\\n{}", self.names[s], tags.join(","))
            };
            let _ = writeln!(out, "  q{s} [shape=circle,label=\"{label}\"];");
        }
        let _ = writeln!(out, "  init -> q{};", self.initial);
        for (s, row) in self.delta.iter().enumerate() {
            let mut by_target: Vec<(DraState, Vec<String>)> = Vec::new();
            for (l, &t) in row.iter().enumerate() {
                let text = self.alphabet.format_letter(Letter(l as u32));
                match by_target.iter_mut().find(|(d, _)| *d == t) {
                    Some((_, v)) => v.push(text),
                    None => by_target.push((t, vec![text])),
                }
            }
            for (t, letters) in by_target {
                let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", letters.join(" "));
            }
        }
        out.push_str("}\n");
        out
    }
}
