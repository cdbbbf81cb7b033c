//! Compiler from the `G b ∧ GF c ∧ F d` fragment to a single-pair Rabin automaton.
//!
//! States track the reachability obligations still pending and a counter over
//! the recurrence targets. A round ends when the counter wraps with nothing
//! pending; that state is the only member of `I_1`. A safety violation moves to
//! an absorbing trap, the only member of `F_1`.

use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Dra, Letter, LogicError, Ltl, RabinPair};

/// Conjuncts of a formula in the supported fragment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fragment {
    /// Propositional `b` of each `G b`.
    pub safety: Vec<Ltl>,
    /// Propositional `c` of each `GF c`.
    pub recurrence: Vec<Ltl>,
    /// Propositional `d` of each `F d`.
    pub reach: Vec<Ltl>,
}

fn unsupported(f: &Ltl, alphabet: &Alphabet) -> LogicError {
    LogicError::UnsupportedFragment(f.display(alphabet).to_string())
}

fn strip_f(mut f: &Ltl) -> &Ltl {
    while let Ltl::F(inner) = f {
        f = inner;
    }
    f
}

impl Fragment {
    /// Split `f` into its safety, recurrence and reachability conjuncts.
    pub fn of(f: &Ltl, alphabet: &Alphabet) -> Result<Self, LogicError> {
        let mut out = Fragment::default();
        out.top(f, alphabet)?;
        Ok(out)
    }

    fn top(&mut self, f: &Ltl, alphabet: &Alphabet) -> Result<(), LogicError> {
        match f {
            Ltl::True => Ok(()),
            Ltl::And(a, b) => {
                self.top(a, alphabet)?;
                self.top(b, alphabet)
            }
            Ltl::G(g) => self.globally(g, alphabet),
            Ltl::F(g) => {
                let inner = strip_f(g);
                if inner.is_propositional() {
                    self.reach.push(inner.clone());
                    Ok(())
                } else {
                    Err(unsupported(f, alphabet))
                }
            }
            _ => Err(unsupported(f, alphabet)),
        }
    }

    fn globally(&mut self, g: &Ltl, alphabet: &Alphabet) -> Result<(), LogicError> {
        if g.is_propositional() {
            self.safety.push(g.clone());
            return Ok(());
        }
        match g {
            Ltl::And(a, b) => {
                self.globally(a, alphabet)?;
                self.globally(b, alphabet)
            }
            Ltl::G(h) => self.globally(h, alphabet),
            Ltl::F(h) => {
                let mut inner = strip_f(h);
                // GF GF c = GF c
                while let Ltl::G(x) = inner {
                    match &**x {
                        Ltl::F(y) => inner = strip_f(y),
                        _ => break,
                    }
                }
                if inner.is_propositional() {
                    self.recurrence.push(inner.clone());
                    Ok(())
                } else {
                    Err(unsupported(&Ltl::globally(g.clone()), alphabet))
                }
            }
            _ => Err(unsupported(&Ltl::globally(g.clone()), alphabet)),
        }
    }

    fn holds(f: &Ltl, letter: Letter) -> bool {
        f.eval_letter(letter).expect("fragment guards are propositional")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Trap,
    /// End of a round: all obligations met.
    Accept,
    Wait { pending: u32, next: usize },
}

/// Build the Rabin automaton for a fragment formula over `alphabet`.
pub fn compile_to_dra(f: &Ltl, alphabet: &Alphabet) -> Result<Dra, LogicError> {
    if let Some(max) = f.max_atom() {
        if max >= alphabet.len() {
            return Err(LogicError::Undeclared { name: format!("p{max}"), pos: 0 });
        }
    }
    let frag = Fragment::of(f, alphabet)?;
    if frag.reach.len() > 32 {
        return Err(LogicError::UnsupportedFragment("more than 32 F-obligations".into()));
    }
    let m = frag.recurrence.len();
    let all_pending = if frag.reach.is_empty() { 0 } else { u32::MAX >> (32 - frag.reach.len()) };

    let step = |node: Node, letter: Letter| -> Node {
        let (pending, next) = match node {
            Node::Trap => return Node::Trap,
            Node::Accept => (0, 0),
            Node::Wait { pending, next } => (pending, next),
        };
        if !frag.safety.iter().all(|b| Fragment::holds(b, letter)) {
            return Node::Trap;
        }
        let mut pending = pending;
        for (i, d) in frag.reach.iter().enumerate() {
            if Fragment::holds(d, letter) {
                pending &= !(1 << i);
            }
        }
        let mut j = next;
        while j < m && Fragment::holds(&frag.recurrence[j], letter) {
            j += 1;
        }
        match (j == m, pending == 0) {
            (true, true) => Node::Accept,
            (true, false) => Node::Wait { pending, next: 0 },
            (false, _) => Node::Wait { pending, next: j },
        }
    };

    let start = if all_pending == 0 { Node::Accept } else { Node::Wait { pending: all_pending, next: 0 } };
    let mut ids: HashMap<Node, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    while let Some(node) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.letter_count());
        for letter in alphabet.letters() {
            let succ = step(node, letter);
            let id = *ids.entry(succ).or_insert_with(|| {
                order.push(succ);
                queue.push_back(succ);
                order.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
    }

    let fin: Vec<usize> = order.iter().enumerate().filter(|(_, n)| **n == Node::Trap).map(|(i, _)| i).collect();
    let inf: Vec<usize> = order.iter().enumerate().filter(|(_, n)| **n == Node::Accept).map(|(i, _)| i).collect();
    let names = order
        .iter()
        .map(|n| match n {
            Node::Trap => "trap".to_string(),
            Node::Accept => "done".to_string(),
            Node::Wait { pending, next } => format!("wait{next}/{pending:b}"),
        })
        .collect();
    let pair = RabinPair::new(order.len(), &fin, &inf);
    Dra::with_names(alphabet.clone(), 0, delta, vec![pair], names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_ltl, LassoWord};

    fn compile(text: &str, props: &[&str]) -> Dra {
        let a = Alphabet::new(props.iter().copied()).unwrap();
        compile_to_dra(&parse_ltl(text, &a).unwrap(), &a).unwrap()
    }

    #[test]
    fn safety_only_has_two_states() {
        let d = compile("G x_le_1 & G x_ge_m1", &["x_le_1", "x_ge_m1"]);
        assert_eq!(d.state_count(), 2);
        let good = 0;
        let trap = d.step(good, Letter(0b01));
        assert_ne!(trap, good);
        assert_eq!(d.step(good, Letter(0b11)), good);
        assert!(d.pairs()[0].inf.contains(good));
        assert!(d.pairs()[0].fin.contains(trap));
        for l in d.alphabet().letters() {
            assert_eq!(d.step(trap, l), trap);
        }
    }

    #[test]
    fn surveillance_formula() {
        let d = compile("GF A & GF B & G !unsafe", &["A", "B", "unsafe"]);
        assert_eq!(d.pairs().len(), 1);
        // done, waiting-for-A, waiting-for-B, trap
        assert_eq!(d.state_count(), 4);
        let pair = &d.pairs()[0];
        assert_eq!(pair.fin.count_ones(..), 1);
        assert_eq!(pair.inf.count_ones(..), 1);
        let a = d.alphabet().letter(["A"]).unwrap();
        let b = d.alphabet().letter(["B"]).unwrap();
        let u = d.alphabet().letter(["unsafe", "A"]).unwrap();
        assert!(d.accepts(&LassoWord::new(vec![], vec![a, Letter(0), b]).unwrap()));
        assert!(!d.accepts(&LassoWord::new(vec![], vec![a]).unwrap()));
        assert!(!d.accepts(&LassoWord::new(vec![u], vec![a, b]).unwrap()));
    }

    #[test]
    fn gf_and_f_shape() {
        let d = compile("GF pi1 & F pi2", &["pi1", "pi2"]);
        assert_eq!(d.state_count(), 3);
        // same table as the hand-written automaton
        let expect = [[0, 0, 1, 2], [1, 2, 1, 2], [1, 2, 1, 2]];
        for (s, row) in expect.iter().enumerate() {
            for (l, &t) in row.iter().enumerate() {
                assert_eq!(d.step(s, Letter(l as u32)), t, "state {s} letter {l}");
            }
        }
        assert!(d.pairs()[0].inf.contains(2));
        assert_eq!(d.pairs()[0].fin.count_ones(..), 0);
    }

    #[test]
    fn normalizes_nested_operators() {
        let a = Alphabet::new(["p", "q"]).unwrap();
        let f = parse_ltl("G (p & GF q) & FF q & true", &a).unwrap();
        let frag = Fragment::of(&f, &a).unwrap();
        assert_eq!(frag.safety.len(), 1);
        assert_eq!(frag.recurrence.len(), 1);
        assert_eq!(frag.reach.len(), 1);
    }

    #[test]
    fn rejects_outside_fragment() {
        let a = Alphabet::new(["p", "q"]).unwrap();
        for text in ["p U q", "FG p", "p", "G (p U q)", "F (p & G q)", "!G p"] {
            let f = parse_ltl(text, &a).unwrap();
            assert!(
                matches!(compile_to_dra(&f, &a), Err(LogicError::UnsupportedFragment(_))),
                "{text}"
            );
        }
        let f = parse_ltl("G p & FG q", &a).unwrap();
        match compile_to_dra(&f, &a) {
            Err(LogicError::UnsupportedFragment(s)) => assert!(s.contains("q")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivially_true_accepts_everything() {
        let d = compile("true", &["p"]);
        assert_eq!(d.state_count(), 1);
        assert!(d.accepts(&LassoWord::new(vec![], vec![Letter(0)]).unwrap()));
    }
}
