//! Small reference models shared by tests, docs and the CLI.

use crate::logic::{Alphabet, Dra, Letter, RabinPair};
use crate::systems::Pts;

/// Three states `x1..x3`, inputs `u1, u2`, parameters `t1, t2`.
///
/// Under `t1`, `x2` is absorbing and `x3 --u2--> x1`; under `t2`, `x3` is
/// absorbing and `x2 --u1--> x3`. Both agree on `x1`.
pub fn example_pts() -> Pts {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let table = |x: usize, u: usize, t: usize| -> Vec<usize> {
        match (t, x, u) {
            (_, 0, 0) => vec![1],
            (_, 0, 1) => vec![2],
            (0, 1, _) => vec![1],
            (0, 2, 0) => vec![2],
            (0, 2, 1) => vec![0],
            (1, 1, 0) => vec![2],
            (1, 1, 1) => vec![1],
            (1, 2, _) => vec![2],
            _ => unreachable!(),
        }
    };
    Pts::new(s(&["x1", "x2", "x3"]), s(&["u1", "u2"]), s(&["t1", "t2"]), Alphabet::default(), vec![Letter(0); 3], table)
        .expect("fixture is valid")
}

/// Hand-written three-state automaton for `GF pi1 & F pi2` with
/// `F_1 = {s0}` and `I_1 = {s2}`.
pub fn example_dra() -> Dra {
    let a = Alphabet::new(["pi1", "pi2"]).expect("fixture alphabet");
    // letters: 0={}, 1={pi1}, 2={pi2}, 3={pi1,pi2}
    let delta = vec![vec![0, 0, 1, 2], vec![1, 2, 1, 2], vec![1, 2, 1, 2]];
    Dra::new(a, 0, delta, vec![RabinPair::new(3, &[0], &[2])]).expect("fixture is valid")
}
