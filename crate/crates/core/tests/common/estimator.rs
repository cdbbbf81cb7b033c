use std::collections::BTreeMap;

use adsyn::estimation::{estimate_batch, estimate_step, EstimationError, ParamSet};
use adsyn::logic::{Alphabet, Letter};
use adsyn::systems::Pts;

pub const NX: usize = 3;
pub const NU: usize = 2;
pub const NT: usize = 2;

pub struct Sweep {
    pub histories: usize,
    pub cases: usize,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn pts_from(table: impl Fn(usize, usize, usize) -> Vec<usize>) -> Pts {
    Pts::new(names("x", NX), names("u", NU), names("t", NT), Alphabet::default(), vec![Letter(0); NX], table)
        .expect("valid test model")
}

/// All histories `(states, inputs)` with at most `max_len` steps.
pub fn histories(max_len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = (0..NX).map(|x| (vec![x], vec![])).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (xs, us) in &frontier {
            for u in 0..NU {
                for x in 0..NX {
                    let (mut xs, mut us) = (xs.clone(), us.clone());
                    xs.push(x);
                    us.push(u);
                    next.push((xs, us));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Compare batch and recursive estimation, and check monotonicity.
pub fn check_history(p: &Pts, xs: &[usize], us: &[usize], expected: ParamSet) -> Result<(), String> {
    let batch = estimate_batch(p, xs, us);
    let mut v = Ok(ParamSet::full(NT));
    for i in 0..us.len() {
        v = match v {
            Ok(prev) => match estimate_step(p, prev, xs[i], us[i], xs[i + 1]) {
                Ok(next) if !next.is_subset(prev) => return Err(format!("estimate grew at step {i} of {xs:?}/{us:?}")),
                Ok(next) => Ok(next),
                Err(_) => Err(i),
            },
            e => e,
        };
    }
    match (batch, v) {
        (Ok(b), Ok(r)) if b == r && b == expected => Ok(()),
        (Err(EstimationError::Inconsistent { step }), Err(i)) if expected.is_empty() && step == i => Ok(()),
        (b, r) => Err(format!("{xs:?}/{us:?}: batch {b:?}, recursive {r:?}, expected {expected}")),
    }
}

/// Every PTS with `|X| = 3, |U| = 2, |Θ| = 2`, grouped per history by the
/// membership facts `x' ∈ γ(x, u, θ)` the history queries: the estimators
/// read nothing else, so covering every realizable assignment of those facts
/// covers every PTS.
pub fn exhaustive_sweep(max_len: usize) -> Result<Sweep, String> {
    let hs = histories(max_len);
    let mut cases = 0;
    for (xs, us) in &hs {
        // distinct queried facts (x, u, x') per step, shared across θ
        let mut facts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for i in 0..us.len() {
            let n = facts.len();
            facts.entry((xs[i], us[i], xs[i + 1])).or_insert(n);
        }
        let nbits = facts.len() * NT;
        'assign: for bits in 0u32..1 << nbits {
            let holds = |x: usize, u: usize, x2: usize, t: usize| -> Option<bool> {
                facts.get(&(x, u, x2)).map(|&k| bits >> (k * NT + t) & 1 == 1)
            };
            // unqueried memberships are set; skip assignments leaving a set empty
            let table = |x: usize, u: usize, t: usize| -> Vec<usize> {
                (0..NX).filter(|&x2| holds(x, u, x2, t).unwrap_or(true)).collect()
            };
            for x in 0..NX {
                for u in 0..NU {
                    for t in 0..NT {
                        if table(x, u, t).is_empty() {
                            continue 'assign;
                        }
                    }
                }
            }
            let p = pts_from(table);
            let expected =
                ParamSet::from_ids((0..NT).filter(|&t| (0..us.len()).all(|i| holds(xs[i], us[i], xs[i + 1], t) == Some(true))));
            check_history(&p, xs, us, expected)?;
            cases += 1;
        }
    }
    Ok(Sweep { histories: hs.len(), cases })
}
