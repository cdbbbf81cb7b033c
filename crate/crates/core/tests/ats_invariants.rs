use adsyn::adaptive::{build_ats, AtsNode};
use adsyn::estimation::{estimate_step, ParamSet};
use adsyn::logic::{Alphabet, Letter};
use adsyn::systems::{LabeledSystem, Pts};
use proptest::prelude::*;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random non-blocking PTS: one successor mask per `(x, u, θ)`.
fn arb_pts() -> impl Strategy<Value = Pts> {
    (1usize..=4, 1usize..=2, 1usize..=3).prop_flat_map(|(nx, nu, nt)| {
        let masks = proptest::collection::vec(1u8..(1 << nx), nx * nu * nt);
        let labels = proptest::collection::vec(0u32..2, nx);
        (Just((nx, nu, nt)), masks, labels).prop_map(|((nx, nu, nt), masks, labels)| {
            let a = Alphabet::new(["goal"]).unwrap();
            let labels = labels.into_iter().map(Letter).collect();
            Pts::new(names("x", nx), names("u", nu), names("t", nt), a, labels, |x, u, t| {
                (0..nx).filter(|&y| masks[(x * nu + u) * nt + t] >> y & 1 == 1).collect()
            })
            .unwrap()
        })
    })
}

/// Every state sequence of length `depth + 1` the θ-slice allows under `us`.
fn trajectories(p: &Pts, theta: usize, x0: usize, us: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![x0]];
    for &u in us {
        out = out
            .into_iter()
            .flat_map(|tr| {
                let last = *tr.last().unwrap();
                p.successors(last, u, theta).iter().map(move |&y| {
                    let mut t = tr.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

fn input_words(nu: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..depth {
        out = out.into_iter().flat_map(|w: Vec<usize>| (0..nu).map(move |u| [w.clone(), vec![u]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edges_follow_the_estimator(p in arb_pts()) {
        let ats = build_ats(&p).unwrap();
        prop_assert!(ats.node_count() as u128 <= ats.node_bound());
        for id in 0..ats.node_count() {
            let n = ats.node(id);
            prop_assert!(!n.params.is_empty());
            prop_assert_eq!(ats.label(id), p.label(n.x));
            for u in 0..p.input_count() {
                let succ = ats.successors(id, u);
                prop_assert!(!succ.is_empty());
                // exactly the states some θ ∈ v allows
                let mut xs: Vec<usize> = n.params.iter().flat_map(|t| p.successors(n.x, u, t).to_vec()).collect();
                xs.sort_unstable();
                xs.dedup();
                let mut got: Vec<usize> = succ.iter().map(|&j| ats.node(j).x).collect();
                got.sort_unstable();
                prop_assert_eq!(&got, &xs);
                for &j in succ {
                    let m = ats.node(j);
                    prop_assert!(m.params.is_subset(n.params));
                    prop_assert_eq!(estimate_step(&p, n.params, n.x, u, m.x).unwrap(), m.params);
                }
            }
        }
    }

    #[test]
    fn every_concrete_run_is_an_ats_trace(p in arb_pts()) {
        let ats = build_ats(&p).unwrap();
        let full = ParamSet::full(p.param_count());
        for us in input_words(p.input_count(), 4) {
            for theta in 0..p.param_count() {
                for x0 in 0..p.state_count() {
                    for tr in trajectories(&p, theta, x0, &us) {
                        let mut node = ats.node_id(AtsNode { x: x0, params: full }).unwrap();
                        for (k, &u) in us.iter().enumerate() {
                            let next = ats.successors(node, u).iter().copied().find(|&j| ats.node(j).x == tr[k + 1]);
                            prop_assert!(next.is_some(), "run {:?} under {:?} leaves the ATS", tr, us);
                            node = next.unwrap();
                            prop_assert!(ats.node(node).params.contains(theta));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_parameter_gives_isomorphic_system(p in arb_pts()) {
        prop_assume!(p.param_count() == 1);
        let ats = build_ats(&p).unwrap();
        prop_assert_eq!(ats.node_count(), p.state_count());
        for x in 0..p.state_count() {
            for u in 0..p.input_count() {
                let got: Vec<usize> = ats.successors(x, u).iter().map(|&j| ats.node(j).x).collect();
                prop_assert_eq!(got, p.successors(x, u, 0).to_vec());
            }
        }
    }
}
