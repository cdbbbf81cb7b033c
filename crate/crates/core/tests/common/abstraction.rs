use adsyn::abstraction::{Interval, IntervalBox, Quotient, Rational, ScalarParametricAffine};
use num_bigint::BigInt;
use rand::Rng;

const GRAIN: i64 = 1_000_000;

/// A point of `iv` on a grid of 10⁶ steps, endpoints included.
pub fn sample(rng: &mut impl Rng, iv: &Interval) -> Rational {
    let k = rng.gen_range(0..=GRAIN);
    iv.lo() + iv.width() * Rational::new(BigInt::from(k), BigInt::from(GRAIN))
}

/// A random closed sub-interval of `iv` (possibly a point).
pub fn sub_interval(rng: &mut impl Rng, iv: &Interval) -> Interval {
    let (a, b) = (sample(rng, iv), sample(rng, iv));
    if a <= b { Interval::new(a, b) } else { Interval::new(b, a) }.expect("ordered")
}

/// Hull of the successors over every vertex of `qx × qθ × D`. The map is
/// multi-affine in those variables, so its extremes sit on vertices.
pub fn corner_post(sys: &ScalarParametricAffine, qx: &Interval, qt: &IntervalBox, u: &Rational) -> Interval {
    let ends = |iv: &Interval| [iv.lo().clone(), iv.hi().clone()];
    let mut vals = Vec::with_capacity(32);
    for x in ends(qx) {
        for t0 in ends(&qt.0[0]) {
            for t1 in ends(&qt.0[1]) {
                for t2 in ends(&qt.0[2]) {
                    for d in ends(&sys.d) {
                        vals.push(sys.step(&x, &[t0.clone(), t1.clone(), t2.clone()], u, &d));
                    }
                }
            }
        }
    }
    let lo = vals.iter().min().unwrap().clone();
    let hi = vals.iter().max().unwrap().clone();
    Interval::new(lo, hi).unwrap()
}

#[derive(Debug, Default)]
pub struct StepReport {
    pub steps: usize,
    pub misses: Vec<String>,
}

/// Random concrete steps `(x, θ, u, d)`; each successor must lie in a cell
/// predicted by the quotient, or the sink when it leaves the domain, and the
/// start cell's label must match the predicates at `x`.
pub fn concrete_steps(q: &Quotient, rng: &mut impl Rng, n: usize) -> StepReport {
    let sys = &q.system;
    let mut report = StepReport::default();
    for _ in 0..n {
        let x = sample(rng, &sys.x);
        let theta: Vec<Rational> = sys.theta.0.iter().map(|iv| sample(rng, iv)).collect();
        let ui = rng.gen_range(0..q.inputs.len());
        let d = sample(rng, &sys.d);
        let next = sys.step(&x, &theta, &q.inputs[ui], &d);
        let cell = q.cell_of(&x).expect("sampled inside the domain");
        let tc = q.theta_cell_of(&theta).expect("sampled inside Θ");
        let target = q.cell_of(&next).unwrap_or(q.sink());
        report.steps += 1;
        // a cell's label is what every point looked up into it observes
        for (i, p) in q.predicates.iter().enumerate() {
            if q.pts.label(cell).contains(i) != p.holds(&x) {
                report.misses.push(format!("label {} of x={x}", p.name));
            }
        }
        if !q.pts.successors(cell, ui, tc).contains(&target) {
            report.misses.push(format!("x={x} θ={theta:?} u={} d={d} → {next}", q.inputs[ui]));
        }
    }
    report
}

/// `post_box` against `corner_post` on random sub-cells; returns mismatches.
pub fn post_box_mismatches(sys: &ScalarParametricAffine, inputs: &[Rational], rng: &mut impl Rng, n: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for _ in 0..n {
        let qx = sub_interval(rng, &sys.x);
        let qt = IntervalBox(sys.theta.0.iter().map(|iv| sub_interval(rng, iv)).collect());
        let u = &inputs[rng.gen_range(0..inputs.len())];
        let (got, want) = (sys.post_box(&qx, &qt, u), corner_post(sys, &qx, &qt, u));
        if got != want {
            bad.push(format!("{qx} × {qt} u={u}: {got} vs {want}"));
        }
    }
    bad
}
