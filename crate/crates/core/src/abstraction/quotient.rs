use crate::logic::{Alphabet, Letter};
use crate::systems::{Pts, StateId};

use super::{format_rational, AbstractionError, Interval, IntervalBox, Rational, ScalarParametricAffine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Le,
    Ge,
}

/// Output predicate `x ≤ t` or `x ≥ t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub op: Comparison,
    pub threshold: Rational,
}

impl Predicate {
    pub fn holds(&self, x: &Rational) -> bool {
        match self.op {
            Comparison::Le => x <= &self.threshold,
            Comparison::Ge => x >= &self.threshold,
        }
    }

    /// `Some(value)` when the predicate is constant on the cell as seen by
    /// point lookup: `[lo, hi)`, or `[lo, hi]` when `hi` is the domain top.
    fn on_cell(&self, c: &Interval, top: &Rational) -> Option<bool> {
        let t = &self.threshold;
        let closed = c.hi() == top;
        let (all, none) = match self.op {
            Comparison::Le => (c.hi() <= t, c.lo() > t),
            Comparison::Ge => (c.lo() >= t, if closed { c.hi() < t } else { c.hi() <= t }),
        };
        match (all, none) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }
}

/// A finite quotient of a scalar parametric affine system.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub system: ScalarParametricAffine,
    pub x_cells: Vec<Interval>,
    pub theta_cells: Vec<IntervalBox>,
    pub inputs: Vec<Rational>,
    pub predicates: Vec<Predicate>,
    pub pts: Pts,
}

impl Quotient {
    pub fn sink(&self) -> StateId {
        self.x_cells.len()
    }

    /// Cell containing `x`, cells taken half-open `[lo, hi)` except at the
    /// top of the domain. `None` outside the domain.
    pub fn cell_of(&self, x: &Rational) -> Option<StateId> {
        let top = self.system.x.hi();
        self.x_cells.iter().position(|c| owns(c, x, top))
    }

    /// Parameter cell containing θ, same convention per axis.
    pub fn theta_cell_of(&self, theta: &[Rational]) -> Option<usize> {
        let dom = &self.system.theta.0;
        self.theta_cells
            .iter()
            .position(|b| b.dim() == theta.len() && b.0.iter().zip(theta).zip(dom).all(|((c, v), d)| owns(c, v, d.hi())))
    }
}

fn owns(c: &Interval, v: &Rational, top: &Rational) -> bool {
    c.lo() <= v && (v < c.hi() || (v == c.hi() && c.hi() == top))
}

/// Quotient PTS: states are `x_cells` plus an out-of-domain sink, parameters
/// are `theta_cells`, inputs the quantized values. `q'` succeeds `(q, u, qθ)`
/// when Post meets `q'` as closed sets; the sink succeeds when Post leaves
/// the state domain.
pub fn build_quotient_pts(
    sys: &ScalarParametricAffine,
    x_cells: Vec<Interval>,
    theta_cells: Vec<IntervalBox>,
    inputs: Vec<Rational>,
    predicates: Vec<Predicate>,
) -> Result<Quotient, AbstractionError> {
    if x_cells.is_empty() || theta_cells.is_empty() || inputs.is_empty() {
        return Err(AbstractionError::NoCells);
    }
    for u in &inputs {
        if !sys.u.contains(u) {
            return Err(AbstractionError::InputOutOfDomain(format_rational(u)));
        }
    }
    for b in &theta_cells {
        if b.dim() != 3 {
            return Err(AbstractionError::Dimension { expected: 3, got: b.dim() });
        }
    }
    let alphabet = Alphabet::new(predicates.iter().map(|p| p.name.clone()))?;
    let mut labels = Vec::with_capacity(x_cells.len() + 1);
    for c in &x_cells {
        let mut l = Letter::EMPTY;
        for (i, p) in predicates.iter().enumerate() {
            match p.on_cell(c, sys.x.hi()) {
                Some(true) => l = l.with(i),
                Some(false) => {}
                None => return Err(AbstractionError::Straddle { cell: c.to_string(), predicate: p.name.clone() }),
            }
        }
        labels.push(l);
    }
    labels.push(Letter::EMPTY);

    let sink = x_cells.len();
    let mut states: Vec<String> = (0..x_cells.len()).map(|i| format!("q{i}")).collect();
    states.push(crate::systems::sink_name(&states));
    let input_names = inputs.iter().map(format_rational).collect();
    let param_names = (0..theta_cells.len()).map(|i| format!("p{i}")).collect();
    let pts = Pts::new(states, input_names, param_names, alphabet, labels, |x, u, t| {
        if x == sink {
            return vec![sink];
        }
        let post = sys.post_box(&x_cells[x], &theta_cells[t], &inputs[u]);
        let mut succ: Vec<StateId> = (0..x_cells.len()).filter(|&q| post.intersects(&x_cells[q])).collect();
        if !post.is_subset(&sys.x) {
            succ.push(sink);
        }
        succ
    })?
    .with_sink(Some(sink));
    Ok(Quotient { system: sys.clone(), x_cells, theta_cells, inputs, predicates, pts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::{grid_boxes, grid_partition, parse_rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(r(lo), r(hi)).unwrap()
    }

    fn identity_system() -> ScalarParametricAffine {
        let theta = IntervalBox(vec![iv("0", "0"), iv("0", "0"), iv("0", "0")]);
        ScalarParametricAffine::new(iv("-1", "1"), theta, iv("0", "0"), iv("0", "0")).unwrap()
    }

    #[test]
    fn identity_dynamics_touch_neighbours_only_at_shared_endpoints() {
        let sys = identity_system();
        let cells = grid_partition(&sys.x, 4).unwrap();
        let q = build_quotient_pts(&sys, cells, vec![sys.theta.clone()], vec![r("0")], vec![]).unwrap();
        // closed cells: [-0.5, 0] also meets [-1,-0.5] and [0,0.5]
        assert_eq!(q.pts.successors(0, 0, 0), &[0, 1]);
        assert_eq!(q.pts.successors(1, 0, 0), &[0, 1, 2]);
        assert_eq!(q.pts.successors(3, 0, 0), &[2, 3]);
        assert_eq!(q.pts.successors(4, 0, 0), &[4]);
        assert_eq!(q.pts.sink(), Some(4));
    }

    #[test]
    fn leaving_the_domain_reaches_the_sink() {
        let mut sys = identity_system();
        sys.theta = IntervalBox(vec![iv("0", "0"), iv("0", "0"), iv("0.1", "0.1")]);
        let cells = grid_partition(&sys.x, 10).unwrap();
        let preds = vec![
            Predicate { name: "x_le_1".into(), op: Comparison::Le, threshold: r("1") },
            Predicate { name: "x_ge_m1".into(), op: Comparison::Ge, threshold: r("-1") },
        ];
        let q = build_quotient_pts(&sys, cells, vec![sys.theta.clone()], vec![r("0")], preds).unwrap();
        assert_eq!(q.pts.successors(9, 0, 0), &[9, 10]);
        assert_eq!(q.pts.successors(8, 0, 0), &[8, 9]);
        assert_eq!(q.pts.label(9), Letter(0b11));
        assert_eq!(q.pts.label(10), Letter::EMPTY);
    }

    #[test]
    fn straddling_predicate_is_rejected() {
        let sys = identity_system();
        let cells = grid_partition(&sys.x, 4).unwrap();
        let p = Predicate { name: "pos".into(), op: Comparison::Ge, threshold: r("0.25") };
        let err = build_quotient_pts(&sys, cells.clone(), vec![sys.theta.clone()], vec![r("0")], vec![p]).unwrap_err();
        assert!(matches!(err, AbstractionError::Straddle { .. }));
        // x ≤ 0.5 holds at 0.5, which belongs to the half-open cell [0.5, 1]
        let p = Predicate { name: "low".into(), op: Comparison::Le, threshold: r("0.5") };
        assert!(build_quotient_pts(&sys, cells.clone(), vec![sys.theta.clone()], vec![r("0")], vec![p]).is_err());
        // x ≥ 0.5 is constant on every cell, including the closed top cell
        let p = Predicate { name: "high".into(), op: Comparison::Ge, threshold: r("0.5") };
        let q = build_quotient_pts(&sys, cells, vec![sys.theta.clone()], vec![r("0")], vec![p]).unwrap();
        let labels: Vec<u32> = (0..4).map(|c| q.pts.label(c).0).collect();
        assert_eq!(labels, [0, 0, 0, 1]);
    }

    #[test]
    fn cell_lookup_convention() {
        let sys = identity_system();
        let q = build_quotient_pts(&sys, grid_partition(&sys.x, 10).unwrap(), vec![sys.theta.clone()], vec![r("0")], vec![]).unwrap();
        assert_eq!(q.cell_of(&r("-1")), Some(0));
        assert_eq!(q.cell_of(&r("0")), Some(5));
        assert_eq!(q.cell_of(&r("0.19")), Some(5));
        assert_eq!(q.cell_of(&r("1")), Some(9));
        assert_eq!(q.cell_of(&r("1.01")), None);
        let dom = IntervalBox(vec![iv("-0.5", "0.5"), iv("1", "2"), iv("-0.2", "0.2")]);
        let boxes = grid_boxes(&dom, &[2, 2, 4]).unwrap();
        let mut sys = sys;
        sys.theta = dom;
        let q = build_quotient_pts(&sys, grid_partition(&sys.x, 2).unwrap(), boxes, vec![r("0")], vec![]).unwrap();
        let k = q.theta_cell_of(&[r("0.45"), r("1.11"), r("-0.18")]).unwrap();
        assert_eq!(q.theta_cells[k], IntervalBox(vec![iv("0", "0.5"), iv("1", "1.5"), iv("-0.2", "-0.1")]));
        let top = q.theta_cell_of(&[r("0.5"), r("2"), r("0.2")]).unwrap();
        assert_eq!(top, 15);
        assert_eq!(q.pts.states().len(), 3);
    }
}
