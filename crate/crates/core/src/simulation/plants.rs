use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Plant;
use crate::abstraction::{AbstractionError, Quotient, Rational};
use crate::systems::{InputId, ParamId, Pts, StateId};

/// Disturbance samples are multiples of this.
const D_RESOLUTION: i64 = 1_000_000;
/// Disturbance values tried in adversarial mode, endpoints included.
const D_CANDIDATES: i64 = 21;

/// The scalar affine system evaluated exactly, observed through its quotient.
#[derive(Debug, Clone)]
pub struct ScalarPlant {
    quotient: Quotient,
    theta: Vec<Rational>,
    theta_cell: ParamId,
}

impl ScalarPlant {
    pub fn new(quotient: Quotient, theta: Vec<Rational>) -> Result<Self, AbstractionError> {
        let theta_cell = quotient.theta_cell_of(&theta).ok_or_else(|| {
            AbstractionError::Config("true parameter lies outside every parameter cell".into())
        })?;
        Ok(ScalarPlant { quotient, theta, theta_cell })
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    fn next(&self, x: &Rational, u: InputId, d: &Rational) -> Rational {
        self.quotient.system.step(x, &self.theta, &self.quotient.inputs[u], d)
    }
}

impl Plant for ScalarPlant {
    type State = Rational;

    fn pts(&self) -> &Pts {
        &self.quotient.pts
    }

    fn abstract_state(&self, x: &Rational) -> StateId {
        self.quotient.cell_of(x).unwrap_or(self.quotient.sink())
    }

    fn describe(&self, x: &Rational) -> String {
        format!("{:.6}", x.to_f64().unwrap_or(f64::NAN))
    }

    fn true_param(&self) -> ParamId {
        self.theta_cell
    }

    fn sample(&self, x: &Rational, u: InputId, rng: &mut ChaCha8Rng) -> (Rational, String) {
        let dom = &self.quotient.system.d;
        let scale = Rational::from_integer(BigInt::from(D_RESOLUTION));
        let lo = (dom.lo() * &scale).ceil().to_integer().to_i64().expect("disturbance bound fits");
        let hi = (dom.hi() * &scale).floor().to_integer().to_i64().expect("disturbance bound fits");
        let k = rng.gen_range(lo..=hi);
        let d = Rational::new(BigInt::from(k), BigInt::from(D_RESOLUTION));
        let label = format!("{:.6}", k as f64 / D_RESOLUTION as f64);
        (self.next(x, u, &d), label)
    }

    fn candidates(&self, x: &Rational, u: InputId) -> Vec<(Rational, String)> {
        let dom = &self.quotient.system.d;
        (0..D_CANDIDATES)
            .map(|i| {
                let d = dom.lo() + dom.width() * Rational::new(BigInt::from(i), BigInt::from(D_CANDIDATES - 1));
                let label = format!("{:.6}", d.to_f64().unwrap_or(f64::NAN));
                (self.next(x, u, &d), label)
            })
            .collect()
    }

    fn distance(&self, x: &Rational, q: StateId) -> f64 {
        let dist = if q == self.quotient.sink() {
            let dom = &self.quotient.system.x;
            if dom.contains(x) {
                (x - dom.lo()).min(dom.hi() - x)
            } else {
                Rational::zero()
            }
        } else {
            let c = &self.quotient.x_cells[q];
            if x < c.lo() {
                c.lo() - x
            } else if x > c.hi() {
                x - c.hi()
            } else {
                Rational::zero()
            }
        };
        dist.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// A finite PTS played directly: the plant state is a PTS state.
#[derive(Debug, Clone)]
pub struct PtsPlant {
    pts: Pts,
    theta: ParamId,
}

impl PtsPlant {
    pub fn new(pts: Pts, theta: ParamId) -> Self {
        assert!(theta < pts.param_count(), "parameter id out of range");
        PtsPlant { pts, theta }
    }
}

impl Plant for PtsPlant {
    type State = StateId;

    fn pts(&self) -> &Pts {
        &self.pts
    }

    fn abstract_state(&self, x: &StateId) -> StateId {
        *x
    }

    fn describe(&self, x: &StateId) -> String {
        self.pts.states()[*x].clone()
    }

    fn true_param(&self) -> ParamId {
        self.theta
    }

    fn sample(&self, x: &StateId, u: InputId, rng: &mut ChaCha8Rng) -> (StateId, String) {
        let succ = self.pts.successors(*x, u, self.theta);
        let i = if succ.len() == 1 { 0 } else { rng.gen_range(0..succ.len()) };
        (succ[i], i.to_string())
    }

    fn candidates(&self, x: &StateId, u: InputId) -> Vec<(StateId, String)> {
        self.pts.successors(*x, u, self.theta).iter().enumerate().map(|(i, &y)| (y, i.to_string())).collect()
    }

    fn distance(&self, x: &StateId, q: StateId) -> f64 {
        if *x == q {
            0.0
        } else {
            1.0
        }
    }
}
