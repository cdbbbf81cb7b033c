use num_traits::One;

use super::{AbstractionError, Interval, IntervalBox, Rational};

/// `x⁺ = (1 + θ1)·x + θ2·u + θ3 + d` on bounded domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParametricAffine {
    pub x: Interval,
    pub theta: IntervalBox,
    pub d: Interval,
    pub u: Interval,
}

impl ScalarParametricAffine {
    pub fn new(x: Interval, theta: IntervalBox, d: Interval, u: Interval) -> Result<Self, AbstractionError> {
        if theta.dim() != 3 {
            return Err(AbstractionError::Dimension { expected: 3, got: theta.dim() });
        }
        Ok(ScalarParametricAffine { x, theta, d, u })
    }

    /// One concrete step.
    pub fn step(&self, x: &Rational, theta: &[Rational], u: &Rational, d: &Rational) -> Rational {
        (Rational::one() + &theta[0]) * x + &theta[1] * u + &theta[2] + d
    }

    /// Exact hull of all successors from `qx` under parameters in `qtheta`,
    /// input `u` and any disturbance. Every variable enters through a single
    /// term, so the interval sum is tight.
    pub fn post_box(&self, qx: &Interval, qtheta: &IntervalBox, u: &Rational) -> Interval {
        let one = Rational::one();
        let gain = qtheta.0[0].shift(&one);
        gain.mul(qx).add(&qtheta.0[1].scale(u)).add(&qtheta.0[2]).add(&self.d)
    }
}
