use serde::{Deserialize, Serialize};

use super::{
    build_quotient_pts, grid_boxes, grid_partition, parse_rational, AbstractionError, Comparison, Interval, IntervalBox,
    Predicate, Quotient, Rational, ScalarParametricAffine,
};

/// Bounds as decimal strings, plus a cell count where a partition is wanted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainConfig {
    pub lo: String,
    pub hi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateConfig {
    pub name: String,
    pub op: Comparison,
    pub threshold: String,
}

/// JSON description of a scalar parametric affine abstraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractionConfig {
    pub x: DomainConfig,
    /// Exactly three entries: θ1, θ2, θ3.
    pub theta: Vec<DomainConfig>,
    pub d: DomainConfig,
    pub u: DomainConfig,
    /// Quantized inputs; when absent, `u.cells + 1` evenly spaced points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<String>>,
    pub predicates: Vec<PredicateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
}

fn interval(c: &DomainConfig) -> Result<Interval, AbstractionError> {
    Interval::new(parse_rational(&c.lo)?, parse_rational(&c.hi)?)
}

fn cells(c: &DomainConfig, what: &str) -> Result<usize, AbstractionError> {
    c.cells.ok_or_else(|| AbstractionError::Config(format!("{what}: missing cell count")))
}

impl AbstractionConfig {
    pub fn from_json(text: &str) -> Result<Self, AbstractionError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn system(&self) -> Result<ScalarParametricAffine, AbstractionError> {
        let theta = IntervalBox(self.theta.iter().map(interval).collect::<Result<_, _>>()?);
        ScalarParametricAffine::new(interval(&self.x)?, theta, interval(&self.d)?, interval(&self.u)?)
    }

    pub fn inputs(&self) -> Result<Vec<Rational>, AbstractionError> {
        match &self.inputs {
            Some(list) => list.iter().map(|s| parse_rational(s)).collect(),
            None => {
                let n = cells(&self.u, "u")?;
                let grid = grid_partition(&interval(&self.u)?, n)?;
                let mut pts: Vec<Rational> = grid.iter().map(|c| c.lo().clone()).collect();
                pts.push(grid[n - 1].hi().clone());
                Ok(pts)
            }
        }
    }

    pub fn predicates(&self) -> Result<Vec<Predicate>, AbstractionError> {
        self.predicates
            .iter()
            .map(|p| Ok(Predicate { name: p.name.clone(), op: p.op, threshold: parse_rational(&p.threshold)? }))
            .collect()
    }

    pub fn build(&self) -> Result<Quotient, AbstractionError> {
        let sys = self.system()?;
        let x_cells = grid_partition(&sys.x, cells(&self.x, "x")?)?;
        let counts = self.theta.iter().enumerate().map(|(i, c)| cells(c, &format!("theta[{i}]"))).collect::<Result<Vec<_>, _>>()?;
        let theta_cells = grid_boxes(&sys.theta, &counts)?;
        build_quotient_pts(&sys, x_cells, theta_cells, self.inputs()?, self.predicates()?)
    }
}
