use std::fmt;

use num_traits::Zero;

use super::{format_rational, AbstractionError, Rational};

/// Closed interval `[lo, hi]` with exact bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, AbstractionError> {
        if lo > hi {
            return Err(AbstractionError::EmptyInterval { lo: format_rational(&lo), hi: format_rational(&hi) });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Closed-set intersection test: sharing an endpoint counts.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn shift(&self, v: &Rational) -> Interval {
        Interval { lo: &self.lo + v, hi: &self.hi + v }
    }

    /// Exact product hull; extrema of `a·b` lie at corners.
    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = c.iter().min().expect("four corners").clone();
        let hi = c.iter().max().expect("four corners").clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        if k >= &Rational::zero() {
            Interval { lo: &self.lo * k, hi: &self.hi * k }
        } else {
            Interval { lo: &self.hi * k, hi: &self.lo * k }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Axis-aligned box, one interval per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalBox(pub Vec<Interval>);

impl IntervalBox {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.0.len() && self.0.iter().zip(v).all(|(i, x)| i.contains(x))
    }

    pub fn is_subset(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b))
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// `n` equal-width closed cells; neighbours share an endpoint.
pub fn grid_partition(domain: &Interval, n: usize) -> Result<Vec<Interval>, AbstractionError> {
    if n == 0 {
        return Err(AbstractionError::NoCells);
    }
    let step = domain.width() / Rational::from_integer(n.into());
    let at = |k: usize| {
        if k == n {
            domain.hi.clone()
        } else {
            &domain.lo + &step * Rational::from_integer(k.into())
        }
    };
    Ok((0..n).map(|k| Interval { lo: at(k), hi: at(k + 1) }).collect())
}

/// Product grid, last dimension varying fastest.
pub fn grid_boxes(domain: &IntervalBox, counts: &[usize]) -> Result<Vec<IntervalBox>, AbstractionError> {
    if counts.len() != domain.dim() {
        return Err(AbstractionError::Dimension { expected: domain.dim(), got: counts.len() });
    }
    let mut out = vec![Vec::new()];
    for (d, &n) in domain.0.iter().zip(counts) {
        let cells = grid_partition(d, n)?;
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Interval>| {
                cells.iter().map(move |c| {
                    let mut b = prefix.clone();
                    b.push(c.clone());
                    b
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(IntervalBox).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::parse_rational;

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(parse_rational(lo).unwrap(), parse_rational(hi).unwrap()).unwrap()
    }

    #[test]
    fn ten_cells_on_unit_square() {
        let cells = grid_partition(&iv("-1", "1"), 10).unwrap();
        assert_eq!(cells.len(), 10);
        assert_eq!(cells[0], iv("-1", "-0.8"));
        assert_eq!(cells[9], iv("0.8", "1"));
        for w in cells.windows(2) {
            assert_eq!(w[0].hi(), w[1].lo());
            assert_eq!(w[0].width(), parse_rational("0.2").unwrap());
        }
    }

    #[test]
    fn two_cells_and_one_cell() {
        assert_eq!(grid_partition(&iv("1", "2"), 2).unwrap(), vec![iv("1", "1.5"), iv("1.5", "2")]);
        assert_eq!(grid_partition(&iv("3", "3.7"), 1).unwrap(), vec![iv("3", "3.7")]);
        assert!(matches!(grid_partition(&iv("0", "1"), 0), Err(AbstractionError::NoCells)));
    }

    #[test]
    fn box_grid_counts() {
        let dom = IntervalBox(vec![iv("-0.5", "0.5"), iv("1", "2"), iv("-0.2", "0.2")]);
        let boxes = grid_boxes(&dom, &[2, 2, 4]).unwrap();
        assert_eq!(boxes.len(), 16);
        assert_eq!(boxes[1].0[2], iv("-0.1", "0"));
        assert!(grid_boxes(&dom, &[2, 2]).is_err());
    }

    #[test]
    fn closed_intersection_and_products() {
        assert!(iv("0", "0.2").intersects(&iv("0.2", "0.4")));
        assert!(!iv("0", "0.2").intersects(&iv("0.21", "0.4")));
        assert_eq!(iv("-1", "2").mul(&iv("-3", "1")), iv("-6", "3"));
        assert_eq!(iv("1", "2").scale(&parse_rational("-0.5").unwrap()), iv("-1", "-0.5"));
        assert!(Interval::new(parse_rational("1").unwrap(), parse_rational("0").unwrap()).is_err());
    }
}
