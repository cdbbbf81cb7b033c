use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FrontendError;
use crate::systems::{embed, DynamicsSpec, Pts};

/// Specification of the grid study: stay safe, visit A and B forever.
pub const GRID_SPEC: &str = "G !unsafe & GF A & GF B";

/// `(column, row)`, row 0 at the bottom.
pub type Cell = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    /// Moves leaving the grid end in an absorbing unsafe sink.
    #[default]
    UnsafeSink,
    /// Moves leaving the grid stop at the border.
    Clamp,
}

/// Which cell decides whether the drift applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriftTrigger {
    /// The cell the robot is in when it moves.
    #[default]
    Current,
    /// The cell the nominal move would reach.
    Successor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWorldConfig {
    pub width: i64,
    pub height: i64,
    pub band: Vec<Cell>,
    #[serde(rename = "unsafe")]
    pub unsafe_cells: Vec<Cell>,
    pub a: Vec<Cell>,
    pub b: Vec<Cell>,
    /// Horizontal drifts; a positive drift pushes left.
    pub drifts: Vec<i64>,
    #[serde(default)]
    pub boundary: BoundaryPolicy,
    #[serde(default)]
    pub drift_trigger: DriftTrigger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct GridState(Cell);

impl fmt::Display for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}_{}", self.0 .0, self.0 .1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Left,
    Right,
    Up,
    Down,
}

impl Move {
    const ALL: [Move; 4] = [Move::Left, Move::Right, Move::Up, Move::Down];

    fn delta(self) -> Cell {
        match self {
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
            Move::Up => (0, 1),
            Move::Down => (0, -1),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::Left => "left",
            Move::Right => "right",
            Move::Up => "up",
            Move::Down => "down",
        })
    }
}

struct Drift(i64);

impl fmt::Display for Drift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

impl GridWorldConfig {
    /// 15×10 grid crossed by a horizontal drift band in rows 3–6. Fence
    /// cells at both ends of the band are unsafe; A sits below the band and
    /// B above it, so every route between them crosses the band.
    pub fn default_layout() -> Self {
        let band: Vec<Cell> = (3..=6).flat_map(|r| (1..=13).map(move |c| (c, r))).collect();
        let unsafe_cells = (3..=6).flat_map(|r| [(0, r), (14, r)]).collect();
        GridWorldConfig {
            width: 15,
            height: 10,
            band,
            unsafe_cells,
            a: vec![(7, 0)],
            b: vec![(7, 9)],
            drifts: vec![2, 1, 0, -1, -2],
            boundary: BoundaryPolicy::UnsafeSink,
            drift_trigger: DriftTrigger::Current,
        }
    }

    pub fn cell_count(&self) -> usize {
        (self.width * self.height) as usize
    }

    fn inside(&self, c: Cell) -> bool {
        (0..self.width).contains(&c.0) && (0..self.height).contains(&c.1)
    }

    pub fn validate(&self) -> Result<(), FrontendError> {
        let bad = |m: String| Err(FrontendError::InvalidConfig(m));
        if self.width <= 0 || self.height <= 0 {
            return bad("grid must have positive width and height".into());
        }
        if self.drifts.is_empty() {
            return bad("drift set is empty".into());
        }
        for (name, cells) in [("band", &self.band), ("unsafe", &self.unsafe_cells), ("A", &self.a), ("B", &self.b)] {
            if let Some(c) = cells.iter().find(|&&c| !self.inside(c)) {
                return bad(format!("{name} cell {c:?} lies outside the grid"));
            }
        }
        if self.a.is_empty() || self.b.is_empty() {
            return bad("regions A and B must be non-empty".into());
        }
        let unsafe_set: HashSet<Cell> = self.unsafe_cells.iter().copied().collect();
        for (name, cells) in [("A", &self.a), ("B", &self.b)] {
            if let Some(c) = cells.iter().find(|c| unsafe_set.contains(c)) {
                return bad(format!("{name} cell {c:?} is also unsafe"));
            }
        }
        Ok(())
    }

    /// Successor of `c` under `m` with drift `theta`, before boundary handling.
    fn raw_step(&self, band: &HashSet<Cell>, c: Cell, m: Move, theta: i64) -> Cell {
        let (dx, dy) = m.delta();
        let nominal = (c.0 + dx, c.1 + dy);
        let trigger = match self.drift_trigger {
            DriftTrigger::Current => c,
            DriftTrigger::Successor => nominal,
        };
        let next = if band.contains(&trigger) { (nominal.0 - theta, nominal.1) } else { nominal };
        match self.boundary {
            BoundaryPolicy::UnsafeSink => next,
            BoundaryPolicy::Clamp => (next.0.clamp(0, self.width - 1), next.1.clamp(0, self.height - 1)),
        }
    }

    /// Cell reached from `c` under move `m` (by name) and drift `theta`;
    /// `None` when the move leaves the grid.
    pub fn step(&self, c: Cell, m: &str, theta: i64) -> Option<Cell> {
        let m = Move::ALL.into_iter().find(|x| x.to_string() == m)?;
        let band: HashSet<Cell> = self.band.iter().copied().collect();
        Some(self.raw_step(&band, c, m, theta)).filter(|&n| self.inside(n))
    }

    pub fn state_name(c: Cell) -> String {
        GridState(c).to_string()
    }
}

/// PTS of the grid: deterministic for each drift, labels `unsafe`, `A`, `B`.
pub fn gen_gridworld(cfg: &GridWorldConfig) -> Result<Pts, FrontendError> {
    cfg.validate()?;
    let band: HashSet<Cell> = cfg.band.iter().copied().collect();
    let unsafe_set: HashSet<Cell> = cfg.unsafe_cells.iter().copied().collect();
    let a: HashSet<Cell> = cfg.a.iter().copied().collect();
    let b: HashSet<Cell> = cfg.b.iter().copied().collect();
    let states = (0..cfg.height).flat_map(|r| (0..cfg.width).map(move |c| GridState((c, r)))).collect();
    let spec = DynamicsSpec {
        states,
        inputs: Move::ALL.to_vec(),
        params: cfg.drifts.iter().map(|&t| Drift(t)).collect(),
        disturbances: vec![()],
        update: Box::new(|x: &GridState, m: &Move, t: &Drift, _: &()| GridState(cfg.raw_step(&band, x.0, *m, t.0))),
        predicates: vec![
            ("unsafe".to_string(), Box::new(move |x: &GridState| unsafe_set.contains(&x.0)) as Box<dyn Fn(&GridState) -> bool>),
            ("A".to_string(), Box::new(move |x: &GridState| a.contains(&x.0))),
            ("B".to_string(), Box::new(move |x: &GridState| b.contains(&x.0))),
        ],
        sink_label: vec!["unsafe".to_string()],
    };
    Ok(embed(&spec)?)
}
