use super::{LabeledSystem, StateId, SystemsError, TransitionSystem};

/// A partition of the state indices `0..n` into non-empty disjoint cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<StateId>>,
    cell_of: Vec<usize>,
}

impl Partition {
    pub fn new(cells: Vec<Vec<StateId>>, n_states: usize) -> Result<Self, SystemsError> {
        let mut cell_of = vec![usize::MAX; n_states];
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(SystemsError::InvalidPartition(format!("cell {c} is empty")));
            }
            for &x in cell {
                if x >= n_states {
                    return Err(SystemsError::InvalidPartition(format!("state {x} out of range")));
                }
                if cell_of[x] != usize::MAX {
                    return Err(SystemsError::InvalidPartition(format!("state {x} in cells {} and {c}", cell_of[x])));
                }
                cell_of[x] = c;
            }
        }
        if let Some(x) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(SystemsError::InvalidPartition(format!("state {x} not covered")));
        }
        Ok(Partition { cells, cell_of })
    }

    pub fn identity(n_states: usize) -> Self {
        Self::new((0..n_states).map(|x| vec![x]).collect(), n_states).expect("singletons partition")
    }

    pub fn cells(&self) -> &[Vec<StateId>] {
        &self.cells
    }

    pub fn cell_of(&self, x: StateId) -> usize {
        self.cell_of[x]
    }
}

/// Quotient over an observation-preserving partition: cell `q'` succeeds `q`
/// under `u` iff some member of `q` has a `u`-successor in `q'`.
pub fn quotient(t: &TransitionSystem, q: &Partition) -> Result<TransitionSystem, SystemsError> {
    if q.cell_of.len() != t.state_count() {
        return Err(SystemsError::InvalidPartition("partition size differs from system size".into()));
    }
    for (c, cell) in q.cells.iter().enumerate() {
        let first = cell[0];
        if let Some(&other) = cell.iter().find(|&&x| t.label(x) != t.label(first)) {
            return Err(SystemsError::NotObservationPreserving {
                cell: c,
                a: t.state_name(first),
                b: t.state_name(other),
            });
        }
    }
    let names = q
        .cells
        .iter()
        .map(|cell| {
            let members: Vec<String> = cell.iter().map(|&x| t.state_name(x)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let labels = q.cells.iter().map(|cell| t.label(cell[0])).collect();
    TransitionSystem::new(names, t.inputs().to_vec(), t.alphabet().clone(), labels, |c, u| {
        q.cells[c].iter().flat_map(|&x| t.successors(x, u).iter().map(|&y| q.cell_of(y))).collect()
    })
}
