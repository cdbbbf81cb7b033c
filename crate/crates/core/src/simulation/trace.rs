use crate::estimation::ParamSet;
use crate::logic::{Alphabet, DraState, Fragment, Letter, LogicError, Ltl};
use crate::systems::{InputId, Pts, StateId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub k: usize,
    /// Concrete state, printed.
    pub x: String,
    pub cell: StateId,
    pub theta_set: ParamSet,
    pub dra_state: DraState,
    /// `None` on the final row.
    pub input: Option<InputId>,
    pub disturbance: Option<String>,
    pub label: Letter,
}

/// A finite closed-loop run; the last row has no input.
#[derive(Debug, Clone)]
pub struct Trace {
    alphabet: Alphabet,
    inputs: Vec<String>,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub(super) fn new(pts: &Pts, steps: Vec<TraceStep>) -> Self {
        Trace { alphabet: pts.alphabet().clone(), inputs: pts.inputs().to_vec(), steps }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Estimates never grow along the run.
    pub fn is_monotone(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].theta_set.is_subset(w[0].theta_set))
    }

    /// CSV with columns `k,x,cell,theta_set,dra_state,u,d,labels`;
    /// parameter ids and labels are `;`-separated.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "x", "cell", "theta_set", "dra_state", "u", "d", "labels"]).expect("in-memory write");
        for st in &self.steps {
            let ids: Vec<String> = st.theta_set.iter().map(|t| t.to_string()).collect();
            w.write_record([
                st.k.to_string(),
                st.x.clone(),
                st.cell.to_string(),
                ids.join(";"),
                st.dra_state.to_string(),
                st.input.map(|u| self.inputs[u].clone()).unwrap_or_default(),
                st.disturbance.clone().unwrap_or_default(),
                self.alphabet.letter_names(st.label).join(";"),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub target: String,
    pub visits: Vec<usize>,
    /// Largest distance between consecutive visits.
    pub max_gap: Option<usize>,
    /// Steps before the first visit.
    pub lead: Option<usize>,
    /// Steps after the last visit.
    pub tail: Option<usize>,
}

impl RecurrenceReport {
    /// Longest stretch of the run without a visit, counting both ends.
    pub fn worst_wait(&self, len: usize) -> usize {
        match (self.lead, self.max_gap, self.tail) {
            (Some(l), g, Some(t)) => l.max(g.unwrap_or(0)).max(t),
            _ => len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    /// Steps whose label violates some `G b`.
    pub safety_violations: Vec<usize>,
    pub recurrence: Vec<RecurrenceReport>,
    /// `F d` targets never reached on the run.
    pub unreached: Vec<String>,
}

impl TraceReport {
    pub fn is_safe(&self) -> bool {
        self.safety_violations.is_empty()
    }

    /// Safe, every `F d` met, and every recurrence gap at most `bound`.
    pub fn passes(&self, len: usize, bound: usize) -> bool {
        self.is_safe() && self.unreached.is_empty() && self.recurrence.iter().all(|r| r.worst_wait(len) <= bound)
    }
}

/// Finite-horizon monitor for a formula of the `G b ∧ GF c ∧ F d` fragment
/// over `formula_alphabet`; labels are matched to it by proposition name.
pub fn check_trace(trace: &Trace, f: &Ltl, formula_alphabet: &Alphabet) -> Result<TraceReport, LogicError> {
    let frag = Fragment::of(f, formula_alphabet)?;
    let map: Vec<Option<usize>> = formula_alphabet.names().iter().map(|n| trace.alphabet.index(n)).collect();
    let letters: Vec<Letter> = trace
        .steps
        .iter()
        .map(|st| {
            map.iter()
                .enumerate()
                .filter(|(_, j)| j.is_some_and(|j| st.label.contains(j)))
                .fold(Letter::EMPTY, |l, (i, _)| l.with(i))
        })
        .collect();
    let holds = |g: &Ltl, l: Letter| g.eval_letter(l).expect("fragment guards are propositional");
    let safety_violations = (0..letters.len()).filter(|&k| frag.safety.iter().any(|b| !holds(b, letters[k]))).collect();
    let recurrence = frag
        .recurrence
        .iter()
        .map(|c| {
            let visits: Vec<usize> = (0..letters.len()).filter(|&k| holds(c, letters[k])).collect();
            RecurrenceReport {
                target: c.display(formula_alphabet).to_string(),
                max_gap: visits.windows(2).map(|w| w[1] - w[0]).max(),
                lead: visits.first().copied(),
                tail: visits.last().map(|&l| letters.len() - 1 - l),
                visits,
            }
        })
        .collect();
    let unreached = frag
        .reach
        .iter()
        .filter(|d| !letters.iter().any(|&l| holds(d, l)))
        .map(|d| d.display(formula_alphabet).to_string())
        .collect();
    Ok(TraceReport { safety_violations, recurrence, unreached })
}
