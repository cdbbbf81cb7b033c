//! JSON model files for parametric transition systems.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::logic::{Alphabet, Letter};

use super::{Pts, StateId, SystemsError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub x: String,
    pub u: String,
    pub theta: String,
    pub successors: Vec<String>,
}

/// On-disk PTS. Omitted transition records are blocking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PtsFile {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub params: Vec<String>,
    pub props: Vec<String>,
    #[serde(default)]
    pub labels: BTreeMap<String, Vec<String>>,
    pub transitions: Vec<TransitionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sink: Option<String>,
}

impl PtsFile {
    pub fn from_pts(p: &Pts) -> Self {
        let mut transitions = Vec::new();
        for x in 0..p.state_count() {
            for u in 0..p.input_count() {
                for t in 0..p.param_count() {
                    let succ = p.successors(x, u, t);
                    if !succ.is_empty() {
                        transitions.push(TransitionRecord {
                            x: p.states()[x].clone(),
                            u: p.inputs()[u].clone(),
                            theta: p.params()[t].clone(),
                            successors: succ.iter().map(|&y| p.states()[y].clone()).collect(),
                        });
                    }
                }
            }
        }
        let labels = p
            .states()
            .iter()
            .zip(p.labels())
            .filter(|(_, l)| **l != Letter::EMPTY)
            .map(|(s, &l)| (s.clone(), p.alphabet().letter_names(l).into_iter().map(String::from).collect()))
            .collect();
        PtsFile {
            states: p.states().to_vec(),
            inputs: p.inputs().to_vec(),
            params: p.params().to_vec(),
            props: p.alphabet().names().to_vec(),
            labels,
            transitions,
            sink: p.sink().map(|s| p.states()[s].clone()),
        }
    }

    /// Build the PTS. With `complete`, blocking pairs are routed to a sink
    /// labelled `sink_label` (proposition names).
    pub fn to_pts(&self, complete: bool, sink_label: &[String]) -> Result<Pts, SystemsError> {
        let alphabet = Alphabet::new(self.props.iter().cloned())?;
        let lookup = |names: &[String]| -> HashMap<String, usize> {
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
        };
        let xs = lookup(&self.states);
        let us = lookup(&self.inputs);
        let ts = lookup(&self.params);
        let find = |kind: &'static str, map: &HashMap<String, usize>, name: &str| {
            map.get(name).copied().ok_or_else(|| SystemsError::UnknownName { kind, name: name.to_string() })
        };
        let mut labels = vec![Letter::EMPTY; self.states.len()];
        for (state, props) in &self.labels {
            labels[find("state", &xs, state)?] = alphabet.letter(props)?;
        }
        let (nu, np) = (self.inputs.len(), self.params.len());
        let mut table: Vec<Vec<StateId>> = vec![Vec::new(); self.states.len() * nu * np];
        for r in &self.transitions {
            let idx = (find("state", &xs, &r.x)? * nu + find("input", &us, &r.u)?) * np + find("parameter", &ts, &r.theta)?;
            for s in &r.successors {
                table[idx].push(find("state", &xs, s)?);
            }
        }
        let sink = self.sink.as_deref().map(|s| find("state", &xs, s)).transpose()?;
        let pts = Pts::new(
            self.states.clone(),
            self.inputs.clone(),
            self.params.clone(),
            alphabet.clone(),
            labels,
            |x, u, t| std::mem::take(&mut table[(x * nu + u) * np + t]),
        )?
        .with_sink(sink);
        if complete {
            Ok(pts.make_nonblocking(alphabet.letter(sink_label)?).0)
        } else {
            Ok(pts)
        }
    }
}

impl Pts {
    /// Graphviz rendering; parallel edges are merged into `u/θ` lists.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("digraph pts {\n  rankdir=LR;\n");
        for (x, name) in self.states().iter().enumerate() {
            let _ = writeln!(out, "  n{x} [label=\"{name}\\n{}\"];", self.alphabet().format_letter(self.label(x)));
        }
        for x in 0..self.state_count() {
            let mut edges: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for u in 0..self.input_count() {
                for t in 0..self.param_count() {
                    for &y in self.successors(x, u, t) {
                        edges.entry(y).or_default().push(format!("{}/{}", self.inputs()[u], self.params()[t]));
                    }
                }
            }
            for (y, labels) in edges {
                let _ = writeln!(out, "  n{x} -> n{y} [label=\"{}\"];", labels.join(","));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PtsFile::from_pts(self)).expect("PTS serializes")
    }

    pub fn from_json(text: &str, complete: bool, sink_label: &[String]) -> Result<Pts, SystemsError> {
        let file: PtsFile = serde_json::from_str(text)?;
        file.to_pts(complete, sink_label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_pts as three_state;

    #[test]
    fn json_round_trip() {
        let p = three_state();
        let text = p.to_json();
        assert_eq!(Pts::from_json(&text, false, &[]).unwrap(), p);
    }

    #[test]
    fn omitted_records_block_until_completed() {
        let text = r#"{
            "states": ["a", "b"], "inputs": ["go"], "params": ["t"], "props": ["bad"],
            "labels": {"b": ["bad"]},
            "transitions": [{"x": "a", "u": "go", "theta": "t", "successors": ["b"]}]
        }"#;
        let raw = Pts::from_json(text, false, &[]).unwrap();
        assert!(!raw.is_nonblocking());
        let done = Pts::from_json(text, true, &["bad".to_string()]).unwrap();
        assert!(done.is_nonblocking());
        let sink = done.sink().unwrap();
        assert_eq!(done.successors(1, 0, 0), &[sink]);
        assert_eq!(done.label(sink), Letter(1));
        assert_eq!(done.label(1), Letter(1));
    }

    #[test]
    fn unknown_names_rejected() {
        let text = r#"{"states": ["a"], "inputs": ["go"], "params": ["t"], "props": [],
            "transitions": [{"x": "a", "u": "stop", "theta": "t", "successors": ["a"]}]}"#;
        assert!(matches!(Pts::from_json(text, false, &[]), Err(SystemsError::UnknownName { kind: "input", .. })));
        assert!(matches!(Pts::from_json("{", false, &[]), Err(SystemsError::Json(_))));
    }
}
