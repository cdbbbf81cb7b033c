//! Plain-text exchange format for Rabin automata.
//!
//! ```text
//! # comment
//! states 3
//! initial 0
//! props pi1 pi2
//! pairs 1
//! 0 {} 0
//! 0 {pi1} 0
//! 0 {pi2} 1
//! 0 {pi1,pi2} 2
//! ...
//! F_1: 0
//! I_1: 2
//! ```
//!
//! Every (state, letter) combination needs exactly one transition line.
//! Pair indices are 1-based.

use std::fmt::Write as _;

use super::{Alphabet, Dra, LogicError, RabinPair};

fn parse_err(line: usize, msg: impl Into<String>) -> LogicError {
    LogicError::Parse { line, msg: msg.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, LogicError> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, got '{tok}'")))
}

pub fn parse_dra(text: &str) -> Result<Dra, LogicError> {
    let mut n_states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut n_pairs: Option<usize> = None;
    let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
    let mut fins: Vec<Option<Vec<usize>>> = Vec::new();
    let mut infs: Vec<Option<Vec<usize>>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        match head {
            "states" => {
                let n = parse_usize(words.next().unwrap_or(""), line_no)?;
                if n == 0 {
                    return Err(parse_err(line_no, "automaton needs at least one state"));
                }
                n_states = Some(n);
            }
            "initial" => initial = Some(parse_usize(words.next().unwrap_or(""), line_no)?),
            "props" => alphabet = Some(Alphabet::new(words).map_err(|e| parse_err(line_no, e.to_string()))?),
            "pairs" => {
                let r = parse_usize(words.next().unwrap_or(""), line_no)?;
                fins = vec![None; r];
                infs = vec![None; r];
                n_pairs = Some(r);
            }
            h if (h.starts_with("F_") || h.starts_with("I_")) => {
                let (label, rest) = line.split_once(':').ok_or_else(|| parse_err(line_no, "expected ':'"))?;
                let i = parse_usize(&label.trim()[2..], line_no)?;
                let r = n_pairs.ok_or_else(|| parse_err(line_no, "pair line before 'pairs' header"))?;
                if i == 0 || i > r {
                    return Err(parse_err(line_no, format!("pair index {i} outside 1..={r}")));
                }
                let ids = rest
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| parse_usize(t, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                let slot = if h.starts_with('F') { &mut fins[i - 1] } else { &mut infs[i - 1] };
                if slot.is_some() {
                    return Err(parse_err(line_no, format!("duplicate {label}")));
                }
                *slot = Some(ids);
            }
            _ => {
                let n = n_states.ok_or_else(|| parse_err(line_no, "transition before 'states' header"))?;
                let alpha = alphabet.as_ref().ok_or_else(|| parse_err(line_no, "transition before 'props' header"))?;
                if delta.is_empty() {
                    delta = vec![vec![None; alpha.letter_count()]; n];
                }
                let open = line.find('{').ok_or_else(|| parse_err(line_no, "expected '{letter}'"))?;
                let close = line.find('}').ok_or_else(|| parse_err(line_no, "unclosed '{'"))?;
                if close < open {
                    return Err(parse_err(line_no, "malformed letter"));
                }
                let src = parse_usize(line[..open].trim(), line_no)?;
                let dst = parse_usize(line[close + 1..].trim(), line_no)?;
                let names = line[open + 1..close].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty());
                let letter = alpha.letter(names).map_err(|e| parse_err(line_no, e.to_string()))?;
                if src >= n {
                    return Err(LogicError::Dangling { what: format!("line {line_no} source"), id: src });
                }
                if dst >= n {
                    return Err(LogicError::Dangling { what: format!("line {line_no} target"), id: dst });
                }
                let cell = &mut delta[src][letter.index()];
                match *cell {
                    Some(prev) if prev != dst => {
                        return Err(parse_err(line_no, format!("conflicting transition for state {src}")));
                    }
                    _ => *cell = Some(dst),
                }
            }
        }
    }

    let n = n_states.ok_or_else(|| parse_err(0, "missing 'states' header"))?;
    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing 'props' header"))?;
    let initial = initial.ok_or_else(|| parse_err(0, "missing 'initial' header"))?;
    n_pairs.ok_or_else(|| parse_err(0, "missing 'pairs' header"))?;
    if initial >= n {
        return Err(LogicError::Dangling { what: "initial".into(), id: initial });
    }
    if delta.is_empty() {
        delta = vec![vec![None; alphabet.letter_count()]; n];
    }
    let mut table = Vec::with_capacity(n);
    for (s, row) in delta.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (l, t) in row.into_iter().enumerate() {
            match t {
                Some(t) => out.push(t),
                None => {
                    return Err(LogicError::NonTotal {
                        state: s,
                        letter: alphabet.format_letter(super::Letter(l as u32)),
                    })
                }
            }
        }
        table.push(out);
    }
    let mut pairs = Vec::with_capacity(fins.len());
    for (i, (f, inf)) in fins.into_iter().zip(infs).enumerate() {
        let f = f.unwrap_or_default();
        let inf = inf.ok_or_else(|| parse_err(0, format!("missing I_{}", i + 1)))?;
        if let Some(&bad) = f.iter().chain(&inf).find(|&&s| s >= n) {
            return Err(LogicError::Dangling { what: format!("pair {}", i + 1), id: bad });
        }
        pairs.push(RabinPair::new(n, &f, &inf));
    }
    Dra::new(alphabet, initial, table, pairs)
}

pub fn write_dra(dra: &Dra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states {}", dra.state_count());
    let _ = writeln!(out, "initial {}", dra.initial());
    let props = dra.alphabet().names().join(" ");
    let _ = writeln!(out, "{}", format!("props {props}").trim_end());
    let _ = writeln!(out, "pairs {}", dra.pairs().len());
    for s in 0..dra.state_count() {
        for letter in dra.alphabet().letters() {
            let _ = writeln!(out, "{s} {} {}", dra.alphabet().format_letter(letter), dra.step(s, letter));
        }
    }
    for (i, p) in dra.pairs().iter().enumerate() {
        let ids = |set: &fixedbitset::FixedBitSet| set.ones().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{}", format!("F_{}: {}", i + 1, ids(&p.fin)).trim_end());
        let _ = writeln!(out, "{}", format!("I_{}: {}", i + 1, ids(&p.inf)).trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{LassoWord, Letter};

    const EXAMPLE_DRA: &str = "\
# GF pi1 & F pi2
states 3
initial 0
props pi1 pi2
pairs 1
0 {} 0
0 {pi1} 0
0 {pi2} 1
0 {pi1,pi2} 2
1 {pi2} 1
1 {} 1
1 {pi1} 2
1 {pi1 pi2} 2
2 {pi1} 2
2 {pi1,pi2} 2
2 {} 1
2 {pi2} 1
F_1: 0
I_1: 2
";

    #[test]
    fn imports_example_automaton() {
        let d = parse_dra(EXAMPLE_DRA).unwrap();
        assert_eq!(d.state_count(), 3);
        assert_eq!(d.pairs().len(), 1);
        let w = LassoWord::new(vec![Letter(2)], vec![Letter(3)]).unwrap();
        assert!(d.accepts(&w));
    }

    #[test]
    fn missing_letter_is_non_total() {
        let text = EXAMPLE_DRA.replace("2 {pi2} 1\n", "");
        match parse_dra(&text) {
            Err(LogicError::NonTotal { state, letter }) => {
                assert_eq!(state, 2);
                assert_eq!(letter, "{pi2}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_single_state() {
        let text = "states 1\ninitial 0\nprops a\npairs 1\n0 {} 0\n0 {a} 0\nF_1:\nI_1: 0\n";
        let d = parse_dra(text).unwrap();
        for cyc in [vec![Letter(0)], vec![Letter(1)], vec![Letter(0), Letter(1)]] {
            assert!(d.accepts(&LassoWord::new(vec![], cyc).unwrap()));
        }
    }

    #[test]
    fn dangling_and_malformed() {
        let bad_target = EXAMPLE_DRA.replace("0 {} 0\n", "0 {} 7\n");
        assert!(matches!(parse_dra(&bad_target), Err(LogicError::Dangling { id: 7, .. })));
        let bad_pair = EXAMPLE_DRA.replace("I_1: 2", "I_1: 9");
        assert!(matches!(parse_dra(&bad_pair), Err(LogicError::Dangling { id: 9, .. })));
        let bad_prop = EXAMPLE_DRA.replace("0 {pi1} 0", "0 {pi9} 0");
        assert!(matches!(parse_dra(&bad_prop), Err(LogicError::Parse { line: 7, .. })));
        let conflict = EXAMPLE_DRA.replace("1 {} 1", "1 {} 1\n1 {} 2");
        assert!(matches!(parse_dra(&conflict), Err(LogicError::Parse { .. })));
        assert!(matches!(parse_dra("initial 0\n"), Err(LogicError::Parse { .. })));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let d = parse_dra(EXAMPLE_DRA).unwrap();
        assert_eq!(parse_dra(&write_dra(&d)).unwrap(), d);
    }
}
