use std::fmt;

use serde::{Deserialize, Serialize};

use super::LogicError;

/// Upper bound on declared propositions; letters are enumerated explicitly.
pub const MAX_PROPS: usize = 16;

/// An element of 2^Π, stored as a bitset over the declared proposition order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn contains(self, prop: usize) -> bool {
        self.0 & (1 << prop) != 0
    }

    pub fn with(self, prop: usize) -> Letter {
        Letter(self.0 | (1 << prop))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn props(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

/// Ordered set of atomic proposition names.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Alphabet {
    props: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let props: Vec<String> = names.into_iter().map(Into::into).collect();
        if props.len() > MAX_PROPS {
            return Err(LogicError::TooManyProps(props.len()));
        }
        for (i, p) in props.iter().enumerate() {
            if !is_identifier(p) {
                return Err(LogicError::InvalidPropName(p.clone()));
            }
            if props[..i].contains(p) {
                return Err(LogicError::DuplicateProp(p.clone()));
            }
        }
        Ok(Alphabet { props })
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.props
    }

    pub fn name(&self, prop: usize) -> &str {
        &self.props[prop]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    /// Number of letters, 2^|Π|.
    pub fn letter_count(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count() as u32).map(Letter)
    }

    pub fn letter<I, S>(&self, names: I) -> Result<Letter, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().try_fold(Letter::EMPTY, |acc, n| {
            let n = n.as_ref();
            self.index(n)
                .map(|i| acc.with(i))
                .ok_or_else(|| LogicError::UndeclaredProp(n.to_string()))
        })
    }

    pub fn letter_names(&self, letter: Letter) -> Vec<&str> {
        (0..self.props.len())
            .filter(|&i| letter.contains(i))
            .map(|i| self.props[i].as_str())
            .collect()
    }

    pub fn format_letter(&self, letter: Letter) -> String {
        format!("{{{}}}", self.letter_names(letter).join(","))
    }

    /// True when every name of `self` is declared in `other`.
    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.props.iter().all(|p| other.index(p).is_some())
    }

    /// Re-express a letter of `self` over the ordering of `target`.
    pub fn translate(&self, letter: Letter, target: &Alphabet) -> Option<Letter> {
        let mut out = Letter::EMPTY;
        for i in letter.props() {
            out = out.with(target.index(self.props.get(i)?)?);
        }
        Some(out)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.props.join(" "))
    }
}

/// Ultimately periodic word `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoWord {
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, LogicError> {
        if cycle.is_empty() {
            return Err(LogicError::EmptyCycle);
        }
        Ok(LassoWord { prefix, cycle })
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Letter at absolute position `k` of the infinite word.
    pub fn at(&self, k: usize) -> Letter {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }
}
