//! LTL syntax and a small recursive-descent parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! or     := and ( ('|' | '||') and )*
//! and    := until ( ('&' | '&&') until )*
//! until  := unary ( 'U' until )?
//! unary  := ('!' | '~' | 'G' | 'F') unary | primary
//! primary:= ident | 'true' | 'false' | '(' or ')'
//! ```
//!
//! Words made only of `G` and `F` (e.g. `GF`, `FG`) are read as stacked
//! unary operators unless they are declared propositions.

use std::fmt;

use super::{Alphabet, Letter, LogicError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ltl {
    True,
    Atom(usize),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    G(Box<Ltl>),
    F(Box<Ltl>),
    U(Box<Ltl>, Box<Ltl>),
}

impl Ltl {
    pub fn atom(prop: usize) -> Ltl {
        Ltl::Atom(prop)
    }

    pub fn not(f: Ltl) -> Ltl {
        Ltl::Not(Box::new(f))
    }

    pub fn and(f: Ltl, g: Ltl) -> Ltl {
        Ltl::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Ltl, g: Ltl) -> Ltl {
        Ltl::Or(Box::new(f), Box::new(g))
    }

    pub fn globally(f: Ltl) -> Ltl {
        Ltl::G(Box::new(f))
    }

    pub fn finally(f: Ltl) -> Ltl {
        Ltl::F(Box::new(f))
    }

    pub fn until(f: Ltl, g: Ltl) -> Ltl {
        Ltl::U(Box::new(f), Box::new(g))
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Ltl::True | Ltl::Atom(_) => true,
            Ltl::Not(f) => f.is_propositional(),
            Ltl::And(f, g) | Ltl::Or(f, g) => f.is_propositional() && g.is_propositional(),
            Ltl::G(_) | Ltl::F(_) | Ltl::U(..) => false,
        }
    }

    /// Evaluate a propositional formula on one letter; `None` for temporal ones.
    pub fn eval_letter(&self, letter: Letter) -> Option<bool> {
        Some(match self {
            Ltl::True => true,
            Ltl::Atom(p) => letter.contains(*p),
            Ltl::Not(f) => !f.eval_letter(letter)?,
            Ltl::And(f, g) => f.eval_letter(letter)? && g.eval_letter(letter)?,
            Ltl::Or(f, g) => f.eval_letter(letter)? || g.eval_letter(letter)?,
            Ltl::G(_) | Ltl::F(_) | Ltl::U(..) => return None,
        })
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Ltl::True => None,
            Ltl::Atom(p) => Some(*p),
            Ltl::Not(f) | Ltl::G(f) | Ltl::F(f) => f.max_atom(),
            Ltl::And(f, g) | Ltl::Or(f, g) | Ltl::U(f, g) => f.max_atom().max(g.max_atom()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LtlDisplay<'a> {
        LtlDisplay { f: self, alphabet }
    }
}

pub struct LtlDisplay<'a> {
    f: &'a Ltl,
    alphabet: &'a Alphabet,
}

impl<'a> fmt::Display for LtlDisplay<'a> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |g: &'a Ltl| LtlDisplay { f: g, alphabet: self.alphabet };
        match self.f {
            Ltl::True => write!(out, "true"),
            Ltl::Atom(p) => match self.alphabet.names().get(*p) {
                Some(n) => write!(out, "{n}"),
                None => write!(out, "p{p}"),
            },
            Ltl::Not(f) => write!(out, "!{}", sub(f)),
            Ltl::And(f, g) => write!(out, "({} & {})", sub(f), sub(g)),
            Ltl::Or(f, g) => write!(out, "({} | {})", sub(f), sub(g)),
            Ltl::G(f) => write!(out, "G {}", sub(f)),
            Ltl::F(f) => write!(out, "F {}", sub(f)),
            Ltl::U(f, g) => write!(out, "({} U {})", sub(f), sub(g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '~' => out.push((start, Tok::Not)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '&' => {
                if bytes.get(i + 1) == Some(&b'&') {
                    i += 1;
                }
                out.push((start, Tok::And));
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'|') {
                    i += 1;
                }
                out.push((start, Tok::Or));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(LogicError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

enum Word {
    Atom(usize),
    Const(bool),
    Until,
    Unary(Vec<char>),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn classify(&self, w: &str, at: usize) -> Result<Word, LogicError> {
        if let Some(i) = self.alphabet.index(w) {
            return Ok(Word::Atom(i));
        }
        match w {
            "true" => return Ok(Word::Const(true)),
            "false" => return Ok(Word::Const(false)),
            "U" => return Ok(Word::Until),
            _ => {}
        }
        if w.chars().all(|c| c == 'G' || c == 'F') {
            return Ok(Word::Unary(w.chars().collect()));
        }
        Err(LogicError::Undeclared { name: w.to_string(), pos: at })
    }

    fn or(&mut self) -> Result<Ltl, LogicError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Ltl::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltl, LogicError> {
        let mut lhs = self.until()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Ltl::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltl, LogicError> {
        let lhs = self.unary()?;
        if let Some((at, Tok::Word(w))) = self.toks.get(self.pos) {
            if let Word::Until = self.classify(w, *at)? {
                self.pos += 1;
                return Ok(Ltl::until(lhs, self.until()?));
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ltl, LogicError> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Not)) => {
                self.pos += 1;
                Ok(Ltl::not(self.unary()?))
            }
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(LogicError::Syntax { pos: self.offset(), msg: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some((_, Tok::Word(w))) => {
                self.pos += 1;
                match self.classify(&w, at)? {
                    Word::Atom(i) => Ok(Ltl::Atom(i)),
                    Word::Const(true) => Ok(Ltl::True),
                    Word::Const(false) => Ok(Ltl::not(Ltl::True)),
                    Word::Until => Err(LogicError::Syntax { pos: at, msg: "'U' needs a left operand".into() }),
                    Word::Unary(ops) => {
                        let mut f = self.unary()?;
                        for op in ops.into_iter().rev() {
                            f = if op == 'G' { Ltl::globally(f) } else { Ltl::finally(f) };
                        }
                        Ok(f)
                    }
                }
            }
            Some((_, t)) => Err(LogicError::Syntax { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(LogicError::Syntax { pos: at, msg: "unexpected end of formula".into() }),
        }
    }
}

/// Parse `text` against the declared propositions.
pub fn parse_ltl(text: &str, alphabet: &Alphabet) -> Result<Ltl, LogicError> {
    if text.trim().is_empty() {
        return Err(LogicError::Syntax { pos: 0, msg: "empty formula".into() });
    }
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), alphabet };
    let f = p.or()?;
    if p.pos != p.toks.len() {
        return Err(LogicError::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(f)
}

/// Propositions a formula text mentions, in first-appearance order.
///
/// Operator words (`G`, `F`, `GF`, `U`, `true`, `false`) are skipped.
pub fn mentioned_props(text: &str) -> Result<Vec<String>, LogicError> {
    let mut out: Vec<String> = Vec::new();
    for (_, tok) in tokenize(text)? {
        if let Tok::Word(w) = tok {
            let is_op = w == "U" || w == "true" || w == "false" || w.chars().all(|c| c == 'G' || c == 'F');
            if !is_op && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}
