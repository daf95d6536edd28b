//! Parser for polynomial literals.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! poly   := [sign] term { sign term }
//! term   := factor { '*' factor }
//! factor := number | variable
//! number := digits [ '/' digits ]
//! variable := ('x' | 'z') [ '[' index ',' slot ']' ] [ '^' [-] digits ]
//! ```
//!
//! `x` and `z` without brackets abbreviate `x[0,1]` / `z[0,1]`. Slots are
//! 1-based. Negative exponents are only accepted for `z` variables.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{HallError, Result};
use crate::rat::Rat;
use crate::symfun::laurent::LaurentPoly;
use crate::symfun::poly::{Mono, MultiPoly};
use crate::symfun::vars::VarSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    X,
    Z,
}

impl VarKind {
    fn letter(self) -> char {
        match self {
            VarKind::X => 'x',
            VarKind::Z => 'z',
        }
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, text }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(self.error(format!("expected `{c}`, found {}", describe(got)))),
        }
    }

    fn error(&self, msg: String) -> HallError {
        // literals are single-line; columns are 1-based character offsets
        let col = self.pos.min(self.chars.len()) + 1;
        let _ = self.text;
        HallError::Parse { line: 1, col, msg }
    }

    fn digits(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(format!("integer `{s}` out of range")))
    }

    fn signed_digits(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }
}

struct TermBuilder {
    coeff: Rat,
    mono: Mono,
}

fn parse_terms(
    input: &str,
    spec: &VarSpec,
    kind: VarKind,
) -> Result<BTreeMap<Mono, Rat>> {
    let mut cur = Cursor::new(input);
    let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.error("empty polynomial literal".into())),
            None => break,
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.error(format!("expected `+` or `-`, found `{c}`"))),
        }
        first = false;
        let term = parse_term(&mut cur, spec, kind)?;
        let coeff = if negative { -term.coeff } else { term.coeff };
        let entry = terms.entry(term.mono).or_insert_with(num_traits::Zero::zero);
        *entry += coeff;
        if num_traits::Zero::is_zero(entry) {
            // keep map canonical
        }
    }
    terms.retain(|_, c| !num_traits::Zero::is_zero(c));
    Ok(terms)
}

fn parse_term(cur: &mut Cursor, spec: &VarSpec, kind: VarKind) -> Result<TermBuilder> {
    let mut t = TermBuilder { coeff: Rat::one(), mono: vec![0; spec.total_vars()] };
    loop {
        parse_factor(cur, spec, kind, &mut t)?;
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            return Ok(t);
        }
    }
}

fn parse_factor(cur: &mut Cursor, spec: &VarSpec, kind: VarKind, t: &mut TermBuilder) -> Result<()> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let n = cur.digits()?;
            let mut r = Rat::from_integer(n.into());
            if cur.peek() == Some('/') {
                cur.bump();
                let d = cur.digits()?;
                if d == 0 {
                    return Err(cur.error("zero denominator".into()));
                }
                r = Rat::new(n.into(), d.into());
            }
            t.coeff *= r;
            Ok(())
        }
        Some(c) if c == 'x' || c == 'z' => {
            cur.bump();
            if c != kind.letter() {
                return Err(cur.error(format!(
                    "variable `{c}` not allowed here (expected `{}`)",
                    kind.letter()
                )));
            }
            let (vertex, slot) = if cur.peek() == Some('[') {
                cur.bump();
                let i = cur.digits()?;
                cur.expect(',')?;
                let a = cur.digits()?;
                cur.expect(']')?;
                (i as usize, a as usize)
            } else {
                (0usize, 1usize)
            };
            if vertex >= spec.vertex_count() {
                return Err(cur.error(format!(
                    "vertex {vertex} out of range (quiver has {} vertices)",
                    spec.vertex_count()
                )));
            }
            if slot == 0 || slot > spec.count(vertex) as usize {
                return Err(cur.error(format!(
                    "slot {slot} out of range for vertex {vertex} (grade component {})",
                    spec.count(vertex)
                )));
            }
            let mut exp: i64 = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                exp = cur.signed_digits()?;
            }
            if exp < 0 && kind == VarKind::X {
                return Err(cur.error("negative exponents are only allowed for z variables".into()));
            }
            if exp.unsigned_abs() > i32::MAX as u64 {
                return Err(cur.error("exponent out of range".into()));
            }
            t.mono[spec.var_index(vertex, slot - 1)] += exp as i32;
            Ok(())
        }
        got => Err(cur.error(format!("expected a number or variable, found {}", describe(got)))),
    }
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

/// Parse an ordinary polynomial literal in the `x` variables of `spec`.
pub fn parse_multipoly(input: &str, spec: &VarSpec) -> Result<MultiPoly> {
    let terms = parse_terms(input, spec, VarKind::X)?;
    Ok(MultiPoly::from_terms(spec, terms))
}

/// Parse a Laurent literal in the `z` variables of `spec`.
pub fn parse_laurent(input: &str, spec: &VarSpec) -> Result<LaurentPoly> {
    let terms = parse_terms(input, spec, VarKind::Z)?;
    Ok(LaurentPoly::from_terms(spec, terms))
}

/// Parse a comma-separated dimension vector such as `1,2,0`.
pub fn parse_dimvec(input: &str) -> Result<crate::quiver::DimVector> {
    let comps: Result<Vec<i64>> = input
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| HallError::parse(1, 1, format!("invalid grade component `{tok}`")))
        })
        .collect();
    Ok(crate::quiver::DimVector::new(comps?))
}

/// Split a graded operand literal `expr@g1,g2,...` into its parts.
pub fn split_graded(input: &str) -> Result<(&str, crate::quiver::DimVector)> {
    let at = input
        .rfind('@')
        .ok_or_else(|| HallError::parse(1, 1, "operand needs a grade annotation `expr@grade`"))?;
    let grade = parse_dimvec(&input[at + 1..])?;
    Ok((&input[..at], grade))
}
