//! Text syntax for polynomials: `+ - * / ^`, parentheses, integer, `p/q` and
//! decimal literals. Division is only allowed by nonzero constants.

use std::fmt;

use crate::field::{parse_rational, Field};
use crate::poly::{Polynomial, Ring, RingExt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownIdentifier(String),
    MalformedNumber(String),
    BadExponent(String),
    DivisionByNonConstant,
    DivisionByZero,
    Empty,
}

/// A syntax error with a 1-based column inside the parsed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of expression"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnknownIdentifier(n) => write!(f, "unknown identifier `{n}`"),
            ParseErrorKind::MalformedNumber(n) => write!(f, "malformed number `{n}`"),
            ParseErrorKind::BadExponent(e) => write!(f, "exponent must be a small non-negative integer, got `{e}`"),
            ParseErrorKind::DivisionByNonConstant => write!(f, "division by a non-constant"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::Empty => write!(f, "empty expression"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // scientific suffix
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '[' || chars[i] == ']')
            {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else if c == '\u{2212}' {
            out.push((Tok::Op('-'), col));
            i += 1;
        } else {
            return Err(ParseError { column: col, kind: ParseErrorKind::UnexpectedChar(c) });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a Ring<F>,
    atoms: &'a dyn Fn(&str) -> Option<F::Elem>,
}

impl<F: Field> Parser<'_, F> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { column: self.col(), kind }
    }

    fn expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if rhs.is_zero() {
                    return Err(ParseError { column: col, kind: ParseErrorKind::DivisionByZero });
                }
                if !rhs.is_unit() {
                    return Err(ParseError { column: col, kind: ParseErrorKind::DivisionByNonConstant });
                }
                let inv = self
                    .ring
                    .field()
                    .inv(rhs.lc())
                    .map_err(|_| ParseError { column: col, kind: ParseErrorKind::DivisionByZero })?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<F>, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let col = self.col();
            let text = match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => n.clone(),
                Some((Tok::Op('('), _)) => {
                    // allow `x^(3)`
                    self.pos += 1;
                    let t = match self.toks.get(self.pos) {
                        Some((Tok::Num(n), _)) => n.clone(),
                        _ => return Err(self.err(ParseErrorKind::BadExponent("(".into()))),
                    };
                    if !matches!(self.toks.get(self.pos + 1), Some((Tok::Op(')'), _))) {
                        return Err(self.err(ParseErrorKind::BadExponent(t)));
                    }
                    self.pos += 1;
                    t
                }
                Some((t, _)) => return Err(self.err(ParseErrorKind::BadExponent(format!("{t:?}")))),
                None => return Err(self.err(ParseErrorKind::UnexpectedEnd)),
            };
            self.pos += 1;
            let k: u32 = text
                .parse()
                .ok()
                .filter(|&k| k <= 4096)
                .ok_or(ParseError { column: col, kind: ParseErrorKind::BadExponent(text.clone()) })?;
            return base.pow(k).map_err(|_| ParseError { column: col, kind: ParseErrorKind::BadExponent(text) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, ParseError> {
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let q =
                    parse_rational(&n).ok_or(ParseError { column: col, kind: ParseErrorKind::MalformedNumber(n) })?;
                Ok(self.ring.rational(&q))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.ring.index_of(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(c) = (self.atoms)(&name) {
                    Ok(self.ring.constant(c))
                } else {
                    Err(ParseError { column: col, kind: ParseErrorKind::UnknownIdentifier(name) })
                }
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                match self.toks.get(self.pos) {
                    Some((Tok::Op(')'), _)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some((t, c)) => Err(ParseError { column: *c, kind: ParseErrorKind::UnexpectedToken(tok_text(t)) }),
                    None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
                }
            }
            Tok::Op(c) => Err(ParseError { column: col, kind: ParseErrorKind::UnexpectedToken(c.to_string()) }),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(s) | Tok::Ident(s) => s.clone(),
        Tok::Op(c) => c.to_string(),
    }
}

/// Parse an expression whose identifiers are indeterminates of `ring`.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>, ParseError> {
    parse_with_atoms(text, ring, &|_| None)
}

/// Like [`parse_polynomial`], with extra identifiers resolved to coefficients
/// (for example parameter names over a rational function field).
pub fn parse_with_atoms<F: Field>(
    text: &str,
    ring: &Ring<F>,
    atoms: &dyn Fn(&str) -> Option<F::Elem>,
) -> Result<Polynomial<F>, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError { column: 1, kind: ParseErrorKind::Empty });
    }
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1, ring, atoms };
    let out = p.expr()?;
    if let Some((t, c)) = p.toks.get(p.pos) {
        return Err(ParseError { column: *c, kind: ParseErrorKind::UnexpectedToken(tok_text(t)) });
    }
    Ok(out)
}
