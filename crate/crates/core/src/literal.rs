//! Text literals for elements and tensors.
//!
//! ```text
//! expr  := '0' | ['-'] term (('+' | '-') term)*
//! term  := [coeff '*'] gen ('(x)' gen)*
//! coeff := int | int '/' int
//! gen   := 'L[' int ']' | 'M[' int ']' | 'Y[' halfint ']' | 'c'
//! ```
//!
//! Elements take one generator per term, rank-2 tensors two. The printers are
//! the `Display` impls of [`Element`] and [`Tensor2`]; printing then parsing
//! is the identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{BasisIndex, Element, HalfInt, Kind};
use crate::rational::Rational;
use crate::tensor::{Tensor, Tensor2};

/// A rejected literal. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at {:?})", self.line, self.column, self.message, self.token)
    }
}

impl std::error::Error for ParseDiagnostic {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn new(text: &str, line: usize) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, line }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseDiagnostic {
        let token: String = self.chars[pos.min(self.chars.len())..]
            .iter()
            .take_while(|c| !c.is_whitespace())
            .collect();
        ParseDiagnostic {
            line: self.line,
            column: pos + 1,
            message: message.into(),
            token: if token.is_empty() { "<end of input>".into() } else { token },
        }
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    /// `int ['/' int]` with an optional leading '-'.
    fn signed_fraction(&mut self) -> PResult<(BigInt, BigInt)> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let num = self.digits().ok_or_else(|| self.error_at(start, "expected an integer"))?;
        let mut den = BigInt::from(1);
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            den = self.digits().ok_or_else(|| self.error_at(self.pos, "expected a denominator"))?;
            if den.is_zero() {
                return Err(self.error_at(start, "zero denominator"));
            }
        }
        if self.peek() == Some('.') {
            return Err(self.error_at(start, "decimal numbers are not exact; use a fraction"));
        }
        Ok((if negative { -num } else { num }, den))
    }

    fn gen(&mut self) -> PResult<BasisIndex> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let kind = match self.peek() {
            Some('L') => Kind::L,
            Some('M') => Kind::M,
            Some('Y') => Kind::Y,
            Some('c') => {
                self.pos += 1;
                if matches!(self.chars.get(self.pos), Some(ch) if ch.is_alphanumeric()) {
                    return Err(self.error_at(start, "unknown generator"));
                }
                return Ok(BasisIndex::c());
            }
            _ => return Err(self.error_at(start, "expected a generator L[n], M[n], Y[h] or c")),
        };
        self.pos += 1;
        if self.chars.get(self.pos) != Some(&'[') {
            return Err(self.error_at(self.pos, "expected '[' after generator name"));
        }
        self.pos += 1;
        let index_pos = {
            self.skip_ws();
            self.pos
        };
        let (num, den) = self.signed_fraction()?;
        self.expect(']')?;
        let value = Rational::new(num, den);
        let half = HalfInt::from_rational(&value)
            .ok_or_else(|| self.error_at(index_pos, "generator indices are integers or halves"))?;
        if kind != Kind::Y && half.doubled() % 2 != 0 {
            return Err(self.error_at(index_pos, "L and M indices must be integers"));
        }
        Ok(BasisIndex::new(kind, half.doubled()))
    }

    /// `[coeff '*'] gen ('(x)' gen)*`
    fn term(&mut self) -> PResult<(Rational, Vec<BasisIndex>, usize)> {
        self.skip_ws();
        let start = self.pos;
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let (n, d) = self.signed_fraction()?;
            if !self.eat('*') {
                return Err(self.error_at(self.pos, "expected '*' after coefficient"));
            }
            Rational::new(n, d)
        } else {
            Rational::from_integer(BigInt::from(1))
        };
        let mut gens = vec![self.gen()?];
        while self.eat_str("(x)") {
            gens.push(self.gen()?);
        }
        Ok((coeff, gens, start))
    }

    fn expr(&mut self) -> PResult<Vec<(Rational, Vec<BasisIndex>, usize)>> {
        let mut terms = Vec::new();
        if self.peek() == Some('0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(terms);
            }
            self.pos = save;
        }
        let mut negative = self.eat('-');
        loop {
            let (c, gens, start) = self.term()?;
            terms.push((if negative { -c } else { c }, gens, start));
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) => return Err(self.error_at(self.pos, "expected '+', '-' or end of input")),
            }
        }
        Ok(terms)
    }
}

fn parse_terms<const K: usize>(text: &str, line: usize) -> PResult<Tensor<K>> {
    let mut p = Parser::new(text, line);
    let mut out = Tensor::<K>::zero();
    for (c, gens, start) in p.expr()? {
        let legs: [BasisIndex; K] = gens
            .try_into()
            .map_err(|g: Vec<BasisIndex>| p.error_at(start, format!("expected {K} tensor factor(s), found {}", g.len())))?;
        out.add_term(legs, c);
    }
    Ok(out)
}

/// Parses an element literal such as `"-4*L[0] - 1/2*c"`.
pub fn parse_element(text: &str) -> Result<Element, ParseDiagnostic> {
    let t: Tensor<1> = parse_terms(text, 1)?;
    Ok(Element::from_terms(t.iter().map(|(k, c)| (k[0], c.clone()))))
}

/// Parses a rank-2 tensor: one or more lines, each a tensor expression such
/// as `1 * L[0] (x) L[1]`. Blank lines and `#` comments are ignored; the lines
/// are summed.
pub fn parse_tensor2(text: &str) -> Result<Tensor2, ParseDiagnostic> {
    let mut out = Tensor2::zero();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        out += &parse_terms::<2>(line, i + 1)?;
    }
    Ok(out)
}

/// Parses a rank-3 tensor expression.
pub fn parse_tensor3(text: &str) -> Result<Tensor<3>, ParseDiagnostic> {
    parse_terms(text, 1)
}
