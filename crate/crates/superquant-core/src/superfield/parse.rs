//! Expression parser for the chart function algebra.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := rational | ident ('^' nat)? | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! Identifiers must be chart coordinates; `^` takes a nonnegative integer
//! exponent and applies to even coordinates only. The written order of odd
//! factors is respected before canonicalization, so `x4*x3` parses to the
//! reordered canonical term with its Koszul sign.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::superfield::{ChartSpec, Parity, Rat, SuperFunction};

/// Parse result: the canonical value plus a flag raised when a product term
/// vanished because an odd coordinate squared.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub value: SuperFunction,
    pub odd_square_warning: bool,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    chart: Arc<ChartSpec>,
    odd_square: bool,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer literal too large"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<SuperFunction> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                let mut value = Rat::from_integer(n.into());
                if self.peek() == Some(b'/') {
                    self.bump();
                    let d = self.nat()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rat::from_integer(d.into());
                }
                Ok(SuperFunction::constant(&self.chart, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let idx = self
                    .chart
                    .coord_index(&name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                let base = SuperFunction::coord(&self.chart, idx as usize)?;
                if self.peek() == Some(b'^') {
                    self.bump();
                    if self.chart.coord_parity(idx) == Parity::Odd {
                        return Err(self.err(format!(
                            "`^` is only allowed on even coordinates (got `{name}`)"
                        )));
                    }
                    let e = self.nat()?;
                    if e > u32::MAX as u64 {
                        return Err(self.err("exponent too large"));
                    }
                    return Ok(base.pow(e as u32));
                }
                Ok(base)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn unary(&mut self) -> Result<SuperFunction> {
        if self.peek() == Some(b'-') {
            self.bump();
            let v = self.unary()?;
            return Ok(-&v);
        }
        self.atom()
    }

    fn term(&mut self) -> Result<SuperFunction> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let rhs = self.unary()?;
            let both_nonzero = !acc.is_zero() && !rhs.is_zero();
            let (prod, squared) = acc.mul_detect_odd_square(&rhs);
            if squared && both_nonzero {
                self.odd_square = true;
            }
            acc = prod;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<SuperFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses an expression over the chart into canonical form.
pub fn parse_expr(text: &str, chart: &Arc<ChartSpec>) -> Result<Parsed> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, chart: chart.clone(), odd_square: false };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(Parsed { value, odd_square_warning: p.odd_square })
}
