//! Dirac ket text for qubit states.
//!
//! ```text
//! state := [sign] term (('+' | '-') term)*
//! term  := [coef ['*']] '|' bit+ '>'
//! coef  := decimal | decimal '/' int | decimal '/sqrt(' int ')'
//!        | '(' [sign] decimal ('+' | '-') decimal 'i' ')'
//! ```
//!
//! Whitespace between tokens is ignored. Repeated kets are summed. For
//! example `1/2|000> - 1/2|100> + 1/sqrt(2)|101>`.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::state::{QubitState, MAX_QUBITS};
use crate::tensor::Complex;
use crate::DEFAULT_TOL;

/// Largest deviation of the parsed norm from 1 accepted by
/// [`Normalization::Check`].
pub const NORMALIZATION_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Reject norms off by more than [`NORMALIZATION_SLACK`]; smaller
    /// deviations (beyond rounding) are scaled away.
    #[default]
    Check,
    /// Scale any nonzero vector to unit norm.
    Renormalize,
    /// Keep the amplitudes as written.
    Skip,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

struct Term {
    coef: Complex,
    bits: usize,
    width: usize,
    at: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError::new(at, msg))
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> std::result::Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{}'", b as char))
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn decimal(&mut self) -> std::result::Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut n = self.digits();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += self.digits();
        }
        if n == 0 {
            self.pos = start;
            return self.err(start, "expected a number");
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                self.pos = save;
            }
        }
        match self.src[start..self.pos].parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => self.err(start, "number out of range"),
        }
    }

    fn integer(&mut self) -> std::result::Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.digits() == 0 {
            return self.err(start, "expected an integer");
        }
        Ok(self.src[start..self.pos].parse::<f64>().expect("digits parse"))
    }

    fn complex(&mut self) -> std::result::Result<Complex, ParseError> {
        // after '('
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let re = self.decimal()?;
        let sign = if self.eat(b'+') {
            1.0
        } else if self.eat(b'-') {
            -1.0
        } else {
            return self.err(self.pos, "expected '+' or '-' in complex coefficient");
        };
        let im = self.decimal()?;
        self.expect(b'i')?;
        self.expect(b')')?;
        Ok(Complex::new(if neg { -re } else { re }, sign * im))
    }

    fn coefficient(&mut self) -> std::result::Result<Complex, ParseError> {
        if self.eat(b'(') {
            return self.complex();
        }
        let num = self.decimal()?;
        if !self.eat(b'/') {
            return Ok(Complex::new(num, 0.0));
        }
        self.skip_ws();
        let at = self.pos;
        if self.src[self.pos..].starts_with("sqrt") {
            self.pos += 4;
            self.expect(b'(')?;
            let v = self.integer()?;
            self.expect(b')')?;
            if v == 0.0 {
                return self.err(at, "division by zero");
            }
            let root = v.sqrt();
            // sqrt(1/v) rounds 1/sqrt(2) correctly where 1/sqrt(2.0) does not
            let value = if root * root == v {
                num / root
            } else {
                num * v.recip().sqrt()
            };
            return Ok(Complex::new(value, 0.0));
        }
        let den = self.integer()?;
        if den == 0.0 {
            return self.err(at, "division by zero");
        }
        Ok(Complex::new(num / den, 0.0))
    }

    fn term(&mut self) -> std::result::Result<Term, ParseError> {
        self.skip_ws();
        let coef = if self.peek() == Some(b'|') {
            Complex::new(1.0, 0.0)
        } else {
            let c = self.coefficient()?;
            self.eat(b'*');
            c
        };
        self.skip_ws();
        let at = self.pos;
        self.expect(b'|')?;
        let start = self.pos;
        let mut bits = 0usize;
        while let Some(b @ (b'0' | b'1')) = self.peek() {
            if self.pos - start >= MAX_QUBITS {
                return self.err(self.pos, format!("ket longer than {MAX_QUBITS} qubits"));
            }
            bits = (bits << 1) | usize::from(b == b'1');
            self.pos += 1;
        }
        let width = self.pos - start;
        if width == 0 {
            return self.err(self.pos, "expected '0' or '1'");
        }
        if self.peek() != Some(b'>') {
            return self.err(self.pos, "expected '>'");
        }
        self.pos += 1;
        Ok(Term { coef, bits, width, at })
    }

    fn state(&mut self) -> std::result::Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1.0
        } else {
            self.eat(b'+');
            1.0
        };
        loop {
            let mut t = self.term()?;
            t.coef *= sign;
            if let Some(first) = terms.first() {
                let first: &Term = first;
                if t.width != first.width {
                    return self.err(t.at, format!("ket has {} qubits, expected {}", t.width, first.width));
                }
            }
            terms.push(t);
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(_) => return self.err(self.pos, "expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }
}

/// Parses ket text into raw amplitudes (no normalization).
pub fn parse_amplitudes(text: &str) -> Result<Vec<Complex>> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(ParseError::new(0, "empty input").into());
    }
    let terms = p.state()?;
    let width = terms[0].width;
    let mut amps = vec![Complex::new(0.0, 0.0); 1 << width];
    for t in terms {
        amps[t.bits] += t.coef;
    }
    if let Some(i) = amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(amps)
}

pub fn parse_ket(text: &str) -> Result<QubitState> {
    parse_ket_with(text, Normalization::Check)
}

pub fn parse_ket_with(text: &str, mode: Normalization) -> Result<QubitState> {
    normalize(parse_amplitudes(text)?, mode)
}

/// Applies `mode` to a raw amplitude vector.
pub fn normalize(amps: Vec<Complex>, mode: Normalization) -> Result<QubitState> {
    match mode {
        Normalization::Skip => QubitState::unnormalized(amps),
        Normalization::Renormalize => QubitState::renormalized(amps),
        Normalization::Check => {
            let s = QubitState::unnormalized(amps)?;
            let norm = s.norm();
            if (norm - 1.0).abs() > NORMALIZATION_SLACK {
                Err(Error::NotNormalized { norm })
            } else if (norm - 1.0).abs() > DEFAULT_TOL {
                QubitState::renormalized(s.into_amplitudes())
            } else {
                Ok(s)
            }
        }
    }
}

/// Ket text that [`parse_amplitudes`] reads back to the same amplitudes.
pub fn format_ket(s: &QubitState) -> String {
    let n = s.num_qubits();
    let mut out = String::new();
    for (j, z) in s.amplitudes().iter().enumerate() {
        if z.re == 0.0 && z.im == 0.0 {
            continue;
        }
        let first = out.is_empty();
        if z.im == 0.0 {
            let neg = z.re.is_sign_negative();
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let _ = write!(out, "{}", z.re.abs());
        } else {
            if !first {
                out.push_str(" + ");
            }
            let sep = if z.im.is_sign_negative() { '-' } else { '+' };
            let _ = write!(out, "({}{}{}i)", z.re, sep, z.im.abs());
        }
        let _ = write!(out, "|{j:0n$b}>");
    }
    out
}

impl std::fmt::Display for QubitState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_ket(self))
    }
}
