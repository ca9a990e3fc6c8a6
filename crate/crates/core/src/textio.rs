//! The function document format: a plain-text description of a step
//! function that survives a round trip byte for byte.
//!
//! ```text
//! # comment
//! field { p = 3, c = 1 }
//! side frequency
//! resolution 2
//! support 1
//! term { center = "q=3^1; 1@-1", level = 1, coef = [0.5, -2] }
//! ```
//!
//! The `side` line is omitted for spatial functions. Terms add
//! coef * indicator(center + P^level); emission writes one term per occupied
//! cell, so documents produced by `emit_function_doc` parse back exactly.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams};
use crate::step::{Side, StepFunction};

#[derive(Debug, Clone)]
pub struct FunctionTerm {
    pub center: FieldElement,
    pub level: i32,
    pub coef: Complex64,
}

#[derive(Debug, Clone)]
pub struct FunctionDoc {
    pub params: Arc<FieldParams>,
    pub side: Side,
    pub resolution: i32,
    pub support: i32,
    pub terms: Vec<FunctionTerm>,
}

impl FunctionDoc {
    pub fn to_step(&self) -> Result<StepFunction> {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|t| (t.center.clone(), t.level, t.coef))
            .collect();
        StepFunction::from_terms(
            self.params.clone(),
            self.side,
            self.resolution,
            self.support,
            &terms,
        )
    }

    /// One term per occupied cell, in storage order.
    pub fn from_step(f: &StepFunction) -> FunctionDoc {
        let terms = f
            .values()
            .iter()
            .map(|(key, &coef)| FunctionTerm {
                center: key.rep().clone(),
                level: key.level(),
                coef,
            })
            .collect();
        FunctionDoc {
            params: f.params().clone(),
            side: f.side(),
            resolution: f.resolution(),
            support: f.support_bound(),
            terms,
        }
    }
}

pub fn emit_function_doc(doc: &FunctionDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "field {{ p = {}, c = {} }}\n",
        doc.params.p(),
        doc.params.c()
    ));
    if doc.side == Side::Frequency {
        out.push_str("side frequency\n");
    }
    out.push_str(&format!("resolution {}\n", doc.resolution));
    out.push_str(&format!("support {}\n", doc.support));
    for t in &doc.terms {
        out.push_str(&format!(
            "term {{ center = \"{}\", level = {}, coef = [{}, {}] }}\n",
            doc.params.emit_element(&t.center),
            t.level,
            t.coef.re,
            t.coef.im
        ));
    }
    out
}

pub fn parse_function_doc(src: &str) -> Result<FunctionDoc> {
    let mut s = Scanner::new(src);
    s.expect_word("field")?;
    s.expect_punct('{')?;
    s.expect_word("p")?;
    s.expect_punct('=')?;
    let p = s.uint()?;
    s.expect_punct(',')?;
    s.expect_word("c")?;
    s.expect_punct('=')?;
    let c = s.uint()?;
    s.expect_punct('}')?;
    let params = FieldParams::new_shared(p, c as u32)?;

    let mut side = Side::Spatial;
    if s.peek_word("side") {
        s.expect_word("side")?;
        let at = s.pos;
        let word = s.word()?;
        side = match word.as_str() {
            "spatial" => Side::Spatial,
            "frequency" => Side::Frequency,
            _ => {
                return Err(Error::Parse {
                    offset: at,
                    msg: format!("unknown side `{word}`"),
                })
            }
        };
    }

    s.expect_word("resolution")?;
    let resolution = s.int()?;
    s.expect_word("support")?;
    let support = s.int()?;

    let mut terms = Vec::new();
    while !s.at_end() {
        s.expect_word("term")?;
        s.expect_punct('{')?;
        s.expect_word("center")?;
        s.expect_punct('=')?;
        let (lit, lit_at) = s.string()?;
        let center = params.parse_element(&lit).map_err(|e| match e {
            Error::Parse { offset, msg } => Error::Parse {
                offset: lit_at + 1 + offset,
                msg,
            },
            other => other,
        })?;
        s.expect_punct(',')?;
        s.expect_word("level")?;
        s.expect_punct('=')?;
        let level = s.int()?;
        s.expect_punct(',')?;
        s.expect_word("coef")?;
        s.expect_punct('=')?;
        s.expect_punct('[')?;
        let re = s.float()?;
        s.expect_punct(',')?;
        let im = s.float()?;
        s.expect_punct(']')?;
        s.expect_punct('}')?;
        terms.push(FunctionTerm {
            center,
            level,
            coef: Complex64::new(re, im),
        });
    }

    Ok(FunctionDoc {
        params,
        side,
        resolution,
        support,
        terms,
    })
}

/// Parse and build in one step.
pub fn parse_function(src: &str) -> Result<StepFunction> {
    parse_function_doc(src)?.to_step()
}

/// Render a step function as its canonical document.
pub fn emit_function(f: &StepFunction) -> String {
    emit_function_doc(&FunctionDoc::from_step(f))
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        let mut s = Scanner {
            bytes: src.as_bytes(),
            pos: 0,
        };
        s.skip_trivia();
        s
    }

    fn skip_trivia(&mut self) {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: at,
            msg: msg.into(),
        })
    }

    fn word(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected a word");
        }
        let w = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string();
        self.skip_trivia();
        Ok(w)
    }

    fn peek_word(&self, want: &str) -> bool {
        let end = self.pos + want.len();
        if end > self.bytes.len() || &self.bytes[self.pos..end] != want.as_bytes() {
            return false;
        }
        end == self.bytes.len()
            || !(self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
    }

    fn expect_word(&mut self, want: &str) -> Result<()> {
        let at = self.pos;
        if !self.peek_word(want) {
            return self.err(at, format!("expected `{want}`"));
        }
        self.pos += want.len();
        self.skip_trivia();
        Ok(())
    }

    fn expect_punct(&mut self, want: char) -> Result<()> {
        let at = self.pos;
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != want as u8 {
            return self.err(at, format!("expected `{want}`"));
        }
        self.pos += 1;
        self.skip_trivia();
        Ok(())
    }

    fn uint(&mut self) -> Result<u64> {
        let at = self.pos;
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(at, "expected an unsigned integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v = text
            .parse::<u64>()
            .map_err(|e| Error::Parse {
                offset: at,
                msg: e.to_string(),
            })?;
        self.skip_trivia();
        Ok(v)
    }

    fn int(&mut self) -> Result<i32> {
        let at = self.pos;
        let start = self.pos;
        if self.pos < self.bytes.len() && (self.bytes[self.pos] == b'-' || self.bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v = text.parse::<i32>().map_err(|_| Error::Parse {
            offset: at,
            msg: "expected an integer".into(),
        })?;
        self.skip_trivia();
        Ok(v)
    }

    fn float(&mut self) -> Result<f64> {
        let at = self.pos;
        let start = self.pos;
        while self.pos < self.bytes.len()
            && matches!(self.bytes[self.pos], b'0'..=b'9' | b'+' | b'-' | b'.' | b'e' | b'E')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v = text.parse::<f64>().map_err(|_| Error::Parse {
            offset: at,
            msg: "expected a number".into(),
        })?;
        if !v.is_finite() {
            return self.err(at, "coefficient must be finite");
        }
        self.skip_trivia();
        Ok(v)
    }

    /// A double-quoted literal; returns the contents and the offset of the
    /// opening quote.
    fn string(&mut self) -> Result<(String, usize)> {
        let at = self.pos;
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != b'"' {
            return self.err(at, "expected a quoted literal");
        }
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos] != b'"' {
            if self.bytes[self.pos] == b'\n' {
                return self.err(at, "unterminated literal");
            }
            self.pos += 1;
        }
        if self.pos >= self.bytes.len() {
            return self.err(at, "unterminated literal");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string();
        self.pos += 1;
        self.skip_trivia();
        Ok((text, at))
    }
}
