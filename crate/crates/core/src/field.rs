//! The local field K of formal Laurent series over GF(q), with t as the
//! prime element and |t| = 1/q.
//!
//! Elements are finite digit strings: x = sum of digit(e) * t^e over a finite
//! exponent range. Because the characteristic is positive there are no
//! carries, so every operation here is exact. `FieldParams` is the shared
//! context object: it owns the digit tables, the precision window for
//! exponents, the grid-size limit, and the character root table. It is
//! immutable after construction and can be shared freely across threads.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf::{GfTables, DEFAULT_TABLE_LIMIT};

pub const DEFAULT_WINDOW: (i32, i32) = (-60, 60);
/// Dense Fourier grids refuse to exceed this many cells by default.
pub const DEFAULT_MAX_GRID: u64 = 1 << 20;

#[derive(Debug)]
pub struct FieldParams {
    gf: GfTables,
    lo_min: i32,
    hi_max: i32,
    max_grid: u64,
    /// exp(2 pi i k / p) for k in 0..p.
    roots: Vec<Complex64>,
}

/// A Laurent-series element, stored canonically: `digits` is empty exactly
/// for zero, and otherwise starts and ends with a nonzero digit. `digits[i]`
/// is the GF(q) digit at exponent `lo + i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    lo: i32,
    digits: Vec<u16>,
}

/// A coset x + P^level, identified by its canonical representative: the
/// digits of x at exponents strictly below `level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetId {
    level: i32,
    rep: FieldElement,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement {
        lo: 0,
        digits: Vec::new(),
    };

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Exponent of the lowest nonzero digit; None for zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.digits.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// One past the highest digit exponent (lo for zero).
    fn hi(&self) -> i32 {
        self.lo + self.digits.len() as i32
    }

    pub fn digit_at(&self, exp: i32) -> u64 {
        if exp < self.lo || exp >= self.hi() {
            0
        } else {
            self.digits[(exp - self.lo) as usize] as u64
        }
    }

    /// (exponent, digit) pairs of the nonzero digits, ascending.
    pub fn iter_digits(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (self.lo + i as i32, d as u64))
    }
}

impl Ord for FieldElement {
    /// Lexicographic on digit strings read from the lowest exponent, the
    /// same order `coset_reps` enumerates.
    fn cmp(&self, other: &Self) -> Ordering {
        let lo = match (self.digits.is_empty(), other.digits.is_empty()) {
            (true, true) => return Ordering::Equal,
            (true, false) => other.lo,
            (false, true) => self.lo,
            (false, false) => self.lo.min(other.lo),
        };
        let hi = self.hi().max(other.hi());
        for e in lo..hi {
            match self.digit_at(e).cmp(&other.digit_at(e)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CosetId {
    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn rep(&self) -> &FieldElement {
        &self.rep
    }
}

impl FieldParams {
    /// Build the field context for q = p^c. When `irreducible` is omitted the
    /// smallest monic irreducible of degree c (by base-p integer encoding of
    /// its low coefficients) is selected, so the digit encoding is stable.
    pub fn new(p: u64, c: u32, irreducible: Option<&[u64]>) -> Result<FieldParams> {
        Self::with_limits(
            p,
            c,
            irreducible,
            DEFAULT_WINDOW,
            DEFAULT_MAX_GRID,
            DEFAULT_TABLE_LIMIT,
        )
    }

    pub fn with_limits(
        p: u64,
        c: u32,
        irreducible: Option<&[u64]>,
        window: (i32, i32),
        max_grid: u64,
        table_limit: u64,
    ) -> Result<FieldParams> {
        let gf = GfTables::new(p, c, irreducible, table_limit)?;
        let mut roots = Vec::with_capacity(p as usize);
        for k in 0..p {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (p as f64);
            // Snap components that are exactly representable (0, +-1, +-1/2)
            // so cancellations in character sums come out exact.
            let snap = |v: f64| {
                for target in [0.0, 1.0, -1.0, 0.5, -0.5] {
                    if (v - target).abs() < 1e-15 {
                        return target;
                    }
                }
                v
            };
            roots.push(Complex64::new(snap(angle.cos()), snap(angle.sin())));
        }
        Ok(FieldParams {
            gf,
            lo_min: window.0,
            hi_max: window.1,
            max_grid,
            roots,
        })
    }

    pub fn new_shared(p: u64, c: u32) -> Result<Arc<FieldParams>> {
        Ok(Arc::new(Self::new(p, c, None)?))
    }

    pub fn p(&self) -> u64 {
        self.gf.p()
    }

    pub fn c(&self) -> u32 {
        self.gf.c()
    }

    pub fn q(&self) -> u64 {
        self.gf.q()
    }

    pub fn qf(&self) -> f64 {
        self.gf.q() as f64
    }

    pub fn gf(&self) -> &GfTables {
        &self.gf
    }

    pub fn window(&self) -> (i32, i32) {
        (self.lo_min, self.hi_max)
    }

    pub fn max_grid(&self) -> u64 {
        self.max_grid
    }

    /// Two contexts describe the same field when p, c and the defining
    /// polynomial agree; limits may differ.
    pub fn same_field(&self, other: &FieldParams) -> bool {
        self.p() == other.p()
            && self.c() == other.c()
            && self.gf.irreducible() == other.gf.irreducible()
    }

    fn check_exp(&self, exp: i64) -> Result<()> {
        if exp < self.lo_min as i64 || exp > self.hi_max as i64 {
            return Err(Error::PrecisionOverflow {
                exp,
                lo: self.lo_min,
                hi: self.hi_max,
            });
        }
        Ok(())
    }

    /// Canonicalize a digit run starting at exponent `lo`.
    pub fn from_digits(&self, lo: i32, digits: Vec<u16>) -> Result<FieldElement> {
        let mut digits = digits;
        if digits.iter().any(|&d| d as u64 >= self.q()) {
            let bad = digits.iter().find(|&&d| d as u64 >= self.q()).unwrap();
            return Err(Error::BadDigit {
                digit: *bad as u64,
                q: self.q(),
            });
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let mut lo = lo;
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        if lead > 0 {
            digits.drain(..lead);
            lo += lead as i32;
        }
        if digits.is_empty() {
            return Ok(FieldElement::ZERO);
        }
        self.check_exp(lo as i64)?;
        self.check_exp(lo as i64 + digits.len() as i64 - 1)?;
        Ok(FieldElement { lo, digits })
    }

    /// digit * t^exp
    pub fn monomial(&self, digit: u64, exp: i32) -> Result<FieldElement> {
        if digit >= self.q() {
            return Err(Error::BadDigit {
                digit,
                q: self.q(),
            });
        }
        self.from_digits(exp, vec![digit as u16])
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            lo: 0,
            digits: vec![1],
        }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.clone();
        }
        let lo = x.lo.min(y.lo);
        let hi = x.hi().max(y.hi());
        let mut digits = Vec::with_capacity((hi - lo) as usize);
        for e in lo..hi {
            digits.push(self.gf.add(x.digit_at(e), y.digit_at(e)) as u16);
        }
        self.from_digits(lo, digits)
            .expect("sum stays inside the operands' window")
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        let digits = x.digits.iter().map(|&d| self.gf.neg(d as u64) as u16).collect();
        FieldElement { lo: x.lo, digits: trim_only_trailing(digits) }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() || y.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let lo = x.lo as i64 + y.lo as i64;
        let hi = (x.hi() - 1) as i64 + (y.hi() - 1) as i64;
        self.check_exp(lo)?;
        self.check_exp(hi)?;
        let mut digits = vec![0u16; (hi - lo + 1) as usize];
        for (i, &dx) in x.digits.iter().enumerate() {
            if dx == 0 {
                continue;
            }
            for (j, &dy) in y.digits.iter().enumerate() {
                let cell = &mut digits[i + j];
                *cell = self.gf.add(*cell as u64, self.gf.mul(dx as u64, dy as u64)) as u16;
            }
        }
        self.from_digits(lo as i32, digits)
    }

    /// Multiply by t^k (shift every digit exponent by k).
    pub fn shift(&self, x: &FieldElement, k: i32) -> Result<FieldElement> {
        if x.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let lo = x.lo as i64 + k as i64;
        self.check_exp(lo)?;
        self.check_exp(lo + x.digits.len() as i64 - 1)?;
        Ok(FieldElement {
            lo: lo as i32,
            digits: x.digits.clone(),
        })
    }

    /// |x| = q^(-valuation), |0| = 0.
    pub fn abs(&self, x: &FieldElement) -> f64 {
        match x.valuation() {
            None => 0.0,
            Some(v) => self.qf().powi(-v),
        }
    }

    /// Truncate to the coset x + P^level: keep digits at exponents < level.
    pub fn coset_of(&self, x: &FieldElement, level: i32) -> CosetId {
        let rep = if x.is_zero() || x.lo >= level {
            FieldElement::ZERO
        } else {
            let keep = ((level - x.lo) as usize).min(x.digits.len());
            let digits = trim_only_trailing(x.digits[..keep].to_vec());
            if digits.is_empty() {
                FieldElement::ZERO
            } else {
                FieldElement { lo: x.lo, digits }
            }
        };
        CosetId { level, rep }
    }

    /// Number of cosets of P^level inside P^(-bound): q^(level + bound).
    pub fn grid_size(&self, level: i32, bound: i32) -> Result<u64> {
        let span = level as i64 + bound as i64;
        if span < 0 {
            return Err(Error::InvalidWindow {
                resolution: level,
                support: bound,
            });
        }
        let mut size = 1u128;
        for _ in 0..span {
            size *= self.q() as u128;
            if size > self.max_grid as u128 {
                return Err(Error::GridLimit {
                    size,
                    limit: self.max_grid,
                });
            }
        }
        Ok(size as u64)
    }

    /// The n-th canonical representative of a level cosets grid inside
    /// P^(-bound): base-q digits of n placed at exponents level-1, level-2, ...
    /// The first q^(level+b) indices enumerate P^(-b) for every b <= bound, so
    /// prefixes of the enumeration are stable as the bound grows.
    pub fn rep_from_index(&self, level: i32, bound: i32, index: u64) -> Result<FieldElement> {
        let size = self.grid_size(level, bound)?;
        debug_assert!(index < size, "index {index} outside grid of {size}");
        let span = (level as i64 + bound as i64) as usize;
        if span == 0 {
            return Ok(FieldElement::ZERO);
        }
        self.check_exp(level as i64 - 1)?;
        self.check_exp(-(bound as i64))?;
        let mut digits = vec![0u16; span];
        let mut n = index;
        for pos in 0..span {
            // exponent level-1-pos holds digit (n / q^pos) % q
            digits[span - 1 - pos] = (n % self.q()) as u16;
            n /= self.q();
        }
        self.from_digits(level - span as i32, digits)
    }

    /// Inverse of `rep_from_index` for canonical representatives.
    pub fn grid_index(&self, level: i32, rep: &FieldElement) -> u64 {
        let mut acc = 0u64;
        for (e, d) in rep.iter_digits() {
            debug_assert!(e < level);
            acc += d * self.q().pow((level - 1 - e) as u32);
        }
        acc
    }

    /// All cosets of P^level inside P^(-bound), in the canonical order
    /// (zero coset first).
    pub fn coset_reps(&self, level: i32, bound: i32) -> Result<Vec<CosetId>> {
        let size = self.grid_size(level, bound)?;
        let mut out = Vec::with_capacity(size as usize);
        for n in 0..size {
            out.push(CosetId {
                level,
                rep: self.rep_from_index(level, bound, n)?,
            });
        }
        Ok(out)
    }

    /// The standard character paired at (xi, x): exp(2 pi i tr(a)/p) where a
    /// is the t^(-1) digit of xi*x. Only that digit is needed, so this never
    /// touches the precision window.
    pub fn character(&self, xi: &FieldElement, x: &FieldElement) -> Complex64 {
        self.roots[self.char_phase(xi, x) as usize]
    }

    /// tr(coefficient of t^(-1) in xi*x), an integer in 0..p.
    pub fn char_phase(&self, xi: &FieldElement, x: &FieldElement) -> u64 {
        let mut acc = 0u64;
        for (e, d) in xi.iter_digits() {
            let other = x.digit_at(-1 - e);
            if other != 0 {
                acc = self.gf.add(acc, self.gf.mul(d, other));
            }
        }
        self.gf.trace(acc)
    }

    pub fn root_of_unity(&self, phase: u64) -> Complex64 {
        self.roots[(phase % self.p()) as usize]
    }

    /// Render an element in the literal form `q=<p>^<c>; <digit>@<exp>,...`,
    /// digits ascending by exponent; for c > 1 each digit is a coefficient
    /// tuple `(a0,...)`. Zero renders as the bare header.
    pub fn emit_element(&self, x: &FieldElement) -> String {
        let mut out = format!("q={}^{};", self.p(), self.c());
        let mut first = true;
        for (e, d) in x.iter_digits() {
            if first {
                out.push(' ');
                first = false;
            } else {
                out.push(',');
            }
            if self.c() == 1 {
                let _ = write!(out, "{d}@{e}");
            } else {
                let coeffs = self.gf.coeffs(d);
                let parts: Vec<String> = coeffs.iter().map(|a| a.to_string()).collect();
                let _ = write!(out, "({})@{e}", parts.join(","));
            }
        }
        out
    }

    /// Parse the literal form produced by `emit_element`. Exponents must be
    /// strictly increasing; zero digits are dropped. Errors carry the byte
    /// offset into `src`.
    pub fn parse_element(&self, src: &str) -> Result<FieldElement> {
        let mut s = Scanner::new(src);
        s.expect_str("q=")?;
        let p = s.uint()?;
        s.expect_str("^")?;
        let c = s.uint()?;
        if p != self.p() || c != self.c() as u64 {
            return Err(Error::Parse {
                offset: 0,
                msg: format!(
                    "literal is for q={}^{}, context is q={}^{}",
                    p,
                    c,
                    self.p(),
                    self.c()
                ),
            });
        }
        s.expect_str(";")?;
        s.skip_ws();
        let mut pairs: Vec<(i32, u64)> = Vec::new();
        if !s.at_end() {
            loop {
                let digit = if self.c() == 1 {
                    s.uint()?
                } else {
                    let open = s.pos;
                    s.expect_str("(")?;
                    let mut coeffs = Vec::new();
                    loop {
                        coeffs.push(s.uint()?);
                        if s.eat(",") {
                            continue;
                        }
                        s.expect_str(")")?;
                        break;
                    }
                    if coeffs.len() != self.c() as usize {
                        return Err(Error::Parse {
                            offset: open,
                            msg: format!("digit tuple needs {} coefficients", self.c()),
                        });
                    }
                    self.gf.from_coeffs(&coeffs).map_err(|_| Error::Parse {
                        offset: open,
                        msg: format!("digit coefficients must lie below p={}", self.p()),
                    })?
                };
                if digit >= self.q() {
                    return Err(Error::Parse {
                        offset: s.pos,
                        msg: format!("digit {digit} outside 0..{}", self.q()),
                    });
                }
                s.expect_str("@")?;
                let exp = s.int()?;
                if let Some(&(last, _)) = pairs.last() {
                    if exp <= last as i64 {
                        return Err(Error::Parse {
                            offset: s.pos,
                            msg: "exponents must be strictly increasing".into(),
                        });
                    }
                }
                self.check_exp(exp).map_err(|_| Error::Parse {
                    offset: s.pos,
                    msg: format!("exponent {exp} outside the precision window"),
                })?;
                pairs.push((exp as i32, digit));
                if s.eat(",") {
                    s.skip_ws();
                    continue;
                }
                break;
            }
        }
        s.skip_ws();
        if !s.at_end() {
            return Err(Error::Parse {
                offset: s.pos,
                msg: "trailing input after element literal".into(),
            });
        }
        pairs.retain(|&(_, d)| d != 0);
        if pairs.is_empty() {
            return Ok(FieldElement::ZERO);
        }
        let lo = pairs[0].0;
        let hi = pairs.last().unwrap().0;
        let mut digits = vec![0u16; (hi - lo + 1) as usize];
        for (e, d) in pairs {
            digits[(e - lo) as usize] = d as u16;
        }
        self.from_digits(lo, digits)
    }
}

fn trim_only_trailing(mut digits: Vec<u16>) -> Vec<u16> {
    while digits.last() == Some(&0) {
        digits.pop();
    }
    digits
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(Error::Parse {
                offset: self.pos,
                msg: format!("expected `{s}`"),
            })
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse {
                offset: start,
                msg: "expected a number".into(),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                msg: "number out of range".into(),
            })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat("-");
        let mag = self.uint()? as i64;
        Ok(if neg { -mag } else { mag })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldParams {
        FieldParams::new(2, 1, None).unwrap()
    }

    fn f3() -> FieldParams {
        FieldParams::new(3, 1, None).unwrap()
    }

    #[test]
    fn characteristic_two_addition() {
        let k = f2();
        let x = k.monomial(1, 0).unwrap();
        assert!(k.add(&x, &x).is_zero());
    }

    #[test]
    fn laurent_product_in_f3() {
        let k = f3();
        // (1 + 2t)(2 + t) = 2 + 2t + 2t^2
        let a = k.from_digits(0, vec![1, 2]).unwrap();
        let b = k.from_digits(0, vec![2, 1]).unwrap();
        let prod = k.mul(&a, &b).unwrap();
        assert_eq!(prod, k.from_digits(0, vec![2, 2, 2]).unwrap());
    }

    #[test]
    fn monomial_product_shifts_valuation() {
        let k = f2();
        let a = k.monomial(1, -1).unwrap();
        let b = k.monomial(1, 3).unwrap();
        assert_eq!(k.mul(&a, &b).unwrap(), k.monomial(1, 2).unwrap());
    }

    #[test]
    fn absolute_value() {
        let k = f3();
        assert_eq!(k.abs(&FieldElement::ZERO), 0.0);
        assert_eq!(k.abs(&k.one()), 1.0);
        assert_eq!(k.abs(&k.monomial(1, 1).unwrap()), 1.0 / 3.0);
        // |u t^-2| = q^2 for any unit u
        let u = k.from_digits(-2, vec![2, 1]).unwrap();
        assert_eq!(k.abs(&u), 9.0);
    }

    #[test]
    fn precision_window_is_enforced() {
        let k = FieldParams::with_limits(2, 1, None, (-4, 4), 1 << 20, 4096).unwrap();
        let deep = k.monomial(1, -3).unwrap();
        let err = k.mul(&deep, &deep).unwrap_err();
        assert!(matches!(err, Error::PrecisionOverflow { exp: -6, .. }));
        assert!(k.shift(&deep, 7).is_ok());
        assert!(k.shift(&deep, 8).is_err());
    }

    #[test]
    fn coset_truncation() {
        let k = f2();
        let x = k.from_digits(-1, vec![1, 1, 1]).unwrap(); // t^-1 + 1 + t
        let c = k.coset_of(&x, 1);
        assert_eq!(c.level(), 1);
        assert_eq!(c.rep(), &k.from_digits(-1, vec![1, 1]).unwrap());
        // digits at or above the level are absorbed
        let c0 = k.coset_of(&k.monomial(1, 5).unwrap(), 0);
        assert!(c0.rep().is_zero());
    }

    #[test]
    fn coset_reps_f2_level2_bound1() {
        let k = f2();
        let reps = k.coset_reps(2, 1).unwrap();
        assert_eq!(reps.len(), 8);
        assert!(reps[0].rep().is_zero());
        // all distinct, and stable indices invert correctly
        for (i, c) in reps.iter().enumerate() {
            assert_eq!(k.grid_index(2, c.rep()), i as u64);
            for d in reps.iter().skip(i + 1) {
                assert_ne!(c, d);
            }
        }
    }

    #[test]
    fn coset_reps_f3_negative_window() {
        let k = f3();
        let reps = k.coset_reps(0, 1).unwrap();
        let lits: Vec<String> = reps.iter().map(|c| k.emit_element(c.rep())).collect();
        assert_eq!(lits, vec!["q=3^1;", "q=3^1; 1@-1", "q=3^1; 2@-1"]);
    }

    #[test]
    fn grid_size_limits() {
        let k = FieldParams::with_limits(2, 1, None, DEFAULT_WINDOW, 16, 4096).unwrap();
        assert_eq!(k.grid_size(2, 2).unwrap(), 16);
        assert!(matches!(k.grid_size(3, 2), Err(Error::GridLimit { .. })));
        assert!(matches!(
            k.grid_size(0, -1),
            Err(Error::InvalidWindow { .. })
        ));
        // span zero is the single coset P^m = P^-M
        assert_eq!(k.grid_size(3, -3).unwrap(), 1);
    }

    #[test]
    fn enumeration_prefix_is_bound_stable() {
        let k = f3();
        let small = k.coset_reps(1, 1).unwrap();
        let large = k.coset_reps(1, 3).unwrap();
        for (a, b) in small.iter().zip(large.iter()) {
            assert_eq!(a.rep(), b.rep());
        }
    }

    #[test]
    fn character_is_trivial_on_integers_nontrivial_on_p_inverse() {
        let k = f2();
        let one = k.one();
        let t = k.monomial(1, 1).unwrap();
        let tinv = k.monomial(1, -1).unwrap();
        assert_eq!(k.character(&one, &one), Complex64::new(1.0, 0.0));
        assert_eq!(k.character(&t, &one), Complex64::new(1.0, 0.0));
        // chi(t^-1) = exp(pi i) = -1 over F_2
        assert_eq!(k.character(&tinv, &one), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn character_additive_in_x() {
        let k = f3();
        let xi = k.from_digits(-2, vec![1, 2]).unwrap();
        let x = k.from_digits(-1, vec![2, 1, 1]).unwrap();
        let y = k.from_digits(0, vec![1, 0, 2]).unwrap();
        let lhs = k.character(&xi, &k.add(&x, &y));
        let rhs = k.character(&xi, &x) * k.character(&xi, &y);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn element_literal_roundtrip() {
        let k = f2();
        let x = k.from_digits(-1, vec![1, 1]).unwrap();
        let lit = k.emit_element(&x);
        assert_eq!(lit, "q=2^1; 1@-1,1@0");
        assert_eq!(k.parse_element(&lit).unwrap(), x);
        assert_eq!(k.parse_element("q=2^1;").unwrap(), FieldElement::ZERO);
    }

    #[test]
    fn element_literal_tuples_for_extensions() {
        let k = FieldParams::new(3, 2, None).unwrap();
        let d = k.gf().from_coeffs(&[1, 2]).unwrap();
        let x = k
            .add(&k.monomial(d, 0).unwrap(), &k.monomial(1, 3).unwrap());
        let lit = k.emit_element(&x);
        assert_eq!(lit, "q=3^2; (1,2)@0,(1,0)@3");
        assert_eq!(k.parse_element(&lit).unwrap(), x);
    }

    #[test]
    fn element_literal_errors_carry_offsets() {
        let k = f2();
        let err = k.parse_element("q=3^1; 1@0").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 0, .. }));
        let err = k.parse_element("q=2^1; 1@0,1@0").unwrap_err();
        match err {
            Error::Parse { offset, msg } => {
                assert_eq!(offset, 14);
                assert!(msg.contains("strictly increasing"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = k.parse_element("q=2^1; 1#0").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 8, .. }));
    }

    #[test]
    fn ordering_matches_enumeration() {
        let k = f3();
        let reps = k.coset_reps(2, 2).unwrap();
        for w in reps.windows(2) {
            assert!(w[0].rep() < w[1].rep());
        }
    }
}
