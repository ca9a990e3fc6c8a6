//! Finite-field digit arithmetic for GF(q), q = p^c.
//!
//! An element a0 + a1*x + ... + a_{c-1}*x^{c-1} of GF(p)[x]/(f) is encoded as
//! the integer a0 + a1*p + ... + a_{c-1}*p^{c-1}. All products and sums are
//! table lookups after construction, so digit arithmetic never allocates.

use crate::error::{Error, Result};

/// Upper bound on q for materialized q-by-q tables. Two u16 tables at this
/// size stay near 32 MiB; raise it explicitly if a larger field is needed.
pub const DEFAULT_TABLE_LIMIT: u64 = 4096;

#[derive(Debug, Clone)]
pub struct GfTables {
    p: u64,
    c: u32,
    q: u64,
    /// Monic defining polynomial, low coefficient first, length c+1.
    irreducible: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    /// Field trace GF(q) -> GF(p); entries are in 0..p.
    trace: Vec<u16>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn decode(p: u64, c: u32, mut e: u64) -> Vec<u64> {
    let mut out = vec![0u64; c as usize];
    for slot in out.iter_mut() {
        *slot = e % p;
        e /= p;
    }
    out
}

fn encode(p: u64, coeffs: &[u64]) -> u64 {
    let mut acc = 0u64;
    for &a in coeffs.iter().rev() {
        acc = acc * p + a;
    }
    acc
}

/// Remainder of `a` modulo monic `m` over GF(p); both low-first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * mi) % p;
                r[idx] = (r[idx] + p * p - sub) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 && deg > 1 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        let span = p.pow(d as u32);
        for n in 0..span {
            let mut g = decode(p, d as u32, n);
            g.push(1); // monic degree d
            if is_zero_poly(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree c over GF(p), ordered by the base-p
/// integer encoding of the non-leading coefficients.
fn find_irreducible(p: u64, c: u32) -> Vec<u64> {
    let span = p.pow(c);
    for n in 0..span {
        let mut f = decode(p, c, n);
        f.push(1);
        if poly_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl GfTables {
    pub fn new(p: u64, c: u32, irreducible: Option<&[u64]>, table_limit: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if c == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(c).filter(|&q| q <= table_limit).ok_or({
            Error::TableLimit {
                q: p.saturating_pow(c),
                limit: table_limit,
            }
        })?;

        let irr: Vec<u64> = match irreducible {
            Some(f) => {
                let ok = f.len() == c as usize + 1
                    && *f.last().unwrap() == 1
                    && f.iter().all(|&a| a < p);
                if !ok {
                    return Err(Error::BadPolynomial { degree: c, p });
                }
                if c > 1 && !poly_irreducible(f, p) {
                    return Err(Error::Reducible { p });
                }
                f.to_vec()
            }
            None => {
                if c == 1 {
                    vec![0, 1] // the polynomial x; GF(p) itself
                } else {
                    find_irreducible(p, c)
                }
            }
        };

        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let da = decode(p, c, a);
            let mneg: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = encode(p, &mneg) as u16;
            for b in 0..q {
                let db = decode(p, c, b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(p, &sum) as u16;
                let prod = poly_rem(&poly_mul(&da, &db, p), &irr, p);
                let mut padded = prod;
                padded.resize(c as usize, 0);
                mul[(a * q + b) as usize] = encode(p, &padded) as u16;
            }
        }

        let mut tables = GfTables {
            p,
            c,
            q,
            irreducible: irr,
            add,
            mul,
            neg,
            trace: Vec::new(),
        };
        let mut trace = vec![0u16; qs];
        for a in 0..q {
            let mut acc = 0u64;
            let mut frob = a;
            for _ in 0..c {
                acc = tables.add(acc, frob);
                frob = tables.pow(frob, p);
            }
            debug_assert!(acc < p, "trace must land in the prime subfield");
            trace[a as usize] = acc as u16;
        }
        tables.trace = trace;
        tables.verify()?;
        Ok(tables)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn irreducible(&self) -> &[u64] {
        &self.irreducible
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize] as u64
    }

    /// Field trace down to GF(p), returned as an integer in 0..p.
    #[inline]
    pub fn trace(&self, a: u64) -> u64 {
        self.trace[a as usize] as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient tuple (a0, ..., a_{c-1}) of an encoded element.
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        decode(self.p, self.c, a)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        if coeffs.len() != self.c as usize || coeffs.iter().any(|&a| a >= self.p) {
            return Err(Error::BadDigit {
                digit: encode(self.p, coeffs),
                q: self.q,
            });
        }
        Ok(encode(self.p, coeffs))
    }

    /// Identity, inverse, commutativity and trace checks run in full;
    /// associativity and distributivity run on all triples for q <= 9 and on
    /// a fixed sample of 4096 triples above that.
    fn verify(&self) -> Result<()> {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(Error::AxiomFailure("identity"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::AxiomFailure("additive inverse"));
            }
            if a != 0 && !(0..q).any(|b| self.mul(a, b) == 1) {
                return Err(Error::AxiomFailure("multiplicative inverse"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomFailure("commutativity"));
                }
                if self.trace(self.add(a, b)) != (self.trace(a) + self.trace(b)) % self.p {
                    return Err(Error::AxiomFailure("trace additivity"));
                }
            }
        }
        if !(0..self.p).all(|v| (0..q).any(|a| self.trace(a) == v)) {
            return Err(Error::AxiomFailure("trace surjectivity"));
        }

        let check = |a: u64, b: u64, x: u64| -> Result<()> {
            if self.mul(self.mul(a, b), x) != self.mul(a, self.mul(b, x)) {
                return Err(Error::AxiomFailure("associativity"));
            }
            if self.mul(a, self.add(b, x)) != self.add(self.mul(a, b), self.mul(a, x)) {
                return Err(Error::AxiomFailure("distributivity"));
            }
            Ok(())
        };
        if q <= 9 {
            for a in 0..q {
                for b in 0..q {
                    for x in 0..q {
                        check(a, b, x)?;
                    }
                }
            }
        } else {
            let mut state = 0x0071_5c0d_e1ba_da55_u64;
            for _ in 0..4096 {
                let a = splitmix64(&mut state) % q;
                let b = splitmix64(&mut state) % q;
                let x = splitmix64(&mut state) % q;
                check(a, b, x)?;
            }
        }
        Ok(())
    }
}
