//! Trigonometric polynomials on `[0, π/2]` and their normalized integrals.
//!
//! A [`TrigPoly`] is a finite combination `a₀ + Σ aₖ cos kθ + Σ bₖ sin kθ` with
//! rational coefficients. Products are folded back into that basis with the
//! product-to-sum identities. The normalized trace `(2/π)∫₀^{π/2} f dθ` of such a
//! function always lands in `ℚ + ℚ·(1/π)`; it is returned as a [`PiValue`], a
//! polynomial in the formal symbol `λ = 1/π`. Because `π` is transcendental,
//! a `PiValue` is zero exactly when all of its coefficients are.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{fmt_q, half, parse_q, q, qf, to_f64, Q};

/// Element of `ℚ[λ]`, `λ` standing for `1/π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PiValue {
    // coeffs[d] multiplies λ^d; no trailing zeros
    coeffs: Vec<Q>,
}

impl PiValue {
    pub fn zero() -> Self {
        PiValue { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(q(1))
    }

    pub fn rational(v: Q) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// `λ = 1/π`.
    pub fn lambda() -> Self {
        Self::from_coeffs(vec![q(0), q(1)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiValue { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `λ^d`.
    pub fn coeff(&self, d: usize) -> Q {
        self.coeffs.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Returns the rational value when the element has no `λ` part.
    pub fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        PiValue {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Substitutes `λ = 1/π` in floating point. Diagnostics only.
    pub fn eval_numeric(&self) -> f64 {
        let lambda = std::f64::consts::FRAC_1_PI;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lambda + to_f64(c))
    }

    pub fn add_assign_ref(&mut self, other: &PiValue) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn add_scaled(&mut self, other: &PiValue, s: &Q) {
        if s.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Add for &PiValue {
    type Output = PiValue;
    fn add(self, rhs: &PiValue) -> PiValue {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for PiValue {
    type Output = PiValue;
    fn add(mut self, rhs: PiValue) -> PiValue {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Neg for &PiValue {
    type Output = PiValue;
    fn neg(self) -> PiValue {
        PiValue {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for PiValue {
    type Output = PiValue;
    fn neg(self) -> PiValue {
        -&self
    }
}

impl Sub for &PiValue {
    type Output = PiValue;
    fn sub(self, rhs: &PiValue) -> PiValue {
        self + &(-rhs)
    }
}

impl Sub for PiValue {
    type Output = PiValue;
    fn sub(self, rhs: PiValue) -> PiValue {
        &self - &rhs
    }
}

impl Mul for &PiValue {
    type Output = PiValue;
    fn mul(self, rhs: &PiValue) -> PiValue {
        if self.is_zero() || rhs.is_zero() {
            return PiValue::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiValue::from_coeffs(out)
    }
}

impl Mul for PiValue {
    type Output = PiValue;
    fn mul(self, rhs: PiValue) -> PiValue {
        &self * &rhs
    }
}

impl fmt::Display for PiValue {
    /// `q0 + q1*L + q2*L^2`, zero coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = if first { c.clone() } else { c.abs() };
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mono = match d {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{d}"),
            };
            if d == 0 {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if first && mag == -Q::one() {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&mag))?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Trigonometric polynomial `a₀ + Σ aₖ cos kθ + Σ bₖ sin kθ` on `[0, π/2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TrigPoly {
    cos: BTreeMap<u32, Q>,
    sin: BTreeMap<u32, Q>,
}

fn bump(map: &mut BTreeMap<u32, Q>, k: u32, v: Q) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(k).or_insert_with(Q::zero);
    *entry += v;
    if entry.is_zero() {
        map.remove(&k);
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: Q) -> Self {
        let mut p = Self::default();
        bump(&mut p.cos, 0, v);
        p
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    /// `c_k(θ) = cos kθ`; `cos_k(0)` is the constant 1.
    pub fn cos_k(k: u32) -> Self {
        let mut p = Self::default();
        p.cos.insert(k, q(1));
        p
    }

    /// `s_k(θ) = sin kθ`; `sin_k(0)` is zero.
    pub fn sin_k(k: u32) -> Self {
        let mut p = Self::default();
        if k > 0 {
            p.sin.insert(k, q(1));
        }
        p
    }

    pub fn c() -> Self {
        Self::cos_k(1)
    }

    pub fn s() -> Self {
        Self::sin_k(1)
    }

    pub fn is_zero(&self) -> bool {
        self.cos.is_empty() && self.sin.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.cos.get(&0).cloned().unwrap_or_else(Q::zero)
    }

    /// True when the polynomial is a (possibly zero) constant.
    pub fn is_constant(&self) -> bool {
        self.sin.is_empty() && self.cos.keys().all(|&k| k == 0)
    }

    /// Cosine coefficients `(k, aₖ)` including `k = 0`.
    pub fn cos_terms(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.cos.iter().map(|(k, v)| (*k, v))
    }

    pub fn sin_terms(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.sin.iter().map(|(k, v)| (*k, v))
    }

    /// Highest frequency present.
    pub fn max_frequency(&self) -> u32 {
        let c = self.cos.keys().next_back().copied().unwrap_or(0);
        let s = self.sin.keys().next_back().copied().unwrap_or(0);
        c.max(s)
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TrigPoly {
            cos: self.cos.iter().map(|(k, v)| (*k, v * s)).collect(),
            sin: self.sin.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (k, v) in &other.cos {
            bump(&mut out.cos, *k, v.clone());
        }
        for (k, v) in &other.sin {
            bump(&mut out.sin, *k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.scale(&q(-1)))
    }

    /// Exact product, folded back with the product-to-sum identities.
    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero();
        let h = half();
        for (&j, a) in &self.cos {
            for (&k, b) in &other.cos {
                // cos j cos k = ½cos(j−k) + ½cos(j+k)
                let w = a * b * &h;
                bump(&mut out.cos, j.abs_diff(k), w.clone());
                bump(&mut out.cos, j + k, w);
            }
            for (&k, b) in &other.sin {
                // cos j sin k = ½sin(k+j) + ½sin(k−j)
                let w = a * b * &h;
                bump(&mut out.sin, j + k, w.clone());
                add_signed_sin(&mut out, k as i64 - j as i64, w);
            }
        }
        for (&j, a) in &self.sin {
            for (&k, b) in &other.cos {
                // sin j cos k = ½sin(j+k) + ½sin(j−k)
                let w = a * b * &h;
                bump(&mut out.sin, j + k, w.clone());
                add_signed_sin(&mut out, j as i64 - k as i64, w);
            }
            for (&k, b) in &other.sin {
                // sin j sin k = ½cos(j−k) − ½cos(j+k)
                let w = a * b * &h;
                bump(&mut out.cos, j.abs_diff(k), w.clone());
                bump(&mut out.cos, j + k, -w);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TrigPoly {
        (0..e).fold(TrigPoly::one(), |acc, _| acc.mul(self))
    }

    /// Normalized trace `(2/π)∫₀^{π/2} f(θ) dθ`.
    pub fn trace(&self) -> PiValue {
        let mut lam = Q::zero();
        for (&k, a) in &self.cos {
            if k > 0 {
                lam += a * cos_integral(k);
            }
        }
        for (&k, b) in &self.sin {
            lam += b * sin_integral(k);
        }
        PiValue::from_coeffs(vec![self.constant_term(), lam])
    }

    /// Point evaluation, diagnostics only.
    pub fn eval(&self, theta: f64) -> f64 {
        let c: f64 = self
            .cos
            .iter()
            .map(|(k, v)| to_f64(v) * (*k as f64 * theta).cos())
            .sum();
        let s: f64 = self
            .sin
            .iter()
            .map(|(k, v)| to_f64(v) * (*k as f64 * theta).sin())
            .sum();
        c + s
    }

    pub fn parse(text: &str) -> Result<TrigPoly, TrigParseError> {
        let mut p = TrigParser {
            src: text.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(TrigParseError::Unexpected(p.pos));
        }
        Ok(v)
    }
}

fn add_signed_sin(out: &mut TrigPoly, k: i64, w: Q) {
    match k.cmp(&0) {
        std::cmp::Ordering::Greater => bump(&mut out.sin, k as u32, w),
        std::cmp::Ordering::Less => bump(&mut out.sin, (-k) as u32, -w),
        std::cmp::Ordering::Equal => {}
    }
}

/// λ-coefficient of the trace of `cos kθ`: `(2/k)·sin(kπ/2)`.
fn cos_integral(k: u32) -> Q {
    let sin_quarter = match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    };
    qf(2 * sin_quarter, k as i64)
}

/// λ-coefficient of the trace of `sin kθ`: `(2/k)·(1 − cos(kπ/2))`.
fn sin_integral(k: u32) -> Q {
    let cos_quarter = match k % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    };
    qf(2 * (1 - cos_quarter), k as i64)
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self
            .cos
            .iter()
            .map(|(k, v)| (*k, v, 'c'))
            .chain(self.sin.iter().map(|(k, v)| (*k, v, 's')));
        let mut first = true;
        for (k, v, name) in terms {
            let mono = match (k, name) {
                (0, _) => String::new(),
                (1, n) => n.to_string(),
                (k, n) => format!("{n}[{k}]"),
            };
            if !first {
                write!(f, " {} ", if v.is_negative() { '-' } else { '+' })?;
            } else if v.is_negative() {
                write!(f, "-")?;
            }
            let mag = v.abs();
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&mag))?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrigParseError {
    #[error("unexpected input at byte {0}")]
    Unexpected(usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("bad number at byte {0}")]
    BadNumber(usize),
}

struct TrigParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TrigParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<TrigPoly, TrigParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TrigPoly, TrigParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<TrigPoly, TrigParseError> {
        let base = self.factor()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u32, TrigParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(TrigParseError::BadNumber(start))
    }

    fn factor(&mut self) -> Result<TrigPoly, TrigParseError> {
        match self.peek() {
            None => Err(TrigParseError::Eof),
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.scale(&q(-1)))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(TrigParseError::Unexpected(self.pos));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(ch @ (b'c' | b's')) => {
                self.pos += 1;
                let mut k = 1;
                if self.src.get(self.pos) == Some(&b'[') {
                    self.pos += 1;
                    k = self.integer()?;
                    if self.src.get(self.pos) != Some(&b']') {
                        return Err(TrigParseError::Unexpected(self.pos));
                    }
                    self.pos += 1;
                }
                Ok(if ch == b'c' {
                    TrigPoly::cos_k(k)
                } else {
                    TrigPoly::sin_k(k)
                })
            }
            Some(d) if d.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let v = parse_q(text).ok_or(TrigParseError::BadNumber(start))?;
                Ok(TrigPoly::constant(v))
            }
            Some(_) => Err(TrigParseError::Unexpected(self.pos)),
        }
    }
}
