//! Truncated formal Laurent series over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Field};

/// Number of coefficients kept when inverting an exact series that is not a
/// monomial.
pub const DEFAULT_PRECISION: usize = 16;

/// `t^v·(c_0 + c_1 t + …)` with `c_0 ≠ 0`, known modulo `t^{v+precision}`,
/// or exactly when `precision` is `None`. The zero series is exact.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<F: Field> {
    valuation: i64,
    coeffs: Vec<F>,
    precision: Option<usize>,
}

impl<F: Field> LaurentSeries<F> {
    pub fn zero() -> Self {
        LaurentSeries { valuation: 0, coeffs: Vec::new(), precision: None }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    /// The uniformiser `t`.
    pub fn t() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: F, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentSeries { valuation: exp, coeffs: vec![c], precision: None }
    }

    /// `t^v·Σ c_k t^k`; `precision` is the number of known coefficients
    /// counted from `t^v` (`None` for an exact polynomial).
    pub fn new(valuation: i64, coeffs: Vec<F>, precision: Option<usize>) -> Result<Self> {
        if let Some(p) = precision {
            if coeffs.len() > p {
                return Err(Error::InsufficientPrecision(format!(
                    "{} coefficients given but precision is {p}",
                    coeffs.len()
                )));
            }
        }
        let abs = precision.map(|p| valuation + p as i64);
        Self::normalize(valuation, coeffs, abs)
    }

    /// Strips leading zeros. `abs_precision` is the exponent of the first
    /// unknown coefficient.
    fn normalize(valuation: i64, mut coeffs: Vec<F>, abs_precision: Option<i64>) -> Result<Self> {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return match abs_precision {
                None => Ok(Self::zero()),
                Some(a) => Err(Error::InsufficientPrecision(format!(
                    "all known coefficients vanish below t^{a}; the leading term is undetermined"
                ))),
            };
        };
        coeffs.drain(..lead);
        let valuation = valuation + lead as i64;
        match abs_precision {
            None => {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                Ok(LaurentSeries { valuation, coeffs, precision: None })
            }
            Some(a) => {
                let rel = (a - valuation).max(0) as usize;
                coeffs.resize(rel, F::zero());
                Ok(LaurentSeries { valuation, coeffs, precision: Some(rel) })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        Ok(self.valuation)
    }

    pub fn leading_coefficient(&self) -> Result<F> {
        self.coeffs.first().cloned().ok_or(Error::ZeroSeries)
    }

    /// Relative precision (`None` when exact).
    pub fn precision(&self) -> Option<usize> {
        self.precision
    }

    /// Exponent of the first unknown coefficient.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.precision.map(|p| self.valuation + p as i64)
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; `None` beyond the known precision.
    pub fn coefficient(&self, k: i64) -> Option<F> {
        if self.absolute_precision().is_some_and(|a| k >= a) {
            return None;
        }
        if self.is_zero() || k < self.valuation {
            return Some(F::zero());
        }
        Some(self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(F::zero))
    }

    /// Forgets all coefficients from `t^{v+rel}` on.
    pub fn truncate(&self, rel: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let rel = self.precision.map_or(rel, |p| p.min(rel));
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(rel, F::zero());
        LaurentSeries { valuation: self.valuation, coeffs, precision: Some(rel) }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { valuation: self.valuation, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), precision: self.precision }
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentSeries { valuation: self.valuation, coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), precision: self.precision }
    }

    /// Sum; precision is absolute, so cancellation can leave nothing known.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let abs = match (self.absolute_precision(), other.absolute_precision()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let lo = self.valuation.min(other.valuation);
        let hi = match abs {
            Some(a) => a,
            None => (self.valuation + self.coeffs.len() as i64).max(other.valuation + other.coeffs.len() as i64),
        };
        if hi <= lo {
            return Err(Error::InsufficientPrecision("sum has no known coefficients".into()));
        }
        let coeffs = (lo..hi)
            .map(|k| self.coefficient(k).unwrap_or_else(F::zero) + other.coefficient(k).unwrap_or_else(F::zero))
            .collect();
        Self::normalize(lo, coeffs, abs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product; relative precision is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = precision.map_or(full, |p| p.min(full));
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        if let Some(p) = precision {
            coeffs.resize(p, F::zero());
        }
        LaurentSeries { valuation: self.valuation + other.valuation, coeffs, precision }
    }

    /// Multiplicative inverse, to the series' own precision, exact for
    /// monomials and to [`DEFAULT_PRECISION`] for other exact series.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.leading_coefficient()?;
        let inv0 = c0.inverse().ok_or(Error::ZeroSeries)?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(LaurentSeries { valuation: -self.valuation, coeffs: vec![inv0], precision: None });
        }
        let prec = self.precision.unwrap_or(DEFAULT_PRECISION);
        let mut out: Vec<F> = Vec::with_capacity(prec);
        for k in 0..prec {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = F::zero();
            for j in 1..=k {
                if let Some(a) = self.coeffs.get(j) {
                    acc = acc + a.clone() * out[k - j].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(LaurentSeries { valuation: -self.valuation, coeffs: out, precision: Some(prec) })
    }

    /// `self^e` for any integer `e` (negative powers need `self ≠ 0`).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Parses `t^-2*(3 + 1/2*t + t^3)`, `1 - t + O(t^8)`, `2`, `t^-1` and
    /// similar expressions with exact rational coefficients.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("series '{s}': {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // optional outer monomial factor c*t^k*( ... )
        let (scale, shift, body) = match compact.find("*(") {
            Some(pos) if compact.ends_with(')') => {
                let outer = match split_terms(&compact[..pos]).as_deref() {
                    Some([(sign, term)]) => parse_monomial(term).map(|(c, e)| (c * BigRational::from_integer((*sign).into()), e)),
                    _ => None,
                };
                let (c, e) = outer.ok_or_else(|| bad("bad outer factor"))?;
                (c, e, compact[pos + 2..compact.len() - 1].to_string())
            }
            _ => (BigRational::from_integer(1.into()), 0, compact.clone()),
        };
        let scale = F::from_rational(&scale).ok_or_else(|| bad("coefficient not defined in this field"))?;
        let mut terms: Vec<(i64, F)> = Vec::new();
        let mut big_o: Option<i64> = None;
        for (sign, term) in split_terms(&body).ok_or_else(|| bad("unbalanced sign"))? {
            if let Some(inner) = term.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                if sign < 0 {
                    return Err(bad("negative O-term"));
                }
                let e = match inner.strip_prefix('t') {
                    Some(rest) => parse_exponent(rest).ok_or_else(|| bad("bad O exponent"))?,
                    None if inner == "1" => 0,
                    None => return Err(bad("O-term must be O(t^k)")),
                };
                big_o = Some(big_o.map_or(e, |b: i64| b.min(e)));
                continue;
            }
            let (coef, exp) = parse_monomial(&term).ok_or_else(|| bad("bad term"))?;
            let c = F::from_rational(&coef).ok_or_else(|| bad("coefficient not defined in this field"))?;
            let c = c * scale.clone();
            terms.push((exp, if sign < 0 { -c } else { c }));
        }
        let lo = terms.iter().map(|(e, _)| *e).chain(big_o).min().ok_or_else(|| bad("no terms"))?;
        let hi = terms.iter().map(|(e, _)| *e + 1).max().unwrap_or(lo);
        let hi = big_o.map_or(hi, |b| b.max(hi));
        let mut coeffs = vec![F::zero(); (hi - lo).max(0) as usize];
        for (e, c) in terms {
            if big_o.is_some_and(|b| e >= b) {
                continue;
            }
            let idx = (e - lo) as usize;
            coeffs[idx] = coeffs[idx].clone() + c;
        }
        let abs = big_o.map(|b| b + shift);
        if let Some(b) = big_o {
            coeffs.truncate((b - lo).max(0) as usize);
        }
        match Self::normalize(lo + shift, coeffs, abs) {
            Err(Error::InsufficientPrecision(_)) => Err(bad("no nonzero coefficient below the O-term")),
            other => other,
        }
    }
}

/// Parses `c`, `t^k`, `c*t^k` or `ct^k` without a sign.
fn parse_monomial(term: &str) -> Option<(BigRational, i64)> {
    match term.find('t') {
        Some(pos) => {
            let coef_part = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
            let coef = if coef_part.is_empty() { BigRational::from_integer(1.into()) } else { parse_rational(coef_part)? };
            Some((coef, parse_exponent(&term[pos + 1..])?))
        }
        None => Some((parse_rational(term)?, 0)),
    }
}

/// Parses `""` as 1, `^k` as k.
fn parse_exponent(s: &str) -> Option<i64> {
    if s.is_empty() {
        return Some(1);
    }
    let e = s.strip_prefix('^')?;
    let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
    e.parse().ok()
}

/// Splits a sum at top-level `+`/`-` signs that do not follow `^`.
fn split_terms(s: &str) -> Option<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let is_sep = (ch == '+' || ch == '-') && depth == 0 && prev != Some('^') && prev != Some('(');
        if is_sep {
            if !cur.is_empty() {
                out.push((sign, std::mem::take(&mut cur)));
                sign = 1;
            } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                return None;
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return None;
    }
    out.push((sign, cur));
    Some(out)
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + k as i64;
            let c_str = c.to_string();
            let (neg, mag) = match c_str.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, c_str),
            };
            let body = match (e, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => "t".to_string(),
                (_, "1") => format!("t^{e}"),
                (1, _) => format!("{mag}*t"),
                _ => format!("{mag}*t^{e}"),
            };
            parts.push(if neg { format!("-{body}") } else { body });
        }
        if let Some(a) = self.absolute_precision() {
            parts.push(format!("O(t^{a})"));
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

impl<F: Field> fmt::Debug for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

/// `x^e` in the field; `e` may be negative.
pub(crate) fn field_pow<F: Field>(x: &F, e: &BigInt) -> Result<F> {
    x.powi(e).ok_or(Error::ZeroSeries)
}
