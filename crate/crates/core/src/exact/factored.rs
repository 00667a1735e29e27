//! Numbers kept in factored form, with rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::{factorize, is_probable_prime};
use super::rational::Q;
use crate::error::{Error, Result};

/// `sign * prod p^e` with rational exponents `e`.
///
/// Keys are primes and no exponent is zero, so two equal numbers have equal
/// representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredNumber {
    sign: i8,
    factors: BTreeMap<BigInt, Rational64>,
}

impl FactoredNumber {
    pub fn one() -> Self {
        FactoredNumber {
            sign: 1,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_integer(n: &BigInt) -> Result<Self> {
        factorize(n)
    }

    pub fn from_i64(n: i64) -> Result<Self> {
        factorize(&BigInt::from(n))
    }

    /// Factors numerator and denominator; denominator primes get negative exponents.
    pub fn from_rational(x: &Q) -> Result<Self> {
        let num = factorize(x.numer())?;
        let den = factorize(x.denom())?;
        Ok(num.mul(&den.pow(Rational64::from_integer(-1))))
    }

    /// Builds from explicit `(prime, exponent)` pairs. Primality is checked.
    pub fn from_pairs<I>(sign: i8, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, Rational64)>,
    {
        let mut out = FactoredNumber::one();
        if sign < 0 {
            out.sign = -1;
        }
        for (p, e) in pairs {
            if !is_probable_prime(&p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            out.add_exponent(p, e);
        }
        Ok(out)
    }

    pub(crate) fn insert_integer_power(&mut self, p: BigInt, e: u64) {
        self.add_exponent(p, Rational64::from_integer(e as i64));
    }

    fn add_exponent(&mut self, p: BigInt, e: Rational64) {
        let entry = self.factors.entry(p).or_insert_with(Rational64::zero);
        *entry += e;
        if entry.is_zero() {
            self.factors.retain(|_, v| !v.is_zero());
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn negate(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    pub fn abs(&self) -> Self {
        FactoredNumber {
            sign: 1,
            factors: self.factors.clone(),
        }
    }

    pub fn factors(&self) -> &BTreeMap<BigInt, Rational64> {
        &self.factors
    }

    pub fn exponent(&self, p: &BigInt) -> Rational64 {
        self.factors.get(p).copied().unwrap_or_else(Rational64::zero)
    }

    /// Primes with nonzero exponent, ascending.
    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.keys().cloned().collect()
    }

    /// Primes with positive exponent, ascending.
    pub fn primes_dividing(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|(_, e)| e.is_positive())
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sign *= other.sign;
        for (p, e) in &other.factors {
            out.add_exponent(p.clone(), *e);
        }
        out
    }

    /// Raises to a rational power. Negative signs survive only odd integer powers.
    pub fn pow(&self, k: Rational64) -> Self {
        let mut out = FactoredNumber::one();
        if self.sign < 0 && k.is_integer() && k.to_integer() % 2 != 0 {
            out.sign = -1;
        }
        if k.is_zero() {
            return FactoredNumber::one();
        }
        for (p, e) in &self.factors {
            out.factors.insert(p.clone(), *e * k);
        }
        out
    }

    /// Pointwise maximum of exponents over the union of primes (missing
    /// primes count as exponent 0). Operates on absolute values.
    pub fn pointwise_max(&self, other: &Self) -> Self {
        let mut out = FactoredNumber::one();
        for p in self.factors.keys().chain(other.factors.keys()) {
            let e = self.exponent(p).max(other.exponent(p));
            if !e.is_zero() {
                out.factors.insert(p.clone(), e);
            }
        }
        out
    }

    /// Least common multiple of absolute values. For integer-valued inputs
    /// this is the usual lcm; it coincides with [`Self::pointwise_max`].
    pub fn lcm(&self, other: &Self) -> Self {
        self.pointwise_max(other)
    }

    /// Greatest common divisor of absolute values (pointwise minimum).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = FactoredNumber::one();
        for (p, e) in &self.factors {
            let m = (*e).min(other.exponent(p));
            if !m.is_zero() {
                out.factors.insert(p.clone(), m);
            }
        }
        out
    }

    /// All exponents are nonnegative integers.
    pub fn is_integral(&self) -> bool {
        self.factors
            .values()
            .all(|e| e.is_integer() && !e.is_negative())
    }

    /// `self` divides `other` as integers (absolute values).
    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(p, e)| *e <= other.exponent(p))
    }

    /// The value as an exact integer, when all exponents are nonnegative integers.
    pub fn to_integer(&self) -> Option<BigInt> {
        if !self.is_integral() {
            return None;
        }
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= p.pow(e.to_integer() as u32);
        }
        Some(if self.sign < 0 { -v } else { v })
    }

    /// The rational value, when every exponent is an integer.
    pub fn to_rational(&self) -> Option<Q> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer();
            if k > 0 {
                num *= p.pow(k as u32);
            } else {
                den *= p.pow((-k) as u32);
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        Some(Q::new(num, den))
    }

    /// Decimal logarithm of the absolute value, for display only.
    pub fn log10(&self) -> f64 {
        self.factors
            .iter()
            .map(|(p, e)| {
                let lp = p.to_f64().map(f64::log10).unwrap_or(f64::INFINITY);
                lp * (*e.numer() as f64) / (*e.denom() as f64)
            })
            .sum()
    }
}

impl Default for FactoredNumber {
    fn default() -> Self {
        Self::one()
    }
}

fn fmt_exponent(e: &Rational64) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for FactoredNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.sign < 0 {
            parts.push("-1".into());
        }
        for (p, e) in &self.factors {
            if e.is_one() {
                parts.push(p.to_string());
            } else if e.is_integer() && e.is_positive() {
                parts.push(format!("{p}^{}", e.to_integer()));
            } else {
                parts.push(format!("{p}^({})", fmt_exponent(e)));
            }
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Serializes to `{"sign": 1, "factors": {"2": "28", "7": "1"}}`, primes ascending.
impl Serialize for FactoredNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Factors<'a>(&'a BTreeMap<BigInt, Rational64>);
        impl Serialize for Factors<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_map(self.0.iter().map(|(p, e)| (p.to_string(), fmt_exponent(e))))
            }
        }
        let mut st = serializer.serialize_struct("FactoredNumber", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("factors", &Factors(&self.factors))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FactoredNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sign: i8,
            factors: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut pairs = Vec::new();
        for (p, e) in raw.factors {
            let p: BigInt = p.parse().map_err(D::Error::custom)?;
            let e = parse_exponent(&e).map_err(D::Error::custom)?;
            pairs.push((p, e));
        }
        FactoredNumber::from_pairs(raw.sign, pairs).map_err(D::Error::custom)
    }
}

pub fn parse_exponent(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad exponent {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses `"2^28 * 7 * 13"`, `"-1 * 5^2"`, `"2^(3/2) * 7"` or `"1"`.
pub fn parse_factored(s: &str) -> Result<FactoredNumber> {
    let mut out = FactoredNumber::one();
    let s = s.trim();
    if s == "1" {
        return Ok(out);
    }
    for part in s.split('*') {
        let part = part.trim();
        if part == "-1" {
            out.sign = -out.sign;
            continue;
        }
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (b.trim(), parse_exponent(e.trim().trim_matches(|c| c == '(' || c == ')'))?),
            None => (part, Rational64::one()),
        };
        let p: BigInt = base
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime {base:?}")))?;
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        out.add_exponent(p, exp);
    }
    Ok(out)
}

/// Parses products, quotients and powers of integers, e.g.
/// `"-(7^6 * 13)^2/(2 * 5)^6"` or `"(2^3 * 7^2)^(1/2)"`. Composite integers
/// are factored.
pub fn parse_factored_expr(s: &str) -> Result<FactoredNumber> {
    let mut p = ExprParser { s: s.as_bytes(), i: 0 };
    let v = p.quotient()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

struct ExprParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn err(&self) -> Error {
        Error::Parse(format!(
            "unexpected input at {} in {:?}",
            self.i,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn quotient(&mut self) -> Result<FactoredNumber> {
        let mut v = self.product()?;
        while self.eat(b'/') {
            let d = self.product()?;
            v = v.mul(&d.pow(Rational64::from_integer(-1)));
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<FactoredNumber> {
        let neg = self.eat(b'-');
        let mut v = self.power()?;
        while self.eat(b'*') {
            v = v.mul(&self.power()?);
        }
        Ok(if neg { v.negate() } else { v })
    }

    fn power(&mut self) -> Result<FactoredNumber> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = if self.eat(b'(') {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i] != b')' {
                    self.i += 1;
                }
                let txt = String::from_utf8_lossy(&self.s[start..self.i]).to_string();
                if !self.eat(b')') {
                    return Err(self.err());
                }
                parse_exponent(&txt)?
            } else {
                Rational64::from_integer(self.integer()?.try_into().map_err(|_| self.err())?)
            };
            let sign = base.sign;
            let mut out = base.abs().pow(e);
            if sign < 0 {
                if !e.is_integer() {
                    return Err(Error::Parse("fractional power of a negative number".into()));
                }
                if e.to_integer() % 2 != 0 {
                    out = out.negate();
                }
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FactoredNumber> {
        if self.eat(b'(') {
            let v = self.quotient()?;
            if !self.eat(b')') {
                return Err(self.err());
            }
            return Ok(v);
        }
        let n = self.integer()?;
        factorize(&n)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err());
        }
        String::from_utf8_lossy(&self.s[start..self.i])
            .parse()
            .map_err(|_| self.err())
    }
}
