//! Helpers on top of `num` big integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Z = BigInt;
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qz(n: &Z) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().map_err(|_| bad())?;
            let d: Z = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(qz(&s.parse::<Z>().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exponent of `p` in the nonzero rational `x`.
pub fn padic_valuation(x: &Q, p: &Z) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if *p < Z::from(2) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

/// Exponent of `p` in the nonzero integer `n`. Caller guarantees `n != 0`, `p >= 2`.
pub fn int_valuation(n: &Z, p: &Z) -> u64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (qt, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = qt;
        v += 1;
    }
}

/// Valuation, with `None` for zero (valuation `+inf`).
pub fn valuation_or_inf(x: &Q, p: &Z) -> Option<i64> {
    padic_valuation(x, p).ok()
}

pub fn floor_q(x: &Q) -> Z {
    x.floor().to_integer()
}

pub fn ceil_q(x: &Q) -> Z {
    x.ceil().to_integer()
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &Z) -> Z {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a Z>) -> Z {
    xs.into_iter().fold(Z::one(), |acc, x| acc.lcm(x))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Z {
    lcm_all(xs.into_iter().map(|x| x.denom()))
}

pub fn pow_q(x: &Q, k: u32) -> Q {
    num_traits::pow(x.clone(), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&q(24440), &Z::from(5)).unwrap(), 1);
        // -7^6*13 / (2^3*5^2*47^2)
        let x = Q::new(Z::from(-(7i64.pow(6)) * 13), Z::from(8 * 25 * 47 * 47));
        assert_eq!(padic_valuation(&x, &Z::from(47)).unwrap(), -2);
        assert_eq!(padic_valuation(&x, &Z::from(7)).unwrap(), 6);
        assert_eq!(padic_valuation(&q(1), &Z::from(2)).unwrap(), 0);
        assert_eq!(padic_valuation(&q(0), &Z::from(2)), Err(Error::ZeroValuation));
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(-1, 2)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }
}
