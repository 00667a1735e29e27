//! Integer factorization: trial division up to 10^6, then Brent's variant of
//! Pollard rho on the cofactor, with Miller-Rabin certification of the prime
//! factors.
//!
//! Miller-Rabin with the first twelve prime bases is deterministic below
//! 3.3 * 10^24, which covers every value produced by the bound engine. Larger
//! inputs use twenty additional bases and are probable primes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factored::FactoredNumber;
use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Factors a nonzero integer into a sign and prime powers.
pub fn factorize(n: &BigInt) -> Result<FactoredNumber> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let mut out = FactoredNumber::one();
    if n.is_negative() {
        out = out.negate();
    }
    for (p, e) in factor_positive(&n.abs()) {
        out.insert_integer_power(p, e);
    }
    Ok(out)
}

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs, primes ascending.
pub fn factor_positive(n: &BigInt) -> Vec<(BigInt, u64)> {
    let mut found: Vec<(BigInt, u64)> = Vec::new();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        for (p, e) in factor_u64(small) {
            found.push((BigInt::from(p), e));
        }
        return found;
    }
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (qt, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = qt;
            e += 1;
        }
        if e > 0 {
            found.push((pb, e));
        }
    }
    if !rest.is_one() {
        let mut large = Vec::new();
        split_big(rest, &mut large);
        large.sort();
        for p in large {
            match found.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => found.push((p, 1)),
            }
        }
    }
    found
}

fn split_big(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            for _ in 0..e {
                out.push(BigInt::from(p));
            }
        }
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent_big(&n);
    split_big(&n / &d, out);
    split_big(d, out);
}

/// Factorization of a machine word.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u64)> {
    let mut found = Vec::new();
    if n <= 1 {
        return found;
    }
    for &p in small_primes().iter().take(2000) {
        let p = p as u64;
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            found.push((p, e));
        }
    }
    if n > 1 {
        let mut large = Vec::new();
        split_u64(n, &mut large);
        large.sort_unstable();
        for p in large {
            match found.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => found.push((p, 1)),
            }
        }
    }
    found
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent_u64(n);
    split_u64(n / d, out);
    split_u64(d, out);
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin on a big integer.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    const BASES: [u32; 32] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131,
    ];
    'witness: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_big(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
