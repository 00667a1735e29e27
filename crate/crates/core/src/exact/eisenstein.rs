//! Elements of Q(zeta_3), stored as `c + d*zeta` with `zeta^2 = -1 - zeta`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_q, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub c: Q,
    pub d: Q,
}

impl Eisenstein {
    pub fn new(c: Q, d: Q) -> Self {
        Eisenstein { c, d }
    }

    pub fn rational(c: Q) -> Self {
        Eisenstein { c, d: Q::zero() }
    }

    pub fn zeta() -> Self {
        Eisenstein::new(Q::zero(), Q::one())
    }

    /// `1 + 2*zeta`, a square root of -3.
    pub fn sqrt_minus_3() -> Self {
        Eisenstein::new(q(1), q(2))
    }

    /// Complex conjugation, `zeta -> zeta^2 = -1 - zeta`.
    pub fn conj(&self) -> Self {
        Eisenstein::new(&self.c - &self.d, -self.d.clone())
    }

    /// `x * conj(x) = c^2 - c*d + d^2`.
    pub fn norm(&self) -> Q {
        &self.c * &self.c - &self.c * &self.d + &self.d * &self.d
    }

    /// Both coordinates are integers, i.e. the element lies in Z[zeta].
    pub fn is_integral(&self) -> bool {
        self.c.is_integer() && self.d.is_integer()
    }

    /// `n * self` lies in Z[zeta].
    pub fn is_in_fraction_ideal(&self, n: &num_bigint::BigInt) -> bool {
        (&self.c * n).is_integer() && (&self.d * n).is_integer()
    }

    pub fn scale(&self, k: &Q) -> Self {
        Eisenstein::new(&self.c * k, &self.d * k)
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(Q::zero(), Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::rational(Q::one())
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.c + o.c, self.d + o.d)
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.c - o.c, self.d - o.d)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-self.c, -self.d)
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Eisenstein) -> Eisenstein {
        &self * &o
    }
}

impl Mul<&Eisenstein> for &Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: &Eisenstein) -> Eisenstein {
        let dd = &self.d * &o.d;
        Eisenstein::new(
            &self.c * &o.c - &dd,
            &self.c * &o.d + &self.d * &o.c - dd,
        )
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_zero() {
            write!(f, "{}", fmt_q(&self.c))
        } else {
            write!(f, "{} + ({})*zeta", fmt_q(&self.c), fmt_q(&self.d))
        }
    }
}
