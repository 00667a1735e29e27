//! Univariate polynomials over Q and over F_p, coefficients ascending.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::{fmt_q, qz, Q, Z};
use crate::linalg::mod_inverse;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Q::from_integer(Z::from(x))).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let term = if i > 0 && c.is_one() {
                mono
            } else if i > 0 && (-c).is_one() {
                format!("-{mono}")
            } else if i > 0 {
                format!("({})*{mono}", fmt_q(c))
            } else {
                fmt_q(c)
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// Discriminant of the monic cubic `x^3 + c2 x^2 + c1 x + c0`.
pub fn cubic_discriminant(c0: &Z, c1: &Z, c2: &Z) -> Z {
    // b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd with (a,b,c,d) = (1,c2,c1,c0)
    let (b, c, d) = (c2, c1, c0);
    b * b * c * c - Z::from(4) * c * c * c - Z::from(4) * b * b * b * d - Z::from(27) * d * d
        + Z::from(18) * b * c * d
}

/// A monic integer cubic is reducible over Q iff it has an integer root,
/// and any such root divides the constant term.
pub fn monic_cubic_has_rational_root(c0: &Z, c1: &Z, c2: &Z) -> bool {
    let eval = |x: &Z| x * x * x + c2 * x * x + c1 * x + c0;
    if c0.is_zero() {
        return true;
    }
    divisors(&c0.abs())
        .into_iter()
        .any(|d| eval(&d).is_zero() || eval(&(-d)).is_zero())
}

fn divisors(n: &Z) -> Vec<Z> {
    let mut out = Vec::new();
    for (p, e) in crate::exact::factor_positive(n) {
        let mut next = Vec::new();
        let base = if out.is_empty() { vec![Z::one()] } else { out.clone() };
        for d in &base {
            let mut pk = Z::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    if out.is_empty() {
        out.push(Z::one());
    }
    out
}

/// Polynomial over F_p, coefficients in `[0, p)`, ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    pub c: Vec<Z>,
}

impl PolyFp {
    pub fn new(c: Vec<Z>, p: &Z) -> Self {
        let mut c: Vec<Z> = c.into_iter().map(|x| x.mod_floor(p)).collect();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        PolyFp { c }
    }

    pub fn from_q_poly(f: &Poly, p: &Z) -> Self {
        PolyFp::new(f.coeffs().iter().map(|x| x.to_integer()).collect(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn monic(&self, p: &Z) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = mod_inverse(lead, p);
                PolyFp::new(self.c.iter().map(|x| x * &inv).collect(), p)
            }
        }
    }

    pub fn mul(&self, o: &Self, p: &Z) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyFp { c: vec![] };
        }
        let mut r = vec![Z::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        PolyFp::new(r, p)
    }

    pub fn sub(&self, o: &Self, p: &Z) -> Self {
        let n = self.c.len().max(o.c.len());
        let r = (0..n)
            .map(|i| {
                self.c.get(i).cloned().unwrap_or_default() - o.c.get(i).cloned().unwrap_or_default()
            })
            .collect();
        PolyFp::new(r, p)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self, p: &Z) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = mod_inverse(d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let mut qt = vec![Z::zero(); self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = (r.last().unwrap() * &inv).mod_floor(p);
            qt[k] = f.clone();
            for (i, x) in d.c.iter().enumerate() {
                r[k + i] = (&r[k + i] - &f * x).mod_floor(p);
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (PolyFp::new(qt, p), PolyFp::new(r, p))
    }

    pub fn gcd(&self, o: &Self, p: &Z) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: &Z) -> Self {
        let r = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * Z::from(i))
            .collect();
        PolyFp::new(r, p)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self, p: &Z) -> Self {
        let f = self.monic(p);
        if f.degree().unwrap_or(0) == 0 {
            return PolyFp::new(vec![Z::one()], p);
        }
        let df = f.derivative(p);
        if df.is_zero() {
            // f(x) = g(x^p) = g(x)^p over F_p
            let pu: usize = p.try_into().expect("prime too large for p-th root");
            let g = PolyFp::new(f.c.iter().step_by(pu).cloned().collect(), p);
            return g.radical(p);
        }
        let g = f.gcd(&df, p);
        // w: irreducible factors whose multiplicity is prime to p, once each
        let (w, _) = f.div_rem(&g, p);
        let mut rest = f.clone();
        loop {
            let h = rest.gcd(&w, p);
            if h.is_one() {
                break;
            }
            rest = rest.div_rem(&h, p).0;
        }
        let rest_rad = rest.radical(p);
        w.monic(p).mul(&rest_rad, p)
    }

    /// Lift to an integer polynomial with coefficients in `[0, p)`.
    pub fn lift(&self) -> Poly {
        Poly::new(self.c.iter().map(qz).collect())
    }
}

/// Multiplies two polynomials over Q.
pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.coeffs().is_empty() || b.coeffs().is_empty() {
        return Poly::new(vec![]);
    }
    let mut r = vec![Q::zero(); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    Poly::new(r)
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs().len().max(b.coeffs().len());
    Poly::new((0..n).map(|i| a.coeff(i) - b.coeff(i)).collect())
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs().len().max(b.coeffs().len());
    Poly::new((0..n).map(|i| a.coeff(i) + b.coeff(i)).collect())
}

pub fn poly_scale(a: &Poly, k: &Q) -> Poly {
    Poly::new(a.coeffs().iter().map(|x| x * k).collect())
}

/// Dedekind's criterion: is `Z[x]/(f)` maximal at `p`, for monic integer `f`?
pub fn dedekind_p_maximal(f: &Poly, p: &Z) -> bool {
    let fp = PolyFp::from_q_poly(f, p);
    let g = fp.radical(p);
    let (h, r) = fp.div_rem(&g, p);
    debug_assert!(r.is_zero());
    let gh = poly_mul(&g.lift(), &h.lift());
    let diff = poly_sub(&gh, f);
    let fq = poly_scale(&diff, &Q::new(Z::one(), p.clone()));
    debug_assert!(fq.is_integral());
    let big_f = PolyFp::from_q_poly(&fq, p);
    let d = big_f.gcd(&g, p).gcd(&h, p);
    d.is_one()
}
