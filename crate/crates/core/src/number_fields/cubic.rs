//! Totally real cubic fields `Q(alpha)`, `alpha^3 + c2 alpha^2 + c1 alpha + c0 = 0`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::poly::{cubic_discriminant, monic_cubic_has_rational_root, Poly};
use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, q, qz, Q, Z};
use crate::linalg::det;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicField {
    c: [Z; 3],
    poly_disc: Z,
    traces: Vec<Q>,
}

/// `q0 + q1*alpha + q2*alpha^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    #[serde(with = "crate::serde_q::array3")]
    pub coords: [Q; 3],
}

impl FieldElement {
    pub fn new(coords: [Q; 3]) -> Self {
        FieldElement { coords }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        FieldElement::new([q(a), q(b), q(c)])
    }

    pub fn rational(x: Q) -> Self {
        FieldElement::new([x, Q::zero(), Q::zero()])
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1].is_zero() && self.coords[2].is_zero()
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.coords.to_vec()
    }

    pub fn from_slice(v: &[Q]) -> Self {
        FieldElement::new([v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldElement::new(std::array::from_fn(|i| &self.coords[i] + &o.coords[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldElement::new(std::array::from_fn(|i| &self.coords[i] - &o.coords[i]))
    }

    pub fn neg(&self) -> Self {
        FieldElement::new(std::array::from_fn(|i| -self.coords[i].clone()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        FieldElement::new(std::array::from_fn(|i| &self.coords[i] * k))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Poly::new(self.coords.to_vec()).to_string().replace('x', "a"))
    }
}

impl CubicField {
    /// The field defined by `x^3 + c2 x^2 + c1 x + c0`.
    pub fn new(c0: Z, c1: Z, c2: Z) -> Result<Self> {
        if monic_cubic_has_rational_root(&c0, &c1, &c2) {
            return Err(Error::ReduciblePolynomial);
        }
        let poly_disc = cubic_discriminant(&c0, &c1, &c2);
        if !poly_disc.is_positive() {
            return Err(Error::NotTotallyReal(poly_disc.to_string()));
        }
        let traces = vec![q(3), -qz(&c2), qz(&(&c2 * &c2 - Z::from(2) * &c1))];
        Ok(CubicField {
            c: [c0, c1, c2],
            poly_disc,
            traces,
        })
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Result<Self> {
        Self::new(Z::from(c0), Z::from(c1), Z::from(c2))
    }

    /// Coefficients `(c0, c1, c2)`.
    pub fn coefficients(&self) -> &[Z; 3] {
        &self.c
    }

    pub fn poly_disc(&self) -> &Z {
        &self.poly_disc
    }

    pub fn min_poly(&self) -> Poly {
        Poly::new(vec![qz(&self.c[0]), qz(&self.c[1]), qz(&self.c[2]), Q::one()])
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::from_ints(0, 1, 0)
    }

    pub fn elem_mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::from_slice(&self.mul(&x.coords, &y.coords))
    }

    pub fn elem_pow(&self, x: &FieldElement, k: u32) -> FieldElement {
        FieldElement::from_slice(&self.pow(&x.coords, k))
    }

    pub fn elem_trace(&self, x: &FieldElement) -> Q {
        self.trace(&x.coords)
    }

    pub fn elem_norm(&self, x: &FieldElement) -> Q {
        det(&self.mult_matrix(&x.coords))
    }

    /// Characteristic polynomial `X^3 - t1 X^2 + a1 X - N` of multiplication by `x`.
    pub fn elem_charpoly(&self, x: &FieldElement) -> Poly {
        let t1 = self.elem_trace(x);
        let t2 = self.elem_trace(&self.elem_mul(x, x));
        let a1 = (&t1 * &t1 - t2) / q(2);
        let n = self.elem_norm(x);
        Poly::new(vec![-n, a1, -t1, Q::one()])
    }

    /// Minimal polynomial: linear for rational `x`, else the characteristic polynomial.
    pub fn elem_minpoly(&self, x: &FieldElement) -> Poly {
        if x.is_rational() {
            Poly::new(vec![-x.coords[0].clone(), Q::one()])
        } else {
            self.elem_charpoly(x)
        }
    }

    pub fn elem_inverse(&self, x: &FieldElement) -> Option<FieldElement> {
        let m = self.mult_matrix(&x.coords);
        crate::linalg::solve_left(&m, &self.one()).map(|v| FieldElement::from_slice(&v))
    }

    pub fn describe(&self) -> String {
        let p = self.min_poly();
        format!("Q[x]/({p})")
    }
}

impl Algebra for CubicField {
    fn degree(&self) -> usize {
        3
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut r = vec![Q::zero(); 5];
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                r[i + j] += &x[i] * &y[j];
            }
        }
        // alpha^3 = -c2 alpha^2 - c1 alpha - c0
        for d in [4usize, 3] {
            let k = std::mem::take(&mut r[d]);
            if k.is_zero() {
                continue;
            }
            r[d - 1] -= &k * qz(&self.c[2]);
            r[d - 2] -= &k * qz(&self.c[1]);
            r[d - 3] -= &k * qz(&self.c[0]);
        }
        r.truncate(3);
        r
    }

    fn one(&self) -> Vec<Q> {
        vec![Q::one(), Q::zero(), Q::zero()]
    }

    fn trace_vector(&self) -> &[Q] {
        &self.traces
    }
}

/// Formats coordinates as fraction strings.
pub fn coords_to_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}
