//! The sextic CM field `K = K+(zeta_3)`. Coordinates are ordered
//! `(1, a, a^2, z, a z, a^2 z)` with `a` the cubic generator and `z = zeta_3`.

use std::fmt;

use num_traits::{One, Zero};

use super::algebra::Algebra;
use super::cubic::{CubicField, FieldElement};
use crate::error::{Error, Result};
use crate::exact::rational::{q, Q};
use crate::linalg::{solve_left, QMat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SexticField {
    base: CubicField,
    traces: Vec<Q>,
}

/// `u + v*zeta_3` with `u, v` in the real cubic subfield.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SexticElement {
    pub u: FieldElement,
    pub v: FieldElement,
}

impl SexticElement {
    pub fn new(u: FieldElement, v: FieldElement) -> Self {
        SexticElement { u, v }
    }

    pub fn real(u: FieldElement) -> Self {
        SexticElement::new(u, FieldElement::zero())
    }

    pub fn zeta() -> Self {
        SexticElement::new(FieldElement::zero(), FieldElement::rational(Q::one()))
    }

    /// `1 + 2 zeta`, a square root of -3.
    pub fn sqrt_minus_3() -> Self {
        SexticElement::new(FieldElement::rational(q(1)), FieldElement::rational(q(2)))
    }

    pub fn to_vec(&self) -> Vec<Q> {
        let mut v = self.u.to_vec();
        v.extend(self.v.to_vec());
        v
    }

    pub fn from_slice(x: &[Q]) -> Self {
        SexticElement::new(FieldElement::from_slice(&x[..3]), FieldElement::from_slice(&x[3..6]))
    }

    /// Complex conjugation: `u + v z -> (u - v) - v z`.
    pub fn conjugate(&self) -> Self {
        SexticElement::new(self.u.sub(&self.v), self.v.neg())
    }

    pub fn is_real(&self) -> bool {
        self.v.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for SexticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*z", self.u, self.v)
    }
}

/// Conjugation on coordinate vectors.
pub fn conjugate_vec(x: &[Q]) -> Vec<Q> {
    SexticElement::from_slice(x).conjugate().to_vec()
}

impl SexticField {
    pub fn new(base: CubicField) -> Self {
        // Tr_{K/Q}(u + v z) = 2 Tr(u) - Tr(v)
        let bt = base.trace_vector().to_vec();
        let mut traces: Vec<Q> = bt.iter().map(|t| t * q(2)).collect();
        traces.extend(bt.iter().map(|t| -t.clone()));
        SexticField { base, traces }
    }

    pub fn base(&self) -> &CubicField {
        &self.base
    }

    pub fn elem_mul(&self, x: &SexticElement, y: &SexticElement) -> SexticElement {
        SexticElement::from_slice(&self.mul(&x.to_vec(), &y.to_vec()))
    }

    /// Basis `mu^i zeta^j` (`i < 3`, `j < 2`) as rows, ordered like the
    /// coordinates `(1, mu, mu^2, z, mu z, mu^2 z)`.
    pub fn power_basis_of(&self, mu: &FieldElement) -> Result<QMat> {
        if mu.is_rational() {
            return Err(Error::DegenerateMu);
        }
        let powers: Vec<FieldElement> = (0..3).map(|i| self.base.elem_pow(mu, i)).collect();
        let mut rows = Vec::with_capacity(6);
        for j in 0..2 {
            for p in &powers {
                let e = if j == 0 {
                    SexticElement::real(p.clone())
                } else {
                    SexticElement::new(FieldElement::zero(), p.clone())
                };
                rows.push(e.to_vec());
            }
        }
        Ok(rows)
    }

    /// Rationals `c[i][j]` with `w = sum c[i][j] mu^i zeta^j`.
    pub fn express_in_power_basis(
        &self,
        w: &SexticElement,
        mu: &FieldElement,
    ) -> Result<[[Q; 2]; 3]> {
        let basis = self.power_basis_of(mu)?;
        let sol = solve_left(&basis, &w.to_vec()).ok_or(Error::DegenerateMu)?;
        Ok(std::array::from_fn(|i| [sol[i].clone(), sol[3 + i].clone()]))
    }
}

impl Algebra for SexticField {
    fn degree(&self) -> usize {
        6
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let (u1, v1) = (&x[..3], &x[3..]);
        let (u2, v2) = (&y[..3], &y[3..]);
        let uu = self.base.mul(u1, u2);
        let vv = self.base.mul(v1, v2);
        let uv1 = self.base.mul(u1, v2);
        let uv2 = self.base.mul(v1, u2);
        // z^2 = -1 - z
        let mut out: Vec<Q> = uu.iter().zip(&vv).map(|(a, b)| a - b).collect();
        out.extend((0..3).map(|i| &uv1[i] + &uv2[i] - &vv[i]));
        out
    }

    fn one(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); 6];
        v[0] = Q::one();
        v
    }

    fn trace_vector(&self) -> &[Q] {
        &self.traces
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qf;
    use proptest::prelude::*;

    fn field() -> SexticField {
        SexticField::new(CubicField::from_ints(1, -2, -1).unwrap())
    }

    #[test]
    fn conjugation_examples() {
        let z = SexticElement::zeta();
        assert_eq!(
            z.conjugate(),
            SexticElement::new(FieldElement::rational(q(-1)), FieldElement::rational(q(-1)))
        );
        let r = SexticElement::sqrt_minus_3();
        let k = field();
        assert_eq!(k.elem_mul(&r, &r), SexticElement::real(FieldElement::rational(q(-3))));
        let neg_r = SexticElement::new(r.u.neg(), r.v.neg());
        assert_eq!(r.conjugate(), neg_r);
        let u = SexticElement::real(FieldElement::new([qf(1, 2), q(3), q(-1)]));
        assert_eq!(u.conjugate(), u);
    }

    #[test]
    fn express_simple() {
        let k = field();
        let mu = FieldElement::from_ints(3, 0, -2);
        let c = k.express_in_power_basis(&SexticElement::real(mu.clone()), &mu).unwrap();
        assert_eq!(c[1][0], q(1));
        assert_eq!(c[0][0], q(0));
        let c = k.express_in_power_basis(&SexticElement::zeta(), &mu).unwrap();
        assert_eq!(c[0][1], q(1));
        assert_eq!(c[1][1], q(0));
        assert_eq!(
            k.express_in_power_basis(&SexticElement::zeta(), &FieldElement::from_ints(2, 0, 0)),
            Err(Error::DegenerateMu)
        );
    }

    proptest! {
        #[test]
        fn conjugation_is_automorphism(a in proptest::collection::vec(-6i64..6, 12)) {
            let k = field();
            let x = SexticElement::from_slice(&a[..6].iter().map(|&v| q(v)).collect::<Vec<_>>());
            let y = SexticElement::from_slice(&a[6..].iter().map(|&v| q(v)).collect::<Vec<_>>());
            prop_assert_eq!(k.elem_mul(&x, &y).conjugate(), k.elem_mul(&x.conjugate(), &y.conjugate()));
            prop_assert_eq!(x.conjugate().conjugate(), x);
        }

        #[test]
        fn express_then_expand(a in proptest::collection::vec(-6i64..6, 6), d in 1i64..5) {
            let k = field();
            let mu = FieldElement::from_ints(3, 0, -2);
            let w = SexticElement::from_slice(&a.iter().map(|&v| qf(v, d)).collect::<Vec<_>>());
            let c = k.express_in_power_basis(&w, &mu).unwrap();
            let basis = k.power_basis_of(&mu).unwrap();
            let mut acc = vec![Q::zero(); 6];
            for j in 0..2 {
                for i in 0..3 {
                    for (t, b) in acc.iter_mut().zip(&basis[3 * j + i]) {
                        *t += &c[i][j] * b;
                    }
                }
            }
            prop_assert_eq!(acc, w.to_vec());
        }
    }
}
