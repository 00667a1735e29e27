//! Picard curves `y^3 = x^4 + a x^2 + b x + c` over Q: invariants, absolute
//! denominators, reduction types, reconstruction and class polynomials.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bound_engine::BoundCertificate;
use crate::error::{Error, Result};
use crate::exact::factor::factor_positive;
use crate::exact::rational::{fmt_q, lcm_all, pow_q, q, valuation_or_inf, Q, Z};
use crate::exact::FactoredNumber;
use crate::number_fields::poly::{poly_add, poly_mul, poly_scale};
use crate::number_fields::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicardCurve {
    #[serde(with = "crate::serde_q")]
    pub a: Q,
    #[serde(with = "crate::serde_q")]
    pub b: Q,
    #[serde(with = "crate::serde_q")]
    pub c: Q,
}

/// `-4a^3b^2 + 16a^4c - 27b^4 + 144ab^2c - 128a^2c^2 + 256c^3`
pub fn discriminant(a: &Q, b: &Q, c: &Q) -> Q {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let a3 = &a2 * a;
    q(-4) * &a3 * &b2 + q(16) * &a3 * a * c - q(27) * &b2 * &b2 + q(144) * a * &b2 * c
        - q(128) * &a2 * &c2
        + q(256) * &c2 * c
}

impl PicardCurve {
    /// A smooth curve (`Delta != 0`).
    pub fn new(a: Q, b: Q, c: Q) -> Result<Self> {
        let cur = PicardCurve { a, b, c };
        if cur.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(cur)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(q(a), q(b), q(c))
    }

    pub fn discriminant(&self) -> Q {
        discriminant(&self.a, &self.b, &self.c)
    }

    /// `(l^6 a, l^9 b, l^12 c)`.
    pub fn scale(&self, l: &Q) -> Self {
        let l3 = pow_q(l, 3);
        let l6 = &l3 * &l3;
        PicardCurve {
            a: &self.a * &l6,
            b: &self.b * &l6 * &l3,
            c: &self.c * &l6 * &l6,
        }
    }
}

/// Absolute invariants; a family is `None` when its denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantVector {
    #[serde(with = "crate::serde_q::opt")]
    pub j1: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub j2: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub j3: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub kw1: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub kw2: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub i1: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub i2: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub i3: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub i4: Option<Q>,
    #[serde(with = "crate::serde_q::opt")]
    pub i5: Option<Q>,
    #[serde(with = "crate::serde_q")]
    pub delta: Q,
}

impl InvariantVector {
    /// The ten invariant values in a fixed order.
    pub fn values(&self) -> [Option<Q>; 10] {
        [
            self.j1.clone(),
            self.j2.clone(),
            self.j3.clone(),
            self.kw1.clone(),
            self.kw2.clone(),
            self.i1.clone(),
            self.i2.clone(),
            self.i3.clone(),
            self.i4.clone(),
            self.i5.clone(),
        ]
    }
}

fn div_opt(n: Q, d: &Q) -> Option<Q> {
    (!d.is_zero()).then(|| n / d)
}

pub fn invariants(cur: &PicardCurve) -> InvariantVector {
    let (a, b, c) = (&cur.a, &cur.b, &cur.c);
    let b2 = b * b;
    let a2 = a * a;
    let a3 = &a2 * a;
    let delta = cur.discriminant();
    InvariantVector {
        j1: div_opt(a3.clone(), &b2),
        j2: div_opt(a * c, &b2),
        j3: div_opt(pow_q(c, 3), &(&b2 * &b2)),
        kw1: div_opt(b2.clone(), &a3),
        kw2: div_opt(c.clone(), &a2),
        i1: div_opt(&a3 * &a3, &delta),
        i2: div_opt(&a3 * &b2, &delta),
        i3: div_opt(&a3 * a * c, &delta),
        i4: div_opt(&b2 * &b2, &delta),
        i5: div_opt(pow_q(c, 3), &delta),
        delta,
    }
}

/// `prod p^max_k(v_p(den(x_k)) / w_k)`.
fn weighted_denominator(parts: &[(&Q, i64)]) -> Result<FactoredNumber> {
    let mut out = FactoredNumber::one();
    for (x, w) in parts {
        let d = FactoredNumber::from_integer(x.denom())?;
        out = out.pointwise_max(&d.pow(Rational64::new(1, *w)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsoluteDenominators {
    /// From `den(j1)^(1/2)` and `den(j3)^(1/4)`.
    pub den_abs: Option<FactoredNumber>,
    /// From `den(j1')^(1/3)` and `den(j2')^(1/2)`, raised to the power `3/2`
    /// so that it is measured in the weight of `b` like `den_abs`.
    pub den_kw_abs: Option<FactoredNumber>,
    /// The same before the weight change, in the weight of `a`.
    pub den_kw_abs_a_weight: Option<FactoredNumber>,
    /// `lcm(den(i1), den(i4), den(i5))`.
    pub den_delta_abs: Option<FactoredNumber>,
}

pub fn absolute_denominators(cur: &PicardCurve) -> Result<AbsoluteDenominators> {
    let inv = invariants(cur);
    let den_abs = match (&inv.j1, &inv.j3) {
        (Some(j1), Some(j3)) => Some(weighted_denominator(&[(j1, 2), (j3, 4)])?),
        _ => None,
    };
    let kw = match (&inv.kw1, &inv.kw2) {
        (Some(k1), Some(k2)) => Some(weighted_denominator(&[(k1, 3), (k2, 2)])?),
        _ => None,
    };
    let den_delta_abs = match (&inv.i1, &inv.i4, &inv.i5) {
        (Some(i1), Some(i4), Some(i5)) => Some(weighted_denominator(&[(i1, 1), (i4, 1), (i5, 1)])?),
        _ => None,
    };
    Ok(AbsoluteDenominators {
        den_abs,
        den_kw_abs: kw.as_ref().map(|k| k.pow(Rational64::new(3, 2))),
        den_kw_abs_a_weight: kw,
        den_delta_abs,
    })
}

/// `prod_p p^(v_p(b) - min(6 v_p(a), 4 v_p(b), 3 v_p(c)) / 4)`.
pub fn den_abs_valuation_form(cur: &PicardCurve) -> Result<FactoredNumber> {
    if cur.b.is_zero() {
        return Err(Error::ZeroB);
    }
    let mut primes = BTreeSet::new();
    for x in [&cur.a, &cur.b, &cur.c] {
        if !x.is_zero() {
            for n in [x.numer(), x.denom()] {
                primes.extend(factor_positive(&n.abs()).into_iter().map(|(p, _)| p));
            }
        }
    }
    let mut pairs = Vec::new();
    for p in primes {
        let vb = valuation_or_inf(&cur.b, &p).expect("b != 0");
        let mut m = 4 * vb;
        if let Some(va) = valuation_or_inf(&cur.a, &p) {
            m = m.min(6 * va);
        }
        if let Some(vc) = valuation_or_inf(&cur.c, &p) {
            m = m.min(3 * vc);
        }
        let e = Rational64::from_integer(vb) - Rational64::new(m, 4);
        if !e.is_zero() {
            pairs.push((p, e));
        }
    }
    FactoredNumber::from_pairs(1, pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionVerdict {
    #[serde(with = "crate::serde_q::z")]
    pub prime: Z,
    pub case: ReductionCase,
    /// `min(v(a)/2, v(b)/3, v(c)/4)`.
    pub m0: String,
    /// Which of `a`, `b`, `c` attain `m0`.
    pub attained_by: Vec<char>,
    /// Case 3: the residue `abar^2 = a^2/c mod p` of the reduced model
    /// `y^3 = x^4 + abar x^2 + 1`.
    #[serde(with = "crate::serde_q::opt_z")]
    pub abar_squared: Option<Z>,
    pub reason: String,
}

fn weighted_valuation(x: &Q, p: &Z, w: i64) -> Option<Rational64> {
    valuation_or_inf(x, p).map(|v| Rational64::new(v, w))
}

pub fn classify_reduction(cur: &PicardCurve, p: &Z) -> Result<ReductionVerdict> {
    if !crate::exact::is_probable_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if (Z::from(6) % p).is_zero() {
        return Err(Error::PrimeDividesSix(p.to_string()));
    }
    if cur.b.is_zero() {
        return Err(Error::ZeroB);
    }
    let va = weighted_valuation(&cur.a, p, 2);
    let vb = weighted_valuation(&cur.b, p, 3).expect("b != 0");
    let vc = weighted_valuation(&cur.c, p, 4);
    let m0 = [va, Some(vb), vc].into_iter().flatten().min().expect("b != 0");
    let attained_by: Vec<char> = [('a', va), ('b', Some(vb)), ('c', vc)]
        .into_iter()
        .filter(|(_, v)| *v == Some(m0))
        .map(|(n, _)| n)
        .collect();
    let mut verdict = ReductionVerdict {
        prime: p.clone(),
        case: ReductionCase::None,
        m0: m0.to_string(),
        attained_by: attained_by.clone(),
        abar_squared: None,
        reason: String::new(),
    };
    if attained_by.contains(&'b') {
        verdict.reason = "minimum attained by v(b)/3".into();
    } else if attained_by.contains(&'c') {
        let c = &cur.c;
        let disc = &cur.a * &cur.a - q(4) * c;
        let vc = valuation_or_inf(c, p).expect("c attains the minimum");
        match valuation_or_inf(&disc, p) {
            Some(vd) if vd <= vc => {
                let r = &cur.a * &cur.a / c;
                verdict.case = ReductionCase::Three;
                verdict.abar_squared = Some(residue(&r, p));
                verdict.reason = "smooth reduction y^3 = x^4 + abar x^2 + 1".into();
            }
            _ => {
                verdict.case = ReductionCase::One;
                verdict.reason = "v(a^2 - 4c) > v(4c): abar = +-2".into();
            }
        }
    } else {
        verdict.case = ReductionCase::Two;
        verdict.reason = "minimum attained only by v(a)/2".into();
    }
    Ok(verdict)
}

/// `x mod p` for `x` with nonnegative valuation at `p`.
fn residue(x: &Q, p: &Z) -> Z {
    let inv = crate::linalg::mod_inverse(&(x.denom() % p), p);
    ((x.numer() % p) * inv % p + p) % p
}

/// The curve `y^3 = x^4 + j1 x^2 + j1 x + j1 j2`.
pub fn reconstruct(j1: &Q, j2: &Q) -> Result<PicardCurve> {
    if j1.is_zero() {
        return Err(Error::ZeroJ1);
    }
    PicardCurve::new(j1.clone(), j1.clone(), j1 * j2)
}

/// Isomorphism over the algebraic closure, decided on absolute invariants.
pub fn geometric_isomorphism(c1: &PicardCurve, c2: &PicardCurve) -> Result<bool> {
    if c1.b.is_zero() || c2.b.is_zero() {
        return Err(Error::ZeroB);
    }
    let pattern = |c: &PicardCurve| (c.a.is_zero(), c.c.is_zero());
    if pattern(c1) != pattern(c2) {
        return Ok(false);
    }
    let (i1, i2) = (invariants(c1), invariants(c2));
    Ok(if c1.a.is_zero() {
        i1.j3 == i2.j3
    } else {
        i1.j1 == i2.j1 && i1.j2 == i2.j2
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPolyPair {
    /// Ascending coefficients.
    #[serde(with = "crate::serde_q::vec")]
    pub h1: Vec<Q>,
    #[serde(with = "crate::serde_q::vec")]
    pub h2hat: Vec<Q>,
    #[serde(with = "crate::serde_q::z")]
    pub den_h1: Z,
    #[serde(with = "crate::serde_q::z")]
    pub den_h2hat: Z,
}

impl ClassPolyPair {
    pub fn h1_poly(&self) -> Poly {
        Poly::new(self.h1.clone())
    }

    pub fn h2hat_poly(&self) -> Poly {
        Poly::new(self.h2hat.clone())
    }

    /// `j2 = H2hat(j1) / H1'(j1)`.
    pub fn recover_j2(&self, j1: &Q) -> Q {
        let h = &self.h1;
        let deriv = Poly::new((1..h.len()).map(|i| &h[i] * q(i as i64)).collect());
        self.h2hat_poly().eval(j1) / deriv.eval(j1)
    }
}

fn den_of_coeffs(p: &Poly) -> Z {
    let dens: Vec<Z> = p.coeffs().iter().map(|c| c.denom().clone()).collect();
    lcm_all(&dens)
}

/// `H1 = prod (X - j1)`, `H2hat = sum j2 prod_{other} (X - j1')`.
pub fn class_polynomials(points: &[(Q, Q)]) -> Result<ClassPolyPair> {
    let mut seen = BTreeSet::new();
    for (j1, _) in points {
        if !seen.insert(j1.clone()) {
            return Err(Error::RepeatedJ1(fmt_q(j1)));
        }
    }
    let lin = |r: &Q| Poly::new(vec![-r.clone(), Q::one()]);
    let h1 = points
        .iter()
        .fold(Poly::new(vec![Q::one()]), |acc, (j1, _)| poly_mul(&acc, &lin(j1)));
    let mut h2 = Poly::new(vec![]);
    for (i, (_, j2)) in points.iter().enumerate() {
        let prod = points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .fold(Poly::new(vec![Q::one()]), |acc, (_, (j1, _))| poly_mul(&acc, &lin(j1)));
        h2 = poly_add(&h2, &poly_scale(&prod, j2));
    }
    Ok(ClassPolyPair {
        den_h1: den_of_coeffs(&h1),
        den_h2hat: den_of_coeffs(&h2),
        h1: h1.coeffs().to_vec(),
        h2hat: h2.coeffs().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    #[serde(with = "crate::serde_q::z")]
    pub prime: Z,
    pub divides_six_n_mu: bool,
}

/// Informational comparison of `v_p(den)` with `v_p(N_mu) / 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRatio {
    #[serde(with = "crate::serde_q::z")]
    pub prime: Z,
    pub v_den: String,
    pub third_v_n_mu: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub primes: Vec<PrimeCheck>,
    pub exponents: Vec<ExponentRatio>,
}

pub fn verify_against_certificate(dens: &[FactoredNumber], cert: &BoundCertificate) -> VerificationReport {
    verify_against(dens, &cert.n_mu)
}

/// As [`verify_against_certificate`], from `N_mu` alone.
pub fn verify_against(dens: &[FactoredNumber], n_mu: &FactoredNumber) -> VerificationReport {
    let six = n_mu.mul(&FactoredNumber::from_pairs(1, [(Z::from(2), 1.into()), (Z::from(3), 1.into())]).expect("primes"));
    let mut primes: BTreeSet<Z> = BTreeSet::new();
    let mut max_exp: std::collections::BTreeMap<Z, Rational64> = Default::default();
    for d in dens {
        for (p, e) in d.factors() {
            if e.is_positive() {
                primes.insert(p.clone());
                let m = max_exp.entry(p.clone()).or_insert(*e);
                *m = (*m).max(*e);
            }
        }
    }
    let checks: Vec<PrimeCheck> = primes
        .iter()
        .map(|p| PrimeCheck {
            prime: p.clone(),
            divides_six_n_mu: six.exponent(p).is_positive(),
        })
        .collect();
    let exponents = max_exp
        .iter()
        .map(|(p, e)| ExponentRatio {
            prime: p.clone(),
            v_den: e.to_string(),
            third_v_n_mu: (n_mu.exponent(p) / 3).to_string(),
        })
        .collect();
    VerificationReport {
        pass: checks.iter().all(|c| c.divides_six_n_mu),
        primes: checks,
        exponents,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_factored;
    use crate::exact::rational::qf;
    use proptest::prelude::*;

    fn example_curve() -> PicardCurve {
        PicardCurve::from_ints(-2 * 49 * 13, 8 * 5 * 13 * 47, -25 * 169 * 31).unwrap()
    }

    fn fq(s: &str) -> Q {
        // numerator and denominator given in factored notation
        let (n, d) = s.split_once('/').unwrap();
        let neg = n.starts_with('-');
        let n = parse_factored(n.trim_start_matches('-')).unwrap().to_integer().unwrap();
        let d = parse_factored(d).unwrap().to_integer().unwrap();
        let x = Q::new(n, d);
        if neg {
            -x
        } else {
            x
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&q(0), &q(0), &q(1)), q(256));
        assert_eq!(discriminant(&q(0), &q(1), &q(0)), q(-27));
        assert_eq!(discriminant(&q(1), &q(1), &q(1)), q(257));
    }

    #[test]
    fn example_invariants() {
        let inv = invariants(&example_curve());
        assert_eq!(inv.j1, Some(fq("-7^6 * 13/2^3 * 5^2 * 47^2")));
        assert_eq!(inv.j2, Some(fq("7^2 * 13 * 31/2^5 * 47^2")));
        assert_eq!(inv.j3, Some(fq("-5^2 * 13^2 * 31^3/2^12 * 47^4")));
        assert_eq!(inv.kw1, inv.j1.as_ref().map(|j| j.recip()));
        let d = absolute_denominators(&example_curve()).unwrap();
        assert_eq!(d.den_abs, Some(parse_factored("2^3 * 5 * 47").unwrap()));
        assert_eq!(d.den_kw_abs, Some(parse_factored("2^(3/2) * 7^3 * 13^(1/2)").unwrap()));
    }

    #[test]
    fn reduction_examples() {
        let c = example_curve();
        assert_eq!(classify_reduction(&c, &Z::from(5)).unwrap().case, ReductionCase::Two);
        let v = classify_reduction(&c, &Z::from(47)).unwrap();
        assert_eq!(v.case, ReductionCase::Three);
        assert_eq!(v.abar_squared, Some(Z::from(19 * 19 % 47)));
        let v = classify_reduction(&c, &Z::from(7)).unwrap();
        assert_eq!(v.case, ReductionCase::None);
        assert_eq!(v.attained_by, vec!['b', 'c']);
        assert!(matches!(classify_reduction(&c, &Z::from(3)), Err(Error::PrimeDividesSix(_))));
        assert!(matches!(classify_reduction(&c, &Z::from(9)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn case_one_synthetic() {
        // a^2 - 4c = 4*7 + 7^2 has positive valuation at 7
        let c = PicardCurve::from_ints(2 + 7, 7, 1).unwrap();
        assert_eq!(classify_reduction(&c, &Z::from(7)).unwrap().case, ReductionCase::One);
        let c = PicardCurve::from_ints(3, 7, 1).unwrap();
        assert_eq!(classify_reduction(&c, &Z::from(7)).unwrap().case, ReductionCase::Three);
    }

    #[test]
    fn reconstruction() {
        let inv = invariants(&example_curve());
        let (j1, j2) = (inv.j1.unwrap(), inv.j2.unwrap());
        let d = reconstruct(&j1, &j2).unwrap();
        let di = invariants(&d);
        assert_eq!(di.j1.as_ref(), Some(&j1));
        assert_eq!(di.j2.as_ref(), Some(&j2));
        assert!(geometric_isomorphism(&d, &example_curve()).unwrap());
        assert_eq!(reconstruct(&q(1), &q(1)).unwrap(), PicardCurve::from_ints(1, 1, 1).unwrap());
        assert_eq!(reconstruct(&q(0), &q(5)), Err(Error::ZeroJ1));
    }

    #[test]
    fn twist_over_quadratic_field() {
        // scaling by l = sqrt(11): a -> 11^3 a, b^2 -> 11^9 b^2, c -> 11^6 c
        let c = example_curve();
        let r = q(11);
        let a2 = &c.a * pow_q(&r, 3);
        let b2sq = &c.b * &c.b * pow_q(&r, 9);
        let c2 = &c.c * pow_q(&r, 6);
        let inv = invariants(&c);
        assert_eq!(Some(pow_q(&a2, 3) / &b2sq), inv.j1);
        assert_eq!(Some(&a2 * &c2 / &b2sq), inv.j2);
        // modulo 47 the twist is y^3 = x^4 + 19 x^2 + 1
        assert_eq!(residue(&a2, &Z::from(47)), Z::from(19));
        assert_eq!(residue(&c2, &Z::from(47)), Z::from(1));
    }

    #[test]
    fn isomorphism_examples() {
        let c = example_curve();
        assert!(geometric_isomorphism(&c, &c.scale(&q(2))).unwrap());
        let c1 = PicardCurve::from_ints(1, 1, 1).unwrap();
        let c2 = PicardCurve::from_ints(1, 1, 2).unwrap();
        assert!(!geometric_isomorphism(&c1, &c2).unwrap());
        let z1 = PicardCurve::from_ints(0, 1, 1).unwrap();
        let z2 = PicardCurve::from_ints(0, 512, 4096).unwrap();
        assert!(geometric_isomorphism(&z1, &z2).unwrap());
        assert!(!geometric_isomorphism(&z1, &c1).unwrap());
    }

    #[test]
    fn class_polynomial_examples() {
        let cp = class_polynomials(&[(q(1), q(1)), (q(2), q(3))]).unwrap();
        assert_eq!(cp.h1, vec![q(2), q(-3), q(1)]);
        assert_eq!(cp.h2hat, vec![q(-5), q(4)]);
        let inv = invariants(&example_curve());
        let (j1, j2) = (inv.j1.unwrap(), inv.j2.unwrap());
        let cp = class_polynomials(&[(j1.clone(), j2)]).unwrap();
        assert_eq!(cp.den_h1, parse_factored("2^3 * 5^2 * 47^2").unwrap().to_integer().unwrap());
        assert_eq!(cp.den_h2hat, parse_factored("2^5 * 47^2").unwrap().to_integer().unwrap());
        assert!(matches!(
            class_polynomials(&[(q(1), q(1)), (q(1), q(2))]),
            Err(Error::RepeatedJ1(_))
        ));
    }

    #[test]
    fn verification_report() {
        let n_mu = parse_factored("2^153 * 5^18 * 13^3 * 31^3 * 47^3").unwrap();
        let den = parse_factored("2^3 * 5 * 47").unwrap();
        let r = verify_against(&[den], &n_mu);
        assert!(r.pass);
        assert_eq!(r.primes.len(), 3);
        assert!(verify_against(&[], &n_mu).pass);
        assert!(!verify_against(&[parse_factored("7").unwrap()], &n_mu).pass);
        assert!(verify_against(&[parse_factored("3^5").unwrap()], &n_mu).pass);
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-60i64..60, 1i64..12).prop_map(|(n, d)| qf(n, d))
    }

    fn nonzero_q() -> impl Strategy<Value = Q> {
        small_q().prop_filter("nonzero", |x| !x.is_zero())
    }

    fn curve() -> impl Strategy<Value = PicardCurve> {
        (nonzero_q(), nonzero_q(), nonzero_q())
            .prop_filter_map("smooth", |(a, b, c)| PicardCurve::new(a, b, c).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn invariants_are_scaling_invariant(c in curve(), l in nonzero_q()) {
            let s = c.scale(&l);
            prop_assert_eq!(invariants(&s).values(), invariants(&c).values());
            prop_assert_eq!(s.discriminant(), c.discriminant() * pow_q(&l, 36));
        }

        #[test]
        fn j3_identity(c in curve()) {
            let i = invariants(&c);
            prop_assert_eq!(i.j3.unwrap() * i.j1.unwrap(), pow_q(&i.j2.unwrap(), 3));
        }

        #[test]
        fn reconstruct_round_trip(c in curve()) {
            let i = invariants(&c);
            if let Ok(d) = reconstruct(i.j1.as_ref().unwrap(), i.j2.as_ref().unwrap()) {
                let di = invariants(&d);
                prop_assert_eq!(di.j1, i.j1);
                prop_assert_eq!(di.j2, i.j2);
            }
        }

        #[test]
        fn den_abs_forms_agree(c in curve()) {
            let d = absolute_denominators(&c).unwrap();
            prop_assert_eq!(d.den_abs.unwrap(), den_abs_valuation_form(&c).unwrap());
        }

        #[test]
        fn den_delta_is_lcm_of_all(c in curve()) {
            let d = absolute_denominators(&c).unwrap().den_delta_abs.unwrap();
            let inv = invariants(&c);
            let all = [inv.i1, inv.i2, inv.i3, inv.i4, inv.i5]
                .iter()
                .map(|x| FactoredNumber::from_integer(x.as_ref().unwrap().denom()).unwrap())
                .fold(FactoredNumber::one(), |acc, f| acc.lcm(&f));
            prop_assert_eq!(d, all);
        }

        #[test]
        fn classification_matches_den_abs(c in curve(), pi in 0usize..6) {
            let p = Z::from([5, 7, 11, 13, 17, 19][pi]);
            let v = classify_reduction(&c, &p).unwrap();
            let den = absolute_denominators(&c).unwrap().den_abs.unwrap();
            prop_assert_eq!(v.case != ReductionCase::None, den.exponent(&p).is_positive());
        }

        #[test]
        fn class_poly_round_trip(pts in proptest::collection::btree_map(small_q(), small_q(), 1..5)) {
            let pts: Vec<(Q, Q)> = pts.into_iter().collect();
            let cp = class_polynomials(&pts).unwrap();
            prop_assert_eq!(cp.h1.len(), pts.len() + 1);
            for (j1, j2) in &pts {
                prop_assert_eq!(&cp.recover_j2(j1), j2);
            }
        }
    }
}
