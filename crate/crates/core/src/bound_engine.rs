//! The candidate enumeration behind `N_mu`.
//!
//! For `mu` with minimal polynomial `X^3 - t1 X^2 + a1 X - N` every pair
//! `(x, a)` in the box `|x| <= sqrt(t2)`, `0 < a <= (t2 - x^2)/2` and every
//! `m in {1, 2}` gives a matrix `iota(mu)` and an integer `n`. A candidate
//! survives when `gamma, n > 0` and `iota` maps a basis of `Z + 2O` into
//! matrices with entries in `(1/n) Z[zeta_3]` and top row in `Z[zeta_3]`.
//!
//! `iota(mu)` does not depend on `m`, and `n(m = 2) = 4 n(m = 1)`, so the
//! surviving `n` of one pair are totally ordered by divisibility. Each pair
//! contributes the lcm of its surviving `n` to `N_mu`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{qz, Q, Z};
use crate::exact::{Eisenstein, EisensteinMatrix, FactoredNumber, Matrix3};
use crate::lattice_search::mu_minpoly_coeffs;
use crate::number_fields::order::z_plus_2o;
use crate::number_fields::poly::{cubic_discriminant, monic_cubic_has_rational_root};
use crate::number_fields::{FieldElement, OrderBasis, SexticElement, SexticField};

/// Minimal polynomial data `mu^3 - t1 mu^2 + a1 mu - N = 0`, `t2 = t1^2 - 2 a1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuData {
    #[serde(with = "crate::serde_q::z")]
    pub t1: Z,
    #[serde(with = "crate::serde_q::z")]
    pub a1: Z,
    #[serde(rename = "N", with = "crate::serde_q::z")]
    pub n: Z,
    #[serde(with = "crate::serde_q::z")]
    pub t2: Z,
}

impl MuData {
    pub fn new(t1: Z, a1: Z, n: Z) -> Result<Self> {
        let (c0, c1, c2) = (-n.clone(), a1.clone(), -t1.clone());
        if monic_cubic_has_rational_root(&c0, &c1, &c2) {
            return Err(Error::DegenerateMu);
        }
        let disc = cubic_discriminant(&c0, &c1, &c2);
        if !disc.is_positive() {
            return Err(Error::NotTotallyReal(disc.to_string()));
        }
        let t2 = &t1 * &t1 - Z::from(2) * &a1;
        Ok(MuData { t1, a1, n, t2 })
    }

    pub fn from_ints(t1: i64, a1: i64, n: i64) -> Result<Self> {
        Self::new(Z::from(t1), Z::from(a1), Z::from(n))
    }

    /// Ascending coefficients `[-N, a1, -t1, 1]`.
    pub fn minpoly(&self) -> [Z; 4] {
        [-self.n.clone(), self.a1.clone(), -self.t1.clone(), Z::one()]
    }
}

/// `(e, f, b)` for the pair `(x, a)`.
pub fn derive_efb(mu: &MuData, x: &Z, a: &Z) -> (Z, Z, Z) {
    let (t1, a1, n) = (&mu.t1, &mu.a1, &mu.n);
    let f = t1 - x;
    let e = -(a1 + x * x + a - t1 * x);
    let b = n - (x * x * x - t1 * x * x + Z::from(2) * x * a + a1 * x - t1 * a);
    (e, f, b)
}

/// `iota(mu) = [[x, a, b], [1, 0, e], [0, 1, f]]`.
pub fn iota_mu(x: &Z, a: &Z, b: &Z, e: &Z, f: &Z) -> Matrix3<Q> {
    Matrix3::new([
        [qz(x), qz(a), qz(b)],
        [Q::one(), Q::zero(), qz(e)],
        [Q::zero(), Q::one(), qz(f)],
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rejection {
    Nonpositive,
    Integrality {
        basis_index: usize,
        row: usize,
        col: usize,
        entry: String,
    },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::Nonpositive => write!(f, "nonpositive"),
            Rejection::Integrality {
                basis_index,
                row,
                col,
                entry,
            } => write!(
                f,
                "integrality: basis element {basis_index}, entry ({row},{col}) = {entry}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateTuple {
    pub m: u8,
    pub x: i64,
    pub a: i64,
    #[serde(with = "crate::serde_q::z")]
    pub b: Z,
    #[serde(with = "crate::serde_q::z")]
    pub e: Z,
    #[serde(with = "crate::serde_q::z")]
    pub f: Z,
    #[serde(with = "crate::serde_q::z")]
    pub alpha: Z,
    #[serde(with = "crate::serde_q::z")]
    pub beta: Z,
    #[serde(with = "crate::serde_q::z")]
    pub gamma: Z,
    #[serde(with = "crate::serde_q::z")]
    pub n: Z,
    pub survived: bool,
    /// This tuple's `n` is the contribution of its `(x, a)` pair to `N_mu`.
    pub counted: bool,
    #[serde(serialize_with = "ser_reason")]
    pub reason: Option<Rejection>,
}

fn ser_reason<S: serde::Serializer>(r: &Option<Rejection>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Integer square root of a nonnegative integer.
fn floor_sqrt(t: &Z) -> Z {
    if t.is_negative() {
        Z::zero()
    } else {
        t.sqrt()
    }
}

/// Fills the derived data; rejects `gamma <= 0` or `n <= 0`.
pub fn make_candidate(mu: &MuData, m: u8, x: i64, a: i64) -> Result<CandidateTuple> {
    if m != 1 && m != 2 {
        return Err(Error::OutOfRange(format!("m = {m} is not 1 or 2")));
    }
    let (xz, az) = (Z::from(x), Z::from(a));
    if xz.abs() > floor_sqrt(&mu.t2) {
        return Err(Error::OutOfRange(format!("|x| = {} exceeds sqrt(t2)", x.abs())));
    }
    if a < 1 || Z::from(2) * &az > &mu.t2 - &xz * &xz {
        return Err(Error::OutOfRange(format!("a = {a} outside 0 < a <= (t2 - x^2)/2")));
    }
    let (e, f, b) = derive_efb(mu, &xz, &az);
    let mz = Z::from(m);
    let alpha = &mz * &az;
    let beta = &mz * &b;
    let gamma = &alpha * &e + &beta * &f;
    let n = &alpha * &gamma - &beta * &beta;
    let ok = gamma.is_positive() && n.is_positive();
    Ok(CandidateTuple {
        m,
        x,
        a,
        b,
        e,
        f,
        alpha,
        beta,
        gamma,
        n,
        survived: ok,
        counted: false,
        reason: (!ok).then_some(Rejection::Nonpositive),
    })
}

/// A basis of `Z + 2O` written in the basis `mu^i zeta^j`.
#[derive(Clone, Debug)]
pub struct IntegralityData {
    coeffs: Vec<[[Q; 2]; 3]>,
}

impl IntegralityData {
    pub fn new(sextic: &SexticField, basis: &[Vec<Q>], mu: &FieldElement) -> Result<Self> {
        let coeffs = basis
            .iter()
            .map(|w| sextic.express_in_power_basis(&SexticElement::from_slice(w), mu))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralityData { coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `iota(w) = sum_i (c_i0 + c_i1 zeta) M^i` for `w` given by its coefficients.
pub fn iota_of(c: &[[Q; 2]; 3], powers: &[Matrix3<Q>; 3]) -> EisensteinMatrix {
    let mut out = EisensteinMatrix::zero();
    for (ci, pw) in c.iter().zip(powers) {
        let s = Eisenstein::new(ci[0].clone(), ci[1].clone());
        if s.is_zero() {
            continue;
        }
        out = &out + &pw.map(|x| s.scale(x));
    }
    out
}

/// Applies the integrality condition to a candidate that passed positivity.
pub fn integrality_filter(c: &mut CandidateTuple, data: &IntegralityData) {
    if !c.survived {
        return;
    }
    let m = iota_mu(&Z::from(c.x), &Z::from(c.a), &c.b, &c.e, &c.f);
    let powers = [Matrix3::identity(), m.clone(), &m * &m];
    for (k, coeff) in data.coeffs.iter().enumerate() {
        let img = iota_of(coeff, &powers);
        for (r, row) in img.e.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                let ok = if r == 0 {
                    entry.is_integral()
                } else {
                    entry.is_in_fraction_ideal(&c.n)
                };
                if !ok {
                    c.survived = false;
                    c.reason = Some(Rejection::Integrality {
                        basis_index: k,
                        row: r,
                        col,
                        entry: entry.to_string(),
                    });
                    return;
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BoundOptions {
    /// Worker threads for candidate evaluation; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Reserved for the variant with a modified isogeny.
    pub alt_isogeny: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub mu: FieldElement,
    #[serde(with = "crate::serde_q::zvec")]
    pub mu_minpoly: Vec<Z>,
    #[serde(flatten)]
    pub data: MuData,
    pub tuples: Vec<CandidateTuple>,
    #[serde(rename = "N_mu")]
    pub n_mu: FactoredNumber,
    #[serde(rename = "six_N_mu")]
    pub six_n_mu: FactoredNumber,
    #[serde(with = "crate::serde_q::zvec")]
    pub prime_set: Vec<Z>,
    #[serde(with = "crate::serde_q::z")]
    pub t2_cubed: Z,
}

impl BoundCertificate {
    pub fn survivors(&self) -> impl Iterator<Item = &CandidateTuple> {
        self.tuples.iter().filter(|t| t.survived)
    }
}

pub fn theorem_bounds_for_mu(mu: &MuData) -> Z {
    mu.t2.pow(3u32)
}

/// All candidates of the box, positivity and integrality applied, in
/// `(x, a, m)` order.
pub fn evaluate_candidates(mu: &MuData, data: &IntegralityData, threads: Option<usize>) -> Result<Vec<CandidateTuple>> {
    let s = floor_sqrt(&mu.t2)
        .to_i64()
        .ok_or_else(|| Error::OutOfRange("t2 too large".into()))?;
    let pairs: Vec<(i64, i64)> = (-s..=s)
        .flat_map(|x| {
            let top = ((&mu.t2 - Z::from(x * x)) / Z::from(2)).to_i64().unwrap_or(0);
            (1..=top).map(move |a| (x, a))
        })
        .collect();
    let work = |&(x, a): &(i64, i64)| -> Result<Vec<CandidateTuple>> {
        let mut out = Vec::with_capacity(2);
        for m in [1u8, 2] {
            let mut c = make_candidate(mu, m, x, a)?;
            integrality_filter(&mut c, data);
            out.push(c);
        }
        mark_counted(&mut out);
        Ok(out)
    };
    let nested: Result<Vec<Vec<CandidateTuple>>> = match threads {
        Some(1) => pairs.iter().map(work).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::OutOfRange(e.to_string()))?
            .install(|| pairs.par_iter().map(work).collect()),
        None => pairs.par_iter().map(work).collect(),
    };
    Ok(nested?.into_iter().flatten().collect())
}

/// Flags the survivor whose `n` is the lcm of the surviving `n` of the pair.
fn mark_counted(pair: &mut [CandidateTuple]) {
    let lcm = pair
        .iter()
        .filter(|c| c.survived)
        .fold(None::<Z>, |acc, c| Some(acc.map_or(c.n.clone(), |l| l.lcm(&c.n))));
    if let Some(l) = lcm {
        if let Some(c) = pair.iter_mut().find(|c| c.survived && c.n == l) {
            c.counted = true;
        }
    }
}

/// `N_mu` from evaluated candidates: product over pairs of the lcm of the
/// surviving `n`.
pub fn n_mu_from_tuples(tuples: &[CandidateTuple]) -> Result<FactoredNumber> {
    let mut per_pair: BTreeMap<(i64, i64), FactoredNumber> = BTreeMap::new();
    for t in tuples.iter().filter(|t| t.survived) {
        let f = FactoredNumber::from_integer(&t.n)?;
        per_pair
            .entry((t.x, t.a))
            .and_modify(|l| *l = l.lcm(&f))
            .or_insert(f);
    }
    Ok(per_pair.values().fold(FactoredNumber::one(), |acc, f| acc.mul(f)))
}

/// The basis of `Z + 2O` used by the filter.
pub fn z_plus_2o_basis(sextic: &SexticField, order: &OrderBasis) -> Vec<Vec<Q>> {
    z_plus_2o(sextic, order).rows().clone()
}

pub fn compute_n_mu(
    sextic: &SexticField,
    order: &OrderBasis,
    mu: &FieldElement,
    opts: &BoundOptions,
) -> Result<BoundCertificate> {
    if opts.alt_isogeny {
        return Err(Error::NotImplemented(
            "the modified-isogeny variant of the enumeration".into(),
        ));
    }
    if order.rank() != 6 {
        return Err(Error::InvalidLattice("expected a rank-6 order".into()));
    }
    if mu.is_rational() {
        return Err(Error::DegenerateMu);
    }
    let sub = z_plus_2o(sextic, order);
    if !sub.contains(&SexticElement::real(mu.clone()).to_vec()) {
        return Err(Error::MuNotInOrder);
    }
    let [t1, a1, n] = mu_minpoly_coeffs(sextic.base(), mu)?;
    let data = MuData::new(t1, a1, n)?;
    let idata = IntegralityData::new(sextic, sub.rows(), mu)?;
    let tuples = evaluate_candidates(&data, &idata, opts.threads)?;
    let n_mu = n_mu_from_tuples(&tuples)?;
    let six_n_mu = n_mu.mul(&FactoredNumber::from_i64(6)?);
    let prime_set = six_n_mu.primes();
    Ok(BoundCertificate {
        mu: mu.clone(),
        mu_minpoly: data.minpoly().to_vec(),
        t2_cubed: theorem_bounds_for_mu(&data),
        data,
        tuples,
        n_mu,
        six_n_mu,
        prime_set,
    })
}
