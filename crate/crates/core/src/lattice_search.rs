//! Trace-form lattices, Fincke-Pohst enumeration, the Minkowski search for
//! `mu` in `Z + 2O+`, and the constant `B`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{ceil_q, floor_q, isqrt, q, qz, Q, Z};
use crate::linalg::{QMat, ZMat};
use crate::number_fields::order::{imaginary_sublattice, z_plus_2o};
use crate::number_fields::sextic::conjugate_vec;
use crate::number_fields::{Algebra, CubicField, FieldElement, OrderBasis, SexticField};

/// A symmetric positive-definite rational Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    g: QMat,
}

impl GramMatrix {
    pub fn new(g: QMat) -> Result<Self> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
                }
            }
        }
        let gm = GramMatrix { g };
        if gm.ldl().iter().any(|(d, _)| !d.is_positive()) {
            return Err(Error::InvalidLattice("form is not positive definite".into()));
        }
        Ok(gm)
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn entries(&self) -> &QMat {
        &self.g
    }

    pub fn eval(&self, v: &[Z]) -> Q {
        let n = self.dim();
        let mut acc = Q::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &self.g[i][j] * qz(&(&v[i] * &v[j]));
            }
        }
        acc
    }

    /// `q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`; entry `i` is `(d_i, u_i)`.
    fn ldl(&self) -> Vec<(Q, Vec<Q>)> {
        let n = self.dim();
        let mut out: Vec<(Q, Vec<Q>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut d = self.g[i][i].clone();
            for (dk, uk) in &out {
                d -= &uk[i] * &uk[i] * dk;
            }
            let mut u = vec![Q::zero(); n];
            u[i] = Q::one();
            if !d.is_zero() {
                for j in i + 1..n {
                    let mut s = self.g[i][j].clone();
                    for (dk, uk) in &out {
                        s -= &uk[i] * &uk[j] * dk;
                    }
                    u[j] = s / &d;
                }
            }
            out.push((d, u));
        }
        out
    }
}

/// `G_ij = Tr(b_i b_j)` for the rows of `basis`.
pub fn gram_of<A: Algebra + ?Sized>(alg: &A, basis: &[Vec<Q>]) -> Result<GramMatrix> {
    GramMatrix::new(alg.trace_gram(basis))
}

/// Smallest integer `s >= 0` with `s^2 >= x`.
fn ceil_sqrt(x: &Q) -> Z {
    if !x.is_positive() {
        return Z::zero();
    }
    let c = ceil_q(x);
    let s = isqrt(&c);
    if &s * &s >= c {
        s
    } else {
        s + 1
    }
}

/// All nonzero `v` with `v^T G v <= bound`, one representative per `{v, -v}`
/// (first nonzero coordinate positive), in lexicographic order.
pub fn enumerate_short_vectors(g: &GramMatrix, bound: &Q) -> Vec<Vec<Z>> {
    let n = g.dim();
    if n == 0 || bound.is_negative() {
        return Vec::new();
    }
    let ldl = g.ldl();
    let mut out = Vec::new();
    let mut v = vec![Z::zero(); n];
    search(&ldl, n, bound.clone(), &mut v, &mut out);
    out.retain(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()));
    out.sort();
    out
}

fn search(ldl: &[(Q, Vec<Q>)], level: usize, budget: Q, v: &mut Vec<Z>, out: &mut Vec<Vec<Z>>) {
    if level == 0 {
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v.clone());
        }
        return;
    }
    let i = level - 1;
    let (d, u) = &ldl[i];
    let center: Q = (i + 1..v.len()).fold(Q::zero(), |acc, j| acc + &u[j] * qz(&v[j]));
    let r = &budget / d;
    // superset of the admissible range, then an exact test per value
    let s = ceil_sqrt(&r);
    let lo = floor_q(&-&center) - &s;
    let hi = ceil_q(&-&center) + &s;
    let mut x = lo;
    while x <= hi {
        let t = qz(&x) + &center;
        let used = &t * &t * d;
        if used <= budget {
            v[i] = x.clone();
            search(ldl, level - 1, &budget - used, v, out);
        }
        x += 1;
    }
    v[i] = Z::zero();
}

/// Certified enclosures of pi by Machin's formula with `terms` series terms.
fn pi_interval(terms: usize) -> (Q, Q) {
    fn arctan_inv(k: i64, terms: usize) -> (Q, Q) {
        // alternating series: consecutive partial sums bracket the limit
        let k = Z::from(k);
        let k2 = &k * &k;
        let mut pow = k.clone();
        let mut sum = Q::zero();
        let mut prev = Q::zero();
        for t in 0..=terms {
            let term = Q::new(Z::one(), &pow * Z::from(2 * t + 1));
            prev = sum.clone();
            if t % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            pow *= &k2;
        }
        if prev < sum {
            (prev, sum)
        } else {
            (sum, prev)
        }
    }
    let (a_lo, a_hi) = arctan_inv(5, terms);
    let (b_lo, b_hi) = arctan_inv(239, terms);
    (q(16) * a_lo - q(4) * &b_hi, q(16) * a_hi - q(4) * b_lo)
}

/// `floor(16 sqrt(d) / pi)`, decided with certified rational enclosures.
fn floor_16_sqrt_over_pi(d: &Z) -> Z {
    let mut digits = 10u32;
    loop {
        let scale = Z::from(10).pow(digits);
        let s = isqrt(&(d * &scale * &scale));
        let sqrt_lo = Q::new(s.clone(), scale.clone());
        let sqrt_hi = Q::new(s + 1, scale);
        let (pi_lo, pi_hi) = pi_interval(digits as usize);
        let lo = floor_q(&(q(16) * sqrt_lo / pi_hi));
        let hi = floor_q(&(q(16) * sqrt_hi / pi_lo));
        if lo == hi {
            return lo;
        }
        digits *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiBounds {
    /// `floor(1 + 16 sqrt|D| / pi)`
    #[serde(with = "crate::serde_q::z")]
    pub t2_bound: Z,
    /// `t2_bound^3`
    #[serde(with = "crate::serde_q::z")]
    pub p_bound: Z,
    /// `ceil(196 |D|^(3/2))`
    #[serde(with = "crate::serde_q::z")]
    pub crude_p_bound: Z,
}

pub fn minkowski_bounds(disc: &Z) -> Result<MinkowskiBounds> {
    let d = disc.abs();
    if d.is_zero() {
        return Err(Error::OutOfRange("discriminant must be nonzero".into()));
    }
    let t2_bound: Z = floor_16_sqrt_over_pi(&d) + 1;
    let p_bound = t2_bound.pow(3u32);
    let n = Z::from(196 * 196) * d.pow(3u32);
    let s = isqrt(&n);
    let crude_p_bound = if &s * &s == n { s } else { s + 1 };
    Ok(MinkowskiBounds {
        t2_bound,
        p_bound,
        crude_p_bound,
    })
}

/// A totally real `mu` in `Z + 2O+` with its minimal polynomial data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuCandidate {
    pub mu: FieldElement,
    #[serde(with = "crate::serde_q::z")]
    pub t2: Z,
    /// `(t1, a1, N)` of `X^3 - t1 X^2 + a1 X - N`.
    #[serde(with = "crate::serde_q::zvec")]
    pub minpoly_coeffs: Vec<Z>,
}

/// Integer `(t1, a1, N)` for an integral `mu`.
pub fn mu_minpoly_coeffs(field: &CubicField, mu: &FieldElement) -> Result<[Z; 3]> {
    let cp = field.elem_charpoly(mu);
    let c = cp.coeffs();
    let vals = [-c[2].clone(), c[1].clone(), -c[0].clone()];
    if vals.iter().any(|v| !v.is_integer()) {
        return Err(Error::MuNotInOrder);
    }
    Ok(vals.map(|v| v.to_integer()))
}

/// All `mu in Z + 2O+` outside `Q` with `Tr(mu^2) <= cap`, one per sign pair,
/// sorted by `t2` then coordinates. The default cap is the Minkowski bound.
pub fn find_mu(field: &CubicField, o_plus: &OrderBasis, cap: Option<Z>) -> Result<Vec<MuCandidate>> {
    if o_plus.rank() != 3 {
        return Err(Error::InvalidLattice("expected a rank-3 order".into()));
    }
    let cap = match cap {
        Some(c) => c,
        None => minkowski_bounds(o_plus.disc())?.t2_bound,
    };
    let sub = z_plus_2o(field, o_plus);
    let g = gram_of(field, sub.rows())?;
    let mut out = Vec::new();
    for v in enumerate_short_vectors(&g, &qz(&cap)) {
        let mu = FieldElement::from_slice(&sub.lattice().combine(&v));
        if mu.is_rational() {
            continue;
        }
        let t2 = g.eval(&v).to_integer();
        let [t1, a1, n] = mu_minpoly_coeffs(field, &mu)?;
        out.push(MuCandidate {
            mu,
            t2,
            minpoly_coeffs: vec![t1, a1, n],
        });
    }
    out.sort_by(|x, y| x.t2.cmp(&y.t2).then_with(|| x.mu.cmp(&y.mu)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BConstant {
    #[serde(with = "crate::serde_q::z")]
    pub b: Z,
    /// A minimizer, as sextic coordinates.
    #[serde(with = "crate::serde_q::vec")]
    pub minimizer: Vec<Q>,
}

/// `alpha` lies on the line `Q * sqrt(-3)`, i.e. `alpha = t (1 + 2 zeta)`.
fn on_sqrt_minus_3_line(x: &[Q]) -> bool {
    x[1].is_zero() && x[2].is_zero() && x[4].is_zero() && x[5].is_zero() && x[3] == &x[0] * q(2)
}

/// Minimum of `Tr_{K+/Q}(alpha conj(alpha))` over purely imaginary `alpha`
/// in `O` that generate `K` (the line `Q sqrt(-3)` is excluded).
pub fn compute_b(sextic: &SexticField, order: &OrderBasis) -> Result<BConstant> {
    if order.rank() != 6 {
        return Err(Error::InvalidLattice("expected a rank-6 order".into()));
    }
    let lat = imaginary_sublattice(order)?;
    let rows = lat.rows();
    // symmetric form 1/2 Tr_{K/Q}(x conj(y)); its value at x is Tr_{K+/Q}(x conj(x))
    let n = rows.len();
    let mut g = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = sextic.trace(&sextic.mul(&rows[i], &conjugate_vec(&rows[j]))) / q(2);
        }
    }
    let g = GramMatrix::new(g)?;
    let mut bound = g.entries().iter().enumerate().map(|(i, r)| r[i].clone()).min().unwrap();
    loop {
        let best = enumerate_short_vectors(&g, &bound)
            .into_iter()
            .map(|v| (g.eval(&v), lat.combine(&v)))
            .filter(|(_, x)| !on_sqrt_minus_3_line(x))
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        if let Some((val, x)) = best {
            debug_assert!(val.is_integer());
            return Ok(BConstant {
                b: val.to_integer(),
                minimizer: x,
            });
        }
        bound *= q(2);
    }
}

/// `x` in scientific notation with `digits` significant digits, rounding half up.
pub fn scientific(x: &Q, digits: u32) -> (Z, i64) {
    assert!(x.is_positive() && digits > 0);
    let mut e: i64 = 0;
    let ten = q(10);
    let lo = Q::from_integer(Z::from(10).pow(digits - 1));
    let hi = Q::from_integer(Z::from(10).pow(digits));
    let mut m = x.clone();
    while m < lo {
        m *= &ten;
        e -= 1;
    }
    while m >= hi {
        m /= &ten;
        e += 1;
    }
    let mut r = floor_q(&(m + Q::new(Z::one(), Z::from(2))));
    if r == *hi.numer() {
        r = r.div_floor(&Z::from(10));
        e += 1;
    }
    (r, e + i64::from(digits) - 1)
}

/// Coordinates of the integral points of the box `|v_i| <= r_i`.
pub fn box_points(radii: &[Z]) -> ZMat {
    let mut out: ZMat = vec![Vec::new()];
    for r in radii {
        let mut next = Vec::new();
        for p in &out {
            let mut x = -r.clone();
            while &x <= r {
                let mut p2 = p.clone();
                p2.push(x.clone());
                next.push(p2);
                x += 1;
            }
        }
        out = next;
    }
    out
}
