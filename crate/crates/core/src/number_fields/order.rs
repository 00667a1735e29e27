//! Orders as full-rank lattices in Hermite form, and the round-2
//! (Pohst-Zassenhaus) maximal order computation.
//!
//! One round-2 step at `p`: compute the p-radical `I` of `O` as the kernel of
//! the Frobenius power `x -> x^(p^k)` on `O/pO`, then the multiplier ring
//! `{x : x I in I} = (1/p) {x in O : x I in p I}`. When the multiplier ring is
//! `O` itself, `O` is p-maximal.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::algebra::Algebra;
use super::cubic::CubicField;
use super::poly::dedekind_p_maximal;
use super::sextic::{conjugate_vec, SexticField};
use crate::error::{Error, Result};
use crate::exact::factor_positive;
use crate::exact::rational::{q, qz, Q, Z};
use crate::linalg::{det, identity_q, integer_left_kernel, left_kernel_mod_p, Lattice, QMat, ZMat};

/// A full-rank lattice in an algebra that is a ring containing 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderBasis {
    lattice: Lattice,
    disc: Z,
}

impl OrderBasis {
    /// Validates that the rows span a full-rank ring containing 1.
    pub fn new<A: Algebra + ?Sized>(alg: &A, rows: &[Vec<Q>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != alg.degree()) {
            return Err(Error::InvalidLattice(format!(
                "rows must have {} coordinates",
                alg.degree()
            )));
        }
        let lattice = Lattice::from_generators(rows);
        if !lattice.is_full_rank() {
            return Err(Error::InvalidLattice(format!(
                "rank {} < {}",
                lattice.rank(),
                alg.degree()
            )));
        }
        check_ring(alg, &lattice)?;
        Ok(Self::from_ring_lattice(alg, lattice))
    }

    fn from_ring_lattice<A: Algebra + ?Sized>(alg: &A, lattice: Lattice) -> Self {
        let disc = discriminant(alg, lattice.rows());
        OrderBasis { lattice, disc }
    }

    /// `Z[basis]` for the standard basis (e.g. `Z[alpha]` for a cubic field).
    pub fn equation_order<A: Algebra + ?Sized>(alg: &A) -> Self {
        Self::from_ring_lattice(alg, Lattice::from_generators(&identity_q(alg.degree())))
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn rows(&self) -> &QMat {
        self.lattice.rows()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Discriminant `det(Tr(b_i b_j))`.
    pub fn disc(&self) -> &Z {
        &self.disc
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.lattice.contains(v)
    }

    /// `[self : sub]` for a suborder `sub`.
    pub fn index_of(&self, sub: &OrderBasis) -> Q {
        self.lattice.index_of(&sub.lattice)
    }
}

/// Checks `1 in L` and `b_i b_j in L` for all basis pairs.
pub fn check_ring<A: Algebra + ?Sized>(alg: &A, lattice: &Lattice) -> Result<()> {
    if !lattice.contains(&alg.one()) {
        return Err(Error::NotARing("1 is not in the lattice".into()));
    }
    let rows = lattice.rows();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            if !lattice.contains(&alg.mul(&rows[i], &rows[j])) {
                return Err(Error::NotARing(format!(
                    "product of basis elements {i} and {j} leaves the lattice"
                )));
            }
        }
    }
    Ok(())
}

pub fn discriminant<A: Algebra + ?Sized>(alg: &A, basis: &[Vec<Q>]) -> Z {
    let d = det(&alg.trace_gram(basis));
    debug_assert!(d.is_integer(), "discriminant of an order is an integer");
    d.to_integer()
}

/// Integer structure constants: `table[i][j]` = coordinates of `b_i b_j`.
fn structure_constants<A: Algebra + ?Sized>(alg: &A, lattice: &Lattice) -> Vec<Vec<Vec<Z>>> {
    let rows = lattice.rows();
    rows.iter()
        .map(|bi| {
            rows.iter()
                .map(|bj| {
                    lattice
                        .coordinates(&alg.mul(bi, bj))
                        .expect("order is closed under multiplication")
                })
                .collect()
        })
        .collect()
}

fn mul_mod(table: &[Vec<Vec<Z>>], x: &[Z], y: &[Z], p: &Z) -> Vec<Z> {
    let n = x.len();
    let mut out = vec![Z::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                *o += &xy * t;
            }
        }
    }
    out.into_iter().map(|v| v.mod_floor(p)).collect()
}

fn pow_mod(table: &[Vec<Vec<Z>>], one: &[Z], x: &[Z], e: &Z, p: &Z) -> Vec<Z> {
    let mut result = one.to_vec();
    let mut base = x.to_vec();
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = mul_mod(table, &result, &base, p);
        }
        base = mul_mod(table, &base, &base, p);
        e >>= 1;
    }
    result
}

/// The p-radical of an order, as a lattice containing `pO`.
pub fn p_radical<A: Algebra + ?Sized>(alg: &A, order: &OrderBasis, p: &Z) -> Lattice {
    let n = order.rank();
    let table = structure_constants(alg, &order.lattice);
    let one = order
        .lattice
        .coordinates(&alg.one())
        .expect("order contains 1");
    let mut qexp = p.clone();
    while qexp < Z::from(n) {
        qexp *= p;
    }
    let frob: ZMat = (0..n)
        .map(|i| {
            let mut e = vec![Z::zero(); n];
            e[i] = Z::one();
            pow_mod(&table, &one, &e, &qexp, p)
        })
        .collect();
    let kernel = left_kernel_mod_p(&frob, p);
    let mut gens: QMat = kernel.iter().map(|k| order.lattice.combine(k)).collect();
    gens.extend(order.rows().iter().map(|r| r.iter().map(|x| x * qz(p)).collect()));
    Lattice::from_generators(&gens)
}

/// One round-2 step. Returns the strictly larger multiplier ring, or `None`
/// when `order` is already p-maximal.
pub fn round2_step<A: Algebra + ?Sized>(alg: &A, order: &OrderBasis, p: &Z) -> Option<OrderBasis> {
    let n = order.rank();
    let radical = p_radical(alg, order, p);
    let rows = order.rows();
    let ideal_rows = radical.rows();
    // condition matrix: row i, column block j = coords of b_i * g_j in the radical basis
    let cond: ZMat = rows
        .iter()
        .map(|bi| {
            let mut row = Vec::with_capacity(n * n);
            for gj in ideal_rows {
                let c = radical
                    .coordinates(&alg.mul(bi, gj))
                    .expect("the p-radical is an ideal");
                row.extend(c);
            }
            row
        })
        .collect();
    let kernel = left_kernel_mod_p(&cond, p);
    if kernel.is_empty() {
        return None;
    }
    let pinv = Q::new(Z::one(), p.clone());
    let mut gens: QMat = kernel
        .iter()
        .map(|k| order.lattice.combine(k).iter().map(|x| x * &pinv).collect())
        .collect();
    gens.extend(rows.iter().cloned());
    let lattice = Lattice::from_generators(&gens);
    debug_assert!(check_ring(alg, &lattice).is_ok());
    Some(OrderBasis::from_ring_lattice(alg, lattice))
}

/// Enlarges `order` until it is p-maximal.
pub fn p_maximize<A: Algebra + ?Sized>(alg: &A, order: &OrderBasis, p: &Z) -> OrderBasis {
    let mut cur = order.clone();
    while let Some(next) = round2_step(alg, &cur, p) {
        cur = next;
    }
    cur
}

/// Round-2 certificate: the multiplier ring of the p-radical is the order.
pub fn is_p_maximal<A: Algebra + ?Sized>(alg: &A, order: &OrderBasis, p: &Z) -> bool {
    round2_step(alg, order, p).is_none()
}

/// Primes `p` with `p^2 | n`.
pub fn square_dividing_primes(n: &Z) -> Vec<Z> {
    if n.is_zero() {
        return Vec::new();
    }
    factor_positive(&n.abs())
        .into_iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, _)| p)
        .collect()
}

/// Maximal order of a cubic field. `Z[alpha]` is kept at every prime where
/// the Dedekind criterion certifies it; elsewhere round 2 enlarges it.
pub fn maximal_order(field: &CubicField) -> OrderBasis {
    let mut order = OrderBasis::equation_order(field);
    let f = field.min_poly();
    for p in square_dividing_primes(field.poly_disc()) {
        if dedekind_p_maximal(&f, &p) {
            continue;
        }
        order = p_maximize(field, &order, &p);
    }
    order
}

/// `O+[zeta_3]`, then saturated at 3 by round 2.
pub fn sextic_order_from_cubic(sextic: &SexticField, o_plus: &OrderBasis) -> Result<OrderBasis> {
    if o_plus.rank() != 3 {
        return Err(Error::InvalidLattice("expected a rank-3 order".into()));
    }
    check_ring(sextic.base(), o_plus.lattice())?;
    let mut rows: QMat = Vec::with_capacity(6);
    for b in o_plus.rows() {
        let mut r = b.clone();
        r.extend(std::iter::repeat_n(Q::zero(), 3));
        rows.push(r);
    }
    for b in o_plus.rows() {
        let mut r = vec![Q::zero(); 3];
        r.extend(b.iter().cloned());
        rows.push(r);
    }
    let order = OrderBasis::new(sextic, &rows)?;
    Ok(p_maximize(sextic, &order, &Z::from(3)))
}

/// The maximal order of `K+(zeta_3)`, built from the maximal order of `K+`.
pub fn sextic_maximal_order(sextic: &SexticField) -> OrderBasis {
    let o_plus = maximal_order(sextic.base());
    sextic_order_from_cubic(sextic, &o_plus).expect("maximal order of K+ is a ring")
}

/// The suborder `Z + 2O`.
pub fn z_plus_2o<A: Algebra + ?Sized>(alg: &A, order: &OrderBasis) -> OrderBasis {
    let mut gens: QMat = vec![alg.one()];
    gens.extend(order.rows().iter().map(|r| r.iter().map(|x| x * q(2)).collect()));
    let lattice = Lattice::from_generators(&gens);
    OrderBasis::from_ring_lattice(alg, lattice)
}

/// `O+ = O ∩ K+` for a sextic order `O`, as a rank-3 cubic order.
pub fn real_suborder(sextic: &SexticField, order: &OrderBasis) -> Result<OrderBasis> {
    // integer coordinate vectors whose zeta-part vanishes
    let den = crate::exact::rational::common_denominator(order.rows().iter().flatten());
    let proj: ZMat = order
        .rows()
        .iter()
        .map(|r| r[3..].iter().map(|x| (x * qz(&den)).to_integer()).collect())
        .collect();
    let kernel = integer_left_kernel(&proj);
    let rows: QMat = kernel
        .iter()
        .map(|k| order.lattice().combine(k)[..3].to_vec())
        .collect();
    OrderBasis::new(sextic.base(), &rows)
}

/// Sublattice `{x in O : conj(x) = -x}` of a sextic order.
pub fn imaginary_sublattice(order: &OrderBasis) -> Result<Lattice> {
    let rows = order.rows();
    let image: QMat = rows
        .iter()
        .map(|r| {
            let c = conjugate_vec(r);
            r.iter().zip(&c).map(|(a, b)| a + b).collect()
        })
        .collect();
    let den = crate::exact::rational::common_denominator(image.iter().flatten());
    let ints: ZMat = image
        .iter()
        .map(|r| r.iter().map(|x| (x * qz(&den)).to_integer()).collect())
        .collect();
    let kernel = integer_left_kernel(&ints);
    let gens: QMat = kernel.iter().map(|k| order.lattice().combine(k)).collect();
    let lat = Lattice::from_generators(&gens);
    if lat.rank() != 3 {
        return Err(Error::InvalidLattice(format!(
            "purely imaginary sublattice has rank {}",
            lat.rank()
        )));
    }
    Ok(lat)
}
