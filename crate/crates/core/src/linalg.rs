//! Dense exact linear algebra: rational elimination, integer Hermite normal
//! form, integer and mod-p kernels, and rational lattices in Hermite form.
//!
//! Vectors are rows. `x * A` means the row vector `x` times the matrix `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::rational::{common_denominator, qz, Q, Z};

pub type QMat = Vec<Vec<Q>>;
pub type ZMat = Vec<Vec<Z>>;

pub fn identity_q(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Q::zero(), |acc, (x, r)| acc + x * &r[j]))
        .collect()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: QMat = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Q>]) -> usize {
    row_echelon(m).len()
}

fn row_echelon(m: &[Vec<Q>]) -> QMat {
    let mut a: QMat = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x * rows = v` for a square invertible `rows`.
pub fn solve_left(rows: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(rows)?;
    Some(vec_mat(v, &inv))
}

/// Row-style Hermite normal form of an integer matrix, with the unimodular
/// transform `U` such that `U * A = H` (full height, zero rows at the bottom).
///
/// Nonzero rows of `H` are in echelon form with positive pivots, and entries
/// above each pivot are reduced into `[0, pivot)`.
pub fn hnf_with_transform(a: &[Vec<Z>]) -> (ZMat, ZMat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: ZMat = a.to_vec();
    let mut u: ZMat = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below r becomes the pivot
            let piv = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(piv) = piv else { break };
            h.swap(piv, r);
            u.swap(piv, r);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let f = h[i][c].div_floor(&h[r][c]);
                sub_row(&mut h, i, r, &f);
                sub_row(&mut u, i, r, &f);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == rows || h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let f = h[i][c].div_floor(&h[r][c]);
            if !f.is_zero() {
                sub_row(&mut h, i, r, &f);
                sub_row(&mut u, i, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

fn sub_row(m: &mut [Vec<Z>], target: usize, src: usize, f: &Z) {
    let (lo, hi) = m.split_at_mut(target.max(src));
    let (t, s) = if target > src {
        (&mut hi[0], &lo[src])
    } else {
        (&mut lo[target], &hi[0])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= f * y;
    }
}

fn negate_row(m: &mut [Vec<Z>], r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Nonzero rows of the Hermite normal form.
pub fn hnf(a: &[Vec<Z>]) -> ZMat {
    let (h, _) = hnf_with_transform(a);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Z-basis of the left kernel `{x in Z^m : x * A = 0}`.
pub fn integer_left_kernel(a: &[Vec<Z>]) -> ZMat {
    let (h, u) = hnf_with_transform(a);
    h.iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur)
        .collect()
}

/// Basis of the left kernel of `a` over F_p, entries in `[0, p)`.
pub fn left_kernel_mod_p(a: &[Vec<Z>], p: &Z) -> ZMat {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // augment [A | I] and row-reduce on the A block
    let mut m: ZMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Z> = r.iter().map(|x| x.mod_floor(p)).collect();
            row.extend((0..rows).map(|j| if i == j { Z::one() } else { Z::zero() }));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = mod_inverse(&m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (&*x * &inv).mod_floor(p);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in 0..cols + rows {
                let t = (&m[i][k] - &f * &m[r][k]).mod_floor(p);
                m[i][k] = t;
            }
        }
        r += 1;
    }
    m[r..].iter().map(|row| row[cols..].to_vec()).collect()
}

pub fn mod_inverse(a: &Z, p: &Z) -> Z {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one(), "not invertible mod p");
    e.x.mod_floor(p)
}

/// A full-rank lattice in Q^n, stored in canonical row Hermite form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    rows: QMat,
}

impl Lattice {
    /// Lattice spanned by the given generators (any number of rows).
    pub fn from_generators(gens: &[Vec<Q>]) -> Self {
        let den = common_denominator(gens.iter().flatten());
        let ints: ZMat = gens
            .iter()
            .map(|r| r.iter().map(|x| (x * qz(&den)).to_integer()).collect())
            .collect();
        let h = hnf(&ints);
        let rows = h
            .into_iter()
            .map(|r| r.into_iter().map(|x| Q::new(x, den.clone())).collect())
            .collect();
        Lattice { rows }
    }

    pub fn rows(&self) -> &QMat {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Integer coordinates of `v`, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Z>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let c = row.iter().position(|x| !x.is_zero())?;
            let k = &rest[c] / &row[c];
            if !k.is_integer() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &k * y;
            }
            coords.push(k.to_integer());
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn combine(&self, coords: &[Z]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            let cq = qz(c);
            for (x, y) in v.iter_mut().zip(row) {
                *x += &cq * y;
            }
        }
        v
    }

    /// Absolute determinant of the basis (covolume relative to Z^n).
    pub fn covolume(&self) -> Q {
        det(&self.rows).abs()
    }

    /// Index `[self : other]` for a full-rank sublattice `other`.
    pub fn index_of(&self, other: &Lattice) -> Q {
        other.covolume() / self.covolume()
    }

    pub fn scaled(&self, k: &Q) -> Lattice {
        let gens: QMat = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * k).collect())
            .collect();
        Lattice::from_generators(&gens)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Lattice::from_generators(&gens)
    }
}

pub fn to_integer_matrix(m: &[Vec<Q>]) -> Option<ZMat> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<BigInt>>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};
    use proptest::prelude::*;

    fn zm(v: &[&[i64]]) -> ZMat {
        v.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_small() {
        let h = hnf(&zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(h, zm(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn kernel_small() {
        let a = zm(&[&[1, 2], &[2, 4], &[3, 6]]);
        let k = integer_left_kernel(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            for c in 0..2 {
                let s: Z = row.iter().zip(&a).map(|(x, r)| x * &r[c]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::from_generators(&[vec![q(1), q(0)], vec![q(0), q(2)], vec![qf(1, 2), q(1)]]);
        assert!(l.contains(&[qf(1, 2), q(1)]));
        assert!(l.contains(&[q(1), q(0)]));
        assert!(!l.contains(&[qf(1, 2), q(0)]));
        assert_eq!(l.covolume(), q(1));
    }

    #[test]
    fn mod_p_kernel() {
        let a = zm(&[&[1, 1], &[1, 1], &[0, 1]]);
        let k = left_kernel_mod_p(&a, &Z::from(2));
        assert_eq!(k, zm(&[&[1, 1, 0]]));
    }

    proptest! {
        #[test]
        fn hnf_preserves_lattice(v in proptest::collection::vec(-20i64..20, 12)) {
            let a: ZMat = v.chunks(3).map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect();
            let (h, u) = hnf_with_transform(&a);
            // U * A = H
            for (i, urow) in u.iter().enumerate() {
                for c in 0..3 {
                    let s: Z = urow.iter().zip(&a).map(|(x, r)| x * &r[c]).sum();
                    prop_assert_eq!(&s, &h[i][c]);
                }
            }
            // U unimodular
            let uq: QMat = u.iter().map(|r| r.iter().map(qz).collect()).collect();
            prop_assert_eq!(det(&uq).abs(), q(1));
        }

        #[test]
        fn inverse_roundtrip(v in proptest::collection::vec(-9i64..9, 9)) {
            let m: QMat = v.chunks(3).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            if let Some(inv) = inverse(&m) {
                prop_assert_eq!(mat_mul(&m, &inv), identity_q(3));
            } else {
                prop_assert_eq!(det(&m), q(0));
            }
        }
    }
}
