use num_traits::Zero;

use crate::exact::rational::Q;
use crate::linalg::QMat;

/// A finite-dimensional commutative Q-algebra with a fixed basis; elements are
/// coordinate vectors in that basis.
pub trait Algebra: Sync {
    fn degree(&self) -> usize;

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q>;

    fn one(&self) -> Vec<Q>;

    /// Traces of the basis elements.
    fn trace_vector(&self) -> &[Q];

    fn trace(&self, x: &[Q]) -> Q {
        x.iter()
            .zip(self.trace_vector())
            .fold(Q::zero(), |acc, (a, t)| acc + a * t)
    }

    fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.degree()];
        v[i] = num_traits::One::one();
        v
    }

    /// Matrix of multiplication by `x`; row `i` holds `x * e_i`.
    fn mult_matrix(&self, x: &[Q]) -> QMat {
        (0..self.degree())
            .map(|i| self.mul(x, &self.basis_vector(i)))
            .collect()
    }

    /// Trace-form Gram matrix `Tr(b_i b_j)` of a list of elements.
    fn trace_gram(&self, basis: &[Vec<Q>]) -> QMat {
        let n = basis.len();
        let mut g = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let t = self.trace(&self.mul(&basis[i], &basis[j]));
                g[j][i] = t.clone();
                g[i][j] = t;
            }
        }
        g
    }

    fn pow(&self, x: &[Q], k: u32) -> Vec<Q> {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, x);
        }
        out
    }
}
