//! 3x3 matrices over a commutative ring (rationals, integers or Q(zeta_3)).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::eisenstein::Eisenstein;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix3<T> {
    pub e: [[T; 3]; 3],
}

impl<T: Clone> Matrix3<T> {
    pub fn new(e: [[T; 3]; 3]) -> Self {
        Matrix3 { e }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> Matrix3<U> {
        Matrix3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.e[i][j]))),
        }
    }
}

impl<T: Clone + Zero + One> Matrix3<T> {
    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(s: T) -> Self {
        Matrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { s.clone() } else { T::zero() })
            }),
        }
    }

    pub fn zero() -> Self {
        Self::scalar(T::zero())
    }
}

impl<T> Matrix3<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    /// `M^k`, with `M^0 = I`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn trace(&self) -> T {
        self.e[0][0].clone() + self.e[1][1].clone() + self.e[2][2].clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }
}

impl<T> Mul for &Matrix3<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    type Output = Matrix3<T>;
    fn mul(self, o: &Matrix3<T>) -> Matrix3<T> {
        Matrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(T::zero(), |acc, k| {
                        acc + self.e[i][k].clone() * o.e[k][j].clone()
                    })
                })
            }),
        }
    }
}

impl<T> Add for &Matrix3<T>
where
    T: Clone + Add<Output = T>,
{
    type Output = Matrix3<T>;
    fn add(self, o: &Matrix3<T>) -> Matrix3<T> {
        Matrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.e[i][j].clone() + o.e[i][j].clone())
            }),
        }
    }
}

impl<T> Sub for &Matrix3<T>
where
    T: Clone + Sub<Output = T>,
{
    type Output = Matrix3<T>;
    fn sub(self, o: &Matrix3<T>) -> Matrix3<T> {
        Matrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.e[i][j].clone() - o.e[i][j].clone())
            }),
        }
    }
}

impl<T> Neg for &Matrix3<T>
where
    T: Clone + Neg<Output = T>,
{
    type Output = Matrix3<T>;
    fn neg(self) -> Matrix3<T> {
        Matrix3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| -self.e[i][j].clone())),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.e {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Matrix over Q(zeta_3).
pub type EisensteinMatrix = Matrix3<Eisenstein>;
