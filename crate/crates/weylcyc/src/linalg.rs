//! Small dense matrices over an arbitrary commutative ring.

use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg};

/// Ring bound sufficient for dense matrix arithmetic.
pub trait RingElem:
    Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + PartialEq
{
}
impl<T> RingElem for T where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T> + PartialEq
{
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RMatrix<S> {
    size: usize,
    data: Vec<S>,
}

impl<S: RingElem> RMatrix<S> {
    pub fn zero(size: usize) -> Self {
        RMatrix {
            size,
            data: vec![S::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> crate::Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(crate::Error::Invalid("matrix rows must be square".into()));
        }
        Ok(RMatrix {
            size,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        RMatrix {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RMatrix {
            size: self.size,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        RMatrix {
            size: self.size,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.size {
            t = t + self[(i, i)].clone();
        }
        t
    }
}

impl<S> std::ops::Index<(usize, usize)> for RMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.size + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for RMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.size + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rat;

    #[test]
    fn mul_trace() {
        let a = RMatrix::<Rat>::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ])
        .unwrap();
        let b = a.mul(&a);
        assert_eq!(b[(0, 1)], rat(4, 1));
        assert_eq!(b.trace(), rat(2, 1));
        assert_eq!(a.commutator(&a), RMatrix::zero(2));
    }
}
