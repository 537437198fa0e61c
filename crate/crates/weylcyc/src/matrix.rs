//! Matrix extension `A_2n ⊗ gl_r`: square matrices with Weyl polynomial
//! entries, multiplied entrywise-and-summed with the star product.

use crate::linalg::RMatrix;
use crate::weyl::WeylPoly;
use crate::{Error, Result, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MatrixElement<T> {
    n: usize,
    r: usize,
    entries: Vec<WeylPoly<T>>, // row-major r x r
}

impl<T: Scalar> MatrixElement<T> {
    pub fn zero(n: usize, r: usize) -> Self {
        assert!(r >= 1);
        MatrixElement {
            n,
            r,
            entries: vec![WeylPoly::zero(n); r * r],
        }
    }

    /// The unit `1 ⊗ id`.
    pub fn unit(n: usize, r: usize) -> Self {
        let mut m = Self::zero(n, r);
        for i in 0..r {
            m.set(i, i, WeylPoly::one(n));
        }
        m
    }

    pub fn from_entries(n: usize, r: usize, entries: Vec<WeylPoly<T>>) -> Result<Self> {
        if entries.len() != r * r {
            return Err(Error::SizeMismatch {
                expected: r * r,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.n(),
                });
            }
        }
        Ok(MatrixElement { n, r, entries })
    }

    /// `f ⊗ E_{ij}` for a matrix unit (0-based indices).
    pub fn from_poly_unit(f: WeylPoly<T>, r: usize, i: usize, j: usize) -> Self {
        let n = f.n();
        let mut m = Self::zero(n, r);
        m.set(i, j, f);
        m
    }

    /// `f ⊗ id`.
    pub fn scalar_poly(f: WeylPoly<T>, r: usize) -> Self {
        let n = f.n();
        let mut m = Self::zero(n, r);
        for i in 0..r {
            m.set(i, i, f.clone());
        }
        m
    }

    /// `1 ⊗ M` for a constant matrix.
    pub fn constant_matrix(n: usize, m: &RMatrix<T>) -> Self {
        let r = m.size();
        let mut out = Self::zero(n, r);
        for i in 0..r {
            for j in 0..r {
                out.set(i, j, WeylPoly::constant(n, m[(i, j)].clone()));
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &WeylPoly<T> {
        &self.entries[i * self.r + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: WeylPoly<T>) {
        self.entries[i * self.r + j] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: o.n,
            });
        }
        if self.r != o.r {
            return Err(Error::SizeMismatch {
                expected: self.r,
                got: o.r,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixElement {
            n: self.n,
            r: self.r,
            entries,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MatrixElement {
            n: self.n,
            r: self.r,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        MatrixElement {
            n: self.n,
            r: self.r,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Matrix product with star-multiplied entries.
    pub fn star(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let r = self.r;
        let mut out = Self::zero(self.n, r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = WeylPoly::zero(self.n);
                for k in 0..r {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.star(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, o: &Self) -> Result<Self> {
        self.star(o)?.sub(&o.star(self)?)
    }

    /// Matrix trace: sum of diagonal polynomials.
    pub fn trace(&self) -> WeylPoly<T> {
        let mut t = WeylPoly::zero(self.n);
        for i in 0..self.r {
            t = t.add(self.get(i, i)).expect("same n");
        }
        t
    }
}

impl<T: Scalar> fmt::Display for MatrixElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.r)
            .map(|i| {
                let cols: Vec<String> =
                    (0..self.r).map(|j| format!("{}", self.get(i, j))).collect();
                cols.join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
