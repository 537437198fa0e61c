//! The polynomial Weyl algebra: exact multivariate polynomials in
//! `y_1..y_{2n}` with the Moyal product, the quadratic Lie subalgebra
//! `sp_2n`, and the embedding `gl_n ⊂ sp_2n`.
//!
//! Variable convention: `y_{2j-1} = p_j`, `y_{2j} = q_j`. The star product is
//! multiplication composed with `exp(alpha/2)`, where `alpha` applies, for
//! each pair index `c`, a `p_c`-derivative to the left factor and a
//! `q_c`-derivative to the right factor minus the same with `p` and `q`
//! swapped. This normalization gives `[p_j, q_j] = 1`.

use crate::linalg::RMatrix;
use crate::mono::Monomial;
use crate::scalar::int;
use crate::{Error, Result, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// Total-degree cap for products; guards against runaway expansions.
pub const DEGREE_CAP: usize = 16;

/// Sparse polynomial on `R^{2n}`, the underlying space of the Weyl algebra.
///
/// Invariants: no zero coefficients are stored; every exponent vector has
/// length `2n`; terms are kept in graded lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeylPoly<T> {
    n: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> WeylPoly<T> {
    pub fn zero(n: usize) -> Self {
        WeylPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, T::one())
    }

    pub fn constant(n: usize, c: T) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(2 * n), c);
        }
        p
    }

    /// The coordinate `y_alpha`, `alpha` 1-based in `1..=2n`.
    pub fn var_y(n: usize, alpha: usize) -> Result<Self> {
        if alpha == 0 || alpha > 2 * n {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                max: 2 * n,
            });
        }
        Ok(Self::from_monomial(
            n,
            Monomial::var(2 * n, alpha - 1),
            T::one(),
        ))
    }

    /// `p_j = y_{2j-1}`, `j` 1-based.
    pub fn p(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        Self::var_y(n, 2 * j - 1)
    }

    /// `q_j = y_{2j}`, `j` 1-based.
    pub fn q(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        Self::var_y(n, 2 * j)
    }

    pub fn from_monomial(n: usize, m: Monomial, c: T) -> Self {
        assert_eq!(m.nvars(), 2 * n, "exponent vector length must be 2n");
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    fn insert_acc(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_acc(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Commutative polynomial product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let deg = self.total_degree() + other.total_degree();
        if !self.is_zero() && !other.is_zero() && deg > DEGREE_CAP {
            return Err(Error::DegreeCapExceeded {
                degree: deg,
                cap: DEGREE_CAP,
            });
        }
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_acc(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `y_alpha` (1-based).
    pub fn partial(&self, alpha: usize) -> Result<Self> {
        if alpha == 0 || alpha > 2 * self.n {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                max: 2 * self.n,
            });
        }
        let v = alpha - 1;
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] = e - 1;
            out.insert_acc(m2, c.clone() * int::<T>(e as i64));
        }
        Ok(out)
    }

    /// Evaluation at `y = 0`: the constant coefficient.
    pub fn eval_zero(&self) -> T {
        self.coeff(&Monomial::unit(2 * self.n))
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Non-constant part (the reduced representative modulo constants).
    pub fn reduced(&self) -> Self {
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.is_unit())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear substitution `y_k ↦ sum_l g[(l,k)] y_l` applied to every term.
    pub fn substitute_linear(&self, g: &RMatrix<T>) -> Result<Self> {
        if g.size() != 2 * self.n {
            return Err(Error::SizeMismatch {
                expected: 2 * self.n,
                got: g.size(),
            });
        }
        let images: Vec<WeylPoly<T>> = (0..2 * self.n)
            .map(|k| {
                let mut img = Self::zero(self.n);
                for l in 0..2 * self.n {
                    let c = g[(l, k)].clone();
                    if !c.is_zero() {
                        img.insert_acc(Monomial::var(2 * self.n, l), c);
                    }
                }
                img
            })
            .collect();
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.n, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[k])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Moyal star product.
    ///
    /// Expanded level by level; terminates because each level applies one more
    /// derivative to each factor.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let n = self.n;
        let mut result = self.mul(other)?;
        // state holds the terms of (alpha/2)^k (a ⊗ b) / k!
        let mut state: Vec<(T, WeylPoly<T>, WeylPoly<T>)> =
            vec![(T::one(), self.clone(), other.clone())];
        let mut level: i64 = 0;
        while !state.is_empty() {
            level += 1;
            let denom = int::<T>(2 * level);
            let mut next: Vec<(T, WeylPoly<T>, WeylPoly<T>)> = Vec::new();
            for (c, f, g) in &state {
                for j in 1..=n {
                    let fp = f.partial(2 * j - 1)?;
                    let gq = g.partial(2 * j)?;
                    if !fp.is_zero() && !gq.is_zero() {
                        next.push((c.clone() / denom.clone(), fp, gq));
                    }
                    let fq = f.partial(2 * j)?;
                    let gp = g.partial(2 * j - 1)?;
                    if !fq.is_zero() && !gp.is_zero() {
                        next.push((-c.clone() / denom.clone(), fq, gp));
                    }
                }
            }
            for (c, f, g) in &next {
                result = result.add(&f.mul(g)?.scale(c))?;
            }
            state = next;
        }
        Ok(result)
    }

    /// Moyal bracket `[a, b] = a ⋆ b - b ⋆ a`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.star(other)?.sub(&other.star(self)?)
    }
}

impl<T: Scalar> fmt::Display for WeylPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending graded-lex, leading term first
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = format_vars(m);
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{abs}*{vars}")?;
            }
        }
        Ok(())
    }
}

fn format_vars(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let j = v / 2 + 1;
        let name = if v % 2 == 0 {
            format!("p{j}")
        } else {
            format!("q{j}")
        };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// A homogeneous quadratic polynomial: an element of `sp_2n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SpElement<T> {
    poly: WeylPoly<T>,
}

impl<T: Scalar> SpElement<T> {
    /// Wrap a polynomial, requiring every term to be quadratic. The zero
    /// polynomial is allowed (the zero element of the Lie algebra).
    pub fn new(poly: WeylPoly<T>) -> Result<Self> {
        if poly.terms().any(|(m, _)| m.total_degree() != 2) {
            return Err(Error::NotQuadratic);
        }
        Ok(SpElement { poly })
    }

    pub fn zero(n: usize) -> Self {
        SpElement {
            poly: WeylPoly::zero(n),
        }
    }

    pub fn poly(&self) -> &WeylPoly<T> {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Bracket of quadratics is quadratic.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        SpElement::new(self.poly.bracket(&other.poly)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(SpElement {
            poly: self.poly.add(&other.poly)?,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        SpElement {
            poly: self.poly.scale(c),
        }
    }
}

/// All quadratic monomials `y_i y_j`, `i <= j`: a basis of `sp_2n`,
/// `n(2n+1)` elements in deterministic order.
pub fn sp_basis<T: Scalar>(n: usize) -> Vec<SpElement<T>> {
    let mut out = Vec::new();
    for i in 0..2 * n {
        for j in i..2 * n {
            let mut e = vec![0u16; 2 * n];
            e[i] += 1;
            e[j] += 1;
            out.push(SpElement {
                poly: WeylPoly::from_monomial(n, Monomial(e), T::one()),
            });
        }
    }
    out
}

/// Matrix of the defining representation: `[h, y_k] = sum_l M[(l,k)] y_l`.
///
/// The map is a Lie algebra homomorphism `sp_2n -> gl_2n`.
pub fn quad_to_sp_matrix<T: Scalar>(h: &SpElement<T>) -> Result<RMatrix<T>> {
    let n = h.n();
    let mut m = RMatrix::zero(2 * n);
    for k in 0..2 * n {
        let yk = WeylPoly::var_y(n, k + 1)?;
        let br = h.poly().bracket(&yk)?;
        for (mono, c) in br.terms() {
            debug_assert_eq!(mono.total_degree(), 1);
            let l = mono.0.iter().position(|&e| e == 1).expect("linear term");
            m[(l, k)] = c.clone();
        }
    }
    Ok(m)
}

/// Standard inclusion `gl_n ⊂ sp_2n`: a matrix `x` maps to
/// `sum_{ij} x_{ij} p_i q_j`.
pub fn gl_embed<T: Scalar>(x: &RMatrix<T>, n: usize) -> Result<SpElement<T>> {
    if x.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: x.size(),
        });
    }
    let mut poly = WeylPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = x[(i, j)].clone();
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u16; 2 * n];
            e[2 * i] += 1; // p_{i+1}
            e[2 * j + 1] += 1; // q_{j+1}
            poly = poly.add(&WeylPoly::from_monomial(n, Monomial(e), c))?;
        }
    }
    SpElement::new(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rat;
    use num_traits::Zero;

    fn p(n: usize, j: usize) -> WeylPoly<Rat> {
        WeylPoly::p(n, j).unwrap()
    }
    fn q(n: usize, j: usize) -> WeylPoly<Rat> {
        WeylPoly::q(n, j).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let p1 = p(1, 1);
        let q1 = q(1, 1);
        let two_p1 = p1.add(&p1).unwrap();
        assert_eq!(two_p1, p1.scale(&rat(2, 1)));
        let pq = p1.mul(&q1).unwrap();
        assert_eq!(pq.total_degree(), 2);
        assert!(q1.scale(&rat(0, 1)).is_zero());
        assert!(p(1, 1).mul(&q(1, 1)).unwrap().eval_zero().is_zero());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = p(1, 1);
        let b = p(2, 1);
        assert!(matches!(
            a.add(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degree_cap_enforced() {
        let p1 = p(1, 1);
        let mut big = WeylPoly::one(1);
        for _ in 0..DEGREE_CAP {
            big = big.mul(&p1).unwrap();
        }
        assert!(matches!(
            big.mul(&p1),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn partial_derivatives() {
        // d/dy1 (p^2 q) = 2 p q  with y1 = p1
        let f = p(1, 1).mul(&p(1, 1)).unwrap().mul(&q(1, 1)).unwrap();
        let d1 = f.partial(1).unwrap();
        assert_eq!(d1, p(1, 1).mul(&q(1, 1)).unwrap().scale(&rat(2, 1)));
        assert!(p(1, 1).partial(2).unwrap().is_zero());
        let mixed = p(1, 1)
            .mul(&q(1, 1))
            .unwrap()
            .partial(1)
            .unwrap()
            .partial(2)
            .unwrap();
        assert_eq!(mixed, WeylPoly::one(1));
        assert!(f.partial(3).is_err());
    }

    #[test]
    fn eval_at_zero() {
        let f = WeylPoly::constant(1, rat(3, 1))
            .add(&p(1, 1).mul(&q(1, 1)).unwrap())
            .unwrap();
        assert_eq!(f.eval_zero(), rat(3, 1));
        assert_eq!(p(1, 1).eval_zero(), rat(0, 1));
        assert_eq!(WeylPoly::<Rat>::zero(1).eval_zero(), rat(0, 1));
    }

    #[test]
    fn moyal_product_values() {
        let p1 = p(1, 1);
        let q1 = q(1, 1);
        // p ⋆ q = pq + 1/2
        let pq = p1.star(&q1).unwrap();
        let expected = p1
            .mul(&q1)
            .unwrap()
            .add(&WeylPoly::constant(1, rat(1, 2)))
            .unwrap();
        assert_eq!(pq, expected);
        // 1 ⋆ f = f
        let f = p1.mul(&p1).unwrap().add(&q1).unwrap();
        assert_eq!(WeylPoly::one(1).star(&f).unwrap(), f);
        assert_eq!(f.star(&WeylPoly::one(1)).unwrap(), f);
        // [p, q] = 1
        assert_eq!(p1.bracket(&q1).unwrap(), WeylPoly::one(1));
        // [a, a] = 0
        assert!(f.bracket(&f).unwrap().is_zero());
        // [pq, p] = -p
        let pq_poly = p1.mul(&q1).unwrap();
        assert_eq!(pq_poly.bracket(&p1).unwrap(), p1.neg());
    }

    #[test]
    fn moyal_associativity_small() {
        // sampled degree <= 4 triples, exact
        let n = 1;
        let polys = [
            p(n, 1),
            q(n, 1),
            p(n, 1).mul(&q(n, 1)).unwrap(),
            q(n, 1).mul(&q(n, 1)).unwrap().add(&p(n, 1)).unwrap(),
        ];
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    let ab_c = a.star(b).unwrap().star(c).unwrap();
                    let a_bc = a.star(&b.star(c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn sp_basis_counts() {
        assert_eq!(sp_basis::<Rat>(1).len(), 3);
        assert_eq!(sp_basis::<Rat>(2).len(), 10);
        for h in sp_basis::<Rat>(2) {
            assert!(SpElement::new(h.poly().clone()).is_ok());
        }
    }

    #[test]
    fn sp_action_preserves_degree() {
        // bracket of a quadratic with a degree-d polynomial has degree d
        let h = sp_basis::<Rat>(1);
        let f = p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap();
        for a in &h {
            let br = a.poly().bracket(&f).unwrap();
            if !br.is_zero() {
                assert_eq!(br.total_degree(), 3);
            }
            for b in &h {
                let bb = a.bracket(b).unwrap();
                assert!(SpElement::new(bb.poly().clone()).is_ok());
            }
        }
    }

    #[test]
    fn quad_matrix_examples() {
        // h = p1 q1 -> diag(-1, 1)
        let h = SpElement::new(p(1, 1).mul(&q(1, 1)).unwrap()).unwrap();
        let m = quad_to_sp_matrix(&h).unwrap();
        assert_eq!(m[(0, 0)], rat(-1, 1));
        assert_eq!(m[(1, 1)], rat(1, 1));
        assert_eq!(m[(0, 1)], rat(0, 1));
        assert_eq!(m[(1, 0)], rat(0, 1));
        // h = p1^2: single entry from [p^2, q] = 2p
        let h2 = SpElement::new(p(1, 1).mul(&p(1, 1)).unwrap()).unwrap();
        let m2 = quad_to_sp_matrix(&h2).unwrap();
        assert_eq!(m2[(0, 1)], rat(2, 1));
        assert_eq!(m2[(0, 0)], rat(0, 1));
        assert_eq!(m2[(1, 0)], rat(0, 1));
        assert_eq!(m2[(1, 1)], rat(0, 1));
    }

    #[test]
    fn quad_matrix_is_lie_homomorphism() {
        for n in 1..=2 {
            let basis = sp_basis::<Rat>(n);
            for a in &basis {
                for b in &basis {
                    let lhs = quad_to_sp_matrix(&a.bracket(b).unwrap()).unwrap();
                    let rhs = quad_to_sp_matrix(a)
                        .unwrap()
                        .commutator(&quad_to_sp_matrix(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gl_embed_identity() {
        let id = RMatrix::<Rat>::identity(2);
        let h = gl_embed(&id, 2).unwrap();
        let expected = p(2, 1)
            .mul(&q(2, 1))
            .unwrap()
            .add(&p(2, 2).mul(&q(2, 2)).unwrap())
            .unwrap();
        assert_eq!(h.poly(), &expected);
        assert!(gl_embed(&id, 3).is_err());
    }

    #[test]
    fn trace_identity_small() {
        // tr_sp((embed x)^j) = (1 + (-1)^j) tr_gl(x^j)
        let x = RMatrix::<Rat>::from_rows(vec![
            vec![rat(1, 2), rat(-3, 1)],
            vec![rat(2, 1), rat(5, 3)],
        ])
        .unwrap();
        let m = quad_to_sp_matrix(&gl_embed(&x, 2).unwrap()).unwrap();
        for j in 0..=6 {
            let lhs = m.pow(j).trace();
            let factor = if j % 2 == 0 { rat(2, 1) } else { rat(0, 1) };
            assert_eq!(lhs, x.pow(j).trace() * factor);
        }
    }

    #[test]
    fn display_roundtrip_format() {
        let f = p(2, 1)
            .mul(&p(2, 1))
            .unwrap()
            .mul(&q(2, 1))
            .unwrap()
            .sub(&q(2, 2).scale(&rat(3, 2)))
            .unwrap();
        assert_eq!(format!("{f}"), "p1^2*q1 - 3/2*q2");
        assert_eq!(format!("{}", WeylPoly::<Rat>::zero(1)), "0");
    }
}
