//! Normalized Hochschild chains over the Weyl algebra (and its matrix
//! extension), and the chain-level operators dual to the cochain operators:
//! the boundary, the degree-raising cyclic operator, alternating insertion,
//! and the wedge embedding.
//!
//! A word `(a_0, a_1, .., a_k)` is normalized when every entry in a slot
//! `>= 1` has been reduced modulo scalar multiples of the unit; a word whose
//! reduced entry vanishes is identified with zero.

use num_traits::{One, Zero};
use crate::matrix::MatrixElement;
use crate::weyl::WeylPoly;
use crate::{Error, Result, Scalar};
use std::collections::BTreeMap;

/// Entry type of a chain word: the algebra the complex is built over.
///
/// `split_unit` writes an element as `c * unit + reduced` with a canonical
/// linear choice of `reduced` (so class equality in the quotient by the unit
/// is equality of reduced representatives).
pub trait AlgebraElement: Clone + Ord + Send + Sync + 'static {
    type Coeff: Scalar + Ord;

    fn star(&self, other: &Self) -> Result<Self>;
    fn split_unit(&self) -> (Self::Coeff, Self);
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Self::Coeff) -> Self;
    fn unit_like(&self) -> Self;
    fn compatible(&self, other: &Self) -> bool;
    /// Decompose into basis atoms (coefficient-one elements spanning the
    /// algebra); words are stored atom-wise so that chain arithmetic is
    /// canonical with respect to multilinearity.
    fn atoms(&self) -> Vec<(Self::Coeff, Self)>;
}

impl<T: Scalar + Ord + Send + Sync> AlgebraElement for WeylPoly<T> {
    type Coeff = T;

    fn star(&self, other: &Self) -> Result<Self> {
        WeylPoly::star(self, other)
    }

    fn split_unit(&self) -> (T, Self) {
        (self.eval_zero(), self.reduced())
    }

    fn is_zero(&self) -> bool {
        WeylPoly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        WeylPoly::add(self, other)
    }

    fn scale(&self, c: &T) -> Self {
        WeylPoly::scale(self, c)
    }

    fn unit_like(&self) -> Self {
        WeylPoly::one(self.n())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.n() == other.n()
    }

    fn atoms(&self) -> Vec<(T, Self)> {
        self.terms()
            .map(|(m, c)| {
                (
                    c.clone(),
                    WeylPoly::from_monomial(self.n(), m.clone(), T::one()),
                )
            })
            .collect()
    }
}

impl<T: Scalar + Ord + Send + Sync> AlgebraElement for MatrixElement<T> {
    type Coeff = T;

    fn star(&self, other: &Self) -> Result<Self> {
        MatrixElement::star(self, other)
    }

    /// `c = tr(A(0)) / r`, `reduced = A - c * (1 ⊗ id)`; reduced is the
    /// canonical trace-free-constant representative of the class of `A`.
    fn split_unit(&self) -> (T, Self) {
        let c = self.trace().eval_zero() / crate::scalar::int::<T>(self.r() as i64);
        let unit = MatrixElement::unit(self.n(), self.r());
        let reduced = self.sub(&unit.scale(&c)).expect("same dims");
        (c, reduced)
    }

    fn is_zero(&self) -> bool {
        MatrixElement::is_zero(self)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        MatrixElement::add(self, other)
    }

    fn scale(&self, c: &T) -> Self {
        MatrixElement::scale(self, c)
    }

    fn unit_like(&self) -> Self {
        MatrixElement::unit(self.n(), self.r())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.n() == other.n() && self.r() == other.r()
    }

    fn atoms(&self) -> Vec<(T, Self)> {
        let mut out = Vec::new();
        for i in 0..self.r() {
            for j in 0..self.r() {
                for (c, poly_atom) in self.get(i, j).atoms() {
                    out.push((
                        c,
                        MatrixElement::from_poly_unit(poly_atom, self.r(), i, j),
                    ));
                }
            }
        }
        out
    }
}

/// A chain word: ordered entries `(a_0, .., a_k)`.
pub type Word<E> = Vec<E>;

/// Finite linear combination of normalized words, all of the same length.
/// The homogeneous degree is `word length - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain<E: AlgebraElement> {
    degree: usize,
    terms: BTreeMap<Word<E>, E::Coeff>,
}

impl<E: AlgebraElement> Chain<E> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Normalize a raw word and bring it in with the given coefficient.
    pub fn from_word(coeff: E::Coeff, entries: Word<E>) -> Result<Self> {
        assert!(!entries.is_empty(), "words have at least one entry");
        let mut chain = Chain::zero(entries.len() - 1);
        chain.add_word(coeff, entries)?;
        Ok(chain)
    }

    /// Normalize and accumulate one raw word: entries in slots `>= 1` are
    /// reduced modulo the unit (a fully reduced-to-zero entry kills the
    /// word), then every slot is expanded multilinearly into basis atoms so
    /// that the stored form is canonical and cancellation is exact.
    pub fn add_word(&mut self, coeff: E::Coeff, mut entries: Word<E>) -> Result<()> {
        if entries.len() != self.degree + 1 {
            return Err(Error::WordLength {
                expected: self.degree + 1,
                got: entries.len(),
            });
        }
        for e in entries.iter() {
            if !e.compatible(&entries[0]) {
                return Err(Error::Invalid(
                    "word entries live in different algebras".into(),
                ));
            }
        }
        if coeff.is_zero() {
            return Ok(());
        }
        for entry in entries.iter_mut().skip(1) {
            let (_, reduced) = entry.split_unit();
            if reduced.is_zero() {
                return Ok(()); // slot >= 1 entry is a multiple of the unit
            }
            *entry = reduced;
        }
        if entries[0].is_zero() {
            return Ok(());
        }
        // multilinear expansion into atom words
        let mut partial: Vec<(E::Coeff, Word<E>)> = vec![(coeff, Vec::with_capacity(entries.len()))];
        for entry in &entries {
            let atoms = entry.atoms();
            let mut next = Vec::with_capacity(partial.len() * atoms.len());
            for (c, w) in &partial {
                for (ac, atom) in &atoms {
                    let mut w2 = w.clone();
                    w2.push(atom.clone());
                    next.push((c.clone() * ac.clone(), w2));
                }
            }
            partial = next;
        }
        for (c, w) in partial {
            self.insert_atom_word(c, w);
        }
        Ok(())
    }

    fn insert_atom_word(&mut self, coeff: E::Coeff, word: Word<E>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            Some(old) => {
                let s = old + coeff;
                if !s.is_zero() {
                    self.terms.insert(word, s);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<E>, &E::Coeff)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &E::Coeff) -> Self {
        if c.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            match out.terms.remove(w) {
                Some(old) => {
                    let s = old + c.clone();
                    if !s.is_zero() {
                        out.terms.insert(w.clone(), s);
                    }
                }
                None => {
                    out.terms.insert(w.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-E::Coeff::one()))
    }
}

impl<E: AlgebraElement + std::fmt::Display> Chain<E> {
    /// Serialized form for interchange: (coefficient, entry strings) pairs
    /// in deterministic order.
    pub fn serialized(&self) -> Vec<(String, Vec<String>)> {
        self.terms
            .iter()
            .map(|(w, c)| {
                (
                    format!("{c}"),
                    w.iter().map(|e| format!("{e}")).collect(),
                )
            })
            .collect()
    }
}

/// Normalize a single raw word into a chain (coefficient 1).
pub fn normalize_word<E: AlgebraElement>(entries: Word<E>) -> Result<Chain<E>> {
    Chain::from_word(E::Coeff::one(), entries)
}

/// Dual of the Hochschild differential: the boundary of one word,
///
/// `sum_{i=0}^{k} (-1)^i (a_0, .., a_i ⋆ a_{i+1}, .., a_{k+1})
///  + (-1)^{k+1} (a_{k+1} ⋆ a_0, a_1, .., a_k)`.
///
/// Applying it twice gives zero on normalized chains.
pub fn boundary_word<E: AlgebraElement>(word: &Word<E>) -> Result<Chain<E>> {
    let len = word.len();
    assert!(len >= 2, "boundary needs words of length >= 2");
    let k = len - 2;
    let mut out = Chain::zero(k);
    let mut sign = E::Coeff::one();
    for i in 0..=k {
        let mut w = Vec::with_capacity(len - 1);
        w.extend_from_slice(&word[..i]);
        w.push(word[i].star(&word[i + 1])?);
        w.extend_from_slice(&word[i + 2..]);
        out.add_word(sign.clone(), w)?;
        sign = -sign;
    }
    let mut w = Vec::with_capacity(len - 1);
    w.push(word[len - 1].star(&word[0])?);
    w.extend_from_slice(&word[1..len - 1]);
    out.add_word(sign, w)?;
    Ok(out)
}

/// Boundary of a chain, word by word.
pub fn boundary<E: AlgebraElement>(chain: &Chain<E>) -> Result<Chain<E>> {
    let mut out = Chain::zero(chain.degree() - 1);
    for (w, c) in chain.terms() {
        out = out.add(&boundary_word(w)?.scale(c))?;
    }
    Ok(out)
}

/// The degree-raising cyclic operator on one word:
/// `sum_j (-1)^{kj} (1, a_j, a_{j+1}, .., a_{j-1})` for a word of length
/// `k + 1`. Every output word starts with the unit.
pub fn cyclic_shuffle_word<E: AlgebraElement>(word: &Word<E>) -> Result<Chain<E>> {
    let len = word.len();
    let k = len - 1; // chain degree
    let unit = word[0].unit_like();
    let mut out = Chain::zero(k + 1);
    for j in 0..len {
        let mut w = Vec::with_capacity(len + 1);
        w.push(unit.clone());
        for t in 0..len {
            w.push(word[(j + t) % len].clone());
        }
        let sign = if (k * j).is_multiple_of(2) {
            E::Coeff::one()
        } else {
            -E::Coeff::one()
        };
        out.add_word(sign, w)?;
    }
    Ok(out)
}

/// Degree-raising cyclic operator on a chain.
pub fn cyclic_shuffle<E: AlgebraElement>(chain: &Chain<E>) -> Result<Chain<E>> {
    let mut out = Chain::zero(chain.degree() + 1);
    for (w, c) in chain.terms() {
        out = out.add(&cyclic_shuffle_word(w)?.scale(c))?;
    }
    Ok(out)
}

/// Alternating insertion of `a` after every slot:
/// `sum_{j=0}^{k} (-1)^j (a_0, .., a_j, a, a_{j+1}, .., a_k)`.
pub fn insert_word<E: AlgebraElement>(word: &Word<E>, a: &E) -> Result<Chain<E>> {
    let len = word.len();
    let mut out = Chain::zero(len);
    let mut sign = E::Coeff::one();
    for j in 0..len {
        let mut w = Vec::with_capacity(len + 1);
        w.extend_from_slice(&word[..=j]);
        w.push(a.clone());
        w.extend_from_slice(&word[j + 1..]);
        out.add_word(sign.clone(), w)?;
        sign = -sign;
    }
    Ok(out)
}

/// Alternating insertion on a chain.
pub fn insert<E: AlgebraElement>(chain: &Chain<E>, a: &E) -> Result<Chain<E>> {
    let mut out = Chain::zero(chain.degree() + 1);
    for (w, c) in chain.terms() {
        out = out.add(&insert_word(w, a)?.scale(c))?;
    }
    Ok(out)
}

/// The wedge embedding `head ⊗ v_1 ∧ .. ∧ v_k = sum_sigma sgn(sigma)
/// (head, v_{sigma(1)}, .., v_{sigma(k)})`.
pub fn wedge<E: AlgebraElement>(head: E, vs: &[E]) -> Result<Chain<E>> {
    let k = vs.len();
    let mut out = Chain::zero(k);
    for sigma in crate::perm::Perm::all(k) {
        let mut w = Vec::with_capacity(k + 1);
        w.push(head.clone());
        for i in 0..k {
            w.push(vs[sigma.apply(i)].clone());
        }
        let sign = if sigma.sign() == 1 {
            E::Coeff::one()
        } else {
            -E::Coeff::one()
        };
        out.add_word(sign, w)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Poly;

    fn p() -> Poly {
        Poly::p(1, 1).unwrap()
    }
    fn q() -> Poly {
        Poly::q(1, 1).unwrap()
    }
    fn one() -> Poly {
        Poly::one(1)
    }

    #[test]
    fn normalization_drops_constants() {
        // (1, p + 2, q) -> (1, p, q)
        let shifted = p().add(&Poly::constant(1, rat(2, 1))).unwrap();
        let c = normalize_word(vec![one(), shifted, q()]).unwrap();
        let d = normalize_word(vec![one(), p(), q()]).unwrap();
        assert_eq!(c, d);
        // (q, 5) -> 0
        let z = normalize_word(vec![q(), Poly::constant(1, rat(5, 1))]).unwrap();
        assert!(z.is_zero());
        // (p, q) -> itself
        let w = normalize_word(vec![p(), q()]).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn boundary_degree_one() {
        // (a0, a1) -> (a0 ⋆ a1) - (a1 ⋆ a0)
        let b = boundary_word(&vec![p(), q()]).unwrap();
        let expected = Chain::from_word(rat(1, 1), vec![p().star(&q()).unwrap()])
            .unwrap()
            .sub(&Chain::from_word(rat(1, 1), vec![q().star(&p()).unwrap()]).unwrap())
            .unwrap();
        assert_eq!(b, expected);
        // (1, p) -> 0
        let z = boundary_word(&vec![one(), p()]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let words = [
            vec![p(), q(), p().mul(&q()).unwrap()],
            vec![q(), p(), p()],
            vec![p().mul(&p()).unwrap(), q(), p()],
        ];
        for w in words {
            let chain = normalize_word(w).unwrap();
            let bb = boundary(&boundary(&chain).unwrap()).unwrap();
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn cyclic_shuffle_examples() {
        // (a0) -> (1, a0)
        let c = cyclic_shuffle_word(&vec![p()]).unwrap();
        assert_eq!(c, normalize_word(vec![one(), p()]).unwrap());
        // (a0, a1) -> (1, a0, a1) - (1, a1, a0)
        let c2 = cyclic_shuffle_word(&vec![p(), q()]).unwrap();
        let expected = normalize_word(vec![one(), p(), q()])
            .unwrap()
            .sub(&normalize_word(vec![one(), q(), p()]).unwrap())
            .unwrap();
        assert_eq!(c2, expected);
        // (1, a1): all images have a constant in a slot >= 1
        let z = cyclic_shuffle_word(&vec![one(), p()]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cyclic_shuffle_squares_to_zero() {
        let words = [vec![p(), q()], vec![p().mul(&q()).unwrap(), p(), q()]];
        for w in words {
            let chain = normalize_word(w).unwrap();
            let cc = cyclic_shuffle(&cyclic_shuffle(&chain).unwrap()).unwrap();
            assert!(cc.is_zero());
        }
    }

    #[test]
    fn insertion_examples() {
        // inserting the unit annihilates after normalization
        let z = insert_word(&vec![p(), q()], &one()).unwrap();
        assert!(z.is_zero());
        // single slot: ((a0), a) -> (a0, a)
        let c = insert_word(&vec![p()], &q()).unwrap();
        assert_eq!(c, normalize_word(vec![p(), q()]).unwrap());
    }

    #[test]
    fn insertions_anticommute() {
        // insertions are odd operators: a-then-b cancels b-then-a
        let word = vec![p(), q(), p().mul(&q()).unwrap()];
        let a = p().mul(&p()).unwrap();
        let b = q();
        let ab = insert(&insert_word(&word, &a).unwrap(), &b).unwrap();
        let ba = insert(&insert_word(&word, &b).unwrap(), &a).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero());
    }

    #[test]
    fn wedge_examples() {
        let c = wedge(one(), &[p(), q()]).unwrap();
        let expected = normalize_word(vec![one(), p(), q()])
            .unwrap()
            .sub(&normalize_word(vec![one(), q(), p()]).unwrap())
            .unwrap();
        assert_eq!(c, expected);
        // single element
        assert_eq!(
            wedge(one(), &[p()]).unwrap(),
            normalize_word(vec![one(), p()]).unwrap()
        );
        // repeated entry wedges to zero
        assert!(wedge(one(), &[p(), p()]).unwrap().is_zero());
    }

    #[test]
    fn matrix_words_normalize() {
        use crate::Mat;
        let unit = Mat::unit(1, 2);
        let scaled = unit.scale(&rat(3, 1));
        let z = normalize_word(vec![unit.clone(), scaled]).unwrap();
        assert!(z.is_zero());
        let e01 = Mat::from_poly_unit(Poly::one(1), 2, 0, 1);
        let w: Chain<Mat> = normalize_word(vec![unit, e01]).unwrap();
        // slot 0 unit expands into two diagonal atoms
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn insertions_anticommute_matrix() {
        use crate::Mat;
        let word = vec![
            Mat::scalar_poly(p(), 2),
            Mat::from_poly_unit(q(), 2, 0, 1),
        ];
        let a = Mat::scalar_poly(p().mul(&q()).unwrap(), 2);
        let b = Mat::from_poly_unit(p(), 2, 1, 0);
        let ab = insert(&insert_word(&word, &a).unwrap(), &b).unwrap();
        let ba = insert(&insert_word(&word, &b).unwrap(), &a).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero());
    }
}
