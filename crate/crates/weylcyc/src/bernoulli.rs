//! Exact Bernoulli polynomials and numbers, exact integration of polynomial
//! and periodic-Bernoulli-product integrands over ordered simplices, permuted
//! chambers and cubes, and exact piecewise-polynomial convolution on the
//! circle.
//!
//! All integrals are computed symbolically by iterated antiderivatives over
//! chamber decompositions; there is no quadrature anywhere.

use crate::mono::Monomial;
use crate::perm::Perm;
use crate::scalar::{frac, int};
use crate::{Error, Result, Scalar};
use std::collections::BTreeMap;

/// Hard cap on the number of integration variables in chamber enumeration
/// (the chamber count is `k!`).
pub const CHAMBER_CAP: usize = 8;

// ---------------------------------------------------------------------------
// Dense univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Canonical form: no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = o.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|k| k.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c.clone() * int::<T>(e as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![T::zero()];
        for (e, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() / int::<T>((e + 1) as i64));
        }
        Self::from_coeffs(out)
    }

    /// Exact integral over `[0, 1]`.
    pub fn integral_01(&self) -> T {
        let anti = self.antiderivative();
        anti.eval(&T::one())
    }
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials in integration variables u_1..u_k
// ---------------------------------------------------------------------------

/// Sparse polynomial in the integration variables `u_1..u_k`
/// (internally 0-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly<T> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> UPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        UPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    /// The variable `u_{v+1}` (0-based `v`).
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, v), T::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
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

    /// Reinterpret in `nvars` variables (pad exponent vectors with zeros).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(nvars, 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert_acc(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        UPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        UPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.insert_acc(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Antiderivative with respect to variable `v` (0-based).
    pub fn antiderivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[v] += 1;
            let d = int::<T>(e[v] as i64);
            out.insert_acc(Monomial(e), c.clone() / d);
        }
        out
    }

    /// Substitute variable `v := 0`.
    pub fn eval_var_zero(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == 0 {
                out.insert_acc(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitute variable `v := 1`.
    pub fn eval_var_one(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[v] = 0;
            out.insert_acc(Monomial(e), c.clone());
        }
        out
    }

    /// Substitute variable `v := u_w` (move the exponent onto `w`).
    pub fn eval_var_to_var(&self, v: usize, w: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[w] += e[v];
            e[v] = 0;
            out.insert_acc(Monomial(e), c.clone());
        }
        out
    }

    /// General substitution of variable `v` by an arbitrary polynomial.
    pub fn substitute(&self, v: usize, arg: &UPoly<T>) -> Self {
        assert_eq!(self.nvars, arg.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut rest = m.0.clone();
            rest[v] = 0;
            let base = UPoly {
                nvars: self.nvars,
                terms: BTreeMap::from([(Monomial(rest), c.clone())]),
            };
            out = out.add(&base.mul(&arg.pow(e as u32)));
        }
        out
    }

    /// Rename variables: new variable `m` is old variable `map[m]`.
    /// `map` must be a bijection on `0..nvars`.
    pub fn rename_vars(&self, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut inv = vec![0usize; self.nvars];
        for (new_v, &old_v) in map.iter().enumerate() {
            inv[old_v] = new_v;
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.nvars];
            for (old_v, &exp) in m.0.iter().enumerate() {
                e[inv[old_v]] = exp;
            }
            out.insert_acc(Monomial(e), c.clone());
        }
        out
    }

    /// Constant term (the value when every variable is 0).
    pub fn constant_term(&self) -> T {
        self.terms
            .get(&Monomial::unit(self.nvars))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Collapse a polynomial that uses at most one variable into a `UniPoly`.
    pub fn to_univariate(&self, v: usize) -> UniPoly<T> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            for (w, &e) in m.0.iter().enumerate() {
                assert!(w == v || e == 0, "polynomial is not univariate in u_{v}");
            }
            let e = m.0[v] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, T::zero());
            }
            coeffs[e] = c.clone();
        }
        UniPoly::from_coeffs(coeffs)
    }
}

// ---------------------------------------------------------------------------
// Regions and exact integration
// ---------------------------------------------------------------------------

/// An ordering chamber of the cube: a total order `0 = u_0 < u_{a_1} < ... <
/// u_{a_k} < 1` on the integration variables, given by the ascending list
/// `a_1..a_k` (1-based variable indices). `u_0` is always pinned to 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    ascending: Vec<usize>,
}

impl Region {
    /// Standard simplex chamber `u_1 < u_2 < ... < u_k`.
    pub fn standard(k: usize) -> Self {
        Region {
            ascending: (1..=k).collect(),
        }
    }

    /// Chamber from an ascending list of 1-based variable indices.
    pub fn from_ascending(ascending: Vec<usize>) -> Result<Self> {
        let k = ascending.len();
        let mut seen = vec![false; k + 1];
        for &v in &ascending {
            if v == 0 || v > k || seen[v] {
                return Err(Error::MalformedRegion(format!(
                    "ascending list must be a permutation of 1..={k}, got {ascending:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Region { ascending })
    }

    /// The chamber `sigma(simplex) = {0 < u_{sigma^{-1}(1)} < ... <
    /// u_{sigma^{-1}(k)} < 1}` for a permutation of `{0..k-1}`.
    pub fn from_sigma(sigma: &Perm) -> Self {
        let inv = sigma.inverse();
        Region {
            ascending: (0..sigma.len()).map(|m| inv.apply(m) + 1).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.ascending.len()
    }

    pub fn ascending(&self) -> &[usize] {
        &self.ascending
    }

    /// All `k!` ordering chambers of the cube, deterministic order.
    pub fn all_chambers(k: usize) -> Vec<Region> {
        Perm::all(k)
            .into_iter()
            .map(|p| Region {
                ascending: p.0.iter().map(|&v| v + 1).collect(),
            })
            .collect()
    }

    /// Rank of each variable within the chamber; the pinned `u_0` has rank
    /// -1 represented as `None` handled by callers via index 0.
    fn position(&self) -> Vec<usize> {
        let k = self.k();
        let mut pos = vec![0usize; k + 1];
        for (rank, &v) in self.ascending.iter().enumerate() {
            pos[v] = rank + 1; // u_0 keeps rank 0
        }
        pos
    }
}

/// One factor `b_1(u_j - u_i)^power` of a chamber integrand; indices are
/// `0..=k` with 0 meaning the pinned origin `u_0 = 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BFactor {
    pub i: usize,
    pub j: usize,
    pub power: u32,
}

/// Exact integral of `f` over the standard ordered simplex
/// `0 < u_1 < ... < u_k < 1` by iterated antiderivatives.
pub fn simplex_integrate<T: Scalar>(f: &UPoly<T>, k: usize) -> T {
    if k == 0 {
        return f.constant_term();
    }
    let mut g = if f.nvars() < k { f.extend_vars(k) } else { f.clone() };
    for v in 0..k {
        let anti = g.antiderivative(v);
        g = if v + 1 < k {
            anti.eval_var_to_var(v, v + 1).sub(&anti.eval_var_zero(v))
        } else {
            anti.eval_var_one(v).sub(&anti.eval_var_zero(v))
        };
    }
    g.constant_term()
}

/// Exact integral of `prod b_1(u_j - u_i)^power * extra` over a chamber.
///
/// Within the chamber each periodic factor is the exact polynomial
/// `u_j - u_i - 1/2` when `u_i < u_j` there, and `u_j - u_i + 1/2`
/// otherwise.
pub fn region_integrate<T: Scalar>(
    factors: &[BFactor],
    extra: &UPoly<T>,
    region: &Region,
) -> Result<T> {
    let k = region.k();
    let pos = region.position();
    let mut integrand = extra.extend_vars(k.max(extra.nvars()));
    if integrand.nvars() > k {
        return Err(Error::MalformedRegion(format!(
            "integrand uses {} variables but the region has {k}",
            integrand.nvars()
        )));
    }
    for f in factors {
        if f.i > k || f.j > k || f.i == f.j {
            return Err(Error::MalformedRegion(format!(
                "factor indices ({}, {}) out of range 0..={k}",
                f.i, f.j
            )));
        }
        let uj = if f.j == 0 {
            UPoly::zero(k)
        } else {
            UPoly::var(k, f.j - 1)
        };
        let ui = if f.i == 0 {
            UPoly::zero(k)
        } else {
            UPoly::var(k, f.i - 1)
        };
        let half = if pos[f.i] < pos[f.j] {
            -frac::<T>(1, 2)
        } else {
            frac::<T>(1, 2)
        };
        let lin = uj.sub(&ui).add(&UPoly::constant(k, half));
        integrand = integrand.mul(&lin.pow(f.power));
    }
    // Rename so that ascending chamber variables become u_1 < .. < u_k,
    // then integrate over the standard simplex.
    let map: Vec<usize> = region.ascending.iter().map(|&v| v - 1).collect();
    let renamed = integrand.rename_vars(&map);
    Ok(simplex_integrate(&renamed, k))
}

/// Exact integral over the cube `[0,1]^k`: sum of chamber integrals over all
/// `k!` orderings.
pub fn cube_integrate<T: Scalar>(factors: &[BFactor], k: usize) -> Result<T> {
    if k > CHAMBER_CAP {
        return Err(Error::ChamberCapExceeded {
            dim: k,
            cap: CHAMBER_CAP,
        });
    }
    let mut total = T::zero();
    for region in Region::all_chambers(k) {
        total = total + region_integrate(factors, &UPoly::one(k), &region)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Bernoulli polynomials and numbers
// ---------------------------------------------------------------------------

/// The Bernoulli polynomial `B_j`, by the recursion: `B_0 = 1`,
/// `B_j' = j B_{j-1}`, and mean zero over `[0,1]` for `j >= 1`.
pub fn bernoulli_poly<T: Scalar>(j: usize) -> UniPoly<T> {
    let mut b = UniPoly::one();
    for m in 1..=j {
        let raw = b.antiderivative().scale(&int::<T>(m as i64));
        let c = -raw.integral_01();
        b = raw.add(&UniPoly::constant(c));
    }
    b
}

/// Bernoulli numbers `B_0..B_n` as values of the Bernoulli polynomials at 0.
pub fn bernoulli_numbers<T: Scalar>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut b = UniPoly::one();
    out.push(b.eval(&T::zero()));
    for m in 1..=n {
        let raw = b.antiderivative().scale(&int::<T>(m as i64));
        let c = -raw.integral_01();
        b = raw.add(&UniPoly::constant(c));
        out.push(b.eval(&T::zero()));
    }
    out
}

// ---------------------------------------------------------------------------
// Piecewise polynomials on the circle
// ---------------------------------------------------------------------------

/// Exact piecewise polynomial on `[0,1)`, interpreted 1-periodically.
/// Breakpoints satisfy `0 = t_0 < ... < t_m = 1` with one polynomial piece
/// per interval `[t_i, t_{i+1})`.
#[derive(Clone, Debug)]
pub struct PiecewisePoly<T> {
    breaks: Vec<T>,
    pieces: Vec<UniPoly<T>>,
}

impl<T: Scalar + Ord> PiecewisePoly<T> {
    /// A single polynomial piece on the whole circle.
    pub fn from_poly(p: UniPoly<T>) -> Self {
        PiecewisePoly {
            breaks: vec![T::zero(), T::one()],
            pieces: vec![p],
        }
    }

    pub fn new(breaks: Vec<T>, pieces: Vec<UniPoly<T>>) -> Result<Self> {
        if breaks.len() != pieces.len() + 1
            || breaks.first() != Some(&T::zero())
            || breaks.last() != Some(&T::one())
            || breaks.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Invalid("malformed piecewise polynomial".into()));
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    /// The 1-periodic Bernoulli function `b_j`.
    pub fn bernoulli(j: usize) -> Self {
        Self::from_poly(bernoulli_poly::<T>(j))
    }

    pub fn breaks(&self) -> &[T] {
        &self.breaks
    }

    /// Evaluate at a point of the fundamental interval `[0, 1)`.
    pub fn eval_unit(&self, t: &T) -> T {
        assert!(
            *t >= T::zero() && *t < T::one(),
            "evaluation point must lie in [0,1)"
        );
        let idx = self
            .breaks
            .windows(2)
            .position(|w| *t >= w[0] && *t < w[1])
            .expect("breakpoints cover [0,1)");
        self.pieces[idx].eval(t)
    }

    pub fn scale(&self, c: &T) -> Self {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    /// Integral over one period.
    pub fn integral(&self) -> T {
        let mut total = T::zero();
        for (w, p) in self.breaks.windows(2).zip(&self.pieces) {
            let anti = p.antiderivative();
            total = total + anti.eval(&w[1]) - anti.eval(&w[0]);
        }
        total
    }

    /// Pointwise sum (refining breakpoints as needed).
    pub fn add(&self, other: &Self) -> Self {
        let breaks = merge_breaks(&self.breaks, &other.breaks);
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (w[0].clone() + w[1].clone()) / int::<T>(2);
            pieces.push(self.piece_at(&mid).add(other.piece_at(&mid)));
        }
        PiecewisePoly { breaks, pieces }
    }

    fn piece_at(&self, t: &T) -> &UniPoly<T> {
        let idx = self
            .breaks
            .windows(2)
            .position(|w| *t >= w[0] && *t < w[1])
            .expect("point inside [0,1)");
        &self.pieces[idx]
    }

    /// Value-level equality: same function on `[0,1)`.
    pub fn equivalent(&self, other: &Self) -> bool {
        let breaks = merge_breaks(&self.breaks, &other.breaks);
        breaks.windows(2).all(|w| {
            let mid = (w[0].clone() + w[1].clone()) / int::<T>(2);
            self.piece_at(&mid) == other.piece_at(&mid)
        })
    }

    /// Exact circle convolution `(f * g)(t) = ∫_0^1 f(t - s) g(s) ds`.
    ///
    /// Computed chamberwise: result breakpoints are the pairwise sums of
    /// input breakpoints mod 1; on each result interval the `s`-integral
    /// splits into linear-bounded segments resolved by exact midpoint tests.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut breaks: Vec<T> = vec![T::zero()];
        for a in &self.breaks {
            for c in &other.breaks {
                let mut s = a.clone() + c.clone();
                while s >= T::one() {
                    s = s - T::one();
                }
                if s > T::zero() {
                    breaks.push(s.clone());
                }
            }
        }
        breaks.sort();
        breaks.dedup();
        breaks.push(T::one());

        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (w[0].clone() + w[1].clone()) / int::<T>(2);
            // Polynomial in t (var 0); s is var 1.
            let mut piece = UPoly::<T>::zero(2);
            for (fw, fp) in self.breaks.windows(2).zip(&self.pieces) {
                let (a, b) = (&fw[0], &fw[1]);
                for (gw, gp) in other.breaks.windows(2).zip(&other.pieces) {
                    let (c, d) = (&gw[0], &gw[1]);
                    for shift in [T::zero(), T::one()] {
                        // t - s + shift in [a, b)  <=>  t - b + shift < s <= t - a + shift
                        let lo_lin = mid.clone() - b.clone() + shift.clone();
                        let hi_lin = mid.clone() - a.clone() + shift.clone();
                        let lo_is_c = *c >= lo_lin;
                        let hi_is_d = *d <= hi_lin;
                        let lo_val = if lo_is_c { c.clone() } else { lo_lin };
                        let hi_val = if hi_is_d { d.clone() } else { hi_lin };
                        if lo_val >= hi_val {
                            continue;
                        }
                        let t = UPoly::var(2, 0);
                        let s = UPoly::var(2, 1);
                        // f(t - s + shift) g(s)
                        let arg = t
                            .sub(&s)
                            .add(&UPoly::constant(2, shift.clone()));
                        let f_comp = compose_unipoly(fp, &arg);
                        let g_comp = compose_unipoly(gp, &s);
                        let integrand = f_comp.mul(&g_comp);
                        let anti = integrand.antiderivative(1);
                        let lo_poly = if lo_is_c {
                            UPoly::constant(2, c.clone())
                        } else {
                            t.sub(&UPoly::constant(2, b.clone()))
                                .add(&UPoly::constant(2, shift.clone()))
                        };
                        let hi_poly = if hi_is_d {
                            UPoly::constant(2, d.clone())
                        } else {
                            t.sub(&UPoly::constant(2, a.clone()))
                                .add(&UPoly::constant(2, shift.clone()))
                        };
                        let seg = anti
                            .substitute(1, &hi_poly)
                            .sub(&anti.substitute(1, &lo_poly));
                        piece = piece.add(&seg);
                    }
                }
            }
            pieces.push(piece.to_univariate(0));
        }
        PiecewisePoly { breaks, pieces }
    }

    /// `j`-fold convolution power (`j >= 1`).
    pub fn convolve_power(&self, j: usize) -> Self {
        assert!(j >= 1);
        let mut acc = self.clone();
        for _ in 1..j {
            acc = acc.convolve(self);
        }
        acc
    }
}

fn merge_breaks<T: Scalar + Ord>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out: Vec<T> = a.iter().chain(b.iter()).cloned().collect();
    out.sort();
    out.dedup();
    out
}

fn compose_unipoly<T: Scalar>(p: &UniPoly<T>, arg: &UPoly<T>) -> UPoly<T> {
    let nvars = arg.nvars();
    let mut acc = UPoly::zero(nvars);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(arg).add(&UPoly::constant(nvars, c.clone()));
    }
    acc
}
