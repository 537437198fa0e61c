//! Relative Lie algebra cohomology side: the equivariant projection onto
//! `sp_2n ⊕ gl_r` and its curvature, the Chern–Weil map, the A-roof-genus
//! and Chern-character invariant series (with exact polarization), the
//! evaluate-at-one map from Hochschild cochains to Lie cochains, the relative
//! differential, the cube-moment oracle, and the cochain-level comparison of
//! the cocycle components with the Chern–Weil classes on the distinguished
//! subalgebra of at-most-linear-in-p elements.

use crate::bernoulli::bernoulli_numbers;
use crate::chain::wedge;
use crate::cocycle::Engine;
use crate::linalg::RMatrix;
use crate::perm::Perm;
use crate::scalar::{factorial, int, rat, rat_string};
use crate::weyl::{quad_to_sp_matrix, SpElement};
use crate::{Error, Mat, MatCochain, Poly, RMat, Rat, Result};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};
use std::sync::Arc;

// ---------------------------------------------------------------------------
// The subalgebra h = sp_2n ⊕ gl_r and the equivariant projection
// ---------------------------------------------------------------------------

/// An element `x ⊗ id + 1 ⊗ M` of `sp_2n ⊕ gl_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HElement {
    n: usize,
    r: usize,
    sp: SpElement<Rat>,
    gl: RMat,
}

impl HElement {
    pub fn new(n: usize, r: usize, sp: SpElement<Rat>, gl: RMat) -> Result<Self> {
        if sp.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: sp.n(),
            });
        }
        if gl.size() != r {
            return Err(Error::SizeMismatch {
                expected: r,
                got: gl.size(),
            });
        }
        Ok(HElement { n, r, sp, gl })
    }

    pub fn from_sp(sp: SpElement<Rat>, r: usize) -> Self {
        let n = sp.n();
        HElement {
            n,
            r,
            sp,
            gl: RMatrix::zero(r),
        }
    }

    pub fn from_gl(n: usize, gl: RMat) -> Self {
        let r = gl.size();
        HElement {
            n,
            r,
            sp: SpElement::zero(n),
            gl,
        }
    }

    pub fn zero(n: usize, r: usize) -> Self {
        HElement {
            n,
            r,
            sp: SpElement::zero(n),
            gl: RMatrix::zero(r),
        }
    }

    pub fn sp(&self) -> &SpElement<Rat> {
        &self.sp
    }

    pub fn gl(&self) -> &RMat {
        &self.gl
    }

    pub fn is_zero(&self) -> bool {
        self.sp.is_zero() && self.gl.is_zero()
    }

    /// Realize in the matrix algebra: `sp ⊗ id + 1 ⊗ gl`.
    pub fn embed(&self) -> Mat {
        let a = Mat::scalar_poly(self.sp.poly().clone(), self.r);
        let b = Mat::constant_matrix(self.n, &self.gl);
        a.add(&b).expect("same dims")
    }

    /// Bracket inside the subalgebra (the two summands commute).
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        HElement::new(
            self.n,
            self.r,
            self.sp.bracket(&other.sp)?,
            self.gl.commutator(&other.gl),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        HElement::new(
            self.n,
            self.r,
            self.sp.add(&other.sp)?,
            self.gl.add(&other.gl),
        )
    }

    pub fn neg(&self) -> Self {
        HElement {
            n: self.n,
            r: self.r,
            sp: self.sp.scale(&-Rat::one()),
            gl: self.gl.neg(),
        }
    }
}

/// The equivariant projection onto the subalgebra: the quadratic part of the
/// normalized trace carries the `sp` component, the constant-term matrix the
/// `gl` component. Fixes the subalgebra pointwise and intertwines its action
/// exactly.
pub fn pr_projection(v: &Mat) -> HElement {
    let n = v.n();
    let r = v.r();
    let avg = v.trace().scale(&rat(1, r as i64));
    let sp = SpElement::new(avg.homogeneous_component(2)).expect("degree-2 part is quadratic");
    let mut gl = RMatrix::zero(r);
    for i in 0..r {
        for j in 0..r {
            gl[(i, j)] = v.get(i, j).eval_zero();
        }
    }
    HElement { n, r, sp, gl }
}

/// Curvature of the projection: `C(u ∧ v) = [pr u, pr v] - pr([u, v])`.
pub fn curvature(u: &Mat, v: &Mat) -> Result<HElement> {
    let pu = pr_projection(u);
    let pv = pr_projection(v);
    let first = pu.bracket(&pv)?;
    let second = pr_projection(&u.bracket(v)?);
    first.add(&second.neg())
}

// ---------------------------------------------------------------------------
// Multilinear scalars for exact polarization
// ---------------------------------------------------------------------------

/// Polynomials in formal marker variables `t_1..t_k` modulo `t_i^2 = 0`,
/// keyed by subset bitmask. Dropping repeated markers is sound because only
/// the full square-free coefficient is ever read off.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiLin {
    terms: BTreeMap<u32, Rat>,
}

impl MultiLin {
    pub fn from_rat(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        MultiLin { terms }
    }

    /// The marker `t_i`.
    pub fn marker(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1u32 << i, Rat::one());
        MultiLin { terms }
    }

    pub fn coeff(&self, mask: u32) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiLin::from_rat(Rat::zero());
        }
        MultiLin {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (*m, k.clone() * c.clone()))
                .collect(),
        }
    }

    /// `exp` of an element with zero constant term (nilpotent, finite sum).
    pub fn exp_nilpotent(&self) -> Self {
        assert!(self.coeff(0).is_zero(), "constant term must vanish");
        let mut acc = MultiLin::from_rat(Rat::one());
        let mut power = MultiLin::from_rat(Rat::one());
        let mut m: i64 = 0;
        loop {
            m += 1;
            power = power * self.clone();
            power = power.scale(&rat(1, m));
            if power.terms.is_empty() {
                break;
            }
            acc = acc + power.clone();
        }
        acc
    }
}

impl Add for MultiLin {
    type Output = MultiLin;
    fn add(self, rhs: MultiLin) -> MultiLin {
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            let entry = terms.remove(&m);
            let s = entry.map_or(c.clone(), |old| old + c);
            if !s.is_zero() {
                terms.insert(m, s);
            }
        }
        MultiLin { terms }
    }
}

impl Mul for MultiLin {
    type Output = MultiLin;
    fn mul(self, rhs: MultiLin) -> MultiLin {
        let mut terms: BTreeMap<u32, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue; // repeated marker dies
                }
                let m = ma | mb;
                let c = ca.clone() * cb.clone();
                let entry = terms.remove(&m);
                let s = entry.map_or(c.clone(), |old| old + c);
                if !s.is_zero() {
                    terms.insert(m, s);
                }
            }
        }
        MultiLin { terms }
    }
}

impl Neg for MultiLin {
    type Output = MultiLin;
    fn neg(self) -> MultiLin {
        self.scale(&-Rat::one())
    }
}

impl Zero for MultiLin {
    fn zero() -> Self {
        MultiLin::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiLin {
    fn one() -> Self {
        MultiLin::from_rat(Rat::one())
    }
}

// ---------------------------------------------------------------------------
// Invariant polynomial series
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    /// The A-roof genus on the `sp` part.
    Ahat,
    /// The Chern character on the `gl` part.
    Chern,
    /// Their product.
    AhatChern,
}

/// An invariant formal series evaluated through trace functionals: the
/// A-roof genus `exp(-sum_{l>=2} (-1)^l B_l/(2l·l!) tr(x^l))` in the
/// defining representation of `sp_2n`, the Chern character `tr(exp(M))`,
/// or their product. Components are extracted exactly, either by
/// polarization (multilinear markers) or by a truncated diagonal series.
#[derive(Clone, Debug)]
pub struct InvariantPolySeries {
    kind: SeriesKind,
    cap: usize,
}

/// Cap on the number of polarization arguments (marker variables).
pub const POLARIZE_CAP: usize = 16;

impl InvariantPolySeries {
    pub fn ahat(cap: usize) -> Self {
        InvariantPolySeries {
            kind: SeriesKind::Ahat,
            cap,
        }
    }

    pub fn chern_character(cap: usize) -> Self {
        InvariantPolySeries {
            kind: SeriesKind::Chern,
            cap,
        }
    }

    pub fn ahat_chern(cap: usize) -> Self {
        InvariantPolySeries {
            kind: SeriesKind::AhatChern,
            cap,
        }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Polarized evaluation: the coefficient of `t_1 .. t_k` in the series
    /// at `sum t_i h_i`. Symmetric and multilinear in the arguments; with
    /// `k` arguments this is exactly the degree-`k` component.
    pub fn polarize_eval(&self, args: &[HElement]) -> Result<Rat> {
        let k = args.len();
        if k > self.cap || k > POLARIZE_CAP {
            return Err(Error::ArityMismatch {
                expected: self.cap.min(POLARIZE_CAP),
                got: k,
            });
        }
        if k == 0 {
            // the constant term of the Chern factor needs the matrix size,
            // which an empty argument list cannot supply
            return Err(Error::ArityMismatch {
                expected: 1,
                got: 0,
            });
        }
        let n = args[0].n;
        let r = args[0].r;
        for a in args {
            if a.n != n || a.r != r {
                return Err(Error::Invalid("arguments live in different algebras".into()));
            }
        }
        let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let bern = bernoulli_numbers::<Rat>(k.max(2));

        let ahat_part = |_self: &Self| -> Result<MultiLin> {
            // sp part as a 2n x 2n marker matrix
            let mut msp: RMatrix<MultiLin> = RMatrix::zero(2 * n);
            for (i, a) in args.iter().enumerate() {
                let m = quad_to_sp_matrix(&a.sp)?;
                let marked = matrix_to_multilin(&m).scale_entries(&MultiLin::marker(i));
                msp = msp.add(&marked.0);
            }
            let mut exponent = MultiLin::zero();
            let mut power = msp.clone();
            for (l, b_l) in bern.iter().enumerate().take(k + 1).skip(2) {
                power = power.mul(&msp);
                // c_l = (-1)^l B_l / (2 l l!)
                let c = b_l.clone() * rat(if l.is_multiple_of(2) { 1 } else { -1 }, 1)
                    / (rat(2 * l as i64, 1) * factorial::<Rat>(l));
                exponent = exponent + power.trace().scale(&-c);
            }
            Ok(exponent.exp_nilpotent())
        };

        let chern_part = || -> MultiLin {
            let mut g: RMatrix<MultiLin> = RMatrix::zero(r);
            for (i, a) in args.iter().enumerate() {
                let marked = matrix_to_multilin(&a.gl).scale_entries(&MultiLin::marker(i));
                g = g.add(&marked.0);
            }
            let mut total = MultiLin::from_rat(int::<Rat>(r as i64));
            let mut power: RMatrix<MultiLin> = RMatrix::identity(r);
            for j in 1..=k {
                power = power.mul(&g);
                total = total + power.trace().scale(&(Rat::one() / factorial::<Rat>(j)));
            }
            total
        };

        let value = match self.kind {
            SeriesKind::Ahat => ahat_part(self)?,
            SeriesKind::Chern => chern_part(),
            SeriesKind::AhatChern => ahat_part(self)? * chern_part(),
        };
        Ok(value.coeff(full))
    }

    /// Degree-`m` component on the diagonal, by a truncated one-variable
    /// series: the coefficient of `s^m` in the series at `s·h`. Independent
    /// of the polarization path.
    pub fn component_on_diagonal(&self, h: &HElement, m: usize) -> Result<Rat> {
        let cap = m.max(2);
        let mut out = TruncSeries::one(cap);
        if matches!(self.kind, SeriesKind::Ahat | SeriesKind::AhatChern) {
            out = out.mul(&ahat_diagonal_series(&quad_to_sp_matrix(&h.sp)?, cap));
        }
        if matches!(self.kind, SeriesKind::Chern | SeriesKind::AhatChern) {
            out = out.mul(&chern_diagonal_series(&h.gl, cap));
        }
        Ok(out.coeff(m))
    }
}

struct MarkedMatrix(RMatrix<MultiLin>);

impl MarkedMatrix {
    fn scale_entries(self, c: &MultiLin) -> MarkedMatrix {
        MarkedMatrix(self.0.scale(c))
    }
}

fn matrix_to_multilin(m: &RMat) -> MarkedMatrix {
    let size = m.size();
    let mut out: RMatrix<MultiLin> = RMatrix::zero(size);
    for i in 0..size {
        for j in 0..size {
            out[(i, j)] = MultiLin::from_rat(m[(i, j)].clone());
        }
    }
    MarkedMatrix(out)
}

// ---------------------------------------------------------------------------
// Truncated one-variable series (diagonal oracle)
// ---------------------------------------------------------------------------

/// Dense truncated power series in one formal variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<Rat>, // length cap + 1
}

impl TruncSeries {
    pub fn zero(cap: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rat::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coeff(&mut self, m: usize, c: Rat) {
        self.coeffs[m] = c;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.coeffs.len(), o.coeffs.len());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.coeffs.len(), o.coeffs.len());
        let cap = self.cap();
        let mut out = Self::zero(cap);
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=cap - i {
                out.coeffs[i + j] += self.coeffs[i].clone() * o.coeffs[j].clone();
            }
        }
        out
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero());
        let cap = self.cap();
        let mut acc = Self::one(cap);
        let mut power = Self::one(cap);
        for m in 1..=cap as i64 {
            power = power.mul(self);
            power = TruncSeries {
                coeffs: power.coeffs.iter().map(|c| c * rat(1, m)).collect(),
            };
            acc = acc.add(&power);
        }
        acc
    }
}

/// Diagonal A-roof series of an `sp` defining-representation matrix:
/// `exp(-sum_{l=2}^{cap} (-1)^l B_l/(2l·l!) tr(x^l) s^l)`.
pub fn ahat_diagonal_series(x: &RMat, cap: usize) -> TruncSeries {
    let bern = bernoulli_numbers::<Rat>(cap.max(2));
    let mut exponent = TruncSeries::zero(cap);
    let mut power = x.clone();
    for (l, b_l) in bern.iter().enumerate().take(cap + 1).skip(2) {
        power = power.mul(x);
        let c = b_l.clone() * rat(if l.is_multiple_of(2) { 1 } else { -1 }, 1)
            / (rat(2 * l as i64, 1) * factorial::<Rat>(l));
        exponent.set_coeff(l, -c * power.trace());
    }
    exponent.exp()
}

/// Halved-exponent variant for a `gl_n` defining-representation matrix:
/// `exp(-sum_j B_{2j}/(4j(2j)!) tr(x^{2j}) s^{2j})`; its square matches the
/// `sp` series of the embedded matrix.
pub fn ahat_gl_diagonal_series(x: &RMat, cap: usize) -> TruncSeries {
    let bern = bernoulli_numbers::<Rat>(cap.max(2));
    let mut exponent = TruncSeries::zero(cap);
    for l in (2..=cap).step_by(2) {
        let j = (l / 2) as i64;
        let c = bern[l].clone() / (rat(4 * j, 1) * factorial::<Rat>(l));
        exponent.set_coeff(l, -c * x.pow(l).trace());
    }
    exponent.exp()
}

/// Diagonal Chern-character series `tr(exp(s M))` truncated at `cap`.
pub fn chern_diagonal_series(m: &RMat, cap: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(cap);
    out.set_coeff(0, int::<Rat>(m.size() as i64));
    let mut power = RMatrix::identity(m.size());
    for j in 1..=cap {
        power = power.mul(m);
        out.set_coeff(j, power.trace() / factorial::<Rat>(j));
    }
    out
}

// ---------------------------------------------------------------------------
// Chern–Weil map, evaluate-at-one, relative differential, moments
// ---------------------------------------------------------------------------

/// The Chern–Weil cochain of a degree-`k` invariant polynomial on `2k`
/// arguments:
/// `(1/(k! 2^k)) sum_sigma sgn(sigma) P(C(v_{s1}, v_{s2}), ..)`.
pub fn chern_weil_chi(series: &InvariantPolySeries, vs: &[Mat]) -> Result<Rat> {
    if !vs.len().is_multiple_of(2) {
        return Err(Error::ArityMismatch {
            expected: vs.len() + 1,
            got: vs.len(),
        });
    }
    let k = vs.len() / 2;
    if k == 0 {
        // the constant term needs the matrix size, which the empty argument
        // list cannot supply; callers handle degree 0 directly
        return Err(Error::ArityMismatch {
            expected: 2,
            got: 0,
        });
    }
    let mut total = Rat::zero();
    for sigma in Perm::all(2 * k) {
        let mut curvatures = Vec::with_capacity(k);
        for t in 0..k {
            let u = &vs[sigma.apply(2 * t)];
            let v = &vs[sigma.apply(2 * t + 1)];
            curvatures.push(curvature(u, v)?);
        }
        let val = series.polarize_eval(&curvatures)?;
        total += val * rat(sigma.sign(), 1);
    }
    Ok(total / (factorial::<Rat>(k) * int::<Rat>(2i64.pow(k as u32))))
}

/// Evaluate-at-one-and-antisymmetrize: a degree-`k` Hochschild cochain
/// becomes the Lie cochain `args -> phi(1 ⊗ v_1 ∧ .. ∧ v_k)`.
pub fn ev_one(phi: &MatCochain, args: &[Mat]) -> Result<Rat> {
    if args.len() != phi.degree() {
        return Err(Error::ArityMismatch {
            expected: phi.degree(),
            got: args.len(),
        });
    }
    if args.is_empty() {
        return Err(Error::Invalid(
            "degree-0 evaluate-at-one needs explicit dimensions; use ev_one_empty".into(),
        ));
    }
    let head = Mat::unit(args[0].n(), args[0].r());
    phi.eval(&wedge(head, args)?)
}

/// Degree-0 variant with explicit dimensions (the empty wedge).
pub fn ev_one_empty(phi: &MatCochain, n: usize, r: usize) -> Result<Rat> {
    if phi.degree() != 0 {
        return Err(Error::ArityMismatch {
            expected: phi.degree(),
            got: 0,
        });
    }
    phi.eval(&crate::chain::normalize_word(vec![Mat::unit(n, r)])?)
}

/// Black-box alternating multilinear functional on the matrix algebra.
pub type LieCochain = Arc<dyn Fn(&[Mat]) -> Result<Rat> + Send + Sync>;

/// Wrap a Hochschild cochain into a Lie cochain through `ev_one`.
pub fn ev_one_cochain(phi: &MatCochain) -> LieCochain {
    let phi = phi.clone();
    Arc::new(move |args: &[Mat]| ev_one(&phi, args))
}

/// Relative differential with trivial coefficients:
/// `(d phi)(x_1 ∧ .. ∧ x_{m+1}) = sum_{i<j} (-1)^{i+j}
///  phi([x_i, x_j] ∧ .. x_i^ .. x_j^ ..)` (1-based sign convention).
pub fn ce_differential(phi: &LieCochain, args: &[Mat]) -> Result<Rat> {
    let m = args.len();
    let mut total = Rat::zero();
    for i in 0..m {
        for j in (i + 1)..m {
            let bracket = args[i].bracket(&args[j])?;
            let mut rest = Vec::with_capacity(m - 1);
            rest.push(bracket);
            for (t, a) in args.iter().enumerate() {
                if t != i && t != j {
                    rest.push(a.clone());
                }
            }
            // (-1)^{(i+1)+(j+1)} = (-1)^{i+j}
            let sign = if (i + j) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            total += phi(&rest)? * sign;
        }
    }
    Ok(total)
}

/// The cube moment of quadratic arguments through the engine (no
/// determinant; cube weight integral). Diagonal values give the A-roof
/// components: `moment_m(x, .., x) = m! Ahat_m(x)`.
pub fn h_moment(engine: &Engine, args: &[SpElement<Rat>]) -> Result<Rat> {
    let polys: Vec<Poly> = args.iter().map(|a| a.poly().clone()).collect();
    engine.eval_moment(&polys)
}

// ---------------------------------------------------------------------------
// Distinguished tuples and the comparison report
// ---------------------------------------------------------------------------

/// Elements of the distinguished Lie subalgebra on which the comparison is
/// performed, in one of the three normal forms.
#[derive(Clone, Debug)]
pub enum WnrElement {
    /// `p_alpha ⊗ id`
    PUnit { alpha: usize },
    /// `p_alpha q_beta q_gamma ⊗ id`
    Cubic {
        alpha: usize,
        beta: usize,
        gamma: usize,
    },
    /// `q_alpha ⊗ M`
    QMatrix { alpha: usize, m: RMat },
}

impl WnrElement {
    pub fn to_mat(&self, n: usize, r: usize) -> Result<Mat> {
        match self {
            WnrElement::PUnit { alpha } => Ok(Mat::scalar_poly(Poly::p(n, *alpha)?, r)),
            WnrElement::Cubic { alpha, beta, gamma } => {
                let poly = Poly::p(n, *alpha)?
                    .mul(&Poly::q(n, *beta)?)?
                    .mul(&Poly::q(n, *gamma)?)?;
                Ok(Mat::scalar_poly(poly, r))
            }
            WnrElement::QMatrix { alpha, m } => {
                if m.size() != r {
                    return Err(Error::SizeMismatch {
                        expected: r,
                        got: m.size(),
                    });
                }
                let q = Poly::q(n, *alpha)?;
                let mut out = Mat::zero(n, r);
                for i in 0..r {
                    for j in 0..r {
                        out.set(i, j, q.scale(&m[(i, j)]));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Exact comparison of the evaluated cocycle component against the
/// Chern–Weil value on one tuple.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub lhs: String,
    pub rhs: String,
    /// `Some(1)` when lhs = rhs, `Some(-1)` when lhs = -rhs (nonzero),
    /// `None` when both vanish; absent match is an error state reported by
    /// `equal_up_to_sign = false`.
    pub sign: Option<i8>,
    pub equal_up_to_sign: bool,
}

/// Compare `ev_1` of the degree-`2k` cocycle component with the Chern–Weil
/// cochain of the degree-`k` invariant polynomial on a tuple of `2k`
/// distinguished elements.
pub fn compare_classes(
    family: &crate::cocycle::TauFamily,
    k: usize,
    tuple: &[WnrElement],
) -> Result<ComparisonReport> {
    let n = family.n();
    let r = family.r();
    if tuple.len() != 2 * k {
        return Err(Error::ArityMismatch {
            expected: 2 * k,
            got: tuple.len(),
        });
    }
    let mats: Vec<Mat> = tuple
        .iter()
        .map(|w| w.to_mat(n, r))
        .collect::<Result<_>>()?;
    let lhs = if k == 0 {
        ev_one_empty(family.component(0), n, r)?
    } else {
        ev_one(family.component(k), &mats)?
    };
    let series = InvariantPolySeries::ahat_chern(k.max(1));
    let rhs = if k == 0 {
        int::<Rat>(r as i64)
    } else {
        chern_weil_chi(&series, &mats)?
    };
    let (sign, equal) = if lhs.is_zero() && rhs.is_zero() {
        (None, true)
    } else if lhs == rhs {
        (Some(1), true)
    } else if lhs == -rhs.clone() {
        (Some(-1), true)
    } else {
        (None, false)
    };
    Ok(ComparisonReport {
        n,
        r,
        k,
        lhs: rat_string(&lhs),
        rhs: rat_string(&rhs),
        sign,
        equal_up_to_sign: equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{EvalConfig, TauFamily};
    use crate::weyl::{gl_embed, sp_basis};

    fn p(n: usize, j: usize) -> Poly {
        Poly::p(n, j).unwrap()
    }
    fn q(n: usize, j: usize) -> Poly {
        Poly::q(n, j).unwrap()
    }

    #[test]
    fn projection_examples() {
        // p1 q1 ⊗ id -> sp part p1 q1, gl part 0
        let v = Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap(), 2);
        let h = pr_projection(&v);
        assert_eq!(h.sp().poly(), &p(1, 1).mul(&q(1, 1)).unwrap());
        assert!(h.gl().is_zero());
        // q1 ⊗ M -> 0
        let m = RMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(3, 1)]])
            .unwrap();
        let v2 = WnrElement::QMatrix { alpha: 1, m: m.clone() }
            .to_mat(1, 2)
            .unwrap();
        assert!(pr_projection(&v2).is_zero());
        // cubic -> 0
        let v3 = Mat::scalar_poly(
            p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap(),
            2,
        );
        assert!(pr_projection(&v3).is_zero());
        // fixes the subalgebra and is idempotent
        let h0 = HElement::new(
            1,
            2,
            SpElement::new(p(1, 1).mul(&p(1, 1)).unwrap()).unwrap(),
            m,
        )
        .unwrap();
        let back = pr_projection(&h0.embed());
        assert_eq!(back, h0);
        let twice = pr_projection(&back.embed());
        assert_eq!(twice, h0);
    }

    #[test]
    fn projection_is_equivariant() {
        // pr([h, g]) = [h, pr g] on samples
        let m = RMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-2, 1), rat(1, 3)]])
            .unwrap();
        let hs = [
            HElement::from_sp(SpElement::new(p(1, 1).mul(&q(1, 1)).unwrap()).unwrap(), 2),
            HElement::from_gl(1, m),
        ];
        let gs = [
            Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap(), 2),
            Mat::from_poly_unit(q(1, 1), 2, 0, 1),
            Mat::from_poly_unit(p(1, 1).mul(&p(1, 1)).unwrap(), 2, 1, 0),
        ];
        for h in &hs {
            for g in &gs {
                let lhs = pr_projection(&h.embed().bracket(g).unwrap());
                let rhs = h.bracket(&pr_projection(g)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn curvature_examples() {
        // both arguments in h: zero
        let h1 = HElement::from_sp(SpElement::new(p(1, 1).mul(&q(1, 1)).unwrap()).unwrap(), 1);
        let h2 = HElement::from_sp(SpElement::new(q(1, 1).mul(&q(1, 1)).unwrap()).unwrap(), 1);
        assert!(curvature(&h1.embed(), &h2.embed()).unwrap().is_zero());
        // u = p q^2, v = p: curvature has sp part 2 p q
        let u = Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap(), 1);
        let v = Mat::scalar_poly(p(1, 1), 1);
        let c = curvature(&u, &v).unwrap();
        assert_eq!(
            c.sp().poly(),
            &p(1, 1).mul(&q(1, 1)).unwrap().scale(&rat(2, 1))
        );
        assert!(c.gl().is_zero());
        // antisymmetry
        let c2 = curvature(&v, &u).unwrap();
        assert!(c.add(&c2).unwrap().is_zero());
    }

    #[test]
    fn polarization_examples() {
        // polarized Chern character at one argument is the matrix trace
        let m = RMatrix::from_rows(vec![vec![rat(2, 1), rat(5, 1)], vec![rat(0, 1), rat(-1, 1)]])
            .unwrap();
        let h = HElement::from_gl(1, m.clone());
        let ch = InvariantPolySeries::chern_character(4);
        assert_eq!(ch.polarize_eval(std::slice::from_ref(&h)).unwrap(), m.trace());
        // diagonal identity: polarize(P, k, (h,..,h)) = k! * P_k(h)
        let series = InvariantPolySeries::ahat_chern(4);
        for k in 1..=3usize {
            let args = vec![h.clone(); k];
            let lhs = series.polarize_eval(&args).unwrap();
            let rhs = series.component_on_diagonal(&h, k).unwrap() * factorial::<Rat>(k);
            assert_eq!(lhs, rhs, "k = {k}");
        }
        // A-roof of a nilpotent sp matrix with vanishing even power traces
        let nil = RMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]])
            .unwrap();
        let hx = HElement::from_sp(gl_embed(&nil, 2).unwrap(), 1);
        let ahat = InvariantPolySeries::ahat(4);
        for k in 1..=3usize {
            assert_eq!(
                ahat.component_on_diagonal(&hx, k).unwrap(),
                rat(0, 1),
                "nilpotent component {k}"
            );
            assert_eq!(ahat.polarize_eval(&vec![hx.clone(); k]).unwrap(), rat(0, 1));
        }
        assert_eq!(ahat.component_on_diagonal(&hx, 0).unwrap(), rat(1, 1));
    }

    #[test]
    fn polarize_is_symmetric() {
        let m1 = RMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]])
            .unwrap();
        let m2 = RMatrix::from_rows(vec![vec![rat(0, 1), rat(-1, 1)], vec![rat(5, 2), rat(1, 1)]])
            .unwrap();
        let h1 = HElement::new(
            1,
            2,
            SpElement::new(p(1, 1).mul(&p(1, 1)).unwrap()).unwrap(),
            m1,
        )
        .unwrap();
        let h2 = HElement::new(
            1,
            2,
            SpElement::new(p(1, 1).mul(&q(1, 1)).unwrap()).unwrap(),
            m2,
        )
        .unwrap();
        let series = InvariantPolySeries::ahat_chern(4);
        let a = series.polarize_eval(&[h1.clone(), h2.clone()]).unwrap();
        let b = series.polarize_eval(&[h2, h1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sp_ahat_equals_gl_ahat_squared() {
        // embedded gl matrices: sp-series = (halved gl-series)^2
        let xs = [
            RMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(-1, 2)]])
                .unwrap(),
            RMatrix::from_rows(vec![vec![rat(2, 3), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]])
                .unwrap(),
        ];
        for x in &xs {
            let sp_mat = quad_to_sp_matrix(&gl_embed(x, 2).unwrap()).unwrap();
            let lhs = ahat_diagonal_series(&sp_mat, 6);
            let gl = ahat_gl_diagonal_series(x, 6);
            assert_eq!(lhs, gl.mul(&gl));
        }
    }

    #[test]
    fn chi_vanishes_on_subalgebra_arguments() {
        let series = InvariantPolySeries::ahat_chern(2);
        let h = Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap(), 1);
        let v = Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap(), 1);
        assert_eq!(chern_weil_chi(&series, &[h, v]).unwrap(), rat(0, 1));
    }

    #[test]
    fn chi_examples() {
        let series = InvariantPolySeries::ahat_chern(2);
        // (p q^2, p): curvature is 2 p q, pure sp: only the Chern constant
        // pairs with it and the A-roof has no degree-1 part, so the value
        // vanishes
        let u = Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap().mul(&q(1, 1)).unwrap(), 1);
        let v = Mat::scalar_poly(p(1, 1), 1);
        assert_eq!(chern_weil_chi(&series, &[u, v]).unwrap(), rat(0, 1));
        // (q ⊗ 1, p): curvature is the constant matrix 1, value tr(1) = 1
        let one_m = RMatrix::identity(1);
        let u2 = WnrElement::QMatrix { alpha: 1, m: one_m }.to_mat(1, 1).unwrap();
        let v2 = Mat::scalar_poly(p(1, 1), 1);
        assert_eq!(chern_weil_chi(&series, &[u2, v2]).unwrap(), rat(1, 1));
    }

    #[test]
    fn ev_one_properties() {
        use crate::cochain::{connes_b, Cochain};
        use crate::MatChain;
        // ev_1 of B phi vanishes: the shuffled words start with the unit
        let phi: MatCochain = Cochain::from_word_fn(3, |w: &[Mat]| {
            let mut acc = rat(1, 1);
            for (i, e) in w.iter().enumerate() {
                let probe = e.get(0, 0).coeff(&crate::mono::Monomial(vec![1, 0]))
                    + e.get(i % e.r(), 0).coeff(&crate::mono::Monomial(vec![0, 1]));
                acc *= probe + rat(i as i64, 7);
            }
            Ok(acc)
        });
        let b_phi = connes_b(&phi).unwrap();
        let args = [
            Mat::scalar_poly(p(1, 1), 1),
            Mat::scalar_poly(q(1, 1), 1),
        ];
        assert_eq!(ev_one(&b_phi, &args).unwrap(), rat(0, 1));
        // repeated argument gives zero by antisymmetry
        let psi: MatCochain = Cochain::from_word_fn(2, |_w: &[Mat]| Ok(rat(1, 1)));
        let rep = [
            Mat::scalar_poly(p(1, 1), 1),
            Mat::scalar_poly(p(1, 1), 1),
        ];
        assert_eq!(ev_one(&psi, &rep).unwrap(), rat(0, 1));
        let _: &MatChain;
    }

    #[test]
    fn ce_differential_basics() {
        // 1-cochain: (d phi)(x, y) = -phi([x, y])
        let phi: LieCochain = Arc::new(|args: &[Mat]| {
            Ok(args[0].trace().eval_zero() + args[0].get(0, 0).coeff(&crate::mono::Monomial(vec![1, 1])))
        });
        let x = Mat::scalar_poly(p(1, 1), 1);
        let y = Mat::scalar_poly(q(1, 1), 1);
        let d_val = ce_differential(&phi, &[x.clone(), y.clone()]).unwrap();
        let direct = -phi(&[x.bracket(&y).unwrap()]).unwrap();
        assert_eq!(d_val, direct);
    }

    #[test]
    fn ce_differential_squares_to_zero() {
        let phi: LieCochain = Arc::new(|args: &[Mat]| {
            Ok(args[0].trace().eval_zero()
                + args[0].get(0, 0).coeff(&crate::mono::Monomial(vec![1, 1])))
        });
        let dphi: LieCochain = {
            let phi = phi.clone();
            Arc::new(move |args: &[Mat]| ce_differential(&phi, args))
        };
        let xs = [
            Mat::scalar_poly(p(1, 1), 1),
            Mat::scalar_poly(q(1, 1), 1),
            Mat::scalar_poly(p(1, 1).mul(&q(1, 1)).unwrap(), 1),
        ];
        assert_eq!(ce_differential(&dphi, &xs).unwrap(), rat(0, 1));
    }

    #[test]
    fn moment_small_values() {
        let engine = Engine::new(1, EvalConfig::default());
        // empty product: 1
        assert_eq!(h_moment(&engine, &[]).unwrap(), rat(1, 1));
        // single quadratic: evaluation kills positive degree
        for h in sp_basis::<Rat>(1) {
            assert_eq!(h_moment(&engine, &[h]).unwrap(), rat(0, 1));
        }
        // embedded 1x1 gl matrix a: moment_2 = 2! * Ahat_2 = -a^2/12
        let a = RMatrix::from_rows(vec![vec![rat(3, 2)]]).unwrap();
        let x = gl_embed(&a, 1).unwrap();
        let m2 = h_moment(&engine, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(m2, rat(-3, 16)); // -(3/2)^2/12
        let series = InvariantPolySeries::ahat(2);
        let h = HElement::from_sp(x, 1);
        assert_eq!(
            m2,
            series.component_on_diagonal(&h, 2).unwrap() * factorial::<Rat>(2)
        );
    }

    #[test]
    fn comparison_first_cases() {
        // (n, r, k) = (1, 1, 0): |tau_0(1)| = r with the empirically
        // resolved sign
        let family = TauFamily::build(1, 1, EvalConfig::default()).unwrap();
        let rep = compare_classes(&family, 0, &[]).unwrap();
        assert!(rep.equal_up_to_sign, "{rep:?}");
        // (1,1,1) with the cubic tuple: both sides vanish
        let rep2 = compare_classes(
            &family,
            1,
            &[
                WnrElement::Cubic {
                    alpha: 1,
                    beta: 1,
                    gamma: 1,
                },
                WnrElement::PUnit { alpha: 1 },
            ],
        )
        .unwrap();
        assert!(rep2.equal_up_to_sign, "{rep2:?}");
        // (1,1,1) with the matrix tuple: both sides nonzero
        let rep3 = compare_classes(
            &family,
            1,
            &[
                WnrElement::QMatrix {
                    alpha: 1,
                    m: RMatrix::identity(1),
                },
                WnrElement::PUnit { alpha: 1 },
            ],
        )
        .unwrap();
        assert!(rep3.equal_up_to_sign, "{rep3:?}");
        assert!(rep3.sign.is_some());
    }
}
