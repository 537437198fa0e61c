//! The basic Hochschild cocycle of the Weyl algebra and its relatives.
//!
//! The degree-`2n` cocycle is evaluation-at-zero composed with the
//! determinant of first derivatives (one per tensor slot `1..2n`) and the
//! integral over the ordered simplex of the exponential of Bernoulli-weighted
//! contraction operators between slot pairs.
//!
//! Evaluation at zero makes the exponential a finite sum: a term survives iff
//! the derivatives exactly exhaust every slot's degree. Plans are therefore
//! enumerated by per-slot degree budgets (branch and bound over the edge
//! multiplicities between slot pairs), never by expanding and filtering.

use crate::bernoulli::{cube_integrate, region_integrate, BFactor, Region, UPoly};
use crate::cochain::{self, Cochain};
use crate::mono::Monomial;
use crate::perm::Perm;
use crate::scalar::rat;
use crate::{Error, Mat, MatChain, MatCochain, Poly, PolyChain, PolyCochain, Rat, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

/// Evaluation limits. `plan_cap` bounds the number of surviving plans per
/// word evaluation; `degree_cap` bounds entry degrees up front.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    pub degree_cap: usize,
    pub plan_cap: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            degree_cap: crate::weyl::DEGREE_CAP,
            plan_cap: 50_000_000,
        }
    }
}

/// Integration domain of the weight integral.
#[derive(Clone, Debug)]
pub enum Domain {
    /// The ordered simplex `0 < u_1 < .. < u_k < 1`.
    Simplex,
    /// A permuted ordering chamber, with the periodic Bernoulli weight.
    Chamber(Region),
    /// The full cube `[0,1]^k` (sum over all chambers).
    Cube,
}

impl Domain {
    fn cache_key(&self) -> Vec<usize> {
        match self {
            Domain::Simplex => Vec::new(),
            Domain::Chamber(r) => r.ascending().to_vec(),
            Domain::Cube => vec![usize::MAX],
        }
    }
}

/// One surviving term of the weight expansion for a monomial word: the
/// derivative permutation, the total edge power per slot pair (the integrand
/// is the product of first-Bernoulli factors with these powers), and the
/// exact scalar coefficient (permutation sign, channel signs, inverse
/// multiplicity factorials, slot factorials and entry coefficients).
#[derive(Clone, Debug)]
pub struct DerivPlan {
    pub sigma: Perm,
    pub edge_powers: BTreeMap<(usize, usize), u32>,
    pub coeff: Rat,
}

type IntegralKey = (Vec<usize>, Vec<(usize, usize, u32)>);

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalStats {
    pub plans: u64,
    pub integrals: u64,
}

/// Per-dimension evaluation engine with an exact-integral cache.
pub struct Engine {
    n: usize,
    cfg: EvalConfig,
    integral_cache: Mutex<HashMap<IntegralKey, Rat>>,
    plans_seen: AtomicU64,
    integrals_computed: AtomicU64,
}

impl Engine {
    pub fn new(n: usize, cfg: EvalConfig) -> Self {
        Engine {
            n,
            cfg,
            integral_cache: Mutex::new(HashMap::new()),
            plans_seen: AtomicU64::new(0),
            integrals_computed: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> EvalConfig {
        self.cfg
    }

    pub fn stats(&self) -> EvalStats {
        EvalStats {
            plans: self.plans_seen.load(Ordering::Relaxed),
            integrals: self.integrals_computed.load(Ordering::Relaxed),
        }
    }

    /// Evaluate the degree-`2n` cocycle (or its permuted-chamber variant) on
    /// a scalar chain.
    pub fn eval_chain(&self, chain: &PolyChain, domain: &Domain) -> Result<Rat> {
        if chain.degree() != 2 * self.n {
            return Err(Error::DegreeMismatch {
                expected: 2 * self.n,
                got: chain.degree(),
            });
        }
        let mut total = Rat::zero();
        for (word, coeff) in chain.terms() {
            total += self.eval_poly_word(word, true, domain)? * coeff;
        }
        Ok(total)
    }

    /// Evaluate on a matrix chain: sum over closed index cycles of the
    /// scalar cocycle applied to the entry polynomials.
    pub fn eval_matrix_chain(&self, chain: &MatChain, domain: &Domain) -> Result<Rat> {
        if chain.degree() != 2 * self.n {
            return Err(Error::DegreeMismatch {
                expected: 2 * self.n,
                got: chain.degree(),
            });
        }
        // Collect the scalar words of all closing index cycles first; shared
        // words merge or cancel before any integration happens.
        let mut scalar = PolyChain::zero(chain.degree());
        for (word, coeff) in chain.terms() {
            let cells: Vec<(usize, usize, &Poly)> = word
                .iter()
                .map(|m| {
                    atom_cell(m)
                        .ok_or_else(|| Error::Invalid("matrix chain words must be atomic".into()))
                })
                .collect::<Result<_>>()?;
            let closes = cells.windows(2).all(|w| w[0].1 == w[1].0)
                && cells.last().unwrap().1 == cells.first().unwrap().0;
            if !closes {
                continue;
            }
            scalar.add_word(coeff.clone(), cells.iter().map(|c| c.2.clone()).collect())?;
        }
        let mut total = Rat::zero();
        for (word, coeff) in scalar.terms() {
            total += self.eval_poly_word(word, true, domain)? * coeff;
        }
        Ok(total)
    }

    /// Cube-averaged weight moment without the determinant factor: the word
    /// `(1, a_1, .., a_m)` integrated over `[0,1]^m`. Symmetric in the
    /// `a_i`; this is the independent oracle behind the A-roof components.
    pub fn eval_moment(&self, args: &[Poly]) -> Result<Rat> {
        let mut word = vec![Poly::one(self.n)];
        word.extend_from_slice(args);
        self.eval_poly_word(&word, false, &Domain::Cube)
    }

    /// Evaluate one word with polynomial entries: decompose into monomial
    /// words and run the plan enumeration on each.
    fn eval_poly_word(&self, word: &[Poly], apply_pi: bool, domain: &Domain) -> Result<Rat> {
        for e in word {
            if e.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: e.n(),
                });
            }
            if e.total_degree() > self.cfg.degree_cap {
                return Err(Error::DegreeCapExceeded {
                    degree: e.total_degree(),
                    cap: self.cfg.degree_cap,
                });
            }
        }
        let mut total = Rat::zero();
        for (c, monos) in monomial_words(word) {
            total += self.eval_mono_word(&monos, apply_pi, domain)? * c;
        }
        Ok(total)
    }

    /// Core evaluation of a monomial word.
    fn eval_mono_word(&self, monos: &[Monomial], apply_pi: bool, domain: &Domain) -> Result<Rat> {
        let slots = monos.len();
        let k = slots - 1; // number of integration variables
        let twon = 2 * self.n;
        // slot factorials, common to every plan
        let mut slot_factor = Rat::one();
        for m in monos {
            slot_factor *= m.exp_factorial::<Rat>();
        }
        let mut demands: Vec<Vec<u16>> = monos.iter().map(|m| m.0.clone()).collect();
        let mut plan_count: u64 = 0;
        let mut acc = Rat::zero();
        if apply_pi {
            if slots != twon + 1 {
                return Err(Error::WordLength {
                    expected: twon + 1,
                    got: slots,
                });
            }
            for sigma in Perm::all(twon) {
                let mut applied = 0;
                let mut ok = true;
                for i in 0..twon {
                    let v = sigma.apply(i);
                    if demands[i + 1][v] == 0 {
                        ok = false;
                        break;
                    }
                    demands[i + 1][v] -= 1;
                    applied += 1;
                }
                if ok {
                    let sign = rat(sigma.sign(), 1);
                    self.plan_sum(k, &mut demands, domain, sign, &mut acc, &mut plan_count)?;
                }
                for i in 0..applied {
                    demands[i + 1][sigma.apply(i)] += 1;
                }
            }
        } else {
            self.plan_sum(k, &mut demands, domain, Rat::one(), &mut acc, &mut plan_count)?;
        }
        self.plans_seen.fetch_add(plan_count, Ordering::Relaxed);
        Ok(acc * slot_factor)
    }

    /// Sum over all edge assignments exactly exhausting the demands.
    fn plan_sum(
        &self,
        k: usize,
        demands: &mut [Vec<u16>],
        domain: &Domain,
        base_coeff: Rat,
        acc: &mut Rat,
        plan_count: &mut u64,
    ) -> Result<()> {
        // each edge consumes one p_c and one q_c, so the totals must balance
        for c in 0..self.n {
            let p_total: u32 = demands.iter().map(|d| d[2 * c] as u32).sum();
            let q_total: u32 = demands.iter().map(|d| d[2 * c + 1] as u32).sum();
            if p_total != q_total {
                return Ok(());
            }
        }
        let pairs = pair_list(k);
        let mut edge_powers = vec![0u32; pairs.len()];
        let mut plans = Vec::new();
        enumerate_plans(
            self.n,
            &pairs,
            0,
            0,
            demands,
            &mut edge_powers,
            base_coeff,
            &mut plans,
        );
        for (coeff, powers) in plans {
            *plan_count += 1;
            if *plan_count > self.cfg.plan_cap {
                return Err(Error::PlanCapExceeded {
                    cap: self.cfg.plan_cap,
                });
            }
            let integral = self.integral(k, &pairs, &powers, domain)?;
            *acc += coeff * integral;
        }
        Ok(())
    }

    fn integral(
        &self,
        k: usize,
        pairs: &[(usize, usize)],
        edge_powers: &[u32],
        domain: &Domain,
    ) -> Result<Rat> {
        let edges: Vec<(usize, usize, u32)> = pairs
            .iter()
            .zip(edge_powers)
            .filter(|(_, &m)| m > 0)
            .map(|(&(i, j), &m)| (i, j, m))
            .collect();
        let key = (domain.cache_key(), edges.clone());
        if let Some(v) = self.integral_cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let factors: Vec<BFactor> = edges
            .iter()
            .map(|&(i, j, m)| BFactor { i, j, power: m })
            .collect();
        let value = match domain {
            Domain::Simplex => {
                region_integrate(&factors, &UPoly::<Rat>::one(k), &Region::standard(k))?
            }
            Domain::Chamber(r) => region_integrate(&factors, &UPoly::<Rat>::one(k), r)?,
            Domain::Cube => cube_integrate(&factors, k)?,
        };
        self.integrals_computed.fetch_add(1, Ordering::Relaxed);
        self.integral_cache
            .lock()
            .unwrap()
            .insert(key, value.clone());
        Ok(value)
    }

    /// Enumerate the surviving plans of a word, for inspection and tests.
    /// With `apply_pi` the word length must be `2n + 1`.
    pub fn expansion_plans(&self, word: &[Poly], apply_pi: bool) -> Result<Vec<DerivPlan>> {
        let slots = word.len();
        let k = slots - 1;
        let twon = 2 * self.n;
        if apply_pi && slots != twon + 1 {
            return Err(Error::WordLength {
                expected: twon + 1,
                got: slots,
            });
        }
        let pairs = pair_list(k);
        let mut out = Vec::new();
        for (c, monos) in monomial_words(word) {
            let mut slot_factor = c;
            for m in &monos {
                slot_factor *= m.exp_factorial::<Rat>();
            }
            let sigmas = if apply_pi {
                Perm::all(twon)
            } else {
                vec![Perm::identity(0)]
            };
            for sigma in sigmas {
                let mut demands: Vec<Vec<u16>> = monos.iter().map(|m| m.0.clone()).collect();
                if apply_pi {
                    let mut ok = true;
                    for i in 0..twon {
                        let v = sigma.apply(i);
                        if demands[i + 1][v] == 0 {
                            ok = false;
                            break;
                        }
                        demands[i + 1][v] -= 1;
                    }
                    if !ok {
                        continue;
                    }
                }
                let balanced = (0..self.n).all(|cc| {
                    let pt: u32 = demands.iter().map(|d| d[2 * cc] as u32).sum();
                    let qt: u32 = demands.iter().map(|d| d[2 * cc + 1] as u32).sum();
                    pt == qt
                });
                if !balanced {
                    continue;
                }
                let base = slot_factor.clone() * rat(sigma.sign(), 1);
                let mut edge_powers = vec![0u32; pairs.len()];
                let mut plans = Vec::new();
                enumerate_plans(
                    self.n,
                    &pairs,
                    0,
                    0,
                    &mut demands,
                    &mut edge_powers,
                    base,
                    &mut plans,
                );
                for (coeff, powers) in plans {
                    out.push(DerivPlan {
                        sigma: sigma.clone(),
                        edge_powers: pairs
                            .iter()
                            .zip(&powers)
                            .filter(|(_, &m)| m > 0)
                            .map(|(&p, &m)| (p, m))
                            .collect(),
                        coeff,
                    });
                }
            }
        }
        Ok(out)
    }
}

fn pair_list(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| ((i + 1)..=k).map(move |j| (i, j)))
        .collect()
}

/// Expand a word of polynomials into monomial words with coefficients.
fn monomial_words(word: &[Poly]) -> Vec<(Rat, Vec<Monomial>)> {
    let mut stack: Vec<(Rat, Vec<Monomial>)> = vec![(Rat::one(), Vec::new())];
    for entry in word {
        let mut next = Vec::with_capacity(stack.len() * entry.num_terms().max(1));
        for (c, partial) in &stack {
            for (m, mc) in entry.terms() {
                let mut p2 = partial.clone();
                p2.push(m.clone());
                next.push((c.clone() * mc, p2));
            }
        }
        stack = next;
    }
    stack.retain(|(_, w)| w.len() == word.len());
    stack
}

/// Depth-first enumeration of channel multiplicities over slot pairs.
/// Completed assignments (demands exactly exhausted) are pushed with their
/// accumulated coefficient and per-pair total powers.
#[allow(clippy::too_many_arguments)]
fn enumerate_plans(
    n: usize,
    pairs: &[(usize, usize)],
    pair_idx: usize,
    channel_idx: usize,
    demands: &mut [Vec<u16>],
    edge_powers: &mut Vec<u32>,
    coeff: Rat,
    out: &mut Vec<(Rat, Vec<u32>)>,
) {
    if pair_idx == pairs.len() {
        if demands.iter().all(|d| d.iter().all(|&e| e == 0)) {
            out.push((coeff, edge_powers.clone()));
        }
        return;
    }
    if channel_idx == 2 * n {
        // moving past all pairs with first index < next_i: their slots can
        // no longer receive derivatives
        let next = pair_idx + 1;
        if next < pairs.len() {
            let (ni, _) = pairs[next];
            if demands
                .iter()
                .take(ni)
                .any(|d| d.iter().any(|&e| e != 0))
            {
                return;
            }
        }
        enumerate_plans(n, pairs, next, 0, demands, edge_powers, coeff, out);
        return;
    }
    let (i, j) = pairs[pair_idx];
    let c = channel_idx / 2;
    let orient = channel_idx % 2;
    // orientation 0: p_c-derivative on the later slot j, q_c on slot i,
    // positive sign; orientation 1: swapped, negative sign.
    let (var_j, var_i, sign) = if orient == 0 {
        (2 * c, 2 * c + 1, 1i64)
    } else {
        (2 * c + 1, 2 * c, -1i64)
    };
    let max_m = demands[j][var_j].min(demands[i][var_i]);
    enumerate_plans(
        n,
        pairs,
        pair_idx,
        channel_idx + 1,
        demands,
        edge_powers,
        coeff.clone(),
        out,
    );
    let mut factor = Rat::one();
    for m in 1..=max_m {
        demands[j][var_j] -= 1;
        demands[i][var_i] -= 1;
        edge_powers[pair_idx] += 1;
        factor *= rat(sign, m as i64);
        enumerate_plans(
            n,
            pairs,
            pair_idx,
            channel_idx + 1,
            demands,
            edge_powers,
            coeff.clone() * factor.clone(),
            out,
        );
    }
    demands[j][var_j] += max_m;
    demands[i][var_i] += max_m;
    edge_powers[pair_idx] -= max_m as u32;
}

/// The plain determinant of first derivatives applied to a word: the signed
/// sum over permutations of derivative-applied words (slot 0 untouched).
/// Independent of the plan engine; used as a cross-check.
pub fn pi_apply(n: usize, word: &[Poly]) -> Result<Vec<(Rat, Vec<Poly>)>> {
    let twon = 2 * n;
    if word.len() != twon + 1 {
        return Err(Error::WordLength {
            expected: twon + 1,
            got: word.len(),
        });
    }
    let mut out = Vec::new();
    'sigma: for sigma in Perm::all(twon) {
        let mut w = Vec::with_capacity(word.len());
        w.push(word[0].clone());
        for i in 0..twon {
            let d = word[i + 1].partial(sigma.apply(i) + 1)?;
            if d.is_zero() {
                continue 'sigma;
            }
            w.push(d);
        }
        out.push((rat(sigma.sign(), 1), w));
    }
    Ok(out)
}

fn atom_cell(m: &Mat) -> Option<(usize, usize, &Poly)> {
    let mut found: Option<(usize, usize, &Poly)> = None;
    for i in 0..m.r() {
        for j in 0..m.r() {
            let e = m.get(i, j);
            if !e.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, j, e));
            }
        }
    }
    found
}

// ---------------------------------------------------------------------------
// Cochain handles and families
// ---------------------------------------------------------------------------

/// The degree-`2n` cocycle as a cochain handle on the scalar complex.
pub fn tau_cochain(engine: Arc<Engine>) -> PolyCochain {
    let n = engine.n();
    Cochain::from_fn(2 * n, move |chain: &PolyChain| {
        engine.eval_chain(chain, &Domain::Simplex)
    })
}

/// The permuted-chamber variant for a permutation of `{1..2n}`.
pub fn tau_sigma_cochain(engine: Arc<Engine>, sigma: &Perm) -> PolyCochain {
    let n = engine.n();
    let region = Region::from_sigma(sigma);
    Cochain::from_fn(2 * n, move |chain: &PolyChain| {
        engine.eval_chain(chain, &Domain::Chamber(region.clone()))
    })
}

/// The degree-`2n` cocycle on the matrix complex.
pub fn tau_matrix_cochain(engine: Arc<Engine>) -> MatCochain {
    let n = engine.n();
    Cochain::from_fn(2 * n, move |chain: &MatChain| {
        engine.eval_matrix_chain(chain, &Domain::Simplex)
    })
}

/// The lowered components `tau_{2k} = (1/(n-k)!) (-iota_omega)^{n-k}
/// tau_{2n}` for `k = 0..n`, over `A_2n ⊗ gl_r`. The cyclic cochain is the
/// polynomial in the degree-2 formal variable with the degree-`2k` component
/// in degree `n-k` (coefficient module taken at `w = 1`), so the cyclic
/// cocycle condition is the componentwise statement
/// `d tau_{2k} + B tau_{2k+2} = 0` together with `d tau_{2n} = 0`.
pub struct TauFamily {
    n: usize,
    r: usize,
    components: Vec<MatCochain>,
}

impl TauFamily {
    /// Build the family (use `r = 1` for the scalar algebra embedded as 1x1
    /// matrices).
    pub fn build(n: usize, r: usize, cfg: EvalConfig) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::Invalid("need n >= 1 and r >= 1".into()));
        }
        Self::build_with_engine(Arc::new(Engine::new(n, cfg)), r)
    }

    /// Build the family over a shared engine (keeps evaluation statistics
    /// and the integral cache accessible to the caller).
    pub fn build_with_engine(engine: Arc<Engine>, r: usize) -> Result<Self> {
        let n = engine.n();
        if n == 0 || r == 0 {
            return Err(Error::Invalid("need n >= 1 and r >= 1".into()));
        }
        let pairs = cochain::omega_pairs_matrix::<Rat>(n, r);
        let mut components = vec![tau_matrix_cochain(engine)];
        for step in 1..=n {
            // tau_{2k} = -iota_omega(tau_{2(k+1)}) / (n - k), step = n - k
            let prev = components.last().unwrap();
            let next = cochain::iota_omega(prev, &pairs)?.scale(-rat(1, step as i64));
            components.push(next);
        }
        components.reverse(); // index k holds the degree-2k component
        Ok(TauFamily { n, r, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The degree-`2k` component.
    pub fn component(&self, k: usize) -> &MatCochain {
        &self.components[k]
    }

    pub fn top(&self) -> &MatCochain {
        &self.components[self.n]
    }
}

/// Scalar components `tau_{2k}` for `k = 0..n`.
pub fn tau_components(engine: Arc<Engine>) -> Result<Vec<PolyCochain>> {
    let n = engine.n();
    let pairs = cochain::omega_pairs_poly::<Rat>(n);
    let mut components = vec![tau_cochain(engine)];
    for step in 1..=n {
        let prev = components.last().unwrap();
        let next = cochain::iota_omega(prev, &pairs)?.scale(-rat(1, step as i64));
        components.push(next);
    }
    components.reverse();
    Ok(components)
}

/// Evaluate the degree-`2n` cocycle on a chain.
pub fn tau_eval(n: usize, chain: &PolyChain, cfg: EvalConfig) -> Result<Rat> {
    Engine::new(n, cfg).eval_chain(chain, &Domain::Simplex)
}

/// Evaluate the permuted-chamber variant on a chain.
pub fn tau_sigma_eval(n: usize, sigma: &Perm, chain: &PolyChain, cfg: EvalConfig) -> Result<Rat> {
    Engine::new(n, cfg).eval_chain(chain, &Domain::Chamber(Region::from_sigma(sigma)))
}

/// Evaluate the matrix extension on a matrix chain.
pub fn tau_matrix_eval(n: usize, r: usize, chain: &MatChain, cfg: EvalConfig) -> Result<Rat> {
    if r == 0 {
        return Err(Error::Invalid("need r >= 1".into()));
    }
    Engine::new(n, cfg).eval_matrix_chain(chain, &Domain::Simplex)
}

/// The canonical pairing cycle `1 ⊗ p_1 ∧ q_1 ∧ .. ∧ p_n ∧ q_n`.
pub fn canonical_cycle(n: usize) -> Result<PolyChain> {
    let mut vs = Vec::with_capacity(2 * n);
    for j in 1..=n {
        vs.push(Poly::p(n, j)?);
        vs.push(Poly::q(n, j)?);
    }
    crate::chain::wedge(Poly::one(n), &vs)
}

/// The pairing value `kappa_n`: the cocycle on the canonical cycle.
pub fn kappa(n: usize, cfg: EvalConfig) -> Result<Rat> {
    let engine = Engine::new(n, cfg);
    engine.eval_chain(&canonical_cycle(n)?, &Domain::Simplex)
}
