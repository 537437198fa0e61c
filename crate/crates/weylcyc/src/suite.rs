//! Seeded, deterministic verification suites and their certificates.
//!
//! Every suite generates its sample chains, cochains and tuples from a
//! recorded seed, evaluates a list of exact identities, and reports one
//! residual per identity (all must be the zero rational). Identical
//! configuration and seed give bitwise identical output.

use crate::chain::{normalize_word, Chain};
use crate::cochain::{
    connes_b, d, iota, iota_omega, lie, lie_omega, omega_pairs_poly, Cochain,
};
use crate::cocycle::{
    kappa, tau_cochain, tau_components, tau_sigma_cochain, Engine, EvalConfig, TauFamily,
};
use crate::liecw::{
    ahat_diagonal_series, ahat_gl_diagonal_series, ce_differential, chern_weil_chi,
    compare_classes, ev_one, ev_one_cochain, h_moment, InvariantPolySeries, LieCochain,
    WnrElement,
};
use crate::linalg::RMatrix;
use crate::mono::Monomial;
use crate::perm::Perm;
use crate::scalar::{factorial, rat, rat_string};
use crate::weyl::{gl_embed, quad_to_sp_matrix, sp_basis, SpElement};
use crate::{Error, Mat, Poly, PolyChain, PolyCochain, RMat, Rat, Result};
use num_traits::{One, Zero};
use serde::Serialize;
use std::sync::Arc;

/// The suite names accepted by the runner.
pub const SUITE_NAMES: &[&str] = &[
    "cocycle",
    "basic",
    "cyclic",
    "lemma-a2",
    "lemma-3-1",
    "lemma-2-2",
    "thm-1-3",
    "hm",
    "trace-id",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    /// Sample count for randomized checks; 0 selects per-suite defaults.
    pub samples: usize,
    /// Largest moment order checked by the `hm` suite.
    pub hm_max: usize,
    pub eval: EvalConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 1,
            r: 2,
            seed: 0x5eed_0001,
            samples: 0,
            hm_max: 3,
            eval: EvalConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// `"0/1"` when every residual vanished, otherwise a sample nonzero
    /// residual.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaReport {
    pub n: usize,
    pub value: String,
    /// the factorial normalization (2n)! of the same pairing
    pub reference_value: String,
    /// reference value divided by computed value
    pub ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignEntry {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub tuples: usize,
    pub nonzero: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub samples: usize,
    pub degree_cap: usize,
    pub plan_cap: u64,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kappa: Vec<KappaReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<SignEntry>,
    pub pass: bool,
    pub suite_hash: String,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (n={}, r={}, seed={:#x}, samples={})\n",
            self.suite, self.n, self.r, self.seed, self.samples
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}/{} cases, residual {}{}\n",
                if c.failures == 0 { "pass" } else { "FAIL" },
                c.name,
                c.cases - c.failures,
                c.cases,
                c.residual,
                c.note
                    .as_ref()
                    .map_or(String::new(), |n| format!(" ({n})")),
            ));
        }
        for k in &self.kappa {
            out.push_str(&format!(
                "  kappa_{} = {} (reference pairing {}, ratio {})\n",
                k.n, k.value, k.reference_value, k.ratio
            ));
        }
        for s in &self.signs {
            out.push_str(&format!(
                "  sign(n={}, r={}, k={}) = {} over {} tuples ({} nonzero)\n",
                s.n,
                s.r,
                s.k,
                s.sign.map_or("indeterminate".into(), |v| format!("{v:+}")),
                s.tuples,
                s.nonzero
            ));
        }
        out.push_str(&format!(
            "  overall: {} (hash {})\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite_hash
        ));
        out
    }
}

// ---------------------------------------------------------------------------
// Deterministic generator
// ---------------------------------------------------------------------------

/// SplitMix64: tiny, stable, seed-reproducible forever.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, m: u64) -> u64 {
        self.next_u64() % m
    }

    /// Small nonzero rational with numerator in `-4..=4` and denominator in
    /// `1..=3`.
    pub fn rat(&mut self) -> Rat {
        let num = (self.below(8) as i64) - 4;
        let num = if num >= 0 { num + 1 } else { num };
        rat(num, 1 + self.below(3) as i64)
    }

    /// Random monomial with total degree in `min_deg..=max_deg`.
    pub fn monomial(&mut self, n: usize, min_deg: usize, max_deg: usize) -> Monomial {
        let deg = min_deg + self.below((max_deg - min_deg + 1) as u64) as usize;
        let mut e = vec![0u16; 2 * n];
        for _ in 0..deg {
            e[self.below(2 * n as u64) as usize] += 1;
        }
        Monomial(e)
    }

    /// Sparse polynomial: one monomial, or two with probability ~30%.
    pub fn poly(&mut self, n: usize, min_deg: usize, max_deg: usize) -> Poly {
        let mut p = Poly::from_monomial(n, self.monomial(n, min_deg, max_deg), self.rat());
        if self.below(10) < 3 {
            let q = Poly::from_monomial(n, self.monomial(n, min_deg, max_deg), self.rat());
            p = p.add(&q).expect("same n");
        }
        p
    }

    /// Denser polynomial: always two monomial terms.
    pub fn poly_dense(&mut self, n: usize, min_deg: usize, max_deg: usize) -> Poly {
        let mut p = Poly::from_monomial(n, self.monomial(n, min_deg, max_deg), self.rat());
        loop {
            let q = Poly::from_monomial(n, self.monomial(n, min_deg, max_deg), self.rat());
            let sum = p.add(&q).expect("same n");
            if !sum.is_zero() {
                p = sum;
                break;
            }
        }
        p
    }

    /// Word with low-degree entries and exactly one two-term entry; the
    /// bounded monomial universe keeps kernel collisions frequent without
    /// blowing up the atom expansion of iterated boundaries.
    pub fn word_low(&mut self, n: usize, len: usize, max_deg: usize) -> Vec<Poly> {
        let dense_slot = self.below(len as u64) as usize;
        let mut w = Vec::with_capacity(len);
        for slot in 0..len {
            let min_deg = usize::from(slot > 0);
            if slot == dense_slot {
                w.push(self.poly_dense(n, min_deg, max_deg));
            } else {
                w.push(Poly::from_monomial(
                    n,
                    self.monomial(n, min_deg, max_deg),
                    self.rat(),
                ));
            }
        }
        w
    }

    /// Random word: slot 0 of degree `0..=max_deg`, later slots nonconstant.
    pub fn word(&mut self, n: usize, len: usize, max_deg: usize) -> Vec<Poly> {
        let mut w = Vec::with_capacity(len);
        w.push(self.poly(n, 0, max_deg));
        for _ in 1..len {
            w.push(self.poly(n, 1, max_deg));
        }
        w
    }

    pub fn gl(&mut self, size: usize) -> RMat {
        let mut m = RMatrix::zero(size);
        for i in 0..size {
            for j in 0..size {
                if self.below(4) < 3 {
                    m[(i, j)] = self.rat();
                }
            }
        }
        m
    }

    pub fn sp(&mut self, n: usize) -> SpElement<Rat> {
        let mut e = vec![0u16; 2 * n];
        e[self.below(2 * n as u64) as usize] += 1;
        e[self.below(2 * n as u64) as usize] += 1;
        let mut p = Poly::from_monomial(n, Monomial(e), self.rat());
        if self.below(2) == 0 {
            let mut e2 = vec![0u16; 2 * n];
            e2[self.below(2 * n as u64) as usize] += 1;
            e2[self.below(2 * n as u64) as usize] += 1;
            p = p
                .add(&Poly::from_monomial(n, Monomial(e2), self.rat()))
                .expect("same n");
        }
        SpElement::new(p).expect("quadratic by construction")
    }

    /// Explicit finite functional: per slot, a weighted sum of coefficient
    /// extractions (nonconstant monomials in slots >= 1, so the functional
    /// is well defined on the normalized complex).
    pub fn functional(&mut self, n: usize, degree: usize) -> PolyCochain {
        let mut kernels: Vec<Vec<(Monomial, Rat)>> = Vec::with_capacity(degree + 1);
        for slot in 0..=degree {
            let count = 2 + self.below(2) as usize;
            let mut ks = Vec::with_capacity(count);
            for _ in 0..count {
                let min_deg = if slot == 0 { 0 } else { 1 };
                ks.push((self.monomial(n, min_deg, 2), self.rat()));
            }
            kernels.push(ks);
        }
        Cochain::from_word_fn(degree, move |w: &[Poly]| {
            let mut acc = Rat::one();
            for (entry, ks) in w.iter().zip(&kernels) {
                let mut probe = Rat::zero();
                for (m, weight) in ks {
                    probe += entry.coeff(m) * weight;
                }
                acc *= probe;
                if acc.is_zero() {
                    break;
                }
            }
            Ok(acc)
        })
    }
}

// ---------------------------------------------------------------------------
// Runner plumbing
// ---------------------------------------------------------------------------

struct Runner {
    checks: Vec<CheckReport>,
    kappa: Vec<KappaReport>,
    signs: Vec<SignEntry>,
    hash: u64,
}

impl Runner {
    fn new() -> Self {
        Runner {
            checks: Vec::new(),
            kappa: Vec::new(),
            signs: Vec::new(),
            hash: 0xcbf2_9ce4_8422_2325, // FNV-1a offset basis
        }
    }

    fn absorb(&mut self, s: &str) {
        for b in s.as_bytes() {
            self.hash ^= *b as u64;
            self.hash = self.hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    /// Record an identity check over exact residuals.
    fn check<I: IntoIterator<Item = Result<Rat>>>(&mut self, name: &str, residuals: I) -> Result<()> {
        let mut cases = 0;
        let mut failures = 0;
        let mut sample = None;
        for v in residuals {
            let v = v?;
            cases += 1;
            self.absorb(&rat_string(&v));
            if !v.is_zero() {
                failures += 1;
                if sample.is_none() {
                    sample = Some(rat_string(&v));
                }
            }
        }
        self.checks.push(CheckReport {
            name: name.to_string(),
            cases,
            failures,
            residual: sample.unwrap_or_else(|| "0/1".to_string()),
            note: None,
        });
        Ok(())
    }

    /// Like `check`, but for two-sided identities: records how many cases
    /// had a nonvanishing right side (non-vacuous evidence).
    fn check_pairs<I: IntoIterator<Item = Result<(Rat, Rat)>>>(
        &mut self,
        name: &str,
        pairs: I,
    ) -> Result<()> {
        let mut cases = 0;
        let mut failures = 0;
        let mut nonzero = 0;
        let mut sample = None;
        for v in pairs {
            let (lhs, rhs) = v?;
            cases += 1;
            if !rhs.is_zero() {
                nonzero += 1;
            }
            let resid = lhs - rhs;
            self.absorb(&rat_string(&resid));
            if !resid.is_zero() {
                failures += 1;
                if sample.is_none() {
                    sample = Some(rat_string(&resid));
                }
            }
        }
        self.checks.push(CheckReport {
            name: name.to_string(),
            cases,
            failures,
            residual: sample.unwrap_or_else(|| "0/1".to_string()),
            note: Some(format!("{nonzero} non-vacuous")),
        });
        Ok(())
    }

    fn check_flag(&mut self, name: &str, cases: usize, failures: usize, note: Option<String>) {
        self.absorb(name);
        self.absorb(&failures.to_string());
        self.checks.push(CheckReport {
            name: name.to_string(),
            cases,
            failures,
            residual: if failures == 0 { "0/1" } else { "1/1" }.to_string(),
            note,
        });
    }

    fn finish(self, suite: &str, cfg: &SuiteConfig, samples: usize) -> SuiteReport {
        let pass = self.checks.iter().all(|c| c.failures == 0);
        SuiteReport {
            suite: suite.to_string(),
            n: cfg.n,
            r: cfg.r,
            seed: cfg.seed,
            samples,
            degree_cap: cfg.eval.degree_cap,
            plan_cap: cfg.eval.plan_cap,
            checks: self.checks,
            kappa: self.kappa,
            signs: self.signs,
            pass,
            suite_hash: format!("{:016x}", self.hash),
        }
    }
}

/// Run one verification suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "cocycle" => suite_cocycle(cfg),
        "basic" => suite_basic(cfg),
        "cyclic" => suite_cyclic(cfg),
        "lemma-a2" => suite_lemma_a2(cfg),
        "lemma-3-1" => suite_lemma_31(cfg),
        "lemma-2-2" => suite_lemma_22(cfg),
        "thm-1-3" => suite_comparison(cfg),
        "hm" => suite_hm(cfg),
        "trace-id" => suite_trace_id(cfg),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn samples_or(cfg: &SuiteConfig, default: usize) -> usize {
    if cfg.samples == 0 {
        default
    } else {
        cfg.samples
    }
}

// ---------------------------------------------------------------------------
// Individual suites
// ---------------------------------------------------------------------------

/// All degree-`<= max_deg` monomials, the nonconstant ones first.
fn monomials_up_to(n: usize, max_deg: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit(2 * n)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &out {
            for v in 0..2 * n {
                let mut e = m.0.clone();
                e[v] += 1;
                next.push(Monomial(e));
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out
}

fn suite_cocycle(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let samples = samples_or(cfg, if n == 1 { 0 } else { 50 });
    let engine = Arc::new(Engine::new(n, cfg.eval));
    let tau = tau_cochain(engine.clone());
    let dtau = d(&tau);
    let mut runner = Runner::new();

    if n == 1 {
        // exhaustive: words of length 4, entry degrees <= 3
        let all = monomials_up_to(1, 3);
        let nonconst: Vec<&Monomial> = all.iter().filter(|m| !m.is_unit()).collect();
        let mut residuals = Vec::new();
        for a0 in &all {
            for a1 in &nonconst {
                for a2 in &nonconst {
                    for a3 in &nonconst {
                        let word = vec![
                            Poly::from_monomial(1, a0.clone(), Rat::one()),
                            Poly::from_monomial(1, (*a1).clone(), Rat::one()),
                            Poly::from_monomial(1, (*a2).clone(), Rat::one()),
                            Poly::from_monomial(1, (*a3).clone(), Rat::one()),
                        ];
                        residuals.push((word, Rat::one()));
                    }
                }
            }
        }
        runner.check(
            "cocycle identity d tau_2 = 0 (exhaustive words, degree <= 3)",
            residuals.into_iter().map(|(w, c)| {
                let chain = Chain::from_word(c, w)?;
                dtau.eval(&chain)
            }),
        )?;
    } else {
        let mut rng = Rng::new(cfg.seed);
        let words: Vec<Vec<Poly>> = (0..samples).map(|_| rng.word(n, 2 * n + 2, 2)).collect();
        runner.check(
            &format!("cocycle identity d tau_{} = 0 (seeded words)", 2 * n),
            words.into_iter().map(|w| {
                let chain = normalize_word(w)?;
                if chain.is_zero() {
                    return Ok(Rat::zero());
                }
                dtau.eval(&chain)
            }),
        )?;
    }

    // invariance under exact symplectic substitutions (includes the
    // GL-type block substitutions)
    let mut rng = Rng::new(cfg.seed ^ 0x9e37);
    let mut residuals = Vec::new();
    let gs = symplectic_samples(&mut rng, n);
    let max_deg = if n == 1 { 3 } else { 2 };
    for g in &gs {
        // exactness of the symplectic condition is asserted here
        assert!(is_symplectic(g, n), "sampled matrix is not symplectic");
        for _ in 0..4 {
            let w = rng.word(n, 2 * n + 1, max_deg);
            let plain = normalize_word(w.clone())?;
            let mut substituted = PolyChain::zero(2 * n);
            substituted.add_word(
                Rat::one(),
                w.iter()
                    .map(|f| f.substitute_linear(g))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let lhs = if substituted.is_zero() {
                Rat::zero()
            } else {
                engine.eval_chain(&substituted, &crate::cocycle::Domain::Simplex)?
            };
            let rhs = if plain.is_zero() {
                Rat::zero()
            } else {
                engine.eval_chain(&plain, &crate::cocycle::Domain::Simplex)?
            };
            residuals.push(Ok(lhs - rhs));
        }
    }
    runner.check("symplectic substitution invariance", residuals)?;

    // pairing values
    for m in 1..=n {
        let value = kappa(m, cfg.eval)?;
        let reference = factorial::<Rat>(2 * m);
        let ratio = reference.clone() / value.clone();
        runner.absorb(&rat_string(&value));
        runner.kappa.push(KappaReport {
            n: m,
            value: rat_string(&value),
            reference_value: rat_string(&reference),
            ratio: rat_string(&ratio),
        });
    }
    let nonzero_failures = runner.kappa.iter().filter(|k| k.value == "0/1").count();
    runner.check_flag(
        "nontriviality pairing kappa_n != 0",
        runner.kappa.len(),
        nonzero_failures,
        Some("the (2n)! reference pairing differs by the simplex volume".into()),
    );
    // consistency across n: the computed kappa is the same constant for all n
    let distinct: std::collections::BTreeSet<&String> =
        runner.kappa.iter().map(|k| &k.value).collect();
    let flag = usize::from(distinct.len() > 1);
    runner.check_flag(
        "pairing convention factor consistent across n",
        runner.kappa.len(),
        flag,
        None,
    );

    Ok(runner.finish("cocycle", cfg, samples))
}

fn suite_basic(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let r = cfg.r;
    let samples = samples_or(cfg, 12);
    let engine = Arc::new(Engine::new(n, cfg.eval));
    let comps = tau_components(engine.clone())?;
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);

    // iota_a tau_{2k} = 0 for every sp basis element and suite chain
    for (k, comp) in comps.iter().enumerate().skip(1) {
        let basis = sp_basis::<Rat>(n);
        let max_deg = if n == 1 { 3 } else { 2 };
        let words: Vec<Vec<Poly>> = (0..samples).map(|_| rng.word(n, 2 * k, max_deg)).collect();
        let mut residuals = Vec::new();
        for a in &basis {
            let it = iota(comp, a.poly())?;
            for w in &words {
                let chain = normalize_word(w.clone())?;
                if chain.is_zero() {
                    continue;
                }
                residuals.push(it.eval(&chain));
            }
        }
        runner.check(
            &format!("sp-basicness iota_a tau_{} = 0", 2 * k),
            residuals,
        )?;
    }

    // invariance L_a tau_{2k} = 0 for every sp basis element
    for (k, comp) in comps.iter().enumerate().skip(1) {
        let basis = sp_basis::<Rat>(n);
        let max_deg = if n == 1 { 3 } else { 2 };
        let words: Vec<Vec<Poly>> = (0..samples.min(6))
            .map(|_| rng.word(n, 2 * k + 1, max_deg))
            .collect();
        let mut residuals = Vec::new();
        for a in &basis {
            let la = crate::cochain::lie(comp, a.poly())?;
            for w in &words {
                let chain = normalize_word(w.clone())?;
                if chain.is_zero() {
                    continue;
                }
                residuals.push(la.eval(&chain));
            }
        }
        runner.check(&format!("sp-invariance L_a tau_{} = 0", 2 * k), residuals)?;
    }

    // matrix complex: iota_alpha tau^r = 0 for sp ⊗ id and constant gl_r
    let family = TauFamily::build_with_engine(engine, r)?;
    let top = family.top();
    let mut alphas: Vec<Mat> = sp_basis::<Rat>(n)
        .into_iter()
        .map(|a| Mat::scalar_poly(a.poly().clone(), r))
        .collect();
    for i in 0..r {
        for j in 0..r {
            alphas.push(Mat::from_poly_unit(Poly::one(n), r, i, j));
        }
    }
    let mat_words: Vec<Vec<Mat>> = (0..samples)
        .map(|_| {
            (0..2 * n)
                .map(|slot| {
                    let poly = rng.poly(n, usize::from(slot > 0), 2);
                    if rng.below(2) == 0 {
                        Mat::scalar_poly(poly, r)
                    } else {
                        Mat::from_poly_unit(
                            poly,
                            r,
                            rng.below(r as u64) as usize,
                            rng.below(r as u64) as usize,
                        )
                    }
                })
                .collect()
        })
        .collect();
    let mut residuals = Vec::new();
    for alpha in &alphas {
        let it = iota(top, alpha)?;
        for w in &mat_words {
            let chain = normalize_word(w.clone())?;
            if chain.is_zero() {
                continue;
            }
            residuals.push(it.eval(&chain));
        }
    }
    runner.check(
        &format!("matrix basicness iota_alpha tau^{r} = 0 over sp + gl_{r}"),
        residuals,
    )?;

    Ok(runner.finish("basic", cfg, samples))
}

fn suite_cyclic(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let samples = samples_or(cfg, if n == 1 { 16 } else { 8 });
    let engine = Arc::new(Engine::new(n, cfg.eval));
    let tau = tau_cochain(engine.clone());
    let comps = tau_components(engine)?;
    let pairs = omega_pairs_poly::<Rat>(n);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);
    let max_deg = if n == 1 { 3 } else { 2 };

    // (B - L_omega) tau_{2n} = 0
    let b_tau = connes_b(&tau)?;
    let l_tau = lie_omega(&tau, &pairs)?;
    let diff = b_tau.sub(&l_tau)?;
    let words: Vec<Vec<Poly>> = (0..samples).map(|_| rng.word(n, 2 * n, max_deg)).collect();
    runner.check(
        &format!("cyclic identity (B - L_omega) tau_{} = 0", 2 * n),
        words.into_iter().map(|w| {
            let chain = normalize_word(w)?;
            if chain.is_zero() {
                return Ok(Rat::zero());
            }
            diff.eval(&chain)
        }),
    )?;

    // componentwise d tau_{2k} + B tau_{2k+2} = 0
    for k in 0..n {
        let lhs = d(&comps[k]);
        let rhs = connes_b(&comps[k + 1])?;
        let sum = lhs.add(&rhs)?;
        let words: Vec<Vec<Poly>> = (0..samples)
            .map(|_| rng.word(n, 2 * k + 2, max_deg))
            .collect();
        runner.check(
            &format!("component identity d tau_{} + B tau_{} = 0", 2 * k, 2 * k + 2),
            words.into_iter().map(|w| {
                let chain = normalize_word(w)?;
                if chain.is_zero() {
                    return Ok(Rat::zero());
                }
                sum.eval(&chain)
            }),
        )?;
    }

    // the same identities hold on the matrix complex
    if cfg.r > 1 {
        let r = cfg.r;
        let engine = Arc::new(Engine::new(n, cfg.eval));
        let family = TauFamily::build_with_engine(engine, r)?;
        let mat_pairs = crate::cochain::omega_pairs_matrix::<Rat>(n, r);
        let b_tau = connes_b(family.top())?;
        let l_tau = lie_omega(family.top(), &mat_pairs)?;
        let diff = b_tau.sub(&l_tau)?;
        let mut residuals = Vec::new();
        for _ in 0..samples.min(6) {
            let word: Vec<Mat> = (0..2 * n)
                .map(|slot| {
                    let poly = rng.poly(n, usize::from(slot > 0), max_deg);
                    if rng.below(2) == 0 {
                        Mat::scalar_poly(poly, r)
                    } else {
                        Mat::from_poly_unit(
                            poly,
                            r,
                            rng.below(r as u64) as usize,
                            rng.below(r as u64) as usize,
                        )
                    }
                })
                .collect();
            let chain = normalize_word(word)?;
            if chain.is_zero() {
                continue;
            }
            residuals.push(diff.eval(&chain));
        }
        runner.check(
            &format!("matrix cyclic identity (B - L_omega) tau^{r} = 0"),
            residuals,
        )?;
    }

    Ok(runner.finish("cyclic", cfg, samples))
}

fn suite_lemma_a2(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let samples = samples_or(cfg, 100);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);

    // prepare the sampled quadruples (functional, word, a, b)
    struct Sample {
        phi: PolyCochain,
        degree: usize,
        a: Poly,
        b: Poly,
        words: Vec<Vec<Poly>>,
    }
    let mut sams = Vec::with_capacity(samples);
    for _ in 0..samples {
        let degree = 2 + rng.below(2) as usize;
        let phi = rng.functional(n, degree);
        let a = rng.poly_dense(n, 1, 2);
        let b = rng.poly_dense(n, 1, 2);
        // words indexed by length, for each arity this sample needs
        let words = (0..=degree + 3)
            .map(|len| rng.word_low(n, len.max(1), 2))
            .collect();
        sams.push(Sample {
            phi,
            degree,
            a,
            b,
            words,
        });
    }
    let word_at = |s: &Sample, deg: usize| -> Result<Chain<Poly>> {
        normalize_word(s.words[deg + 1].clone())
    };
    // evidence that the sampled functionals are not degenerate: count plain
    // evaluations and bracket-insertion evaluations that are nonzero; only a
    // fully dead large sample set fails
    let mut alive_count = 0usize;
    let mut bracket_alive = 0usize;
    for s in &sams {
        if !s.phi.eval(&word_at(s, s.degree)?)?.is_zero() {
            alive_count += 1;
        }
        if !iota(&s.phi, &s.a.bracket(&s.b)?)?
            .eval(&word_at(s, s.degree - 1)?)?
            .is_zero()
        {
            bracket_alive += 1;
        }
    }
    runner.check_flag(
        "sampled functionals give nonzero evaluations (evidence)",
        samples,
        usize::from(alive_count + bracket_alive == 0 && samples >= 20),
        Some(format!(
            "{alive_count} plain and {bracket_alive} bracket-inserted nonzero of {samples}"
        )),
    );

    runner.check(
        "[d, L_a] = 0",
        sams.iter().map(|s| {
            let lhs = d(&lie(&s.phi, &s.a)?).sub(&lie(&d(&s.phi), &s.a)?)?;
            lhs.eval(&word_at(s, s.degree + 1)?)
        }),
    )?;
    runner.check_pairs(
        "[L_a, iota_b] = iota_[a,b]",
        sams.iter().map(|s| {
            let lhs = lie(&iota(&s.phi, &s.b)?, &s.a)?.sub(&iota(&lie(&s.phi, &s.a)?, &s.b)?)?;
            let rhs = iota(&s.phi, &s.a.bracket(&s.b)?)?;
            let w = word_at(s, s.degree - 1)?;
            Ok((lhs.eval(&w)?, rhs.eval(&w)?))
        }),
    )?;
    runner.check_pairs(
        "[L_a, L_b] = L_[a,b]",
        sams.iter().map(|s| {
            let lhs = lie(&lie(&s.phi, &s.b)?, &s.a)?.sub(&lie(&lie(&s.phi, &s.a)?, &s.b)?)?;
            let rhs = lie(&s.phi, &s.a.bracket(&s.b)?)?;
            let w = word_at(s, s.degree)?;
            Ok((lhs.eval(&w)?, rhs.eval(&w)?))
        }),
    )?;
    runner.check(
        "{iota_a, B} = 0",
        sams.iter().map(|s| {
            let lhs = iota(&connes_b(&s.phi)?, &s.a)?.add(&connes_b(&iota(&s.phi, &s.a)?)?)?;
            lhs.eval(&word_at(s, s.degree - 2)?)
        }),
    )?;
    runner.check(
        "[L_a, B] = 0",
        sams.iter().map(|s| {
            // L_a is even, so the graded bracket with B is the commutator
            let lhs = lie(&connes_b(&s.phi)?, &s.a)?.sub(&connes_b(&lie(&s.phi, &s.a)?)?)?;
            lhs.eval(&word_at(s, s.degree - 1)?)
        }),
    )?;
    runner.check(
        "d d = 0",
        sams.iter().map(|s| d(&d(&s.phi)).eval(&word_at(s, s.degree + 2)?)),
    )?;
    runner.check(
        "B B = 0",
        sams.iter().map(|s| {
            connes_b(&connes_b(&s.phi)?)?.eval(&word_at(s, s.degree - 2)?)
        }),
    )?;
    runner.check(
        "{d, B} = 0",
        sams.iter().map(|s| {
            let lhs = d(&connes_b(&s.phi)?).add(&connes_b(&d(&s.phi))?)?;
            lhs.eval(&word_at(s, s.degree)?)
        }),
    )?;

    Ok(runner.finish("lemma-a2", cfg, samples))
}

fn suite_lemma_31(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let samples = samples_or(cfg, 60);
    let pairs = omega_pairs_poly::<Rat>(n);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);

    struct Sample {
        phi: PolyCochain,
        degree: usize,
        a: Poly,
        words: Vec<Vec<Poly>>,
    }
    let mut sams = Vec::with_capacity(samples);
    for _ in 0..samples {
        let degree = 3 + rng.below(2) as usize;
        let phi = rng.functional(n, degree);
        let a = rng.poly_dense(n, 1, 2);
        let words = (0..=degree + 2)
            .map(|len| rng.word_low(n, len.max(1), 2))
            .collect();
        sams.push(Sample {
            phi,
            degree,
            a,
            words,
        });
    }
    let word_at =
        |s: &Sample, deg: usize| -> Result<Chain<Poly>> { normalize_word(s.words[deg + 1].clone()) };
    let mut alive = 0usize;
    let mut contracted_alive = 0usize;
    for s in &sams {
        if !s.phi.eval(&word_at(s, s.degree)?)?.is_zero() {
            alive += 1;
        }
        if !iota_omega(&s.phi, &pairs)?
            .eval(&word_at(s, s.degree - 2)?)?
            .is_zero()
        {
            contracted_alive += 1;
        }
    }
    runner.check_flag(
        "sampled functionals give nonzero evaluations (evidence)",
        samples,
        usize::from(alive + contracted_alive == 0),
        Some(format!(
            "{alive} plain and {contracted_alive} contracted nonzero of {samples}"
        )),
    );

    runner.check(
        "{d, L_omega} = 0",
        sams.iter().map(|s| {
            let lhs = d(&lie_omega(&s.phi, &pairs)?).add(&lie_omega(&d(&s.phi), &pairs)?)?;
            lhs.eval(&word_at(s, s.degree)?)
        }),
    )?;
    runner.check(
        "[L_omega, iota_omega] = 0",
        sams.iter().map(|s| {
            let lhs = lie_omega(&iota_omega(&s.phi, &pairs)?, &pairs)?
                .sub(&iota_omega(&lie_omega(&s.phi, &pairs)?, &pairs)?)?;
            lhs.eval(&word_at(s, s.degree - 3)?)
        }),
    )?;
    runner.check(
        "L_omega L_omega = 0",
        sams.iter().map(|s| {
            let l1 = lie_omega(&s.phi, &pairs)?;
            let l2 = lie_omega(&l1, &pairs)?;
            l2.eval(&word_at(s, s.degree - 2)?)
        }),
    )?;
    runner.check(
        "[iota_omega, B] = 0",
        sams.iter().map(|s| {
            let lhs = iota_omega(&connes_b(&s.phi)?, &pairs)?
                .sub(&connes_b(&iota_omega(&s.phi, &pairs)?)?)?;
            lhs.eval(&word_at(s, s.degree - 3)?)
        }),
    )?;
    runner.check(
        "{L_omega, B} = 0",
        sams.iter().map(|s| {
            let lhs = lie_omega(&connes_b(&s.phi)?, &pairs)?
                .add(&connes_b(&lie_omega(&s.phi, &pairs)?)?)?;
            lhs.eval(&word_at(s, s.degree - 2)?)
        }),
    )?;
    runner.check(
        "[iota_omega, iota_a] = 0",
        sams.iter().map(|s| {
            let lhs = iota_omega(&iota(&s.phi, &s.a)?, &pairs)?
                .sub(&iota(&iota_omega(&s.phi, &pairs)?, &s.a)?)?;
            lhs.eval(&word_at(s, s.degree - 3)?)
        }),
    )?;

    Ok(runner.finish("lemma-3-1", cfg, samples))
}

fn suite_lemma_22(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.n;
    let samples = samples_or(cfg, if n == 1 { 6 } else { 4 });
    let engine = Arc::new(Engine::new(n, cfg.eval));
    let tau = tau_cochain(engine.clone());
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);
    let max_deg = if n == 1 { 3 } else { 2 };

    // the permutation law
    let sigmas: Vec<Perm> = if n == 1 {
        Perm::all(2)
    } else {
        let all = Perm::all(2 * n);
        let mut chosen = Vec::new();
        for _ in 0..10 {
            chosen.push(all[rng.below(all.len() as u64) as usize].clone());
        }
        chosen
    };
    let words: Vec<Vec<Poly>> = (0..samples)
        .map(|_| rng.word(n, 2 * n + 1, max_deg))
        .collect();
    let mut residuals = Vec::new();
    for sigma in &sigmas {
        let tau_s = tau_sigma_cochain(engine.clone(), sigma);
        let inv = sigma.inverse();
        for w in &words {
            let mut permuted = vec![w[0].clone()];
            for t in 0..2 * n {
                permuted.push(w[1 + inv.apply(t)].clone());
            }
            let lhs_chain = normalize_word(permuted)?;
            let rhs_chain = normalize_word(w.clone())?;
            let lhs = if lhs_chain.is_zero() {
                Rat::zero()
            } else {
                tau.eval(&lhs_chain)?
            };
            let rhs = if rhs_chain.is_zero() {
                Rat::zero()
            } else {
                tau_s.eval(&rhs_chain)? * rat(sigma.sign(), 1)
            };
            residuals.push(Ok(lhs - rhs));
        }
    }
    runner.check("permutation law tau(sigma-permuted) = sgn * tau^sigma", residuals)?;

    // chamber decomposition of basicness: for quadratic a the chamber sum
    // of a-inserted words vanishes
    let mut residuals = Vec::new();
    for _ in 0..samples.min(4) {
        let a = rng.sp(n);
        let base: Vec<Poly> = rng.word(n, 2 * n, max_deg);
        let mut total = Rat::zero();
        for j in 0..2 * n {
            // sigma moving slot-1 content to position j+1
            let mut images = Vec::with_capacity(2 * n);
            for m in 1..=2 * n {
                images.push(if m == 1 {
                    j + 1
                } else if m <= j + 1 {
                    m - 1
                } else {
                    m
                });
            }
            let sigma = Perm::from_one_based(&images)?;
            let tau_s = tau_sigma_cochain(engine.clone(), &sigma);
            let mut word = vec![base[0].clone(), a.poly().clone()];
            word.extend_from_slice(&base[1..]);
            let chain = normalize_word(word)?;
            if !chain.is_zero() {
                total += tau_s.eval(&chain)?;
            }
        }
        residuals.push(Ok(total));
    }
    runner.check(
        "chamber sum of quadratic insertions vanishes",
        residuals,
    )?;

    Ok(runner.finish("lemma-2-2", cfg, samples))
}

/// Tuple suites for the comparison theorem; configurations fixed by the
/// acceptance criteria.
pub const COMPARISON_CONFIGS: &[(usize, usize, usize)] =
    &[(1, 1, 0), (1, 1, 1), (2, 1, 1), (2, 2, 1)];

fn comparison_tuples(
    rng: &mut Rng,
    n: usize,
    r: usize,
    k: usize,
    count: usize,
) -> Vec<Vec<WnrElement>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        // alternate the normal forms: m cubic entries, k - m matrix entries,
        // k momentum entries
        let m = t % (k + 1);
        let mut tuple = Vec::with_capacity(2 * k);
        for _ in 0..m {
            tuple.push(WnrElement::Cubic {
                alpha: 1 + rng.below(n as u64) as usize,
                beta: 1 + rng.below(n as u64) as usize,
                gamma: 1 + rng.below(n as u64) as usize,
            });
        }
        for _ in m..k {
            // bias towards matrices with nonzero trace so the comparison is
            // nontrivial on most tuples
            let mut mat = rng.gl(r);
            if rng.below(3) > 0 {
                mat = mat.add(&RMatrix::identity(r));
            }
            tuple.push(WnrElement::QMatrix {
                alpha: 1 + rng.below(n as u64) as usize,
                m: mat,
            });
        }
        for _ in 0..k {
            tuple.push(WnrElement::PUnit {
                alpha: 1 + rng.below(n as u64) as usize,
            });
        }
        out.push(tuple);
    }
    out
}

fn suite_comparison(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let per_config = samples_or(cfg, 8);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);
    let mut per_k_signs: std::collections::BTreeMap<usize, Vec<i8>> = Default::default();
    let mut tuple_failures = 0;
    let mut tuple_cases = 0;

    for &(n, r, k) in COMPARISON_CONFIGS {
        let family = TauFamily::build(n, r, cfg.eval)?;
        let tuples = comparison_tuples(&mut rng, n, r, k, if k == 0 { 1 } else { per_config });
        let mut config_sign: Option<i8> = None;
        let mut sign_conflicts = 0;
        let mut nonzero = 0;
        for tuple in &tuples {
            let rep = compare_classes(&family, k, tuple)?;
            tuple_cases += 1;
            runner.absorb(&format!("{}:{}:{}:{}:{}", n, r, k, rep.lhs, rep.rhs));
            if !rep.equal_up_to_sign {
                tuple_failures += 1;
            }
            if let Some(s) = rep.sign {
                nonzero += 1;
                match config_sign {
                    None => config_sign = Some(s),
                    Some(prev) if prev != s => sign_conflicts += 1,
                    _ => {}
                }
            }
        }
        runner.check_flag(
            &format!("sign constant across tuples at (n={n}, r={r}, k={k})"),
            tuples.len(),
            sign_conflicts,
            None,
        );
        if let Some(s) = config_sign {
            per_k_signs.entry(k).or_default().push(s);
        }
        runner.signs.push(SignEntry {
            n,
            r,
            k,
            tuples: tuples.len(),
            nonzero,
            sign: config_sign,
        });
    }
    runner.check_flag(
        "every tuple equal up to sign",
        tuple_cases,
        tuple_failures,
        None,
    );
    // the criterion's literal clause: one sign per k across configurations.
    // The empirical law is sign = (-1)^n, so this clause fails at k = 1;
    // the per-tuple and per-configuration checks above are the sound part.
    let mut per_k_conflicts = 0;
    for signs in per_k_signs.values() {
        if signs.windows(2).any(|w| w[0] != w[1]) {
            per_k_conflicts += 1;
        }
    }
    runner.check_flag(
        "sign per k consistent across (n, r) configurations",
        per_k_signs.len(),
        per_k_conflicts,
        Some("empirical law: sign = (-1)^n under the cyclic-compatible contraction orientation".into()),
    );

    // chain map property: ev_1(d phi) = d_CE(ev_1 phi) on sampled cochains
    let mut residuals = Vec::new();
    for &(n, r) in &[(1usize, 1usize), (1, 2)] {
        let engine = Arc::new(Engine::new(n, cfg.eval));
        let family = TauFamily::build_with_engine(engine, r)?;
        for k in 1..=n {
            let phi = family.component(k);
            let dphi = d(phi);
            for _ in 0..3 {
                let args: Vec<Mat> = (0..2 * k + 1)
                    .map(|_| random_wnr_mat(&mut rng, n, r))
                    .collect::<Result<_>>()?;
                let lhs = ev_one(&dphi, &args)?;
                let ev_phi: LieCochain = ev_one_cochain(phi);
                let rhs = ce_differential(&ev_phi, &args)?;
                residuals.push(Ok(lhs - rhs));
            }
        }
    }
    runner.check("chain map: ev_1(d phi) = d_CE(ev_1 phi)", residuals)?;

    // d_CE(ev_1 tau_{2k}) = 0 on sampled arguments
    let mut residuals = Vec::new();
    for &(n, r) in &[(1usize, 1usize), (1, 2)] {
        let family = TauFamily::build(n, r, cfg.eval)?;
        for k in 1..=n {
            let ev_phi: LieCochain = ev_one_cochain(family.component(k));
            for _ in 0..3 {
                let args: Vec<Mat> = (0..2 * k + 1)
                    .map(|_| random_wnr_mat(&mut rng, n, r))
                    .collect::<Result<_>>()?;
                residuals.push(ce_differential(&ev_phi, &args));
            }
        }
    }
    runner.check("relative cocycle: d_CE(ev_1 tau_2k) = 0", residuals)?;

    // chi(P_k) is a relative cocycle on sampled distinguished tuples
    let mut residuals = Vec::new();
    for &(n, r) in &[(1usize, 1usize), (2, 2)] {
        let series = InvariantPolySeries::ahat_chern(2);
        let chi: LieCochain = Arc::new(move |args: &[Mat]| chern_weil_chi(&series, args));
        for _ in 0..4 {
            let args: Vec<Mat> = (0..3)
                .map(|_| random_wnr_mat(&mut rng, n, r))
                .collect::<Result<_>>()?;
            residuals.push(ce_differential(&chi, &args));
        }
    }
    runner.check("relative cocycle: d_CE(chi(P_k)) = 0", residuals)?;

    Ok(runner.finish("thm-1-3", cfg, per_config))
}

fn random_wnr_mat(rng: &mut Rng, n: usize, r: usize) -> Result<Mat> {
    let w = match rng.below(3) {
        0 => WnrElement::PUnit {
            alpha: 1 + rng.below(n as u64) as usize,
        },
        1 => WnrElement::Cubic {
            alpha: 1 + rng.below(n as u64) as usize,
            beta: 1 + rng.below(n as u64) as usize,
            gamma: 1 + rng.below(n as u64) as usize,
        },
        _ => WnrElement::QMatrix {
            alpha: 1 + rng.below(n as u64) as usize,
            m: rng.gl(r),
        },
    };
    w.to_mat(n, r)
}

fn suite_hm(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let samples = samples_or(cfg, 10);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);

    let hm_max = cfg.hm_max.clamp(2, 6);
    for n in 1..=2usize {
        let engine = Engine::new(n, cfg.eval);
        let mut pairs = Vec::new();
        let mut witness: Option<String> = None;
        for m in 0..=hm_max {
            for t in 0..samples {
                let x = gl_embed(&rng.gl(n), n)?;
                let args = vec![x.clone(); m];
                let lhs = h_moment(&engine, &args)?;
                let series = InvariantPolySeries::ahat(m.max(2));
                let h = crate::liecw::HElement::from_sp(x, 1);
                let rhs = series.component_on_diagonal(&h, m)? * factorial::<Rat>(m);
                if t == 0 && m == 2 {
                    witness = Some(format!(
                        "sample at m=2: moment {} vs {} = 2! Ahat_2",
                        rat_string(&lhs),
                        rat_string(&rhs)
                    ));
                }
                pairs.push(Ok((lhs, rhs)));
            }
        }
        runner.check_pairs(
            &format!("moment diagonal m! Ahat_m (n={n}, m <= {hm_max})"),
            pairs,
        )?;
        if let Some(w) = witness {
            if let Some(last) = runner.checks.last_mut() {
                let prev = last.note.take();
                last.note = Some(match prev {
                    Some(p) => format!("{p}; {w}"),
                    None => w,
                });
            }
        }

        // symmetry under argument permutations
        let mut residuals = Vec::new();
        for _ in 0..samples.min(5) {
            let xs: Vec<SpElement<Rat>> = (0..3).map(|_| rng.sp(n)).collect();
            let base = h_moment(&engine, &xs)?;
            for sigma in Perm::all(3) {
                let permuted: Vec<SpElement<Rat>> =
                    (0..3).map(|i| xs[sigma.apply(i)].clone()).collect();
                residuals.push(Ok(h_moment(&engine, &permuted)? - base.clone()));
            }
        }
        runner.check(&format!("moment symmetry (n={n}, m=3)"), residuals)?;
    }

    Ok(runner.finish("hm", cfg, samples))
}

fn suite_trace_id(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let samples = samples_or(cfg, 20);
    let mut runner = Runner::new();
    let mut rng = Rng::new(cfg.seed);

    let mut residuals = Vec::new();
    let mut series_residuals = Vec::new();
    for t in 0..samples {
        let n = 1 + (t % 3);
        let x = rng.gl(n);
        let sp_mat = quad_to_sp_matrix(&gl_embed(&x, n)?)?;
        for j in 0..=6usize {
            let lhs = sp_mat.pow(j).trace();
            let factor = if j % 2 == 0 { rat(2, 1) } else { Rat::zero() };
            residuals.push(Ok(lhs - x.pow(j).trace() * factor));
        }
        let lhs = ahat_diagonal_series(&sp_mat, 6);
        let gl_series = ahat_gl_diagonal_series(&x, 6);
        let rhs = gl_series.mul(&gl_series);
        for m in 0..=6 {
            series_residuals.push(Ok(lhs.coeff(m) - rhs.coeff(m)));
        }
    }
    runner.check(
        "defining-representation traces: tr_sp(x^j) = (1 + (-1)^j) tr_gl(x^j)",
        residuals,
    )?;
    runner.check(
        "Ahat_sp = Ahat_gl^2 on embedded matrices (series coefficients)",
        series_residuals,
    )?;
    Ok(runner.finish("trace-id", cfg, samples))
}

fn is_symplectic(g: &RMat, n: usize) -> bool {
    let omega = crate::cochain::omega_matrix::<Rat>(n);
    // g^T Omega g = Omega, with (g^T)_{ij} = g_{ji}
    let mut gt = RMatrix::zero(2 * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            gt[(i, j)] = g[(j, i)].clone();
        }
    }
    gt.mul(&omega).mul(g) == omega
}

/// Exact symplectic matrices: per-pair SL2 blocks (shears and diagonal
/// rescalings), GL-type blocks (q -> A q, p -> A^{-T} p for triangular A),
/// and the pair swap for n = 2.
fn symplectic_samples(rng: &mut Rng, n: usize) -> Vec<RMat> {
    let mut out = Vec::new();
    for variant in 0..3 {
        let mut g = RMatrix::identity(2 * n);
        for j in 0..n {
            let (p, q) = (2 * j, 2 * j + 1);
            match variant {
                0 => {
                    // shear p -> p + a q
                    g[(p, q)] = rng.rat();
                }
                1 => {
                    // shear q -> q + a p
                    g[(q, p)] = rng.rat();
                }
                _ => {
                    // rescale p -> c p, q -> q / c
                    let c = rng.rat();
                    g[(p, p)] = c.clone();
                    g[(q, q)] = Rat::one() / c;
                }
            }
        }
        out.push(g);
    }
    if n >= 2 {
        // swap the first two (p, q) pairs
        let mut g = RMatrix::identity(2 * n);
        for d in 0..4 {
            g[(d, d)] = Rat::zero();
        }
        g[(0, 2)] = Rat::one();
        g[(1, 3)] = Rat::one();
        g[(2, 0)] = Rat::one();
        g[(3, 1)] = Rat::one();
        out.push(g);
        // GL-type block: q -> A q, p -> A^{-T} p with unitriangular A
        let a01 = rng.rat();
        let mut g = RMatrix::identity(2 * n);
        // A = [[1, a], [0, 1]] acting on (q1, q2); A^{-T} = [[1, 0], [-a, 1]]
        g[(1, 3)] = a01.clone();
        g[(2, 0)] = -a01;
        out.push(g);
    }
    out
}
