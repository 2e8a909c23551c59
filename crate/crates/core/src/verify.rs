//! Seeded property checks over the evaluators, packaged as [`CheckReport`]s.

use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{Character, CharacterParams};
use crate::cmatrix::{ComplexMatrix, C64};
use crate::group::{GroupTable, UnitaryRep};
use crate::io::{self, Params};
use crate::oracle::checks::{self, random_perm, random_word};
use crate::oracle::{oracle_eval_with, OracleConfig, SlotBasis};
use crate::perm::Permutation;
use crate::report::CheckReport;
use crate::samples::{random_unit_vector, random_unitary};
use crate::state::{BlockUnitary, PmBlock, PsiState, RegBlock, StateParams};
use crate::wreath::WreathElement;

/// Agreement of two evaluations of the same value.
pub const EVAL_TOL: f64 = 1e-9;
/// Identities between operators in the tensor model.
pub const RELATION_TOL: f64 = 1e-12;
/// Limits and insertions in the tensor model.
pub const MODEL_TOL: f64 = 1e-10;
/// Slack for positive semidefiniteness of Gram matrices.
pub const PSD_TOL: f64 = 1e-8;

/// Anything that assigns a value to elements of `Γ ≀ S_∞`.
pub trait StateFunction {
    fn group(&self) -> &Arc<GroupTable>;
    fn value(&self, g: &WreathElement) -> C64;
}

impl StateFunction for Character {
    fn group(&self) -> &Arc<GroupTable> {
        Character::group(self)
    }

    fn value(&self, g: &WreathElement) -> C64 {
        self.eval(g)
    }
}

impl StateFunction for PsiState {
    fn group(&self) -> &Arc<GroupTable> {
        PsiState::group(self)
    }

    fn value(&self, g: &WreathElement) -> C64 {
        self.eval(g)
    }
}

impl StateFunction for Params {
    fn group(&self) -> &Arc<GroupTable> {
        Params::group(self)
    }

    fn value(&self, g: &WreathElement) -> C64 {
        self.eval(g)
    }
}

/// Uniform random elements whose permutation and colors live on `1..=m` for a
/// random `m ≤ max_support`.
#[derive(Debug, Clone)]
pub struct ElementSampler {
    rng: ChaCha8Rng,
    group: Arc<GroupTable>,
    max_support: usize,
}

impl ElementSampler {
    pub fn new(group: Arc<GroupTable>, max_support: usize, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            group,
            max_support: max_support.max(1),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// An element supported in `1..=m`.
    pub fn element_on(&mut self, m: usize) -> WreathElement {
        let perm = random_perm(m, &mut self.rng);
        let order = self.group.order();
        let mut colors = Vec::new();
        for pos in 1..=m {
            if self.rng.gen_bool(0.5) {
                colors.push((pos, self.rng.gen_range(0..order)));
            }
        }
        WreathElement::new(perm, colors, &self.group).expect("sampled colors are valid")
    }

    pub fn element(&mut self) -> WreathElement {
        let m = self.rng.gen_range(1..=self.max_support);
        self.element_on(m)
    }

    pub fn elements(&mut self, n: usize) -> Vec<WreathElement> {
        (0..n).map(|_| self.element()).collect()
    }

    pub fn perm(&mut self, n: usize) -> Permutation {
        random_perm(n, &mut self.rng)
    }

    /// Two elements with disjoint supports: the second is shifted past the first.
    pub fn disjoint_pair(&mut self) -> (WreathElement, WreathElement) {
        if self.max_support < 2 {
            return (self.element_on(1), WreathElement::identity());
        }
        let a = self.rng.gen_range(1..self.max_support);
        let b = self.rng.gen_range(1..=self.max_support - a);
        let g = self.element_on(a);
        let h = self.element_on(b).shifted(a);
        (g, h)
    }
}

/// Budgets for [`full_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_support: usize,
    pub gram_size: usize,
    pub oracle: OracleConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            max_support: 5,
            gram_size: 8,
            oracle: OracleConfig::default(),
        }
    }
}

fn c_diff(a: C64, b: C64) -> f64 {
    (a - b).norm()
}

/// The Gram matrix `G_ij = φ(e_i⁻¹e_j)` is Hermitian, has unit diagonal and is
/// positive semidefinite up to `tol`.
pub fn gram_check(f: &dyn StateFunction, elements: &[WreathElement], tol: f64, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        "gram",
        "G_ij = φ(e_i⁻¹ e_j) is Hermitian with unit diagonal and positive semidefinite",
        tol,
        seed,
    );
    let group = f.group().clone();
    let n = elements.len();
    let inverses: Vec<WreathElement> = elements.iter().map(|e| e.inverse(&group)).collect();
    let g = ComplexMatrix::from_fn(n, n, |i, j| f.value(&inverses[i].multiply(&elements[j], &group)));
    let listing = || elements.iter().map(|e| e.format(&group)).collect::<Vec<_>>().join(" ");
    report.record(g.hermitian_residual(), || format!("not Hermitian on {}", listing()));
    let diag = (0..n).map(|i| c_diff(g[(i, i)], C64::new(1.0, 0.0))).fold(0.0, f64::max);
    report.record(diag, || "diagonal differs from φ(e) = 1".into());
    let sym = ComplexMatrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
    match sym.min_eigenvalue() {
        Ok(min) => report.record((-min).max(0.0), || format!("min eigenvalue {min:e} on {}", listing())),
        Err(e) => report.fail(format!("eigensolver failed: {e}")),
    }
    report
}

/// `φ(sgs⁻¹) = φ(g)` for random `g` and random `s`.
pub fn centrality_check(f: &dyn StateFunction, trials: usize, seed: u64, max_support: usize) -> CheckReport {
    let mut report = CheckReport::new("centrality", "φ(s g s⁻¹) = φ(g)", EVAL_TOL, seed);
    let group = f.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    for _ in 0..trials {
        let g = sampler.element();
        let s = sampler.perm(2 * max_support);
        let moved = g.conjugate(&s);
        report.record(c_diff(f.value(&moved), f.value(&g)), || {
            format!("g = {}, s = {s}", g.format(&group))
        });
    }
    report
}

/// `φ(gh) = φ(g)φ(h)` when `g` and `h` have disjoint supports.
pub fn multiplicativity_check(f: &dyn StateFunction, trials: usize, seed: u64, max_support: usize) -> CheckReport {
    let mut report = CheckReport::new("multiplicativity", "φ(g h) = φ(g) φ(h) for disjoint supports", EVAL_TOL, seed);
    let group = f.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    for _ in 0..trials {
        let (g, h) = sampler.disjoint_pair();
        let lhs = f.value(&g.multiply(&h, &group));
        report.record(c_diff(lhs, f.value(&g) * f.value(&h)), || {
            format!("g = {}, h = {}", g.format(&group), h.format(&group))
        });
    }
    report
}

/// Parameters conjugated by a random block unitary give the same state.
pub fn uniqueness_check(state: &PsiState, trials: usize, seed: u64, max_support: usize) -> CheckReport {
    let mut report = CheckReport::new(
        "uniqueness",
        "conjugating A, ρ and ξ̂ by a block unitary leaves the state unchanged",
        MODEL_TOL,
        seed,
    );
    let group = state.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    let v = BlockUnitary {
        pm: (state.pm_dim() > 0).then(|| random_unitary(state.pm_dim(), sampler.rng())),
        reg: state.reg().map(|r| random_unitary(r.rho11.dim(), sampler.rng())),
    };
    let other = match state.conjugate_params(&v) {
        Ok(s) => s,
        Err(e) => {
            report.fail(format!("conjugated parameters rejected: {e}"));
            return report;
        }
    };
    for _ in 0..trials {
        let g = sampler.element();
        report.record(c_diff(state.eval(&g), other.eval(&g)), || g.format(&group));
    }
    report
}

/// The closed-form evaluator agrees with the brute-force tensor trace.
pub fn oracle_check(state: &PsiState, trials: usize, seed: u64, max_support: usize, config: &OracleConfig) -> CheckReport {
    let mut report = CheckReport::new(
        "oracle",
        "closed-form value equals Tr(U(s)·⊗ρ(γ_j)·⊗D_j) in the tensor model",
        EVAL_TOL,
        seed,
    );
    let group = state.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    for _ in 0..trials {
        let g = sampler.element();
        match oracle_eval_with(state, &g, g.max_point().max(1), config) {
            Ok(v) => report.record(c_diff(state.eval(&g), v), || g.format(&group)),
            Err(e) => report.fail(format!("{}: {e}", g.format(&group))),
        }
    }
    report
}

/// The tensor trace does not change when slots are added beyond the support.
pub fn oracle_slot_check(state: &PsiState, trials: usize, seed: u64, max_support: usize, config: &OracleConfig) -> CheckReport {
    let mut report = CheckReport::new(
        "oracle_slots",
        "the tensor trace is unchanged by extra slots beyond the support",
        RELATION_TOL,
        seed,
    );
    let group = state.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    for _ in 0..trials {
        let g = sampler.element();
        let n = g.max_point().max(1);
        let pair = oracle_eval_with(state, &g, n, config).and_then(|a| Ok((a, oracle_eval_with(state, &g, n + 2, config)?)));
        match pair {
            Ok((a, b)) => report.record(c_diff(a, b), || g.format(&group)),
            Err(e) => report.fail(format!("{}: {e}", g.format(&group))),
        }
    }
    report
}

/// `Σ α^l + (−1)^{l−1} Σ β^l` on `l`-cycles, `l = 2..=6`; the 1-cycle is `e` with value 1.
fn thoma_power_sum(alphas: &[f64], betas: &[f64], l: usize) -> f64 {
    if l == 1 {
        return 1.0;
    }
    let li = l as i32;
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
    alphas.iter().map(|a| a.powi(li)).sum::<f64>() + sign * betas.iter().map(|b| b.powi(li)).sum::<f64>()
}

/// For trivial `Γ`: values on `l`-cycles are Thoma's power sums.
pub fn thoma_check(params: &Params, seed: u64) -> Option<CheckReport> {
    if params.group().order() != 1 {
        return None;
    }
    let (alphas, betas): (Vec<f64>, Vec<f64>) = match params {
        Params::Character(c) => (
            c.params().alphas.iter().map(|w| w.weight).collect(),
            c.params().betas.iter().map(|w| w.weight).collect(),
        ),
        Params::State(s) => (
            s.eigenvalues().iter().filter(|&&l| l > 0.0).copied().collect(),
            s.eigenvalues().iter().filter(|&&l| l < 0.0).map(|l| -l).collect(),
        ),
    };
    let mut report = CheckReport::new(
        "thoma",
        "value on an l-cycle equals Σα^l + (−1)^(l−1) Σβ^l for trivial Γ",
        RELATION_TOL,
        seed,
    );
    for l in 1..=6 {
        let g = match Permutation::sigma(l) {
            Ok(p) => WreathElement::from_perm(p),
            Err(_) => WreathElement::identity(),
        };
        report.record(c_diff(params.eval(&g), C64::new(thoma_power_sum(&alphas, &betas, l), 0.0)), || {
            format!("l = {l}")
        });
    }
    Some(report)
}

/// State parameters with the same values as a character whose `α`, `β` reps are
/// one-dimensional: `A = diag(α) ⊕ −diag(β)`, `ρ = ⊕ρ_k`, and `K = τ ⊗ ℂ^{dim τ}`
/// with `ξ̂` the normalized maximally entangled vector, so `⟨ρ11(γ)ξ̂, ξ̂⟩ = tr τ(γ)`.
pub fn character_state_params(params: &CharacterParams, delta: f64) -> Option<StateParams> {
    let group = params.group.clone();
    let weighted: Vec<_> = params.alphas.iter().chain(&params.betas).collect();
    if weighted.iter().any(|w| w.rep.dim() != 1) {
        return None;
    }
    let n_alpha = params.alphas.len();
    let pm = (!weighted.is_empty()).then(|| {
        let eigs: Vec<f64> = weighted
            .iter()
            .enumerate()
            .map(|(i, w)| if i < n_alpha { w.weight } else { -w.weight })
            .collect();
        let rho = weighted[1..]
            .iter()
            .fold(weighted[0].rep.clone(), |acc, w| acc.direct_sum(&w.rep).expect("same group"));
        PmBlock {
            a: ComplexMatrix::diag_real(&eigs),
            rho,
        }
    });
    let reg = match &params.tau {
        Some(tau) if delta > crate::characters::WEIGHT_TOL => {
            let d = tau.dim();
            let rho11 = (1..d).fold(tau.clone(), |acc, _| acc.direct_sum(tau).expect("same group"));
            let mut xi = vec![C64::new(0.0, 0.0); d * d];
            for i in 0..d {
                xi[i * d + i] = C64::new(1.0 / (d as f64).sqrt(), 0.0);
            }
            Some(RegBlock { rho11, xi, copies: 1 })
        }
        _ => None,
    };
    Some(StateParams {
        group,
        pm,
        reg,
        pm_kernel_ok: false,
    })
}

/// A character with one-dimensional `α`, `β` reps equals the tensor-trace state
/// built from [`character_state_params`].
pub fn realization_check(ch: &Character, trials: usize, seed: u64, max_support: usize) -> Option<CheckReport> {
    let params = character_state_params(ch.params(), ch.delta())?;
    let mut report = CheckReport::new(
        "realization",
        "character values equal the state with A = diag(α) ⊕ −diag(β)",
        EVAL_TOL,
        seed,
    );
    let state = match PsiState::new(params) {
        Ok(s) => s,
        Err(e) => {
            report.fail(format!("realizing parameters rejected: {e}"));
            return Some(report);
        }
    };
    let group = ch.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), max_support, seed);
    for _ in 0..trials {
        let g = sampler.element();
        report.record(c_diff(ch.eval(&g), state.eval(&g)), || g.format(&group));
    }
    Some(report)
}

/// Spectral quantization for every distinct nonzero eigenvalue: integrality of
/// `ν`, the cycle formula over `S_2`, `S_3`, and the falling factorial.
pub fn quantization_checks(state: &PsiState, seed: u64, config: &OracleConfig) -> Vec<CheckReport> {
    let mut integral = CheckReport::new("quantization_integrality", "ν = ψ(P_α)/|α| is an integer", 1e-9, seed);
    let mut cycles = CheckReport::new(
        "quantization_cycles",
        "⟨U(s)η, η⟩ = |α|^n ν^c(s) sgn(α)^(n−c(s)) on S_2 and S_3",
        MODEL_TOL,
        seed,
    );
    let mut falling = CheckReport::new(
        "quantization_falling",
        "n!⟨Alt(n)η, η⟩ = |α|^n ν(ν−1)⋯(ν−n+1) for n ≤ ν+1 (Sym for α < 0)",
        PSD_TOL,
        seed,
    );
    for alpha in checks::distinct_eigenvalues(state) {
        match checks::quantization(state, alpha, 5, config) {
            Ok(q) => {
                integral.record(q.integrality_residual(), || format!("α = {alpha}: ν = {}", q.nu_raw));
                cycles.record(q.cycle_residual, || format!("α = {alpha}"));
                for &(n, got, want) in &q.falling {
                    falling.record((got - want).abs(), || format!("α = {alpha}, n = {n}: {got} vs {want}"));
                }
            }
            Err(e) => {
                integral.fail(format!("α = {alpha}: {e}"));
            }
        }
    }
    vec![integral, cycles, falling]
}

fn random_support_element(sampler: &mut ElementSampler, m: usize) -> WreathElement {
    let k = sampler.rng().gen_range(0..=m);
    if k == 0 {
        WreathElement::identity()
    } else {
        sampler.element_on(k)
    }
}

/// `⟨U((l k))v, w⟩` is the same for every `k` beyond the supports and equals
/// `⟨𝒪_l v, w⟩`, for `v = Π(h1)I`, `w = Π(h2)I`.
pub fn stabilization_checks(state: &PsiState, samples: usize, seed: u64) -> Vec<CheckReport> {
    let group = state.group().clone();
    let mut drift = CheckReport::new(
        "stabilization_drift",
        "⟨U((l k))v, w⟩ does not depend on k beyond the supports",
        RELATION_TOL,
        seed,
    );
    let mut limit = CheckReport::new(
        "stabilization_limit",
        "⟨U((l k))v, w⟩ = ⟨𝒪_l v, w⟩ with 𝒪_l = A on slot l",
        MODEL_TOL,
        seed,
    );
    let mut sampler = ElementSampler::new(group.clone(), 2, seed);
    for _ in 0..samples {
        let h1 = random_support_element(&mut sampler, 2);
        let h2 = random_support_element(&mut sampler, 2);
        let l = sampler.rng().gen_range(1..=2);
        let describe = || format!("l = {l}, h1 = {}, h2 = {}", h1.format(&group), h2.format(&group));
        match checks::stabilization(state, l, &h1, &h2, &[3, 4, 5]) {
            Ok(out) => {
                drift.record(out.drift(), describe);
                limit.record(out.limit_residual(), describe);
            }
            Err(e) => drift.fail(format!("{}: {e}", describe())),
        }
    }
    vec![drift, limit]
}

/// `ψ(g·(n k)·h) = ⟨Π(g)𝒪_kΠ(h)I, I⟩` for `n` outside the supports of `g`, `h`.
pub fn transposition_limit_check(state: &PsiState, samples: usize, seed: u64) -> CheckReport {
    let group = state.group().clone();
    let mut report = CheckReport::new(
        "transposition_limit",
        "ψ(g (n k) h) = ⟨Π(g) 𝒪_k Π(h) I, I⟩ for n outside the supports",
        MODEL_TOL,
        seed,
    );
    let mut sampler = ElementSampler::new(group.clone(), 2, seed);
    for _ in 0..samples {
        let g = random_support_element(&mut sampler, 2);
        let h = random_support_element(&mut sampler, 2);
        let k = [1, 2, 4][sampler.rng().gen_range(0..3)];
        let describe = || format!("g = {}, h = {}, n = 3, k = {k}", g.format(&group), h.format(&group));
        match checks::transposition_limit(state, &g, &h, 3, k) {
            Ok((lhs, rhs)) => {
                report.record(c_diff(lhs, rhs), describe);
                report.record(c_diff(lhs, state.eval(&g.multiply(&WreathElement::from_perm(Permutation::transposition(3, k).expect("distinct points")), &group).multiply(&h, &group))), describe);
            }
            Err(e) => report.fail(format!("{}: {e}", describe())),
        }
    }
    report
}

/// The cycle mixture formula with random words in `ρ(γ)` and `A` on each slot.
pub fn cycle_mixture_check(state: &PsiState, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        "cycle_mixture",
        "⟨Π(s_p) U_k1⋯U_kl I, I⟩ = ⟨U_k1 𝒪 U_k2 𝒪 ⋯ 𝒪 U_kl I, I⟩ transported to slot k_l",
        MODEL_TOL,
        seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(1..=3);
        let shuffle = random_perm(3, &mut rng);
        let orbit: Vec<usize> = (1..=len).map(|i| shuffle.image(i)).collect();
        let basis = SlotBasis::new(state, orbit.iter().copied().max().unwrap_or(1));
        let words: Vec<ComplexMatrix> = orbit.iter().map(|_| random_word(state, &basis, 3, &mut rng)).collect();
        match checks::cycle_mixture(state, &orbit, &words) {
            Ok((lhs, rhs)) => report.record(c_diff(lhs, rhs), || format!("orbit {orbit:?}")),
            Err(e) => report.fail(format!("orbit {orbit:?}: {e}")),
        }
    }
    report
}

/// Largest slot count `N ≤ max_slots` whose dense model has at most `cap` rows.
fn dense_slots(state: &PsiState, max_slots: usize, cap: usize) -> Option<usize> {
    (2..=max_slots).rev().find(|&n| {
        let d = SlotBasis::new(state, n).dim();
        (d as u128).pow(n as u32) <= cap as u128
    })
}

/// Operator relations of the model as dense matrix identities.
pub fn relations_checks(state: &PsiState, samples: usize, seed: u64, config: &OracleConfig) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homomorphism = CheckReport::new("u_homomorphism", "U(t)U(s) = U(ts) exactly", 0.0, seed);
    let mut covariance = CheckReport::new(
        "color_covariance",
        "U(s)·⊗ρ(γ_j)·U(s)* = ⊗ρ(γ_(s⁻¹(j)))",
        RELATION_TOL,
        seed,
    );
    let mut asymptotic = CheckReport::new(
        "asymptotic_relations",
        "𝒪_k𝒪_n = 𝒪_n𝒪_k, 𝒪_kΠ(γ) = Π(γ)𝒪_k when γ_k = e, U(s)𝒪_kU(s)* = 𝒪_s(k)",
        RELATION_TOL,
        seed,
    );
    let Some(slots) = dense_slots(state, 4, 1024) else {
        let note = "no slot count keeps the dense model within 1024 rows";
        return vec![
            CheckReport::failed("u_homomorphism", &homomorphism.identity, seed, note),
            CheckReport::failed("color_covariance", &covariance.identity, seed, note),
            CheckReport::failed("asymptotic_relations", &asymptotic.identity, seed, note),
        ];
    };
    match checks::representation_relations(state, slots, samples, config, &mut rng) {
        Ok(rel) => {
            for i in 0..rel.pairs {
                let bad = i < rel.homomorphism_failures;
                homomorphism.record(if bad { 1.0 } else { 0.0 }, || format!("{slots} slots"));
            }
            covariance.record(rel.covariance_residual, || format!("{slots} slots"));
        }
        Err(e) => homomorphism.fail(e.to_string()),
    }
    match checks::asymptotic_relations(state, slots, samples, config, &mut rng) {
        Ok(r) => asymptotic.record(r, || format!("{slots} slots")),
        Err(e) => asymptotic.fail(e.to_string()),
    }
    vec![homomorphism, covariance, asymptotic]
}

/// `ψ(E)² ≥ ε ψ(E)` for spectral projections `E` of `A` on intervals around each
/// eigenvalue, with `ψ(E)` from the eigenvalues and from the model.
pub fn spectral_check(state: &PsiState, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        "spectral_inequality",
        "ψ(E)² ≥ ε ψ(E) for E = E_[a,b](A), ε = min(|a|, |b|)",
        MODEL_TOL,
        seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for &l in state.eigenvalues() {
        if l.abs() > checks::EIGEN_GROUP_TOL {
            let w = l.abs() * rng.gen_range(0.1..0.9);
            let (a, b) = (l - w, l + w);
            intervals.push(if l > 0.0 { (a.max(1e-6), b.min(1.0)) } else { (a.max(-1.0), b.min(-1e-6)) });
        }
    }
    intervals.push((0.5, 1.0));
    intervals.push((-1.0, -0.5));
    for (a, b) in intervals {
        match checks::spectral_mass(state, a, b) {
            Ok(m) => {
                report.record(m.violation(), || format!("[{a}, {b}]"));
                report.record((m.closed - m.model).abs(), || format!("[{a}, {b}]: model {} vs {}", m.model, m.closed));
            }
            Err(e) => report.fail(format!("[{a}, {b}]: {e}")),
        }
    }
    report
}

/// `P_± W P_0 I = 0` and `P_α W P_β I = 0` for `αβ < 0`.
pub fn orthogonality_check(state: &PsiState, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        "orthogonality",
        "‖P_± W P_0 I‖ = 0 and ‖P_α W P_β I‖ = 0 for αβ < 0",
        MODEL_TOL,
        seed,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for slot in 1..=2 {
        let basis = SlotBasis::new(state, slot);
        let words: Vec<ComplexMatrix> = (0..samples).map(|_| random_word(state, &basis, 4, &mut rng)).collect();
        match checks::orthogonality(state, slot, &words) {
            Ok(r) => report.record(r, || format!("slot {slot}")),
            Err(e) => report.fail(format!("slot {slot}: {e}")),
        }
    }
    report
}

/// The KMS verdict; always passes and carries the diagnosis.
pub fn kms_report(state: &PsiState, seed: u64) -> CheckReport {
    let kms = state.check_kms();
    let mut report = CheckReport::new("kms", "KMS condition via Ker A and cyclic, separating ξ̂", 0.0, seed);
    report.note = Some(format!("KMS: {} ({})", kms.kms, kms.diagnosis));
    report
}

/// Every applicable check for the parameter kind.
pub fn full_suite(params: &Params, config: &SuiteConfig) -> Vec<CheckReport> {
    let seed = config.seed;
    let trials = config.trials;
    let support = config.max_support;
    let f: &dyn StateFunction = params;
    let mut sampler = ElementSampler::new(params.group().clone(), support, seed);
    let elements = sampler.elements(config.gram_size);
    let mut out = vec![
        gram_check(f, &elements, PSD_TOL, seed),
        centrality_check(f, trials, seed, support),
        multiplicativity_check(f, trials, seed, support),
    ];
    out.extend(thoma_check(params, seed));
    match params {
        Params::Character(ch) => out.extend(realization_check(ch, trials, seed, support)),
        Params::State(state) => {
            let light = (trials / 10).max(3);
            out.push(oracle_check(state, trials, seed, support, &config.oracle));
            out.push(oracle_slot_check(state, light, seed, support.min(3), &config.oracle));
            out.push(uniqueness_check(state, trials, seed, support));
            out.extend(quantization_checks(state, seed, &config.oracle));
            out.extend(stabilization_checks(state, light, seed));
            out.push(transposition_limit_check(state, light, seed));
            out.push(cycle_mixture_check(state, light, seed));
            out.extend(relations_checks(state, light, seed, &config.oracle));
            out.push(spectral_check(state, seed));
            out.push(orthogonality_check(state, light, seed));
            out.push(kms_report(state, seed));
        }
    }
    out
}

/// Loads a parameter file and runs [`full_suite`]; a file that fails to load
/// yields one failed report.
pub fn suite_from_file(path: &Path, config: &SuiteConfig) -> Vec<CheckReport> {
    match io::load_params(path) {
        Ok(params) => full_suite(&params, config),
        Err(e) => vec![CheckReport::failed("validation", "parameters parse and validate", config.seed, e.to_string())],
    }
}

/// Random block unitaries keep `StateParams` valid; exposed for benchmarks.
pub fn random_block_unitary(state: &PsiState, rng: &mut impl Rng) -> BlockUnitary {
    BlockUnitary {
        pm: (state.pm_dim() > 0).then(|| random_unitary(state.pm_dim(), rng)),
        reg: state.reg().map(|r| random_unitary(r.rho11.dim(), rng)),
    }
}

/// The `φ_reg` state of the regular representation with `ξ̂ = δ_e`.
pub fn phi_reg_state(group: &Arc<GroupTable>) -> PsiState {
    let rep = UnitaryRep::regular(group.clone());
    let mut xi = vec![C64::new(0.0, 0.0); group.order()];
    xi[group.identity()] = C64::new(1.0, 0.0);
    PsiState::new(crate::state::params_for_phi_reg(&rep, &xi).expect("δ_e is a unit vector"))
        .expect("regular parameters are valid")
}

#[doc(hidden)]
pub fn random_xi(k: usize, rng: &mut impl Rng) -> Vec<C64> {
    random_unit_vector(k, rng)
}
