//! Identities that hold inside the tensor model: stabilization of transpositions,
//! the relations of the asymptotic transpositions, spectral quantization and the
//! vanishing of mixed-sign pairings.
//!
//! Each function returns the raw quantities; packaging into reports happens in
//! [`crate::verify`].

use rand::seq::SliceRandom;
use rand::Rng;

use super::basis::SlotBasis;
use super::gns::{GnsVector, TensorModel};
use super::signed::{build_u, local_operator, tensor_product, PermAction};
use super::{symmetric_group, OracleConfig, OracleError};
use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;
use crate::state::PsiState;
use crate::wreath::WreathElement;

/// Eigenvalues closer than this are treated as one spectral value.
pub const EIGEN_GROUP_TOL: f64 = 1e-9;

/// `⟨U((l k))v, w⟩` for several `k`, and the `A`-insertion `⟨𝒪_l v, w⟩`.
#[derive(Debug, Clone)]
pub struct Stabilization {
    pub values: Vec<(usize, C64)>,
    pub inserted: C64,
}

impl Stabilization {
    /// Largest distance between the values for different `k`.
    pub fn drift(&self) -> f64 {
        let first = self.values.first().map_or(C64::new(0.0, 0.0), |v| v.1);
        self.values.iter().map(|v| (v.1 - first).norm()).fold(0.0, f64::max)
    }

    /// Largest distance between a transposition value and the insertion.
    pub fn limit_residual(&self) -> f64 {
        self.values.iter().map(|v| (v.1 - self.inserted).norm()).fold(0.0, f64::max)
    }
}

fn elements_max(elements: &[&WreathElement]) -> usize {
    elements.iter().map(|g| g.max_point()).max().unwrap_or(0)
}

/// Compares `⟨U((l k))Π(h1)I, Π(h2)I⟩` for each `k` in `ks` with `⟨𝒪_l Π(h1)I, Π(h2)I⟩`.
pub fn stabilization(
    state: &PsiState,
    l: usize,
    h1: &WreathElement,
    h2: &WreathElement,
    ks: &[usize],
) -> Result<Stabilization, OracleError> {
    let support = elements_max(&[h1, h2]).max(l);
    if let Some(&k) = ks.iter().find(|&&k| k <= support) {
        return Err(OracleError::InvalidInput(format!(
            "k = {k} must exceed every point touched by the vectors and l"
        )));
    }
    let slots = ks.iter().copied().max().unwrap_or(0).max(support);
    let model = TensorModel::new(state, slots)?;
    let id = model.identity();
    let v = model.apply_element(h1, &id)?;
    let w = model.apply_element(h2, &id)?;
    let values = ks
        .iter()
        .map(|&k| {
            let t = Permutation::transposition(l, k).map_err(|e| OracleError::InvalidInput(e.to_string()))?;
            Ok((k, model.apply_perm(&t, PermAction::Signed, &v)?.inner(&w)))
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    let inserted = model.apply_o(l, &v)?.inner(&w);
    Ok(Stabilization { values, inserted })
}

/// `ψ(g·(n k)·h)` and `⟨Π(g)𝒪_kΠ(h)I, I⟩` in the model, for `n` outside the
/// supports of `g` and `h`.
pub fn transposition_limit(
    state: &PsiState,
    g: &WreathElement,
    h: &WreathElement,
    n: usize,
    k: usize,
) -> Result<(C64, C64), OracleError> {
    let group = state.group();
    if g.support().contains(&n) || h.support().contains(&n) || k == n {
        return Err(OracleError::InvalidInput(format!(
            "n = {n} must lie outside both supports and differ from k = {k}"
        )));
    }
    let t = Permutation::transposition(n, k).map_err(|e| OracleError::InvalidInput(e.to_string()))?;
    let middle = WreathElement::from_perm(t);
    let product = g.multiply(&middle, group).multiply(h, group);
    let slots = elements_max(&[g, h]).max(n).max(k);
    let model = TensorModel::new(state, slots)?;
    let id = model.identity();
    let lhs = model.eval(&product)?;
    let inner = model.apply_o(k, &model.apply_element(h, &id)?)?;
    let rhs = model.apply_element(g, &inner)?.inner(&id);
    Ok((lhs, rhs))
}

/// `⊗ρ(γ_j)` as a dense matrix.
fn color_tensor(state: &PsiState, basis: &SlotBasis, colors: &[usize], cap: usize) -> Result<ComplexMatrix, OracleError> {
    let factors: Vec<ComplexMatrix> = colors.iter().map(|&c| basis.rho_full(state, c)).collect();
    tensor_product(&factors, cap)
}

fn random_colors(state: &PsiState, slots: usize, rng: &mut impl Rng) -> Vec<usize> {
    let order = state.group().order();
    (0..slots).map(|_| rng.gen_range(0..order)).collect()
}

/// Worst residual of the relations between asymptotic transpositions, colors
/// and permutations on `slots` factors, as dense matrix identities:
/// `𝒪_k𝒪_n = 𝒪_n𝒪_k`, `𝒪_kΠ(γ) = Π(γ)𝒪_k` when `γ_k = e`, and
/// `U(s)𝒪_kU(s)* = 𝒪_{s(k)}`.
pub fn asymptotic_relations(
    state: &PsiState,
    slots: usize,
    samples: usize,
    config: &OracleConfig,
    rng: &mut impl Rng,
) -> Result<f64, OracleError> {
    let basis = SlotBasis::new(state, slots);
    let a = basis.a_full();
    let o: Vec<ComplexMatrix> = (1..=slots)
        .map(|k| local_operator(&a, k, slots, config.dense_cap))
        .collect::<Result<_, _>>()?;
    let diff = |x: &ComplexMatrix, y: &ComplexMatrix| x.max_abs_diff(y).expect("operators share a shape");
    let mut worst: f64 = 0.0;
    for k in 0..slots {
        for n in 0..slots {
            worst = worst.max(diff(&(&o[k] * &o[n]), &(&o[n] * &o[k])));
        }
    }
    let identity = state.group().identity();
    for _ in 0..samples {
        let k = rng.gen_range(0..slots);
        let mut colors = random_colors(state, slots, rng);
        colors[k] = identity;
        let r = color_tensor(state, &basis, &colors, config.dense_cap)?;
        worst = worst.max(diff(&(&o[k] * &r), &(&r * &o[k])));
    }
    for s in sample_perms(slots, samples, config, rng)? {
        let u = build_u(&s, slots, &basis, config.dense_cap)?;
        for k in 1..=slots {
            worst = worst.max(diff(&u.conjugate(&o[k - 1]), &o[s.image(k) - 1]));
        }
    }
    Ok(worst)
}

/// All of `S_n` when it is small, otherwise `samples` random permutations.
fn sample_perms(
    n: usize,
    samples: usize,
    config: &OracleConfig,
    rng: &mut impl Rng,
) -> Result<Vec<Permutation>, OracleError> {
    match symmetric_group(n, config.factorial_cap.min(24)) {
        Ok(all) => Ok(all),
        Err(_) => Ok((0..samples).map(|_| random_perm(n, rng)).collect()),
    }
}

/// A uniformly random permutation of `1..=n`.
pub fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(images.into_iter().enumerate().map(|(i, q)| (i + 1, q))).expect("shuffled images form a bijection")
}

/// Results of the representation relations on `slots` factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepresentationRelations {
    /// Pairs `(s, t)` tested for `U(t)U(s) = U(ts)`.
    pub pairs: usize,
    /// Pairs where the signed permutations differ in any entry.
    pub homomorphism_failures: usize,
    /// Worst entry of `U(s)·⊗ρ(γ_j)·U(s)* − ⊗ρ(γ_{s⁻¹(j)})`.
    pub covariance_residual: f64,
}

/// `U(t)U(s) = U(ts)` compared exactly, and color covariance entrywise.
pub fn representation_relations(
    state: &PsiState,
    slots: usize,
    samples: usize,
    config: &OracleConfig,
    rng: &mut impl Rng,
) -> Result<RepresentationRelations, OracleError> {
    let basis = SlotBasis::new(state, slots);
    let perms = sample_perms(slots, samples, config, rng)?;
    let mut pairs = 0;
    let mut homomorphism_failures = 0;
    let exhaustive = perms.len() <= 24;
    for (i, s) in perms.iter().enumerate() {
        let us = build_u(s, slots, &basis, config.dense_cap)?;
        let partners: Vec<Permutation> = if exhaustive {
            perms.clone()
        } else {
            vec![perms[(i + 1) % perms.len()].clone()]
        };
        for t in &partners {
            pairs += 1;
            let ut = build_u(t, slots, &basis, config.dense_cap)?;
            if ut.compose(&us) != build_u(&t.compose(s), slots, &basis, config.dense_cap)? {
                homomorphism_failures += 1;
            }
        }
    }
    let mut covariance_residual: f64 = 0.0;
    for _ in 0..samples.max(1) {
        let s = random_perm(slots, rng);
        let colors = random_colors(state, slots, rng);
        let moved: Vec<usize> = (1..=slots).map(|j| colors[s.inverse().image(j) - 1]).collect();
        let u = build_u(&s, slots, &basis, config.dense_cap)?;
        let lhs = u.conjugate(&color_tensor(state, &basis, &colors, config.dense_cap)?);
        let rhs = color_tensor(state, &basis, &moved, config.dense_cap)?;
        covariance_residual = covariance_residual.max(lhs.max_abs_diff(&rhs).expect("same shape"));
    }
    Ok(RepresentationRelations {
        pairs,
        homomorphism_failures,
        covariance_residual,
    })
}

/// A random product of at most `max_len` factors drawn from `ρ(γ)` and `A`.
pub fn random_word(state: &PsiState, basis: &SlotBasis, max_len: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut word = ComplexMatrix::identity(basis.dim());
    for _ in 0..rng.gen_range(1..=max_len.max(1)) {
        let factor = if rng.gen_bool(0.4) {
            basis.a_full()
        } else {
            basis.rho_full(state, rng.gen_range(0..state.group().order()))
        };
        word = &word * &factor;
    }
    word
}

/// Both sides of the cycle mixture formula for the cycle `s_p` on `orbit`
/// `= [k_1, …, k_l]` with `k_i = s^{1−i}(k_1)`:
/// `⟨Π(s_p) W_1@k_1 ⋯ W_l@k_l I, I⟩` and `⟨(W_1 A W_2 A ⋯ A W_l)@k_l I, I⟩`.
/// Each `W_i` is a word in `ρ(γ)` and `A` on one slot.
pub fn cycle_mixture(state: &PsiState, orbit: &[usize], words: &[ComplexMatrix]) -> Result<(C64, C64), OracleError> {
    if orbit.is_empty() || orbit.len() != words.len() {
        return Err(OracleError::InvalidInput("orbit and words must be nonempty and of equal length".into()));
    }
    let successor_order: Vec<usize> = std::iter::once(orbit[0]).chain(orbit[1..].iter().rev().copied()).collect();
    let s = Permutation::from_cycles(&[successor_order]).map_err(|e| OracleError::InvalidInput(e.to_string()))?;
    let slots = orbit.iter().copied().max().unwrap_or(0);
    let model = TensorModel::new(state, slots)?;
    let id = model.identity();
    let mut v = id.clone();
    for (&k, w) in orbit.iter().zip(words) {
        v = model.apply_local(w, k, &v)?;
    }
    let lhs = model.apply_perm(&s, PermAction::Signed, &v)?.inner(&id);
    let a = model.a();
    let mut transported = words[0].clone();
    for w in &words[1..] {
        transported = &(&transported * &a) * w;
    }
    let last = *orbit.last().expect("orbit is nonempty");
    let rhs = model.apply_local(&transported, last, &id)?.inner(&id);
    Ok((lhs, rhs))
}

/// `ψ(E)` for the spectral projection `E` of `A` on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMass {
    pub epsilon: f64,
    /// `Tr(E|A|)` from the eigenvalues.
    pub closed: f64,
    /// `⟨E@1 I, I⟩` in the tensor model.
    pub model: f64,
}

impl SpectralMass {
    /// `max(0, ε·ψ(E) − ψ(E)²)`; zero when `ψ(E)² ≥ ε·ψ(E)`.
    pub fn violation(&self) -> f64 {
        (self.epsilon * self.closed - self.closed * self.closed).max(0.0)
    }
}

/// Mass of `[a, b]`, which must lie in `[−1, 0)` or `(0, 1]`; `ε = min(|a|, |b|)`.
pub fn spectral_mass(state: &PsiState, a: f64, b: f64) -> Result<SpectralMass, OracleError> {
    let valid = a <= b && ((0.0 < a && b <= 1.0) || (-1.0 <= a && b < 0.0));
    if !valid {
        return Err(OracleError::InvalidInput(format!(
            "interval [{a}, {b}] must lie inside [-1, 0) or (0, 1]"
        )));
    }
    let epsilon = a.abs().min(b.abs());
    let inside = |l: f64| a <= l && l <= b;
    let closed = state.eigenvalues().iter().filter(|&&l| inside(l)).map(|l| l.abs()).sum();
    let model = TensorModel::new(state, 1)?;
    let e = model.projector(|_, _, l| l != 0.0 && inside(l));
    let id = model.identity();
    let value = model.apply_local(&e, 1, &id)?.inner(&id);
    Ok(SpectralMass {
        epsilon,
        closed,
        model: value.re,
    })
}

/// Distinct nonzero eigenvalues of `A`, up to [`EIGEN_GROUP_TOL`].
pub fn distinct_eigenvalues(state: &PsiState) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &l in state.eigenvalues() {
        if l.abs() > EIGEN_GROUP_TOL && !out.iter().any(|&m| (m - l).abs() <= EIGEN_GROUP_TOL) {
            out.push(l);
        }
    }
    out
}

/// Largest norm among `P_± W P_0 I` and `P_α W P_β I` (`αβ < 0`) for the given
/// words `W` acting on slot `slot`.
pub fn orthogonality(state: &PsiState, slot: usize, words: &[ComplexMatrix]) -> Result<f64, OracleError> {
    let model = TensorModel::new(state, slot)?;
    let id = model.identity();
    let basis = model.basis();
    let p_zero = model.projector(|i, _, l| i >= basis.pm_dim() || l == 0.0);
    let p_plus = model.projector(|i, _, l| i < basis.pm_dim() && l > 0.0);
    let p_minus = model.projector(|i, _, l| i < basis.pm_dim() && l < 0.0);
    let spectrum = distinct_eigenvalues(state);
    let mut pairs: Vec<(ComplexMatrix, ComplexMatrix)> = vec![(p_plus, p_zero.clone()), (p_minus, p_zero)];
    for &alpha in &spectrum {
        for &beta in &spectrum {
            if alpha * beta < 0.0 {
                pairs.push((
                    model.eigen_projector(alpha, EIGEN_GROUP_TOL),
                    model.eigen_projector(beta, EIGEN_GROUP_TOL),
                ));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for w in words {
        for (left, right) in &pairs {
            let op = &(left * w) * right;
            worst = worst.max(model.apply_local(&op, slot, &id)?.norm());
        }
    }
    Ok(worst)
}

/// Spectral quantization data for one eigenvalue `α` of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantization {
    pub alpha: f64,
    /// `ψ(P_α)/|α|` before rounding.
    pub nu_raw: f64,
    pub nu: usize,
    /// Worst `|⟨U(s)η_n, η_n⟩ − |α|^n ν^{c(s)} sgn(α)^{n−c(s)}|` over all
    /// `s ∈ S_2, S_3`, where `c(s)` counts cycles including fixed points.
    pub cycle_residual: f64,
    /// `(n, n!·⟨Alt(n)η_n, η_n⟩, |α|^n ν(ν−1)⋯(ν−n+1))`, with `Sym` in place of
    /// `Alt` when `α < 0`.
    pub falling: Vec<(usize, f64, f64)>,
}

impl Quantization {
    pub fn integrality_residual(&self) -> f64 {
        (self.nu_raw - self.nu as f64).abs()
    }

    pub fn falling_residual(&self) -> f64 {
        self.falling.iter().map(|f| (f.1 - f.2).abs()).fold(0.0, f64::max)
    }
}

fn falling_factorial(nu: usize, n: usize) -> f64 {
    (0..n).map(|i| nu as f64 - i as f64).product()
}

/// `η_n = P_α@1 ⋯ P_α@n I` in a model with `n` slots.
fn eta<'a>(state: &'a PsiState, alpha: f64, n: usize) -> Result<(TensorModel<'a>, GnsVector), OracleError> {
    let model = TensorModel::new(state, n)?;
    let p = model.eigen_projector(alpha, EIGEN_GROUP_TOL);
    let mut v = model.identity();
    for j in 1..=n {
        v = model.apply_local(&p, j, &v)?;
    }
    Ok((model, v))
}

/// Quantization identities for eigenvalue `alpha`, with the falling-factorial
/// check for `n = 1, …, min(ν + 1, n_max)`.
pub fn quantization(state: &PsiState, alpha: f64, n_max: usize, config: &OracleConfig) -> Result<Quantization, OracleError> {
    if alpha == 0.0 || !state.eigenvalues().iter().any(|&l| (l - alpha).abs() <= EIGEN_GROUP_TOL) {
        return Err(OracleError::InvalidInput(format!("{alpha} is not a nonzero eigenvalue of A")));
    }
    let mass: f64 = state
        .eigenvalues()
        .iter()
        .filter(|&&l| (l - alpha).abs() <= EIGEN_GROUP_TOL)
        .map(|l| l.abs())
        .sum();
    let nu_raw = mass / alpha.abs();
    let nu = nu_raw.round() as usize;
    let sgn = alpha.signum();
    let mut cycle_residual: f64 = 0.0;
    for n in 2..=3 {
        let (model, v) = eta(state, alpha, n)?;
        for s in symmetric_group(n, config.factorial_cap)? {
            let got = model.apply_perm(&s, PermAction::Signed, &v)?.inner(&v);
            let c = s.cycle_count_on(n);
            let want = alpha.abs().powi(n as i32) * (nu as f64).powi(c as i32) * sgn.powi((n - c) as i32);
            cycle_residual = cycle_residual.max((got - C64::new(want, 0.0)).norm());
        }
    }
    let mut falling = Vec::new();
    for n in 1..=(nu + 1).min(n_max) {
        let (model, v) = eta(state, alpha, n)?;
        let mut projected = GnsVector::zero();
        for s in symmetric_group(n, config.factorial_cap)? {
            let weight = if alpha > 0.0 { f64::from(s.sign()) } else { 1.0 };
            projected = projected.add_scaled(&model.apply_perm(&s, PermAction::Signed, &v)?, C64::new(weight, 0.0));
        }
        // `projected` is n!·Alt(n)η (or n!·Sym(n)η)
        let value = projected.inner(&v).re;
        falling.push((n, value, alpha.abs().powi(n as i32) * falling_factorial(nu, n)));
    }
    Ok(Quantization {
        alpha,
        nu_raw,
        nu,
        cycle_residual,
        falling,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{GroupTable, UnitaryRep};
    use crate::state::{PmBlock, RegBlock, StateParams};

    fn diag_state(eigs: &[f64]) -> PsiState {
        let group = Arc::new(GroupTable::trivial());
        PsiState::new(StateParams {
            pm: Some(PmBlock {
                a: ComplexMatrix::diag_real(eigs),
                rho: UnitaryRep::trivial(group.clone(), eigs.len()),
            }),
            reg: Some(RegBlock {
                rho11: UnitaryRep::trivial(group.clone(), 1),
                xi: vec![C64::new(1.0, 0.0)],
                copies: 1,
            }),
            pm_kernel_ok: false,
            group,
        })
        .unwrap()
    }

    fn colored_state() -> (Arc<GroupTable>, PsiState) {
        let group = Arc::new(GroupTable::cyclic(3));
        let rho = UnitaryRep::cyclic_irrep(group.clone(), 1)
            .unwrap()
            .direct_sum(&UnitaryRep::cyclic_irrep(group.clone(), 2).unwrap())
            .unwrap();
        let state = PsiState::new(StateParams {
            pm: Some(PmBlock {
                a: ComplexMatrix::diag_real(&[0.4, -0.3]),
                rho,
            }),
            reg: Some(RegBlock {
                rho11: UnitaryRep::regular(group.clone()),
                xi: vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8), C64::new(0.0, 0.0)],
                copies: 1,
            }),
            pm_kernel_ok: false,
            group: group.clone(),
        })
        .unwrap();
        (group, state)
    }

    #[test]
    fn stabilization_for_single_plus_eigenvalue() {
        let state = diag_state(&[0.5]);
        let id = WreathElement::identity();
        let out = stabilization(&state, 1, &id, &id, &[2, 3, 4]).unwrap();
        assert!(out.drift() <= 1e-12);
        assert!((out.inserted - C64::new(0.25, 0.0)).norm() <= 1e-12);
        assert!(out.limit_residual() <= 1e-12);
    }

    #[test]
    fn stabilization_with_colored_vectors() {
        let (group, state) = colored_state();
        let h1 = WreathElement::parse("(1 2)[a@1]", &group).unwrap();
        let h2 = WreathElement::parse("[a2@2]", &group).unwrap();
        for l in 1..=2 {
            let out = stabilization(&state, l, &h1, &h2, &[3, 4, 5]).unwrap();
            assert!(out.drift() <= 1e-12, "drift {}", out.drift());
            assert!(out.limit_residual() <= 1e-10, "limit {}", out.limit_residual());
        }
        assert!(stabilization(&state, 1, &h1, &h2, &[2]).is_err());
    }

    #[test]
    fn transposition_limit_examples() {
        let (group, state) = colored_state();
        let g = WreathElement::parse("(1 2)[a@2]", &group).unwrap();
        let h = WreathElement::parse("[a@1,a2@3]", &group).unwrap();
        for k in [1, 2, 3, 5] {
            let (lhs, rhs) = transposition_limit(&state, &g, &h, 4, k).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12, "k={k}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn relations_hold() {
        let (_, state) = colored_state();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let config = OracleConfig::default();
        assert!(asymptotic_relations(&state, 3, 5, &config, &mut rng).unwrap() <= 1e-12);
        let rel = representation_relations(&state, 3, 5, &config, &mut rng).unwrap();
        assert_eq!(rel.homomorphism_failures, 0);
        assert_eq!(rel.pairs, 36);
        assert!(rel.covariance_residual <= 1e-12);
    }

    #[test]
    fn cycle_mixture_matches() {
        let (_, state) = colored_state();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for orbit in [vec![1], vec![1, 2], vec![2, 1, 3], vec![3, 1, 4, 2]] {
            let basis = SlotBasis::new(&state, *orbit.iter().max().unwrap());
            let words: Vec<ComplexMatrix> = orbit.iter().map(|_| random_word(&state, &basis, 3, &mut rng)).collect();
            let (lhs, rhs) = cycle_mixture(&state, &orbit, &words).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10, "{orbit:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn spectral_mass_example() {
        let state = diag_state(&[0.5, 0.25]);
        let m = spectral_mass(&state, 0.2, 0.6).unwrap();
        assert!((m.closed - 0.75).abs() <= 1e-15);
        assert!((m.model - 0.75).abs() <= 1e-12);
        assert_eq!(m.violation(), 0.0);
        let empty = spectral_mass(&state, 0.6, 0.9).unwrap();
        assert_eq!(empty.closed, 0.0);
        assert!(spectral_mass(&state, -0.1, 0.2).is_err());
        assert!(spectral_mass(&state, 0.5, 0.2).is_err());
    }

    #[test]
    fn orthogonality_vanishes() {
        let (_, state) = colored_state();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis = SlotBasis::new(&state, 2);
        let words: Vec<ComplexMatrix> = (0..10).map(|_| random_word(&state, &basis, 4, &mut rng)).collect();
        assert!(orthogonality(&state, 2, &words).unwrap() <= 1e-10);
        let plain = diag_state(&[0.5, -0.3]);
        let basis = SlotBasis::new(&plain, 1);
        let words = vec![ComplexMatrix::identity(basis.dim())];
        assert!(orthogonality(&plain, 1, &words).unwrap() <= 1e-10);
    }

    #[test]
    fn quantization_examples() {
        let config = OracleConfig::default();
        let q = quantization(&diag_state(&[0.3, 0.3]), 0.3, 5, &config).unwrap();
        assert_eq!(q.nu, 2);
        assert!(q.integrality_residual() <= 1e-9);
        assert!(q.cycle_residual <= 1e-10);
        assert_eq!(q.falling.len(), 3);
        assert!(q.falling[2].1.abs() <= 1e-10);
        assert!(q.falling_residual() <= 1e-10);

        let single = quantization(&diag_state(&[0.5]), 0.5, 5, &config).unwrap();
        assert_eq!(single.nu, 1);
        assert!(single.falling[1].1.abs() <= 1e-12);

        let negative = quantization(&diag_state(&[-0.2, -0.2, -0.2]), -0.2, 5, &config).unwrap();
        assert_eq!(negative.nu, 3);
        assert!(negative.cycle_residual <= 1e-10);
        assert!(negative.falling_residual() <= 1e-10);
        assert!(negative.falling[3].1.abs() <= 1e-10);

        assert!(quantization(&diag_state(&[0.5]), 0.4, 5, &config).is_err());
    }
}
