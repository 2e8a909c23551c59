//! Sparse vectors of the GNS space of the tensor model.
//!
//! An operator `v` on `(ℂ^d)^{⊗N}` is represented by the matrix `X = v·C`, where
//! `C = ⊗C_j` and `C_j C_j* = D_j`. Then `⟨v, w⟩ = Tr(w* v ⊗D_j) = Σ X·conj(Y)`,
//! the cyclic vector is `I = C`, and operators act on `X` from the left.

use std::collections::BTreeMap;

use super::basis::{digits, linear_index, permute_multi_index, SlotBasis, SlotLabel};
use super::signed::PermAction;
use super::OracleError;
use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;
use crate::state::PsiState;
use crate::wreath::WreathElement;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A vector `X = v·C`, keyed by (row index, column index).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GnsVector {
    entries: BTreeMap<(u64, u64), C64>,
}

impl GnsVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &C64)> {
        self.entries.iter()
    }

    fn push(&mut self, key: (u64, u64), value: C64) {
        if value != ZERO {
            *self.entries.entry(key).or_insert(ZERO) += value;
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero();
        for (&k, &v) in &self.entries {
            out.push(k, v * c);
        }
        out
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: C64) -> Self {
        let mut out = self.clone();
        for (&k, &v) in &other.entries {
            out.push(k, v * c);
        }
        out
    }

    /// `⟨self, other⟩`, linear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.entries
            .iter()
            .filter_map(|(k, v)| other.entries.get(k).map(|w| v * w.conj()))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(C64::norm_sqr).sum::<f64>().sqrt()
    }
}

/// The tensor model of a state with a fixed number of slots.
#[derive(Debug, Clone)]
pub struct TensorModel<'a> {
    state: &'a PsiState,
    basis: SlotBasis,
    slots: usize,
    factors: Vec<ComplexMatrix>,
    col_radix: u64,
}

impl<'a> TensorModel<'a> {
    pub fn new(state: &'a PsiState, slots: usize) -> Result<Self, OracleError> {
        let basis = SlotBasis::new(state, slots);
        let factors: Vec<ComplexMatrix> = (1..=slots).map(|j| basis.density_factor(state, j)).collect();
        let col_radix = factors.iter().map(|f| f.cols()).max().unwrap_or(1).max(1) as u64;
        let fits = |radix: u64| radix.checked_pow(slots as u32).is_some();
        if !fits(basis.dim().max(1) as u64) || !fits(col_radix) {
            return Err(OracleError::CapExceeded {
                what: "index range of the tensor model",
                size: (basis.dim() as u128).saturating_pow(slots as u32),
                cap: u64::MAX as u128,
            });
        }
        Ok(Self {
            state,
            basis,
            slots,
            factors,
            col_radix,
        })
    }

    pub fn state(&self) -> &PsiState {
        self.state
    }

    pub fn basis(&self) -> &SlotBasis {
        &self.basis
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn stride(&self, slot: usize) -> u64 {
        (self.dim() as u64).pow((self.slots - slot) as u32)
    }

    fn check_slot(&self, slot: usize) -> Result<(), OracleError> {
        if slot == 0 || slot > self.slots {
            return Err(OracleError::TooFewSlots {
                needed: slot,
                slots: self.slots,
            });
        }
        Ok(())
    }

    /// The cyclic vector `I`.
    pub fn identity(&self) -> GnsVector {
        let mut terms: Vec<(u64, u64, C64)> = vec![(0, 0, C64::new(1.0, 0.0))];
        for f in &self.factors {
            let mut next = Vec::new();
            for &(r, c, v) in &terms {
                for col in 0..f.cols() {
                    for row in 0..f.rows() {
                        let x = f[(row, col)];
                        if x != ZERO {
                            let r2 = r * self.dim() as u64 + row as u64;
                            let c2 = c * self.col_radix + col as u64;
                            next.push((r2, c2, v * x));
                        }
                    }
                }
            }
            terms = next;
        }
        let mut out = GnsVector::zero();
        for (r, c, v) in terms {
            out.push((r, c), v);
        }
        out
    }

    /// `op` (a `d × d` matrix) acting on slot `slot`.
    pub fn apply_local(&self, op: &ComplexMatrix, slot: usize, v: &GnsVector) -> Result<GnsVector, OracleError> {
        self.check_slot(slot)?;
        let d = self.dim();
        if op.shape() != (d, d) {
            return Err(OracleError::InvalidInput(format!(
                "slot operator has shape {:?}, expected {d}x{d}",
                op.shape()
            )));
        }
        let stride = self.stride(slot);
        let mut out = GnsVector::zero();
        for (&(r, c), &val) in &v.entries {
            let x = ((r / stride) % d as u64) as usize;
            let base = r - x as u64 * stride;
            for i in 0..d {
                let m = op[(i, x)];
                if m != ZERO {
                    out.push((base + i as u64 * stride, c), m * val);
                }
            }
        }
        Ok(out)
    }

    /// `U(s)` or the plain permutation of slots.
    pub fn apply_perm(&self, s: &Permutation, action: PermAction, v: &GnsVector) -> Result<GnsVector, OracleError> {
        if s.max_point() > self.slots {
            return Err(OracleError::TooFewSlots {
                needed: s.max_point(),
                slots: self.slots,
            });
        }
        let d = self.dim();
        let mut out = GnsVector::zero();
        for (&(r, c), &val) in &v.entries {
            let x = digits(r as usize, d, self.slots);
            let image = linear_index(&permute_multi_index(&x, s), d) as u64;
            let sign = match action {
                PermAction::Signed => f64::from(self.basis.cocycle_sign(&x, s)),
                PermAction::Plain => 1.0,
            };
            out.push((image, c), val * sign);
        }
        Ok(out)
    }

    /// `Π(sγ) = U(s)·⊗ρ(γ_j)`.
    pub fn apply_element(&self, g: &WreathElement, v: &GnsVector) -> Result<GnsVector, OracleError> {
        let mut out = v.clone();
        for (pos, c) in g.colors() {
            out = self.apply_local(&self.rho(c), pos, &out)?;
        }
        self.apply_perm(g.perm(), PermAction::Signed, &out)
    }

    /// The asymptotic transposition `𝒪_l`: `A` on slot `l`.
    pub fn apply_o(&self, slot: usize, v: &GnsVector) -> Result<GnsVector, OracleError> {
        self.apply_local(&self.a(), slot, v)
    }

    /// `ψ(g) = ⟨Π(g)I, I⟩`.
    pub fn eval(&self, g: &WreathElement) -> Result<C64, OracleError> {
        let id = self.identity();
        Ok(self.apply_element(g, &id)?.inner(&id))
    }

    /// `ρ_full(γ)` on one slot.
    pub fn rho(&self, g: usize) -> ComplexMatrix {
        self.basis.rho_full(self.state, g)
    }

    /// `A` on one slot.
    pub fn a(&self) -> ComplexMatrix {
        self.basis.a_full()
    }

    /// Diagonal projection onto the basis vectors selected by `keep`.
    pub fn projector(&self, keep: impl Fn(usize, SlotLabel, f64) -> bool) -> ComplexMatrix {
        let diag: Vec<f64> = (0..self.dim())
            .map(|i| {
                if keep(i, self.basis.label(i), self.basis.eigenvalue(i)) {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        ComplexMatrix::diag_real(&diag)
    }

    /// Spectral projection of `A` onto `{λ : |λ − alpha| ≤ tol}`.
    pub fn eigen_projector(&self, alpha: f64, tol: f64) -> ComplexMatrix {
        self.projector(|_, _, l| (l - alpha).abs() <= tol)
    }
}
