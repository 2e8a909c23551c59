//! Signed permutation operators `U(s)` on `(ℂ^d)^{⊗N}` and dense helpers for
//! slot-local operators and (anti)symmetrizers.

use super::basis::{digits, linear_index, permute_multi_index, SlotBasis};
use super::OracleError;
use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;

/// How a permutation acts on multi-indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermAction {
    /// `U(s)`, twisted by the sign cocycle on minus-labelled slots.
    Signed,
    /// The plain permutation of tensor factors.
    Plain,
}

/// A signed permutation matrix, stored as the image and sign of each basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    dim: usize,
    slots: usize,
    images: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Column `j` has a single nonzero entry: `sign` in row `image`.
    pub fn entry(&self, j: usize) -> (usize, i8) {
        (self.images[j], self.signs[j])
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "operators act on different spaces");
        let mut images = Vec::with_capacity(self.size());
        let mut signs = Vec::with_capacity(self.size());
        for j in 0..other.size() {
            let (mid, s1) = other.entry(j);
            let (out, s2) = self.entry(mid);
            images.push(out);
            signs.push(s1 * s2);
        }
        Self {
            dim: self.dim,
            slots: self.slots,
            images,
            signs,
        }
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (j, x) in v.iter().enumerate() {
            out[self.images[j]] += x * f64::from(self.signs[j]);
        }
        out
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.size();
        let mut m = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            m[(self.images[j], j)] = C64::new(f64::from(self.signs[j]), 0.0);
        }
        m
    }

    /// `U M U*` for a dense `M`.
    pub fn conjugate(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let n = self.size();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = m[(i, j)];
                if v != C64::new(0.0, 0.0) {
                    let sign = f64::from(self.signs[i] * self.signs[j]);
                    out[(self.images[i], self.images[j])] = v * sign;
                }
            }
        }
        out
    }
}

fn checked_size(dim: usize, slots: usize, cap: usize) -> Result<usize, OracleError> {
    let size = (dim as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(OracleError::CapExceeded {
            what: "tensor dimension",
            size,
            cap: cap as u128,
        });
    }
    Ok(size as usize)
}

/// `U(s)|x⟩ = c(x, s)|s·x⟩` on `slots` tensor factors, or the unsigned version.
pub fn build_perm(
    s: &Permutation,
    slots: usize,
    basis: &SlotBasis,
    action: PermAction,
    cap: usize,
) -> Result<SignedPerm, OracleError> {
    if s.max_point() > slots {
        return Err(OracleError::TooFewSlots {
            needed: s.max_point(),
            slots,
        });
    }
    let d = basis.dim();
    let size = checked_size(d, slots, cap)?;
    let mut images = Vec::with_capacity(size);
    let mut signs = Vec::with_capacity(size);
    for idx in 0..size {
        let x = digits(idx, d, slots);
        images.push(linear_index(&permute_multi_index(&x, s), d));
        signs.push(match action {
            PermAction::Signed => basis.cocycle_sign(&x, s) as i8,
            PermAction::Plain => 1,
        });
    }
    Ok(SignedPerm {
        dim: d,
        slots,
        images,
        signs,
    })
}

/// The signed operator `U(s)`.
pub fn build_u(s: &Permutation, slots: usize, basis: &SlotBasis, cap: usize) -> Result<SignedPerm, OracleError> {
    build_perm(s, slots, basis, PermAction::Signed, cap)
}

/// `op` on slot `slot` (1-based) and the identity elsewhere.
pub fn local_operator(op: &ComplexMatrix, slot: usize, slots: usize, cap: usize) -> Result<ComplexMatrix, OracleError> {
    let d = op.rows();
    let factors: Vec<ComplexMatrix> = (1..=slots)
        .map(|j| if j == slot { op.clone() } else { ComplexMatrix::identity(d) })
        .collect();
    tensor_product(&factors, cap)
}

/// `M_1 ⊗ M_2 ⊗ ... ⊗ M_N` with slot 1 as the slowest index.
pub fn tensor_product(factors: &[ComplexMatrix], cap: usize) -> Result<ComplexMatrix, OracleError> {
    let d = factors.first().map_or(1, ComplexMatrix::rows);
    checked_size(d, factors.len(), cap)?;
    Ok(factors
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, f| acc.kron(f)))
}

/// `(1/n!) Σ_{s ∈ S_n} w(s) P(s)` on `slots` factors, with `w = sign` when
/// `antisymmetric` and `w = 1` otherwise.
pub fn build_projector(
    n: usize,
    slots: usize,
    basis: &SlotBasis,
    action: PermAction,
    antisymmetric: bool,
    config: &super::OracleConfig,
) -> Result<ComplexMatrix, OracleError> {
    if n > slots {
        return Err(OracleError::TooFewSlots { needed: n, slots });
    }
    let perms = super::symmetric_group(n, config.factorial_cap)?;
    let size = checked_size(basis.dim(), slots, config.dense_cap)?;
    let mut out = ComplexMatrix::zeros(size, size);
    let norm = 1.0 / perms.len() as f64;
    for s in &perms {
        let op = build_perm(s, slots, basis, action, config.dense_cap)?;
        let w = if antisymmetric { f64::from(s.sign()) } else { 1.0 } * norm;
        for j in 0..size {
            let (i, sign) = op.entry(j);
            out[(i, j)] += C64::new(w * f64::from(sign), 0.0);
        }
    }
    Ok(out)
}

/// Antisymmetrizer `Alt(n)`.
pub fn build_alt(
    n: usize,
    slots: usize,
    basis: &SlotBasis,
    action: PermAction,
    config: &super::OracleConfig,
) -> Result<ComplexMatrix, OracleError> {
    build_projector(n, slots, basis, action, true, config)
}

/// Symmetrizer `Sym(n)`.
pub fn build_sym(
    n: usize,
    slots: usize,
    basis: &SlotBasis,
    action: PermAction,
    config: &super::OracleConfig,
) -> Result<ComplexMatrix, OracleError> {
    build_projector(n, slots, basis, action, false, config)
}
