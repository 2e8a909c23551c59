//! Brute-force tensor model of `ψ_A^ρ`.
//!
//! Slot `j` carries a copy of the one-particle space `H_pm ⊕ (K ⊗ ℂ^copies)` in the
//! eigenbasis of `A` (see [`SlotBasis`]). The state is `ψ(sγ) = Tr(U(s)·⊗ρ(γ_j)·⊗D_j)`
//! with `D_j = |A| ⊕ (1 − Tr|A|)|η_j⟩⟨η_j|`, where `η_j` is `ξ̂` placed in copy `j`.

pub mod basis;
pub mod checks;
pub mod eval;
pub mod gns;
pub mod signed;

use thiserror::Error;

use crate::perm::Permutation;

pub use basis::{SlotBasis, SlotLabel};
pub use eval::{oracle_eval, oracle_eval_dense, oracle_eval_with};
pub use gns::{GnsVector, TensorModel};
pub use signed::{build_alt, build_perm, build_sym, build_u, local_operator, tensor_product, PermAction, SignedPerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} {size} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("element touches position {needed} but the model has only {slots} slots")]
    TooFewSlots { needed: usize, slots: usize },
    #[error("summation exceeded the budget of {budget} terms")]
    BudgetExceeded { budget: u64 },
    #[error("{0}")]
    InvalidInput(String),
}

/// Compute caps for the tensor model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `dim^N` for which dense or signed-permutation operators are built.
    pub dense_cap: usize,
    /// Largest number of search nodes visited by [`oracle_eval`].
    pub term_budget: u64,
    /// Largest `n!` for symmetrizers.
    pub factorial_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            dense_cap: 20_000,
            term_budget: 5_000_000,
            factorial_cap: 720,
        }
    }
}

/// All of `S_n`, subject to the factorial cap.
pub fn symmetric_group(n: usize, cap: usize) -> Result<Vec<Permutation>, OracleError> {
    let order: u128 = (1..=n as u128).product();
    if order > cap as u128 {
        return Err(OracleError::CapExceeded {
            what: "symmetric group order",
            size: order,
            cap: cap as u128,
        });
    }
    Ok(Permutation::all_of_degree(n))
}
