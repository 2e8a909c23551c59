//! Brute-force evaluation of `Tr(U(s)·⊗ρ(γ_j)·⊗D_j)`.
//!
//! With `M_j = ρ(γ_j)D_j` the trace expands to
//! `Σ_y c(y, s) Π_j M_j[y_j, y_{s⁻¹(j)}]`. The sum runs depth-first over slots
//! in increasing order; factor `j` is multiplied in once both `y_j` and
//! `y_{s⁻¹(j)}` are fixed, and branches with an exact zero are cut.

use super::basis::SlotBasis;
use super::signed::{build_u, tensor_product};
use super::{OracleConfig, OracleError};
use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;
use crate::state::PsiState;
use crate::wreath::WreathElement;

const ZERO: C64 = C64::new(0.0, 0.0);

/// `ψ(g)` in the tensor model with `slots` factors and the default caps.
pub fn oracle_eval(state: &PsiState, g: &WreathElement, slots: usize) -> Result<C64, OracleError> {
    oracle_eval_with(state, g, slots, &OracleConfig::default())
}

fn check_slots(g: &WreathElement, slots: usize) -> Result<(), OracleError> {
    if g.max_point() > slots {
        return Err(OracleError::TooFewSlots {
            needed: g.max_point(),
            slots,
        });
    }
    Ok(())
}

/// `M_j = ρ_full(γ_j)·D_j` for every slot.
fn slot_factors(state: &PsiState, g: &WreathElement, basis: &SlotBasis, slots: usize) -> Vec<ComplexMatrix> {
    let group = state.group();
    (1..=slots)
        .map(|j| {
            let d = basis.density(state, j);
            let c = g.color_at(j, group);
            if c == group.identity() {
                d
            } else {
                &basis.rho_full(state, c) * &d
            }
        })
        .collect()
}

struct Search<'a> {
    basis: &'a SlotBasis,
    factors: &'a [ComplexMatrix],
    perm: &'a Permutation,
    inverse: &'a Permutation,
    candidates: Vec<Vec<usize>>,
    closing: Vec<Vec<usize>>,
    y: Vec<usize>,
    nodes: u64,
    budget: u64,
    total: C64,
}

impl Search<'_> {
    fn run(&mut self, slot: usize, partial: C64, odd: bool) -> Result<(), OracleError> {
        let n = self.y.len();
        if slot > n {
            self.total += if odd { -partial } else { partial };
            return Ok(());
        }
        for ci in 0..self.candidates[slot - 1].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::BudgetExceeded { budget: self.budget });
            }
            let v = self.candidates[slot - 1][ci];
            self.y[slot - 1] = v;
            let mut value = partial;
            for &j in &self.closing[slot - 1] {
                let col = self.y[self.inverse.image(j) - 1];
                value *= self.factors[j - 1][(self.y[j - 1], col)];
                if value == ZERO {
                    break;
                }
            }
            if value == ZERO {
                continue;
            }
            let mut flip = false;
            if self.basis.is_minus(v) {
                let target = self.perm.image(slot);
                let crossings = (1..slot)
                    .filter(|&i| self.basis.is_minus(self.y[i - 1]) && self.perm.image(i) > target)
                    .count();
                flip = crossings % 2 == 1;
            }
            self.run(slot + 1, value, odd ^ flip)?;
        }
        Ok(())
    }
}

/// [`oracle_eval`] with explicit caps.
pub fn oracle_eval_with(
    state: &PsiState,
    g: &WreathElement,
    slots: usize,
    config: &OracleConfig,
) -> Result<C64, OracleError> {
    check_slots(g, slots)?;
    let basis = SlotBasis::new(state, slots);
    let factors = slot_factors(state, g, &basis, slots);
    let perm = g.perm();
    let inverse = perm.inverse();
    let d = basis.dim();
    let candidates = (1..=slots)
        .map(|j| {
            let row_of = &factors[j - 1];
            let col_of = &factors[perm.image(j) - 1];
            (0..d)
                .filter(|&i| (0..d).any(|c| row_of[(i, c)] != ZERO) && (0..d).any(|r| col_of[(r, i)] != ZERO))
                .collect()
        })
        .collect();
    let mut closing = vec![Vec::new(); slots];
    for j in 1..=slots {
        closing[j.max(inverse.image(j)) - 1].push(j);
    }
    let mut search = Search {
        basis: &basis,
        factors: &factors,
        perm,
        inverse: &inverse,
        candidates,
        closing,
        y: vec![0; slots],
        nodes: 0,
        budget: config.term_budget,
        total: ZERO,
    };
    search.run(1, C64::new(1.0, 0.0), false)?;
    Ok(search.total)
}

/// The same trace with dense matrices; only for small models.
pub fn oracle_eval_dense(
    state: &PsiState,
    g: &WreathElement,
    slots: usize,
    config: &OracleConfig,
) -> Result<C64, OracleError> {
    check_slots(g, slots)?;
    let basis = SlotBasis::new(state, slots);
    let x = tensor_product(&slot_factors(state, g, &basis, slots), config.dense_cap)?;
    let u = build_u(g.perm(), slots, &basis, config.dense_cap)?;
    Ok((0..u.size())
        .map(|z| {
            let (image, sign) = u.entry(z);
            x[(z, image)] * f64::from(sign)
        })
        .sum())
}
