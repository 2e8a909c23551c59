//! One-particle basis shared by every tensor slot, and the sign cocycle.

use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;
use crate::state::{PsiState, SignLabel};

/// Role of a one-particle basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotLabel {
    Plus,
    Minus,
    /// Basis vector `kappa` of `K` in copy `copy` (both 0-based) of the regular block.
    Reg { copy: usize, kappa: usize },
}

/// Eigenbasis of the full `A` on `H_pm ⊕ (K ⊗ ℂ^copies)`: the adapted eigenbasis
/// of the signed block first, then the copies of `K` in copy-major order.
#[derive(Debug, Clone)]
pub struct SlotBasis {
    labels: Vec<SlotLabel>,
    eigenvalues: Vec<f64>,
    pm_dim: usize,
    k_dim: usize,
    copies: usize,
}

impl SlotBasis {
    /// Basis for a model with `slots` tensor factors. The regular block keeps at
    /// least one copy per slot so that every slot has its own kernel vector.
    pub fn new(state: &PsiState, slots: usize) -> Self {
        let pm_dim = state.pm_dim();
        let (k_dim, copies) = match state.reg() {
            Some(reg) => (reg.rho11.dim(), reg.copies.max(slots)),
            None => (0, 0),
        };
        let mut labels: Vec<SlotLabel> = (0..pm_dim)
            .map(|i| match state.label(i) {
                SignLabel::Plus => SlotLabel::Plus,
                SignLabel::Minus => SlotLabel::Minus,
            })
            .collect();
        let mut eigenvalues = state.eigenvalues().to_vec();
        for copy in 0..copies {
            for kappa in 0..k_dim {
                labels.push(SlotLabel::Reg { copy, kappa });
                eigenvalues.push(0.0);
            }
        }
        Self {
            labels,
            eigenvalues,
            pm_dim,
            k_dim,
            copies,
        }
    }

    /// A basis with only signed vectors, labelled by the sign of the given values.
    pub fn signed(eigenvalues: &[f64]) -> Self {
        let labels = eigenvalues
            .iter()
            .map(|&l| if l < 0.0 { SlotLabel::Minus } else { SlotLabel::Plus })
            .collect();
        Self {
            labels,
            eigenvalues: eigenvalues.to_vec(),
            pm_dim: eigenvalues.len(),
            k_dim: 0,
            copies: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn pm_dim(&self) -> usize {
        self.pm_dim
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn label(&self, i: usize) -> SlotLabel {
        self.labels[i]
    }

    pub fn labels(&self) -> &[SlotLabel] {
        &self.labels
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    #[inline]
    pub fn is_minus(&self, i: usize) -> bool {
        self.labels[i] == SlotLabel::Minus
    }

    /// Index of `kappa` in copy `copy` of the regular block.
    pub fn reg_index(&self, copy: usize, kappa: usize) -> usize {
        self.pm_dim + copy * self.k_dim + kappa
    }

    /// `ρ(γ)` on the signed block (adapted basis) ⊕ `ρ11(γ)` on each copy of `K`.
    pub fn rho_full(&self, state: &PsiState, g: usize) -> ComplexMatrix {
        let mut m = state.rho_pm(g).clone();
        if let Some(reg) = state.reg() {
            for _ in 0..self.copies {
                m = m.direct_sum(reg.rho11.matrix(g));
            }
        }
        m
    }

    /// The full `A`: its eigenvalues on the signed block and zero on the regular block.
    pub fn a_full(&self) -> ComplexMatrix {
        ComplexMatrix::diag_real(&self.eigenvalues)
    }

    /// Density of slot `slot` (1-based): `|A| ⊕ (1 − Tr|A|)|η⟩⟨η|` with `η = ξ̂` in copy `slot`.
    pub fn density(&self, state: &PsiState, slot: usize) -> ComplexMatrix {
        let f = self.density_factor(state, slot);
        &f * &f.adjoint()
    }

    /// A factor `C` with `C C* = density(slot)`: one column `√|λ_i| e_i` per
    /// nonzero eigenvalue, plus `√(1 − Tr|A|) η` when that weight is positive.
    pub fn density_factor(&self, state: &PsiState, slot: usize) -> ComplexMatrix {
        let d = self.dim();
        let mut cols: Vec<Vec<C64>> = Vec::new();
        for i in 0..self.pm_dim {
            let w = self.eigenvalues[i].abs();
            if w > 0.0 {
                let mut col = vec![C64::new(0.0, 0.0); d];
                col[i] = C64::new(w.sqrt(), 0.0);
                cols.push(col);
            }
        }
        let weight = state.kernel_weight();
        if let Some(reg) = state.reg() {
            if weight > 0.0 {
                assert!((1..=self.copies).contains(&slot), "slot {slot} has no regular copy");
                let mut col = vec![C64::new(0.0, 0.0); d];
                for (kappa, x) in reg.xi.iter().enumerate() {
                    col[self.reg_index(slot - 1, kappa)] = x * weight.sqrt();
                }
                cols.push(col);
            }
        }
        ComplexMatrix::from_columns(d, &cols)
    }

    /// Sign of the cocycle for multi-index `x` (slot `i` holds basis index `x[i-1]`).
    ///
    /// `U(s)` sends slot `i` to slot `s(i)`; the sign is that of the induced
    /// reordering of minus-labelled slots, i.e. `(−1)` to the number of pairs of
    /// minus slots `i < j` with `s(i) > s(j)`.
    pub fn cocycle_sign(&self, x: &[usize], s: &Permutation) -> i32 {
        let minus: Vec<usize> = (1..=x.len()).filter(|&i| self.is_minus(x[i - 1])).collect();
        let mut inversions = 0usize;
        for (a, &i) in minus.iter().enumerate() {
            let si = s.image(i);
            inversions += minus[a + 1..].iter().filter(|&&j| s.image(j) < si).count();
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Multi-index of a linear index in `(ℂ^dim)^{⊗slots}`, slot 1 most significant.
pub fn digits(mut index: usize, dim: usize, slots: usize) -> Vec<usize> {
    let mut out = vec![0; slots];
    for j in (0..slots).rev() {
        out[j] = index % dim;
        index /= dim;
    }
    out
}

pub fn linear_index(x: &[usize], dim: usize) -> usize {
    x.iter().fold(0, |acc, &xi| acc * dim + xi)
}

/// `s·x` with `(s·x)_{s(i)} = x_i`.
pub fn permute_multi_index(x: &[usize], s: &Permutation) -> Vec<usize> {
    let mut out = x.to_vec();
    for i in 1..=x.len() {
        out[s.image(i) - 1] = x[i - 1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn cocycle_examples() {
        let basis = SlotBasis::signed(&[0.5, -0.25]);
        // all plus
        for s in Permutation::all_of_degree(3) {
            assert_eq!(basis.cocycle_sign(&[0, 0, 0], &s), 1);
        }
        assert_eq!(basis.cocycle_sign(&[1, 1], &p("(1 2)")), -1);
        assert_eq!(basis.cocycle_sign(&[1, 0], &p("(1 2)")), 1);
        // a 3-cycle on three minus slots is even
        assert_eq!(basis.cocycle_sign(&[1, 1, 1], &p("(1 2 3)")), 1);
        assert_eq!(basis.cocycle_sign(&[1, 0, 1], &p("(1 3)")), -1);
    }

    #[test]
    fn cocycle_identity_exhaustive() {
        let basis = SlotBasis::signed(&[0.5, -0.25, -0.1]);
        let perms = Permutation::all_of_degree(4);
        for idx in 0..81 {
            let x = digits(idx, 3, 4);
            for s in &perms {
                let sx = permute_multi_index(&x, s);
                for t in &perms {
                    let lhs = basis.cocycle_sign(&x, &t.compose(s));
                    let rhs = basis.cocycle_sign(&sx, t) * basis.cocycle_sign(&x, s);
                    assert_eq!(lhs, rhs, "x={x:?} s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        for idx in 0..125 {
            assert_eq!(linear_index(&digits(idx, 5, 3), 5), idx);
        }
        assert_eq!(digits(7, 2, 3), vec![1, 1, 1]);
        assert_eq!(digits(4, 2, 3), vec![1, 0, 0]);
        assert_eq!(permute_multi_index(&[10, 20, 30], &p("(1 2 3)")), vec![30, 10, 20]);
    }
}
