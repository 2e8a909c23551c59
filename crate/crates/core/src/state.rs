//! Central states `ψ_A^ρ` built from a self-adjoint trace-class `A` with
//! `Tr|A| ≤ 1`, a unitary representation `ρ`, and a unit vector `ξ̂` in the
//! kernel of `A`, truncated to finite dimensions.
//!
//! The one-particle space splits as `H_pm ⊕ H_reg`. `A` lives on `H_pm`, which
//! decomposes into `ρ`-invariant pieces `H_+` and `H_-` where `A` is positive,
//! respectively negative. `H_reg = K ⊗ ℂ^copies` carries `ρ11 ⊗ 1` and the
//! vector `ξ̂ ∈ K`, which receives the leftover weight `1 − Tr|A|`.
//!
//! Closed forms, for a generalized cycle with positions `k, s⁻¹(k), s⁻²(k), ...`:
//!
//! * singleton: `Tr(ρ(γ)|A|) + (1 − Tr|A|)⟨ρ11(γ)ξ̂, ξ̂⟩`,
//! * length `l > 1`: `Tr(Q_+ M) + (−1)^{l−1} Tr(Q_- M)` where `M` is the ordered
//!   product of `ρ(γ_j)|A|` along those positions and `Q_±` project onto `H_±`.

use std::sync::Arc;

use thiserror::Error;

use crate::cmatrix::{inner, norm, ComplexMatrix, MatrixError, C64};
use crate::group::{GroupTable, RepError, UnitaryRep};
use crate::wreath::{GeneralizedCycle, WreathElement};

/// Tolerance for commutation, unit-norm and subspace checks.
pub const STRUCT_TOL: f64 = 1e-10;
/// Eigenvalues of `A` below this in modulus count as zero.
pub const ZERO_EIG_TOL: f64 = 1e-12;
/// Slack on `Tr|A| ≤ 1`.
pub const TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("Tr|A| = {0} > 1: the absolute values of the eigenvalues of A must sum to at most 1")]
    TraceExceedsOne(f64),
    #[error("Tr|A| = {0} < 1 leaves weight for the kernel vector, but no regular block was given")]
    MissingRegular(f64),
    #[error("A has eigenvalue {0:e} on the signed block; its kernel must lie in the regular block")]
    KernelInSignedBlock(f64),
    #[error("rho does not preserve the positive and negative spectral subspaces of A (residual {0:e})")]
    SpectralSubspacesNotInvariant(f64),
    #[error("the positive and negative parts generated by A and rho overlap (residual {0:e})")]
    SignedPartsOverlap(f64),
    #[error("the complement of Ker A generates only {got} of {dim} dimensions under A and rho")]
    KernelNotReachable { got: usize, dim: usize },
    #[error("A is not Hermitian (residual {0:e})")]
    NotHermitian(f64),
    #[error("{what} has shape {got:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("kernel vector has norm {0}, expected 1")]
    NotUnitVector(f64),
    #[error("regular block needs at least one copy")]
    ZeroCopies,
    #[error("representations must be over the parameter group")]
    GroupMismatch,
    #[error("conjugating matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// The signed block: `A` and `ρ` on `H_pm`.
#[derive(Debug, Clone)]
pub struct PmBlock {
    pub a: ComplexMatrix,
    pub rho: UnitaryRep,
}

/// The regular block: `ρ11` on `K`, the kernel vector `ξ̂ ∈ K`, and the number of
/// copies of `K` kept in the truncation.
#[derive(Debug, Clone)]
pub struct RegBlock {
    pub rho11: UnitaryRep,
    pub xi: Vec<C64>,
    pub copies: usize,
}

/// Raw state data; see [`PsiState::new`] for validation.
#[derive(Debug, Clone)]
pub struct StateParams {
    pub group: Arc<GroupTable>,
    pub pm: Option<PmBlock>,
    pub reg: Option<RegBlock>,
    /// Allows zero eigenvalues of `A` on the signed block, provided the
    /// complement of the kernel generates the whole block under `A` and `ρ`.
    pub pm_kernel_ok: bool,
}

/// Block-diagonal unitary acting on `H_pm` and on `K`.
#[derive(Debug, Clone, Default)]
pub struct BlockUnitary {
    pub pm: Option<ComplexMatrix>,
    pub reg: Option<ComplexMatrix>,
}

/// Sign class of a one-particle basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignLabel {
    Plus,
    Minus,
}

/// A validated state with the spectral data needed by the evaluators.
#[derive(Debug, Clone)]
pub struct PsiState {
    params: StateParams,
    trace_abs: f64,
    /// Columns: eigenvectors of `A`, first spanning `H_+` then `H_-`.
    pm_basis: ComplexMatrix,
    eigenvalues: Vec<f64>,
    n_plus: usize,
    /// `ρ(γ)` expressed in `pm_basis`, per group element.
    rho_pm: Vec<ComplexMatrix>,
    /// `ρ(γ)|A|` expressed in `pm_basis`, per group element.
    weighted: Vec<ComplexMatrix>,
    /// `⟨ρ11(γ)ξ̂, ξ̂⟩` per group element.
    xi_overlaps: Vec<C64>,
}

impl PsiState {
    pub fn new(params: StateParams) -> Result<Self, StateError> {
        let group = params.group.clone();
        let (pm_dim, trace_abs) = match &params.pm {
            None => (0, 0.0),
            Some(pm) => {
                let n = pm.a.rows();
                if pm.a.shape() != (n, n) {
                    return Err(StateError::Shape {
                        what: "A",
                        got: pm.a.shape(),
                        expected: (n, n),
                    });
                }
                if pm.rho.dim() != n {
                    return Err(StateError::Shape {
                        what: "rho",
                        got: (pm.rho.dim(), pm.rho.dim()),
                        expected: (n, n),
                    });
                }
                if pm.rho.group() != &group {
                    return Err(StateError::GroupMismatch);
                }
                let r = pm.a.hermitian_residual();
                if r > crate::cmatrix::HERMITIAN_TOL {
                    return Err(StateError::NotHermitian(r));
                }
                let t: f64 = pm.a.hermitian_eig()?.values.iter().map(|l| l.abs()).sum();
                (n, t)
            }
        };
        if trace_abs > 1.0 + TRACE_TOL {
            return Err(StateError::TraceExceedsOne(trace_abs));
        }
        if let Some(reg) = &params.reg {
            if reg.rho11.group() != &group {
                return Err(StateError::GroupMismatch);
            }
            if reg.xi.len() != reg.rho11.dim() {
                return Err(StateError::Shape {
                    what: "xi",
                    got: (reg.xi.len(), 1),
                    expected: (reg.rho11.dim(), 1),
                });
            }
            let n = norm(&reg.xi);
            if (n - 1.0).abs() > STRUCT_TOL {
                return Err(StateError::NotUnitVector(n));
            }
            if reg.copies == 0 {
                return Err(StateError::ZeroCopies);
            }
        } else if trace_abs < 1.0 - TRACE_TOL {
            return Err(StateError::MissingRegular(trace_abs));
        }

        let (pm_basis, eigenvalues, n_plus) = match &params.pm {
            None => (ComplexMatrix::zeros(0, 0), Vec::new(), 0),
            Some(pm) => signed_decomposition(pm, params.pm_kernel_ok)?,
        };
        let order = group.order();
        let rho_pm: Vec<ComplexMatrix> = match &params.pm {
            None => vec![ComplexMatrix::zeros(0, 0); order],
            Some(pm) => (0..order)
                .map(|g| &(&pm_basis.adjoint() * pm.rho.matrix(g)) * &pm_basis)
                .collect(),
        };
        let abs_diag = ComplexMatrix::diag_real(&eigenvalues.iter().map(|l| l.abs()).collect::<Vec<_>>());
        let weighted = rho_pm.iter().map(|r| r * &abs_diag).collect();
        let xi_overlaps = match &params.reg {
            None => vec![C64::new(0.0, 0.0); order],
            Some(reg) => (0..order)
                .map(|g| inner(&reg.rho11.matrix(g).mul_vec(&reg.xi).expect("shape checked"), &reg.xi))
                .collect(),
        };
        debug_assert_eq!(pm_basis.rows(), pm_dim);
        Ok(Self {
            params,
            trace_abs,
            pm_basis,
            eigenvalues,
            n_plus,
            rho_pm,
            weighted,
            xi_overlaps,
        })
    }

    pub fn params(&self) -> &StateParams {
        &self.params
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.params.group
    }

    /// `Tr|A|`.
    pub fn trace_abs(&self) -> f64 {
        self.trace_abs
    }

    /// Weight `1 − Tr|A|` carried by the kernel vector (clamped at 0).
    pub fn kernel_weight(&self) -> f64 {
        (1.0 - self.trace_abs).max(0.0)
    }

    pub fn pm_dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.eigenvalues.len() - self.n_plus
    }

    /// Eigenvalues of `A` in basis order: `H_+` part then `H_-` part, each descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn label(&self, i: usize) -> SignLabel {
        if i < self.n_plus {
            SignLabel::Plus
        } else {
            SignLabel::Minus
        }
    }

    /// Orthonormal eigenbasis of `A` (as columns) adapted to `H_+ ⊕ H_-`.
    pub fn pm_basis(&self) -> &ComplexMatrix {
        &self.pm_basis
    }

    /// `ρ(γ)` in the adapted basis.
    pub fn rho_pm(&self, g: usize) -> &ComplexMatrix {
        &self.rho_pm[g]
    }

    pub fn reg(&self) -> Option<&RegBlock> {
        self.params.reg.as_ref()
    }

    /// `⟨ρ11(γ)ξ̂, ξ̂⟩`, zero without a regular block.
    pub fn xi_overlap(&self, g: usize) -> C64 {
        self.xi_overlaps[g]
    }

    /// True when `A` has a zero eigenvalue on the signed block.
    pub fn has_pm_kernel(&self) -> bool {
        self.eigenvalues.iter().any(|l| l.abs() < ZERO_EIG_TOL)
    }

    pub fn eval_singleton(&self, g: usize) -> C64 {
        let pm = self.weighted[g].trace().expect("square");
        pm + self.xi_overlaps[g] * self.kernel_weight()
    }

    pub fn eval_cycle(&self, c: &GeneralizedCycle) -> C64 {
        let group = &self.params.group;
        if c.is_singleton() {
            return self.eval_singleton(c.color_at(c.orbit()[0], group));
        }
        let n = self.pm_dim();
        let mut m = ComplexMatrix::identity(n);
        for pos in c.backward_positions() {
            m = &m * &self.weighted[c.color_at(pos, group)];
        }
        let plus: C64 = (0..self.n_plus).map(|i| m[(i, i)]).sum();
        let minus: C64 = (self.n_plus..n).map(|i| m[(i, i)]).sum();
        let sign = if c.len() % 2 == 0 { -1.0 } else { 1.0 };
        plus + minus * sign
    }

    pub fn eval(&self, g: &WreathElement) -> C64 {
        g.generalized_cycles()
            .iter()
            .fold(C64::new(1.0, 0.0), |acc, c| acc * self.eval_cycle(c))
    }

    /// Conjugates all parameters by a block unitary: `A ↦ VAV*`, `ρ ↦ VρV*`, `ξ̂ ↦ Vξ̂`.
    pub fn conjugate_params(&self, v: &BlockUnitary) -> Result<PsiState, StateError> {
        let mut params = self.params.clone();
        if let (Some(pm), Some(u)) = (params.pm.as_mut(), v.pm.as_ref()) {
            check_unitary(u, pm.a.rows())?;
            pm.a = &(u * &pm.a) * &u.adjoint();
            pm.rho = pm.rho.conjugated(u)?;
        }
        if let (Some(reg), Some(u)) = (params.reg.as_mut(), v.reg.as_ref()) {
            check_unitary(u, reg.rho11.dim())?;
            reg.xi = u.mul_vec(&reg.xi)?;
            reg.rho11 = reg.rho11.conjugated(u)?;
        }
        PsiState::new(params)
    }

    /// Decides whether the state satisfies the KMS condition.
    ///
    /// Requires `Ker A` to be exactly the regular block and `ξ̂` to be cyclic and
    /// separating for the algebra spanned by `ρ11(Γ)`.
    pub fn check_kms(&self) -> KmsReport {
        if self.has_pm_kernel() {
            return KmsReport {
                kms: false,
                kernel_in_signed_block: true,
                cyclic: None,
                separating: None,
                diagnosis: "A has a kernel on the signed block, so Ker A is larger than the regular block".into(),
            };
        }
        let reg = match &self.params.reg {
            Some(reg) if self.kernel_weight() > TRACE_TOL => reg,
            _ => {
                return KmsReport {
                    kms: true,
                    kernel_in_signed_block: false,
                    cyclic: None,
                    separating: None,
                    diagnosis: "A is invertible and the kernel vector carries no weight".into(),
                }
            }
        };
        let k = reg.rho11.dim();
        let order = self.params.group.order();
        let orbit: Vec<Vec<C64>> = (0..order)
            .map(|g| reg.rho11.matrix(g).mul_vec(&reg.xi).expect("shape checked"))
            .collect();
        let orbit_rank = ComplexMatrix::from_columns(k, &orbit).rank(STRUCT_TOL);
        let flattened: Vec<Vec<C64>> = (0..order).map(|g| reg.rho11.matrix(g).data().to_vec()).collect();
        let algebra_dim = ComplexMatrix::from_columns(k * k, &flattened).rank(STRUCT_TOL);
        let cyclic = orbit_rank == k;
        let separating = orbit_rank == algebra_dim;
        let diagnosis = format!(
            "span of rho11(g)xi has dimension {orbit_rank} (K has dimension {k}); span of rho11(g) has dimension {algebra_dim}"
        );
        KmsReport {
            kms: cyclic && separating,
            kernel_in_signed_block: false,
            cyclic: Some(cyclic),
            separating: Some(separating),
            diagnosis,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KmsReport {
    pub kms: bool,
    pub kernel_in_signed_block: bool,
    pub cyclic: Option<bool>,
    pub separating: Option<bool>,
    pub diagnosis: String,
}

fn check_unitary(u: &ComplexMatrix, dim: usize) -> Result<(), StateError> {
    if u.shape() != (dim, dim) {
        return Err(StateError::Shape {
            what: "conjugating block",
            got: u.shape(),
            expected: (dim, dim),
        });
    }
    let r = u.unitary_residual();
    if r > STRUCT_TOL {
        return Err(StateError::NotUnitary(r));
    }
    Ok(())
}

/// Splits `H_pm` into `H_+ ⊕ H_-` and returns an adapted eigenbasis of `A`,
/// its eigenvalues and `dim H_+`.
fn signed_decomposition(pm: &PmBlock, kernel_ok: bool) -> Result<(ComplexMatrix, Vec<f64>, usize), StateError> {
    let n = pm.a.rows();
    let eig = pm.a.hermitian_eig()?;
    let (plus, minus) = if kernel_ok {
        let pos = eig.projector(|l| l >= ZERO_EIG_TOL);
        let neg = eig.projector(|l| l <= -ZERO_EIG_TOL);
        let plus = invariant_closure(&pos, pm);
        let minus = invariant_closure(&neg, pm);
        let overlap = (&plus.adjoint() * &minus).max_abs();
        if plus.cols() > 0 && minus.cols() > 0 && overlap > STRUCT_TOL {
            return Err(StateError::SignedPartsOverlap(overlap));
        }
        if plus.cols() + minus.cols() != n {
            return Err(StateError::KernelNotReachable {
                got: plus.cols() + minus.cols(),
                dim: n,
            });
        }
        (plus, minus)
    } else {
        if let Some(&l) = eig.values.iter().find(|l| l.abs() < ZERO_EIG_TOL) {
            return Err(StateError::KernelInSignedBlock(l));
        }
        let pos = eig.projector(|l| l > 0.0);
        let mut worst: f64 = 0.0;
        for r in pm.rho.matrices() {
            worst = worst.max((&(r * &pos) - &(&pos * r)).max_abs());
        }
        if worst > STRUCT_TOL {
            return Err(StateError::SpectralSubspacesNotInvariant(worst));
        }
        let columns = |keep: &dyn Fn(f64) -> bool| {
            let idx: Vec<usize> = (0..n).filter(|&i| keep(eig.values[i])).collect();
            ComplexMatrix::from_fn(n, idx.len(), |i, j| eig.vectors[(i, idx[j])])
        };
        (columns(&|l| l > 0.0), columns(&|l| l < 0.0))
    };
    let mut basis_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for part in [&plus, &minus] {
        if part.cols() == 0 {
            continue;
        }
        let restricted = &(&part.adjoint() * &pm.a) * part;
        let restricted = hermitize(&restricted);
        let e = restricted.hermitian_eig()?;
        let vecs = part * &e.vectors;
        for j in 0..vecs.cols() {
            basis_cols.push(vecs.col(j));
        }
        values.extend(e.values);
    }
    let n_plus = plus.cols();
    Ok((ComplexMatrix::from_columns(n, &basis_cols), values, n_plus))
}

/// Orthonormal basis of the smallest subspace containing the range of `start`
/// that is invariant under `A` and all `ρ(γ)`.
fn invariant_closure(start: &ComplexMatrix, pm: &PmBlock) -> ComplexMatrix {
    let n = start.rows();
    let mut basis = start.column_space(STRUCT_TOL);
    loop {
        if basis.cols() == 0 {
            return basis;
        }
        let mut cols: Vec<Vec<C64>> = Vec::new();
        let images = std::iter::once(&pm.a)
            .chain(pm.rho.matrices())
            .map(|op| op * &basis)
            .chain(std::iter::once(basis.clone()));
        for img in images {
            for j in 0..img.cols() {
                cols.push(img.col(j));
            }
        }
        let next = ComplexMatrix::from_columns(n, &cols).column_space(STRUCT_TOL);
        if next.cols() == basis.cols() {
            return basis;
        }
        basis = next;
    }
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

/// Parameters of the product state `sγ ↦ ∏ φ(γ_k)` for the positive-definite
/// function `φ(γ) = ⟨rep(γ)ξ, ξ⟩`: `A` is the projection onto `ξ`, restricted to
/// the cyclic subspace generated by `ξ`.
pub fn params_for_phi_sp(rep: &UnitaryRep, xi: &[C64]) -> Result<StateParams, StateError> {
    let d = rep.dim();
    if xi.len() != d {
        return Err(StateError::Shape {
            what: "xi",
            got: (xi.len(), 1),
            expected: (d, 1),
        });
    }
    let n = norm(xi);
    if (n - 1.0).abs() > STRUCT_TOL {
        return Err(StateError::NotUnitVector(n));
    }
    let orbit: Vec<Vec<C64>> = rep.matrices().iter().map(|m| m.mul_vec(xi).expect("shape checked")).collect();
    let cyclic = ComplexMatrix::from_columns(d, &orbit).column_space(STRUCT_TOL);
    let restrict = |m: &ComplexMatrix| &(&cyclic.adjoint() * m) * &cyclic;
    let rho = UnitaryRep::new(rep.group().clone(), rep.matrices().iter().map(restrict).collect())?;
    let xi_col = ComplexMatrix::column(xi);
    let a = hermitize(&restrict(&(&xi_col * &xi_col.adjoint())));
    Ok(StateParams {
        group: rep.group().clone(),
        pm: Some(PmBlock { a, rho }),
        reg: None,
        pm_kernel_ok: true,
    })
}

/// Parameters of the state `γ ↦ ∏ ⟨rep(γ_k)ξ, ξ⟩` on pure colorings, vanishing
/// whenever the permutation part is nontrivial: `A = 0` and the whole space is
/// the regular block.
pub fn params_for_phi_reg(rep: &UnitaryRep, xi: &[C64]) -> Result<StateParams, StateError> {
    if xi.len() != rep.dim() {
        return Err(StateError::Shape {
            what: "xi",
            got: (xi.len(), 1),
            expected: (rep.dim(), 1),
        });
    }
    let n = norm(xi);
    if (n - 1.0).abs() > STRUCT_TOL {
        return Err(StateError::NotUnitVector(n));
    }
    Ok(StateParams {
        group: rep.group().clone(),
        pm: None,
        reg: Some(RegBlock {
            rho11: rep.clone(),
            xi: xi.to_vec(),
            copies: 1,
        }),
        pm_kernel_ok: false,
    })
}
