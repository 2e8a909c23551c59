//! Standard and random parameter sets for tests, benchmarks and the CLI.

use std::sync::Arc;

use rand::Rng;

use crate::characters::{CharacterParams, WeightedRep};
use crate::cmatrix::{ComplexMatrix, C64};
use crate::group::{GroupTable, UnitaryRep};
use crate::state::{PmBlock, RegBlock, StateParams};

/// Groups with a known list of irreducible representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleGroup {
    Trivial,
    Cyclic(usize),
    S3,
}

impl SampleGroup {
    pub fn table(&self) -> Arc<GroupTable> {
        Arc::new(match self {
            Self::Trivial => GroupTable::trivial(),
            Self::Cyclic(n) => GroupTable::cyclic(*n),
            Self::S3 => GroupTable::symmetric3(),
        })
    }

    pub fn irreps(&self, group: &Arc<GroupTable>) -> Vec<UnitaryRep> {
        match self {
            Self::Trivial => vec![UnitaryRep::trivial(group.clone(), 1)],
            Self::Cyclic(n) => (0..*n)
                .map(|j| UnitaryRep::cyclic_irrep(group.clone(), j).expect("index below the order"))
                .collect(),
            Self::S3 => UnitaryRep::s3_irreps(group.clone()).expect("S3 irreps are valid").to_vec(),
        }
    }
}

fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A random unit vector in `ℂ^n`.
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| random_c64(rng)).collect();
        let norm = crate::cmatrix::norm(&v);
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A random unitary: the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    if n == 0 {
        return ComplexMatrix::identity(0);
    }
    let m = ComplexMatrix::from_fn(n, n, |_, _| random_c64(rng));
    let h = &m + &m.adjoint();
    h.hermitian_eig().expect("random Hermitian matrices diagonalize").vectors
}

/// A random representation of dimension `dim`: a direct sum of irreducibles,
/// conjugated by a random unitary.
pub fn random_rep(group: &Arc<GroupTable>, irreps: &[UnitaryRep], dim: usize, rng: &mut impl Rng) -> UnitaryRep {
    let mut rep: Option<UnitaryRep> = None;
    let mut left = dim;
    while left > 0 {
        let fitting: Vec<&UnitaryRep> = irreps.iter().filter(|r| r.dim() <= left).collect();
        let pick = fitting[rng.gen_range(0..fitting.len())];
        left -= pick.dim();
        rep = Some(match rep {
            None => pick.clone(),
            Some(r) => r.direct_sum(pick).expect("same group"),
        });
    }
    match rep {
        None => UnitaryRep::trivial(group.clone(), 0),
        Some(r) => r.conjugated(&random_unitary(dim, rng)).expect("unitary conjugation"),
    }
}

fn rotated_diag(vals: &[f64], rng: &mut impl Rng) -> ComplexMatrix {
    let u = random_unitary(vals.len(), rng);
    &(&u * &ComplexMatrix::diag_real(vals)) * &u.adjoint()
}

/// Shape of a random state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateShape {
    pub group: SampleGroup,
    pub plus: usize,
    pub minus: usize,
    /// Dimension of `K`; `None` for no regular block (then `Tr|A| = 1`).
    pub reg_dim: Option<usize>,
    /// `Tr|A|` when a regular block is present.
    pub trace: f64,
}

/// Random parameters: `A = A_+ ⊕ A_-` and `ρ = ρ_+ ⊕ ρ_-` rotated by a random
/// unitary, eigenvalues scaled to the requested `Tr|A|`, and a random `ρ11`, `ξ̂`.
pub fn random_state(shape: &StateShape, rng: &mut impl Rng) -> StateParams {
    let group = shape.group.table();
    let irreps = shape.group.irreps(&group);
    let n = shape.plus + shape.minus;
    let trace = if shape.reg_dim.is_some() { shape.trace } else { 1.0 };
    let pm = (n > 0).then(|| {
        let mut raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        for (i, x) in raw.iter_mut().enumerate() {
            *x *= trace / total;
            if i >= shape.plus {
                *x = -*x;
            }
        }
        let a_plus = rotated_diag(&raw[..shape.plus], rng);
        let a_minus = rotated_diag(&raw[shape.plus..], rng);
        let rho = match (shape.plus, shape.minus) {
            (_, 0) => random_rep(&group, &irreps, shape.plus, rng),
            (0, _) => random_rep(&group, &irreps, shape.minus, rng),
            (p, m) => random_rep(&group, &irreps, p, rng)
                .direct_sum(&random_rep(&group, &irreps, m, rng))
                .expect("same group"),
        };
        let w = random_unitary(n, rng);
        let a = a_plus.direct_sum(&a_minus);
        let a = &(&w * &a) * &w.adjoint();
        let hermitian = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
        PmBlock {
            a: hermitian,
            rho: rho.conjugated(&w).expect("unitary conjugation"),
        }
    });
    let reg = shape.reg_dim.map(|k| RegBlock {
        rho11: random_rep(&group, &irreps, k, rng),
        xi: random_unit_vector(k, rng),
        copies: 1,
    });
    StateParams {
        group,
        pm,
        reg,
        pm_kernel_ok: false,
    }
}

/// Trivial group, `A = diag(eigs)`, and a one-dimensional regular block carrying
/// the remaining weight.
pub fn diagonal_state(eigs: &[f64]) -> StateParams {
    let group = Arc::new(GroupTable::trivial());
    let trace: f64 = eigs.iter().map(|l| l.abs()).sum();
    StateParams {
        pm: (!eigs.is_empty()).then(|| PmBlock {
            a: ComplexMatrix::diag_real(eigs),
            rho: UnitaryRep::trivial(group.clone(), eigs.len()),
        }),
        reg: (trace < 1.0 - 1e-12).then(|| RegBlock {
            rho11: UnitaryRep::trivial(group.clone(), 1),
            xi: vec![C64::new(1.0, 0.0)],
            copies: 1,
        }),
        pm_kernel_ok: false,
        group,
    }
}

/// Random character data with weights sorted non-increasing and `τ` the regular
/// representation. `one_dim` restricts `α` and `β` to one-dimensional irreducibles.
pub fn random_character(group: SampleGroup, alphas: usize, betas: usize, one_dim: bool, rng: &mut impl Rng) -> CharacterParams {
    let table = group.table();
    let irreps: Vec<UnitaryRep> = group
        .irreps(&table)
        .into_iter()
        .filter(|r| !one_dim || r.dim() == 1)
        .collect();
    let reps: Vec<UnitaryRep> = (0..alphas + betas)
        .map(|_| irreps[rng.gen_range(0..irreps.len())].clone())
        .collect();
    let mass: f64 = rng.gen_range(0.3..1.0);
    let raw: Vec<f64> = (0..alphas + betas).map(|_| rng.gen_range(0.1..1.0)).collect();
    let weighted: f64 = raw.iter().zip(&reps).map(|(w, r)| w * r.dim() as f64).sum();
    let mut weights: Vec<WeightedRep> = raw
        .iter()
        .zip(reps)
        .map(|(w, r)| WeightedRep::new(w * mass / weighted.max(1e-12), r))
        .collect();
    let mut beta_part = weights.split_off(alphas);
    let by_weight = |a: &WeightedRep, b: &WeightedRep| b.weight.total_cmp(&a.weight);
    weights.sort_by(by_weight);
    beta_part.sort_by(by_weight);
    CharacterParams {
        tau: Some(UnitaryRep::regular(table.clone())),
        group: table,
        alphas: weights,
        betas: beta_part,
    }
}
