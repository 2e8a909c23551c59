//! Indecomposable characters of `Γ ≀ S_∞` given by Thoma-type data.
//!
//! Parameters are two non-increasing weight lists `α_k`, `β_k`, each weight paired
//! with a representation of `Γ`, plus a representation `τ` carrying the leftover
//! mass `δ = 1 − Σ α_k·dim ρ_k − Σ β_k·dim ϱ_k`. On a generalized cycle `p` the
//! character takes the value
//!
//! * singleton `{n}`: `Σ α_k tr ρ_k(γ_n) + Σ β_k tr ϱ_k(γ_n) + δ χ_τ(γ_n)`,
//! * `|p| > 1`: `Σ α_k^{|p|} tr ρ_k(γ̃(p)) + (−1)^{|p|−1} Σ β_k^{|p|} tr ϱ_k(γ̃(p))`,
//!
//! with `tr` the normalized trace, and it is multiplicative over generalized cycles.
//! For trivial `Γ` this is Thoma's formula `Σ α^l + (−1)^{l−1} Σ β^l`.

use std::sync::Arc;

use thiserror::Error;

use crate::cmatrix::C64;
use crate::group::{GroupTable, UnitaryRep};
use crate::wreath::{GeneralizedCycle, WreathElement};

/// Tolerance on `δ ≥ 0` and on ties in the non-increasing weight check.
pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharacterError {
    #[error("total mass exceeds 1: δ = 1 − Σα·dim ρ − Σβ·dim ϱ = {delta} < 0")]
    MassExceedsOne { delta: f64 },
    #[error("{list} weights must be non-increasing: entry {index} ({next}) exceeds the entry before it")]
    NotNonIncreasing { list: &'static str, index: usize, next: f64 },
    #[error("{list} weight {index} is {weight}, expected a value in (0, 1]")]
    WeightOutOfRange { list: &'static str, index: usize, weight: f64 },
    #[error("δ = {delta} > 0 requires a representation τ")]
    MissingTau { delta: f64 },
    #[error("all representations must be over the parameter group")]
    GroupMismatch,
}

#[derive(Debug, Clone)]
pub struct WeightedRep {
    pub weight: f64,
    pub rep: UnitaryRep,
}

impl WeightedRep {
    pub fn new(weight: f64, rep: UnitaryRep) -> Self {
        Self { weight, rep }
    }
}

/// Raw character data; see [`Character::new`] for validation.
#[derive(Debug, Clone)]
pub struct CharacterParams {
    pub group: Arc<GroupTable>,
    pub alphas: Vec<WeightedRep>,
    pub betas: Vec<WeightedRep>,
    pub tau: Option<UnitaryRep>,
}

impl CharacterParams {
    /// Thoma parameters on the trivial group; `τ` is supplied whenever mass is left over.
    pub fn thoma(alphas: &[f64], betas: &[f64]) -> Self {
        let group = Arc::new(GroupTable::trivial());
        let one = UnitaryRep::trivial(group.clone(), 1);
        let wrap = |ws: &[f64]| ws.iter().map(|&w| WeightedRep::new(w, one.clone())).collect();
        Self {
            alphas: wrap(alphas),
            betas: wrap(betas),
            tau: Some(one.clone()),
            group,
        }
    }
}

/// Validated character parameters with the derived mass `δ`.
#[derive(Debug, Clone)]
pub struct Character {
    params: CharacterParams,
    delta: f64,
}

impl Character {
    pub fn new(params: CharacterParams) -> Result<Self, CharacterError> {
        let group = &params.group;
        let reps = params.alphas.iter().chain(&params.betas).map(|w| &w.rep).chain(&params.tau);
        for rep in reps {
            if rep.group() != group {
                return Err(CharacterError::GroupMismatch);
            }
        }
        for (list, ws) in [("alpha", &params.alphas), ("beta", &params.betas)] {
            for (index, w) in ws.iter().enumerate() {
                if !(w.weight > 0.0 && w.weight <= 1.0 + WEIGHT_TOL) {
                    return Err(CharacterError::WeightOutOfRange {
                        list,
                        index,
                        weight: w.weight,
                    });
                }
                if index > 0 && w.weight > ws[index - 1].weight + WEIGHT_TOL {
                    return Err(CharacterError::NotNonIncreasing {
                        list,
                        index,
                        next: w.weight,
                    });
                }
            }
        }
        let mass: f64 = params
            .alphas
            .iter()
            .chain(&params.betas)
            .map(|w| w.weight * w.rep.dim() as f64)
            .sum();
        let delta = 1.0 - mass;
        if delta < -WEIGHT_TOL {
            return Err(CharacterError::MassExceedsOne { delta });
        }
        if delta > WEIGHT_TOL && params.tau.is_none() {
            return Err(CharacterError::MissingTau { delta });
        }
        Ok(Self { params, delta })
    }

    pub fn params(&self) -> &CharacterParams {
        &self.params
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.params.group
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eval_cycle(&self, c: &GeneralizedCycle) -> C64 {
        let group = &self.params.group;
        if c.is_singleton() {
            let g = c.color_at(c.orbit()[0], group);
            let weighted: C64 = self
                .params
                .alphas
                .iter()
                .chain(&self.params.betas)
                .map(|w| w.rep.normalized_char(g) * w.weight)
                .sum();
            let rest = match &self.params.tau {
                Some(tau) if self.delta > WEIGHT_TOL => tau.normalized_char(g) * self.delta,
                _ => C64::new(0.0, 0.0),
            };
            return weighted + rest;
        }
        let l = c.len() as i32;
        let g = c.invariant(group);
        let power_sum = |ws: &[WeightedRep]| -> C64 { ws.iter().map(|w| w.rep.normalized_char(g) * w.weight.powi(l)).sum() };
        let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
        power_sum(&self.params.alphas) + power_sum(&self.params.betas) * sign
    }

    pub fn eval(&self, g: &WreathElement) -> C64 {
        g.generalized_cycles()
            .iter()
            .fold(C64::new(1.0, 0.0), |acc, c| acc * self.eval_cycle(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn close(a: C64, b: f64) -> bool {
        (a - C64::new(b, 0.0)).norm() <= 1e-12
    }

    fn cyclic2_params(alpha_rep: usize) -> (Arc<GroupTable>, CharacterParams) {
        let g = Arc::new(GroupTable::cyclic(2));
        let rep = UnitaryRep::cyclic_irrep(g.clone(), alpha_rep).unwrap();
        let params = CharacterParams {
            group: g.clone(),
            alphas: vec![WeightedRep::new(0.5, rep)],
            betas: vec![],
            tau: Some(UnitaryRep::regular(g.clone())),
        };
        (g, params)
    }

    #[test]
    fn validation_examples() {
        let (_, params) = cyclic2_params(0);
        let ch = Character::new(params).unwrap();
        assert!((ch.delta() - 0.5).abs() < 1e-15);

        let g = Arc::new(GroupTable::cyclic(2));
        let two = UnitaryRep::trivial(g.clone(), 2);
        let heavy = CharacterParams {
            group: g.clone(),
            alphas: vec![WeightedRep::new(0.8, two)],
            betas: vec![],
            tau: None,
        };
        let err = Character::new(heavy).unwrap_err();
        assert!(matches!(err, CharacterError::MassExceedsOne { delta } if (delta + 0.6).abs() < 1e-12));
        assert!(err.to_string().contains("exceeds 1"));

        let unsorted = CharacterParams::thoma(&[0.2, 0.3], &[]);
        assert!(matches!(Character::new(unsorted), Err(CharacterError::NotNonIncreasing { .. })));
        assert!(Character::new(CharacterParams::thoma(&[0.0], &[])).is_err());
        let mut no_tau = CharacterParams::thoma(&[0.5], &[]);
        no_tau.tau = None;
        assert!(matches!(Character::new(no_tau), Err(CharacterError::MissingTau { .. })));
    }

    #[test]
    fn thoma_cycle_values() {
        let ch = Character::new(CharacterParams::thoma(&[0.5, 0.25], &[0.125])).unwrap();
        let three = WreathElement::from_perm(Permutation::sigma(3).unwrap());
        assert!(close(ch.eval(&three), 0.142578125));
        let two = WreathElement::from_perm(Permutation::sigma(2).unwrap());
        assert!(close(ch.eval(&two), 0.25 + 0.0625 - 0.015625));

        let regular = Character::new(CharacterParams::thoma(&[], &[])).unwrap();
        for l in 2..6 {
            let c = WreathElement::from_perm(Permutation::sigma(l).unwrap());
            assert!(close(regular.eval(&c), 0.0));
        }
    }

    #[test]
    fn colored_singleton_value() {
        let (g, params) = cyclic2_params(1);
        let ch = Character::new(params).unwrap();
        let a = g.index_of("a").unwrap();
        let lone = WreathElement::color(9, a, &g).unwrap();
        assert!(close(ch.eval(&lone), -0.5));
        assert!(close(ch.eval(&WreathElement::color(1, a, &g).unwrap()), -0.5));
    }

    #[test]
    fn product_over_cycles() {
        let ch = Character::new(CharacterParams::thoma(&[0.5], &[])).unwrap();
        let x = WreathElement::from_perm("(1 2)(3 4)".parse().unwrap());
        assert!(close(ch.eval(&x), 0.0625));
        assert!(close(ch.eval(&WreathElement::identity()), 1.0));
    }

    #[test]
    fn cycle_value_uses_invariant() {
        let g = Arc::new(GroupTable::symmetric3());
        let [_, sign, std] = UnitaryRep::s3_irreps(g.clone()).unwrap();
        let params = CharacterParams {
            group: g.clone(),
            alphas: vec![WeightedRep::new(0.3, std)],
            betas: vec![WeightedRep::new(0.2, sign)],
            tau: Some(UnitaryRep::regular(g.clone())),
        };
        let ch = Character::new(params).unwrap();
        let x = WreathElement::parse("(1 2 3)[r@1,s@2]", &g).unwrap();
        // γ̃ = γ1·γ3·γ2 = r·s, a reflection: std char 0, sign −1
        let expect = 0.3f64.powi(3) * 0.0 + 0.2f64.powi(3) * -1.0;
        assert!(close(ch.eval(&x), expect));
        // σ-normal form gives the same value
        let nf = x.generalized_cycles()[0].normal_form();
        assert!((ch.eval(&nf) - ch.eval(&x)).norm() <= 1e-12);
    }
}
