//! JSON formats for groups, representations and parameter files, and the
//! plain-text element list.
//!
//! * group: `{"order": n, "names": [...], "mul": [[...]]}`, or one of the
//!   built-in names `"trivial"`, `"S3"`, `"cyclic:N"`, or a path to a group file;
//! * representation: `{"dim": d, "mats": [matrix per group element]}`;
//! * matrix: nested rows whose entries are `[re, im]` pairs or plain reals;
//! * parameters: `{"kind": "character", ...}` or `{"kind": "state", ...}`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{Character, CharacterError, CharacterParams, WeightedRep};
use crate::cmatrix::{ComplexMatrix, MatrixError, C64};
use crate::group::{GroupError, GroupTable, RepError, UnitaryRep};
use crate::state::{PmBlock, PsiState, RegBlock, StateError, StateParams};
use crate::wreath::{WreathElement, WreathError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error("element: {0}")]
    Element(#[from] WreathError),
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("invalid representation: {0}")]
    Rep(#[from] RepError),
    #[error("invalid character parameters: {0}")]
    Character(#[from] CharacterError),
    #[error("invalid state parameters: {0}")]
    State(#[from] StateError),
}

impl IoError {
    /// Whether the input parsed but violated a mathematical condition.
    pub fn is_validation(&self) -> bool {
        matches!(self, Self::Group(_) | Self::Rep(_) | Self::Character(_) | Self::State(_))
    }
}

/// A complex number in a file: `[re, im]` or a plain real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexLit {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexLit> for C64 {
    fn from(c: ComplexLit) -> Self {
        match c {
            ComplexLit::Pair([re, im]) => C64::new(re, im),
            ComplexLit::Real(re) => C64::new(re, 0.0),
        }
    }
}

impl From<C64> for ComplexLit {
    fn from(c: C64) -> Self {
        ComplexLit::Pair([c.re, c.im])
    }
}

pub type MatrixLit = Vec<Vec<ComplexLit>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub names: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Inline(GroupFile),
    Named(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub dim: usize,
    pub mats: Vec<MatrixLit>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedRepFile {
    pub weight: f64,
    pub rep: RepFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmFile {
    #[serde(rename = "A")]
    pub a: MatrixLit,
    pub rho: RepFile,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegFile {
    pub rho11: RepFile,
    pub xi: Vec<ComplexLit>,
    #[serde(default = "one")]
    pub copies: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ParamsFile {
    Character {
        group: GroupRef,
        #[serde(default)]
        alphas: Vec<WeightedRepFile>,
        #[serde(default)]
        betas: Vec<WeightedRepFile>,
        #[serde(default)]
        tau: Option<RepFile>,
    },
    State {
        group: GroupRef,
        #[serde(default)]
        pm: Option<PmFile>,
        #[serde(default)]
        reg: Option<RegFile>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        pm_kernel_ok: bool,
    },
}

/// Validated parameters of either kind.
#[derive(Debug, Clone)]
pub enum Params {
    Character(Character),
    State(PsiState),
}

impl Params {
    pub fn group(&self) -> &Arc<GroupTable> {
        match self {
            Self::Character(c) => c.group(),
            Self::State(s) => s.group(),
        }
    }

    pub fn eval(&self, g: &WreathElement) -> C64 {
        match self {
            Self::Character(c) => c.eval(g),
            Self::State(s) => s.eval(g),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Character(_) => "character",
            Self::State(_) => "state",
        }
    }
}

pub fn matrix_from_lit(lit: &MatrixLit) -> Result<ComplexMatrix, IoError> {
    let rows: Vec<Vec<C64>> = lit.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect();
    if rows.is_empty() {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    ComplexMatrix::from_rows(&rows).map_err(|e: MatrixError| IoError::Format(format!("matrix literal: {e}")))
}

pub fn matrix_to_lit(m: &ComplexMatrix) -> MatrixLit {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(ComplexLit::from).collect())
        .collect()
}

/// Builds a group table from its file form.
pub fn group_from_file(file: &GroupFile) -> Result<GroupTable, IoError> {
    if file.order != file.names.len() || file.order != file.mul.len() {
        return Err(IoError::Format(format!(
            "group order {} does not match {} names and {} table rows",
            file.order,
            file.names.len(),
            file.mul.len()
        )));
    }
    Ok(GroupTable::new(file.names.clone(), file.mul.clone())?)
}

pub fn group_to_file(group: &GroupTable) -> GroupFile {
    GroupFile {
        order: group.order(),
        names: group.names().to_vec(),
        mul: group.table().to_vec(),
    }
}

fn builtin_group(name: &str) -> Option<Result<GroupTable, IoError>> {
    match name {
        "trivial" => Some(Ok(GroupTable::trivial())),
        "S3" => Some(Ok(GroupTable::symmetric3())),
        _ => name.strip_prefix("cyclic:").map(|n| {
            let n: usize = n
                .parse()
                .map_err(|_| IoError::Format(format!("bad cyclic group order in {name:?}")))?;
            if n == 0 || n > crate::group::MAX_ORDER {
                return Err(IoError::Format(format!(
                    "cyclic group order must be between 1 and {}",
                    crate::group::MAX_ORDER
                )));
            }
            Ok(GroupTable::cyclic(n))
        }),
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Resolves a group reference; relative paths are taken from `base`.
pub fn resolve_group(r: &GroupRef, base: Option<&Path>) -> Result<GroupTable, IoError> {
    match r {
        GroupRef::Inline(file) => group_from_file(file),
        GroupRef::Named(name) => {
            if let Some(g) = builtin_group(name) {
                return g;
            }
            let path = match base {
                Some(dir) => dir.join(name),
                None => PathBuf::from(name),
            };
            let file: GroupFile = serde_json::from_str(&read(&path)?)?;
            group_from_file(&file)
        }
    }
}

pub fn rep_from_file(file: &RepFile, group: &Arc<GroupTable>) -> Result<UnitaryRep, IoError> {
    let mats = file.mats.iter().map(matrix_from_lit).collect::<Result<Vec<_>, _>>()?;
    if let Some(m) = mats.iter().find(|m| m.shape() != (file.dim, file.dim)) {
        return Err(IoError::Format(format!(
            "representation declares dim {} but has a {}x{} matrix",
            file.dim,
            m.rows(),
            m.cols()
        )));
    }
    Ok(UnitaryRep::new(group.clone(), mats)?)
}

pub fn rep_to_file(rep: &UnitaryRep) -> RepFile {
    RepFile {
        dim: rep.dim(),
        mats: rep.matrices().iter().map(matrix_to_lit).collect(),
    }
}

/// Parses and validates a parameter file's contents.
pub fn params_from_str(text: &str, base: Option<&Path>) -> Result<Params, IoError> {
    let file: ParamsFile = serde_json::from_str(text)?;
    params_from_file(&file, base)
}

pub fn params_from_file(file: &ParamsFile, base: Option<&Path>) -> Result<Params, IoError> {
    match file {
        ParamsFile::Character {
            group,
            alphas,
            betas,
            tau,
        } => {
            let group = Arc::new(resolve_group(group, base)?);
            let weighted = |list: &[WeightedRepFile]| {
                list.iter()
                    .map(|w| Ok(WeightedRep::new(w.weight, rep_from_file(&w.rep, &group)?)))
                    .collect::<Result<Vec<_>, IoError>>()
            };
            let params = CharacterParams {
                alphas: weighted(alphas)?,
                betas: weighted(betas)?,
                tau: tau.as_ref().map(|t| rep_from_file(t, &group)).transpose()?,
                group: group.clone(),
            };
            Ok(Params::Character(Character::new(params)?))
        }
        ParamsFile::State {
            group,
            pm,
            reg,
            pm_kernel_ok,
        } => {
            let group = Arc::new(resolve_group(group, base)?);
            let pm = pm
                .as_ref()
                .map(|p| {
                    Ok::<_, IoError>(PmBlock {
                        a: matrix_from_lit(&p.a)?,
                        rho: rep_from_file(&p.rho, &group)?,
                    })
                })
                .transpose()?;
            let reg = reg
                .as_ref()
                .map(|r| {
                    Ok::<_, IoError>(RegBlock {
                        rho11: rep_from_file(&r.rho11, &group)?,
                        xi: r.xi.iter().map(|&c| c.into()).collect(),
                        copies: r.copies,
                    })
                })
                .transpose()?;
            let params = StateParams {
                group,
                pm,
                reg,
                pm_kernel_ok: *pm_kernel_ok,
            };
            Ok(Params::State(PsiState::new(params)?))
        }
    }
}

/// Reads a parameter file; a group given by path is resolved next to it.
pub fn load_params(path: &Path) -> Result<Params, IoError> {
    params_from_str(&read(path)?, path.parent())
}

pub fn state_params_to_file(p: &StateParams) -> ParamsFile {
    ParamsFile::State {
        group: GroupRef::Inline(group_to_file(&p.group)),
        pm: p.pm.as_ref().map(|pm| PmFile {
            a: matrix_to_lit(&pm.a),
            rho: rep_to_file(&pm.rho),
        }),
        reg: p.reg.as_ref().map(|r| RegFile {
            rho11: rep_to_file(&r.rho11),
            xi: r.xi.iter().map(|&c| c.into()).collect(),
            copies: r.copies,
        }),
        pm_kernel_ok: p.pm_kernel_ok,
    }
}

pub fn character_params_to_file(p: &CharacterParams) -> ParamsFile {
    let weighted = |list: &[WeightedRep]| {
        list.iter()
            .map(|w| WeightedRepFile {
                weight: w.weight,
                rep: rep_to_file(&w.rep),
            })
            .collect()
    };
    ParamsFile::Character {
        group: GroupRef::Inline(group_to_file(&p.group)),
        alphas: weighted(&p.alphas),
        betas: weighted(&p.betas),
        tau: p.tau.as_ref().map(rep_to_file),
    }
}

/// Elements from a JSON array of strings or from lines of text (`#` starts a comment).
pub fn parse_elements(text: &str, group: &GroupTable) -> Result<Vec<WreathElement>, IoError> {
    let items: Vec<String> = if text.trim_start().starts_with('[') && serde_json::from_str::<Vec<String>>(text).is_ok() {
        serde_json::from_str(text)?
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect()
    };
    Ok(items
        .iter()
        .map(|s| WreathElement::parse(s, group))
        .collect::<Result<Vec<_>, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    const THOMA: &str = r#"{
        "kind": "character",
        "group": "trivial",
        "alphas": [{"weight": 0.5, "rep": {"dim": 1, "mats": [[[1]]]}},
                   {"weight": 0.25, "rep": {"dim": 1, "mats": [[[[1, 0]]]]}}],
        "betas": [{"weight": 0.125, "rep": {"dim": 1, "mats": [[[1]]]}}],
        "tau": {"dim": 1, "mats": [[[1]]]}
    }"#;

    #[test]
    fn character_file() {
        let p = params_from_str(THOMA, None).unwrap();
        let g = WreathElement::from_perm("(1 2 3)".parse().unwrap());
        assert!((p.eval(&g) - C64::new(0.142578125, 0.0)).norm() <= 1e-12);
        assert_eq!(p.kind(), "character");
    }

    #[test]
    fn state_file_roundtrip() {
        let params = samples::diagonal_state(&[0.5, -0.25]);
        let text = serde_json::to_string(&state_params_to_file(&params)).unwrap();
        let back = params_from_str(&text, None).unwrap();
        let g = WreathElement::from_perm("(1 2)".parse().unwrap());
        let direct = PsiState::new(params).unwrap().eval(&g);
        assert!((back.eval(&g) - direct).norm() <= 1e-15);
    }

    #[test]
    fn inline_group_and_validation_errors() {
        let text = r#"{"kind": "state",
            "group": {"order": 2, "names": ["e", "a"], "mul": [[0, 1], [1, 0]]},
            "pm": {"A": [[0.9, 0], [0, 0.5]], "rho": {"dim": 2, "mats": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]}},
            "reg": null}"#;
        let err = params_from_str(text, None).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("Tr|A| = 1.4 > 1"), "{err}");

        let heavy = THOMA.replace("0.5,", "0.9,");
        let err = params_from_str(&heavy, None).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("total mass exceeds 1"), "{err}");

        let err = params_from_str("{\"kind\": \"state\"", None).unwrap_err();
        assert!(!err.is_validation());
        let err = params_from_str(r#"{"kind": "state", "group": "cyclic:x"}"#, None).unwrap_err();
        assert!(!err.is_validation());
    }

    #[test]
    fn element_lists() {
        let g = GroupTable::cyclic(2);
        let json = parse_elements(r#"["()", "(1 2)[a@1]"]"#, &g).unwrap();
        let lines = parse_elements("()\n# comment\n(1 2)[a@1]  # trailing\n\n", &g).unwrap();
        assert_eq!(json, lines);
        assert_eq!(json.len(), 2);
        assert!(parse_elements("(1 2)[b@1]", &g).is_err());
    }
}
