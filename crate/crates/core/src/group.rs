//! Finite groups given by multiplication tables, and their unitary representations.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use thiserror::Error;

use crate::cmatrix::{ComplexMatrix, C64};
use crate::perm::Permutation;

/// Largest group order accepted; associativity is checked on every triple.
pub const MAX_ORDER: usize = 64;
/// Tolerance for unitarity and homomorphism residuals of representations.
pub const REP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("group must have at least one element")]
    Empty,
    #[error("group order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("invalid element name {0:?}")]
    BadName(String),
    #[error("multiplication table must be {0}x{0}")]
    TableShape(usize),
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0:?} has no inverse")]
    NoInverse(String),
    #[error("associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("permutations are not closed under composition")]
    NotClosed,
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("expected one matrix per group element ({expected}), got {got}")]
    MatrixCount { expected: usize, got: usize },
    #[error("matrix for {element:?} is {shape:?}, expected {dim}x{dim}")]
    Shape {
        element: String,
        shape: (usize, usize),
        dim: usize,
    },
    #[error("matrix for {element:?} is not unitary (residual {residual:e})")]
    NotUnitary { element: String, residual: f64 },
    #[error("rep({g})·rep({h}) != rep({g}{h}) (residual {residual:e})")]
    NotHomomorphism { g: String, h: String, residual: f64 },
    #[error("irrep index {j} must satisfy 0 <= j < {n}")]
    IrrepIndex { n: usize, j: usize },
    #[error("group is not cyclic of order {0} in standard naming")]
    NotCyclic(usize),
    #[error("representations are over different groups")]
    GroupMismatch,
    #[error("dimension must be positive")]
    ZeroDim,
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    by_name: BTreeMap<String, usize>,
}

impl GroupTable {
    /// Validates a table, inferring the identity and computing inverses.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if names.len() != n {
            return Err(GroupError::NameCount {
                expected: n,
                got: names.len(),
            });
        }
        let mut by_name = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || "@,[]()".contains(c)) {
                return Err(GroupError::BadName(name.clone()));
            }
            if by_name.insert(name.clone(), i).is_some() {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::TableShape(n));
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                    .ok_or_else(|| GroupError::NoInverse(names[g].clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            names,
            mul,
            identity,
            inv,
            by_name,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n` with elements `e, a, a2, a3, ...`; element `k` is `a^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "cyclic order must be in 1..={MAX_ORDER}");
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                k => format!("a{k}"),
            })
            .collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(names, mul).expect("cyclic tables are groups")
    }

    /// The symmetric group on three letters with elements `e, r, r2, s, sr, sr2`,
    /// where `r = (1 2 3)` and `s = (1 2)`.
    pub fn symmetric3() -> Self {
        let (names, perms) = s3_elements();
        Self::from_permutations(names, &perms).expect("S3 is closed")
    }

    /// The group formed by a list of permutations closed under composition.
    pub fn from_permutations(names: Vec<String>, perms: &[Permutation]) -> Result<Self, GroupError> {
        let index: BTreeMap<String, usize> = perms.iter().enumerate().map(|(i, p)| (p.to_string(), i)).collect();
        let mut mul = Vec::with_capacity(perms.len());
        for a in perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in perms {
                let ab = a.compose(b).to_string();
                row.push(*index.get(&ab).ok_or(GroupError::NotClosed)?);
            }
            mul.push(row);
        }
        Self::new(names, mul)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, GroupError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| GroupError::UnknownName(name.to_string()))
    }

    pub fn check_index(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order() {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange(g))
        }
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

fn s3_elements() -> (Vec<String>, Vec<Permutation>) {
    let r: Permutation = "(1 2 3)".parse().expect("literal");
    let s: Permutation = "(1 2)".parse().expect("literal");
    let r2 = r.compose(&r);
    let perms = vec![
        Permutation::identity(),
        r.clone(),
        r2.clone(),
        s.clone(),
        s.compose(&r),
        s.compose(&r2),
    ];
    let names = ["e", "r", "r2", "s", "sr", "sr2"].map(String::from).to_vec();
    (names, perms)
}

/// A unitary representation stored as one matrix per group element.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: Arc<GroupTable>,
    dim: usize,
    mats: Vec<ComplexMatrix>,
}

impl UnitaryRep {
    /// Validates unitarity and the homomorphism property within [`REP_TOL`].
    pub fn new(group: Arc<GroupTable>, mats: Vec<ComplexMatrix>) -> Result<Self, RepError> {
        if mats.len() != group.order() {
            return Err(RepError::MatrixCount {
                expected: group.order(),
                got: mats.len(),
            });
        }
        let dim = mats[0].rows();
        if dim == 0 {
            return Err(RepError::ZeroDim);
        }
        for (g, m) in mats.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(RepError::Shape {
                    element: group.name(g).to_string(),
                    shape: m.shape(),
                    dim,
                });
            }
            let residual = m.unitary_residual();
            if residual > REP_TOL {
                return Err(RepError::NotUnitary {
                    element: group.name(g).to_string(),
                    residual,
                });
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                let residual = (&mats[g] * &mats[h]).max_abs_diff(&mats[gh]).expect("same shape");
                if residual > REP_TOL {
                    return Err(RepError::NotHomomorphism {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                        residual,
                    });
                }
            }
        }
        Ok(Self { group, dim, mats })
    }

    /// The `dim`-fold multiple of the trivial representation.
    pub fn trivial(group: Arc<GroupTable>, dim: usize) -> Self {
        let mats = vec![ComplexMatrix::identity(dim); group.order()];
        Self::new(group, mats).expect("identity matrices form a representation")
    }

    /// One-dimensional representation from a list of unit-modulus values.
    pub fn one_dim(group: Arc<GroupTable>, values: &[C64]) -> Result<Self, RepError> {
        let mats = values.iter().map(|&v| ComplexMatrix::from_fn(1, 1, |_, _| v)).collect();
        Self::new(group, mats)
    }

    /// Left-regular representation: `rep(g) e_h = e_{gh}`.
    pub fn regular(group: Arc<GroupTable>) -> Self {
        let n = group.order();
        let mats = (0..n)
            .map(|g| {
                let mut m = ComplexMatrix::zeros(n, n);
                for h in 0..n {
                    m[(group.mul(g, h), h)] = C64::new(1.0, 0.0);
                }
                m
            })
            .collect();
        Self::new(group, mats).expect("left translation is a representation")
    }

    /// The character `a^k ↦ exp(2πi·jk/n)` of [`GroupTable::cyclic`].
    pub fn cyclic_irrep(group: Arc<GroupTable>, j: usize) -> Result<Self, RepError> {
        let n = group.order();
        if j >= n {
            return Err(RepError::IrrepIndex { n, j });
        }
        if *group != GroupTable::cyclic(n) {
            return Err(RepError::NotCyclic(n));
        }
        let values: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(1.0, 2.0 * PI * ((j * k) % n) as f64 / n as f64))
            .map(snap_unit)
            .collect();
        Self::one_dim(group, &values)
    }

    /// Trivial, sign and two-dimensional standard representations of [`GroupTable::symmetric3`].
    pub fn s3_irreps(group: Arc<GroupTable>) -> Result<[Self; 3], RepError> {
        if *group != GroupTable::symmetric3() {
            return Err(RepError::GroupMismatch);
        }
        let (_, perms) = s3_elements();
        let signs: Vec<C64> = perms.iter().map(|p| C64::new(p.sign() as f64, 0.0)).collect();
        // orthonormal basis of the sum-zero plane in C^3
        let a = 1.0 / 2f64.sqrt();
        let b = 1.0 / 6f64.sqrt();
        let basis = ComplexMatrix::from_real_rows(&[vec![a, b], vec![-a, b], vec![0.0, -2.0 * b]]).expect("literal");
        let standard = perms
            .iter()
            .map(|p| {
                let perm_matrix = ComplexMatrix::from_fn(3, 3, |i, j| {
                    if p.image(j + 1) == i + 1 {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                });
                &(&basis.adjoint() * &perm_matrix) * &basis
            })
            .collect();
        Ok([
            Self::trivial(group.clone(), 1),
            Self::one_dim(group.clone(), &signs)?,
            Self::new(group, standard)?,
        ])
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch);
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self {
            group: self.group.clone(),
            dim: self.dim + other.dim,
            mats,
        })
    }

    /// `V rep(g) V*` for a unitary `V`.
    pub fn conjugated(&self, v: &ComplexMatrix) -> Result<Self, RepError> {
        let vs = v.adjoint();
        let mats = self.mats.iter().map(|m| &(v * m) * &vs).collect();
        Self::new(self.group.clone(), mats)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    pub fn character(&self, g: usize) -> C64 {
        self.mats[g].trace().expect("square")
    }

    /// `trace(rep(g)) / dim`.
    pub fn normalized_char(&self, g: usize) -> C64 {
        self.character(g) / self.dim as f64
    }
}

fn snap_unit(z: C64) -> C64 {
    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    C64::new(snap(z.re), snap(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: GroupTable) -> Arc<GroupTable> {
        Arc::new(g)
    }

    #[test]
    fn cyclic_examples() {
        let g = GroupTable::cyclic(2);
        assert_eq!(g.names(), ["e", "a"]);
        let a = g.index_of("a").unwrap();
        assert_eq!(g.mul(a, a), g.identity());
        assert_eq!(GroupTable::cyclic(4).names()[3], "a3");
        assert!(g.is_abelian());
    }

    #[test]
    fn symmetric3_is_nonabelian() {
        let g = GroupTable::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = g.index_of("r").unwrap();
        let s = g.index_of("s").unwrap();
        assert_eq!(g.mul(s, r), g.index_of("sr").unwrap());
        assert_eq!(g.inv(r), g.index_of("r2").unwrap());
        assert_eq!(g.inv(s), s);
    }

    #[test]
    fn broken_associativity_names_triple() {
        // a loop with identity and inverses that is not associative
        let names: Vec<String> = ["e", "a", "b", "c", "d"].map(String::from).to_vec();
        let mul = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::new(names, mul).unwrap_err();
        match err {
            GroupError::NotAssociative { a, b, c } => {
                assert!(!a.is_empty() && !b.is_empty() && !c.is_empty());
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn table_validation_errors() {
        let n = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(GroupTable::new(vec![], vec![]), Err(GroupError::Empty));
        assert!(matches!(
            GroupTable::new(n(&["e", "e"]), vec![vec![0, 1], vec![1, 0]]),
            Err(GroupError::DuplicateName(_))
        ));
        assert!(matches!(
            GroupTable::new(n(&["e", "a"]), vec![vec![0, 1], vec![1, 2]]),
            Err(GroupError::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            GroupTable::new(n(&["e", "a"]), vec![vec![0, 0], vec![0, 0]]),
            Err(GroupError::NoIdentity)
        ));
        assert!(matches!(
            GroupTable::new(n(&["e", "a@"]), vec![vec![0, 1], vec![1, 0]]),
            Err(GroupError::BadName(_))
        ));
        let big = MAX_ORDER + 1;
        let mul = (0..big).map(|i| (0..big).map(|j| (i + j) % big).collect()).collect();
        let names = (0..big).map(|i| format!("g{i}")).collect();
        assert_eq!(GroupTable::new(names, mul), Err(GroupError::TooLarge(big)));
    }

    #[test]
    fn regular_rep_character() {
        let g = arc(GroupTable::cyclic(2));
        let reg = UnitaryRep::regular(g.clone());
        assert_eq!(reg.normalized_char(1), C64::new(0.0, 0.0));
        assert_eq!(reg.normalized_char(g.identity()), C64::new(1.0, 0.0));
    }

    #[test]
    fn cyclic_irrep_values() {
        let g = arc(GroupTable::cyclic(4));
        let r = UnitaryRep::cyclic_irrep(g.clone(), 1).unwrap();
        assert_eq!(r.matrix(1)[(0, 0)], C64::new(0.0, 1.0));
        assert!(matches!(UnitaryRep::cyclic_irrep(g, 4), Err(RepError::IrrepIndex { .. })));
    }

    #[test]
    fn s3_irreps_validate() {
        let g = arc(GroupTable::symmetric3());
        let [triv, sign, std] = UnitaryRep::s3_irreps(g.clone()).unwrap();
        assert_eq!(std.dim(), 2);
        let s = g.index_of("s").unwrap();
        let r = g.index_of("r").unwrap();
        assert_eq!(sign.character(s), C64::new(-1.0, 0.0));
        assert!((std.character(r) - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(std.character(s).norm() < 1e-12);
        // character orthogonality: the three irreps are pairwise orthogonal
        let inner = |x: &UnitaryRep, y: &UnitaryRep| -> C64 {
            (0..6).map(|h| x.character(h) * y.character(h).conj()).sum::<C64>() / 6.0
        };
        assert!((inner(&std, &std) - 1.0).norm() < 1e-12);
        assert!(inner(&std, &triv).norm() < 1e-12);
        assert!(inner(&sign, &triv).norm() < 1e-12);
    }

    #[test]
    fn perturbed_rep_is_rejected() {
        let g = arc(GroupTable::symmetric3());
        let [_, _, std] = UnitaryRep::s3_irreps(g.clone()).unwrap();
        let mut mats = std.matrices().to_vec();
        mats[1][(0, 1)] += C64::new(1e-6, 0.0);
        assert!(UnitaryRep::new(g, mats).is_err());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let g = arc(GroupTable::cyclic(3));
        let values = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(matches!(UnitaryRep::one_dim(g, &values), Err(RepError::NotHomomorphism { .. })));
    }

    #[test]
    fn direct_sum_characters_add() {
        let g = arc(GroupTable::symmetric3());
        let [triv, sign, std] = UnitaryRep::s3_irreps(g.clone()).unwrap();
        let sum = std.direct_sum(&sign).unwrap().direct_sum(&triv).unwrap();
        assert_eq!(sum.dim(), 4);
        for h in 0..6 {
            let expect = std.character(h) + sign.character(h) + triv.character(h);
            assert!((sum.character(h) - expect).norm() <= 1e-12);
        }
        let other = UnitaryRep::trivial(arc(GroupTable::cyclic(6)), 1);
        assert!(matches!(triv.direct_sum(&other), Err(RepError::GroupMismatch)));
    }
}
