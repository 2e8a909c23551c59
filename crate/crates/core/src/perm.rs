//! Finite-support permutations of the positive integers.
//!
//! A [`Permutation`] only stores the points it moves. Points are 1-based;
//! `0` is never a valid point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point 0 is not a positive integer")]
    NonPositive,
    #[error("point {0} appears in more than one cycle")]
    Overlap(usize),
    #[error("image map is not a bijection (point {0})")]
    NotBijection(usize),
    #[error("parameter n must be at least 1")]
    ZeroOrder,
    #[error("cannot parse permutation {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A bijection of `{1, 2, ...}` moving finitely many points.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    moved: BTreeMap<usize, usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds the product of disjoint cycles. Singleton cycles are ignored.
    pub fn from_cycles<C: AsRef<[usize]>>(cycles: &[C]) -> Result<Self, PermError> {
        let mut seen = BTreeSet::new();
        let mut moved = BTreeMap::new();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 {
                    return Err(PermError::NonPositive);
                }
                if !seen.insert(p) {
                    return Err(PermError::Overlap(p));
                }
            }
            if cycle.len() < 2 {
                continue;
            }
            for (i, &p) in cycle.iter().enumerate() {
                moved.insert(p, cycle[(i + 1) % cycle.len()]);
            }
        }
        Ok(Self { moved })
    }

    /// Builds a permutation from explicit `point -> image` pairs; fixed pairs are dropped.
    pub fn from_images<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self, PermError> {
        let mut moved = BTreeMap::new();
        for (p, q) in pairs {
            if p == 0 || q == 0 {
                return Err(PermError::NonPositive);
            }
            if moved.insert(p, q).is_some() {
                return Err(PermError::NotBijection(p));
            }
        }
        let mut images = BTreeSet::new();
        for &q in moved.values() {
            if !images.insert(q) {
                return Err(PermError::NotBijection(q));
            }
        }
        // A finite bijection must map its key set onto itself.
        for &q in &images {
            if !moved.contains_key(&q) {
                return Err(PermError::NotBijection(q));
            }
        }
        moved.retain(|p, q| p != q);
        Ok(Self { moved })
    }

    /// The transposition `(i j)`; identity when `i == j`.
    pub fn transposition(i: usize, j: usize) -> Result<Self, PermError> {
        Self::from_cycles(&[vec![i, j]]).or_else(|e| match e {
            PermError::Overlap(_) => Ok(Self::identity()),
            e => Err(e),
        })
    }

    /// `omega(n)` swaps the blocks `1..=n` and `n+1..=2n`.
    pub fn omega(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroOrder);
        }
        let moved = (1..=n).flat_map(|i| [(i, i + n), (i + n, i)]).collect();
        Ok(Self { moved })
    }

    /// `sigma(n)` is the cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn sigma(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroOrder);
        }
        let cycle: Vec<usize> = (1..=n).collect();
        Self::from_cycles(&[cycle])
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Image of a point, rejecting `0`.
    pub fn apply(&self, i: usize) -> Result<usize, PermError> {
        if i == 0 {
            return Err(PermError::NonPositive);
        }
        Ok(self.image(i))
    }

    /// Image of a point already known to be positive.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.moved.get(&i).copied().unwrap_or(i)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut moved = BTreeMap::new();
        for &p in self.moved.keys().chain(other.moved.keys()) {
            let q = self.image(other.image(p));
            if q != p {
                moved.insert(p, q);
            }
        }
        Self { moved }
    }

    pub fn inverse(&self) -> Self {
        Self {
            moved: self.moved.iter().map(|(&p, &q)| (q, p)).collect(),
        }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.moved.keys().copied().collect()
    }

    /// Largest moved point, or 0 for the identity.
    pub fn max_point(&self) -> usize {
        self.moved.keys().next_back().copied().unwrap_or(0)
    }

    /// Moved points with their images, in increasing point order.
    pub fn moved_points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.moved.iter().map(|(&p, &q)| (p, q))
    }

    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Nontrivial orbits, each starting at its minimum and listed in successor
    /// order; orbits are sorted by their minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.moved.keys() {
            if visited.contains(&start) {
                continue;
            }
            let mut orbit = vec![start];
            visited.insert(start);
            let mut p = self.image(start);
            while p != start {
                visited.insert(p);
                orbit.push(p);
                p = self.image(p);
            }
            out.push(orbit);
        }
        out
    }

    /// Number of cycles of the restriction to `1..=n`, fixed points included.
    pub fn cycle_count_on(&self, n: usize) -> usize {
        let nontrivial = self.cycles();
        let moved: usize = nontrivial.iter().map(Vec::len).sum();
        nontrivial.len() + n.saturating_sub(moved)
    }

    /// The single-orbit permutations `s_p`, one per nontrivial orbit.
    pub fn cycle_factors(&self) -> Vec<Permutation> {
        self.cycles()
            .iter()
            .map(|c| Self::from_cycles(&[c]).expect("orbits are disjoint"))
            .collect()
    }

    /// All permutations of `1..=n` in lexicographic order of their image tuples.
    pub fn all_of_degree(n: usize) -> Vec<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            let perm = Self::from_images(images.iter().enumerate().map(|(i, &q)| (i + 1, q)))
                .expect("image tuples are bijections");
            out.push(perm);
            // next lexicographic permutation
            let Some(i) = (1..images.len()).rev().find(|&i| images[i - 1] < images[i]) else {
                break;
            };
            let j = (i..images.len()).rev().find(|&j| images[j] > images[i - 1]).unwrap();
            images.swap(i - 1, j);
            images[i..].reverse();
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses cycle notation such as `(1 2)(3 4 5)`; `()` or an empty string is the identity.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PermError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(err("expected '('"));
            };
            let Some(close) = inner.find(')') else {
                return Err(err("unclosed '('"));
            };
            let body = &inner[..close];
            if body.contains('(') {
                return Err(err("nested '('"));
            }
            let cycle = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(&format!("bad integer {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = inner[close + 1..].trim_start();
        }
        Self::from_cycles(&cycles)
    }
}
