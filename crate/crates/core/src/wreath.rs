//! Finitely supported elements `sγ` of the wreath product of a finite group with
//! the finite permutations, and their decomposition into generalized cycles.
//!
//! An element is a pair `(s, γ)` acting on `Γ × {1, 2, ...}` by
//! `(h, i) ↦ (γ_i·h, s(i))`; the product is composition of these actions, so
//! `(s, γ)(s', γ') = (s∘s', δ)` with `δ_i = γ_{s'(i)}·γ'_i`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::group::{GroupError, GroupTable};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WreathError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("color position must be a positive integer")]
    ZeroPosition,
    #[error("position {0} is colored twice")]
    DuplicatePosition(usize),
    #[error("cannot parse element {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// An element `sγ` with colors stored only where they differ from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WreathElement {
    perm: Permutation,
    colors: BTreeMap<usize, usize>,
}

impl WreathElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_perm(perm: Permutation) -> Self {
        Self {
            perm,
            colors: BTreeMap::new(),
        }
    }

    /// Builds an element, dropping identity colors and checking indices against `group`.
    pub fn new<I>(perm: Permutation, colors: I, group: &GroupTable) -> Result<Self, WreathError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut map = BTreeMap::new();
        for (pos, g) in colors {
            if pos == 0 {
                return Err(WreathError::ZeroPosition);
            }
            group.check_index(g)?;
            if map.insert(pos, g).is_some() {
                return Err(WreathError::DuplicatePosition(pos));
            }
        }
        map.retain(|_, g| *g != group.identity());
        Ok(Self { perm, colors: map })
    }

    /// A single colored point `g@pos` with trivial permutation part.
    pub fn color(pos: usize, g: usize, group: &GroupTable) -> Result<Self, WreathError> {
        Self::new(Permutation::identity(), [(pos, g)], group)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// Non-identity colors as `(position, element)` in increasing position order.
    pub fn colors(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors.iter().map(|(&p, &g)| (p, g))
    }

    pub fn color_map(&self) -> &BTreeMap<usize, usize> {
        &self.colors
    }

    pub fn color_at(&self, pos: usize, group: &GroupTable) -> usize {
        self.colors.get(&pos).copied().unwrap_or(group.identity())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.colors.is_empty()
    }

    /// Moved points of `s` together with colored positions.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = self.perm.support();
        s.extend(self.colors.keys().copied());
        s
    }

    /// Largest point in the support, or 0 for the identity.
    pub fn max_point(&self) -> usize {
        let c = self.colors.keys().next_back().copied().unwrap_or(0);
        self.perm.max_point().max(c)
    }

    pub fn multiply(&self, other: &Self, group: &GroupTable) -> Self {
        let perm = self.perm.compose(&other.perm);
        let other_inv = other.perm.inverse();
        let mut positions: BTreeSet<usize> = self.colors.keys().map(|&j| other_inv.image(j)).collect();
        positions.extend(other.colors.keys().copied());
        let colors = positions
            .into_iter()
            .filter_map(|i| {
                let g = group.mul(self.color_at(other.perm.image(i), group), other.color_at(i, group));
                (g != group.identity()).then_some((i, g))
            })
            .collect();
        Self { perm, colors }
    }

    pub fn inverse(&self, group: &GroupTable) -> Self {
        let perm = self.perm.inverse();
        // δ_j = γ_{s⁻¹(j)}⁻¹, i.e. the color at i moves to s(i) and is inverted
        let colors = self
            .colors
            .iter()
            .map(|(&i, &g)| (self.perm.image(i), group.inv(g)))
            .collect();
        Self { perm, colors }
    }

    /// `h·g·h⁻¹` for a permutation `h`: the color at `i` moves to `h(i)`.
    pub fn conjugate(&self, h: &Permutation) -> Self {
        let perm = h.compose(&self.perm).compose(&h.inverse());
        let colors = self.colors.iter().map(|(&i, &g)| (h.image(i), g)).collect();
        Self { perm, colors }
    }

    /// Relabels every point `i` as `i + k`.
    pub fn shifted(&self, k: usize) -> Self {
        let perm = Permutation::from_images(self.perm.moved_points().map(|(p, q)| (p + k, q + k)))
            .expect("shifting preserves bijectivity");
        let colors = self.colors.iter().map(|(&i, &g)| (i + k, g)).collect();
        Self { perm, colors }
    }

    /// Orbits of `s` with their colors, followed by colored fixed points as
    /// singletons, sorted by least position.
    pub fn generalized_cycles(&self) -> Vec<GeneralizedCycle> {
        let mut out: Vec<GeneralizedCycle> = self
            .perm
            .cycles()
            .into_iter()
            .map(|orbit| {
                let colors = orbit
                    .iter()
                    .filter_map(|p| self.colors.get(p).map(|&g| (*p, g)))
                    .collect();
                GeneralizedCycle::new_unchecked(orbit, colors)
            })
            .collect();
        for (&pos, &g) in &self.colors {
            if self.perm.image(pos) == pos {
                out.push(GeneralizedCycle::new_unchecked(vec![pos], BTreeMap::from([(pos, g)])));
            }
        }
        out.sort_by_key(|c| c.orbit[0]);
        out
    }

    /// True for a single colored point, or a cyclic `s` whose colors lie on its support.
    pub fn is_generated_cycle(&self) -> bool {
        let cycles = self.perm.cycles();
        match cycles.len() {
            0 => self.colors.len() == 1,
            1 => self.colors.keys().all(|p| self.perm.image(*p) != *p),
            _ => false,
        }
    }

    /// Canonical text form `(cycles)[name@pos,...]`, brackets omitted when uncolored.
    pub fn format(&self, group: &GroupTable) -> String {
        let mut out = self.perm.to_string();
        if !self.colors.is_empty() {
            let parts: Vec<String> = self
                .colors
                .iter()
                .map(|(&p, &g)| format!("{}@{}", group.name(g), p))
                .collect();
            out.push('[');
            out.push_str(&parts.join(","));
            out.push(']');
        }
        out
    }

    pub fn parse(text: &str, group: &GroupTable) -> Result<Self, WreathError> {
        ElementSyntax::parse(text)?.resolve(group)
    }
}

/// The group-independent reading of the element grammar: a permutation and a
/// list of `(color name, position)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSyntax {
    pub perm: Permutation,
    pub colors: Vec<(String, usize)>,
}

impl ElementSyntax {
    pub fn parse(text: &str) -> Result<Self, WreathError> {
        let err = |reason: String| WreathError::Parse {
            text: text.to_string(),
            reason,
        };
        let trimmed = text.trim();
        let (perm_text, color_text) = match trimmed.find('[') {
            Some(open) => {
                let Some(body) = trimmed[open + 1..].strip_suffix(']') else {
                    return Err(err("expected ']' at end of color list".into()));
                };
                (&trimmed[..open], Some(body))
            }
            None => (trimmed, None),
        };
        if perm_text.trim().is_empty() && color_text.is_none() {
            return Err(err("empty element; write () for the identity".into()));
        }
        let perm: Permutation = perm_text.parse()?;
        let mut colors = Vec::new();
        let mut seen = BTreeSet::new();
        if let Some(body) = color_text {
            for item in body.split(',') {
                let item = item.trim();
                let Some((name, pos)) = item.split_once('@') else {
                    return Err(err(format!("color {item:?} is not of the form name@pos")));
                };
                let name = name.trim();
                if name.is_empty() {
                    return Err(err(format!("missing color name in {item:?}")));
                }
                let pos: usize = pos
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad position in {item:?}")))?;
                if pos == 0 {
                    return Err(WreathError::ZeroPosition);
                }
                if !seen.insert(pos) {
                    return Err(WreathError::DuplicatePosition(pos));
                }
                colors.push((name.to_string(), pos));
            }
        }
        Ok(Self { perm, colors })
    }

    pub fn resolve(&self, group: &GroupTable) -> Result<WreathElement, WreathError> {
        let colors = self
            .colors
            .iter()
            .map(|(name, pos)| Ok((*pos, group.index_of(name)?)))
            .collect::<Result<Vec<_>, WreathError>>()?;
        WreathElement::new(self.perm.clone(), colors, group)
    }
}

/// One orbit `p` of `s` with the colors `γ(p)` it carries.
///
/// The orbit is listed in successor order starting at its least point. A colored
/// fixed point is a singleton cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedCycle {
    orbit: Vec<usize>,
    perm: Permutation,
    colors: BTreeMap<usize, usize>,
}

impl GeneralizedCycle {
    fn new_unchecked(orbit: Vec<usize>, colors: BTreeMap<usize, usize>) -> Self {
        let perm = Permutation::from_cycles(std::slice::from_ref(&orbit)).expect("orbits are valid cycles");
        Self { orbit, perm, colors }
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.orbit.len() == 1
    }

    /// The single-orbit permutation `s_p`.
    pub fn cycle_perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn color_at(&self, pos: usize, group: &GroupTable) -> usize {
        self.colors.get(&pos).copied().unwrap_or(group.identity())
    }

    pub fn colors(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors.iter().map(|(&p, &g)| (p, g))
    }

    /// Positions `k, s⁻¹(k), s⁻²(k), ...` with `k` the least point of the orbit.
    pub fn backward_positions(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.orbit.len();
        (0..n).map(move |i| self.orbit[(n - i) % n])
    }

    /// `γ̃(p) = γ_k·γ_{s⁻¹(k)}·…·γ_{s^{-|p|+1}(k)}` with `k = min p`.
    pub fn invariant(&self, group: &GroupTable) -> usize {
        self.backward_positions()
            .fold(group.identity(), |acc, pos| group.mul(acc, self.color_at(pos, group)))
    }

    pub fn to_element(&self) -> WreathElement {
        WreathElement {
            perm: self.perm.clone(),
            colors: self.colors.clone(),
        }
    }

    /// A permutation `h` with `h(orbit[i]) = i + 1`, so that conjugating by `h`
    /// turns `s_p` into `σ_{|p|}`.
    pub fn normalizing_perm(&self) -> Permutation {
        let n = self.orbit.len();
        let mut pairs: Vec<(usize, usize)> = self.orbit.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let orbit: BTreeSet<usize> = self.orbit.iter().copied().collect();
        let targets: BTreeSet<usize> = (1..=n).collect();
        let free_sources = targets.difference(&orbit);
        let free_targets = orbit.difference(&targets);
        pairs.extend(free_sources.copied().zip(free_targets.copied()));
        Permutation::from_images(pairs).expect("matching of leftover points is a bijection")
    }

    /// `h·c·h⁻¹` with `h` from [`Self::normalizing_perm`]; its permutation part is `σ_{|p|}`.
    pub fn normal_form(&self) -> WreathElement {
        self.to_element().conjugate(&self.normalizing_perm())
    }
}

/// `γ̃` computed directly from an element with at most one generalized cycle.
pub fn cycle_invariant(c: &GeneralizedCycle, group: &GroupTable) -> usize {
    c.invariant(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    /// Action of an element on `Γ × {1..n}` as an explicit table.
    fn action(g: &WreathElement, group: &GroupTable, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=n {
            for h in 0..group.order() {
                out.push((group.mul(g.color_at(i, group), h), g.perm().image(i)));
            }
        }
        out
    }

    fn compose_actions(a: &[(usize, usize)], b: &[(usize, usize)], order: usize) -> Vec<(usize, usize)> {
        b.iter().map(|&(h, i)| a[(i - 1) * order + h]).collect()
    }

    #[test]
    fn involution_squares_to_identity() {
        let g = GroupTable::trivial();
        let x = WreathElement::from_perm(p("(1 2)"));
        assert!(x.multiply(&x, &g).is_identity());
    }

    #[test]
    fn colored_product_matches_point_action() {
        let g = GroupTable::cyclic(4);
        let a = g.index_of("a").unwrap();
        let b = g.index_of("a2").unwrap();
        let x = WreathElement::new(p("(1 2)"), [(1, a)], &g).unwrap();
        let y = WreathElement::new(p("()"), [(1, b)], &g).unwrap();
        let xy = x.multiply(&y, &g);
        assert_eq!(xy.perm(), &p("(1 2)"));
        // δ_1 = γ_{s'(1)}·γ'_1 = a·a2 = a3
        assert_eq!(xy.format(&g), "(1 2)[a3@1]");
        let lhs = action(&xy, &g, 3);
        let rhs = compose_actions(&action(&x, &g, 3), &action(&y, &g, 3), g.order());
        assert_eq!(lhs, rhs);
        let yx = y.multiply(&x, &g);
        assert_eq!(yx.format(&g), "(1 2)[a@1,a2@2]");
    }

    #[test]
    fn disjoint_supports_commute() {
        let g = GroupTable::cyclic(3);
        let x = WreathElement::parse("(1 2)[a@1]", &g).unwrap();
        let y = WreathElement::parse("(5 6)[a2@6]", &g).unwrap();
        assert_eq!(x.multiply(&y, &g), y.multiply(&x, &g));
    }

    #[test]
    fn generalized_cycle_examples() {
        let g = GroupTable::cyclic(4);
        let x = WreathElement::parse("(1 2)(3 4 5)[a@1,a2@3,a3@5]", &g).unwrap();
        let cycles = x.generalized_cycles();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].to_element().format(&g), "(1 2)[a@1]");
        assert_eq!(cycles[1].to_element().format(&g), "(3 4 5)[a2@3,a3@5]");

        let lone = WreathElement::parse("()[a@7]", &g).unwrap();
        let cycles = lone.generalized_cycles();
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0].is_singleton());
        assert_eq!(cycles[0].orbit(), [7]);
        assert!(WreathElement::identity().generalized_cycles().is_empty());
    }

    #[test]
    fn invariant_examples() {
        let g = GroupTable::symmetric3();
        let (r, s, sr) = (g.index_of("r").unwrap(), g.index_of("s").unwrap(), g.index_of("sr").unwrap());
        let x = WreathElement::new(p("(1 2 3)"), [(1, r), (2, s), (3, sr)], &g).unwrap();
        let c = &x.generalized_cycles()[0];
        // γ1·γ3·γ2 since s⁻¹(1) = 3 and s⁻²(1) = 2
        let expect = g.mul(g.mul(r, sr), s);
        assert_eq!(c.invariant(&g), expect);
        assert_ne!(expect, g.mul(g.mul(r, s), sr));

        let plain = WreathElement::from_perm(p("(1 2 3)"));
        assert_eq!(plain.generalized_cycles()[0].invariant(&g), g.identity());
        let single = WreathElement::color(4, r, &g).unwrap();
        assert_eq!(cycle_invariant(&single.generalized_cycles()[0], &g), r);
    }

    #[test]
    fn conjugate_examples() {
        let g = GroupTable::cyclic(2);
        let x = WreathElement::parse("(1 2)[a@1]", &g).unwrap();
        assert_eq!(x.conjugate(&p("(1 3)")).format(&g), "(2 3)[a@3]");
        assert_eq!(x.conjugate(&Permutation::identity()), x);
        // agrees with h·x·h⁻¹ computed through the product
        let h = WreathElement::from_perm(p("(1 3 4)"));
        let via_mul = h.multiply(&x, &g).multiply(&h.inverse(&g), &g);
        assert_eq!(x.conjugate(&p("(1 3 4)")), via_mul);
    }

    #[test]
    fn parse_and_format() {
        let g = GroupTable::cyclic(2);
        let x = WreathElement::parse("(1 2 3)[a@1,a@3]", &g).unwrap();
        assert_eq!(x.perm(), &p("(1 2 3)"));
        assert_eq!(x.colors().collect::<Vec<_>>(), vec![(1, 1), (3, 1)]);
        assert_eq!(x.format(&g), "(1 2 3)[a@1,a@3]");
        // identity colors are dropped
        assert_eq!(WreathElement::parse("()[e@4]", &g).unwrap(), WreathElement::identity());
        assert_eq!(WreathElement::identity().format(&g), "()");
        assert!(WreathElement::parse("(1 2)[b@1]", &g).is_err());
        assert!(WreathElement::parse("(1 2)[a@0]", &g).is_err());
        assert!(WreathElement::parse("(1 2)[a@1,a@1]", &g).is_err());
        assert!(WreathElement::parse("(1 2)[a1]", &g).is_err());
        assert!(WreathElement::parse("(1 2)[a@1", &g).is_err());
        assert!(WreathElement::parse("", &g).is_err());
    }

    #[test]
    fn normal_form_is_sigma() {
        let g = GroupTable::cyclic(3);
        let x = WreathElement::parse("(2 7 4)[a@7,a2@4]", &g).unwrap();
        let c = &x.generalized_cycles()[0];
        let nf = c.normal_form();
        assert_eq!(nf.perm(), &Permutation::sigma(3).unwrap());
        assert_eq!(nf.generalized_cycles()[0].invariant(&g), c.invariant(&g));
        assert_eq!(nf.format(&g), "(1 2 3)[a@2,a2@3]");
    }

    #[test]
    fn generated_cycles() {
        let g = GroupTable::cyclic(2);
        assert!(WreathElement::parse("(1 2 3)[a@2]", &g).unwrap().is_generated_cycle());
        assert!(WreathElement::parse("()[a@2]", &g).unwrap().is_generated_cycle());
        assert!(!WreathElement::parse("(1 2)[a@3]", &g).unwrap().is_generated_cycle());
        assert!(!WreathElement::parse("(1 2)(3 4)", &g).unwrap().is_generated_cycle());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_element(order: usize) -> impl Strategy<Value = WreathElement> {
            let perm = Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle();
            let colors = proptest::collection::vec(0..order, 5);
            (perm, colors).prop_map(|(images, colors)| {
                let perm = Permutation::from_images(images.into_iter().enumerate().map(|(i, q)| (i + 1, q))).unwrap();
                WreathElement {
                    perm,
                    colors: colors.into_iter().enumerate().filter(|&(_, g)| g != 0).map(|(i, g)| (i + 1, g)).collect(),
                }
            })
        }

        proptest! {
            #[test]
            fn multiply_is_associative(x in arb_element(6), y in arb_element(6), z in arb_element(6)) {
                let g = GroupTable::symmetric3();
                prop_assert_eq!(x.multiply(&y, &g).multiply(&z, &g), x.multiply(&y.multiply(&z, &g), &g));
            }

            #[test]
            fn multiply_matches_point_action(x in arb_element(6), y in arb_element(6)) {
                let g = GroupTable::symmetric3();
                let lhs = action(&x.multiply(&y, &g), &g, 5);
                let rhs = compose_actions(&action(&x, &g, 5), &action(&y, &g, 5), 6);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn inverse_cancels(x in arb_element(6)) {
                let g = GroupTable::symmetric3();
                prop_assert!(x.multiply(&x.inverse(&g), &g).is_identity());
                prop_assert!(x.inverse(&g).multiply(&x, &g).is_identity());
            }

            #[test]
            fn cycles_rebuild_element(x in arb_element(6)) {
                let g = GroupTable::symmetric3();
                let parts = x.generalized_cycles();
                let rebuilt = parts.iter().fold(WreathElement::identity(), |acc, c| acc.multiply(&c.to_element(), &g));
                prop_assert_eq!(&rebuilt, &x);
                let reversed = parts.iter().rev().fold(WreathElement::identity(), |acc, c| acc.multiply(&c.to_element(), &g));
                prop_assert_eq!(&reversed, &x);
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        let sa = a.to_element().support();
                        prop_assert!(sa.is_disjoint(&b.to_element().support()));
                    }
                }
            }

            #[test]
            fn support_of_product_is_bounded(x in arb_element(3), y in arb_element(3)) {
                let g = GroupTable::cyclic(3);
                let s = x.multiply(&y, &g).support();
                let bound: BTreeSet<usize> = x.support().union(&y.support()).copied().collect();
                prop_assert!(s.is_subset(&bound));
            }

            #[test]
            fn format_parse_roundtrip(x in arb_element(6)) {
                let g = GroupTable::symmetric3();
                prop_assert_eq!(WreathElement::parse(&x.format(&g), &g).unwrap(), x);
            }

            #[test]
            fn shift_moves_support(x in arb_element(6), k in 0usize..4) {
                let y = x.shifted(k);
                prop_assert_eq!(y.support(), x.support().iter().map(|p| p + k).collect::<BTreeSet<_>>());
                prop_assert_eq!(y.generalized_cycles().len(), x.generalized_cycles().len());
            }
        }
    }
}
