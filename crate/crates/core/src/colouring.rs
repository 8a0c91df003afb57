//! Colourings, b-fold colourings and their validity checks.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Which colouring notion a check or solve refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "param")]
pub enum Mode {
    /// Colour classes are independent sets.
    Proper,
    /// Colour classes induce maximum degree at most `d`.
    Improper(usize),
    /// Colour classes induce components with at most `t` vertices.
    Clustered(usize),
}

impl Mode {
    /// Whether the subgraph of `g` induced by `class` is admissible as one colour class.
    pub fn admits(&self, g: &Graph, class: &VertexSet) -> bool {
        match *self {
            Mode::Proper => g.induced_max_degree(class) == 0,
            Mode::Improper(d) => g.induced_max_degree(class) <= d,
            Mode::Clustered(t) => largest_component(g, class).1 <= t,
        }
    }

    /// Largest clique that fits in a single colour class.
    pub fn clique_capacity(&self) -> usize {
        match *self {
            Mode::Proper => 1,
            Mode::Improper(d) => d + 1,
            Mode::Clustered(t) => t,
        }
    }
}

/// Total map from vertices to positive colours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Colouring(Vec<u32>);

impl TryFrom<Vec<u32>> for Colouring {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Colouring::new(v)
    }
}

impl From<Colouring> for Vec<u32> {
    fn from(c: Colouring) -> Self {
        c.0
    }
}

impl Colouring {
    pub fn new(colours: Vec<u32>) -> Result<Self> {
        if let Some(v) = colours.iter().position(|&x| x == 0) {
            return Err(Error::ZeroColour(v));
        }
        Ok(Colouring(colours))
    }

    /// Every vertex gets colour 1.
    pub fn monochromatic(n: usize) -> Self {
        Colouring(alloc::vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn set_colour(&mut self, v: usize, x: u32) {
        assert!(x > 0, "colours are positive");
        self.0[v] = x;
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn palette(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }

    pub fn num_colours(&self) -> usize {
        self.palette().len()
    }

    pub fn class(&self, x: u32) -> VertexSet {
        VertexSet::from_iter(self.len(), (0..self.len()).filter(|&v| self.0[v] == x))
    }

    /// Colour classes ordered by colour.
    pub fn classes(&self) -> Vec<(u32, VertexSet)> {
        self.palette().into_iter().map(|x| (x, self.class(x))).collect()
    }
}

/// Map from vertices to sets of exactly `b` distinct positive colours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFoldColouring {
    sets: Vec<BTreeSet<u32>>,
}

impl BFoldColouring {
    pub fn new(sets: Vec<BTreeSet<u32>>) -> Result<Self> {
        for (v, s) in sets.iter().enumerate() {
            if s.contains(&0) {
                return Err(Error::ZeroColour(v));
            }
        }
        Ok(BFoldColouring { sets })
    }

    pub fn from_lists(lists: &[&[u32]]) -> Result<Self> {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn colours(&self, v: usize) -> &BTreeSet<u32> {
        &self.sets[v]
    }

    pub fn palette(&self) -> BTreeSet<u32> {
        self.sets.iter().flatten().copied().collect()
    }

    pub fn num_colours(&self) -> usize {
        self.palette().len()
    }

    /// Vertices whose set contains `x`.
    pub fn class(&self, x: u32) -> VertexSet {
        VertexSet::from_iter(self.len(), (0..self.len()).filter(|&v| self.sets[v].contains(&x)))
    }

    /// The 1-fold colouring with the same classes, when `b = 1`.
    pub fn to_colouring(&self) -> Option<Colouring> {
        self.sets
            .iter()
            .map(|s| (s.len() == 1).then(|| *s.iter().next().unwrap()))
            .collect::<Option<Vec<u32>>>()
            .map(Colouring)
    }
}

impl From<&Colouring> for BFoldColouring {
    fn from(c: &Colouring) -> Self {
        BFoldColouring { sets: c.0.iter().map(|&x| BTreeSet::from([x])).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    ImproperDegreeExceeded,
    ClusterTooLarge,
    AdjacentSameColour,
    FoldSetWrongSize,
}

/// A re-checkable certificate that a colouring is not valid.
///
/// Witness layout per kind: `ImproperDegreeExceeded` lists the offending vertex
/// followed by its same-coloured neighbours; `ClusterTooLarge` lists the whole
/// monochromatic component; `AdjacentSameColour` lists the two endpoints;
/// `FoldSetWrongSize` lists the vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
    pub colour: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

fn ensure_total(g: &Graph, len: usize) -> Result<()> {
    if len != g.n() {
        return Err(Error::PartialColouring { got: len, expected: g.n() });
    }
    Ok(())
}

/// The component of `class` with the most vertices, as (component, size).
fn largest_component(g: &Graph, class: &VertexSet) -> (VertexSet, usize) {
    let mut rest = class.clone();
    let mut best = (VertexSet::new(g.n()), 0);
    while let Some(v) = rest.first() {
        let comp = g.component_within(v, class);
        rest.difference_with(&comp);
        let size = comp.len();
        if size > best.1 {
            best = (comp, size);
        }
    }
    best
}

fn class_verdict(g: &Graph, class: &VertexSet, x: u32, mode: Mode) -> Verdict {
    match mode {
        Mode::Proper => {
            for u in class.iter() {
                if let Some(w) = g.neighbours(u).iter().find(|&w| class.contains(w)) {
                    return Verdict::Invalid(Violation {
                        kind: ViolationKind::AdjacentSameColour,
                        witness: alloc::vec![u, w],
                        colour: x,
                    });
                }
            }
            Verdict::Valid
        }
        Mode::Improper(d) => {
            for u in class.iter() {
                let mut same = g.neighbours(u).clone();
                same.intersect_with(class);
                if same.len() > d {
                    let mut witness = alloc::vec![u];
                    witness.extend(same.iter());
                    return Verdict::Invalid(Violation {
                        kind: ViolationKind::ImproperDegreeExceeded,
                        witness,
                        colour: x,
                    });
                }
            }
            Verdict::Valid
        }
        Mode::Clustered(t) => {
            let (comp, size) = largest_component(g, class);
            if size > t {
                Verdict::Invalid(Violation {
                    kind: ViolationKind::ClusterTooLarge,
                    witness: comp.to_vec(),
                    colour: x,
                })
            } else {
                Verdict::Valid
            }
        }
    }
}

/// Checks `c` against `mode`; the first offending colour (ascending) is reported.
pub fn check(g: &Graph, c: &Colouring, mode: Mode) -> Result<Verdict> {
    ensure_total(g, c.len())?;
    for (x, class) in c.classes() {
        let v = class_verdict(g, &class, x, mode);
        if !v.is_valid() {
            return Ok(v);
        }
    }
    Ok(Verdict::Valid)
}

/// Every vertex has at most `d` neighbours of its own colour.
pub fn check_improper(g: &Graph, c: &Colouring, d: usize) -> Result<Verdict> {
    check(g, c, Mode::Improper(d))
}

/// Every monochromatic component has at most `t` vertices.
pub fn check_clustered(g: &Graph, c: &Colouring, t: usize) -> Result<Verdict> {
    if t == 0 {
        return Err(Error::OutOfRange("cluster size t must be at least 1".into()));
    }
    check(g, c, Mode::Clustered(t))
}

pub fn check_proper(g: &Graph, c: &Colouring) -> Result<Verdict> {
    check(g, c, Mode::Proper)
}

/// Checks a b-fold colouring: every set has `b` colours, and for each colour
/// `x` the vertices whose set contains `x` satisfy `mode`.
pub fn check_bfold(g: &Graph, c: &BFoldColouring, b: usize, mode: Mode) -> Result<Verdict> {
    if b == 0 {
        return Err(Error::OutOfRange("fold size b must be at least 1".into()));
    }
    ensure_total(g, c.len())?;
    for v in 0..c.len() {
        if c.colours(v).len() != b {
            return Ok(Verdict::Invalid(Violation {
                kind: ViolationKind::FoldSetWrongSize,
                witness: alloc::vec![v],
                colour: c.colours(v).iter().next().copied().unwrap_or(0),
            }));
        }
    }
    for x in c.palette() {
        let v = class_verdict(g, &c.class(x), x, mode);
        if !v.is_valid() {
            return Ok(v);
        }
    }
    Ok(Verdict::Valid)
}

/// Colouring of `G ⊠ K_t` with `(v, i) ↦ c(v)`.
pub fn lift_colouring(c: &Colouring, t: usize) -> Colouring {
    Colouring(c.0.iter().flat_map(|&x| core::iter::repeat_n(x, t)).collect())
}

/// Maximal connected monochromatic vertex sets, ordered by smallest vertex.
pub fn mono_components(g: &Graph, c: &Colouring) -> Result<Vec<(u32, VertexSet)>> {
    ensure_total(g, c.len())?;
    let mut seen = VertexSet::new(g.n());
    let mut out = Vec::new();
    for v in 0..g.n() {
        if seen.contains(v) {
            continue;
        }
        let x = c.colour(v);
        let comp = g.component_within(v, &c.class(x));
        seen.union_with(&comp);
        out.push((x, comp));
    }
    Ok(out)
}

/// The multiset `{c(v, i) : i < t}` as a sorted list, for a colouring of `G ⊠ K_t`.
pub fn colour_multiset(c: &Colouring, t: usize, v: usize) -> Result<Vec<u32>> {
    if t == 0 || !c.len().is_multiple_of(t) {
        return Err(Error::InvalidColouring(format!(
            "a colouring of {} vertices is not a colouring of a product with factor K_{t}",
            c.len()
        )));
    }
    if v >= c.len() / t {
        return Err(Error::VertexOutOfRange { vertex: v, n: c.len() / t });
    }
    let mut m = c.0[v * t..(v + 1) * t].to_vec();
    m.sort_unstable();
    Ok(m)
}

/// Underlying set of [`colour_multiset`].
pub fn colour_set(c: &Colouring, t: usize, v: usize) -> Result<BTreeSet<u32>> {
    Ok(colour_multiset(c, t, v)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::graph::strong_product;

    fn col(v: &[u32]) -> Colouring {
        Colouring::new(v.to_vec()).unwrap()
    }

    #[test]
    fn improper_basic() {
        let k3 = complete(3);
        let v = check_improper(&k3, &col(&[1, 1, 1]), 1).unwrap();
        assert_eq!(v.violation().unwrap().kind, ViolationKind::ImproperDegreeExceeded);
        assert!(check_improper(&k3, &col(&[1, 1, 1]), 2).unwrap().is_valid());
        assert!(check_improper(&k3, &col(&[1, 2, 3]), 0).unwrap().is_valid());
    }

    #[test]
    fn partial_and_zero_colourings_rejected() {
        assert!(matches!(check_improper(&complete(3), &col(&[1, 2]), 0), Err(Error::PartialColouring { .. })));
        assert_eq!(Colouring::new(alloc::vec![1, 0]), Err(Error::ZeroColour(1)));
    }

    #[test]
    fn petersen_proper_three_colouring() {
        // pairs in lex order: 01 02 03 04 12 13 14 23 24 34; colour by a rule
        // that keeps disjoint pairs apart: contains 0 -> 1, contains 1 -> 2, else 3
        let c = col(&[1, 1, 1, 1, 2, 2, 2, 3, 3, 3]);
        assert!(check_improper(&petersen(), &c, 0).unwrap().is_valid());
    }

    #[test]
    fn lifted_c5_colouring_is_2_improper_and_3_clustered() {
        let c5 = col(&[1, 2, 1, 2, 3]);
        let host = strong_product(&cycle(5), &complete(3));
        let lifted = lift_colouring(&c5, 3);
        assert!(check_improper(&host, &lifted, 2).unwrap().is_valid());
        assert!(check_clustered(&host, &lifted, 3).unwrap().is_valid());
        assert_eq!(lift_colouring(&c5, 1), c5);
    }

    #[test]
    fn clustered_basic() {
        let v = check_clustered(&complete(2), &col(&[1, 1]), 1).unwrap();
        assert_eq!(v.violation().unwrap().kind, ViolationKind::ClusterTooLarge);
        assert!(check_clustered(&complete(2), &col(&[1, 1]), 0).is_err());
    }

    #[test]
    fn bfold_c5_standard_five_colouring() {
        let c = BFoldColouring::from_lists(&[&[1, 2], &[3, 4], &[5, 1], &[2, 3], &[4, 5]]).unwrap();
        assert!(check_bfold(&cycle(5), &c, 2, Mode::Proper).unwrap().is_valid());
        let wrong = BFoldColouring::from_lists(&[&[1, 2], &[3], &[5, 1], &[2, 3], &[4, 5]]).unwrap();
        let v = check_bfold(&cycle(5), &wrong, 2, Mode::Proper).unwrap();
        assert_eq!(v.violation().unwrap().kind, ViolationKind::FoldSetWrongSize);
    }

    #[test]
    fn bfold_c4_two_colours_never_1_improper() {
        // with palette {1,2} and b = 2 every vertex gets {1,2}
        let c = BFoldColouring::from_lists(&[&[1u32, 2][..]; 4]).unwrap();
        assert!(!check_bfold(&cycle(4), &c, 2, Mode::Improper(1)).unwrap().is_valid());
    }

    #[test]
    fn bfold_with_b1_matches_plain_check() {
        let g = bowtie();
        for colours in [[1, 2, 3, 2, 3], [1, 1, 2, 2, 2], [1, 2, 2, 1, 1]] {
            let c = col(&colours);
            for mode in [Mode::Proper, Mode::Improper(1), Mode::Clustered(2)] {
                assert_eq!(
                    check_bfold(&g, &BFoldColouring::from(&c), 1, mode).unwrap().is_valid(),
                    check(&g, &c, mode).unwrap().is_valid()
                );
            }
        }
    }

    #[test]
    fn mono_components_examples() {
        let comps = mono_components(&complete(3), &col(&[1, 1, 1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1.len(), 3);
        let comps = mono_components(&cycle(4), &col(&[1, 2, 1, 2])).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|(_, s)| s.len() == 1));
    }

    #[test]
    fn multisets() {
        let lifted = lift_colouring(&col(&[1, 2, 3]), 4);
        assert_eq!(colour_multiset(&lifted, 4, 1).unwrap(), alloc::vec![2; 4]);
        assert_eq!(colour_multiset(&col(&[5, 6]), 1, 1).unwrap(), alloc::vec![6]);
        let c = col(&[2, 1, 2, 3, 3, 3]);
        assert_eq!(colour_multiset(&c, 3, 0).unwrap(), alloc::vec![1, 2, 2]);
        assert_eq!(colour_set(&c, 3, 0).unwrap().len(), 2);
        assert!(colour_multiset(&c, 4, 0).is_err());
    }
}
