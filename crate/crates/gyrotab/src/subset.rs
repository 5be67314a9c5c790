//! Subsets of element indices over a fixed universe, stored as bit vectors.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Set of element indices drawn from `0..universe`.
///
/// Ordering is by cardinality first, then by the ascending element
/// sequence, which matches the canonical listing order used everywhere
/// sets are printed or compared against golden data.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubsetRepr", into = "SubsetRepr")]
pub struct ElementSubset {
    universe: usize,
    words: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SubsetRepr {
    universe: usize,
    elements: Vec<usize>,
}

impl From<ElementSubset> for SubsetRepr {
    fn from(s: ElementSubset) -> Self {
        SubsetRepr {
            universe: s.universe,
            elements: s.iter().collect(),
        }
    }
}

impl TryFrom<SubsetRepr> for ElementSubset {
    type Error = String;

    fn try_from(r: SubsetRepr) -> Result<Self, String> {
        let mut s = ElementSubset::empty(r.universe);
        for &x in &r.elements {
            if x >= r.universe {
                return Err(format!("element {x} outside universe {}", r.universe));
            }
            s.insert(x);
        }
        Ok(s)
    }
}

impl ElementSubset {
    pub fn empty(universe: usize) -> Self {
        ElementSubset {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts `x`; panics if `x` is outside the universe.
    pub fn insert(&mut self, x: usize) {
        assert!(
            x < self.universe,
            "element {x} outside universe {}",
            self.universe
        );
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        ElementSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        ElementSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        ElementSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Same elements reinterpreted in a universe of different size; every
    /// element must fit.
    pub fn with_universe(&self, universe: usize) -> Self {
        Self::from_elements(universe, self.iter())
    }
}

impl Ord for ElementSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.universe)
    }
}
