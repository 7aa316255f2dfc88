//! Validity of colourings and the transforms that preserve it.

use crate::colouring::{Colour, Colouring, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tset::TSet;

/// Every breach of the L(t,1) rules, once per unordered pair and rule.
///
/// Adjacency violations come first in edge order, then distance-two
/// violations in pair order. An empty list means `c` is valid.
pub fn validate(g: &Graph, t: &TSet, c: &Colouring) -> Result<Vec<Violation>> {
    if c.len() != g.n() {
        return Err(Error::ColouringLength {
            expected: g.n(),
            found: c.len(),
        });
    }
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        let diff = c[u].abs_diff(c[v]);
        if t.contains(diff) {
            out.push(Violation {
                kind: ViolationKind::AdjacentDiffInT,
                u,
                v,
                detail: diff,
            });
        }
    }
    for (u, v) in g.distance_two_pairs() {
        if c[u] == c[v] {
            out.push(Violation {
                kind: ViolationKind::DistanceTwoEqual,
                u,
                v,
                detail: c[u],
            });
        }
    }
    Ok(out)
}

pub fn is_valid(g: &Graph, t: &TSet, c: &Colouring) -> bool {
    matches!(validate(g, t, c), Ok(v) if v.is_empty())
}

/// Highest colour used.
pub fn c_span(c: &Colouring) -> Result<Colour> {
    c.max().ok_or(Error::EmptyColouring)
}

/// Reflection `c'(v) = s + j - c(v)` where `s` is the highest colour of `c`.
pub fn complement(c: &Colouring, j: Colour) -> Result<Colouring> {
    let s = c_span(c)?;
    Ok(c.as_slice()
        .iter()
        .map(|&x| s + j - x)
        .collect::<Vec<_>>()
        .into())
}

pub fn sigma(t: &TSet) -> u32 {
    t.sigma()
}

pub fn missing_colours(t: &TSet) -> Vec<Colour> {
    t.missing_colours()
}

/// Shifts every colour down so the smallest becomes 0.
pub fn normalize(c: &Colouring) -> Colouring {
    let low = c.min().unwrap_or(0);
    c.as_slice()
        .iter()
        .map(|&x| x - low)
        .collect::<Vec<_>>()
        .into()
}
