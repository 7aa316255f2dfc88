use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

pub type Colour = u32;

/// Total assignment of non-negative colours, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colouring(Vec<Colour>);

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Colouring(colours)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Colour> {
        self.0
    }

    pub fn max(&self) -> Option<Colour> {
        self.0.iter().copied().max()
    }

    pub fn min(&self) -> Option<Colour> {
        self.0.iter().copied().min()
    }

    /// Colouring with `perm[v]` receiving the colour of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Colouring {
        let mut out = vec![0; self.0.len()];
        for (v, &c) in self.0.iter().enumerate() {
            out[perm[v]] = c;
        }
        Colouring(out)
    }
}

impl From<Vec<Colour>> for Colouring {
    fn from(v: Vec<Colour>) -> Self {
        Colouring(v)
    }
}

impl Index<usize> for Colouring {
    type Output = Colour;

    fn index(&self, v: usize) -> &Colour {
        &self.0[v]
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationKind {
    /// Adjacent vertices whose colour difference lies in T.
    AdjacentDiffInT,
    /// Vertices at distance exactly 2 sharing a colour.
    DistanceTwoEqual,
}

/// One breach of the colouring rules for an unordered pair `u < v`.
///
/// `detail` is the offending difference for [`ViolationKind::AdjacentDiffInT`]
/// and the shared colour for [`ViolationKind::DistanceTwoEqual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub u: usize,
    pub v: usize,
    pub detail: Colour,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::AdjacentDiffInT => write!(
                f,
                "AdjacentDiffInT {} {} diff={}",
                self.u, self.v, self.detail
            ),
            ViolationKind::DistanceTwoEqual => write!(
                f,
                "DistanceTwoEqual {} {} colour={}",
                self.u, self.v, self.detail
            ),
        }
    }
}
