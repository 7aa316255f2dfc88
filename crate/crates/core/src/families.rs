//! Closed-form predictions and explicit colourings for stars and complete
//! multipartite graphs, plus an independent L(p,1) span search.

use std::collections::VecDeque;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::Budget;
use crate::tset::TSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PredictionMode {
    /// The span equals `value`.
    Exact,
    /// The span is strictly below `value`.
    StrictUpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarPrediction {
    pub mode: PredictionMode,
    pub value: Colour,
}

impl StarPrediction {
    pub fn holds_for(&self, lambda: Colour) -> bool {
        match self.mode {
            PredictionMode::Exact => lambda == self.value,
            PredictionMode::StrictUpperBound => lambda < self.value,
        }
    }
}

impl fmt::Display for StarPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            PredictionMode::Exact => write!(f, "Exact({})", self.value),
            PredictionMode::StrictUpperBound => write!(f, "StrictUpperBound({})", self.value),
        }
    }
}

/// Closed-form star span: `n - sigma + r` when `sigma < n`, otherwise
/// only "below r".
pub fn star_span_predicted(n: usize, t: &TSet) -> StarPrediction {
    let sigma = t.sigma() as usize;
    if sigma < n {
        StarPrediction {
            mode: PredictionMode::Exact,
            value: (n - sigma) as Colour + t.r(),
        }
    } else {
        StarPrediction {
            mode: PredictionMode::StrictUpperBound,
            value: t.r(),
        }
    }
}

/// Colouring of `K_{1,n}` (centre is vertex 0, leaves `1..=n`).
///
/// The centre takes 0, leaves take the missing differences `c_1 < c_2 < ...`
/// in order, and any leaves left over take `r+1, r+2, ...`.
pub fn star_colouring(n: usize, t: &TSet) -> Colouring {
    let mut colours = Vec::with_capacity(n + 1);
    colours.push(0);
    colours.extend(t.missing_colours().into_iter().take(n));
    let mut next = t.r() + 1;
    while colours.len() < n + 1 {
        colours.push(next);
        next += 1;
    }
    Colouring::new(colours)
}

fn check_parts(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::TooFewParts(0));
    }
    if sizes.contains(&0) {
        return Err(Error::EmptyPart);
    }
    Ok(())
}

/// `r*k + sum(sizes) - 1`. For `k = 1` the graph is edgeless and the value is
/// merely a (loose) bound on distinct colours for an independent set.
pub fn kpartite_upper_bound(sizes: &[usize], t: &TSet) -> Result<Colour> {
    check_parts(sizes)?;
    let total: usize = sizes.iter().sum();
    Ok(t.r() * sizes.len() as Colour + total as Colour - 1)
}

/// Block colouring of the complete multipartite graph whose parts occupy
/// consecutive id ranges in the order of `sizes`.
///
/// The first vertex of part 1 gets 0. Parts 2..k then each get a run of
/// consecutive colours, and the rest of part 1 gets a final run. Every run
/// starts `r + 1` above the highest colour used so far, so any two vertices
/// in different parts differ by more than `r`.
pub fn kpartite_colouring(sizes: &[usize], t: &TSet) -> Result<Colouring> {
    check_parts(sizes)?;
    if sizes.len() < 2 {
        return Err(Error::TooFewParts(sizes.len()));
    }
    let total: usize = sizes.iter().sum();
    let mut colours = vec![0; total];
    let step = t.r() + 1;
    let mut top: Colour = 0;
    let mut offset = sizes[0];
    for &size in &sizes[1..] {
        let first = top + step;
        for i in 0..size {
            colours[offset + i] = first + i as Colour;
        }
        top = first + size as Colour - 1;
        offset += size;
    }
    let first = top + step;
    for (i, colour) in colours.iter_mut().enumerate().take(sizes[0]).skip(1) {
        *colour = first + i as Colour - 1;
    }
    Ok(Colouring::new(colours))
}

/// The L(p,1) span: adjacent colours differ by at least `p`, colours at
/// distance two differ. Plain backtracking in id order with its own BFS
/// distances, kept separate from the main solver so the two can be compared.
pub fn lpq_reference_span(g: &Graph, p: Colour, budget: Budget) -> Result<Colour> {
    assert!(p >= 1, "p must be positive");
    let n = g.n();
    let start = Instant::now();
    let deadline = budget.max_time.map(|d| start + d);

    // (earlier vertex, min separation) constraints for each vertex
    let mut back: Vec<Vec<(usize, Colour)>> = vec![Vec::new(); n];
    for src in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if dist[v] == 2 {
                continue;
            }
            for &u in g.neighbours(v)? {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        for (u, &d) in dist.iter().enumerate().take(src) {
            match d {
                1 => back[src].push((u, p)),
                2 => back[src].push((u, 1)),
                _ => {}
            }
        }
    }

    struct Walk<'a> {
        back: &'a [Vec<(usize, Colour)>],
        colours: Vec<Colour>,
        span: Colour,
        nodes: u64,
        max_nodes: Option<u64>,
        deadline: Option<Instant>,
    }

    impl Walk<'_> {
        // None = out of budget
        fn go(&mut self, v: usize) -> Option<bool> {
            if v == self.colours.len() {
                return Some(true);
            }
            for c in 0..=self.span {
                if self.back[v]
                    .iter()
                    .any(|&(u, sep)| c.abs_diff(self.colours[u]) < sep)
                {
                    continue;
                }
                self.nodes += 1;
                if self.max_nodes.is_some_and(|m| self.nodes > m) {
                    return None;
                }
                if self.nodes.is_multiple_of(1024)
                    && self.deadline.is_some_and(|d| Instant::now() >= d)
                {
                    return None;
                }
                self.colours[v] = c;
                if self.go(v + 1)? {
                    return Some(true);
                }
            }
            Some(false)
        }
    }

    let mut walk = Walk {
        back: &back,
        colours: vec![0; n],
        span: 0,
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline,
    };
    loop {
        match walk.go(0) {
            Some(true) => return Ok(walk.span),
            Some(false) => walk.span += 1,
            None => {
                return Err(Error::BudgetExceeded {
                    lower: walk.span,
                    upper: None,
                    nodes: walk.nodes,
                    elapsed: start.elapsed(),
                })
            }
        }
    }
}
