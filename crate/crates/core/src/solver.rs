//! Exact span computation, a brute-force oracle and a greedy upper bound.
//!
//! The exact solver answers the decision problem "is there a valid colouring
//! with every colour in `0..=s`?" by backtracking, and raises `s` until the
//! answer is yes. Feasibility is monotone in `s`, so the first feasible budget
//! is the span.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tset::TSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    BruteForce,
    Greedy,
    Constructive,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::BruteForce => "brute_force",
            Method::Greedy => "greedy",
            Method::Constructive => "constructive",
        }
    }
}

/// Outcome of a span computation. For `Greedy`, `lambda` is only an upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanResult {
    pub lambda: Colour,
    pub witness: Colouring,
    pub method: Method,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Resource limits for the exact search. `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 10_000_000;
    pub const DEFAULT_TIME: Duration = Duration::from_secs(60);

    pub fn unlimited() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Some(Self::DEFAULT_NODES),
            max_time: Some(Self::DEFAULT_TIME),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Try `s = 0, 1, 2, ...` in turn.
    #[default]
    Deepening,
    /// Bisect between 0 and the greedy upper bound.
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub budget: Budget,
    pub strategy: Strategy,
    /// Threads exploring the root vertex's colours. With more than one worker
    /// the witness and node count are not reproducible; the span is.
    pub workers: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            budget: Budget::default(),
            strategy: Strategy::Deepening,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    #[default]
    DegreeDesc,
    IdAsc,
    Random(u64),
}

/// Descending degree, ties by smaller id.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn vertex_order(g: &Graph, policy: OrderPolicy) -> Vec<usize> {
    match policy {
        OrderPolicy::DegreeDesc => degree_order(g),
        OrderPolicy::IdAsc => (0..g.n()).collect(),
        OrderPolicy::Random(seed) => {
            let mut order: Vec<usize> = (0..g.n()).collect();
            order.shuffle(&mut Xoshiro256StarStar::seed_from_u64(seed));
            order
        }
    }
}

/// The graph flattened into search positions: each position only needs to
/// look back at earlier positions.
struct Instance<'a> {
    t: &'a TSet,
    order: Vec<usize>,
    earlier_adj: Vec<Vec<usize>>,
    earlier_d2: Vec<Vec<usize>>,
}

impl<'a> Instance<'a> {
    fn new(g: &Graph, t: &'a TSet) -> Self {
        let order = degree_order(g);
        let mut position = vec![0; g.n()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let d2 = g.distance_two_lists();
        let earlier = |list: &[usize], p: usize| -> Vec<usize> {
            let mut out: Vec<usize> = list
                .iter()
                .map(|&u| position[u])
                .filter(|&q| q < p)
                .collect();
            out.sort_unstable();
            out
        };
        let earlier_adj = order
            .iter()
            .enumerate()
            .map(|(p, &v)| earlier(g.neighbours(v).unwrap(), p))
            .collect();
        let earlier_d2 = order
            .iter()
            .enumerate()
            .map(|(p, &v)| earlier(&d2[v], p))
            .collect();
        Instance {
            t,
            order,
            earlier_adj,
            earlier_d2,
        }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn to_colouring(&self, by_position: &[Colour]) -> Colouring {
        let mut colours = vec![0; self.len()];
        for (p, &v) in self.order.iter().enumerate() {
            colours[v] = by_position[p];
        }
        Colouring::new(colours)
    }
}

/// Budget state shared by every search launched from one `exact_span` call.
struct Limits {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    used: AtomicU64,
    exceeded: AtomicBool,
}

impl Limits {
    fn new(budget: Budget, start: Instant) -> Self {
        Limits {
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| start + d),
            used: AtomicU64::new(0),
            exceeded: AtomicBool::new(false),
        }
    }
}

const FLUSH_INTERVAL: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Search<'a> {
    inst: &'a Instance<'a>,
    span: Colour,
    colours: Vec<Colour>,
    zeros: usize,
    nodes: u64,
    flushed: u64,
    limits: &'a Limits,
    cancel: Option<&'a AtomicBool>,
}

impl<'a> Search<'a> {
    fn new(
        inst: &'a Instance<'a>,
        span: Colour,
        limits: &'a Limits,
        cancel: Option<&'a AtomicBool>,
    ) -> Self {
        Search {
            inst,
            span,
            colours: vec![0; inst.len()],
            zeros: 0,
            nodes: 0,
            flushed: 0,
            limits,
            cancel,
        }
    }

    #[inline]
    fn consistent(&self, p: usize, c: Colour) -> bool {
        let t = self.inst.t;
        self.inst.earlier_adj[p]
            .iter()
            .all(|&q| !t.contains(c.abs_diff(self.colours[q])))
            && self.inst.earlier_d2[p]
                .iter()
                .all(|&q| self.colours[q] != c)
    }

    /// Counts one node; returns false when the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        let pending = self.nodes - self.flushed;
        if let Some(max) = self.limits.max_nodes {
            if self.limits.used.load(Ordering::Relaxed) + pending > max {
                self.limits.exceeded.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if pending >= FLUSH_INTERVAL {
            self.flush();
            if self.limits.exceeded.load(Ordering::Relaxed) {
                return false;
            }
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    self.limits.exceeded.store(true, Ordering::Relaxed);
                    return false;
                }
            }
            if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return false;
            }
        }
        true
    }

    fn flush(&mut self) {
        self.limits
            .used
            .fetch_add(self.nodes - self.flushed, Ordering::Relaxed);
        self.flushed = self.nodes;
    }

    /// Highest colour worth trying at position `p`. Any valid colouring can be
    /// shifted down to use colour 0, so the last vertex must take 0 if no
    /// earlier vertex did.
    fn ceiling(&self, p: usize) -> Colour {
        if p + 1 == self.inst.len() && self.zeros == 0 {
            0
        } else {
            self.span
        }
    }

    fn place(&mut self, p: usize, c: Colour) -> Outcome {
        if !self.tick() {
            return Outcome::Aborted;
        }
        self.colours[p] = c;
        if c == 0 {
            self.zeros += 1;
        }
        let outcome = self.descend(p + 1);
        if outcome != Outcome::Found && c == 0 {
            self.zeros -= 1;
        }
        outcome
    }

    fn descend(&mut self, p: usize) -> Outcome {
        if p == self.inst.len() {
            return Outcome::Found;
        }
        for c in 0..=self.ceiling(p) {
            if !self.consistent(p, c) {
                continue;
            }
            match self.place(p, c) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    fn run(&mut self) -> Outcome {
        let outcome = self.descend(0);
        self.flush();
        outcome
    }

    /// Explores only the subtrees where the first vertex takes colour `root`.
    fn run_root(&mut self, root: Colour) -> Outcome {
        let outcome = if root <= self.ceiling(0) {
            self.place(0, root)
        } else {
            Outcome::Exhausted
        };
        self.flush();
        outcome
    }
}

struct Probe {
    outcome: Outcome,
    witness: Option<Colouring>,
    nodes: u64,
}

fn probe(inst: &Instance<'_>, span: Colour, limits: &Limits, workers: usize) -> Probe {
    if workers <= 1 || inst.len() < 2 {
        let mut search = Search::new(inst, span, limits, None);
        let outcome = search.run();
        let witness = (outcome == Outcome::Found).then(|| inst.to_colouring(&search.colours));
        return Probe {
            outcome,
            witness,
            nodes: search.nodes,
        };
    }

    let next_root = AtomicU32::new(0);
    let found = AtomicBool::new(false);
    let witness: Mutex<Option<Vec<Colour>>> = Mutex::new(None);
    let nodes = AtomicU64::new(0);
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let root = next_root.fetch_add(1, Ordering::Relaxed);
                if root > span || found.load(Ordering::Relaxed) {
                    break;
                }
                let mut search = Search::new(inst, span, limits, Some(&found));
                let outcome = search.run_root(root);
                nodes.fetch_add(search.nodes, Ordering::Relaxed);
                match outcome {
                    Outcome::Found => {
                        let mut slot = witness.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(search.colours.clone());
                        }
                        found.store(true, Ordering::Relaxed);
                        break;
                    }
                    Outcome::Aborted => break,
                    Outcome::Exhausted => {}
                }
            });
        }
    });
    let witness = witness.into_inner().unwrap().map(|c| inst.to_colouring(&c));
    let outcome = if witness.is_some() {
        Outcome::Found
    } else if limits.exceeded.load(Ordering::Relaxed) {
        Outcome::Aborted
    } else {
        Outcome::Exhausted
    };
    Probe {
        outcome,
        witness,
        nodes: nodes.into_inner(),
    }
}

/// A valid colouring with every colour in `0..=span`, if one exists.
///
/// Vertices are assigned in descending-degree order (ties by id) and colours
/// are tried in ascending order; the first complete assignment is returned.
pub fn feasible_with_span(g: &Graph, t: &TSet, span: Colour) -> Option<Colouring> {
    let inst = Instance::new(g, t);
    let limits = Limits::new(Budget::unlimited(), Instant::now());
    probe(&inst, span, &limits, 1).witness
}

/// The L(t,1)-span of `g` with the default strategy and a single worker.
pub fn exact_span(g: &Graph, t: &TSet, budget: Budget) -> Result<SpanResult> {
    exact_span_with(
        g,
        t,
        &ExactConfig {
            budget,
            ..ExactConfig::default()
        },
    )
}

pub fn exact_span_with(g: &Graph, t: &TSet, config: &ExactConfig) -> Result<SpanResult> {
    let start = Instant::now();
    let inst = Instance::new(g, t);
    let limits = Limits::new(config.budget, start);
    let mut nodes = 0u64;
    let greedy = greedy_upper_bound(g, t, OrderPolicy::DegreeDesc);

    let budget_error = |lower: Colour, nodes: u64| Error::BudgetExceeded {
        lower,
        upper: Some(greedy.lambda),
        nodes,
        elapsed: start.elapsed(),
    };

    let (lambda, witness) = match config.strategy {
        Strategy::Deepening => {
            let mut span = 0;
            loop {
                let p = probe(&inst, span, &limits, config.workers);
                nodes += p.nodes;
                match p.outcome {
                    Outcome::Found => break (span, p.witness.unwrap()),
                    Outcome::Exhausted => span += 1,
                    Outcome::Aborted => return Err(budget_error(span, nodes)),
                }
            }
        }
        Strategy::Binary => {
            let (mut lo, mut hi) = (0, greedy.lambda);
            let mut witness = greedy.witness.clone();
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                let p = probe(&inst, mid, &limits, config.workers);
                nodes += p.nodes;
                match p.outcome {
                    Outcome::Found => {
                        hi = mid;
                        witness = p.witness.unwrap();
                    }
                    Outcome::Exhausted => lo = mid + 1,
                    Outcome::Aborted => {
                        return Err(Error::BudgetExceeded {
                            lower: lo,
                            upper: Some(hi),
                            nodes,
                            elapsed: start.elapsed(),
                        })
                    }
                }
            }
            (hi, witness)
        }
    };

    Ok(SpanResult {
        lambda,
        witness,
        method: Method::Exact,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Colours vertices one at a time with the smallest consistent colour.
/// Always succeeds; the span is an upper bound on the true span.
pub fn greedy_upper_bound(g: &Graph, t: &TSet, order: OrderPolicy) -> SpanResult {
    let start = Instant::now();
    let d2 = g.distance_two_lists();
    let mut colours: Vec<Option<Colour>> = vec![None; g.n()];
    let mut tried = 0u64;
    for v in vertex_order(g, order) {
        let mut c: Colour = 0;
        loop {
            tried += 1;
            let adjacent_ok = g
                .neighbours(v)
                .unwrap()
                .iter()
                .all(|&u| colours[u].is_none_or(|cu| !t.contains(c.abs_diff(cu))));
            if adjacent_ok && d2[v].iter().all(|&w| colours[w] != Some(c)) {
                break;
            }
            c += 1;
        }
        colours[v] = Some(c);
    }
    let witness = Colouring::new(colours.into_iter().map(Option::unwrap).collect());
    SpanResult {
        lambda: witness.max().unwrap(),
        witness,
        method: Method::Greedy,
        nodes_explored: tried,
        elapsed: start.elapsed(),
    }
}

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceGuard {
    pub max_n: usize,
    pub max_span: Colour,
}

impl Default for BruteForceGuard {
    fn default() -> Self {
        BruteForceGuard {
            max_n: 8,
            max_span: 12,
        }
    }
}

/// Exhaustive oracle: enumerates every colouring in `0..=s` for
/// `s = 0..=max_span` and returns the first valid one. Uses its own distance
/// matrix and checks so it stays independent of the exact solver.
pub fn brute_force_span(g: &Graph, t: &TSet, max_span: Colour) -> Result<SpanResult> {
    brute_force_span_guarded(g, t, max_span, BruteForceGuard::default())
}

pub fn brute_force_span_guarded(
    g: &Graph,
    t: &TSet,
    max_span: Colour,
    guard: BruteForceGuard,
) -> Result<SpanResult> {
    let n = g.n();
    if n > guard.max_n {
        return Err(Error::GuardExceeded(format!(
            "{n} vertices exceeds the limit of {}",
            guard.max_n
        )));
    }
    if max_span > guard.max_span {
        return Err(Error::GuardExceeded(format!(
            "span bound {max_span} exceeds the limit of {}",
            guard.max_span
        )));
    }
    let start = Instant::now();

    const FAR: usize = usize::MAX / 4;
    let mut dist = vec![vec![FAR; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    let mut constraints = Vec::new();
    for (i, row) in dist.iter().enumerate() {
        for (j, &d) in row.iter().enumerate().skip(i + 1) {
            if d == 1 || d == 2 {
                constraints.push((i, j, d == 1));
            }
        }
    }
    let ok = |c: &[Colour]| {
        constraints.iter().all(|&(i, j, adjacent)| {
            if adjacent {
                !t.contains(c[i].abs_diff(c[j]))
            } else {
                c[i] != c[j]
            }
        })
    };

    let mut enumerated = 0u64;
    for span in 0..=max_span {
        let mut c = vec![0; n];
        loop {
            enumerated += 1;
            if ok(&c) {
                return Ok(SpanResult {
                    lambda: span,
                    witness: Colouring::new(c),
                    method: Method::BruteForce,
                    nodes_explored: enumerated,
                    elapsed: start.elapsed(),
                });
            }
            // lexicographic successor, last vertex fastest
            let mut i = n;
            while i > 0 && c[i - 1] == span {
                c[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
            c[i - 1] += 1;
        }
    }
    Err(Error::NoColouringWithin { max_span })
}
