use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Simple undirected graph on dense vertex ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Duplicate edges (in either orientation) collapse to one; loops are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbours(&self, v: usize) -> Result<&[usize]> {
        self.adj
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// For each vertex, the sorted list of vertices at distance exactly 2.
    pub fn distance_two_lists(&self) -> Vec<Vec<usize>> {
        let mut mark = vec![usize::MAX; self.n];
        let mut out = Vec::with_capacity(self.n);
        for v in 0..self.n {
            mark[v] = v;
            for &u in &self.adj[v] {
                mark[u] = v;
            }
            let mut second = Vec::new();
            for &u in &self.adj[v] {
                for &w in &self.adj[u] {
                    if mark[w] != v {
                        mark[w] = v;
                        second.push(w);
                    }
                }
            }
            second.sort_unstable();
            out.push(second);
        }
        out
    }

    /// Unordered pairs `(u, v)`, `u < v`, at shortest-path distance exactly 2, sorted.
    pub fn distance_two_pairs(&self) -> Vec<(usize, usize)> {
        self.distance_two_lists()
            .into_iter()
            .enumerate()
            .flat_map(|(u, list)| {
                list.into_iter()
                    .filter(move |&v| u < v)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Applies `perm` (old id -> new id) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("permutation of a valid graph")
    }

    /// Same graph plus one isolated vertex with id `n`.
    pub fn with_isolated_vertex(&self) -> Graph {
        Graph::new(self.n + 1, self.edges.iter().copied()).expect("valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn distance_two_small_cases() {
        assert_eq!(path3().distance_two_pairs(), vec![(0, 2)]);
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.distance_two_pairs().is_empty());
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.distance_two_pairs(), vec![(0, 2), (1, 3)]);
        // P4: distance 3 between the endpoints is not included.
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.distance_two_pairs(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn neighbours_of_star() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.neighbours(0).unwrap(), &[1, 2, 3]);
        assert_eq!(star.neighbours(1).unwrap(), &[0]);
        assert_eq!(
            star.neighbours(4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        );
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(k2.neighbours(0).unwrap(), &[1]);
    }

    #[test]
    fn construction_errors_and_dedup() {
        assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected());
        assert!(!Graph::new(3, [(0, 1)]).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }
}
