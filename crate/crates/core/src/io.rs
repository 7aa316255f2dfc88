//! DIMACS-style graph files, family generators and JSON result output.
//!
//! # Graph files
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <u> <v>        1 <= u, v <= n, u != v
//! ```
//!
//! # Random graphs
//!
//! `random:n,p,seed` is reproducible across implementations: the generator is
//! xoshiro256** whose 256-bit state is filled by four successive SplitMix64
//! outputs started from `seed`. Pairs `(u, v)` with `u < v` are visited in
//! lexicographic order; for each one a 64-bit output `x` is drawn and the edge
//! is kept iff `(x >> 11) * 2^-53 < p`.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::SpanResult;
use crate::tset::TSet;

/// A graph file's contents plus non-fatal findings such as an edge count that
/// disagrees with the header.
#[derive(Debug, Clone, PartialEq)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let fields: Vec<&str> = fields.collect();
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate `p` line"));
                }
                let [kind, n, m] = fields[..] else {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                };
                if kind != "edge" {
                    return Err(parse_err(
                        line_no,
                        format!("unsupported problem type `{kind}`"),
                    ));
                }
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad vertex count"))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad edge count"))?;
                if n == 0 {
                    return Err(parse_err(line_no, "graph must have at least one vertex"));
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line_no, "edge before `p` line"));
                };
                let [u, v] = fields[..] else {
                    return Err(parse_err(line_no, "expected `e <u> <v>`"));
                };
                let endpoint = |s: &str| -> Result<usize> {
                    let x: usize = s
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad vertex `{s}`")))?;
                    if x == 0 || x > n {
                        return Err(parse_err(
                            line_no,
                            format!("vertex {x} out of range 1..={n}"),
                        ));
                    }
                    Ok(x - 1)
                };
                let (u, v) = (endpoint(u)?, endpoint(v)?);
                if u == v {
                    return Err(parse_err(line_no, format!("loop edge at vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p edge <n> <m>` line"))?;
    let graph = Graph::new(n, edges)?;
    let mut warnings = Vec::new();
    if graph.edge_count() != m {
        warnings.push(format!(
            "header declares {m} edges but {} distinct edges were read",
            graph.edge_count()
        ));
    }
    Ok(DimacsGraph { graph, warnings })
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses `0,3,1` into a colouring.
pub fn parse_colours(text: &str) -> Result<Colouring> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Colour>()
                .map_err(|_| parse_err(1, format!("bad colour `{}`", s.trim())))
        })
        .collect::<Result<Vec<_>>>()
        .map(Colouring::new)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Star(usize),
    Complete(usize),
    CompleteMultipartite(Vec<usize>),
    Path(usize),
    Cycle(usize),
    Random { n: usize, p: f64, seed: u64 },
}

fn parse_list<T: FromStr>(s: &str, spec: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::FamilySpec(spec.to_string()))
        })
        .collect()
}

/// Colon syntax: `star:3`, `complete:4`, `kpartite:2,2`, `path:5`, `cycle:5`,
/// `random:6,0.5,42`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::FamilySpec(s.to_string());
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let single = || -> Result<usize> { args.trim().parse().map_err(|_| bad()) };
        let spec = match kind.trim() {
            "star" => FamilySpec::Star(single()?),
            "complete" => FamilySpec::Complete(single()?),
            "kpartite" | "complete_multipartite" => {
                FamilySpec::CompleteMultipartite(parse_list(args, s)?)
            }
            "path" => FamilySpec::Path(single()?),
            "cycle" => FamilySpec::Cycle(single()?),
            "random" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                let [n, p, seed] = parts[..] else {
                    return Err(bad());
                };
                FamilySpec::Random {
                    n: n.parse().map_err(|_| bad())?,
                    p: p.parse().map_err(|_| bad())?,
                    seed: seed.parse().map_err(|_| bad())?,
                }
            }
            _ => return Err(bad()),
        };
        spec.check().map_err(|_| bad())?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteMultipartite(sizes) => {
                let parts: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "kpartite:{}", parts.join(","))
            }
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
        }
    }
}

impl FamilySpec {
    fn check(&self) -> Result<()> {
        let ok = match self {
            FamilySpec::Star(n) | FamilySpec::Complete(n) | FamilySpec::Path(n) => *n >= 1,
            FamilySpec::Cycle(n) => *n >= 3,
            FamilySpec::CompleteMultipartite(sizes) => {
                !sizes.is_empty() && sizes.iter().all(|&s| s >= 1)
            }
            FamilySpec::Random { n, p, .. } => *n >= 1 && (0.0..=1.0).contains(p),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilySpec(self.to_string()))
        }
    }
}

/// Builds the described graph. Stars put the centre at vertex 0; multipartite
/// parts occupy consecutive id blocks.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.check()?;
    match *spec {
        FamilySpec::Star(n) => Graph::new(n + 1, (1..=n).map(|l| (0, l))),
        FamilySpec::Complete(n) => Graph::new(n, all_pairs(n)),
        FamilySpec::CompleteMultipartite(ref sizes) => {
            let part: Vec<usize> = sizes
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
                .collect();
            let n = part.len();
            Graph::new(n, all_pairs(n).filter(|&(u, v)| part[u] != part[v]))
        }
        FamilySpec::Path(n) => Graph::new(n, (1..n).map(|v| (v - 1, v))),
        FamilySpec::Cycle(n) => Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))),
        FamilySpec::Random { n, p, seed } => {
            let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
            let scale = 1.0 / (1u64 << 53) as f64;
            let edges: Vec<(usize, usize)> = all_pairs(n)
                .filter(|_| (rng.next_u64() >> 11) as f64 * scale < p)
                .collect();
            Graph::new(n, edges)
        }
    }
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    lambda: Colour,
    method: &'static str,
    colours: &'a [Colour],
    tset: &'a [u32],
    sigma: u32,
    nodes_explored: u64,
    elapsed_ms: f64,
}

/// One JSON object with keys in the fixed order
/// `lambda, method, colours, tset, sigma, nodes_explored, elapsed_ms`.
pub fn emit_result(r: &SpanResult, g: &Graph, t: &TSet) -> String {
    debug_assert_eq!(r.witness.len(), g.n());
    let record = ResultRecord {
        lambda: r.lambda,
        method: r.method.as_str(),
        colours: r.witness.as_slice(),
        tset: t.elements(),
        sigma: t.sigma(),
        nodes_explored: r.nodes_explored,
        elapsed_ms: r.elapsed.as_secs_f64() * 1000.0,
    };
    serde_json::to_string(&record).expect("result record serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{brute_force_span, exact_span, Budget, Method};

    #[test]
    fn parse_examples() {
        let p3 = parse_graph("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(p3.graph.edges(), &[(0, 1), (1, 2)]);
        assert!(p3.warnings.is_empty());
        let c4 = parse_graph("c square\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
        assert_eq!(c4.graph, generate(&FamilySpec::Cycle(4)).unwrap());
        assert!(matches!(
            parse_graph("p edge 2 1\ne 1 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_errors_and_warnings() {
        assert!(parse_graph("p edge 2 1\ne 1 3").is_err());
        assert!(parse_graph("p edge 2 1\ne 0 1").is_err());
        assert!(parse_graph("e 1 2\np edge 2 1").is_err());
        assert!(parse_graph("p col 2 1\ne 1 2").is_err());
        assert!(parse_graph("p edge 2\ne 1 2").is_err());
        assert!(parse_graph("c nothing").is_err());
        assert!(parse_graph("p edge 2 1\nx 1 2").is_err());
        let dup = parse_graph("p edge 2 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!(dup.graph.edge_count(), 1);
        assert_eq!(dup.warnings.len(), 1);
    }

    #[test]
    fn family_generators() {
        let star = generate(&FamilySpec::Star(3)).unwrap();
        assert_eq!(star.n(), 4);
        assert_eq!(star.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let k22 = generate(&FamilySpec::CompleteMultipartite(vec![2, 2])).unwrap();
        assert_eq!(k22.n(), 4);
        assert_eq!(k22.edge_count(), 4);
        assert!(!k22.is_adjacent(0, 1) && !k22.is_adjacent(2, 3));
        let empty = generate(&FamilySpec::Random {
            n: 5,
            p: 0.0,
            seed: 99,
        })
        .unwrap();
        assert_eq!((empty.n(), empty.edge_count()), (5, 0));
        let full = generate(&FamilySpec::Random {
            n: 5,
            p: 1.0,
            seed: 99,
        })
        .unwrap();
        assert_eq!(full.edge_count(), 10);
    }

    #[test]
    fn random_graphs_match_reference_generator() {
        // Expected edges produced by an independent SplitMix64 + xoshiro256**
        // implementation following the documented procedure.
        let g = generate(&"random:6,0.5,42".parse().unwrap()).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 5), (3, 5)]);
        let g = generate(&"random:5,0.3,7".parse().unwrap()).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 4), (2, 3), (3, 4)]);
        let mut rng = Xoshiro256StarStar::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0x99ec5f36cb75f2b4);
        assert_eq!(rng.next_u64(), 0xbf6e1f784956452a);
    }

    #[test]
    fn family_spec_syntax() {
        for text in [
            "star:3",
            "complete:4",
            "kpartite:2,1,3",
            "path:5",
            "cycle:6",
            "random:6,0.25,42",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!(
            "complete_multipartite:2,2".parse::<FamilySpec>().unwrap(),
            FamilySpec::CompleteMultipartite(vec![2, 2])
        );
        for bad in [
            "star",
            "star:0",
            "cycle:2",
            "kpartite:2,0",
            "random:3,1.5,1",
            "wheel:4",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn result_json_layout() {
        let k1 = Graph::empty(1).unwrap();
        let t = TSet::new([0]).unwrap();
        let r = exact_span(&k1, &t, Budget::default()).unwrap();
        let text = emit_result(&r, &k1, &t);
        assert!(text.starts_with(
            r#"{"lambda":0,"method":"exact","colours":[0],"tset":[0],"sigma":0,"nodes_explored":"#
        ));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);

        let star = generate(&FamilySpec::Star(3)).unwrap();
        let t01 = TSet::new([0, 1]).unwrap();
        let r = exact_span(&star, &t01, Budget::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_result(&r, &star, &t01)).unwrap();
        assert_eq!(v["lambda"], 4);

        let r = brute_force_span(&star, &t01, 6).unwrap();
        assert_eq!(r.method, Method::BruteForce);
        let v: serde_json::Value = serde_json::from_str(&emit_result(&r, &star, &t01)).unwrap();
        assert_eq!(v["method"], "brute_force");
    }

    #[test]
    fn colour_lists() {
        assert_eq!(parse_colours("0, 3,1").unwrap().as_slice(), &[0, 3, 1]);
        assert!(parse_colours("0,-1").is_err());
        assert!(parse_colours("").is_err());
    }
}
