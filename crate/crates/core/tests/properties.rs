use proptest::prelude::*;

use lt1::checker::{c_span, complement, normalize, validate};
use lt1::io::{emit_result, parse_graph, serialize_graph};
use lt1::solver::{brute_force_span, exact_span, greedy_upper_bound, OrderPolicy};
use lt1::{Budget, Colouring, Graph, TSet, ViolationKind};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn tset_strategy(max_r: u32) -> impl Strategy<Value = TSet> {
    proptest::collection::vec(0..=max_r, 0..4)
        .prop_map(|extra| TSet::new(std::iter::once(0).chain(extra)).unwrap())
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![usize::MAX / 2; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

proptest! {
    #[test]
    fn distance_two_pairs_are_exact(g in graph_strategy(8)) {
        let d = distances(&g);
        let pairs = g.distance_two_pairs();
        let expected: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| d[u][v] == 2)
            .collect();
        prop_assert_eq!(&pairs, &expected);
        prop_assert!(pairs.iter().all(|&(u, v)| !g.is_adjacent(u, v)));
    }

    #[test]
    fn relabelling_preserves_pairs_and_violations(
        (g, perm) in with_permutation(7),
        t in tset_strategy(4),
        seed in any::<u64>(),
    ) {
        let h = g.relabel(&perm);
        let mut mapped: Vec<(usize, usize)> = g
            .distance_two_pairs()
            .into_iter()
            .map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        mapped.sort_unstable();
        prop_assert_eq!(mapped, h.distance_two_pairs());

        let c = Colouring::new((0..g.n()).map(|v| ((seed >> (v % 60)) % 4) as u32).collect());
        let kinds = |vs: Vec<lt1::Violation>| {
            let mut k: Vec<ViolationKind> = vs.into_iter().map(|v| v.kind).collect();
            k.sort();
            k
        };
        prop_assert_eq!(
            kinds(validate(&g, &t, &c).unwrap()),
            kinds(validate(&h, &t, &c.relabel(&perm)).unwrap())
        );
    }

    #[test]
    fn complement_of_solver_colouring(g in graph_strategy(6), t in tset_strategy(3), j in 0u32..6) {
        let c = exact_span(&g, &t, Budget::default()).unwrap().witness;
        let reflected = complement(&c, j).unwrap();
        prop_assert!(validate(&g, &t, &reflected).unwrap().is_empty());
        prop_assert_eq!(c_span(&reflected).unwrap(), c_span(&c).unwrap() + j - c.min().unwrap());
        // the exact witness uses colour 0, so reflecting twice at j = 0 is the identity
        prop_assert_eq!(complement(&complement(&c, 0).unwrap(), 0).unwrap(), c);
    }

    #[test]
    fn normalize_keeps_validity(g in graph_strategy(6), t in tset_strategy(3), shift in 0u32..10) {
        let c = greedy_upper_bound(&g, &t, OrderPolicy::IdAsc).witness;
        let shifted: Colouring = c.as_slice().iter().map(|&x| x + shift).collect::<Vec<_>>().into();
        prop_assert!(validate(&g, &t, &shifted).unwrap().is_empty());
        let back = normalize(&shifted);
        prop_assert_eq!(back.min(), Some(0));
        prop_assert!(validate(&g, &t, &back).unwrap().is_empty());
        prop_assert_eq!(c_span(&back).unwrap(), c_span(&shifted).unwrap() - shift);
    }

    #[test]
    fn sigma_counts_missing_colours(t in tset_strategy(12)) {
        prop_assert_eq!(t.sigma() as usize, t.missing_colours().len());
        prop_assert!(t.missing_colours().iter().all(|&c| c > 0 && c < t.r() && !t.contains(c)));
    }

    #[test]
    fn exact_matches_brute_force(g in graph_strategy(5), t in tset_strategy(3)) {
        let exact = exact_span(&g, &t, Budget::default()).unwrap();
        let brute = brute_force_span(&g, &t, 12).unwrap();
        prop_assert_eq!(exact.lambda, brute.lambda);
        prop_assert!(validate(&g, &t, &exact.witness).unwrap().is_empty());
        prop_assert_eq!(c_span(&exact.witness).unwrap(), exact.lambda);
    }

    #[test]
    fn greedy_is_an_upper_bound(g in graph_strategy(7), t in tset_strategy(3), seed in any::<u64>()) {
        let exact = exact_span(&g, &t, Budget::default()).unwrap().lambda;
        for order in [OrderPolicy::DegreeDesc, OrderPolicy::IdAsc, OrderPolicy::Random(seed)] {
            let greedy = greedy_upper_bound(&g, &t, order);
            prop_assert!(validate(&g, &t, &greedy.witness).unwrap().is_empty());
            prop_assert!(greedy.lambda >= exact);
        }
    }

    #[test]
    fn isolated_vertex_does_not_raise_span(g in graph_strategy(6), t in tset_strategy(3)) {
        let base = exact_span(&g, &t, Budget::default()).unwrap().lambda;
        let grown = exact_span(&g.with_isolated_vertex(), &t, Budget::default()).unwrap().lambda;
        prop_assert_eq!(grown, base);
    }

    #[test]
    fn graph_text_round_trip(g in graph_strategy(10)) {
        let parsed = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert_eq!(parsed.graph, g);
        prop_assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn result_json_round_trip(g in graph_strategy(6), t in tset_strategy(3)) {
        let r = exact_span(&g, &t, Budget::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_result(&r, &g, &t)).unwrap();
        prop_assert_eq!(v["lambda"].as_u64(), Some(r.lambda as u64));
        let colours: Vec<u32> = serde_json::from_value(v["colours"].clone()).unwrap();
        prop_assert_eq!(colours.as_slice(), r.witness.as_slice());
        prop_assert_eq!(v["sigma"].as_u64(), Some(t.sigma() as u64));
    }
}
