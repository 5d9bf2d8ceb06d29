mod common;

use common::{brute_max_disjoint, brute_min_separator, connected_count, graph_of, is_connected};
use pebblekit::graph::{
    enumerate_connected_graphs, find_bare_path_cover, max_disjoint_paths, parse_graph, Graph, GraphFormat,
};
use proptest::prelude::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).prop_map(move |m| graph_of(n, m)))
}

/// Disjoint `A`, `B` and forbidden sets, as a role per vertex.
fn with_roles(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>, Vec<usize>)> {
    small_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(0u8..5, n)).prop_map(|(g, roles)| {
            let pick = |r: u8| (0..roles.len()).filter(|&v| roles[v] == r).collect::<Vec<_>>();
            (g, pick(0), pick(1), pick(2))
        })
    })
}

#[test]
fn connected_counts_follow_the_recurrence() {
    for n in 1..=6 {
        assert_eq!(enumerate_connected_graphs(n).unwrap().count() as u64, connected_count(n), "n = {n}");
    }
    assert_eq!(connected_count(7), 1_866_256);
}

#[test]
fn enumeration_is_exactly_the_connected_masks() {
    for n in 1..=5 {
        let listed: Vec<Graph> = enumerate_connected_graphs(n).unwrap().collect();
        let expected: Vec<Graph> =
            (0..1u64 << (n * (n - 1) / 2)).map(|m| graph_of(n, m)).filter(is_connected).collect();
        assert_eq!(listed, expected);
    }
}

#[test]
fn k4_has_no_cover_with_one_spare() {
    assert_eq!(find_bare_path_cover(&Graph::complete(4), 1), None);
    assert_eq!(find_bare_path_cover(&Graph::path(6), 2).unwrap().vertices(), &[0, 1, 2, 3, 4, 5]);
    assert!(find_bare_path_cover(&Graph::cycle(6), 2).unwrap().len() >= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn flow_matches_brute_force_and_menger((g, a, b, forbidden) in with_roles(6)) {
        let flow = max_disjoint_paths(&g, &a, &b, &forbidden).unwrap();
        prop_assert_eq!(flow.count, brute_max_disjoint(&g, &a, &b, &forbidden));
        prop_assert_eq!(flow.count, brute_min_separator(&g, &a, &b, &forbidden));
        prop_assert_eq!(flow.paths.len(), flow.count);
        prop_assert_eq!(flow.separator.len(), flow.count);
        let mut used = vec![false; g.n()];
        for p in &flow.paths {
            prop_assert!(a.contains(&p[0]) && b.contains(p.last().unwrap()));
            for w in p.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
            for &v in p {
                prop_assert!(!used[v] && !forbidden.contains(&v));
                used[v] = true;
            }
        }
    }

    #[test]
    fn bridges_by_definition(g in small_graph(7)) {
        let before = g.component_count();
        let mut expected: Vec<(usize, usize)> =
            g.edges().filter(|&(u, v)| g.without_edge(u, v).component_count() > before).collect();
        let mut got = g.bridges();
        expected.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bare_path_cover_invariants(g in small_graph(7), k in 0usize..5) {
        prop_assume!(g.is_connected());
        if let Some(p) = find_bare_path_cover(&g, k) {
            let vs = p.vertices();
            prop_assert!(g.n() - vs.len() <= k);
            for w in vs.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
            for &v in vs.iter().skip(1).take(vs.len().saturating_sub(2)) {
                prop_assert_eq!(g.degree(v), 2);
            }
            let mut sorted = vs.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), vs.len());
        }
    }

    #[test]
    fn json_round_trip(g in small_graph(7)) {
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(parse_graph(&text, GraphFormat::Json).unwrap(), g);
    }

    #[test]
    fn edge_list_keeps_first_appearance_order(g in small_graph(7)) {
        prop_assume!(g.edge_count() > 0);
        let text: String = g.edges().map(|(u, v)| format!("{u} {v}  # edge\n")).collect();
        let h = parse_graph(&text, GraphFormat::EdgeList).unwrap();
        let labels = h.labels().unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for (u, v) in h.edges() {
            let (a, b) = (labels[u].parse::<usize>().unwrap(), labels[v].parse::<usize>().unwrap());
            prop_assert!(g.has_edge(a, b));
        }
    }
}
