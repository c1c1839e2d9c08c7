//! Property tests for the graph type against independent oracles.

use ecgraph::Graph;
use proptest::prelude::*;

/// Union-find oracle for connected components, normalized to the library's
/// ordering convention (each component sorted, components ordered by
/// smallest member).
fn uf_components(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v as u32);
    }
    let mut out: Vec<Vec<u32>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

fn edge_list(n: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    if n < 2 {
        return Just(Vec::new()).boxed();
    }
    let n = n as u32;
    proptest::collection::vec((0..n, 0..n), 0..3 * n as usize)
        .prop_map(|pairs| {
            pairs
                .into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect()
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn components_match_union_find(n in 0usize..48, seed_edges in edge_list(48)) {
        let edges: Vec<(u32, u32)> = seed_edges
            .into_iter()
            .filter(|&(u, v)| (u as usize) < n && (v as usize) < n)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        prop_assert_eq!(g.connected_components(), uf_components(n, g.edges()));
    }

    #[test]
    fn text_roundtrip_is_identity(n in 0usize..40, seed_edges in edge_list(40)) {
        let edges: Vec<(u32, u32)> = seed_edges
            .into_iter()
            .filter(|&(u, v)| (u as usize) < n && (v as usize) < n)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn adjacency_views_are_consistent(n in 2usize..40, seed_edges in edge_list(40)) {
        let edges: Vec<(u32, u32)> = seed_edges
            .into_iter()
            .filter(|&(u, v)| (u as usize) < n && (v as usize) < n)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        // has_edge agrees with the neighbor lists, degrees sum to 2m, and
        // every neighbor list is sorted.
        let mut degree_sum = 0;
        for v in 0..n as u32 {
            let neigh = g.neighbors(v);
            prop_assert!(neigh.windows(2).all(|w| w[0] < w[1]));
            degree_sum += g.degree(v);
            for &w in neigh {
                prop_assert!(g.has_edge(v, w));
                prop_assert!(g.has_edge(w, v));
            }
        }
        prop_assert_eq!(degree_sum, 2 * g.m());
        for u in 0..n as u32 {
            for w in 0..n as u32 {
                let listed = g.neighbors(u).binary_search(&w).is_ok();
                prop_assert_eq!(g.has_edge(u, w), listed);
            }
        }
    }
}
