//! Property tests for partitioning strategies and the block graph, checked
//! against simple test-local oracles.

use ecgraph::families::gen_erdos_renyi;
use ecgraph::partition::{block_graph, validate_partition};
use ecgraph::partitioner::{delta_removal_partition, grow_blocks, high_degree_partition};
use ecgraph::{Graph, Partition};
use proptest::prelude::*;

/// Test-local oracle: control components by plain DFS, then pairwise block
/// adjacency = "some control component neighbors both".
fn adjacency_oracle(g: &Graph, p: &Partition) -> Vec<Vec<bool>> {
    let n = g.n();
    let nb = p.n_blocks();
    let mut block_of = vec![None; n];
    for (k, b) in p.blocks().iter().enumerate() {
        for &v in b {
            block_of[v as usize] = Some(k);
        }
    }
    let is_control = {
        let mut c = vec![false; n];
        for &v in p.controls() {
            c[v as usize] = true;
        }
        c
    };
    let mut seen = vec![false; n];
    let mut adj = vec![vec![false; nb]; nb];
    for s in 0..n {
        if !is_control[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v as u32) {
                let w = w as usize;
                if is_control[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        let mut touched: Vec<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v as u32))
            .filter_map(|&w| block_of[w as usize])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for (i, &a) in touched.iter().enumerate() {
            for &b in &touched[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    adj
}

/// Floyd–Warshall diameter over the materialized pairwise block adjacency;
/// `None` when disconnected (for >= 2 blocks).
fn diameter_oracle(adj: &[Vec<bool>]) -> Option<u64> {
    let n = adj.len();
    if n <= 1 {
        return Some(0);
    }
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    let max = d.iter().flatten().copied().max().unwrap();
    (max < INF).then_some(max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_removal_always_validates(n in 10u64..200, delta in 0.05f64..0.95, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, 3.0 / n as f64, seed).unwrap();
        let p = delta_removal_partition(&g, delta, seed ^ 0xD5).unwrap();
        prop_assert!(validate_partition(&g, &p).is_empty());
        let covered: usize = p.blocks().iter().map(Vec::len).sum::<usize>() + p.controls().len();
        prop_assert_eq!(covered, g.n());
    }

    #[test]
    fn grow_blocks_respects_cap_and_validates(n in 10u64..200, cap in 1u32..12, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, 4.0 / n as f64, seed).unwrap();
        let p = grow_blocks(&g, cap);
        prop_assert!(validate_partition(&g, &p).is_empty());
        prop_assert!(p.blocks().iter().all(|b| b.len() <= cap as usize));
    }

    #[test]
    fn high_degree_takes_the_stated_count(n in 10u64..200, f in 0.01f64..0.6, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, 4.0 / n as f64, seed).unwrap();
        let p = high_degree_partition(&g, f).unwrap();
        prop_assert!(validate_partition(&g, &p).is_empty());
        prop_assert_eq!(p.controls().len(), (f * g.n() as f64).ceil() as usize);
        // Every control's degree is at least every block vertex's degree
        // unless tied ids decided, in which case degrees can only tie.
        let min_control = p.controls().iter().map(|&v| g.degree(v)).min().unwrap_or(0);
        let max_block = p
            .blocks()
            .iter()
            .flatten()
            .map(|&v| g.degree(v))
            .max()
            .unwrap_or(0);
        prop_assert!(max_block <= min_control || p.controls().is_empty());
    }

    #[test]
    fn block_adjacency_and_diameter_match_oracles(n in 20u64..140, cap in 2u32..8, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, 3.0 / n as f64, seed).unwrap();
        let p = grow_blocks(&g, cap);
        let bg = block_graph(&g, &p).unwrap();
        let adj = adjacency_oracle(&g, &p);
        for j in 0..p.n_blocks() {
            for k in 0..p.n_blocks() {
                prop_assert_eq!(bg.are_adjacent(j as u32, k as u32), adj[j][k], "pair ({}, {})", j, k);
            }
        }
        prop_assert_eq!(bg.diameter(), diameter_oracle(&adj));
        // The pairwise view only lists truly adjacent pairs, with positive sizes.
        for (&(a, b), &size) in bg.pairs().iter() {
            prop_assert!(a < b);
            prop_assert!(adj[a as usize][b as usize]);
            prop_assert!(size >= 1);
        }
    }

    #[test]
    fn partition_text_roundtrip(n in 5u64..80, delta in 0.1f64..0.5, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, 3.0 / n as f64, seed).unwrap();
        let p = delta_removal_partition(&g, delta, seed).unwrap();
        prop_assert_eq!(Partition::parse(&p.to_text()).unwrap(), p);
    }
}
