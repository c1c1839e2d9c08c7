//! Schedule paths and costs against a Floyd–Warshall oracle on the
//! materialized block adjacency.

use ecgraph::control::{CostModel, elementary_cost};
use ecgraph::families::gen_erdos_renyi;
use ecgraph::partition::block_graph;
use ecgraph::partitioner::grow_blocks;
use ecgraph::schedule::{block_path, build_schedule};
use proptest::prelude::*;

fn fw_distances(n: usize, pairs: &std::collections::BTreeMap<(u32, u32), u64>) -> Vec<Vec<u64>> {
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in pairs.keys() {
        d[a as usize][b as usize] = 1;
        d[b as usize][a as usize] = 1;
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
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn path_lengths_match_floyd_warshall(n in 20u64..120, cap in 2u32..6, seed in any::<u64>()) {
        const INF: u64 = u64::MAX / 4;
        let g = gen_erdos_renyi(n, 3.0 / n as f64, seed).unwrap();
        let p = grow_blocks(&g, cap);
        let bg = block_graph(&g, &p).unwrap();
        let nb = bg.n_blocks();
        prop_assume!(nb >= 2);
        let dist = fw_distances(nb, &bg.pairs());
        let model = CostModel::new(1.0, 0.5).unwrap();
        for src in 0..nb.min(6) as u32 {
            for dst in 0..nb.min(6) as u32 {
                let want = dist[src as usize][dst as usize];
                match block_path(&bg, src, dst) {
                    Ok(path) => {
                        prop_assert_eq!(path.len() as u64 - 1, want, "{} -> {}", src, dst);
                        prop_assert_eq!(path[0], src);
                        prop_assert_eq!(*path.last().unwrap(), dst);
                        // Consecutive path blocks are truly adjacent.
                        for w in path.windows(2) {
                            prop_assert!(bg.are_adjacent(w[0], w[1]));
                        }
                        // Reversal has the same length.
                        let back = block_path(&bg, dst, src).unwrap();
                        prop_assert_eq!(back.len(), path.len());
                        // The schedule prices each hop on the two blocks it joins.
                        let s = build_schedule(&bg, &p, src, dst, &model).unwrap();
                        prop_assert_eq!(&s.path, &path);
                        let mut total = 0.0;
                        for st in &s.steps {
                            let m = (p.blocks()[st.from as usize].len()
                                + p.blocks()[st.to as usize].len()) as u64;
                            let c = elementary_cost(m, &model).unwrap();
                            prop_assert_eq!(st.cost, c);
                            total += c;
                        }
                        prop_assert_eq!(s.total_cost, total);
                    }
                    Err(_) => prop_assert_eq!(want, INF, "{} -> {}", src, dst),
                }
            }
        }
    }
}
