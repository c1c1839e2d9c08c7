//! Randomized checks of the decoupled ground-energy pipeline: the
//! certified bound really contains the exact answer, and the two solver
//! paths agree.

use ecgraph::Graph;
use ecgraph::partitioner::grow_blocks;
use ecgraph::spin::{
    Hamiltonian, PauliOp, SolveMethod, SpinModel, Term, approx_ground_energy, build_hamiltonian,
    cluster_ground_energy, exact_ground_energy,
};
use proptest::prelude::*;

fn model_for(idx: u8, seed: u64) -> SpinModel<f64> {
    match idx % 4 {
        0 => SpinModel::IsingZz { j: 1.0 },
        1 => SpinModel::TransverseIsing { j: 1.0, h: 0.7 },
        2 => SpinModel::Heisenberg { j: 1.0 },
        _ => SpinModel::Random { amplitude: 1.0, seed },
    }
}

/// Random connected graph: a random tree plus a few chords.
fn random_graph(n: usize, parents: &[u32], chords: &[(u32, u32)]) -> Graph {
    let mut edges: Vec<(u32, u32)> = (1..n as u32)
        .map(|v| (parents[v as usize] % v, v))
        .collect();
    edges.extend(
        chords
            .iter()
            .filter(|&&(u, v)| u != v && (u as usize) < n && (v as usize) < n),
    );
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certified_bound_contains_exact_energy(
        n in 4usize..9,
        parents in proptest::collection::vec(any::<u32>(), 9),
        chords in proptest::collection::vec((0u32..9, 0u32..9), 0..4),
        model_idx in 0u8..4,
        seed in any::<u64>(),
        cap in 2u32..4,
    ) {
        let g = random_graph(n, &parents, &chords);
        let h = build_hamiltonian::<f64>(&g, &model_for(model_idx, seed)).unwrap();
        let p = grow_blocks(&g, cap);
        let report = approx_ground_energy(&h, &p, SolveMethod::Auto).unwrap();
        let exact = exact_ground_energy(&h, SolveMethod::Auto).unwrap();
        let tol = 1e-9 * h.norm1().max(1.0);
        prop_assert!(
            (exact.energy - report.e_approx).abs() <= report.error_bound + tol,
            "exact {} approx {} bound {}",
            exact.energy, report.e_approx, report.error_bound
        );
        let sum: f64 = report.cluster_energies.iter().sum();
        prop_assert!((sum - report.e_approx).abs() <= tol);
        prop_assert!(report.a_priori_bound + tol >= report.removed_norm);
        prop_assert!(
            (report.error_bound - (report.removed_norm + report.solver_residual)).abs() <= tol
        );
    }

    #[test]
    fn hamiltonian_text_roundtrips(
        n in 1u32..12,
        raw_terms in proptest::collection::vec(
            (proptest::collection::btree_map(0u32..12, 0u8..3, 1..4), -10.0f64..10.0),
            1..8,
        ),
    ) {
        let ops = [PauliOp::X, PauliOp::Y, PauliOp::Z];
        let mut terms = Vec::new();
        for (sites, coeff) in raw_terms {
            let list: Vec<(u32, PauliOp)> = sites
                .into_iter()
                .filter(|&(s, _)| s < n)
                .map(|(s, o)| (s, ops[o as usize]))
                .collect();
            if !list.is_empty() {
                terms.push(Term::new(coeff, list).unwrap());
            }
        }
        prop_assume!(!terms.is_empty());
        let h = Hamiltonian::new(n, terms).unwrap();
        prop_assert_eq!(Hamiltonian::parse(&h.to_text()).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn solver_paths_agree(
        n in 6usize..9,
        parents in proptest::collection::vec(any::<u32>(), 9),
        model_idx in 1u8..4,
        seed in any::<u64>(),
    ) {
        let g = random_graph(n, &parents, &[]);
        let h = build_hamiltonian::<f64>(&g, &model_for(model_idx, seed)).unwrap();
        let dense = cluster_ground_energy(&h, SolveMethod::Dense).unwrap();
        let iter = cluster_ground_energy(&h, SolveMethod::Iterative).unwrap();
        let scale = h.norm1().max(1.0);
        prop_assert!(
            (dense.energy - iter.energy).abs() <= 1e-6 * scale,
            "dense {} vs iterative {}",
            dense.energy, iter.energy
        );
        prop_assert!(iter.residual <= 1e-6 * h.norm1());
        prop_assert_eq!(dense.residual, 0.0);
    }
}
