//! Control schedules: shortest block paths and the cost of walking them.
//!
//! Moving control from one block to an adjacent one acts jointly on both
//! blocks, so a hop `(j, k)` is an elementary synthesis on
//! `|b_j| + |b_k|` qubits. A schedule is a shortest path in the block
//! graph together with those per-hop costs.

use serde::Serialize;

use crate::control::{CostModel, elementary_cost};
use crate::error::{Error, Result};
use crate::partition::{BlockGraph, Partition};
use crate::scalar::Scalar;

/// One hop of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleStep<F> {
    /// Block the control leaves.
    pub from: u32,
    /// Block the control enters.
    pub to: u32,
    /// Elementary cost of the joint synthesis on both blocks.
    pub cost: F,
}

/// A costed shortest path between two blocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule<F> {
    /// Visited blocks, source first; a single entry when source equals
    /// destination.
    pub path: Vec<u32>,
    /// Per-hop costs; empty when source equals destination.
    pub steps: Vec<ScheduleStep<F>>,
    /// Sum of step costs.
    pub total_cost: F,
}

/// Shortest path between two blocks of `bg`, ties broken toward lower
/// block indices (the returned path is lexicographically smallest among
/// shortest paths).
///
/// Errors when either endpoint is out of range or no path exists.
pub fn block_path(bg: &BlockGraph, src: u32, dst: u32) -> Result<Vec<u32>> {
    let n = bg.n_blocks() as u32;
    for b in [src, dst] {
        if b >= n {
            return Err(Error::InvalidParameter(format!(
                "block {b} out of range for {n} blocks"
            )));
        }
    }
    if src == dst {
        return Ok(vec![src]);
    }
    // Layered BFS over blocks, expanding each layer in ascending block id
    // so the first-recorded parent is the lowest-index predecessor.
    let mut parent: Vec<Option<u32>> = vec![None; n as usize];
    let mut seen = vec![false; n as usize];
    let mut boundary_used = vec![false; bg.boundaries().len()];
    seen[src as usize] = true;
    let mut layer = vec![src];
    'bfs: while !layer.is_empty() {
        layer.sort_unstable();
        let mut next = Vec::new();
        for &b in &layer {
            for &bi in bg.incident_boundaries(b) {
                if boundary_used[bi as usize] {
                    continue;
                }
                boundary_used[bi as usize] = true;
                for &nb in &bg.boundaries()[bi as usize].blocks {
                    if !seen[nb as usize] {
                        seen[nb as usize] = true;
                        parent[nb as usize] = Some(b);
                        if nb == dst {
                            break 'bfs;
                        }
                        next.push(nb);
                    }
                }
            }
        }
        layer = next;
    }
    if !seen[dst as usize] {
        return Err(Error::NoBlockPath { src, dst });
    }
    let mut path = vec![dst];
    let mut cur = dst;
    while let Some(p) = parent[cur as usize] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    Ok(path)
}

/// Build the costed schedule moving control from block `src` to block
/// `dst`.
///
/// Each hop `(j, k)` costs `elementary_cost(|b_j| + |b_k|)`; the source
/// equal to the destination yields an empty (zero-cost) schedule. The
/// partition must be the one `bg` was built from.
pub fn build_schedule<F: Scalar>(
    bg: &BlockGraph,
    p: &Partition,
    src: u32,
    dst: u32,
    model: &CostModel<F>,
) -> Result<Schedule<F>> {
    if p.n_blocks() != bg.n_blocks() {
        return Err(Error::InvalidParameter(format!(
            "partition has {} blocks but block graph has {}",
            p.n_blocks(),
            bg.n_blocks()
        )));
    }
    let path = block_path(bg, src, dst)?;
    let mut steps = Vec::with_capacity(path.len().saturating_sub(1));
    let mut total_cost = F::zero();
    for w in path.windows(2) {
        let (from, to) = (w[0], w[1]);
        let m = (p.blocks()[from as usize].len() + p.blocks()[to as usize].len()) as u64;
        let cost = elementary_cost(m, model)?;
        total_cost = total_cost + cost;
        if !total_cost.is_finite() {
            return Err(Error::Overflow("schedule cost exceeds the scalar range".into()));
        }
        steps.push(ScheduleStep { from, to, cost });
    }
    Ok(Schedule { path, steps, total_cost })
}
