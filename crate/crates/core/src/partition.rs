//! Block/control partitions, their validation, and the block (hyper)graph.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, components_of};

/// Disjoint connected blocks plus a control (separator) vertex set.
///
/// The intended invariants against a host graph are checked by
/// [`validate_partition`]: blocks and controls are pairwise disjoint and
/// jointly cover all vertices, every block induces a connected subgraph, and
/// no edge joins two distinct blocks directly — every inter-block path
/// passes through controls.
///
/// Construction normalizes order (members sorted within each list) but
/// performs no graph-dependent checks, so invalid partitions can be
/// represented, inspected, and reported as violation *data*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
    controls: Vec<u32>,
}

/// One failed partition invariant with witness vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A referenced vertex is outside the graph's `[0, n)` range.
    OutOfRange { v: u32 },
    /// A vertex appears in no block and not in the controls.
    Uncovered { v: u32 },
    /// A vertex appears in more than one block/control list.
    Overlap { v: u32 },
    /// A block has no members.
    EmptyBlock { block: u32 },
    /// A block does not induce a connected subgraph.
    Disconnected { block: u32 },
    /// An edge joins two distinct blocks without passing through a control.
    InterBlockEdge { u: u32, v: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::OutOfRange { v } => write!(f, "vertex {v} out of range"),
            Violation::Uncovered { v } => write!(f, "vertex {v} uncovered"),
            Violation::Overlap { v } => write!(f, "vertex {v} assigned more than once"),
            Violation::EmptyBlock { block } => write!(f, "block {block} empty"),
            Violation::Disconnected { block } => write!(f, "block {block} not connected"),
            Violation::InterBlockEdge { u, v } => write!(f, "inter-block edge ({u},{v})"),
        }
    }
}

impl Partition {
    /// Build a partition from block member lists and a control list.
    ///
    /// Members are sorted in place; graph-dependent validity is *not*
    /// checked here (see [`validate_partition`]).
    pub fn new(blocks: Vec<Vec<u32>>, controls: Vec<u32>) -> Self {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        let mut controls = controls;
        controls.sort_unstable();
        Self { blocks, controls }
    }

    /// Block member lists, each sorted.
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Sorted control vertex list.
    pub fn controls(&self) -> &[u32] {
        &self.controls
    }

    /// Number of blocks.
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Largest block size (0 if there are no blocks).
    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Membership lookup table over `0..n`: `Some(Ok(k))` for block `k`,
    /// `Some(Err(()))` for controls, `None` for unassigned vertices.
    /// Duplicate assignments keep the first occurrence (validation reports
    /// them separately).
    pub fn assignment(&self, n: usize) -> Vec<Option<std::result::Result<u32, ()>>> {
        let mut out = vec![None; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &v in b {
                if (v as usize) < n && out[v as usize].is_none() {
                    out[v as usize] = Some(Ok(k as u32));
                }
            }
        }
        for &v in &self.controls {
            if (v as usize) < n && out[v as usize].is_none() {
                out[v as usize] = Some(Err(()));
            }
        }
        out
    }

    /// Serialize as the partition text format: one line
    /// `controls: v1 v2 ...`, then one line `block k: v1 v2 ...` per block.
    pub fn to_text(&self) -> String {
        let mut out = String::from("controls:");
        for &v in &self.controls {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for (k, b) in self.blocks.iter().enumerate() {
            out.push_str(&format!("block {k}:"));
            for &v in b {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }

    /// Write the partition text format.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    /// Parse the partition text format produced by [`Partition::to_text`].
    ///
    /// Block labels must be sequential from 0; round-trips exactly.
    pub fn parse(text: &str) -> Result<Self> {
        let mut controls = None;
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("controls:") {
                if controls.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate controls line".into(),
                    });
                }
                controls = Some(parse_ids(rest, lineno)?);
            } else if let Some(rest) = line.strip_prefix("block ") {
                let (label, ids) = rest.split_once(':').ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected 'block k: ...'".into(),
                })?;
                let k: usize = label.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad block label '{label}'"),
                })?;
                if k != blocks.len() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("block labels must be sequential, expected {}", blocks.len()),
                    });
                }
                blocks.push(parse_ids(ids, lineno)?);
            } else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected 'controls:' or 'block k:' line".into(),
                });
            }
        }
        let controls = controls.ok_or_else(|| Error::Parse {
            line: 1,
            msg: "missing controls line".into(),
        })?;
        Ok(Self::new(blocks, controls))
    }

    /// Parse the partition text format from a reader.
    pub fn read_from(r: &mut impl BufRead) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        Self::parse(&text)
    }
}

fn parse_ids(s: &str, lineno: usize) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("not a vertex id: '{tok}'"),
            })
        })
        .collect()
}

/// Check every partition invariant of `p` against `g`.
///
/// Returns the (possibly empty) list of violations; an empty list means the
/// partition is valid. Violations are data, not faults — operations whose
/// preconditions require validity convert a non-empty list into
/// [`Error::InvalidPartition`].
pub fn validate_partition(g: &Graph, p: &Partition) -> Vec<Violation> {
    let n = g.n();
    let mut violations = Vec::new();

    // Range, coverage and disjointness.
    let mut count = vec![0u8; n];
    let mut tally = |v: u32, violations: &mut Vec<Violation>| {
        if v as usize >= n {
            violations.push(Violation::OutOfRange { v });
        } else {
            count[v as usize] = count[v as usize].saturating_add(1);
        }
    };
    for b in p.blocks() {
        for &v in b {
            tally(v, &mut violations);
        }
    }
    for &v in p.controls() {
        tally(v, &mut violations);
    }
    for v in 0..n as u32 {
        match count[v as usize] {
            0 => violations.push(Violation::Uncovered { v }),
            1 => {}
            _ => violations.push(Violation::Overlap { v }),
        }
    }

    for (k, b) in p.blocks().iter().enumerate() {
        if b.is_empty() {
            violations.push(Violation::EmptyBlock { block: k as u32 });
        }
    }

    // Per-block connectivity (skipping blocks already broken by range errors).
    let assign = p.assignment(n);
    for (k, b) in p.blocks().iter().enumerate() {
        if b.is_empty() || b.iter().any(|&v| v as usize >= n) {
            continue;
        }
        let inside = |v: u32| assign[v as usize] == Some(Ok(k as u32));
        let comp = components_of(n, |v| g.neighbors(v).iter().copied(), inside);
        if comp.len() > 1 {
            violations.push(Violation::Disconnected { block: k as u32 });
        }
    }

    // No edge may join two distinct blocks.
    for &(u, v) in g.edges() {
        if let (Some(Ok(bu)), Some(Ok(bv))) = (assign[u as usize], assign[v as usize])
            && bu != bv
        {
            violations.push(Violation::InterBlockEdge { u, v });
        }
    }

    violations
}

/// One boundary of the block graph: a connected component of the
/// control-induced subgraph together with the blocks it touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    /// Number of control vertices in the component.
    pub size: u64,
    /// Sorted indices of the blocks adjacent to the component (always >= 2;
    /// components touching fewer blocks separate nothing and are dropped).
    pub blocks: Vec<u32>,
}

/// Blocks as nodes, control boundaries as (hyper)edges.
///
/// Two blocks are adjacent when they touch the same connected component of
/// the control-induced subgraph, so a thick control layer shared by many
/// blocks counts as a single boundary. Stored as the list of such
/// components ([`Boundary`]); the pairwise adjacency view and per-pair
/// boundary sizes are materialized on demand by [`BlockGraph::pairs`].
#[derive(Debug, Clone)]
pub struct BlockGraph {
    n_blocks: usize,
    boundaries: Vec<Boundary>,
    /// For each block, indices into `boundaries` it participates in.
    incidence: Vec<Vec<u32>>,
}

/// Build the block graph of a valid partition.
///
/// Errors with [`Error::InvalidPartition`] if `validate_partition` reports
/// any violation.
pub fn block_graph(g: &Graph, p: &Partition) -> Result<BlockGraph> {
    let violations = validate_partition(g, p);
    if !violations.is_empty() {
        return Err(Error::InvalidPartition(violations));
    }
    let n = g.n();
    let assign = p.assignment(n);
    let is_control = |v: u32| assign[v as usize] == Some(Err(()));
    let control_comps = components_of(n, |v| g.neighbors(v).iter().copied(), is_control);

    let mut boundaries = Vec::new();
    for comp in control_comps {
        let mut touched: Vec<u32> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter_map(|w| match assign[w as usize] {
                Some(Ok(k)) => Some(k),
                _ => None,
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        if touched.len() >= 2 {
            boundaries.push(Boundary {
                size: comp.len() as u64,
                blocks: touched,
            });
        }
    }

    let mut incidence = vec![Vec::new(); p.n_blocks()];
    for (i, b) in boundaries.iter().enumerate() {
        for &k in &b.blocks {
            incidence[k as usize].push(i as u32);
        }
    }
    Ok(BlockGraph {
        n_blocks: p.n_blocks(),
        boundaries,
        incidence,
    })
}

impl BlockGraph {
    /// Number of block nodes.
    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    /// The control boundaries (hyperedges).
    pub fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    /// Indices into [`boundaries`](Self::boundaries) of the boundaries
    /// touching block `b`.
    pub fn incident_boundaries(&self, b: u32) -> &[u32] {
        &self.incidence[b as usize]
    }

    /// Whether blocks `j` and `k` are adjacent.
    pub fn are_adjacent(&self, j: u32, k: u32) -> bool {
        if j == k {
            return false;
        }
        self.incidence[j as usize].iter().any(|&bi| {
            self.boundaries[bi as usize].blocks.binary_search(&k).is_ok()
        })
    }

    /// Total boundary size between blocks `j` and `k`: the number of control
    /// vertices in components touching both (0 when not adjacent).
    pub fn boundary_size(&self, j: u32, k: u32) -> u64 {
        if j == k {
            return 0;
        }
        self.incidence[j as usize]
            .iter()
            .filter(|&&bi| self.boundaries[bi as usize].blocks.binary_search(&k).is_ok())
            .map(|&bi| self.boundaries[bi as usize].size)
            .sum()
    }

    /// Materialize the pairwise adjacency view: every adjacent block pair
    /// `(j, k)` with `j < k` mapped to its total boundary size.
    pub fn pairs(&self) -> BTreeMap<(u32, u32), u64> {
        let mut out = BTreeMap::new();
        for b in &self.boundaries {
            for (i, &j) in b.blocks.iter().enumerate() {
                for &k in &b.blocks[i + 1..] {
                    *out.entry((j, k)).or_insert(0) += b.size;
                }
            }
        }
        out
    }

    /// Sum of per-pair boundary sizes over all adjacent pairs. Counts a
    /// boundary component shared by `t` blocks `t*(t-1)/2` times, i.e. the
    /// double-counting pairwise total, reported alongside the distinct
    /// control count.
    pub fn pair_boundary_sum(&self) -> u64 {
        self.boundaries
            .iter()
            .map(|b| {
                let t = b.blocks.len() as u64;
                b.size * t * (t - 1) / 2
            })
            .sum()
    }

    /// Breadth-first distances from `src` in the block graph (`None` for
    /// unreachable blocks). Runs on the hyperedge structure: each boundary
    /// is expanded at most once, so a complete block graph induced by one
    /// shared boundary costs O(N), not O(N^2).
    pub fn bfs_distances(&self, src: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n_blocks];
        if (src as usize) >= self.n_blocks {
            return dist;
        }
        let mut boundary_used = vec![false; self.boundaries.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[src as usize] = Some(0);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &bi in &self.incidence[v as usize] {
                if boundary_used[bi as usize] {
                    continue;
                }
                boundary_used[bi as usize] = true;
                for &w in &self.boundaries[bi as usize].blocks {
                    if dist[w as usize].is_none() {
                        dist[w as usize] = Some(d + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Block-graph diameter: the maximum over block pairs of the
    /// shortest-path length, `None` if the block graph is disconnected.
    /// A single block (or none) has diameter 0.
    pub fn diameter(&self) -> Option<u64> {
        if self.n_blocks <= 1 {
            return Some(0);
        }
        // One boundary touching every block makes the block graph complete.
        if self
            .boundaries
            .iter()
            .any(|b| b.blocks.len() == self.n_blocks)
        {
            return Some(1);
        }
        let mut diam = 0u64;
        for src in 0..self.n_blocks as u32 {
            let dist = self.bfs_distances(src);
            for d in &dist {
                match d {
                    None => return None,
                    Some(d) => diam = diam.max(*d as u64),
                }
            }
        }
        Some(diam)
    }
}
