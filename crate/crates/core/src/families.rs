//! Deterministic, seeded generators for the graph families under study.
//!
//! Every generator is a pure function of its parameters and (where present)
//! a 64-bit seed: identical inputs produce identical edge sets. The random
//! stream order is documented per generator so outputs are reproducible
//! bit-for-bit across platforms.

use rand::RngExt;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{Graph, components_of};
use crate::partition::Partition;
use crate::rng::{derive_seed, rng_from_seed};

/// Safety cap on generated vertex counts (memory guard for mis-typed
/// parameters; all supported experiments sit far below it).
const MAX_VERTICES: u64 = 1 << 28;

/// A graph family instance: which kind, with which parameters.
///
/// `p_c` is never a parameter — it is a *measured* output of
/// [`estimate_pc`] (or supplied explicitly by the caller as `p`).
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Path of `n_blocks * l - 1` vertices; canonical partition has
    /// `n_blocks` blocks of size `l - 1` split by single controls.
    Chain { n_blocks: u64, l: u32 },
    /// `d`-dimensional grid of side `n_blocks * l - 1`, open boundaries;
    /// canonical controls are the layers with some coordinate `== l - 1 (mod l)`.
    Lattice { d: u32, n_blocks: u64, l: u32 },
    /// Sierpinski gasket at iteration `depth`.
    Sierpinski { depth: u32 },
    /// `d`-dimensional grid with each site kept independently with
    /// probability `p`; absent sites stay as isolated vertex ids.
    PercolatedLattice { side: u32, d: u32, p: f64, seed: u64 },
    /// Erdős–Rényi G(n, p).
    ErdosRenyi { n: u64, p: f64, seed: u64 },
    /// Configuration-model graph with degree distribution ∝ k^(-alpha) on
    /// `[kmin, ceil(sqrt(n))]`; the largest connected component, relabeled.
    ScaleFree {
        n: u64,
        alpha: f64,
        kmin: u32,
        seed: u64,
    },
}

/// Output of [`FamilySpec::generate`].
#[derive(Debug, Clone)]
pub struct Generated {
    /// The graph itself.
    pub graph: Graph,
    /// Canonical partition, for the kinds that prescribe one (chain,
    /// lattice).
    pub partition: Option<Partition>,
    /// Kept-site mask for percolated lattices.
    pub kept: Option<Vec<bool>>,
}

impl FamilySpec {
    /// Stable kind name (CLI spelling).
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Chain { .. } => "chain",
            FamilySpec::Lattice { .. } => "lattice",
            FamilySpec::Sierpinski { .. } => "sierpinski",
            FamilySpec::PercolatedLattice { .. } => "percolated-lattice",
            FamilySpec::ErdosRenyi { .. } => "erdos-renyi",
            FamilySpec::ScaleFree { .. } => "scale-free",
        }
    }

    /// Validate parameters for this kind.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Chain { n_blocks, l } => {
                if n_blocks < 1 {
                    return Err(Error::InvalidParameter("chain requires N >= 1".into()));
                }
                if l < 2 {
                    return Err(Error::InvalidParameter("chain requires L >= 2".into()));
                }
            }
            FamilySpec::Lattice { d, n_blocks, l } => {
                if d < 1 {
                    return Err(Error::InvalidParameter("lattice requires d >= 1".into()));
                }
                if n_blocks < 1 {
                    return Err(Error::InvalidParameter("lattice requires N >= 1".into()));
                }
                if l < 2 {
                    return Err(Error::InvalidParameter("lattice requires L >= 2".into()));
                }
            }
            FamilySpec::Sierpinski { .. } => {}
            FamilySpec::PercolatedLattice { side, d, p, .. } => {
                if d < 1 {
                    return Err(Error::InvalidParameter(
                        "percolated lattice requires d >= 1".into(),
                    ));
                }
                if side < 1 {
                    return Err(Error::InvalidParameter(
                        "percolated lattice requires side >= 1".into(),
                    ));
                }
                check_probability(p)?;
            }
            FamilySpec::ErdosRenyi { p, .. } => check_probability(p)?,
            FamilySpec::ScaleFree { n, alpha, kmin, .. } => {
                if !(alpha > 1.0) {
                    return Err(Error::InvalidParameter(
                        "scale-free requires alpha > 1".into(),
                    ));
                }
                if kmin < 1 || u64::from(kmin) >= n {
                    return Err(Error::InvalidParameter(
                        "scale-free requires 1 <= kmin < n".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Generate the instance.
    pub fn generate(&self) -> Result<Generated> {
        self.validate()?;
        match *self {
            FamilySpec::Chain { n_blocks, l } => {
                let (graph, partition) = gen_chain(n_blocks, l)?;
                Ok(Generated {
                    graph,
                    partition: Some(partition),
                    kept: None,
                })
            }
            FamilySpec::Lattice { d, n_blocks, l } => {
                let (graph, partition) = gen_lattice(d, n_blocks, l)?;
                Ok(Generated {
                    graph,
                    partition: Some(partition),
                    kept: None,
                })
            }
            FamilySpec::Sierpinski { depth } => Ok(Generated {
                graph: gen_sierpinski(depth)?,
                partition: None,
                kept: None,
            }),
            FamilySpec::PercolatedLattice { side, d, p, seed } => {
                let (graph, kept) = gen_percolated_lattice(side, d, p, seed)?;
                Ok(Generated {
                    graph,
                    partition: None,
                    kept: Some(kept),
                })
            }
            FamilySpec::ErdosRenyi { n, p, seed } => Ok(Generated {
                graph: gen_erdos_renyi(n, p, seed)?,
                partition: None,
                kept: None,
            }),
            FamilySpec::ScaleFree {
                n,
                alpha,
                kmin,
                seed,
            } => Ok(Generated {
                graph: gen_scale_free(n, alpha, kmin, seed)?,
                partition: None,
                kept: None,
            }),
        }
    }

    /// Re-parameterize this spec for one point of a size scan.
    ///
    /// Size semantics per kind: for `chain` and `lattice` the size is the
    /// block count per axis `N` and the block parameter is re-derived from
    /// it (`L(N) = max(2, ceil(log2 N / 2x))` for chains,
    /// `L(N) = max(2, ceil(((d - 1/2)/(2x) * log2 N)^(1/d)))` for lattices);
    /// for `sierpinski` the size is the iteration depth; for the seeded
    /// kinds the size is the target vertex count `n` (side length derived
    /// as `round(n^(1/d))` for percolated lattices) and the per-size seed is
    /// `derive_seed(seed, size)`.
    pub fn at_size(&self, size: u64, x: f64) -> Result<FamilySpec> {
        if size < 1 {
            return Err(Error::InvalidParameter("scan size must be >= 1".into()));
        }
        let spec = match *self {
            FamilySpec::Chain { .. } => FamilySpec::Chain {
                n_blocks: size,
                l: chain_block_param(size, x),
            },
            FamilySpec::Lattice { d, .. } => FamilySpec::Lattice {
                d,
                n_blocks: size,
                l: lattice_block_param(d, size, x),
            },
            FamilySpec::Sierpinski { .. } => FamilySpec::Sierpinski {
                depth: u32::try_from(size)
                    .map_err(|_| Error::InvalidParameter("sierpinski depth too large".into()))?,
            },
            FamilySpec::PercolatedLattice { d, p, seed, .. } => {
                let side = (size as f64).powf(1.0 / f64::from(d)).round().max(1.0) as u32;
                FamilySpec::PercolatedLattice {
                    side,
                    d,
                    p,
                    seed: derive_seed(seed, size),
                }
            }
            FamilySpec::ErdosRenyi { p, seed, .. } => FamilySpec::ErdosRenyi {
                n: size,
                p,
                seed: derive_seed(seed, size),
            },
            FamilySpec::ScaleFree {
                alpha, kmin, seed, ..
            } => FamilySpec::ScaleFree {
                n: size,
                alpha,
                kmin,
                seed: derive_seed(seed, size),
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Canonical chain block parameter `L(N) = max(2, ceil(log2 N / 2x))`.
pub fn chain_block_param(n_blocks: u64, x: f64) -> u32 {
    let l = ((n_blocks as f64).log2() / (2.0 * x)).ceil();
    (l.max(2.0)) as u32
}

/// Canonical lattice block parameter
/// `L(N) = max(2, ceil(((d - 1/2)/(2x) * log2 N)^(1/d)))`.
pub fn lattice_block_param(d: u32, n_blocks: u64, x: f64) -> u32 {
    let inner = (f64::from(d) - 0.5) / (2.0 * x) * (n_blocks as f64).log2();
    let l = inner.powf(1.0 / f64::from(d)).ceil();
    (l.max(2.0)) as u32
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "probability must be in [0, 1], got {p}"
        )));
    }
    Ok(())
}

fn checked_vertex_count(n: u64) -> Result<usize> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "vertex count {n} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    Ok(n as usize)
}

/// Chain family: path of `n = N*L - 1` vertices, `N` blocks of size `L - 1`,
/// single controls at positions `k*L - 1` for `k = 1..N`.
///
/// The control fraction is `c/n = (N-1)/(N*L - 1)`, roughly `1/L`.
pub fn gen_chain(n_blocks: u64, l: u32) -> Result<(Graph, Partition)> {
    FamilySpec::Chain { n_blocks, l }.validate()?;
    let n64 = n_blocks
        .checked_mul(u64::from(l))
        .ok_or_else(|| Error::InvalidParameter("chain size overflows".into()))?
        - 1;
    let n = checked_vertex_count(n64)?;
    let graph = Graph::new(n, (1..n as u32).map(|v| (v - 1, v)))?;
    let l = l as usize;
    let controls: Vec<u32> = (1..n_blocks as usize).map(|k| (k * l - 1) as u32).collect();
    let blocks: Vec<Vec<u32>> = (0..n_blocks as usize)
        .map(|k| (k * l..k * l + l - 1).map(|v| v as u32).collect())
        .collect();
    Ok((graph, Partition::new(blocks, controls)))
}

/// Map a `d`-dimensional coordinate to its vertex id (coordinate 0 is the
/// least significant axis).
fn grid_id(coords: &[u32], side: u32) -> u32 {
    let mut id = 0u64;
    for &c in coords.iter().rev() {
        id = id * u64::from(side) + u64::from(c);
    }
    id as u32
}

/// Nearest-neighbor edges of a `d`-dimensional grid with open boundaries.
fn grid_edges(side: u32, d: u32) -> Vec<(u32, u32)> {
    let n = (u64::from(side)).pow(d) as usize;
    let mut edges = Vec::new();
    let mut coords = vec![0u32; d as usize];
    for v in 0..n as u32 {
        for axis in 0..d as usize {
            if coords[axis] + 1 < side {
                coords[axis] += 1;
                edges.push((v, grid_id(&coords, side)));
                coords[axis] -= 1;
            }
        }
        // Odometer increment.
        for c in coords.iter_mut() {
            *c += 1;
            if *c < side {
                break;
            }
            *c = 0;
        }
    }
    edges
}

/// `d`-dimensional lattice family: grid of side `N*L - 1` (open boundaries),
/// controls at every site with some coordinate `== L - 1 (mod L)`, blocks the
/// remaining `N^d` cubes of `(L-1)^d` sites.
///
/// `gen_lattice(1, N, L)` is identical (by vertex id) to `gen_chain(N, L)`.
pub fn gen_lattice(d: u32, n_blocks: u64, l: u32) -> Result<(Graph, Partition)> {
    FamilySpec::Lattice { d, n_blocks, l }.validate()?;
    let side64 = n_blocks
        .checked_mul(u64::from(l))
        .ok_or_else(|| Error::InvalidParameter("lattice size overflows".into()))?
        - 1;
    let n64 = side64
        .checked_pow(d)
        .ok_or_else(|| Error::InvalidParameter("lattice size overflows".into()))?;
    let n = checked_vertex_count(n64)?;
    let side = side64 as u32;
    let graph = Graph::new(n, grid_edges(side, d))?;

    let mut is_control = vec![false; n];
    let mut coords = vec![0u32; d as usize];
    for v in 0..n {
        if coords.iter().any(|&c| c % l == l - 1) {
            is_control[v] = true;
        }
        for c in coords.iter_mut() {
            *c += 1;
            if *c < side {
                break;
            }
            *c = 0;
        }
    }
    let controls: Vec<u32> = (0..n as u32).filter(|&v| is_control[v as usize]).collect();
    let blocks = components_of(
        n,
        |v| graph.neighbors(v).iter().copied(),
        |v| !is_control[v as usize],
    );
    Ok((graph, Partition::new(blocks, controls)))
}

/// Sierpinski gasket at iteration `depth`: depth 0 is a triangle; each
/// iteration glues three copies of the previous graph at corner vertices.
///
/// Vertex ids are assigned by sorting the gasket's planar coordinates, so
/// the construction is deterministic. Counts satisfy
/// `V_k = 3(3^k + 1)/2` and `E_k = 3^(k+1)`.
pub fn gen_sierpinski(depth: u32) -> Result<Graph> {
    if depth > 16 {
        return Err(Error::InvalidParameter(
            "sierpinski depth above 16 is not supported".into(),
        ));
    }
    type P = (i64, i64);
    // Edge set over integer coordinates; corners at (0,0), (2^k,0), (0,2^k).
    let mut edges: Vec<(P, P)> = vec![((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (0, 1))];
    for k in 0..depth {
        let shift = 1i64 << k;
        let translate = |(x, y): P, (dx, dy): P| (x + dx, y + dy);
        let mut next = Vec::with_capacity(edges.len() * 3);
        for &(a, b) in &edges {
            next.push((a, b));
            next.push((translate(a, (shift, 0)), translate(b, (shift, 0))));
            next.push((translate(a, (0, shift)), translate(b, (0, shift))));
        }
        edges = next;
    }
    let mut points: Vec<P> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    points.sort_unstable();
    points.dedup();
    let index = |p: &P| points.binary_search(p).unwrap() as u32;
    let id_edges: Vec<(u32, u32)> = edges.iter().map(|(a, b)| (index(a), index(b))).collect();
    Graph::new(points.len(), id_edges)
}

/// Site-percolated `d`-dimensional grid: each of the `side^d` sites is kept
/// independently with probability `p`; edges join kept nearest neighbors.
/// Absent sites remain as isolated vertex ids so the id space is the full
/// grid; the kept-site mask is returned alongside.
///
/// Random stream: one `p`-Bernoulli draw per site in vertex-major order.
pub fn gen_percolated_lattice(
    side: u32,
    d: u32,
    p: f64,
    seed: u64,
) -> Result<(Graph, Vec<bool>)> {
    let spec = FamilySpec::PercolatedLattice { side, d, p, seed };
    spec.validate()?;
    let n64 = u64::from(side)
        .checked_pow(d)
        .ok_or_else(|| Error::InvalidParameter("lattice size overflows".into()))?;
    let n = checked_vertex_count(n64)?;
    let mut rng = rng_from_seed(seed);
    let kept: Vec<bool> = (0..n).map(|_| rng.random_bool(p)).collect();
    let edges = grid_edges(side, d)
        .into_iter()
        .filter(|&(u, v)| kept[u as usize] && kept[v as usize]);
    Ok((Graph::new(n, edges)?, kept))
}

/// Erdős–Rényi G(n, p): each of the `C(n,2)` vertex pairs is an edge
/// independently with probability `p`.
///
/// Random stream: geometric skip-sampling over pairs in lexicographic
/// order — one uniform draw per emitted edge (plus one trailing draw), so
/// sparse graphs cost O(m) draws rather than O(n^2).
pub fn gen_erdos_renyi(n: u64, p: f64, seed: u64) -> Result<Graph> {
    let spec = FamilySpec::ErdosRenyi { n, p, seed };
    spec.validate()?;
    let nv = checked_vertex_count(n)?;
    let total = n * n.saturating_sub(1) / 2;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    if p >= 1.0 {
        for u in 0..nv as u32 {
            for v in u + 1..nv as u32 {
                edges.push((u, v));
            }
        }
    } else if p > 0.0 {
        let mut rng = rng_from_seed(seed);
        let log1mp = (1.0 - p).ln();
        let mut pos: u64 = 0;
        loop {
            let u: f64 = rng.random();
            let skip = ((1.0 - u).ln() / log1mp).floor();
            pos = pos.saturating_add(if skip >= total as f64 {
                total
            } else {
                skip as u64
            });
            if pos >= total {
                break;
            }
            edges.push(pair_from_index(n, pos));
            pos += 1;
        }
    }
    Graph::new(nv, edges)
}

/// Invert the lexicographic pair index: `t` in `[0, C(n,2))` to the pair
/// `(u, v)` with `u < v`.
fn pair_from_index(n: u64, t: u64) -> (u32, u32) {
    // base(u) = u*(n-1) - u*(u-1)/2 is the index of pair (u, u+1).
    let base = |u: u64| u * (n - 1) - u * u.saturating_sub(1) / 2;
    // Float estimate of the row, corrected exactly.
    let mut u = {
        let nf = n as f64;
        let tf = t as f64;
        let disc = (2.0 * nf - 1.0) * (2.0 * nf - 1.0) - 8.0 * tf;
        (((2.0 * nf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor().max(0.0) as u64
    };
    u = u.min(n - 2);
    while base(u) > t {
        u -= 1;
    }
    while u + 1 <= n - 2 && base(u + 1) <= t {
        u += 1;
    }
    let v = u + 1 + (t - base(u));
    (u as u32, v as u32)
}

/// Scale-free family by the configuration model: degrees sampled from the
/// normalized distribution ∝ k^(-alpha) on `[kmin, ceil(sqrt(n))]`
/// (structural cutoff keeps the graph simple-feasible), total degree forced
/// even by one extra stub on vertex 0, random stub matching, self-loops and
/// duplicate edges dropped, and the largest connected component returned
/// with vertices relabeled to contiguous ids (relative order preserved).
///
/// Random stream: one uniform draw per vertex for its degree (vertex-major),
/// then one full Fisher–Yates shuffle of the stub list; matched pairs are
/// consecutive shuffled stubs.
pub fn gen_scale_free(n: u64, alpha: f64, kmin: u32, seed: u64) -> Result<Graph> {
    let spec = FamilySpec::ScaleFree {
        n,
        alpha,
        kmin,
        seed,
    };
    spec.validate()?;
    let nv = checked_vertex_count(n)?;
    let kmax = ((n as f64).sqrt().ceil() as u32).max(kmin);

    // Cumulative distribution over [kmin, kmax].
    let weights: Vec<f64> = (kmin..=kmax)
        .map(|k| f64::from(k).powf(-alpha))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut cdf = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cdf.push(acc);
    }

    let mut rng = rng_from_seed(seed);
    let mut degrees = Vec::with_capacity(nv);
    for _ in 0..nv {
        let u: f64 = rng.random();
        let idx = cdf.partition_point(|&c| c < u).min(cdf.len() - 1);
        degrees.push(kmin + idx as u32);
    }
    let stub_total: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    if stub_total % 2 == 1 {
        degrees[0] += 1;
    }

    let mut stubs: Vec<u32> = Vec::with_capacity(stub_total as usize + 1);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    stubs.shuffle(&mut rng);

    let mut edge_set = std::collections::BTreeSet::new();
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if a != b {
            edge_set.insert((a.min(b), a.max(b)));
        }
    }
    if edge_set.is_empty() {
        return Err(Error::DegenerateDegrees);
    }

    let full = Graph::new(nv, edge_set.iter().copied())?;
    let comps = full.connected_components();
    let largest = comps
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
        .expect("nonempty edge set implies a component");
    let mut relabel = vec![u32::MAX; nv];
    for (new_id, &v) in largest.iter().enumerate() {
        relabel[v as usize] = new_id as u32;
    }
    let cc_edges = edge_set
        .iter()
        .filter(|&&(u, v)| relabel[u as usize] != u32::MAX && relabel[v as usize] != u32::MAX)
        .map(|&(u, v)| (relabel[u as usize], relabel[v as usize]));
    Graph::new(largest.len(), cc_edges)
}

/// Synthetic family with a complete block graph: `n_blocks` path-connected
/// blocks of `L = ceil(log2 n_blocks)` vertices, and for every block pair a
/// dedicated boundary of `ceil(L^(1-beta) / (n_blocks - 1))` control
/// vertices, each adjacent to one vertex in each of its two blocks.
///
/// With every per-pair boundary distinct, each control bridges exactly one
/// pair, every pair of blocks is adjacent (block-graph diameter 1), and the
/// total control count is `C(n_blocks, 2)` times the per-pair count. Note
/// the ceiling clamps the per-pair count to 1 at small sizes, which makes
/// the control *fraction* rise with `n_blocks` even though the control
/// *complexity* stays near-linear in `n`.
pub fn gen_fully_connected_blocks(n_blocks: u64, beta: f64) -> Result<(Graph, Partition)> {
    if n_blocks < 2 {
        return Err(Error::InvalidParameter(
            "fully connected block family requires N >= 2".into(),
        ));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter("beta must be in [0, 1]".into()));
    }
    let l = ((n_blocks as f64).log2().ceil() as u64).max(1);
    let b = ((l as f64).powf(1.0 - beta) / (n_blocks - 1) as f64).ceil() as u64;
    let pairs = n_blocks * (n_blocks - 1) / 2;
    let n64 = n_blocks
        .checked_mul(l)
        .and_then(|base| pairs.checked_mul(b).and_then(|c| base.checked_add(c)))
        .ok_or_else(|| Error::InvalidParameter("family size overflows".into()))?;
    let n = checked_vertex_count(n64)?;

    let mut edges = Vec::new();
    let block_base = |j: u64| j * l;
    for j in 0..n_blocks {
        for t in 1..l {
            edges.push(((block_base(j) + t - 1) as u32, (block_base(j) + t) as u32));
        }
    }
    let blocks: Vec<Vec<u32>> = (0..n_blocks)
        .map(|j| (block_base(j)..block_base(j) + l).map(|v| v as u32).collect())
        .collect();
    let mut controls = Vec::new();
    let mut next = n_blocks * l;
    for j in 0..n_blocks {
        for k in j + 1..n_blocks {
            for t in 0..b {
                let c = next as u32;
                next += 1;
                controls.push(c);
                edges.push((c, (block_base(j) + (t % l)) as u32));
                edges.push((c, (block_base(k) + (t % l)) as u32));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    Ok((graph, Partition::new(blocks, controls)))
}

/// Estimate the site-percolation threshold of a `d`-dimensional grid by
/// bisection on the event "the largest kept-site component contains at
/// least half of the kept sites", averaged over `trials` seeded trials per
/// probe; returns the bracket midpoint once the bracket width is <= 0.01.
///
/// Trial `t` uses the generator seeded with `derive_seed(seed, t)`, so
/// trials are independent of evaluation order and may run concurrently.
pub fn estimate_pc(side: u32, d: u32, trials: u32, seed: u64) -> Result<f64> {
    if side < 16 {
        return Err(Error::InvalidParameter("estimate_pc requires side >= 16".into()));
    }
    if trials < 1 {
        return Err(Error::InvalidParameter("estimate_pc requires trials >= 1".into()));
    }
    if d < 1 {
        return Err(Error::InvalidParameter("estimate_pc requires d >= 1".into()));
    }
    u64::from(side)
        .checked_pow(d)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::InvalidParameter("lattice size overflows".into()))?;

    use rayon::prelude::*;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 0.01 {
        let mid = (lo + hi) / 2.0;
        let successes: u32 = (0..trials)
            .into_par_iter()
            .map(|t| {
                let (graph, kept) = gen_percolated_lattice(side, d, mid, derive_seed(seed, t.into()))
                    .expect("validated parameters");
                let kept_count = kept.iter().filter(|&&k| k).count();
                if kept_count == 0 {
                    return 0u32;
                }
                let largest = components_of(
                    graph.n(),
                    |v| graph.neighbors(v).iter().copied(),
                    |v| kept[v as usize],
                )
                .into_iter()
                .map(|c| c.len())
                .max()
                .unwrap_or(0);
                u32::from(2 * largest >= kept_count)
            })
            .sum();
        if 2 * successes >= trials {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}
