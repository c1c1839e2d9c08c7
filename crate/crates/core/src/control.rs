//! Controllability metrics: the elementary cost model, per-partition
//! metrics, size scans over a family, and the efficient-controllability
//! classifier.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::fit::least_squares_loglog;
use crate::graph::Graph;
use crate::partition::{Partition, block_graph};
use crate::partitioner::PartitionStrategy;
use crate::rng::derive_seed;
use crate::scalar::Scalar;

/// Elementary synthesis cost parameters: synthesizing a unitary on `m`
/// qubits to gate accuracy `eps_gate` costs `2^(2*m*x) / eps_gate`
/// elementary operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModel<F> {
    /// Cost exponent; at least 1.
    pub x: F,
    /// Target gate accuracy in `(0, 1]`.
    pub eps_gate: F,
}

impl<F: Scalar> CostModel<F> {
    /// Build a cost model, validating `x >= 1` and `0 < eps_gate <= 1`.
    pub fn new(x: F, eps_gate: F) -> Result<Self> {
        if !(x >= F::one()) {
            return Err(Error::InvalidParameter(format!("x must be >= 1, got {x}")));
        }
        if !(eps_gate > F::zero() && eps_gate <= F::one()) {
            return Err(Error::InvalidParameter(format!(
                "eps_gate must be in (0, 1], got {eps_gate}"
            )));
        }
        Ok(Self { x, eps_gate })
    }
}

/// Elementary-operation count `2^(2*m*x) / eps_gate` for an `m`-qubit
/// synthesis.
///
/// Strictly monotone in `m` and `x`, inversely proportional to `eps_gate`.
/// Values beyond the scalar's finite range are an explicit overflow error,
/// never a silent infinity.
pub fn elementary_cost<F: Scalar>(m: u64, model: &CostModel<F>) -> Result<F> {
    let exponent = F::from_u64(2 * m).ok_or_else(|| {
        Error::Overflow(format!("qubit count {m} not representable"))
    })? * model.x;
    let cost = exponent.exp2() / model.eps_gate;
    if !cost.is_finite() {
        return Err(Error::Overflow(format!(
            "2^(2*{m}*{}) / {} exceeds the scalar range",
            model.x, model.eps_gate
        )));
    }
    Ok(cost)
}

/// Metrics of one (graph, partition) pair under a cost model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport<F> {
    /// Vertex count.
    pub n: u64,
    /// Control count (distinct control vertices).
    pub c: u64,
    /// Control fraction `c / n`, exact.
    pub c_over_n: Ratio<u64>,
    /// Number of blocks.
    pub n_blocks: u64,
    /// Largest block size.
    pub l_max: u64,
    /// Per-pair boundary sizes `(j, k, size)` for adjacent block pairs,
    /// sorted by `(j, k)`. Adjacency is per boundary *component*, so a
    /// single control component touching `t` blocks contributes all
    /// `t*(t-1)/2` pairs — for partitions whose controls are one connected
    /// layer (e.g. canonical lattices) this listing is quadratic in the
    /// block count; budget accordingly before requesting metrics on such
    /// partitions at large sizes.
    pub boundary_sizes: Vec<(u32, u32, u64)>,
    /// Sum of boundary sizes over adjacent pairs; double-counts controls
    /// whose boundary component touches three or more blocks, hence
    /// reported alongside the distinct count `c`.
    pub boundary_pair_sum: u64,
    /// Block-graph diameter as used in the complexity (the single-block
    /// convention reports 1, not 0, so a lone block still costs one
    /// synthesis); `None` when the block graph is disconnected.
    pub d: Option<u64>,
    /// Control complexity `D * 2^(2*x*L_max) / eps_gate`; `None` (infinite)
    /// when the block graph is disconnected.
    pub complexity: Option<F>,
}

/// Compute all metrics for a valid partition of `g`.
///
/// Errors on invalid partitions, on empty graphs (no control fraction
/// exists), and on cost overflow. A disconnected block graph is not an
/// error: it is reported as infinite complexity (`None`).
pub fn partition_metrics<F: Scalar>(
    g: &Graph,
    p: &Partition,
    model: &CostModel<F>,
) -> Result<MetricsReport<F>> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter(
            "metrics are undefined for an empty graph".into(),
        ));
    }
    let bg = block_graph(g, p)?;
    let n = g.n() as u64;
    let c = p.controls().len() as u64;
    let l_max = p.max_block_size() as u64;
    let boundary_sizes: Vec<(u32, u32, u64)> = bg
        .pairs()
        .into_iter()
        .map(|((j, k), s)| (j, k, s))
        .collect();
    let d = bg.diameter().map(|d| d.max(1));
    let complexity = match d {
        Some(d_eff) => {
            let s = elementary_cost(l_max, model)?;
            let total = F::from_u64(d_eff)
                .ok_or_else(|| Error::Overflow("diameter not representable".into()))?
                * s;
            if !total.is_finite() {
                return Err(Error::Overflow("complexity exceeds the scalar range".into()));
            }
            Some(total)
        }
        None => None,
    };
    Ok(MetricsReport {
        n,
        c,
        c_over_n: Ratio::new(c, n),
        n_blocks: p.n_blocks() as u64,
        l_max,
        boundary_sizes,
        boundary_pair_sum: bg.pair_boundary_sum(),
        d,
        complexity,
    })
}

/// One point of a family scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint<F> {
    /// The scan size parameter this point was generated at (blocks per axis
    /// for chain/lattice, target vertex count otherwise).
    pub size: u64,
    /// Metrics at this size.
    pub metrics: MetricsReport<F>,
}

/// Metrics over strictly increasing sizes of one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport<F> {
    /// Points in ascending size order.
    pub points: Vec<ScanPoint<F>>,
}

/// Classification verdict for a scanned family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict<F> {
    /// Whether the family passes the finite-size efficient-controllability
    /// proxy: control fraction non-increasing and at least halved over the
    /// scan, and fitted complexity exponent within the polynomial cap.
    pub ec_flag: bool,
    /// Least-squares slope of `log2 complexity` against `log2 n`.
    pub beta_hat: F,
    /// Root-mean-square residual of that fit.
    pub rms_residual: F,
    /// Control fraction at the first scan point.
    pub fraction_first: Ratio<u64>,
    /// Control fraction at the last scan point.
    pub fraction_last: Ratio<u64>,
    /// Whether `c/n` was non-increasing across all points (exact rational
    /// comparisons).
    pub fraction_nonincreasing: bool,
    /// Whether the final `c/n` is strictly below half the first.
    pub fraction_halved: bool,
}

/// Default polynomial cap on the fitted complexity exponent.
pub fn default_poly_cap<F: Scalar>() -> F {
    F::from_f64_lossy(3.0)
}

/// Generate, partition, and measure one family at each of the given sizes.
///
/// `spec` acts as the family template; each size re-derives parameters via
/// [`FamilySpec::at_size`] (canonical block parameters from the cost
/// exponent, per-size seeds for the random kinds). The `canonical` strategy
/// uses the generator's partition and errors for families that have none.
/// Seeded strategies are re-seeded per size with `derive_seed(seed, size)`.
/// Sizes must be strictly increasing with at least 3 points. Points are
/// computed concurrently; the report is assembled in size order and any
/// failure is reported for the smallest failing size.
pub fn family_scan<F: Scalar>(
    spec: &FamilySpec,
    strategy: &PartitionStrategy,
    sizes: &[u64],
    model: &CostModel<F>,
) -> Result<ScanReport<F>> {
    if sizes.len() < 3 {
        return Err(Error::InvalidParameter(
            "scan needs at least 3 sizes".into(),
        ));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "scan sizes must be strictly increasing".into(),
        ));
    }
    strategy.validate()?;
    let x = model
        .x
        .to_f64()
        .ok_or_else(|| Error::InvalidParameter("cost exponent not representable".into()))?;

    use rayon::prelude::*;
    let results: Vec<Result<ScanPoint<F>>> = sizes
        .par_iter()
        .map(|&size| {
            let point = || -> Result<ScanPoint<F>> {
                let sized = spec.at_size(size, x)?;
                let generated = sized.generate()?;
                let partition = match strategy {
                    PartitionStrategy::Canonical => generated.partition.ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "family '{}' has no canonical partition",
                            sized.kind()
                        ))
                    })?,
                    PartitionStrategy::DeltaRemoval { delta, seed } => {
                        PartitionStrategy::DeltaRemoval {
                            delta: *delta,
                            seed: derive_seed(*seed, size),
                        }
                        .apply(&generated.graph)?
                    }
                    other => other.apply(&generated.graph)?,
                };
                let metrics = partition_metrics(&generated.graph, &partition, model)?;
                Ok(ScanPoint { size, metrics })
            };
            point().map_err(|e| Error::ScanFailure {
                size,
                source: Box::new(e),
            })
        })
        .collect();
    let mut points = Vec::with_capacity(sizes.len());
    for r in results {
        points.push(r?);
    }
    Ok(ScanReport { points })
}

/// Classify a scanned family.
///
/// `ec_flag` is true iff (a) the control fraction is non-increasing across
/// the scan and the final fraction is strictly below half the first —the
/// finite-size proxy for `c/n -> 0`— and (b) the least-squares slope of
/// `log2 complexity` vs `log2 n` is at most `poly_cap`. The raw trend data
/// ride along in the verdict. Infinite complexity at any point is an error:
/// such a scan is not classifiable.
pub fn classify<F: Scalar>(scan: &ScanReport<F>, poly_cap: F) -> Result<Verdict<F>> {
    if scan.points.len() < 3 {
        return Err(Error::InvalidParameter(
            "classification needs at least 3 scan points".into(),
        ));
    }
    let mut ns = Vec::with_capacity(scan.points.len());
    let mut costs = Vec::with_capacity(scan.points.len());
    for p in &scan.points {
        let c = p.metrics.complexity.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "scan point at size {} has infinite complexity; not classifiable",
                p.size
            ))
        })?;
        ns.push(F::from_u64(p.metrics.n).expect("vertex count fits the scalar"));
        costs.push(c);
    }
    let fractions: Vec<Ratio<u64>> = scan.points.iter().map(|p| p.metrics.c_over_n).collect();
    let fraction_nonincreasing = fractions.windows(2).all(|w| w[1] <= w[0]);
    let first = fractions[0];
    let last = *fractions.last().unwrap();
    // last < first/2, kept exact in integers.
    let fraction_halved = last * Ratio::from_integer(2) < first;
    let fit = least_squares_loglog(&ns, &costs)?;
    Ok(Verdict {
        ec_flag: fraction_nonincreasing && fraction_halved && fit.slope <= poly_cap,
        beta_hat: fit.slope,
        rms_residual: fit.rms_residual,
        fraction_first: first,
        fraction_last: last,
        fraction_nonincreasing,
        fraction_halved,
    })
}

/// Render a scan as CSV with columns
/// `n,c,c_over_n,N_blocks,L_max,D,complexity` (`inf` for disconnected
/// block graphs; `c_over_n` in decimal for spreadsheet use — the exact
/// rational lives in the JSON serialization).
pub fn scan_to_csv<F: Scalar>(scan: &ScanReport<F>) -> String {
    let mut out = String::from("n,c,c_over_n,N_blocks,L_max,D,complexity\n");
    for p in &scan.points {
        let m = &p.metrics;
        let frac = m.c as f64 / m.n as f64;
        let d = m
            .d
            .map_or_else(|| "inf".to_string(), |d| d.to_string());
        let complexity = m
            .complexity
            .map_or_else(|| "inf".to_string(), |c| format!("{c}"));
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            m.n, m.c, frac, m.n_blocks, m.l_max, d, complexity
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_chain;

    fn model(x: f64, eps: f64) -> CostModel<f64> {
        CostModel::new(x, eps).unwrap()
    }

    #[test]
    fn elementary_cost_examples() {
        assert_eq!(elementary_cost(2, &model(1.0, 0.1)).unwrap(), 160.0);
        assert_eq!(elementary_cost(0, &model(1.0, 0.1)).unwrap(), 10.0);
        assert_eq!(elementary_cost(2, &model(1.5, 1.0)).unwrap(), 64.0);
    }

    #[test]
    fn elementary_cost_overflow_signaled() {
        assert!(matches!(
            elementary_cost(600, &model(1.0, 1.0)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn cost_model_validation() {
        assert!(CostModel::new(0.5, 0.1).is_err());
        assert!(CostModel::new(1.0, 0.0).is_err());
        assert!(CostModel::new(1.0, 1.5).is_err());
    }

    #[test]
    fn chain_metrics_example() {
        let (g, p) = gen_chain(3, 4).unwrap();
        let m = partition_metrics(&g, &p, &model(1.0, 0.1)).unwrap();
        assert_eq!(m.n, 11);
        assert_eq!(m.c, 2);
        assert_eq!(m.l_max, 3);
        assert_eq!(m.d, Some(2));
        assert_eq!(m.complexity, Some(1280.0));
        assert_eq!(m.c_over_n, Ratio::new(2, 11));
        assert_eq!(m.boundary_sizes, vec![(0, 1, 1), (1, 2, 1)]);
        assert_eq!(m.boundary_pair_sum, 2);
    }

    #[test]
    fn single_block_metrics_convention() {
        let (g, p) = gen_chain(1, 4).unwrap();
        let m = partition_metrics(&g, &p, &model(1.0, 1.0)).unwrap();
        assert_eq!(m.d, Some(1));
        assert_eq!(m.complexity, Some(elementary_cost(3, &model(1.0, 1.0)).unwrap()));
    }

    #[test]
    fn disconnected_blocks_infinite_complexity() {
        let g = Graph::new(2, []).unwrap();
        let p = Partition::new(vec![vec![0], vec![1]], vec![]);
        let m = partition_metrics(&g, &p, &model(1.0, 1.0)).unwrap();
        assert_eq!(m.d, None);
        assert_eq!(m.complexity, None);
        let scan = ScanReport {
            points: vec![
                ScanPoint { size: 1, metrics: m.clone() },
                ScanPoint { size: 2, metrics: m.clone() },
                ScanPoint { size: 3, metrics: m },
            ],
        };
        assert!(classify(&scan, 3.0).is_err());
    }

    #[test]
    fn scan_preconditions() {
        let spec = FamilySpec::Chain { n_blocks: 2, l: 2 };
        let strat = PartitionStrategy::Canonical;
        let m = model(1.0, 0.1);
        assert!(family_scan(&spec, &strat, &[8], &m).is_err());
        assert!(family_scan(&spec, &strat, &[8, 8, 16], &m).is_err());
    }
}
