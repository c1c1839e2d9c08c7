//! Construction, partitioning, and classification of *efficiently controllable*
//! graph families, plus the control schedules and ground-state approximations
//! they support.
//!
//! A spin network is modeled as an undirected interaction graph. A family of
//! such graphs is *efficiently controllable* (EC) when it can be decomposed
//! into connected blocks separated by a vanishing fraction of control
//! vertices, while the control complexity `D(n) * 2^{2*x*L} / eps_gate`
//! (block-graph diameter times the elementary synthesis cost of the largest
//! block) stays polynomial in `n`. This crate provides:
//!
//! - [`graph`]: immutable simple graphs, connectivity, and text formats;
//! - [`partition`]: block/control partitions, validation, and the block
//!   (hyper)graph with its diameter;
//! - [`families`]: deterministic seeded generators for chains, lattices,
//!   Sierpinski gaskets, site-percolated lattices, Erdős–Rényi and scale-free
//!   graphs, plus a percolation-threshold estimator;
//! - [`partitioner`]: size-capped block growing, random δ-removal, and
//!   high-degree-removal partitioning strategies;
//! - [`control`]: the elementary cost model, per-partition metrics, family
//!   scans over increasing sizes, and the EC classifier;
//! - [`schedule`]: decouple-and-transfer schedules between blocks with exact
//!   cost accounting;
//! - [`spin`]: Pauli-term Hamiltonians on graphs, block decoupling with a
//!   certified removed-norm error bound, and dense / matrix-free iterative
//!   ground-energy solvers.
//!
//! Numeric routines are generic over the floating scalar through
//! [`scalar::Scalar`] (`f32`/`f64`); exact headline metrics such as the
//! control fraction `c/n` use [`num_rational::Ratio`] over `u64`. The aliases
//! below fix the default `f64` instantiation.
//!
//! All randomized routines are pure functions of their parameters and a 64-bit
//! seed (ChaCha8 streams, documented per call site); identical inputs produce
//! identical outputs, bit for bit.

pub mod control;
pub mod error;
pub mod families;
pub mod fit;
pub mod graph;
pub mod partition;
pub mod partitioner;
pub mod rng;
pub mod scalar;
pub mod schedule;
pub mod spin;

pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::{BlockGraph, Partition, Violation};

/// Default floating scalar used by the command-line tool and the aliases below.
pub type Real = f64;

/// [`control::CostModel`] at the default scalar.
pub type CostModel = control::CostModel<Real>;
/// [`control::MetricsReport`] at the default scalar.
pub type MetricsReport = control::MetricsReport<Real>;
/// [`control::ScanReport`] at the default scalar.
pub type ScanReport = control::ScanReport<Real>;
/// [`control::Verdict`] at the default scalar.
pub type Verdict = control::Verdict<Real>;
/// [`schedule::Schedule`] at the default scalar.
pub type Schedule = schedule::Schedule<Real>;
/// [`spin::Hamiltonian`] at the default scalar.
pub type Hamiltonian = spin::Hamiltonian<Real>;
/// [`spin::DecoupledHamiltonian`] at the default scalar.
pub type DecoupledHamiltonian = spin::DecoupledHamiltonian<Real>;
/// [`spin::EnergyReport`] at the default scalar.
pub type EnergyReport = spin::EnergyReport<Real>;
