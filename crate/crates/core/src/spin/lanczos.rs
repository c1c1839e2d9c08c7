//! Matrix-free iterative ground-energy path: Lanczos with full
//! reorthogonalization and an explicit residual certificate.
//!
//! The Krylov basis is kept in memory (full reorthogonalization twice per
//! step), so memory is `iterations * 2^k` amplitudes; the dispatcher caps
//! `k` at 26. Tridiagonal subproblems go through the dense symmetric
//! eigensolver. The returned energy always comes with the explicitly
//! recomputed residual `||H v - lambda v||`; a result that cannot meet the
//! certificate threshold is a hard error, never a silently degraded value.

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::rng::splitmix64;
use crate::scalar::Scalar;
use crate::spin::amplitude::Amplitude;
use crate::spin::pauli::{Hamiltonian, MaskTerm, apply_mask_terms, mask_terms};

/// A certified iterative result. (Step counts surface only in
/// non-convergence errors.)
#[derive(Debug, Clone, Copy)]
pub(crate) struct IterativeOutcome<F> {
    /// Smallest Ritz value (the ground-energy estimate).
    pub value: F,
    /// Explicit residual `||H v - lambda v||` of the returned pair.
    pub residual: F,
}

/// Iteration budget (also capped by the space dimension).
const MAX_ITER: usize = 300;

/// Stream constant for the deterministic start vector.
const START_SEED: u64 = 0x5EED_1EC7_0BAD_CAFE;

/// Relative residual the certificate must meet: `1e-6` at `f64`,
/// loosening toward `16 * sqrt(eps)` for lower-precision scalars.
fn certificate_factor<F: Scalar>() -> f64 {
    let eps = F::epsilon().to_f64().unwrap_or(f64::EPSILON);
    (16.0 * eps.sqrt()).max(1e-6)
}

/// Smallest eigenvalue of `h` by certified Lanczos iteration.
///
/// Deterministic: the start vector is a fixed splitmix64 stream, and the
/// iteration is serial, so identical inputs give bit-identical outputs.
/// The caller guarantees a nonempty term list and the size cap (and, on
/// the real amplitude path, that every term has even `Y` count).
pub(crate) fn lanczos_min_eig<F: Scalar, A: Amplitude<F>>(
    h: &Hamiltonian<F>,
) -> Result<IterativeOutcome<F>> {
    let dim = 1usize << h.n();
    let terms: Vec<MaskTerm<A>> = mask_terms(h);
    let norm1 = h.norm1().to_f64().expect("finite norm");
    let threshold = certificate_factor::<F>() * norm1;
    let eps = F::epsilon().to_f64().unwrap_or(f64::EPSILON);
    // The iteration aims well below the certificate: an eigenvalue is only
    // guaranteed within the residual, so dense/iterative agreement needs
    // the residual driven toward the full-reorthogonalization floor
    // ~ eps * ||H||_1 * sqrt(dim), not merely under the acceptance line.
    let target = (8.0 * eps * (dim as f64).sqrt() * norm1).max(1e-10);
    let breakdown_tol = (norm1 * eps * 8.0 * (dim as f64).sqrt()).max(f64::MIN_POSITIVE);
    let max_iter = MAX_ITER.min(dim);

    let mut basis: Vec<Vec<A>> = vec![start_vector::<F, A>(dim)];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![A::zero(); dim];
    loop {
        let j = alphas.len();
        apply_mask_terms(&terms, &basis[j], &mut w);
        let alpha = dot(&basis[j], &w).re().to_f64().expect("finite alpha");
        alphas.push(alpha);
        axpy(&mut w, -F::from_f64_lossy(alpha), &basis[j]);
        if j > 0 {
            axpy(&mut w, -F::from_f64_lossy(betas[j - 1]), &basis[j - 1]);
        }
        // Full reorthogonalization, classical Gram-Schmidt twice.
        for _ in 0..2 {
            for u in &basis {
                let c = dot(u, &w);
                axpy_a(&mut w, -c, u);
            }
        }
        let beta = norm(&w).to_f64().expect("finite beta");

        let (lambda, s) = tridiag_ground(&alphas, &betas)?;
        let res_est = beta * s.last().unwrap().abs();
        let done = res_est <= target || beta <= breakdown_tol || alphas.len() == max_iter;
        if done {
            // Assemble the Ritz vector and recompute the residual honestly.
            let mut v = vec![A::zero(); dim];
            for (si, b) in s.iter().zip(&basis) {
                axpy(&mut v, F::from_f64_lossy(*si), b);
            }
            let vn = norm(&v);
            if vn > F::zero() {
                let inv = F::one() / vn;
                for x in &mut v {
                    *x = x.scale(inv);
                }
            }
            apply_mask_terms(&terms, &v, &mut w);
            axpy(&mut w, F::from_f64_lossy(-lambda), &v);
            let residual = norm(&w);
            let res_f64 = residual.to_f64().unwrap_or(f64::INFINITY);
            if res_f64 <= threshold {
                return Ok(IterativeOutcome {
                    value: F::from_f64_lossy(lambda),
                    residual,
                });
            }
            if beta <= breakdown_tol || alphas.len() == max_iter {
                return Err(Error::NonConvergence {
                    iterations: alphas.len(),
                    residual: res_f64,
                    threshold,
                });
            }
            // The cheap estimate was optimistic; keep iterating.
        }
        betas.push(beta);
        let inv = F::from_f64_lossy(1.0 / beta);
        basis.push(w.iter().map(|x| x.scale(inv)).collect());
    }
}

/// Ground eigenpair of the symmetric tridiagonal with diagonal `alphas`
/// and off-diagonal `betas`.
fn tridiag_ground(alphas: &[f64], betas: &[f64]) -> Result<(f64, Vec<f64>)> {
    let j = alphas.len();
    if j == 1 {
        return Ok((alphas[0], vec![1.0]));
    }
    let mut t = Mat::<f64>::zeros(j, j);
    for (i, &a) in alphas.iter().enumerate() {
        t[(i, i)] = a;
    }
    for (i, &b) in betas[..j - 1].iter().enumerate() {
        t[(i + 1, i)] = b;
        t[(i, i + 1)] = b;
    }
    let ev = t.self_adjoint_eigen(Side::Lower).map_err(|_| Error::DenseFailure)?;
    // Eigenvalues come back in nondecreasing order: index 0 is the ground.
    let lambda = ev.S().column_vector()[0];
    let s: Vec<f64> = ev.U().col(0).iter().copied().collect();
    Ok((lambda, s))
}

/// Deterministic pseudorandom unit start vector.
fn start_vector<F: Scalar, A: Amplitude<F>>(dim: usize) -> Vec<A> {
    let unit = |i: u64| {
        let z = splitmix64(START_SEED.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        ((z >> 11) as f64) / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<A> = (0..dim as u64)
        .map(|i| {
            A::from_parts(
                F::from_f64_lossy(unit(2 * i)),
                F::from_f64_lossy(unit(2 * i + 1)),
            )
        })
        .collect();
    let n = norm(&v);
    let inv = F::one() / n;
    for x in &mut v {
        *x = x.scale(inv);
    }
    v
}

/// Inner product `<u, w>` with the conjugate on the left factor.
fn dot<F: Scalar, A: Amplitude<F>>(u: &[A], w: &[A]) -> A {
    let mut acc = A::zero();
    for (&a, &b) in u.iter().zip(w) {
        acc += a.conj() * b;
    }
    acc
}

/// Euclidean norm.
fn norm<F: Scalar, A: Amplitude<F>>(v: &[A]) -> F {
    v.iter().map(|x| x.abs2()).sum::<F>().sqrt()
}

/// `y += a * x` with a real coefficient.
fn axpy<F: Scalar, A: Amplitude<F>>(y: &mut [A], a: F, x: &[A]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += xi.scale(a);
    }
}

/// `y += a * x` with an amplitude coefficient.
fn axpy_a<F: Scalar, A: Amplitude<F>>(y: &mut [A], a: A, x: &[A]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += xi * a;
    }
}
