//! Dense ground-energy path: materialize the `2^k x 2^k` matrix and hand
//! it to a full symmetric eigendecomposition.
//!
//! Works in `f64` (or `Complex<f64>` when some term has an odd `Y` count)
//! regardless of the crate's scalar parameter; the result is converted
//! back at the end. Capped at `k <= 14` sites (a 16384-square matrix) by
//! the dispatcher.

use faer::{Mat, Side, c64};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::pauli::{Hamiltonian, MaskTerm, mask_terms};

/// Smallest eigenvalue of `h` by full dense diagonalization.
///
/// The caller guarantees a nonempty term list and the size cap.
pub(crate) fn dense_min_eig<F: Scalar>(h: &Hamiltonian<F>) -> Result<F> {
    let dim = 1usize << h.n();
    let hf = h.to_f64();
    let min = if hf.is_real() {
        let terms: Vec<MaskTerm<f64>> = mask_terms(&hf);
        let mut m = Mat::<f64>::zeros(dim, dim);
        fill(&terms, dim, |r, c, v| m[(r, c)] += v);
        smallest(m.self_adjoint_eigenvalues(Side::Lower))?
    } else {
        let terms: Vec<MaskTerm<c64>> = mask_terms(&hf);
        let mut m = Mat::<c64>::zeros(dim, dim);
        fill(&terms, dim, |r, c, v| m[(r, c)] += v);
        smallest(m.self_adjoint_eigenvalues(Side::Lower))?
    };
    Ok(F::from_f64_lossy(min))
}

fn fill<A: Copy + std::ops::Neg<Output = A>>(
    terms: &[MaskTerm<A>],
    dim: usize,
    mut set: impl FnMut(usize, usize, A),
) {
    for t in terms {
        for col in 0..dim {
            let row = col ^ t.x_mask;
            let v = if (col & t.z_mask).count_ones() % 2 == 1 {
                -t.phase
            } else {
                t.phase
            };
            set(row, col, v);
        }
    }
}

fn smallest(vals: std::result::Result<Vec<f64>, faer::linalg::evd::EvdError>) -> Result<f64> {
    // faer returns eigenvalues in nondecreasing order.
    let vals = vals.map_err(|_| Error::DenseFailure)?;
    vals.first().copied().ok_or(Error::DenseFailure)
}
