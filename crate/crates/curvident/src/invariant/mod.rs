//! Orthogonal-group invariant theory at a point.
//!
//! Invariant multilinear forms on `m` vector arguments are spanned by total
//! contractions along perfect matchings; their pairwise Gram pairing over an
//! orthonormal frame is `n^(cycles of the union graph)`, and the exact rank
//! of the Gram matrix is the dimension of the invariant space in dimension
//! `n`. The submodules add normal-tensor spaces, contraction schemes on them,
//! and the rank certificates behind the kernel-dimension verification.

pub mod evaluation;
pub mod matching;
pub mod normal;
pub mod scheme;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{int, Rational};

pub use evaluation::{
    certified_span_dim, curvature_from_second_order, evaluation_matrix, kernel_dimension,
    lovelock_scheme_vectors, membership_check, predicted_kernel_dimension, MembershipReport,
};
pub use matching::{enumerate_matchings, Matching, MATCHING_CAP};
pub use normal::{
    normal_space_dim, normal_tensor_basis, random_normal_tensor, symmetrization_matrix,
    NormalTensorSample,
};
pub use scheme::{
    admissible_multiindices, canonical_form, enumerate_generators, ContractionScheme, SlotSignature,
};

/// Gram matrix of the total contractions on `m` slots in dimension `n`:
/// entry `(P, Q)` is `n^(cycles of P union Q)`. Symmetric with positive
/// integer entries, one row per matching in enumeration order.
pub fn gram_matrix(m: usize, n: usize) -> Result<Matrix> {
    let matchings = enumerate_matchings(m)?;
    let count = matchings.len();
    let mut g = Matrix::zeros(count, count);
    for i in 0..count {
        for j in i..count {
            let cycles = matchings[i].union_cycles(&matchings[j]);
            let entry = int((n as i64).pow(cycles as u32));
            *g.get_mut(i, j) = entry.clone();
            *g.get_mut(j, i) = entry;
        }
    }
    Ok(g)
}

/// Dimension of the space of invariant `m`-linear forms in dimension `n`:
/// the exact rank of the Gram matrix over the rationals.
pub fn dim_invariants(m: usize, n: usize) -> Result<usize> {
    Ok(gram_matrix(m, n)?.rank())
}

/// Stabilization report for the dimensional-reduction maps on invariant
/// forms: the dimensions must be nondecreasing in `n` and constant once
/// `n >= m - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub m: usize,
    /// `dims[i]` is the invariant-space dimension at `n = i + 1`.
    pub dims: Vec<usize>,
    pub nondecreasing: bool,
    /// Equal dimensions at all consecutive pairs with the larger `n > m - 1`.
    pub stable_above_cap: bool,
    /// `(n, dim at n-1, dim at n)` for each violation found.
    pub violations: Vec<(usize, usize, usize)>,
}

impl ReductionReport {
    pub fn ok(&self) -> bool {
        self.nondecreasing && self.stable_above_cap
    }
}

/// Computes `dim_invariants(m, n)` for `n = 1..=n_max` and checks
/// monotonicity and stabilization.
pub fn reduction_check(m: usize, n_max: usize) -> Result<ReductionReport> {
    let mut dims = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        dims.push(dim_invariants(m, n)?);
    }
    let mut nondecreasing = true;
    let mut stable_above_cap = true;
    let mut violations = Vec::new();
    for n in 2..=n_max {
        let prev = dims[n - 2];
        let here = dims[n - 1];
        if here < prev {
            nondecreasing = false;
            violations.push((n, prev, here));
        }
        if n > m - 1 && here != prev {
            stable_above_cap = false;
            violations.push((n, prev, here));
        }
    }
    Ok(ReductionReport {
        m,
        dims,
        nondecreasing,
        stable_above_cap,
        violations,
    })
}

/// Brute-force pairing of two total contractions over all index tuples of an
/// orthonormal (or pseudo-orthonormal) frame. Test oracle for the cycle-count
/// formula; `eta` is the list of frame signs.
pub fn gram_entry_brute_force(a: &Matching, b: &Matching, eta: &[i64]) -> Rational {
    let m = a.size();
    let n = eta.len();
    let mut total = 0i64;
    for idx in crate::tensor::IndexIter::over(n, m) {
        let mut term = 1i64;
        for &(x, y) in a.pairs().iter().chain(b.pairs()) {
            if idx[x] != idx[y] {
                term = 0;
                break;
            }
            term *= eta[idx[x]];
        }
        total += term;
    }
    int(total)
}
