//! Normal-tensor spaces: the kernel of symmetrization over the trailing
//! indices of `S^2 x S^r`, the pointwise model for the order-`r` derivatives
//! of a metric in normal coordinates.
//!
//! A basis is computed as the exact nullspace of the symmetrization map on a
//! monomial basis; samples are random small-rational combinations of basis
//! vectors. No normal-coordinate construction from an actual jet happens
//! here — the spaces are sampled directly.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::Rational;
use crate::tensor::{Tensor, Variance};

/// All sorted multisets (nondecreasing tuples) of the given size over
/// `{0, .., n-1}`, in lexicographic order.
fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; size];
    fn rec(n: usize, pos: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for v in min..n {
            current[pos] = v;
            rec(n, pos + 1, v, current, out);
        }
    }
    if size == 0 {
        return vec![Vec::new()];
    }
    rec(n, 0, 0, &mut current, &mut out);
    out
}

fn multiset_index(multisets: &[Vec<usize>], key: &mut Vec<usize>) -> usize {
    key.sort_unstable();
    multisets
        .binary_search(key)
        .expect("sorted multiset is enumerated")
}

/// Coordinates for elements of `S^2 x S^r`: one entry per (unordered metric
/// pair, sorted derivative multiset).
pub(crate) struct SymBasis {
    n: usize,
    r: usize,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<usize>, // n*n lookup
    derivs: Vec<Vec<usize>>,
}

impl SymBasis {
    pub(crate) fn new(n: usize, r: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_index = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                pair_index[a * n + b] = pairs.len();
                pair_index[b * n + a] = pairs.len();
                pairs.push((a, b));
            }
        }
        Self {
            n,
            r,
            pairs,
            pair_index,
            derivs: multisets(n, r),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.pairs.len() * self.derivs.len()
    }

    pub(crate) fn coordinate(&self, a: usize, b: usize, deriv: &mut Vec<usize>) -> usize {
        self.pair_index[a * self.n + b] * self.derivs.len() + multiset_index(&self.derivs, deriv)
    }

    /// Expands a coordinate vector into the dense `(2 + r)`-slot tensor.
    pub(crate) fn expand(&self, coords: &[Rational]) -> Tensor {
        let slots = vec![Variance::Covariant; 2 + self.r];
        Tensor::from_fn(self.n, slots, |idx| {
            let mut deriv: Vec<usize> = idx[2..].to_vec();
            coords[self.coordinate(idx[0], idx[1], &mut deriv)].clone()
        })
        .expect("dimension is positive")
    }
}

/// The symmetrization map `S^2 x S^r -> T* x S^{r+1}` over the second metric
/// slot and the `r` derivative slots, as a matrix in the monomial bases.
/// Its kernel is the normal-tensor space; it is onto, so the kernel dimension
/// also falls out of rank-nullity.
pub fn symmetrization_matrix(n: usize, r: usize) -> Matrix {
    let domain = SymBasis::new(n, r);
    let codomain_derivs = multisets(n, r + 1);
    let rows = n * codomain_derivs.len();
    let mut m = Matrix::zeros(rows, domain.len());
    for c in 0..n {
        for (j_idx, j) in codomain_derivs.iter().enumerate() {
            let row = c * codomain_derivs.len() + j_idx;
            // sum over which entry of the multiset takes the metric slot
            for t in 0..=r {
                let y = j[t];
                let mut rest: Vec<usize> = j
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != t)
                    .map(|(_, &v)| v)
                    .collect();
                let col = domain.coordinate(c, y, &mut rest);
                *m.get_mut(row, col) += Rational::one();
            }
        }
    }
    m
}

/// Nullspace of the symmetrization map in coordinates, together with the
/// coordinate layout. The expensive elimination runs once; expansion to dense
/// tensors is deferred to the caller.
pub(crate) fn normal_tensor_coords(n: usize, r: usize) -> Result<(SymBasis, Vec<Vec<Rational>>)> {
    if r < 2 {
        return Err(Error::InvalidArgument(
            "normal tensors need order >= 2".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let basis = SymBasis::new(n, r);
    let kernel = symmetrization_matrix(n, r).nullspace();
    Ok((basis, kernel))
}

/// Exact basis of the order-`r` normal-tensor space in dimension `n`, as
/// dense `(2 + r)`-slot covariant tensors. Deterministic ordering.
pub fn normal_tensor_basis(n: usize, r: usize) -> Result<Vec<Tensor>> {
    let (basis, kernel) = normal_tensor_coords(n, r)?;
    Ok(kernel.iter().map(|v| basis.expand(v)).collect())
}

/// Dimension of the order-`r` normal-tensor space at dimension `n`.
pub fn normal_space_dim(n: usize, r: usize) -> Result<usize> {
    Ok(normal_tensor_basis(n, r)?.len())
}

/// A sampled element of a normal-tensor space.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalTensorSample {
    pub order: usize,
    pub tensor: Tensor,
}

impl NormalTensorSample {
    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }
}

/// Random small-rational combination of the exact basis. Deterministic in the
/// seed; the zero space yields the zero sample.
pub fn random_normal_tensor(n: usize, r: usize, seed: u64) -> Result<NormalTensorSample> {
    let (basis, kernel) = normal_tensor_coords(n, r)?;
    let mut rng = SplitMix64::substream(seed, 0x6e6f_726d);
    Ok(NormalTensorSample {
        order: r,
        tensor: combine_coords(&basis, &kernel, &mut rng),
    })
}

/// Combines nullspace vectors in coordinate space and expands the result
/// once, which is what keeps large sample banks affordable.
pub(crate) fn combine_coords(
    basis: &SymBasis,
    kernel: &[Vec<Rational>],
    rng: &mut SplitMix64,
) -> Tensor {
    let mut coords = vec![Rational::zero(); basis.len()];
    for vector in kernel {
        let coeff = rng.small_rational();
        if coeff.is_zero() {
            continue;
        }
        for (acc, v) in coords.iter_mut().zip(vector) {
            if !v.is_zero() {
                *acc += v * &coeff;
            }
        }
    }
    basis.expand(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Permutation;

    /// Independent count from the exact sequence: the symmetrization map is
    /// onto, so the kernel dimension is dim(S^2 x S^r) - dim(T* x S^{r+1}).
    fn rank_nullity_dim(n: usize, r: usize) -> usize {
        let m = symmetrization_matrix(n, r);
        assert_eq!(m.rank(), m.num_rows(), "symmetrization map must be onto");
        m.num_cols() - m.num_rows()
    }

    #[test]
    fn second_order_dimensions_match_the_closed_form() {
        // n^2 (n^2 - 1) / 12: 0, 1, 6, 20 for n = 1..4
        for (n, expected) in [(1, 0), (2, 1), (3, 6), (4, 20)] {
            assert_eq!(normal_space_dim(n, 2).unwrap(), expected);
            assert_eq!(rank_nullity_dim(n, 2), expected);
            assert_eq!(n * n * (n * n - 1) / 12, expected);
        }
    }

    #[test]
    fn basis_elements_are_killed_by_symmetrization() {
        for (n, r) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
            let subset: Vec<usize> = (1..=r + 1).collect();
            for b in normal_tensor_basis(n, r).unwrap() {
                assert!(!b.is_zero());
                assert!(b.symmetrize(&subset).unwrap().is_zero());
                // declared block symmetries
                let swap_metric = Permutation::transposition(2 + r, 0, 1).unwrap();
                assert_eq!(b.permute_slots(&swap_metric).unwrap(), b);
                if r >= 2 {
                    let swap_deriv = Permutation::transposition(2 + r, 2, 3).unwrap();
                    assert_eq!(b.permute_slots(&swap_deriv).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn samples_satisfy_the_invariants_and_depend_on_the_seed() {
        let a = random_normal_tensor(3, 2, 0).unwrap();
        let b = random_normal_tensor(3, 2, 1).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, random_normal_tensor(3, 2, 0).unwrap());
        assert!(a.tensor.symmetrize(&[1, 2, 3]).unwrap().is_zero());
        assert!(!a.tensor.is_zero());
    }

    #[test]
    fn zero_dimensional_space_yields_zero_samples() {
        let s = random_normal_tensor(1, 2, 7).unwrap();
        assert!(s.tensor.is_zero());
    }

    #[test]
    fn zero_coefficients_give_the_zero_combination() {
        let basis = normal_tensor_basis(2, 2).unwrap();
        let mut acc = Tensor::zeros(2, vec![Variance::Covariant; 4]).unwrap();
        for b in &basis {
            acc = acc.add(&b.scale(&Rational::zero())).unwrap();
        }
        assert!(acc.is_zero());
    }
}
