//! Exact dense tensor algebra: products, contractions, slot permutations,
//! (anti)symmetrization, and generalized Kronecker deltas.
//!
//! A [`Tensor`] is a dense multi-index array of scalars over a fixed dimension
//! `n`, with one variance flag per slot. Components are stored row-major with
//! the last index fastest. Everything here is a pure function on immutable
//! values; in the default `Rational` instantiation all arithmetic is exact, so
//! algebraically equal expressions produce component-wise identical tensors.
//!
//! Index tuples are 0-based throughout.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Whether a slot transforms covariantly (lower index) or contravariantly
/// (upper index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// A bijection of `{0, .., m-1}`, stored as its image list.
///
/// Composition convention: `(sigma.compose(tau))(i) = sigma(tau(i))`, i.e. the
/// left factor is applied last. Under the slot action below this means
/// `t.permute_slots(tau).permute_slots(sigma) == t.permute_slots(sigma.compose(tau))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Self {
            images: (0..size).collect(),
        }
    }

    /// Builds a permutation from its image list `i -> images[i]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &img in &images {
            if img >= images.len() || seen[img] {
                return Err(Error::NotAPermutation(images));
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    /// The transposition of `a` and `b` inside `{0, .., size-1}`.
    pub fn transposition(size: usize, a: usize, b: usize) -> Result<Self> {
        if a >= size || b >= size {
            return Err(Error::SlotOutOfRange {
                slot: a.max(b),
                count: size,
            });
        }
        let mut images: Vec<usize> = (0..size).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Parity: +1 for even, -1 for odd.
    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.size()];
        let mut sign = 1i64;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.images[at];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All permutations of `{0, .., size-1}` in lexicographic order of their
    /// image lists. Intended for small `size`.
    pub fn all(size: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(size);
        let mut used = vec![false; size];
        fn rec(
            size: usize,
            prefix: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Permutation>,
        ) {
            if prefix.len() == size {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for v in 0..size {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(size, prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        rec(size, &mut prefix, &mut used, &mut out);
        out
    }
}

/// Dense tensor of scalars over dimension `dim`, one variance flag per slot.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T = Rational> {
    dim: usize,
    slots: Vec<Variance>,
    components: Vec<T>,
}

/// Iterates all index tuples of `slots` entries in `{0, .., dim-1}`,
/// last index fastest.
pub struct IndexIter {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl IndexIter {
    fn new(dim: usize, slots: usize) -> Self {
        Self {
            dim,
            next: Some(vec![0; slots]),
        }
    }

    /// All tuples of `slots` entries in `{0, .., dim-1}`.
    pub fn over(dim: usize, slots: usize) -> Self {
        Self::new(dim, slots)
    }
}

impl Iterator for IndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut bump = current.clone();
        let mut pos = bump.len();
        loop {
            if pos == 0 {
                break; // odometer wrapped: iteration ends
            }
            pos -= 1;
            bump[pos] += 1;
            if bump[pos] < self.dim {
                self.next = Some(bump);
                break;
            }
            bump[pos] = 0;
        }
        Some(current)
    }
}

/// Upper bound on dense component counts; anything larger is a sign the
/// caller wanted the sparse machinery instead.
const DENSE_COMPONENT_CAP: usize = 20_000_000;

impl<T: Scalar> Tensor<T> {
    /// Zero tensor with the given slot list. A `slots` of length 0 is a scalar.
    pub fn zeros(dim: usize, slots: Vec<Variance>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        let len = dim
            .checked_pow(slots.len() as u32)
            .filter(|&l| l <= DENSE_COMPONENT_CAP)
            .ok_or(Error::CapExceeded {
                what: "dense tensor components",
                got: slots.len(),
                cap: DENSE_COMPONENT_CAP,
            })?;
        Ok(Self {
            dim,
            slots,
            components: vec![T::zero(); len],
        })
    }

    pub fn from_fn(
        dim: usize,
        slots: Vec<Variance>,
        mut f: impl FnMut(&[usize]) -> T,
    ) -> Result<Self> {
        let mut t = Self::zeros(dim, slots)?;
        for idx in t.indices() {
            let v = f(&idx);
            t.set(&idx, v);
        }
        Ok(t)
    }

    pub fn from_components(dim: usize, slots: Vec<Variance>, components: Vec<T>) -> Result<Self> {
        let expected = dim.pow(slots.len() as u32);
        if components.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} components, got {}",
                components.len()
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(Self {
            dim,
            slots,
            components,
        })
    }

    /// 0-slot tensor holding a single value.
    pub fn scalar(dim: usize, value: T) -> Result<Self> {
        Self::from_components(dim, Vec::new(), vec![value])
    }

    /// Symmetric 2-slot tensor from a square matrix of entries.
    pub fn from_matrix(dim: usize, variance: Variance, entries: &[Vec<T>]) -> Result<Self> {
        Self::from_fn(dim, vec![variance; 2], |idx| {
            entries[idx[0]][idx[1]].clone()
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[Variance] {
        &self.slots
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    /// Flat offset of an index tuple (row-major, last index fastest).
    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slots.len());
        let mut off = 0;
        for &i in idx {
            debug_assert!(i < self.dim);
            off = off * self.dim + i;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: T) {
        let off = self.offset(idx);
        self.components[off] = value;
    }

    pub fn add_at(&mut self, idx: &[usize], value: &T) {
        let off = self.offset(idx);
        self.components[off] += value;
    }

    pub fn indices(&self) -> IndexIter {
        IndexIter::new(self.dim, self.slots.len())
    }

    /// Value of a 0-slot tensor.
    pub fn scalar_value(&self) -> Result<&T> {
        if !self.slots.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "tensor has {} slots, not a scalar",
                self.slots.len()
            )));
        }
        Ok(&self.components[0])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.slots != other.slots {
            return Err(Error::InvalidArgument(
                "tensors have different slot lists".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (c, o) in out.components.iter_mut().zip(&other.components) {
            *c += o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.components.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = self.clone();
        for c in out.components.iter_mut() {
            *c = c.clone() * factor;
        }
        out
    }

    /// Tensor product: slots of `other` appended after the slots of `self`.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut out = Self::zeros(self.dim, slots)?;
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base = i * other.components.len();
            for (j, b) in other.components.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.components[base + j] = a.clone() * b;
            }
        }
        Ok(out)
    }

    /// Contracts `slot_a` with `slot_b`.
    ///
    /// A covariant/contravariant pair is a direct trace. Two slots of equal
    /// variance are paired through `metric` (a nonsingular symmetric 2-slot
    /// tensor of the same dimension): its inverse for two covariant slots, the
    /// metric itself for two contravariant ones.
    pub fn contract(&self, slot_a: usize, slot_b: usize, metric: &Tensor<T>) -> Result<Self> {
        let m = self.slots.len();
        for &s in &[slot_a, slot_b] {
            if s >= m {
                return Err(Error::SlotOutOfRange { slot: s, count: m });
            }
        }
        if slot_a == slot_b {
            return Err(Error::InvalidArgument(
                "cannot contract a slot with itself".into(),
            ));
        }
        if metric.dim != self.dim || metric.num_slots() != 2 {
            return Err(Error::InvalidArgument(
                "metric must be a 2-slot tensor of the same dimension".into(),
            ));
        }
        for i in 0..self.dim {
            for j in 0..i {
                if metric.get(&[i, j]) != metric.get(&[j, i]) {
                    return Err(Error::InvalidArgument("metric must be symmetric".into()));
                }
            }
        }

        let (lo, hi) = if slot_a < slot_b {
            (slot_a, slot_b)
        } else {
            (slot_b, slot_a)
        };
        // None: direct trace. Some(p): pairing matrix p[x][y].
        let pairing: Option<Vec<Vec<T>>> = match (self.slots[lo], self.slots[hi]) {
            (Variance::Covariant, Variance::Contravariant)
            | (Variance::Contravariant, Variance::Covariant) => None,
            (Variance::Covariant, Variance::Covariant) => {
                Some(invert_symmetric(self.dim, |i, j| {
                    metric.get(&[i, j]).clone()
                })?)
            }
            (Variance::Contravariant, Variance::Contravariant) => Some(
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| metric.get(&[i, j]).clone()).collect())
                    .collect(),
            ),
        };

        let mut slots = self.slots.clone();
        slots.remove(hi);
        slots.remove(lo);
        let mut out = Self::zeros(self.dim, slots)?;
        let mut full = vec![0usize; m];
        for rest in out.indices() {
            // Rebuild the full index tuple around the two contracted slots.
            let mut acc = T::zero();
            for x in 0..self.dim {
                for y in 0..self.dim {
                    let weight = match &pairing {
                        None => {
                            if x != y {
                                continue;
                            }
                            None
                        }
                        Some(p) => {
                            if p[x][y].is_zero() {
                                continue;
                            }
                            Some(&p[x][y])
                        }
                    };
                    let mut r = 0;
                    for (pos, slot) in full.iter_mut().enumerate() {
                        *slot = if pos == lo {
                            x
                        } else if pos == hi {
                            y
                        } else {
                            let v = rest[r];
                            r += 1;
                            v
                        };
                    }
                    let v = self.get(&full);
                    if v.is_zero() {
                        continue;
                    }
                    match weight {
                        None => acc += v,
                        Some(w) => {
                            let term = w.clone() * v;
                            acc += &term;
                        }
                    }
                }
            }
            out.set(&rest, acc);
        }
        Ok(out)
    }

    /// Slot permutation: the result at `(i_0, .., i_{m-1})` is this tensor at
    /// `(i_{sigma(0)}, .., i_{sigma(m-1)})`.
    pub fn permute_slots(&self, sigma: &Permutation) -> Result<Self> {
        let m = self.slots.len();
        if sigma.size() != m {
            return Err(Error::SizeMismatch(sigma.size(), m));
        }
        // Out-slot a indexes the source slot that receives its index, sigma^{-1}(a).
        let inv = sigma.inverse();
        let slots: Vec<Variance> = (0..m).map(|a| self.slots[inv.image(a)]).collect();
        let mut out = Self::zeros(self.dim, slots)?;
        let mut src = vec![0usize; m];
        for idx in out.indices() {
            for a in 0..m {
                src[a] = idx[sigma.image(a)];
            }
            let v = self.get(&src).clone();
            out.set(&idx, v);
        }
        Ok(out)
    }

    /// Average over all permutations of `subset` (signed for
    /// [`Tensor::antisymmetrize`]). Both are projectors: applying twice equals
    /// applying once.
    pub fn symmetrize(&self, subset: &[usize]) -> Result<Self> {
        self.symmetrize_impl(subset, false)
    }

    pub fn antisymmetrize(&self, subset: &[usize]) -> Result<Self> {
        self.symmetrize_impl(subset, true)
    }

    fn symmetrize_impl(&self, subset: &[usize], signed: bool) -> Result<Self> {
        let m = self.slots.len();
        let mut seen = vec![false; m];
        for &s in subset {
            if s >= m {
                return Err(Error::SlotOutOfRange { slot: s, count: m });
            }
            if seen[s] {
                return Err(Error::InvalidArgument(format!("slot {s} repeated")));
            }
            seen[s] = true;
        }
        if subset.is_empty() {
            return Ok(self.clone());
        }
        let variance = self.slots[subset[0]];
        if subset.iter().any(|&s| self.slots[s] != variance) {
            return Err(Error::MixedVariance);
        }

        let k = subset.len();
        let mut out = Self::zeros(self.dim, self.slots.clone())?;
        let mut src = vec![0usize; m];
        for sigma in Permutation::all(k) {
            let sign = sigma.sign();
            for idx in self.indices() {
                src.copy_from_slice(&idx);
                for (a, &slot) in subset.iter().enumerate() {
                    src[slot] = idx[subset[sigma.image(a)]];
                }
                let v = self.get(&src);
                if v.is_zero() {
                    continue;
                }
                if signed && sign < 0 {
                    let neg = -v.clone();
                    out.add_at(&idx, &neg);
                } else {
                    out.add_at(&idx, v);
                }
            }
        }
        let mut fact = 1i64;
        for i in 2..=k as i64 {
            fact *= i;
        }
        Ok(out.scale(&T::from_ratio(1, fact)))
    }

    /// Generalized Kronecker delta of order `m` in dimension `n`: a `2m`-slot
    /// tensor, the first `m` slots contravariant and the last `m` covariant.
    /// The component at (upper, lower) is the determinant of the `m x m` matrix
    /// of single deltas — integer values, no `1/m!` factor. Identically zero
    /// when `m > n`.
    ///
    /// Storage is dense; keep `m` small (the sparse expansion in
    /// [`crate::identities`] is used for anything large).
    pub fn generalized_kronecker(m: usize, n: usize) -> Result<Self> {
        let slots: Vec<Variance> = std::iter::repeat_n(Variance::Contravariant, m)
            .chain(std::iter::repeat_n(Variance::Covariant, m))
            .collect();
        let mut out = Self::zeros(n, slots)?;
        if m > n {
            return Ok(out);
        }
        let perms = Permutation::all(m);
        let mut combo: Vec<usize> = (0..m).collect();
        let mut idx = vec![0usize; 2 * m];
        loop {
            for alpha in &perms {
                for beta in &perms {
                    for a in 0..m {
                        idx[a] = combo[alpha.image(a)];
                        idx[m + a] = combo[beta.image(a)];
                    }
                    out.set(&idx, T::from_int(alpha.sign() * beta.sign()));
                }
            }
            // next m-combination of {0..n-1}
            let mut pos = m;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                combo[pos] += 1;
                if combo[pos] <= n - m + pos {
                    for p in pos + 1..m {
                        combo[p] = combo[p - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Inverse of the symmetric matrix `entry(i, j)`, by Gauss-Jordan elimination.
/// Errors on a singular matrix.
pub fn invert_symmetric<T: Scalar>(
    n: usize,
    entry: impl Fn(usize, usize) -> T,
) -> Result<Vec<Vec<T>>> {
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMetric)?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / pivot.clone();
            inv[col][j] = inv[col][j].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = factor.clone() * &a[col][j];
                a[r][j] = a[r][j].clone() - t;
                let t = factor.clone() * &inv[col][j];
                inv[r][j] = inv[r][j].clone() - t;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_traits::Zero;

    fn euclidean(n: usize) -> Tensor {
        Tensor::from_fn(n, vec![Variance::Covariant; 2], |idx| {
            if idx[0] == idx[1] {
                int(1)
            } else {
                int(0)
            }
        })
        .unwrap()
    }

    fn vector(vals: &[i64]) -> Tensor {
        Tensor::from_fn(vals.len(), vec![Variance::Covariant], |idx| {
            int(vals[idx[0]])
        })
        .unwrap()
    }

    #[test]
    fn product_is_bilinear_on_basis_vectors() {
        let e1 = vector(&[1, 0]);
        let e2 = vector(&[0, 1]);
        let p = e1.tensor_product(&e2).unwrap();
        for idx in p.indices() {
            let expected = int(i64::from(idx[0] == 0 && idx[1] == 1));
            assert_eq!(p.get(&idx), &expected);
        }
    }

    #[test]
    fn product_of_identity_matrices_has_four_unit_entries() {
        let id = euclidean(2);
        let p = id.tensor_product(&id).unwrap();
        let nonzero: Vec<_> = p.indices().filter(|i| !p.get(i).is_zero()).collect();
        assert_eq!(nonzero.len(), 4);
        for idx in nonzero {
            assert_eq!(p.get(&idx), &int(1));
        }
    }

    #[test]
    fn product_with_zero_is_zero() {
        let z = Tensor::zeros(3, vec![Variance::Covariant; 2]).unwrap();
        let v = vector(&[1, 2, 3]);
        assert!(v.tensor_product(&z).unwrap().is_zero());
    }

    #[test]
    fn product_dimension_mismatch_errors() {
        let a = vector(&[1, 2]);
        let b = vector(&[1, 2, 3]);
        assert!(matches!(
            a.tensor_product(&b),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn metric_traced_against_itself_gives_dimension() {
        for n in 1..=4 {
            let g = euclidean(n);
            let traced = g.contract(0, 1, &g).unwrap();
            assert_eq!(traced.scalar_value().unwrap(), &int(n as i64));
        }
    }

    #[test]
    fn mixed_identity_traces_to_dimension() {
        for n in 1..=4 {
            let delta = Tensor::<Rational>::generalized_kronecker(1, n).unwrap();
            let g = euclidean(n);
            let traced = delta.contract(0, 1, &g).unwrap();
            assert_eq!(traced.scalar_value().unwrap(), &int(n as i64));
        }
    }

    #[test]
    fn contract_rejects_bad_slots_and_singular_metric() {
        let g = euclidean(2);
        assert!(g.contract(0, 5, &g).is_err());
        assert!(g.contract(1, 1, &g).is_err());
        let singular = Tensor::zeros(2, vec![Variance::Covariant; 2]).unwrap();
        assert!(matches!(
            g.contract(0, 1, &singular),
            Err(Error::SingularMetric)
        ));
        let lopsided =
            Tensor::from_fn(2, vec![Variance::Covariant; 2], |idx| int(idx[0] as i64)).unwrap();
        assert!(g.contract(0, 1, &lopsided).is_err());
    }

    #[test]
    fn oversized_dense_allocations_are_rejected() {
        assert!(matches!(
            Tensor::<Rational>::zeros(6, vec![Variance::Covariant; 12]),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn permuting_symmetric_metric_is_identity() {
        let g = euclidean(3);
        let swapped = g
            .permute_slots(&Permutation::transposition(2, 0, 1).unwrap())
            .unwrap();
        assert_eq!(g, swapped);
    }

    #[test]
    fn identity_permutation_is_identity() {
        let t = Tensor::from_fn(2, vec![Variance::Covariant; 3], |idx| {
            int((idx[0] * 4 + idx[1] * 2 + idx[2]) as i64)
        })
        .unwrap();
        assert_eq!(t.permute_slots(&Permutation::identity(3)).unwrap(), t);
    }

    #[test]
    fn permutation_composition_matches_sequential_action() {
        let t = Tensor::from_fn(2, vec![Variance::Covariant; 4], |idx| {
            int((idx[0] * 27 + idx[1] * 9 + idx[2] * 3 + idx[3]) as i64)
        })
        .unwrap();
        for sigma in Permutation::all(4).iter().take(8) {
            for tau in Permutation::all(4).iter().rev().take(8) {
                let sequential = t.permute_slots(tau).unwrap().permute_slots(sigma).unwrap();
                let composed = t.permute_slots(&sigma.compose(tau).unwrap()).unwrap();
                assert_eq!(sequential, composed);
            }
        }
    }

    #[test]
    fn antisymmetrize_symmetric_tensor_is_zero() {
        let g = euclidean(3);
        assert!(g.antisymmetrize(&[0, 1]).unwrap().is_zero());
    }

    #[test]
    fn symmetrize_is_idempotent() {
        let t = Tensor::from_fn(3, vec![Variance::Covariant; 3], |idx| {
            rat((idx[0] * 9 + idx[1] * 3 + idx[2] * 2) as i64 + 1, 7)
        })
        .unwrap();
        let once = t.symmetrize(&[0, 2]).unwrap();
        let twice = once.symmetrize(&[0, 2]).unwrap();
        assert_eq!(once, twice);
        let anti_once = t.antisymmetrize(&[0, 1, 2]).unwrap();
        let anti_twice = anti_once.antisymmetrize(&[0, 1, 2]).unwrap();
        assert_eq!(anti_once, anti_twice);
    }

    #[test]
    fn three_slot_antisymmetrization_in_dim_two_vanishes() {
        let t = Tensor::from_fn(2, vec![Variance::Covariant; 3], |idx| {
            int((idx[0] * 4 + idx[1] * 2 + idx[2]) as i64 + 1)
        })
        .unwrap();
        assert!(t.antisymmetrize(&[0, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn symmetrize_rejects_mixed_variance() {
        let t = Tensor::<Rational>::generalized_kronecker(1, 2).unwrap();
        assert!(matches!(t.symmetrize(&[0, 1]), Err(Error::MixedVariance)));
    }

    #[test]
    fn kronecker_order_two_values() {
        let d = Tensor::<Rational>::generalized_kronecker(2, 3).unwrap();
        // 0-based version of delta^{1,2}_{1,2} = 1 and delta^{1,2}_{2,1} = -1
        assert_eq!(d.get(&[0, 1, 0, 1]), &int(1));
        assert_eq!(d.get(&[0, 1, 1, 0]), &int(-1));
        assert_eq!(d.get(&[0, 0, 0, 1]), &int(0)); // repeated upper index
    }

    #[test]
    fn kronecker_above_dimension_vanishes() {
        for n in 1..=3 {
            let d = Tensor::<Rational>::generalized_kronecker(n + 1, n).unwrap();
            assert!(d.is_zero());
        }
    }

    #[test]
    fn kronecker_is_antisymmetric_in_each_block() {
        let m = 3;
        let d = Tensor::<Rational>::generalized_kronecker(m, 3).unwrap();
        let upper_swap = Permutation::transposition(2 * m, 0, 1).unwrap();
        let lower_swap = Permutation::transposition(2 * m, m, m + 1).unwrap();
        assert_eq!(d.permute_slots(&upper_swap).unwrap(), d.neg());
        assert_eq!(d.permute_slots(&lower_swap).unwrap(), d.neg());
    }

    #[test]
    fn disjoint_contractions_commute() {
        let g = euclidean(3);
        let t = Tensor::from_fn(3, vec![Variance::Covariant; 4], |idx| {
            rat(
                (idx[0] * 27 + idx[1] * 9 + idx[2] * 3 + idx[3]) as i64 % 11 - 5,
                3,
            )
        })
        .unwrap();
        // Contract (0,1) then what was (2,3), and in the other order.
        let first = t.contract(0, 1, &g).unwrap().contract(0, 1, &g).unwrap();
        let second = t.contract(2, 3, &g).unwrap().contract(0, 1, &g).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn floating_point_mode_runs_the_same_ops() {
        let g = Tensor::<f64>::from_fn(2, vec![Variance::Covariant; 2], |idx| {
            if idx[0] == idx[1] {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let traced = g.contract(0, 1, &g).unwrap();
        assert_eq!(traced.scalar_value().unwrap(), &2.0);
        let d = Tensor::<f64>::generalized_kronecker(2, 2).unwrap();
        assert_eq!(d.get(&[0, 1, 0, 1]), &1.0);
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        let sigma = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(sigma.sign(), 1);
        assert_eq!(
            sigma.compose(&sigma.inverse()).unwrap(),
            Permutation::identity(3)
        );
        let tau = Permutation::transposition(3, 0, 2).unwrap();
        assert_eq!(tau.sign(), -1);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
