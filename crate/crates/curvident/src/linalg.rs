//! Exact dense linear algebra over the rationals: rank, nullspace, inertia.
//!
//! Everything here is plain fraction arithmetic — no pivots are ever "close
//! to zero", they either are zero or they are not. Ranks computed this way
//! are certificates, not estimates.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Self {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.get_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.cols);
        for i in 0..self.rows {
            space.insert(self.row(i).to_vec());
        }
        space.rank()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let a = self.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * x;
                }
                acc
            })
            .collect()
    }

    /// Basis of the right nullspace, one vector per free column of the reduced
    /// row echelon form, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut space = RowSpace::new(self.cols);
        for i in 0..self.rows {
            space.insert(self.row(i).to_vec());
        }
        space.reduce_fully();
        let pivot_cols: Vec<usize> = space.entries.iter().map(|(p, _)| *p).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (pcol, row) in &space.entries {
                v[*pcol] = -row[free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Sylvester inertia `(positive, negative, zero)` of a symmetric matrix,
    /// by exact congruence diagonalization.
    pub fn inertia(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut remaining: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0usize, 0usize);
        while !remaining.is_empty() {
            let pivot = remaining.iter().copied().find(|&i| !a[i][i].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    // No diagonal pivot: look for an off-diagonal entry and
                    // fold its row/column onto the diagonal.
                    let mut found = None;
                    'search: for (ai, &i) in remaining.iter().enumerate() {
                        for &j in &remaining[ai + 1..] {
                            if !a[i][j].is_zero() {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    match found {
                        None => {
                            let zero = remaining.len();
                            return Ok((pos, neg, zero));
                        }
                        Some((i, j)) => {
                            // row_i += row_j; col_i += col_j  =>  a[i][i] = 2 a[i][j]
                            for k in 0..n {
                                let t = a[j][k].clone();
                                a[i][k] += t;
                            }
                            for row in a.iter_mut() {
                                let t = row[j].clone();
                                row[i] += t;
                            }
                            i
                        }
                    }
                }
            };
            let d = a[pivot][pivot].clone();
            if d > Rational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            remaining.retain(|&i| i != pivot);
            // Schur complement: entries outside the remaining block are never
            // read again, so only that block is updated.
            for &r in &remaining {
                if a[r][pivot].is_zero() {
                    continue;
                }
                let factor = &a[r][pivot] / &d;
                for &s in &remaining {
                    let t = &factor * &a[pivot][s];
                    a[r][s] -= t;
                }
            }
        }
        Ok((pos, neg, 0))
    }
}

/// Incremental row space: feed rows one by one and watch the rank grow.
///
/// Stored rows are kept normalized (leading entry 1) and sorted by pivot
/// column, so ranks and nullspaces are deterministic.
pub struct RowSpace {
    cols: usize,
    // (pivot column, row normalized to a leading 1), sorted by pivot column
    entries: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Reduces `row` against the stored basis; stores the remainder if it is
    /// nonzero. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<Rational>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (pivot, basis_row) in &self.entries {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (r, b) in row.iter_mut().zip(basis_row) {
                if !b.is_zero() {
                    *r -= &factor * b;
                }
            }
        }
        let pivot = match row.iter().position(|c| !c.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let lead = row[pivot].clone();
        for r in row.iter_mut() {
            if !r.is_zero() {
                *r /= lead.clone();
            }
        }
        let at = self.entries.partition_point(|(p, _)| *p < pivot);
        self.entries.insert(at, (pivot, row));
        true
    }

    /// Back-substitutes so every pivot column is zero in all other rows
    /// (reduced row echelon form).
    pub fn reduce_fully(&mut self) {
        for i in (0..self.entries.len()).rev() {
            let (pivot, row) = self.entries[i].clone();
            for (_, other) in self.entries.iter_mut().take(i) {
                if other[pivot].is_zero() {
                    continue;
                }
                let factor = other[pivot].clone();
                for (o, r) in other.iter_mut().zip(&row) {
                    if !r.is_zero() {
                        *o -= &factor * r;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(m(&[&[4, 2, 2], &[2, 4, 2], &[2, 2, 4]]).rank(), 3);
        assert_eq!(m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).rank(), 1);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_dimension_and_membership() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inertia_of_diagonal_and_offdiagonal() {
        assert_eq!(m(&[&[2, 0], &[0, -3]]).inertia().unwrap(), (1, 1, 0));
        assert_eq!(
            m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 5]]).inertia().unwrap(),
            (2, 0, 1)
        );
        // Hyperbolic plane: zero diagonal, signature (1,1)
        assert_eq!(m(&[&[0, 1], &[1, 0]]).inertia().unwrap(), (1, 1, 0));
    }

    #[test]
    fn rowspace_detects_dependence() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(vec![int(1), int(2), int(3)]));
        assert!(rs.insert(vec![int(0), int(1), int(1)]));
        assert!(!rs.insert(vec![int(1), int(3), int(4)]));
        assert_eq!(rs.rank(), 2);
    }
}
