//! Rational subspaces kept in reduced row-echelon form.

use num_traits::{One, Zero};

use super::rational::{self, RVec, Rational};
use super::LieError;

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two `Subspace`s are equal iff they span the same space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RVec>,
    pivots: Vec<usize>,
}

/// Reduced row-echelon form of `rows`; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<RVec>, ncols: usize) -> (Vec<RVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        rows[r] = rational::scale(&inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = -row[col].clone();
                rational::axpy(row, &c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn nullspace(rows: Vec<RVec>, ncols: usize) -> Vec<RVec> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = rational::zeros(ncols);
        x[free] = Rational::one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            x[pc] = -row[free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Inverse of a square rational matrix (rows), or `None` if singular.
pub fn invert(matrix: &[RVec]) -> Option<Vec<RVec>> {
    let n = matrix.len();
    let augmented: Vec<RVec> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(rational::unit(n, i));
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[RVec]) -> Result<Self, LieError> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LieError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let (basis, pivots) = rref(vectors.to_vec(), ambient_dim);
        Ok(Self {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| rational::unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical reduced basis.
    pub fn basis(&self) -> &[RVec] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in the reduced basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<RVec> {
        let coords: RVec = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            rational::axpy(&mut rest, &-c.clone(), b);
        }
        rational::is_zero_vec(&rest).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        let (basis, pivots) = rref(vectors, self.ambient_dim);
        Self {
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        }
    }

    /// Extends `self` by vectors of `target`'s reduced basis, in order, until
    /// `target` is spanned; the added vectors span a complement of `self` in `target`.
    pub fn complement_in(&self, target: &Subspace) -> Vec<RVec> {
        let mut current = self.clone();
        let mut added = Vec::new();
        for b in &target.basis {
            if !current.contains(b) {
                current = current.sum(&Subspace {
                    ambient_dim: self.ambient_dim,
                    basis: vec![b.clone()],
                    pivots: Vec::new(),
                });
                added.push(b.clone());
            }
        }
        added
    }
}
