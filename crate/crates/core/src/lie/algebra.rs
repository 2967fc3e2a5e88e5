use num_traits::Zero;

use super::rational::{self, RVec, Rational};
use super::{LieError, Subspace};

/// Finite-dimensional Lie algebra over `Q` given by structure constants
/// `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    // table[i * dim + j] = [e_i, e_j]
    table: Vec<RVec>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from bracket entries `(i, j, [e_i, e_j])`
    /// with 0-based indices. Entries not listed are zero; `(j, i)` is implied.
    pub fn new(labels: Vec<String>, brackets: Vec<(usize, usize, RVec)>) -> Result<Self, LieError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(LieError::MalformedSpec("dimension must be positive".into()));
        }
        let mut table = vec![rational::zeros(dim); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, coeffs) in brackets {
            if i >= dim || j >= dim {
                return Err(LieError::MalformedSpec(format!(
                    "bracket index ({}, {}) out of range for dim {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if coeffs.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    found: coeffs.len(),
                });
            }
            if i == j {
                if rational::is_zero_vec(&coeffs) {
                    continue;
                }
                return Err(LieError::AntisymmetryViolation(labels[i].clone(), labels[j].clone()));
            }
            if seen[i * dim + j] {
                return Err(LieError::MalformedSpec(format!(
                    "bracket ({}, {}) given twice",
                    i + 1,
                    j + 1
                )));
            }
            if seen[j * dim + i] {
                if table[j * dim + i] != rational::neg(&coeffs) {
                    return Err(LieError::AntisymmetryViolation(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            } else {
                table[j * dim + i] = rational::neg(&coeffs);
            }
            table[i * dim + j] = coeffs;
            seen[i * dim + j] = true;
        }
        let alg = Self { labels, table };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Abelian algebra with basis labels `X1..Xn`.
    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("X{i}")).collect();
        Self::new(labels, Vec::new()).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> &RVec {
        &self.table[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| rational::is_zero_vec(v))
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<RVec, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> RVec {
        let n = self.dim();
        let mut out = rational::zeros(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if i != j {
                    rational::axpy(&mut out, &(xi * yj), self.basis_bracket(i, j));
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (rational::unit(n, i), rational::unit(n, j), rational::unit(n, k));
                    let a = self.bracket_unchecked(self.basis_bracket(i, j), &ek);
                    let b = self.bracket_unchecked(self.basis_bracket(j, k), &ei);
                    let c = self.bracket_unchecked(self.basis_bracket(k, i), &ej);
                    let sum = rational::add(&rational::add(&a, &b), &c);
                    if !rational::is_zero_vec(&sum) {
                        return Err(LieError::JacobiViolation(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[A, B]` as a subspace.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let vectors: Vec<RVec> = a
            .basis()
            .iter()
            .flat_map(|x| b.basis().iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bracket_unchecked(x, y))
            .collect();
        Subspace::span(self.dim(), &vectors).expect("bracket preserves dimension")
    }

    /// Flag `D^[1] ⊂ D^[2] ⊂ ...` with `D^[k+1] = D^[k] + [D, D^[k]]`, up to
    /// the first repeated term (not included).
    pub fn polarization_flag(&self, delta: &Subspace) -> Result<Vec<Subspace>, LieError> {
        if delta.ambient_dim() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: delta.ambient_dim(),
            });
        }
        let mut flag = vec![delta.clone()];
        loop {
            let last = flag.last().expect("flag is nonempty");
            let next = last.sum(&self.bracket_subspaces(delta, last));
            if next.rank() == last.rank() {
                return Ok(flag);
            }
            flag.push(next);
        }
    }

    pub fn is_bracket_generating(&self, delta: &Subspace) -> Result<bool, LieError> {
        let flag = self.polarization_flag(delta)?;
        Ok(flag.last().is_some_and(Subspace::is_full))
    }

    /// `g^1 = g`, `g^{k+1} = [g, g^k]`, listed until the first repeated term
    /// (included once), so the last entry is the stable value.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("series is nonempty");
            let next = self.bracket_subspaces(&full, last);
            if next.rank() == last.rank() {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Nilpotency step `s` (with `g^{s+1} = 0`), or `None` if not nilpotent.
    /// The zero-dimensional case never occurs; abelian algebras have step 1.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().is_some_and(Subspace::is_zero).then(|| series.len() - 1)
    }

    /// Matrix of `ad x` acting on column coordinate vectors: `rows[k][j]` is
    /// the `e_k` coefficient of `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<Vec<RVec>, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let columns: Vec<RVec> = (0..n)
            .map(|j| self.bracket_unchecked(x, &rational::unit(n, j)))
            .collect();
        Ok((0..n).map(|k| columns.iter().map(|c| c[k].clone()).collect()).collect())
    }

    /// `trace(ad e_i) = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let trace: Rational = (0..n).map(|j| self.basis_bracket(i, j)[j].clone()).sum();
            trace.is_zero()
        })
    }

    /// Center `{z : [z, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Linear conditions on z: for every j, k: sum_i z_i c_ij^k = 0.
        let rows: Vec<RVec> = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| (0..n).map(|i| self.basis_bracket(i, j)[k].clone()).collect())
            .collect();
        Subspace::span(n, &super::nullspace(rows, n)).expect("nullspace has ambient length")
    }

    /// Structure constants in the basis `f_j = sum_i p[i][j] e_i` (columns of
    /// `p` are the new basis vectors). Returns `None` if `p` is singular.
    pub fn change_basis(&self, p: &[RVec]) -> Option<LieAlgebra> {
        let n = self.dim();
        let p_inv = super::invert(p)?;
        let column = |j: usize| -> RVec { (0..n).map(|i| p[i][j].clone()).collect() };
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_unchecked(&column(i), &column(j));
                let coords: RVec = (0..n)
                    .map(|r| (0..n).map(|c| &p_inv[r][c] * &b[c]).sum())
                    .collect();
                if !rational::is_zero_vec(&coords) {
                    brackets.push((i, j, coords));
                }
            }
        }
        LieAlgebra::new(self.labels.clone(), brackets).ok()
    }

    /// Bracket entries `(i, j, [e_i, e_j])` with `i < j`, nonzero only.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, RVec)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.basis_bracket(i, j);
                if !rational::is_zero_vec(b) {
                    out.push((i, j, b.clone()));
                }
            }
        }
        out
    }
}

/// Named algebras used throughout tests and the bundled corpus.
pub mod fixtures {
    use super::LieAlgebra;
    use crate::lie::rational::{from_ints, int, RVec};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// `[X, Y] = Z`
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(labels(&["X", "Y", "Z"]), vec![(0, 1, from_ints(&[0, 0, 1]))]).unwrap()
    }

    /// `[X1, X2] = X3`, `[X1, X3] = X4`
    pub fn engel() -> LieAlgebra {
        LieAlgebra::new(
            labels(&["X1", "X2", "X3", "X4"]),
            vec![(0, 1, from_ints(&[0, 0, 1, 0])), (0, 2, from_ints(&[0, 0, 0, 1]))],
        )
        .unwrap()
    }

    /// `[H, E] = 2E`, `[H, F] = -2F`, `[E, F] = H`
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new(
            labels(&["H", "E", "F"]),
            vec![
                (0, 1, from_ints(&[0, 2, 0])),
                (0, 2, from_ints(&[0, 0, -2])),
                (1, 2, from_ints(&[1, 0, 0])),
            ],
        )
        .unwrap()
    }

    /// `[A, B] = B`
    pub fn affine() -> LieAlgebra {
        LieAlgebra::new(labels(&["A", "B"]), vec![(0, 1, from_ints(&[0, 1]))]).unwrap()
    }

    /// Rototranslation algebra `se(2)` in the basis `(X, Y, T)`:
    /// `[T, X] = Y`, `[T, Y] = -X`.
    pub fn rototranslation() -> LieAlgebra {
        LieAlgebra::new(
            labels(&["X", "Y", "T"]),
            vec![(0, 2, from_ints(&[0, -1, 0])), (1, 2, from_ints(&[1, 0, 0]))],
        )
        .unwrap()
    }

    /// Strictly upper-triangular `n x n` matrices with basis `E_ij`, `i < j`,
    /// ordered lexicographically. Nilpotent of step `n - 1`.
    pub fn strictly_upper_triangular(n: usize) -> LieAlgebra {
        let index: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let dim = index.len();
        let pos = |p: (usize, usize)| index.iter().position(|&q| q == p);
        let mut brackets = Vec::new();
        for (a, &(i, j)) in index.iter().enumerate() {
            for (b, &(k, l)) in index.iter().enumerate().skip(a + 1) {
                // [E_ij, E_kl] = d_jk E_il - d_li E_kj
                let mut v: RVec = vec![int(0); dim];
                if j == k {
                    v[pos((i, l)).unwrap()] += int(1);
                }
                if l == i {
                    v[pos((k, j)).unwrap()] -= int(1);
                }
                if v.iter().any(|c| *c != int(0)) {
                    brackets.push((a, b, v));
                }
            }
        }
        let names = index.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        LieAlgebra::new(names, brackets).unwrap()
    }
}
