//! Seeded random nilpotent algebras for property tests and experiments.
//!
//! Algebras are grown by iterated central extensions `g ⊕ Q c` with bracket
//! `[x, y] + w(x, y) c`, where `w` is drawn from the space of 2-cocycles of
//! `g`. Jacobi therefore holds by construction, and every nilpotent algebra
//! arises this way.

use rand::Rng;

use super::rational::{self, int, RVec};
use super::{nullspace, LieAlgebra, Subspace};

fn random_int_vec<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RVec {
    (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

/// Random invertible integer matrix (rows) with entries in `[-bound, bound]`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<RVec> {
    loop {
        let m: Vec<RVec> = (0..n).map(|_| random_int_vec(rng, n, bound)).collect();
        if super::invert(&m).is_some() {
            return m;
        }
    }
}

/// Antisymmetric pair index for `i < j`.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // rows 0..i contribute (n-1) + (n-2) + ... terms
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// One central extension of `alg` by a random 2-cocycle.
pub fn central_extension<R: Rng>(rng: &mut R, alg: &LieAlgebra) -> LieAlgebra {
    let m = alg.dim();
    let unknowns = m * (m.saturating_sub(1)) / 2;
    // w(x, e_k) = sum_a x_a w(a, k), with w(a, k) = -w(k, a).
    let w_row = |x: &RVec, k: usize, row: &mut RVec| {
        for (a, xa) in x.iter().enumerate() {
            if a == k || xa == &int(0) {
                continue;
            }
            let (lo, hi, sign) = if a < k { (a, k, 1) } else { (k, a, -1) };
            row[pair_index(m, lo, hi)] += xa * int(sign);
        }
    };
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut row = rational::zeros(unknowns);
                w_row(alg.basis_bracket(i, j), k, &mut row);
                w_row(alg.basis_bracket(j, k), i, &mut row);
                w_row(alg.basis_bracket(k, i), j, &mut row);
                rows.push(row);
            }
        }
    }
    let cocycles = nullspace(rows, unknowns);
    let mut w = rational::zeros(unknowns);
    for z in &cocycles {
        let c = int(rng.gen_range(-2..=2));
        rational::axpy(&mut w, &c, z);
    }
    let n = m + 1;
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = alg.basis_bracket(i, j).clone();
            v.push(w[pair_index(m, i, j)].clone());
            if !rational::is_zero_vec(&v) {
                brackets.push((i, j, v));
            }
        }
    }
    let labels = (1..=n).map(|i| format!("X{i}")).collect();
    LieAlgebra::new(labels, brackets).expect("central extension by a cocycle satisfies Jacobi")
}

/// Random nilpotent algebra of dimension `dim >= 2`, obtained from an abelian
/// algebra by central extensions and then written in a random basis.
pub fn random_nilpotent<R: Rng>(rng: &mut R, dim: usize) -> LieAlgebra {
    assert!(dim >= 2, "dimension must be at least 2");
    let start = rng.gen_range(2..=dim.max(2));
    let mut alg = LieAlgebra::abelian(start);
    while alg.dim() < dim {
        alg = central_extension(rng, &alg);
    }
    let p = random_invertible(rng, dim, 2);
    alg.change_basis(&p).expect("invertible change of basis")
}

/// Random bracket-generating subspace: `k` random integer vectors, with `k`
/// between the rank of `g / [g, g]` and `dim`.
pub fn random_polarization<R: Rng>(rng: &mut R, alg: &LieAlgebra) -> Subspace {
    let n = alg.dim();
    let derived = alg.lower_central_series().get(1).map_or(0, Subspace::rank);
    let min_k = (n - derived).max(1);
    loop {
        let k = rng.gen_range(min_k..=n);
        let vectors: Vec<RVec> = (0..k).map(|_| random_int_vec(rng, n, 2)).collect();
        let delta = Subspace::span(n, &vectors).expect("vectors have ambient length");
        if alg.is_bracket_generating(&delta).expect("same ambient dimension") {
            return delta;
        }
    }
}
