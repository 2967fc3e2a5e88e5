//! Dimension invariants, conformal type and the QC ⇒ QI verdict.
//!
//! For a simply connected nilpotent group with bracket-generating polarization
//! `D` the Hausdorff dimension is `Q = sum_k k * dim(D^[k] / D^[k-1])` and the
//! growth dimension is `N = sum_k dim(g^k)`. Always `Q <= N`, with equality
//! exactly when `D` is the first layer of a stratification. Conformal type
//! follows from comparing the two: `N < Q` strictly parabolic, `N = Q`
//! liminal parabolic, `N > Q` hyperbolic.

mod fixture;
mod verdict;

pub use fixture::{DeclaredFixture, Group};
pub use verdict::{qc_implies_qi_verdict, verdict_from_reports, InvariantCheck, Verdict, VerdictCase};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{rational, GuivarchData, LieAlgebra, LieError, RVec, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("polarization is not bracket-generating")]
    NotBracketGenerating,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("inconsistent declared fixture: {0}")]
    InconsistentFixture(String),
}

impl ClassifyError {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassifyError::Lie(e) => e.kind(),
            ClassifyError::NotBracketGenerating => "NotBracketGenerating",
            ClassifyError::Unsupported(_) => "Unsupported",
            ClassifyError::InvalidGroup(_) => "InvalidGroup",
            ClassifyError::InconsistentFixture(_) => "InconsistentFixture",
        }
    }
}

/// A Lie algebra with a polarization, possibly divided by a central lattice
/// of the given rank (0 means simply connected).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    algebra: LieAlgebra,
    polarization: Subspace,
    lattice_rank: usize,
}

impl GroupSpec {
    pub fn new(
        algebra: LieAlgebra,
        polarization: Subspace,
        lattice_rank: usize,
    ) -> Result<Self, ClassifyError> {
        if polarization.ambient_dim() != algebra.dim() {
            return Err(LieError::DimensionMismatch {
                expected: algebra.dim(),
                found: polarization.ambient_dim(),
            }
            .into());
        }
        let center = algebra.center().rank();
        if lattice_rank > center {
            return Err(ClassifyError::InvalidGroup(format!(
                "lattice rank {lattice_rank} exceeds the center dimension {center}"
            )));
        }
        Ok(Self {
            algebra,
            polarization,
            lattice_rank,
        })
    }

    /// Riemannian structure: the polarization is the whole algebra.
    pub fn riemannian(algebra: LieAlgebra) -> Self {
        let full = Subspace::full(algebra.dim());
        Self::new(algebra, full, 0).expect("full polarization is valid")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn polarization(&self) -> &Subspace {
        &self.polarization
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn with_lattice_rank(self, lattice_rank: usize) -> Result<Self, ClassifyError> {
        Self::new(self.algebra, self.polarization, lattice_rank)
    }
}

/// Integer dimension that may be infinite (exponential growth).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n),
            Dim::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Dim::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(Dim::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConformalType {
    StrictlyParabolic,
    LiminalParabolic,
    Hyperbolic,
}

impl ConformalType {
    /// Parabolic iff `N <= Q`; liminal iff equal.
    pub fn from_dimensions(q: u64, n: Dim) -> Self {
        match n {
            Dim::Finite(n) if n < q => ConformalType::StrictlyParabolic,
            Dim::Finite(n) if n == q => ConformalType::LiminalParabolic,
            _ => ConformalType::Hyperbolic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub hausdorff_dim_q: u64,
    pub growth_dim_n: Dim,
    pub parabolic_dim: Dim,
    pub isoperimetric_dim: Dim,
    pub bracket_generating: bool,
    pub unimodular: bool,
    pub nilpotent: bool,
    pub carnot: bool,
    pub simply_connected: bool,
    pub conformal_type: ConformalType,
    pub fundamental_group_infinite: bool,
}

fn flag_ranks(spec: &GroupSpec) -> Result<Vec<usize>, ClassifyError> {
    let flag = spec.algebra.polarization_flag(&spec.polarization)?;
    if !flag.last().is_some_and(Subspace::is_full) {
        return Err(ClassifyError::NotBracketGenerating);
    }
    Ok(flag.iter().map(Subspace::rank).collect())
}

/// `Q = sum_k k * (rank D^[k] - rank D^[k-1])`; does not depend on the lattice.
pub fn hausdorff_dimension(spec: &GroupSpec) -> Result<u64, ClassifyError> {
    let ranks = flag_ranks(spec)?;
    let mut previous = 0;
    let mut q = 0;
    for (k, &r) in ranks.iter().enumerate() {
        q += (k as u64 + 1) * (r - previous) as u64;
        previous = r;
    }
    Ok(q)
}

/// Bass–Guivarc'h `N = sum_k rank g^k` for simply connected groups; `dim - k`
/// for abelian algebras modulo a rank-`k` lattice.
pub fn growth_dimension(spec: &GroupSpec) -> Result<u64, ClassifyError> {
    let series = spec.algebra.lower_central_series();
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(LieError::NotNilpotent.into());
    }
    if spec.lattice_rank > 0 {
        if spec.algebra.is_abelian() {
            return Ok((spec.algebra.dim() - spec.lattice_rank) as u64);
        }
        return Err(ClassifyError::Unsupported(
            "growth dimension of a non-abelian quotient by a lattice".into(),
        ));
    }
    Ok(series.iter().map(|s| s.rank() as u64).sum())
}

/// `D` is the first layer of a stratification iff `D^[k] ⊕ g^{k+1} = g` for every `k`.
pub fn is_carnot_polarization(spec: &GroupSpec) -> Result<bool, ClassifyError> {
    let alg = &spec.algebra;
    let series = alg.lower_central_series();
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(LieError::NotNilpotent.into());
    }
    let flag = alg.polarization_flag(&spec.polarization)?;
    if !flag.last().is_some_and(Subspace::is_full) {
        return Err(ClassifyError::NotBracketGenerating);
    }
    if spec.lattice_rank > 0 {
        return Err(ClassifyError::Unsupported(
            "Carnot test needs a simply connected group".into(),
        ));
    }
    let n = alg.dim();
    let steps = flag.len().max(series.len());
    let zero = Subspace::zero(n);
    let full = Subspace::full(n);
    for k in 0..steps {
        let dk = flag.get(k).unwrap_or(&full);
        // flag[k] is D^[k+1], series[k + 1] is g^{k+2}
        let gk = series.get(k + 1).unwrap_or(&zero);
        if dk.rank() + gk.rank() != n || !dk.sum(gk).is_full() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full classification of a (possibly quotiented) nilpotent group.
pub fn classify_conformal_type(spec: &GroupSpec) -> Result<ClassificationReport, ClassifyError> {
    let q = hausdorff_dimension(spec)?;
    let n = Dim::Finite(growth_dimension(spec)?);
    let simply_connected = spec.lattice_rank == 0;
    let carnot = simply_connected && is_carnot_polarization(spec)?;
    Ok(ClassificationReport {
        hausdorff_dim_q: q,
        growth_dim_n: n,
        parabolic_dim: n,
        isoperimetric_dim: n,
        bracket_generating: true,
        unimodular: spec.algebra.is_unimodular(),
        nilpotent: true,
        carnot,
        simply_connected,
        conformal_type: ConformalType::from_dimensions(q, n),
        fundamental_group_infinite: spec.lattice_rank > 0,
    })
}

/// Points `exp(k v)` for `k` in `k_min..=k_max`, in exponential coordinates.
pub fn exp_line_sequence(
    spec: &GroupSpec,
    v: &[Rational],
    k_min: i64,
    k_max: i64,
) -> Result<Vec<RVec>, ClassifyError> {
    let alg = &spec.algebra;
    if v.len() != alg.dim() {
        return Err(LieError::DimensionMismatch {
            expected: alg.dim(),
            found: v.len(),
        }
        .into());
    }
    if !alg.is_nilpotent() {
        return Err(LieError::NotNilpotent.into());
    }
    if rational::is_zero_vec(v) {
        return Err(LieError::ZeroVector.into());
    }
    Ok((k_min..=k_max)
        .map(|k| rational::scale(&rational::int(k), v))
        .collect())
}

/// Left-invariant quasi-distance `|x^{-1} * y|` built from the quasi-norm.
pub fn quasi_distance(
    alg: &LieAlgebra,
    data: &GuivarchData,
    x: &[Rational],
    y: &[Rational],
) -> Result<f64, LieError> {
    let z = alg.bch_product(&alg.bch_inverse(x), y)?;
    data.quasinorm(&z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::{engel, heisenberg, sl2};
    use crate::lie::rational::{from_ints, unit};

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>()).unwrap()
    }

    fn sub_riemannian_heisenberg() -> GroupSpec {
        GroupSpec::new(heisenberg(), span(3, &[0, 1]), 0).unwrap()
    }

    #[test]
    fn hausdorff_dimensions() {
        for n in 1..=4 {
            assert_eq!(hausdorff_dimension(&GroupSpec::riemannian(LieAlgebra::abelian(n))).unwrap(), n as u64);
        }
        assert_eq!(hausdorff_dimension(&sub_riemannian_heisenberg()).unwrap(), 4);
        assert_eq!(hausdorff_dimension(&GroupSpec::riemannian(heisenberg())).unwrap(), 3);
        let bad = GroupSpec::new(heisenberg(), span(3, &[0, 2]), 0).unwrap();
        assert_eq!(hausdorff_dimension(&bad), Err(ClassifyError::NotBracketGenerating));
        // lattice does not change the local invariant
        let torus = GroupSpec::riemannian(LieAlgebra::abelian(3)).with_lattice_rank(1).unwrap();
        assert_eq!(hausdorff_dimension(&torus).unwrap(), 3);
    }

    #[test]
    fn growth_dimensions() {
        assert_eq!(growth_dimension(&sub_riemannian_heisenberg()).unwrap(), 4);
        assert_eq!(growth_dimension(&GroupSpec::riemannian(LieAlgebra::abelian(5))).unwrap(), 5);
        let cylinder = GroupSpec::riemannian(LieAlgebra::abelian(4)).with_lattice_rank(1).unwrap();
        assert_eq!(growth_dimension(&cylinder).unwrap(), 3);
        let hq = GroupSpec::riemannian(heisenberg()).with_lattice_rank(1).unwrap();
        assert!(matches!(growth_dimension(&hq), Err(ClassifyError::Unsupported(_))));
        assert_eq!(
            growth_dimension(&GroupSpec::riemannian(sl2())),
            Err(ClassifyError::Lie(LieError::NotNilpotent))
        );
    }

    #[test]
    fn lattice_rank_bounded_by_center() {
        assert!(matches!(
            GroupSpec::riemannian(heisenberg()).with_lattice_rank(2),
            Err(ClassifyError::InvalidGroup(_))
        ));
    }

    #[test]
    fn carnot_tests() {
        assert!(is_carnot_polarization(&sub_riemannian_heisenberg()).unwrap());
        assert!(!is_carnot_polarization(&GroupSpec::riemannian(heisenberg())).unwrap());
        let engel_124 = GroupSpec::new(engel(), span(4, &[0, 1, 3]), 0).unwrap();
        assert!(!is_carnot_polarization(&engel_124).unwrap());
        assert_eq!(hausdorff_dimension(&engel_124).unwrap(), 5);
        assert_eq!(growth_dimension(&engel_124).unwrap(), 7);
        let engel_12 = GroupSpec::new(engel(), span(4, &[0, 1]), 0).unwrap();
        assert!(is_carnot_polarization(&engel_12).unwrap());
        let torus = GroupSpec::riemannian(LieAlgebra::abelian(2)).with_lattice_rank(1).unwrap();
        assert!(matches!(is_carnot_polarization(&torus), Err(ClassifyError::Unsupported(_))));
    }

    #[test]
    fn conformal_types() {
        let r3 = classify_conformal_type(&GroupSpec::riemannian(LieAlgebra::abelian(3))).unwrap();
        assert_eq!(r3.conformal_type, ConformalType::LiminalParabolic);
        assert!(r3.carnot);
        let cyl = GroupSpec::riemannian(LieAlgebra::abelian(4)).with_lattice_rank(1).unwrap();
        let r = classify_conformal_type(&cyl).unwrap();
        assert_eq!((r.hausdorff_dim_q, r.growth_dim_n), (4, Dim::Finite(3)));
        assert_eq!(r.conformal_type, ConformalType::StrictlyParabolic);
        assert!(r.fundamental_group_infinite && !r.carnot);
        let rh = classify_conformal_type(&GroupSpec::riemannian(heisenberg())).unwrap();
        assert_eq!(rh.conformal_type, ConformalType::Hyperbolic);
        assert_eq!(rh.parabolic_dim, rh.growth_dim_n);
        assert_eq!(rh.isoperimetric_dim, rh.growth_dim_n);
    }

    #[test]
    fn exp_lines() {
        let spec = sub_riemannian_heisenberg();
        let pts = exp_line_sequence(&spec, &unit(3, 0), -3, 3).unwrap();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], from_ints(&[-3, 0, 0]));
        assert_eq!(
            exp_line_sequence(&spec, &rational::zeros(3), 0, 2),
            Err(ClassifyError::Lie(LieError::ZeroVector))
        );
        let data = spec.algebra().guivarch_splitting().unwrap();
        let z_line = exp_line_sequence(&spec, &unit(3, 2), 0, 9).unwrap();
        for (k, p) in z_line.iter().enumerate() {
            let d = quasi_distance(spec.algebra(), &data, &z_line[0], p).unwrap();
            assert!((d - (k as f64).sqrt()).abs() < 1e-12);
        }
    }
}
