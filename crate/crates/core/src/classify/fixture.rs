use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{classify_conformal_type, hausdorff_dimension, ClassificationReport, ClassifyError, ConformalType, Dim, GroupSpec};
use crate::lie::{fixtures, format, LieError, Subspace};

/// A group known only through declared invariants, for groups whose growth
/// is not computed here (non-nilpotent groups such as the rototranslation group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredFixture {
    pub name: String,
    pub hausdorff_dim: u64,
    pub growth_dim: Dim,
    /// Checked against the `N` vs `Q` rule when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conformal_type: Option<ConformalType>,
    #[serde(default)]
    pub nilpotent: bool,
    #[serde(default = "yes")]
    pub unimodular: bool,
    #[serde(default = "yes")]
    pub simply_connected: bool,
    #[serde(default)]
    pub fundamental_group_infinite: bool,
}

fn yes() -> bool {
    true
}

impl DeclaredFixture {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if self.hausdorff_dim == 0 {
            return Err(ClassifyError::InconsistentFixture("Hausdorff dimension must be positive".into()));
        }
        if self.fundamental_group_infinite && self.simply_connected {
            return Err(ClassifyError::InconsistentFixture(
                "a simply connected group has trivial fundamental group".into(),
            ));
        }
        let derived = ConformalType::from_dimensions(self.hausdorff_dim, self.growth_dim);
        if let Some(declared) = self.conformal_type {
            if declared != derived {
                return Err(ClassifyError::InconsistentFixture(format!(
                    "{}: declared {declared:?} but Q = {} and N = {} give {derived:?}",
                    self.name, self.hausdorff_dim, self.growth_dim
                )));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> Result<ClassificationReport, ClassifyError> {
        self.validate()?;
        let carnot = self.nilpotent
            && self.simply_connected
            && self.growth_dim == Dim::Finite(self.hausdorff_dim);
        Ok(ClassificationReport {
            hausdorff_dim_q: self.hausdorff_dim,
            growth_dim_n: self.growth_dim,
            parabolic_dim: self.growth_dim,
            isoperimetric_dim: self.growth_dim,
            bracket_generating: true,
            unimodular: self.unimodular,
            nilpotent: self.nilpotent,
            carnot,
            simply_connected: self.simply_connected,
            conformal_type: ConformalType::from_dimensions(self.hausdorff_dim, self.growth_dim),
            fundamental_group_infinite: self.fundamental_group_infinite,
        })
    }

    /// Sub-Riemannian rototranslation group: `Q = 4` from its flag, growth
    /// dimension 3 declared (it is quasi-isometric to `R^3`).
    pub fn rototranslation() -> Self {
        let alg = fixtures::rototranslation();
        // D = span{X, T}; [T, X] = Y fills the algebra in one step.
        let delta = Subspace::span(3, &[crate::lie::rational::unit(3, 0), crate::lie::rational::unit(3, 2)])
            .expect("ambient dimension 3");
        let spec = GroupSpec::new(alg, delta, 0).expect("valid polarization");
        let q = hausdorff_dimension(&spec).expect("bracket-generating");
        Self {
            name: "rototranslation (sub-Riemannian)".into(),
            hausdorff_dim: q,
            growth_dim: Dim::Finite(3),
            conformal_type: None,
            nilpotent: false,
            unimodular: true,
            simply_connected: true,
            fundamental_group_infinite: false,
        }
    }
}

/// Either a computable group or a declared fixture.
#[derive(Debug, Clone, PartialEq)]
pub enum Group {
    Spec(GroupSpec),
    Declared(DeclaredFixture),
}

impl Group {
    pub fn classify(&self) -> Result<ClassificationReport, ClassifyError> {
        match self {
            Group::Spec(spec) => classify_conformal_type(spec),
            Group::Declared(fixture) => fixture.report(),
        }
    }

    /// Reads either an algebra document (polarization defaults to the whole
    /// algebra, lattice rank to 0) or `{"declared": {...}}`.
    pub fn from_value(value: Value) -> Result<Self, ClassifyError> {
        if let Some(declared) = value.get("declared") {
            let fixture: DeclaredFixture = serde_json::from_value(declared.clone())
                .map_err(|e| LieError::MalformedSpec(e.to_string()))?;
            fixture.validate()?;
            return Ok(Group::Declared(fixture));
        }
        let doc = format::parse_value(value)?;
        let dim = doc.algebra.dim();
        let polarization = doc.polarization.unwrap_or_else(|| Subspace::full(dim));
        Ok(Group::Spec(GroupSpec::new(
            doc.algebra,
            polarization,
            doc.lattice_rank.unwrap_or(0),
        )?))
    }

    pub fn from_text(text: &str) -> Result<Self, ClassifyError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| LieError::MalformedSpec(e.to_string()))?;
        Self::from_value(value)
    }
}
