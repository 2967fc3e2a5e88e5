//! Discrete metric-measure laboratory.
//!
//! Finite connected graphs with edge lengths, edge weights and vertex measures
//! stand in for metric measure spaces. For a vertex function `u` the discrete
//! upper gradient on an edge `e = (x, y)` is `|u(x) - u(y)| / len(e)` and the
//! `p`-energy is `sum_e w_e (|u(x) - u(y)| / len(e))^p`. Total variation and
//! perimeter use the matching weights `w_e / len(e)`, which makes the discrete
//! coarea formula an identity.

mod bounds;
mod capacity;
mod ferrand;
mod flow;
mod graph;
pub mod io;
mod monotone;
mod net;
mod profile;
mod qi;
pub mod random;
mod sequence;
mod sobolev;

pub use bounds::annulus_capacity_bound;
pub use capacity::{
    capacity_upper_teichmuller, p_capacity, p_capacity_with, teichmuller_potential, Capacitor,
    CapacityResult, SolverOptions, Target,
};
pub use ferrand::{
    connected_subsets, ferrand_hyperbolic, ferrand_hyperbolic_table, ferrand_parabolic, Bound,
    FerrandMode, FerrandValue, EXACT_FERRAND_LIMIT,
};
pub use graph::{Edge, MetricMeasureGraph};
pub use monotone::{is_monotone, straighten, straighten_with_order, ValueOrder};
pub use net::{ball_mass_profile, build_net, fit_growth_exponent, NetReport, PointCloud};
pub use profile::{isoperimetric_profile, ProfileMode, ProfileValue, EXACT_PROFILE_LIMIT};
pub use qi::{estimate_qi_constants, QiEstimate};
pub use sequence::{quasi_straight_defect, SequenceDefectReport};
pub use sobolev::{sobolev_constant_probe, SobolevProbe};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("exponent must satisfy {0}")]
    BadExponent(String),
    #[error("invalid capacitor: {0}")]
    InvalidCapacitor(String),
    #[error("the two sets overlap")]
    OverlappingSets,
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    SolverDiverged { iterations: usize, residual: f64 },
    #[error("{n} vertices exceed the exact-mode limit of {limit}")]
    TooLargeForExact { n: usize, limit: usize },
    #[error("graph has no infinity boundary")]
    NoInfinityBoundary,
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("net graph is disconnected; increase epsilon")]
    DisconnectedNet,
    #[error("radii must satisfy 0 < r < R")]
    BadRadii,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("window of length {0} is shorter than 3")]
    WindowTooShort(usize),
    #[error("sample is empty")]
    EmptySample,
    #[error("distance oracle violates the metric axioms: {0}")]
    InvalidMetric(String),
    #[error("malformed document: {0}")]
    Malformed(String),
}

impl LabError {
    pub fn kind(&self) -> &'static str {
        match self {
            LabError::InvalidGraph(_) => "InvalidGraph",
            LabError::Disconnected => "Disconnected",
            LabError::BadExponent(_) => "BadExponent",
            LabError::InvalidCapacitor(_) => "InvalidCapacitor",
            LabError::OverlappingSets => "OverlappingSets",
            LabError::SolverDiverged { .. } => "SolverDiverged",
            LabError::TooLargeForExact { .. } => "TooLargeForExact",
            LabError::NoInfinityBoundary => "NoInfinityBoundary",
            LabError::EmptyCloud => "EmptyCloud",
            LabError::DisconnectedNet => "DisconnectedNet",
            LabError::BadRadii => "BadRadii",
            LabError::BadParameter(_) => "BadParameter",
            LabError::WindowTooShort(_) => "WindowTooShort",
            LabError::EmptySample => "EmptySample",
            LabError::InvalidMetric(_) => "InvalidMetric",
            LabError::Malformed(_) => "Malformed",
        }
    }
}
