//! Conformal-type classification of geodesic Lie groups and a discrete
//! capacity laboratory on weighted graphs.
//!
//! * [`lie`]: exact Lie algebra arithmetic (flags, series, BCH, quasi-norms).
//! * [`classify`]: Hausdorff and growth dimensions, conformal type, and the
//!   verdict on whether quasi-conformal maps between two groups are
//!   quasi-isometries.
//! * [`lab`]: finite metric-measure graphs with capacities, perimeters,
//!   isoperimetric profiles, nets, straightening and Ferrand distances.
//! * [`report`]: deterministic rendering of reports.

pub mod lie;
pub mod classify;
pub mod lab;
pub mod report;
