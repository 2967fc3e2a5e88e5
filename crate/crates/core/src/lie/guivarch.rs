//! Guivarc'h splitting and the homogeneous quasi-norm `sum_m a_m |v_m|^(1/m)`.

use serde::{Deserialize, Serialize};

use super::rational::{self, RVec, Rational};
use super::{LieAlgebra, LieError, Subspace};

/// Norm used on each layer, in the coordinates of the layer's reduced basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerNorm {
    #[default]
    Euclidean,
    Max,
    Sum,
}

impl LayerNorm {
    fn eval(self, coords: &[f64]) -> f64 {
        match self {
            LayerNorm::Euclidean => coords.iter().map(|c| c * c).sum::<f64>().sqrt(),
            LayerNorm::Max => coords.iter().fold(0.0, |m, c| m.max(c.abs())),
            LayerNorm::Sum => coords.iter().map(|c| c.abs()).sum(),
        }
    }
}

/// Layers `V_1, ..., V_s` with `V_m` a complement of `g^{m+1}` in `g^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct GuivarchData {
    layers: Vec<Subspace>,
    weights: Vec<f64>,
    norm: LayerNorm,
    // Rows: concatenated layer bases; used to split vectors into layer parts.
    stacked: Vec<RVec>,
    stacked_inverse: Vec<RVec>,
}

impl GuivarchData {
    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm(&self) -> LayerNorm {
        self.norm
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        assert_eq!(weights.len(), self.layers.len(), "one weight per layer");
        assert!(weights.iter().all(|&a| a > 0.0), "weights must be positive");
        self.weights = weights;
        self
    }

    pub fn with_norm(mut self, norm: LayerNorm) -> Self {
        self.norm = norm;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.stacked.len()
    }

    /// Splits `v = sum_m v_m` and returns the coordinates of each `v_m` in
    /// the reduced basis of `V_m`.
    pub fn layer_coordinates(&self, v: &[Rational]) -> Result<Vec<RVec>, LieError> {
        let n = self.ambient_dim();
        if v.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        // v = sum_r c_r stacked[r]  <=>  c = v * stacked^{-1}
        let coeffs: RVec = (0..n)
            .map(|c| (0..n).map(|r| &v[r] * &self.stacked_inverse[r][c]).sum())
            .collect();
        let mut out = Vec::with_capacity(self.layers.len());
        let mut offset = 0;
        for layer in &self.layers {
            out.push(coeffs[offset..offset + layer.rank()].to_vec());
            offset += layer.rank();
        }
        Ok(out)
    }

    /// `v_m` as a vector of the ambient space.
    pub fn layer_component(&self, v: &[Rational], m: usize) -> Result<RVec, LieError> {
        let coords = self.layer_coordinates(v)?;
        let mut out = rational::zeros(self.ambient_dim());
        for (c, b) in coords[m].iter().zip(self.layers[m].basis()) {
            rational::axpy(&mut out, c, b);
        }
        Ok(out)
    }

    /// `sum_m a_m |v_m|^(1/m)` with layers numbered from 1.
    pub fn quasinorm(&self, v: &[Rational]) -> Result<f64, LieError> {
        let coords = self.layer_coordinates(v)?;
        Ok(coords
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let floats: Vec<f64> = c.iter().map(rational::to_f64).collect();
                let norm = self.norm.eval(&floats);
                self.weights[m] * norm.powf(1.0 / (m + 1) as f64)
            })
            .sum())
    }
}

impl LieAlgebra {
    /// Layers from the lower central series, each completed from the reduced
    /// basis of `g^m` over `g^{m+1}`. Weights default to 1, norms to Euclidean.
    pub fn guivarch_splitting(&self) -> Result<GuivarchData, LieError> {
        let series = self.lower_central_series();
        if !series.last().is_some_and(Subspace::is_zero) {
            return Err(LieError::NotNilpotent);
        }
        let n = self.dim();
        let mut layers = Vec::new();
        for pair in series.windows(2) {
            let added = pair[1].complement_in(&pair[0]);
            layers.push(Subspace::span(n, &added)?);
        }
        let stacked: Vec<RVec> = layers.iter().flat_map(|l| l.basis().iter().cloned()).collect();
        let stacked_inverse =
            super::invert(&stacked).expect("layers form a direct-sum decomposition");
        Ok(GuivarchData {
            weights: vec![1.0; layers.len()],
            layers,
            norm: LayerNorm::default(),
            stacked,
            stacked_inverse,
        })
    }
}
