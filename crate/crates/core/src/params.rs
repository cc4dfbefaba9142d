//! Parameter triple shared by both invariant families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("ambient dimension must satisfy 2 <= n <= 32, got {0}")]
    Dimension(u32),
    #[error("mean curvature must be positive and finite")]
    MeanCurvature,
    #[error("flux constant must be finite")]
    FluxConstant,
}

/// Position of `H` relative to the critical value `(n-1)/n`, the mean
/// curvature of a horosphere in the product. The trichotomy decides
/// compactness of the rotation family and the shape of every sign table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

/// `(n, H, d)`: ambient hyperbolic dimension, normalized mean curvature with
/// respect to the upward normal, and the flux constant of the first integral.
///
/// `H` is always interpreted for the upward normal; lower branches come from
/// curve extension, never from flipping the sign of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub n: u32,
    #[serde(rename = "H")]
    pub h: f64,
    pub d: f64,
}

impl SurfaceParams {
    pub fn new(n: u32, h: f64, d: f64) -> Result<Self, ParamError> {
        if !(2..=32).contains(&n) {
            return Err(ParamError::Dimension(n));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(ParamError::MeanCurvature);
        }
        if !d.is_finite() {
            return Err(ParamError::FluxConstant);
        }
        Ok(Self { n, h, d })
    }

    /// The critical mean curvature `(n-1)/n`.
    pub fn critical_value(&self) -> f64 {
        critical_value(self.n)
    }

    /// Regime by exact comparison against `(n-1)/n`; callers that want the
    /// critical case must pass that value exactly (the CLI resolves the
    /// literal `critical` to it for this reason).
    pub fn regime(&self) -> Regime {
        let crit = self.critical_value();
        if self.h < crit {
            Regime::Subcritical
        } else if self.h > crit {
            Regime::Supercritical
        } else {
            Regime::Critical
        }
    }

    /// `nH/(n-1)`, the asymptotic slope parameter of the first integral.
    pub(crate) fn slope_parameter(&self) -> f64 {
        f64::from(self.n) * self.h / f64::from(self.n - 1)
    }

    /// `nH`, the coefficient in front of the moment integral.
    pub(crate) fn flux_coefficient(&self) -> f64 {
        f64::from(self.n) * self.h
    }
}

/// The critical mean curvature `(n-1)/n` for dimension `n`.
pub fn critical_value(n: u32) -> f64 {
    f64::from(n - 1) / f64::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SurfaceParams::new(2, 0.5, 0.0).is_ok());
        assert_eq!(
            SurfaceParams::new(1, 0.5, 0.0),
            Err(ParamError::Dimension(1))
        );
        assert_eq!(
            SurfaceParams::new(2, 0.0, 0.0),
            Err(ParamError::MeanCurvature)
        );
        assert_eq!(
            SurfaceParams::new(2, -1.0, 0.0),
            Err(ParamError::MeanCurvature)
        );
        assert_eq!(
            SurfaceParams::new(2, 1.0, f64::NAN),
            Err(ParamError::FluxConstant)
        );
    }

    #[test]
    fn regime_trichotomy_is_exact() {
        let p = SurfaceParams::new(3, 2.0 / 3.0, 0.0).unwrap();
        assert_eq!(p.regime(), Regime::Critical);
        let p = SurfaceParams::new(3, 0.6667, 0.0).unwrap();
        assert_eq!(p.regime(), Regime::Supercritical);
        let p = SurfaceParams::new(3, 0.6666, 0.0).unwrap();
        assert_eq!(p.regime(), Regime::Subcritical);
    }
}
