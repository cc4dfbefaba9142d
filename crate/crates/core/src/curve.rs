//! Discretized generating curves.

use crate::params::SurfaceParams;
use serde::{Deserialize, Serialize};

/// Which invariant family produced a curve. Verification oracles dispatch on
/// this: rotation flux lives on `sinh^(n-1)`, translation flux on
/// `cosh^(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Rotation,
    Translation,
}

/// How the curve meets its sampled end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndBehavior {
    /// Slope 0 at the end (axis point of a `d = 0` curve).
    HorizontalTangent,
    /// Slope diverges at a profile zero; the height integral still converges.
    VerticalTangent,
    /// Finite nonzero slope at the end: translation curves with
    /// `0 < |d| < 1` leave the axis plane obliquely (their mirror extension
    /// has a corner there).
    Oblique,
    /// The curve continues past the sampled window (truncated at `rho_max`,
    /// or the height itself diverges at the end).
    Unbounded,
}

/// One node of a sampled generating curve. `slope` is the exact profile
/// integrand at `rho` (not a finite difference); it is `+-inf` at vertical
/// tangent endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub rho: f64,
    pub height: f64,
    pub slope: f64,
}

/// Resolution request for curve sampling.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    /// Number of nodes along the fundamental arc (minimum 16).
    pub samples: usize,
    /// Truncation radius, required when the existence interval is unbounded.
    pub rho_max: Option<f64>,
}

impl GridSpec {
    pub fn new(samples: usize) -> Self {
        Self {
            samples,
            rho_max: None,
        }
    }

    pub fn with_rho_max(samples: usize, rho_max: f64) -> Self {
        Self {
            samples,
            rho_max: Some(rho_max),
        }
    }
}

impl Default for GridSpec {
    /// 400 nodes, truncation radius 30 for unbounded curves: large enough
    /// for the growth checks at the 1% level while staying far from `f64`
    /// overflow for moderate `n`.
    fn default() -> Self {
        Self {
            samples: 400,
            rho_max: Some(30.0),
        }
    }
}

/// A sampled generating curve: strictly increasing `rho` along the
/// fundamental arc, heights accumulated by quadrature of the slope, height 0
/// at the natural anchor.
///
/// Curves returned by the extension operations are general polylines in the
/// `(rho, height)` plane (mirrored or periodically continued) and no longer
/// have monotone `rho`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledCurve {
    pub kind: CurveKind,
    pub params: SurfaceParams,
    pub samples: Vec<CurveSample>,
    pub left_behavior: EndBehavior,
    pub right_behavior: EndBehavior,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first_rho(&self) -> Option<f64> {
        self.samples.first().map(|s| s.rho)
    }

    pub fn last_rho(&self) -> Option<f64> {
        self.samples.last().map(|s| s.rho)
    }

    /// Height by linear interpolation between samples. `None` outside the
    /// sampled range. Assumes monotone `rho` (fundamental arcs).
    pub fn height_at(&self, rho: f64) -> Option<f64> {
        let first = self.samples.first()?;
        let last = self.samples.last()?;
        if rho < first.rho || rho > last.rho {
            return None;
        }
        let idx = self
            .samples
            .partition_point(|s| s.rho < rho)
            .min(self.samples.len() - 1)
            .max(1);
        let (a, b) = (&self.samples[idx - 1], &self.samples[idx]);
        if b.rho == a.rho {
            return Some(a.height);
        }
        let w = (rho - a.rho) / (b.rho - a.rho);
        Some(a.height + w * (b.height - a.height))
    }
}
