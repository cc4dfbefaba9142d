//! Independent correctness oracles for sampled generating curves.
//!
//! The flux check rebuilds the conserved quantity of the first integral from
//! the curve's geometric data and compares it against the flux constant at
//! every sample; the mean-curvature check differentiates the bracket of the
//! CMC equation by finite differences and compares it to the source term.
//! Neither reuses the quadrature path that produced the curve, so a curve
//! that fools both at once has to actually solve the equation.

use crate::curve::{CurveKind, EndBehavior, SampledCurve};
use crate::hypfun::{eval_moment, MomentKind};
use crate::params::SurfaceParams;
use crate::rotation::{self, GrowthLaw, ProfileKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for flux constancy.
pub const FLUX_TOLERANCE: f64 = 1e-8;
/// Default tolerance for the mean-curvature residual.
pub const MEAN_CURVATURE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("check needs at least {needed} samples, curve has {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("check needs the curve sampled to rho >= {needed}, got {got}")]
    InsufficientRange { needed: f64, got: f64 },
    #[error("check is not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("profiles do not share a domain at t = {t}")]
    OutsideDomain { t: f64 },
    #[error("rho = {rho} is outside the barrier's sampled range")]
    OutOfRange { rho: f64 },
    #[error("barrier must be a rotation graph with d = 0")]
    BadBarrier,
}

/// One residual with the location it was measured at.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResidualSample {
    pub at: f64,
    pub residual: f64,
}

/// Outcome of a verification check. `passed` holds exactly when the maximal
/// residual is within tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub details: Vec<ResidualSample>,
}

impl VerificationReport {
    fn from_details(name: &str, tolerance: f64, details: Vec<ResidualSample>) -> Self {
        let max_residual = details
            .iter()
            .map(|r| r.residual)
            .fold(f64::NEG_INFINITY, f64::max);
        let max_residual = if details.is_empty() {
            0.0
        } else {
            max_residual
        };
        Self {
            check_name: name.to_string(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            details,
        }
    }

    /// Single-line summary, suitable for log-style output.
    pub fn summary_line(&self) -> String {
        format!(
            "{}: max_residual={:.3e} tolerance={:.1e} {}",
            self.check_name,
            self.max_residual,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }

    /// Line-oriented text form: the summary followed by one indented line
    /// per recorded residual.
    pub fn to_text(&self) -> String {
        let mut out = self.summary_line();
        for r in &self.details {
            out.push_str(&format!("\n  at={:.6} residual={:.3e}", r.at, r.residual));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check_name": self.check_name,
            "residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        })
    }
}

fn weight_and_moment(curve: &SampledCurve, rho: f64) -> (f64, f64) {
    let m = curve.params.n - 1;
    match curve.kind {
        CurveKind::Rotation => (
            rho.sinh().powi(m as i32),
            eval_moment(MomentKind::Sinh, m, rho),
        ),
        CurveKind::Translation => (
            rho.cosh().powi(m as i32),
            eval_moment(MomentKind::Cosh, m, rho),
        ),
    }
}

/// Slope mapped to the sine of the inclination angle, finite even at
/// vertical tangents.
fn inclination(slope: f64) -> f64 {
    if slope.is_infinite() {
        slope.signum()
    } else {
        slope / (1.0 + slope * slope).sqrt()
    }
}

/// Flux constancy along the curve.
///
/// The conserved quantity `weight * slope/sqrt(1+slope^2) - nH * moment`
/// must equal the flux constant `d` at every sample; `weight`/`moment` are
/// `sinh^(n-1)`/its integral for rotation curves and the `cosh` pair for
/// translation curves. Reported residual is the largest `|F - d|`.
pub fn flux_residual(curve: &SampledCurve) -> Result<VerificationReport, VerifyError> {
    if curve.samples.is_empty() {
        return Err(VerifyError::InsufficientSamples { needed: 1, got: 0 });
    }
    let nh = curve.params.flux_coefficient();
    let details = curve
        .samples
        .iter()
        .map(|s| {
            let (w, m) = weight_and_moment(curve, s.rho);
            let f = w * inclination(s.slope) - nh * m;
            ResidualSample {
                at: s.rho,
                residual: (f - curve.params.d).abs(),
            }
        })
        .collect();
    Ok(VerificationReport::from_details(
        "flux",
        FLUX_TOLERANCE,
        details,
    ))
}

/// Residual of the CMC equation itself.
///
/// Differentiates `weight * slope/sqrt(1+slope^2)` with a centered 3-point
/// stencil on the (possibly non-uniform) grid and compares against
/// `nH * weight`; endpoints are skipped, as are stencils leaning on a
/// vertical-tangent endpoint (its recorded slope is the idealized `+-inf`,
/// not measured data). Residuals are relative,
/// `|difference| / (1 + |nH * weight|)`.
pub fn mean_curvature_residual(curve: &SampledCurve) -> Result<VerificationReport, VerifyError> {
    let n = curve.samples.len();
    if n < 5 {
        return Err(VerifyError::InsufficientSamples { needed: 5, got: n });
    }
    let nh = curve.params.flux_coefficient();
    let bracket: Vec<f64> = curve
        .samples
        .iter()
        .map(|s| {
            let (w, _) = weight_and_moment(curve, s.rho);
            w * inclination(s.slope)
        })
        .collect();
    let first = if curve.left_behavior == EndBehavior::VerticalTangent {
        2
    } else {
        1
    };
    let last = if curve.right_behavior == EndBehavior::VerticalTangent {
        n - 2
    } else {
        n - 1
    };
    if first >= last {
        return Err(VerifyError::InsufficientSamples { needed: 5, got: n });
    }
    let mut details = Vec::with_capacity(last - first);
    for i in first..last {
        let (x0, x1, x2) = (
            curve.samples[i - 1].rho,
            curve.samples[i].rho,
            curve.samples[i + 1].rho,
        );
        let (f0, f1, f2) = (bracket[i - 1], bracket[i], bracket[i + 1]);
        let hl = x1 - x0;
        let hr = x2 - x1;
        let derivative =
            (hl * hl * f2 - hr * hr * f0 + (hr * hr - hl * hl) * f1) / (hl * hr * (hl + hr));
        let (w, _) = weight_and_moment(curve, x1);
        let target = nh * w;
        details.push(ResidualSample {
            at: x1,
            residual: (derivative - target).abs() / (1.0 + target.abs()),
        });
    }
    Ok(VerificationReport::from_details(
        "mean_curvature",
        MEAN_CURVATURE_TOLERANCE,
        details,
    ))
}

/// Pointwise monotonicity of the rotation slope integrand in `H`.
///
/// For each consecutive pair of the (strictly increasing) `h_values` and
/// each grid point, the integrand with the larger `H` must be strictly
/// larger. The residual is the worst violation (negative when all ordered).
pub fn slope_monotone_in_h(
    n: u32,
    d: f64,
    t_grid: &[f64],
    h_values: &[f64],
) -> Result<VerificationReport, VerifyError> {
    if h_values.len() < 2 {
        return Err(VerifyError::NotApplicable(
            "need at least two mean curvatures",
        ));
    }
    if h_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(VerifyError::NotApplicable(
            "mean curvatures must increase strictly",
        ));
    }
    let mut details = Vec::new();
    for pair in h_values.windows(2) {
        let lo = SurfaceParams::new(n, pair[0], d)
            .map_err(|_| VerifyError::NotApplicable("bad params"))?;
        let hi = SurfaceParams::new(n, pair[1], d)
            .map_err(|_| VerifyError::NotApplicable("bad params"))?;
        for &t in t_grid {
            let q_lo = rotation::eval_profile(&lo, ProfileKind::Slope, t)
                .map_err(|_| VerifyError::OutsideDomain { t })?;
            let q_hi = rotation::eval_profile(&hi, ProfileKind::Slope, t)
                .map_err(|_| VerifyError::OutsideDomain { t })?;
            details.push(ResidualSample {
                at: t,
                residual: q_lo - q_hi,
            });
        }
    }
    let mut report = VerificationReport::from_details("slope_monotone_in_h", 0.0, details);
    // Strict ordering: a tie counts as a violation.
    report.passed = report.max_residual < 0.0;
    Ok(report)
}

/// Strict convexity of the height profile: the 3-point second difference on
/// the non-uniform grid must be positive at every interior node. The
/// residual is the worst `-second_difference`.
pub fn convexity_check(curve: &SampledCurve) -> Result<VerificationReport, VerifyError> {
    let n = curve.samples.len();
    if n < 5 {
        return Err(VerifyError::InsufficientSamples { needed: 5, got: n });
    }
    let mut details = Vec::with_capacity(n - 2);
    for w in curve.samples.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let hl = b.rho - a.rho;
        let hr = c.rho - b.rho;
        let dd =
            2.0 * (hl * c.height - (hl + hr) * b.height + hr * a.height) / (hl * hr * (hl + hr));
        details.push(ResidualSample {
            at: b.rho,
            residual: -dd,
        });
    }
    let mut report = VerificationReport::from_details("convexity", 0.0, details);
    report.passed = report.max_residual < 0.0;
    Ok(report)
}

/// Check a sampled curve against its predicted growth law.
///
/// * `Linear`: `|height/rho - slope|` at the last sample (needs rho >= 30);
/// * `Exponential`: `|height/(prefactor e^(rate rho)) - 1|` at the last
///   sample (needs rho >= 30);
/// * `ExponentialOverSqrt`: `|slope/(prefactor e^rho/sqrt(rho)) - 1|` at the
///   last sample (needs rho >= 20);
/// * `ExponentialEmpirical`: least-squares slope of `ln height` over the
///   windows `[20, 25]` and `[25, 30]`; the residual is their difference
///   and both rates must be positive (needs rho >= 30). The fitted rates
///   are reported in the details.
/// * `Bounded`: nothing to measure; passes trivially.
pub fn asymptote_check(
    curve: &SampledCurve,
    law: &GrowthLaw,
) -> Result<VerificationReport, VerifyError> {
    let last = curve
        .samples
        .last()
        .ok_or(VerifyError::InsufficientSamples { needed: 2, got: 0 })?;
    let reach = |needed: f64| -> Result<(), VerifyError> {
        if last.rho < needed {
            Err(VerifyError::InsufficientRange {
                needed,
                got: last.rho,
            })
        } else {
            Ok(())
        }
    };
    match law {
        GrowthLaw::Linear { slope } => {
            reach(30.0)?;
            let details = vec![ResidualSample {
                at: last.rho,
                residual: (last.height / last.rho - slope).abs(),
            }];
            Ok(VerificationReport::from_details(
                "asymptote_linear",
                1e-2,
                details,
            ))
        }
        GrowthLaw::Exponential { prefactor, rate } => {
            reach(30.0)?;
            let predicted = prefactor * (rate * last.rho).exp();
            let details = vec![ResidualSample {
                at: last.rho,
                residual: (last.height / predicted - 1.0).abs(),
            }];
            Ok(VerificationReport::from_details(
                "asymptote_exponential",
                1e-2,
                details,
            ))
        }
        GrowthLaw::ExponentialOverSqrt { prefactor } => {
            reach(20.0)?;
            let predicted = prefactor * last.rho.exp() / last.rho.sqrt();
            let slope = if last.slope.is_finite() {
                last.slope
            } else {
                return Err(VerifyError::NotApplicable(
                    "unbounded slope at the last sample",
                ));
            };
            let details = vec![ResidualSample {
                at: last.rho,
                residual: (slope / predicted - 1.0).abs(),
            }];
            Ok(VerificationReport::from_details(
                "asymptote_exp_over_sqrt",
                3e-2,
                details,
            ))
        }
        GrowthLaw::ExponentialEmpirical => {
            reach(30.0)?;
            let rate_a = log_slope(curve, 20.0, 25.0)?;
            let rate_b = log_slope(curve, 25.0, 30.0)?;
            let mut report = VerificationReport::from_details(
                "asymptote_empirical_rate",
                1e-2,
                vec![
                    ResidualSample {
                        at: 22.5,
                        residual: rate_a,
                    },
                    ResidualSample {
                        at: 27.5,
                        residual: rate_b,
                    },
                ],
            );
            report.max_residual = (rate_a - rate_b).abs();
            report.passed = report.max_residual <= report.tolerance && rate_a > 0.0 && rate_b > 0.0;
            Ok(report)
        }
        GrowthLaw::Bounded => Ok(VerificationReport::from_details(
            "asymptote_bounded",
            0.0,
            Vec::new(),
        )),
    }
}

/// Least-squares slope of `ln height` against `rho` over a sample window.
fn log_slope(curve: &SampledCurve, from: f64, to: f64) -> Result<f64, VerifyError> {
    let points: Vec<(f64, f64)> = curve
        .samples
        .iter()
        .filter(|s| s.rho >= from && s.rho <= to && s.height > 0.0)
        .map(|s| (s.rho, s.height.ln()))
        .collect();
    if points.len() < 8 {
        return Err(VerifyError::InsufficientSamples {
            needed: 8,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Whether `point = (rho, height)` lies strictly in the mean-convex side of
/// a vertically translated entire-graph barrier: above the graph, heights
/// compared against linear interpolation of the barrier samples. Points on
/// the barrier itself do not count.
pub fn in_mean_convex_side(
    point: (f64, f64),
    barrier: &SampledCurve,
    vertical_offset: f64,
) -> Result<bool, VerifyError> {
    if barrier.kind != CurveKind::Rotation || barrier.params.d != 0.0 {
        return Err(VerifyError::BadBarrier);
    }
    let (rho, height) = point;
    let barrier_height = barrier
        .height_at(rho.abs())
        .ok_or(VerifyError::OutOfRange { rho })?;
    Ok(height > barrier_height + vertical_offset)
}

/// Add a sinusoidal ripple to a curve, heights and slopes consistently
/// (`height += a sin(rho)`, `slope += a cos(rho)`): a C^1 perturbation that
/// no longer solves the CMC equation. Used to calibrate detector
/// sensitivity of the residual checks.
pub fn inject_height_ripple(curve: &SampledCurve, amplitude: f64) -> SampledCurve {
    let mut ripple = curve.clone();
    for s in &mut ripple.samples {
        s.height += amplitude * s.rho.sin();
        if s.slope.is_finite() {
            s.slope += amplitude * s.rho.cos();
        }
    }
    ripple
}
