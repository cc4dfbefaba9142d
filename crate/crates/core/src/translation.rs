//! Translation hypersurfaces invariant under hyperbolic translations along a
//! totally geodesic hyperplane.
//!
//! The generating curve `(rho, mu(rho))` satisfies the first integral
//!
//! ```text
//! cosh^(n-1)(rho) * mu'(rho) / sqrt(1 + mu'(rho)^2) = nH*C_(n-1)(rho) + d
//! ```
//!
//! with `C_(n-1)` the moment integral of `cosh^(n-1)`. The slope is
//! `flux / sqrt(diff * sum)` for `diff = cosh^(n-1) - flux` and
//! `sum = cosh^(n-1) + flux`. The classified picture lives at the critical
//! value `H = (n-1)/n` for `n >= 3` (compact convex generator, immersed
//! variants, or no solution at all depending on `d`), plus one subcritical
//! construction: choosing `d` so that the diff-profile has a double zero at
//! its trough produces a complete graph over the exterior of an equidistant
//! hypersurface whose height dives to `-inf` at the boundary.

use crate::curve::{CurveKind, CurveSample, EndBehavior, GridSpec, SampledCurve};
use crate::hypfun::{eval_moment, MomentKind};
use crate::numerics::Direction;
use crate::numerics::{self, integrate_singular, NumericsError, SingularSpec};
use crate::params::{Regime, SurfaceParams};
use crate::rotation::{boundary_between, build_grid, locate_boundary, locate_zero, search_span};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TranslationError {
    #[error("H = {h} is not in the required regime for n = {n}")]
    RegimeMismatch { n: u32, h: f64 },
    #[error("profile is undefined at t = {t}: radicand is nonpositive")]
    OutsideDomain { t: f64 },
    #[error("class {0:?} has no curve to sample")]
    NotSampleable(TranslationClass),
    #[error("rho_max is required to sample an unbounded curve")]
    MissingRhoMax,
    #[error("rho_max {rho_max} must exceed {min} for this curve")]
    RhoMaxTooSmall { rho_max: f64, min: f64 },
    #[error("grid needs at least 16 samples, got {0}")]
    GridTooCoarse(usize),
    #[error("curvatures are defined for translation curves only")]
    KindMismatch,
    #[error("slope is unbounded at sample {index}; curvature undefined there")]
    VerticalPoint { index: usize },
    #[error("sample index {0} out of range")]
    BadIndex(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// The three profile functions of the translation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TProfileKind {
    /// `cosh^(n-1)(t) - nH*C_(n-1)(t) - d`.
    Diff,
    /// `cosh^(n-1)(t) + nH*C_(n-1)(t) + d`.
    Sum,
    /// Slope of the generating curve, `flux / sqrt(diff * sum)`.
    Slope,
}

/// Qualitative type of a translation family member. The full classification
/// is at the critical value with `n >= 3`; elsewhere only the complete-graph
/// construction is pinned down and the rest stays unclassified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TranslationClass {
    /// Critical, `d = 0`: complete embedded hypersurface generated by a
    /// compact, simple, strictly convex curve.
    #[serde(rename = "EmbeddedConvex_T0")]
    EmbeddedConvex,
    /// Critical, `0 < d < 1`: like the convex one but with a corner where
    /// the curve meets its mirror image.
    #[serde(rename = "EmbeddedNonsmooth")]
    EmbeddedNonsmooth,
    /// Critical, `d = -1`: immersed, with a vertical tangent at the axis.
    #[serde(rename = "Immersed_Tm1")]
    ImmersedTangent,
    /// Critical, `d < -1` or `-1 < d < 0`: immersed with self-intersections.
    #[serde(rename = "ImmersedSelfInt")]
    ImmersedSelfInt,
    /// Subcritical with `d` chosen so the diff-profile has a double zero:
    /// complete graph over the non-mean-convex side of an equidistant
    /// hypersurface, taking infinite boundary values there.
    #[serde(rename = "CompleteGraph_T2")]
    CompleteGraph,
    /// `d >= 1` with the diff-profile nonpositive everywhere: the first
    /// integral admits no curve.
    NoSolution,
    /// Every other `(H, d)` combination; breakpoints are still computed on a
    /// best-effort basis so parameter sweeps have something to report.
    Unclassified,
}

/// Breakpoints of the translation family for one parameter triple.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TranslationBreakpoints {
    pub regime: Regime,
    /// Location of the minimum of the diff-profile (subcritical only);
    /// satisfies `tanh(trough) = nH/(n-1)`.
    pub trough: Option<f64>,
    /// Flux constant for which the diff-profile vanishes exactly at the
    /// trough (subcritical only); the complete-graph choice of `d`.
    pub graph_flux: Option<f64>,
    /// Left end of the fundamental arc: the zero of the sum-profile when
    /// `d < -1`, otherwise 0; for the complete graph, the (excluded)
    /// boundary radius where the height dives to `-inf`.
    pub left_end: Option<f64>,
    /// Right end: the zero of the diff-profile when it exists.
    pub right_end: Option<f64>,
    /// Radius where the flux term crosses zero (present iff `d < 0`).
    pub slope_zero: Option<f64>,
    pub no_solution: bool,
}

impl TranslationBreakpoints {
    fn bare(regime: Regime) -> Self {
        Self {
            regime,
            trough: None,
            graph_flux: None,
            left_end: None,
            right_end: None,
            slope_zero: None,
            no_solution: false,
        }
    }
}

/// A classified translation family member.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslationSurface {
    pub params: SurfaceParams,
    pub class: TranslationClass,
    pub breakpoints: TranslationBreakpoints,
}

/// Principal curvatures at one sample of a translation curve, with respect
/// to the upward normal: the curve direction in the vertical plane and the
/// umbilic equidistant directions.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub at_rho: f64,
    /// Curvature of the profile curve, `mu'' (1 + mu'^2)^(-3/2)`.
    pub k_profile: f64,
    /// Curvature in the equidistant directions,
    /// `mu' (1 + mu'^2)^(-1/2) tanh(rho)`.
    pub k_equidistant: f64,
}

fn weight(n: u32, t: f64) -> f64 {
    t.cosh().powi(n as i32 - 1)
}

/// `nH * C_(n-1)(t) + d`; the slope of the generating curve has its sign.
pub fn flux_term(params: &SurfaceParams, t: f64) -> f64 {
    params.flux_coefficient() * eval_moment(MomentKind::Cosh, params.n - 1, t) + params.d
}

/// `cosh^(n-1) - flux` through the moment recurrence:
/// `cosh^(n-2)*(cosh - k*sinh) - k*(n-2)*C_(n-3) - d` with `k = nH/(n-1)`,
/// which avoids the total cancellation of the naive difference at large `t`
/// in the critical regime.
fn diff_profile(params: &SurfaceParams, t: f64) -> f64 {
    let k = params.slope_parameter();
    // cosh - k*sinh without forming the near-equal pair.
    let combo = 0.5 * ((1.0 - k) * t.exp() + (1.0 + k) * (-t).exp());
    if params.n == 2 {
        combo - params.d
    } else {
        t.cosh().powi(params.n as i32 - 2) * combo
            - k * f64::from(params.n - 2) * eval_moment(MomentKind::Cosh, params.n - 3, t)
            - params.d
    }
}

fn sum_profile(params: &SurfaceParams, t: f64) -> f64 {
    weight(params.n, t) + flux_term(params, t)
}

fn slope_value(params: &SurfaceParams, t: f64) -> f64 {
    let flux = flux_term(params, t);
    flux / (diff_profile(params, t) * sum_profile(params, t)).sqrt()
}

/// Evaluate one of the profile functions at `t >= 0`.
pub fn eval_profile(
    params: &SurfaceParams,
    which: TProfileKind,
    t: f64,
) -> Result<f64, TranslationError> {
    match which {
        TProfileKind::Diff => Ok(diff_profile(params, t)),
        TProfileKind::Sum => Ok(sum_profile(params, t)),
        TProfileKind::Slope => {
            let radicand = diff_profile(params, t) * sum_profile(params, t);
            if radicand <= 0.0 {
                return Err(TranslationError::OutsideDomain { t });
            }
            Ok(flux_term(params, t) / radicand.sqrt())
        }
    }
}

/// Radius of the minimum of the diff-profile in the subcritical regime: the
/// solution of `tanh(t) = nH/(n-1)`.
pub fn trough_radius(n: u32, h: f64) -> Result<f64, TranslationError> {
    let k = f64::from(n) * h / f64::from(n - 1);
    if !(0.0 < k && k < 1.0) {
        return Err(TranslationError::RegimeMismatch { n, h });
    }
    Ok(k.atanh())
}

/// The flux constant that makes the diff-profile vanish exactly at its
/// trough: `cosh^(n-1)(trough) - nH*C_(n-1)(trough)`. With this `d` the
/// diff-profile is positive on both sides of the trough and the curve is a
/// complete graph over the exterior.
pub fn graph_flux_constant(n: u32, h: f64) -> Result<f64, TranslationError> {
    let trough = trough_radius(n, h)?;
    Ok(weight(n, trough) - f64::from(n) * h * eval_moment(MomentKind::Cosh, n - 1, trough))
}

/// Classify a parameter triple of the translation family.
pub fn classify(params: &SurfaceParams) -> TranslationSurface {
    let regime = params.regime();
    let span = search_span(params.n);
    let mut bp = TranslationBreakpoints::bare(regime);
    let d = params.d;

    let diff = |t: f64| diff_profile(params, t);
    let sum = |t: f64| sum_profile(params, t);
    let flux = |t: f64| flux_term(params, t);

    let done = |class: TranslationClass, bp: TranslationBreakpoints| TranslationSurface {
        params: *params,
        class,
        breakpoints: bp,
    };

    match regime {
        Regime::Critical | Regime::Supercritical => {
            // The diff-profile starts at 1 - d and strictly decreases, so
            // d >= 1 leaves no interval with a positive radicand.
            if d >= 1.0 {
                bp.no_solution = true;
                return done(TranslationClass::NoSolution, bp);
            }
            if d < -1.0 {
                bp.left_end = locate_boundary(sum, 0.0, span, Direction::Forward);
            } else {
                bp.left_end = Some(0.0);
            }
            if d < 0.0 {
                bp.slope_zero = locate_zero(flux, 0.0, span);
            }
            // For n = 2 at the critical value the diff-profile tends to -d,
            // so the right end exists only for d > 0; otherwise expansion
            // simply reports no sign change.
            bp.right_end = locate_boundary(diff, 0.0, span, Direction::Backward);

            if regime == Regime::Supercritical || params.n == 2 {
                return done(TranslationClass::Unclassified, bp);
            }
            let class = if d == 0.0 {
                TranslationClass::EmbeddedConvex
            } else if d > 0.0 {
                TranslationClass::EmbeddedNonsmooth
            } else if d == -1.0 {
                TranslationClass::ImmersedTangent
            } else {
                TranslationClass::ImmersedSelfInt
            };
            done(class, bp)
        }
        Regime::Subcritical => {
            let trough = trough_radius(params.n, params.h).expect("subcritical regime");
            let graph_flux = graph_flux_constant(params.n, params.h).expect("subcritical regime");
            bp.trough = Some(trough);
            bp.graph_flux = Some(graph_flux);
            if d == graph_flux {
                // Double zero of the diff-profile at the trough: the height
                // integral diverges there, and the trough radius is the
                // excluded boundary of the graph.
                bp.left_end = Some(trough);
                return done(TranslationClass::CompleteGraph, bp);
            }
            if d < -1.0 {
                bp.left_end = locate_boundary(sum, 0.0, span, Direction::Forward);
            } else {
                bp.left_end = Some(0.0);
            }
            if d < 0.0 {
                bp.slope_zero = locate_zero(flux, 0.0, span);
            }
            if d > graph_flux {
                // The diff-profile dips below zero around the trough; record
                // the first crossing (for d >= 1 the only zero lies beyond
                // the trough).
                bp.right_end = if d < 1.0 {
                    boundary_between(diff, 0.0, trough, Direction::Backward)
                } else {
                    locate_zero(diff, trough, span)
                };
            }
            done(TranslationClass::Unclassified, bp)
        }
    }
}

impl TranslationSurface {
    /// Sample the fundamental arc of the generating curve.
    ///
    /// For the classified critical cases the arc runs from the left end
    /// (axis plane, or the sum-profile zero when `d < -1`) to the
    /// diff-profile zero, with height 0 at the left end. The complete graph
    /// delegates to [`sample_complete_graph`].
    pub fn sample(&self, grid: &GridSpec) -> Result<SampledCurve, TranslationError> {
        match self.class {
            TranslationClass::NoSolution | TranslationClass::Unclassified => {
                return Err(TranslationError::NotSampleable(self.class))
            }
            TranslationClass::CompleteGraph => {
                let rho_max = grid.rho_max.ok_or(TranslationError::MissingRhoMax)?;
                return sample_complete_graph(self.params.n, self.params.h, rho_max);
            }
            _ => {}
        }
        if grid.samples < 16 {
            return Err(TranslationError::GridTooCoarse(grid.samples));
        }
        let d = self.params.d;
        let lo = self
            .breakpoints
            .left_end
            .expect("critical cases have a left end");
        let natural = self
            .breakpoints
            .right_end
            .expect("critical cases n >= 3 always have a right end");
        let (hi, right_singular) = match grid.rho_max {
            Some(m) if m < natural => (m, false),
            _ => (natural, true),
        };
        if hi <= lo {
            return Err(TranslationError::RhoMaxTooSmall {
                rho_max: hi,
                min: lo,
            });
        }
        // Left end is singular when it is a profile zero: either the
        // sum-profile zero (d < -1) or the axis with d = -1 (sum vanishes
        // exactly there).
        let left_singular = d <= -1.0;
        let nodes = build_grid(lo, hi, grid.samples, left_singular, right_singular);

        let params = self.params;
        let integrand = |t: f64| slope_value(&params, t);
        let mut samples = Vec::with_capacity(nodes.len());
        let mut height = 0.0;
        for (i, &t) in nodes.iter().enumerate() {
            if i > 0 {
                let spec = SingularSpec {
                    left_singular: left_singular && i == 1,
                    right_singular: right_singular && i == nodes.len() - 1,
                };
                height += integrate_singular(integrand, nodes[i - 1], t, spec, numerics::QUAD_TOL)?;
            }
            let slope = if i == 0 && left_singular {
                f64::NEG_INFINITY // flux < 0 wherever the sum-profile vanishes
            } else if i == nodes.len() - 1 && right_singular {
                f64::INFINITY
            } else {
                slope_value(&params, t)
            };
            samples.push(CurveSample {
                rho: t,
                height,
                slope,
            });
        }

        Ok(SampledCurve {
            kind: CurveKind::Translation,
            params,
            samples,
            left_behavior: if left_singular {
                EndBehavior::VerticalTangent
            } else if d == 0.0 {
                EndBehavior::HorizontalTangent
            } else {
                EndBehavior::Oblique
            },
            right_behavior: if right_singular {
                EndBehavior::VerticalTangent
            } else {
                EndBehavior::Unbounded
            },
        })
    }
}

/// Sample the complete non-entire graph of the subcritical regime out to
/// `rho_max`.
///
/// With `d` equal to [`graph_flux_constant`] the diff-profile has a double
/// zero at the trough radius, so the slope behaves like `1/(t - trough)`
/// there: this is a non-integrable singularity, and the height genuinely
/// diverges to `-inf` at the boundary. The curve is therefore anchored at
/// `trough + 1` and sampled outward in both directions; toward the boundary
/// the nodes shrink geometrically (eight per decade down to `1e-5`), through
/// panels of smooth quadrature, and the divergence shows up as monotone
/// growth of the per-decade height drops.
pub fn sample_complete_graph(
    n: u32,
    h: f64,
    rho_max: f64,
) -> Result<SampledCurve, TranslationError> {
    let trough = trough_radius(n, h)?;
    let d = graph_flux_constant(n, h)?;
    if rho_max <= trough + 1.0 {
        return Err(TranslationError::RhoMaxTooSmall {
            rho_max,
            min: trough + 1.0,
        });
    }
    let params = SurfaceParams::new(n, h, d).expect("validated by trough_radius");
    let integrand = |t: f64| slope_value(&params, t);

    // Offsets 10^0 down to 10^-5, eight nodes per decade, then the uniform
    // outward part from the anchor at trough + 1.
    let mut offsets = Vec::new();
    let mut j = 0;
    loop {
        let delta = 10f64.powf(-(j as f64) / 8.0);
        if delta < 1e-5 {
            break;
        }
        offsets.push(delta);
        j += 1;
    }
    let inner: Vec<f64> = offsets.iter().rev().map(|delta| trough + delta).collect();
    let anchor_index = inner.len() - 1;

    let outer_count = 360;
    let anchor = trough + 1.0;
    let mut nodes = inner;
    for i in 1..=outer_count {
        nodes.push(anchor + (rho_max - anchor) * i as f64 / outer_count as f64);
    }

    // Heights: 0 at the anchor, cumulative sums outward in each direction.
    // The inward panels evaluate the slope ever closer to the double zero,
    // so they use the saturating composite rule: the divergence is carried
    // by the panel sums themselves, not by any single converged integral.
    let mut heights = vec![0.0; nodes.len()];
    for i in (0..anchor_index).rev() {
        let panel =
            numerics::integrate_saturating(&integrand, nodes[i], nodes[i + 1], numerics::QUAD_TOL)?;
        heights[i] = heights[i + 1] - panel;
    }
    for i in anchor_index + 1..nodes.len() {
        let panel = integrate_singular(
            integrand,
            nodes[i - 1],
            nodes[i],
            SingularSpec::regular(),
            numerics::QUAD_TOL,
        )?;
        heights[i] = heights[i - 1] + panel;
    }

    let samples = nodes
        .iter()
        .zip(heights.iter())
        .map(|(&rho, &height)| CurveSample {
            rho,
            height,
            slope: slope_value(&params, rho),
        })
        .collect();

    Ok(SampledCurve {
        kind: CurveKind::Translation,
        params,
        samples,
        left_behavior: EndBehavior::Unbounded,
        right_behavior: EndBehavior::Unbounded,
    })
}

/// Principal curvatures at sample `index`, using the second derivative from
/// the differentiated first integral
/// (`mu'' = W^3 nH - (n-1) tanh(rho) mu' W^2`, `W^2 = 1 + mu'^2`)
/// rather than finite differences.
pub fn principal_curvatures(
    curve: &SampledCurve,
    index: usize,
) -> Result<CurvatureSample, TranslationError> {
    if curve.kind != CurveKind::Translation {
        return Err(TranslationError::KindMismatch);
    }
    let sample = curve
        .samples
        .get(index)
        .copied()
        .ok_or(TranslationError::BadIndex(index))?;
    if !sample.slope.is_finite() {
        return Err(TranslationError::VerticalPoint { index });
    }
    let nh = curve.params.flux_coefficient();
    let n1 = f64::from(curve.params.n - 1);
    let w2 = 1.0 + sample.slope * sample.slope;
    let w = w2.sqrt();
    let mu_dd = w2 * w * nh - n1 * sample.rho.tanh() * sample.slope * w2;
    Ok(CurvatureSample {
        at_rho: sample.rho,
        k_profile: mu_dd / (w2 * w),
        k_equidistant: sample.slope / w * sample.rho.tanh(),
    })
}
