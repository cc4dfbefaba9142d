//! Rotation hypersurfaces about a vertical axis.
//!
//! The generating curve `(rho, lambda(rho))` satisfies the first integral
//!
//! ```text
//! sinh^(n-1)(rho) * lambda'(rho) / sqrt(1 + lambda'(rho)^2) = nH*S_(n-1)(rho) + d
//! ```
//!
//! where `S_(n-1)` is the moment integral of `sinh^(n-1)`. Writing
//! `flux(t) = nH*S_(n-1)(t) + d`, the slope of the curve is
//! `flux / sqrt(minus * plus)` with `minus = sinh^(n-1) - flux` and
//! `plus = sinh^(n-1) + flux`; the curve exists exactly where the radicand
//! is positive, and the endpoints of that interval are simple zeros of
//! `minus` or `plus`, which is what makes the endpoint singularities
//! inverse-square-root and the height integral convergent there.
//!
//! The qualitative type of the surface is decided by the sign of
//! `H - (n-1)/n` and the sign of `d`; `classify` walks the corresponding
//! sign table, locates every breakpoint with a bracketing search, and the
//! resulting [`RotationSurface`] samples, extends, and describes its growth.

use crate::curve::{CurveKind, CurveSample, EndBehavior, GridSpec, SampledCurve};
use crate::hypfun::{eval_moment, MomentKind};
use crate::numerics::{
    self, expand_bracket, integrate_singular, refine_root, Bracket, Direction, NumericsError,
    SingularSpec,
};
use crate::params::{Regime, SurfaceParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RotationError {
    #[error("H = {h} is not in the required regime for n = {n}")]
    RegimeMismatch { n: u32, h: f64 },
    #[error("profile is undefined at t = {t}: radicand is nonpositive")]
    OutsideDomain { t: f64 },
    #[error("class {0:?} has no curve to sample")]
    NotSampleable(RotationClass),
    #[error("rho_max is required to sample an unbounded curve")]
    MissingRhoMax,
    #[error("rho_max {rho_max} does not exceed the left endpoint {left}")]
    RhoMaxTooSmall { rho_max: f64, left: f64 },
    #[error("grid needs at least 16 samples, got {0}")]
    GridTooCoarse(usize),
    #[error("endpoint behaviors do not match class {0:?}")]
    BehaviorMismatch(RotationClass),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// The three profile functions of the rotation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// `sinh^(n-1)(t) - nH*S_(n-1)(t) - d`; its zeros bound the domain where
    /// the slope diverges to `+inf`.
    Minus,
    /// `sinh^(n-1)(t) + nH*S_(n-1)(t) + d`; its zeros bound the domain where
    /// the slope diverges to `-inf`.
    Plus,
    /// The slope of the generating curve, `flux / sqrt(minus * plus)`.
    Slope,
}

/// Qualitative type of a rotation family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationClass {
    /// `d = 0`, `H <= (n-1)/n`: simply connected entire vertical graph,
    /// tangent to the slice at the axis.
    #[serde(rename = "EntireGraph_S")]
    EntireGraph,
    /// `d > 0`, `H <= (n-1)/n`: embedded bi-graph cylinder over the exterior
    /// of a ball.
    #[serde(rename = "Cylinder_C")]
    Cylinder,
    /// `d < 0`, `H <= (n-1)/n`: complete immersion with one
    /// self-intersection circle in the symmetry slice.
    #[serde(rename = "NodoidLike_D")]
    NodoidLike,
    /// `d = 0`, `H > (n-1)/n`: compact, diffeomorphic to a sphere.
    #[serde(rename = "Sphere_K")]
    Sphere,
    /// `0 < d < flux_limit`, `H > (n-1)/n`: embedded Delaunay-type periodic
    /// surface.
    #[serde(rename = "Unduloid_U")]
    Unduloid,
    /// `d < 0`, `H > (n-1)/n`: periodic with self-intersections.
    #[serde(rename = "Nodoid_N")]
    Nodoid,
    /// The first integral admits no curve (n = 2 critical with `d >= 1`).
    NoSolution,
    /// Outside the tabulated cases (supercritical with `d >= flux_limit`);
    /// breakpoints carry the computed evidence, nothing more is asserted.
    Unclassified,
}

/// Existence-interval endpoints and critical points for one parameter triple.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RotationBreakpoints {
    pub regime: Regime,
    /// Location of the maximum of the minus-profile (supercritical only);
    /// satisfies `coth(peak) = nH/(n-1)`.
    pub peak: Option<f64>,
    /// Value of the minus-profile at `peak` for this `d`.
    pub peak_value: Option<f64>,
    /// Largest flux constant admitting the tabulated supercritical families:
    /// the peak value at `d = 0`.
    pub flux_limit: Option<f64>,
    /// Left end of the fundamental arc (profile zero, or 0 when `d = 0`).
    pub left_end: Option<f64>,
    /// Right end when the existence interval is bounded.
    pub right_end: Option<f64>,
    /// Radius where the flux term crosses zero and the slope changes sign
    /// (present exactly when `d < 0`).
    pub slope_zero: Option<f64>,
}

impl RotationBreakpoints {
    fn bare(regime: Regime) -> Self {
        Self {
            regime,
            peak: None,
            peak_value: None,
            flux_limit: None,
            left_end: None,
            right_end: None,
            slope_zero: None,
        }
    }
}

/// A classified rotation family member: parameters, class tag, breakpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationSurface {
    pub params: SurfaceParams,
    pub class: RotationClass,
    pub breakpoints: RotationBreakpoints,
}

/// Asymptotic growth of the height function along the generating curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthLaw {
    /// Subcritical: `height ~ slope * rho` with
    /// `slope = k/sqrt(1-k^2)`, `k = nH/(n-1)`.
    Linear { slope: f64 },
    /// Critical, n = 2: `height ~ prefactor * e^(rate*rho)` with
    /// `prefactor = 1/sqrt(1-d)` and `rate = 1/2`.
    Exponential { prefactor: f64, rate: f64 },
    /// Critical, n = 3: the slope behaves like `prefactor * e^rho/sqrt(rho)`
    /// with `prefactor = 1/(2*sqrt(2))`; the height is its integral.
    ExponentialOverSqrt { prefactor: f64 },
    /// Critical, n >= 4: exponential with a rate left to empirical
    /// regression (no closed-form constants are available).
    ExponentialEmpirical,
    /// Supercritical: the curve is bounded, there is no growth to measure.
    Bounded,
}

fn weight(n: u32, t: f64) -> f64 {
    t.sinh().powi(n as i32 - 1)
}

/// `nH * S_(n-1)(t) + d`, the right-hand side of the first integral. The
/// slope of the generating curve has the sign of this quantity.
pub fn flux_term(params: &SurfaceParams, t: f64) -> f64 {
    params.flux_coefficient() * eval_moment(MomentKind::Sinh, params.n - 1, t) + params.d
}

/// `sinh^(n-1) - flux`, evaluated through the moment recurrence so the
/// exponentially large parts cancel in closed form:
/// `sinh^(n-2)*(sinh - k*cosh) + k*(n-2)*S_(n-3) - d` with `k = nH/(n-1)`.
/// The naive difference of `sinh^(n-1)` and `nH*S_(n-1)` loses every digit
/// at large `t` in the critical regime.
fn minus_profile(params: &SurfaceParams, t: f64) -> f64 {
    let k = params.slope_parameter();
    // sinh - k*cosh without forming the near-equal pair.
    let combo = 0.5 * ((1.0 - k) * t.exp() - (1.0 + k) * (-t).exp());
    if params.n == 2 {
        combo + k - params.d
    } else {
        t.sinh().powi(params.n as i32 - 2) * combo
            + k * f64::from(params.n - 2) * eval_moment(MomentKind::Sinh, params.n - 3, t)
            - params.d
    }
}

fn plus_profile(params: &SurfaceParams, t: f64) -> f64 {
    weight(params.n, t) + flux_term(params, t)
}

fn slope_value(params: &SurfaceParams, t: f64) -> f64 {
    let flux = flux_term(params, t);
    let radicand = minus_profile(params, t) * plus_profile(params, t);
    flux / radicand.sqrt()
}

/// Evaluate one of the profile functions at `t >= 0`.
pub fn eval_profile(
    params: &SurfaceParams,
    which: ProfileKind,
    t: f64,
) -> Result<f64, RotationError> {
    match which {
        ProfileKind::Minus => Ok(minus_profile(params, t)),
        ProfileKind::Plus => Ok(plus_profile(params, t)),
        ProfileKind::Slope => {
            let radicand = minus_profile(params, t) * plus_profile(params, t);
            if radicand <= 0.0 {
                return Err(RotationError::OutsideDomain { t });
            }
            Ok(flux_term(params, t) / radicand.sqrt())
        }
    }
}

/// Radius at which the minus-profile peaks in the supercritical regime: the
/// unique positive solution of `coth(t) = nH/(n-1)`.
pub fn peak_radius(n: u32, h: f64) -> Result<f64, RotationError> {
    let slope_param = f64::from(n) * h / f64::from(n - 1);
    if slope_param <= 1.0 {
        return Err(RotationError::RegimeMismatch { n, h });
    }
    Ok((1.0 / slope_param).atanh())
}

/// Span cap for bracket expansion, chosen so `sinh^(n-1)` stays finite.
pub(crate) fn search_span(n: u32) -> f64 {
    (600.0 / f64::from(n - 1)).min(60.0)
}

/// Zero by doubling expansion from `start` plus Brent refinement.
pub(crate) fn locate_zero<F: Fn(f64) -> f64>(f: F, start: f64, span: f64) -> Option<f64> {
    let bracket = expand_bracket(&f, start, Direction::Forward, span).ok()?;
    Some(refine_root(&f, bracket, numerics::ROOT_TOL))
}

/// A domain endpoint: the located zero nudged a few ulps into the positive
/// side of the profile, so the radicand stays positive on the whole closed
/// sampling interval and quadrature never lands on a negative radicand.
pub(crate) fn locate_boundary<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    span: f64,
    inward: Direction,
) -> Option<f64> {
    let root = locate_zero(&f, start, span)?;
    Some(nudge_inward(&f, root, inward))
}

pub(crate) fn boundary_between<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    inward: Direction,
) -> Option<f64> {
    let bracket = Bracket::from_interval(&f, lo, hi).ok()?;
    let root = refine_root(&f, bracket, numerics::ROOT_TOL);
    Some(nudge_inward(&f, root, inward))
}

/// Step `root` toward the interior until the profile is strictly positive.
/// The displacement is a few units in the last place; the sliver of arc it
/// hides is far below every tolerance in the crate. Displacement is capped
/// so a pathological objective cannot walk the breakpoint away (or past the
/// axis).
pub(crate) fn nudge_inward<F: Fn(f64) -> f64>(f: &F, root: f64, inward: Direction) -> f64 {
    let sign = match inward {
        Direction::Forward => 1.0,
        Direction::Backward => -1.0,
    };
    let cap = 1e-6 * root.abs().max(1.0);
    let mut r = root;
    let mut step = root.abs().max(1.0) * f64::EPSILON;
    for _ in 0..64 {
        if f(r) > 0.0 {
            return r;
        }
        let next = r + sign * step;
        if (next - root).abs() > cap || next < 0.0 {
            break;
        }
        r = next;
        step *= 2.0;
    }
    root
}

/// Classify a parameter triple into its family member, computing every
/// breakpoint of the sign table along the way.
pub fn classify(params: &SurfaceParams) -> RotationSurface {
    let regime = params.regime();
    let span = search_span(params.n);
    let mut bp = RotationBreakpoints::bare(regime);
    let d = params.d;

    let minus = |t: f64| minus_profile(params, t);
    let plus = |t: f64| plus_profile(params, t);
    let flux = |t: f64| flux_term(params, t);

    let class = match regime {
        Regime::Subcritical | Regime::Critical => {
            if d == 0.0 {
                bp.left_end = Some(0.0);
                RotationClass::EntireGraph
            } else if d > 0.0 {
                // n = 2 at the critical value: the minus-profile tends to
                // 1 - d, so a zero (and hence a curve) needs d < 1.
                if params.n == 2 && regime == Regime::Critical && d >= 1.0 {
                    return RotationSurface {
                        params: *params,
                        class: RotationClass::NoSolution,
                        breakpoints: bp,
                    };
                }
                match locate_boundary(minus, 0.0, span, Direction::Forward) {
                    Some(a) => {
                        bp.left_end = Some(a);
                        RotationClass::Cylinder
                    }
                    None => RotationClass::Unclassified,
                }
            } else {
                bp.left_end = locate_boundary(plus, 0.0, span, Direction::Forward);
                bp.slope_zero = locate_zero(flux, 0.0, span);
                if bp.left_end.is_some() {
                    RotationClass::NodoidLike
                } else {
                    RotationClass::Unclassified
                }
            }
        }
        Regime::Supercritical => {
            let peak = peak_radius(params.n, params.h).expect("supercritical regime");
            let peak_value = minus(peak);
            bp.peak = Some(peak);
            bp.peak_value = Some(peak_value);
            bp.flux_limit = Some(peak_value + d); // minus-profile at the peak for d = 0
            if d == 0.0 {
                bp.left_end = Some(0.0);
                bp.right_end = locate_boundary(minus, peak, span, Direction::Backward);
                RotationClass::Sphere
            } else if d > 0.0 {
                if peak_value <= 0.0 {
                    // d >= flux_limit: outside the tabulated families. The
                    // computed peak value is the evidence; do not guess.
                    RotationClass::Unclassified
                } else {
                    bp.left_end = boundary_between(minus, 0.0, peak, Direction::Forward);
                    bp.right_end = locate_boundary(minus, peak, span, Direction::Backward);
                    RotationClass::Unduloid
                }
            } else {
                bp.left_end = locate_boundary(plus, 0.0, span, Direction::Forward);
                bp.right_end = locate_boundary(minus, peak, span, Direction::Backward);
                bp.slope_zero = locate_zero(flux, 0.0, span);
                RotationClass::Nodoid
            }
        }
    };

    RotationSurface {
        params: *params,
        class,
        breakpoints: bp,
    }
}

impl RotationSurface {
    /// Asymptotic growth law of the height function, `None` when there is no
    /// curve to speak of.
    pub fn growth_law(&self) -> Option<GrowthLaw> {
        match self.class {
            RotationClass::NoSolution | RotationClass::Unclassified => None,
            RotationClass::Sphere | RotationClass::Unduloid | RotationClass::Nodoid => {
                Some(GrowthLaw::Bounded)
            }
            _ => match self.breakpoints.regime {
                Regime::Subcritical => {
                    let k = self.params.slope_parameter();
                    Some(GrowthLaw::Linear {
                        slope: k / (1.0 - k * k).sqrt(),
                    })
                }
                Regime::Critical => Some(match self.params.n {
                    2 => GrowthLaw::Exponential {
                        prefactor: 1.0 / (1.0 - self.params.d).sqrt(),
                        rate: 0.5,
                    },
                    3 => GrowthLaw::ExponentialOverSqrt {
                        prefactor: 1.0 / (2.0 * 2f64.sqrt()),
                    },
                    _ => GrowthLaw::ExponentialEmpirical,
                }),
                Regime::Supercritical => Some(GrowthLaw::Bounded),
            },
        }
    }

    /// Sample the fundamental arc of the generating curve.
    ///
    /// Heights come from singular-aware quadrature of the slope, anchored to
    /// 0 at the left end; slopes are the exact profile integrand at the
    /// nodes (`+-inf` at vertical-tangent endpoints). The grid is uniform in
    /// the folded variable `s` (`t = end +- s^2`) near singular ends and
    /// uniform in `t` elsewhere.
    pub fn sample(&self, grid: &GridSpec) -> Result<SampledCurve, RotationError> {
        match self.class {
            RotationClass::NoSolution | RotationClass::Unclassified => {
                return Err(RotationError::NotSampleable(self.class))
            }
            _ => {}
        }
        if grid.samples < 16 {
            return Err(RotationError::GridTooCoarse(grid.samples));
        }
        let bp = &self.breakpoints;
        let lo = bp.left_end.expect("sampleable class has a left end");
        // rho_max truncates the window; a bounded curve keeps its natural
        // right endpoint (and the singular treatment there) unless rho_max
        // cuts in earlier.
        let (hi, right_singular) = match (bp.right_end, grid.rho_max) {
            (Some(r), Some(m)) if m < r => (m, false),
            (Some(r), _) => (r, true),
            (None, Some(m)) => (m, false),
            (None, None) => return Err(RotationError::MissingRhoMax),
        };
        if hi <= lo {
            return Err(RotationError::RhoMaxTooSmall {
                rho_max: hi,
                left: lo,
            });
        }

        let d = self.params.d;
        let left_singular = d != 0.0;
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
            let slope = if i == 0 && d == 0.0 {
                0.0 // flux and weight both vanish at the axis; the limit is 0
            } else if (i == 0 && left_singular) || (i == nodes.len() - 1 && right_singular) {
                f64::INFINITY.copysign(flux_term(&params, t))
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
            kind: CurveKind::Rotation,
            params,
            samples,
            left_behavior: if d == 0.0 {
                EndBehavior::HorizontalTangent
            } else {
                EndBehavior::VerticalTangent
            },
            right_behavior: if right_singular {
                EndBehavior::VerticalTangent
            } else {
                EndBehavior::Unbounded
            },
        })
    }
}

/// Sampling grid over `[lo, hi]`: a quarter of the nodes per flagged end,
/// spaced uniformly in `s` with `t = end +- s^2` over an end zone of an
/// eighth of the span; uniform elsewhere. Matching the folded variable keeps
/// the vertical tangents resolved without exposing clustering knobs.
pub(crate) fn build_grid(
    lo: f64,
    hi: f64,
    samples: usize,
    left_singular: bool,
    right_singular: bool,
) -> Vec<f64> {
    let span = hi - lo;
    let mut nodes = Vec::with_capacity(samples);
    if !left_singular && !right_singular {
        for i in 0..samples {
            nodes.push(lo + span * i as f64 / (samples - 1) as f64);
        }
        return nodes;
    }
    let zone = span / 8.0;
    let zone_nodes = samples / 4;
    let mid_lo = if left_singular { lo + zone } else { lo };
    let mid_hi = if right_singular { hi - zone } else { hi };
    let mid_nodes = samples
        - if left_singular { zone_nodes } else { 0 }
        - if right_singular { zone_nodes } else { 0 };

    if left_singular {
        let s_max = zone.sqrt();
        for i in 0..zone_nodes {
            let s = s_max * i as f64 / zone_nodes as f64;
            nodes.push(lo + s * s);
        }
    }
    for i in 0..mid_nodes {
        nodes.push(mid_lo + (mid_hi - mid_lo) * i as f64 / (mid_nodes - 1) as f64);
    }
    if right_singular {
        let s_max = zone.sqrt();
        for j in (0..zone_nodes).rev() {
            let s = s_max * j as f64 / zone_nodes as f64;
            nodes.push(hi - s * s);
        }
    }
    nodes.dedup_by(|a, b| *a <= *b);
    nodes
}

/// Extend a fundamental arc to the complete generating curve of its class.
///
/// * entire graphs are already complete;
/// * cylinders and nodoid-like curves are mirrored through the slice of the
///   vertical tangent (`height -> -height`);
/// * spheres are mirrored through both the vertical-tangent height and the
///   axis, closing a topological circle;
/// * unduloids and nodoids are reflected at the right vertical tangent and
///   repeated with vertical period `2 * (height(right) - height(left))`,
///   `periods` times.
///
/// Extended curves are polylines; `rho` is no longer monotone.
pub fn extend_curve(
    curve: &SampledCurve,
    class: RotationClass,
    periods: usize,
) -> Result<SampledCurve, RotationError> {
    let n = curve.samples.len();
    if n < 2 {
        return Err(RotationError::BehaviorMismatch(class));
    }
    let mirrored = |heights_about: f64| -> Vec<CurveSample> {
        curve
            .samples
            .iter()
            .rev()
            .skip(1)
            .map(|s| CurveSample {
                rho: s.rho,
                height: 2.0 * heights_about - s.height,
                slope: -s.slope,
            })
            .collect()
    };
    match class {
        RotationClass::EntireGraph => Ok(curve.clone()),
        RotationClass::Cylinder | RotationClass::NodoidLike => {
            if curve.left_behavior != EndBehavior::VerticalTangent {
                return Err(RotationError::BehaviorMismatch(class));
            }
            // Lower branch from rho_max down to the vertical tangent, then
            // the upper branch back out.
            let mut samples: Vec<CurveSample> = curve
                .samples
                .iter()
                .rev()
                .map(|s| CurveSample {
                    rho: s.rho,
                    height: -s.height,
                    slope: -s.slope,
                })
                .collect();
            samples.extend(curve.samples.iter().skip(1).copied());
            Ok(SampledCurve {
                kind: curve.kind,
                params: curve.params,
                samples,
                left_behavior: curve.right_behavior,
                right_behavior: curve.right_behavior,
            })
        }
        RotationClass::Sphere => {
            if curve.left_behavior != EndBehavior::HorizontalTangent
                || curve.right_behavior != EndBehavior::VerticalTangent
            {
                return Err(RotationError::BehaviorMismatch(class));
            }
            let top = curve.samples[n - 1].height;
            let mut samples = curve.samples.clone();
            samples.extend(mirrored(top)); // equator up to the opposite pole
            let closing: Vec<CurveSample> = samples
                .iter()
                .rev()
                .skip(1)
                .map(|s| CurveSample {
                    rho: -s.rho,
                    height: s.height,
                    slope: -s.slope,
                })
                .collect();
            samples.extend(closing); // reflect through the axis, back to the start
            Ok(SampledCurve {
                kind: curve.kind,
                params: curve.params,
                samples,
                left_behavior: EndBehavior::HorizontalTangent,
                right_behavior: EndBehavior::HorizontalTangent,
            })
        }
        RotationClass::Unduloid | RotationClass::Nodoid => {
            if curve.left_behavior != EndBehavior::VerticalTangent
                || curve.right_behavior != EndBehavior::VerticalTangent
            {
                return Err(RotationError::BehaviorMismatch(class));
            }
            let period = 2.0 * (curve.samples[n - 1].height - curve.samples[0].height);
            let mut one_period = curve.samples.clone();
            one_period.extend(mirrored(curve.samples[n - 1].height));
            let mut samples = Vec::with_capacity(one_period.len() * periods.max(1));
            for k in 0..periods.max(1) {
                let shift = period * k as f64;
                let skip = if k == 0 { 0 } else { 1 };
                samples.extend(one_period.iter().skip(skip).map(|s| CurveSample {
                    rho: s.rho,
                    height: s.height + shift,
                    slope: s.slope,
                }));
            }
            Ok(SampledCurve {
                kind: curve.kind,
                params: curve.params,
                samples,
                left_behavior: EndBehavior::VerticalTangent,
                right_behavior: EndBehavior::VerticalTangent,
            })
        }
        RotationClass::NoSolution | RotationClass::Unclassified => {
            Err(RotationError::NotSampleable(class))
        }
    }
}

/// Radius of the self-intersection circle of a `d < 0` curve: where the
/// height returns to the anchor level after its dip, so the mirrored branch
/// crosses the original. Linear interpolation between samples; `None` when
/// the sampled arc never comes back up.
pub fn self_intersection_radius(curve: &SampledCurve) -> Option<f64> {
    if curve.params.d >= 0.0 {
        return None;
    }
    let mut seen_dip = false;
    for pair in curve.samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.height < 0.0 {
            seen_dip = true;
        }
        if seen_dip && a.height < 0.0 && b.height >= 0.0 {
            let w = -a.height / (b.height - a.height);
            return Some(a.rho + w * (b.rho - a.rho));
        }
    }
    None
}
