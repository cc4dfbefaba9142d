//! Root bracketing/refinement and quadrature robust to inverse-square-root
//! endpoint singularities.
//!
//! Every singular endpoint produced by the profile functions in this crate
//! is a simple zero under a square root, so the substitution `t = a + s^2`
//! (resp. `t = b - s^2`) renders the integrand analytic at the flagged end.
//! [`integrate_singular`] applies that substitution and runs an adaptive
//! Gauss-Kronrod 7/15 rule on the result; the Kronrod nodes are strictly
//! interior, so the integrand is never evaluated at the endpoints themselves.
//!
//! All functions are pure and reentrant; the supplied integrand/objective
//! must itself be reentrant for concurrent use.

use thiserror::Error;

/// Default abscissa tolerance for [`refine_root`].
pub const ROOT_TOL: f64 = 1e-12;
/// Default relative tolerance for [`integrate_singular`].
pub const QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("no sign change within span {span} starting at {start}")]
    NoSignChange { start: f64, span: f64 },
    #[error("function value is not finite at {at}")]
    NonFinite { at: f64 },
    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        reason: &'static str,
    },
    #[error("quadrature did not converge on [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64 },
}

/// Which way [`expand_bracket`] walks from its starting point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// An interval with a sign change of the objective across it.
///
/// `f_lo` and `f_hi` carry the endpoint values; they have opposite signs,
/// except that one of them may be exactly zero (closed-form breakpoints do
/// land on exact zeros, and [`refine_root`] then returns that endpoint).
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, NumericsError> {
        if !(lo.is_finite() && hi.is_finite() && f_lo.is_finite() && f_hi.is_finite()) {
            return Err(NumericsError::InvalidBracket {
                lo,
                hi,
                reason: "non-finite data",
            });
        }
        if lo >= hi {
            return Err(NumericsError::InvalidBracket {
                lo,
                hi,
                reason: "endpoints not ordered",
            });
        }
        if f_lo * f_hi > 0.0 {
            return Err(NumericsError::InvalidBracket {
                lo,
                hi,
                reason: "no sign change",
            });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Bracket from an interval, evaluating the objective at both ends.
    pub fn from_interval<F: Fn(f64) -> f64>(
        f: &F,
        lo: f64,
        hi: f64,
    ) -> Result<Self, NumericsError> {
        Self::new(lo, hi, f(lo), f(hi))
    }
}

/// Walk from `start` in `direction` with doubling steps until the objective
/// changes sign, returning the bracketing interval.
///
/// The first probe is `max_span * 2^-30` away from `start`; an exact zero at
/// a probe becomes a degenerate-endpoint bracket that [`refine_root`]
/// resolves immediately.
pub fn expand_bracket<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    direction: Direction,
    max_span: f64,
) -> Result<Bracket, NumericsError> {
    assert!(max_span > 0.0 && start.is_finite());
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Backward => -1.0,
    };
    let f_start = f(start);
    if !f_start.is_finite() {
        return Err(NumericsError::NonFinite { at: start });
    }
    if f_start == 0.0 {
        // Degenerate: the start already sits on the root.
        return Ok(Bracket {
            lo: start,
            hi: start,
            f_lo: 0.0,
            f_hi: 0.0,
        });
    }
    let mut span = max_span / 2f64.powi(30);
    let mut x_prev = start;
    let mut f_prev = f_start;
    loop {
        let reach = span.min(max_span);
        let x = start + sign * reach;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(NumericsError::NonFinite { at: x });
        }
        if fx == 0.0 || f_prev * fx < 0.0 {
            let (lo, hi, f_lo, f_hi) = if x_prev < x {
                (x_prev, x, f_prev, fx)
            } else {
                (x, x_prev, fx, f_prev)
            };
            return Ok(Bracket { lo, hi, f_lo, f_hi });
        }
        if reach >= max_span {
            return Err(NumericsError::NoSignChange {
                start,
                span: max_span,
            });
        }
        x_prev = x;
        f_prev = fx;
        span *= 2.0;
    }
}

/// Refine a bracketed root to abscissa width `tol` with Brent's method
/// (inverse quadratic interpolation, secant, bisection fallback).
///
/// Deterministic; a degenerate bracket with an exactly-zero endpoint returns
/// that endpoint.
pub fn refine_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> f64 {
    assert!(tol >= 1e-14, "tolerance below representable resolution");
    if bracket.f_lo == 0.0 {
        return bracket.lo;
    }
    if bracket.f_hi == 0.0 {
        return bracket.hi;
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            // b is the best estimate; keep it that way.
            (a, b, c) = (b, c, b);
            (fa, fb, fc) = (fb, fc, fb);
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic / secant interpolation.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    b
}

/// Endpoint singularity flags for [`integrate_singular`]. The only order
/// handled is inverse square root, the one produced by simple zeros of the
/// profile functions.
#[derive(Debug, Clone, Copy, Default)]
pub struct SingularSpec {
    pub left_singular: bool,
    pub right_singular: bool,
}

impl SingularSpec {
    pub fn regular() -> Self {
        Self::default()
    }
    pub fn left() -> Self {
        Self {
            left_singular: true,
            right_singular: false,
        }
    }
    pub fn right() -> Self {
        Self {
            left_singular: false,
            right_singular: true,
        }
    }
    pub fn both() -> Self {
        Self {
            left_singular: true,
            right_singular: true,
        }
    }
}

/// Integrate `f` over `[a, b]` to relative tolerance `tol`, where `f` may
/// blow up like `(t-a)^(-1/2)` / `(b-t)^(-1/2)` at the flagged endpoints.
///
/// Flagged ends are folded out by `t = a + s^2` (resp. `b - s^2`); the
/// remaining integrand is handled by adaptive Gauss-Kronrod. Returns
/// [`NumericsError::NonFinite`] if `f` produces a non-finite value strictly
/// inside the interval.
pub fn integrate_singular<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: SingularSpec,
    tol: f64,
) -> Result<f64, NumericsError> {
    assert!(a.is_finite() && b.is_finite());
    if a == b {
        return Ok(0.0);
    }
    assert!(a < b, "interval must be ordered");
    match (spec.left_singular, spec.right_singular) {
        (false, false) => adaptive_gk(&f, a, b, tol),
        (true, false) => folded_gk(&|s: f64| 2.0 * s * f(a + s * s), (b - a).sqrt(), tol),
        (false, true) => folded_gk(&|s: f64| 2.0 * s * f(b - s * s), (b - a).sqrt(), tol),
        (true, true) => {
            let mid = 0.5 * (a + b);
            let left = folded_gk(&|s: f64| 2.0 * s * f(a + s * s), (mid - a).sqrt(), tol)?;
            let right = folded_gk(&|s: f64| 2.0 * s * f(b - s * s), (b - mid).sqrt(), tol)?;
            Ok(left + right)
        }
    }
}

/// Integral of a folded-out integrand over `[0, s_max]`.
///
/// The fold makes the integrand analytic, but right next to the former
/// singularity it is computed from a profile near its simple zero, where
/// f64 cannot deliver relative accuracy at all. Open-ended adaptivity would
/// chase that noise forever, so this uses composite Gauss-Kronrod panels
/// with doubling, stopping on convergence or on stagnation (the noise
/// floor), whichever comes first.
fn folded_gk<F: Fn(f64) -> f64>(g: &F, s_max: f64, tol: f64) -> Result<f64, NumericsError> {
    integrate_saturating(g, 0.0, s_max, tol)
}

/// Composite Gauss-Kronrod with panel doubling, stopping on convergence or
/// on stagnation. Suited to integrands that are analytic but whose
/// evaluation sits near the f64 noise floor (profiles close to their zeros),
/// where open-ended adaptivity would subdivide forever; the result then
/// saturates at the accuracy the data supports.
pub(crate) fn integrate_saturating<F: Fn(f64) -> f64>(
    g: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    let composite = |panels: usize| -> Result<(f64, f64), NumericsError> {
        let mut sum = 0.0;
        let mut resabs = 0.0;
        for i in 0..panels {
            let lo = a + (b - a) * i as f64 / panels as f64;
            let hi = a + (b - a) * (i + 1) as f64 / panels as f64;
            let (v, _, ra) = gk15(g, lo, hi)?;
            sum += v;
            resabs += ra;
        }
        Ok((sum, resabs))
    };
    let (mut prev, _) = composite(4)?;
    let mut prev_diff = f64::INFINITY;
    for k in [8usize, 16, 32, 64, 128, 256] {
        let (val, resabs) = composite(k)?;
        let diff = (val - prev).abs();
        let converged = diff <= tol * val.abs().max(resabs * 1e-3);
        let stagnated = k >= 16 && diff >= 0.5 * prev_diff;
        if converged || stagnated {
            return Ok(val);
        }
        prev = val;
        prev_diff = diff;
    }
    Ok(prev)
}

// Gauss-Kronrod 7/15 nodes and weights (positive half; node 0 included).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 7/15 evaluation: (kronrod, |kronrod - gauss|, resabs).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64), NumericsError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    let mut resabs = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        // Symmetric node pair, or the center node once.
        let mut pair = 0.0;
        let nodes: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &s in nodes {
            let p = center + s * half * x;
            let v = f(p);
            if !v.is_finite() {
                return Err(NumericsError::NonFinite { at: p });
            }
            pair += v;
        }
        kronrod += wk * pair;
        resabs += wk * pair.abs();
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok((
        kronrod * half,
        (kronrod - gauss).abs() * half.abs(),
        resabs * half.abs(),
    ))
}

/// Adaptive bisection driver around [`gk15`] with a work-list, accepting a
/// panel when its error estimate fits either the local relative budget or
/// its length-proportional share of the global one.
fn adaptive_gk<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    let (whole, _, resabs) = gk15(f, a, b)?;
    let scale = resabs.max(whole.abs()).max(f64::MIN_POSITIVE);
    let total_len = b - a;
    let mut stack = vec![(a, b, 0u32)];
    let mut sum = 0.0;
    let mut panels = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err, _) = gk15(f, lo, hi)?;
        let share = tol * scale * ((hi - lo) / total_len);
        if err <= tol * val.abs() || err <= share || depth >= 48 {
            // At the depth cap a panel is microscopic; only a contribution
            // visible against the global budget counts as failure.
            if depth >= 48 && err > tol * scale {
                return Err(NumericsError::NoConvergence { lo, hi });
            }
            sum += val;
            panels += 1;
            if panels > 1_000_000 {
                return Err(NumericsError::NoConvergence { lo: a, hi: b });
            }
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(sum)
}
