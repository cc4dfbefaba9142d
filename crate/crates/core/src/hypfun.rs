//! Moment integrals of the hyperbolic functions.
//!
//! `eval_moment(Sinh, m, t)` is the integral of `sinh^m` over `[0, t]` and
//! `eval_moment(Cosh, m, t)` the integral of `cosh^m`. Both satisfy a
//! two-step recurrence that reduces to the elementary seeds `m = 0, 1`, so
//! they are evaluated exactly (to rounding) in `O(m)` with no quadrature.
//!
//! These moments drive every profile function in the crate: the rotation
//! family integrates `sinh^(n-1)`, the translation family `cosh^(n-1)`.

use serde::{Deserialize, Serialize};

/// Which hyperbolic function is raised to the `m`-th power under the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentKind {
    /// Integral of `sinh^m` from 0 to `t`.
    Sinh,
    /// Integral of `cosh^m` from 0 to `t`.
    Cosh,
}

/// Integral of `sinh^m` or `cosh^m` over `[0, t]`.
///
/// Evaluated by the upward recurrence
/// `m*S_m = sinh^(m-1)*cosh - (m-1)*S_(m-2)` (sinh case, seeds `t` and
/// `cosh(t) - 1`) and `m*C_m = sinh*cosh^(m-1) + (m-1)*C_(m-2)` (cosh case,
/// seeds `t` and `sinh(t)`). Strictly increasing in `t`, zero at `t = 0`.
///
/// Requires `t >= 0` finite; panics otherwise.
pub fn eval_moment(kind: MomentKind, m: u32, t: f64) -> f64 {
    assert!(
        t.is_finite() && t >= 0.0,
        "moment argument must be finite and nonnegative"
    );
    match kind {
        MomentKind::Sinh => sinh_moment(m, t),
        MomentKind::Cosh => cosh_moment(m, t),
    }
}

fn sinh_moment(m: u32, t: f64) -> f64 {
    // cosh(t) - 1 written as 2*sinh^2(t/2) to avoid cancellation near 0.
    let seed1 = 2.0 * (t / 2.0).sinh().powi(2);
    match m {
        0 => t,
        1 => seed1,
        // The recurrence subtracts two O(t^(m-1)) terms to produce an
        // O(t^(m+1)) result, so its relative error grows like eps/t^2 as
        // t -> 0; switch to the series of sinh^m there.
        _ if f64::from(m + 1) * t * t <= 2.5e-3 => sinh_moment_series(m, t),
        _ => {
            let sh = t.sinh();
            let ch = t.cosh();
            let (mut prev, mut cur) = (t, seed1); // S_0, S_1
            for k in 2..=m {
                let kf = f64::from(k);
                let next = (sh.powi(k as i32 - 1) * ch - (kf - 1.0) * prev) / kf;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Series of the sinh moment for small `t`: integrating
/// `sinh^m(r) = r^m exp(m ln(sinh r / r))` term by term. With
/// `(m+1) t^2 <= 2.5e-3` the omitted `t^(m+9)` term is below 1e-15 relative.
fn sinh_moment_series(m: u32, t: f64) -> f64 {
    let mf = f64::from(m);
    let a1 = mf / 6.0;
    let a2 = mf * mf / 72.0 - mf / 180.0;
    let a3 = mf * mf * mf / 1296.0 - mf * mf / 1080.0 + mf / 2835.0;
    let u = t * t;
    t.powi(m as i32 + 1)
        * (1.0 / (mf + 1.0) + u * (a1 / (mf + 3.0) + u * (a2 / (mf + 5.0) + u * a3 / (mf + 7.0))))
}

fn cosh_moment(m: u32, t: f64) -> f64 {
    match m {
        0 => t,
        1 => t.sinh(),
        _ => {
            let sh = t.sinh();
            let ch = t.cosh();
            let (mut prev, mut cur) = (t, sh); // C_0, C_1
            for k in 2..=m {
                let kf = f64::from(k);
                let next = (sh * ch.powi(k as i32 - 1) + (kf - 1.0) * prev) / kf;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Two-term large-`t` expansion of [`eval_moment`], for ratio tests against
/// the exact recurrence.
///
/// Sinh case: `(sinh^(m-3)*cosh*(sinh^2 - (m-1)/(m-2)))/m`, remainder
/// `O(e^((m-4)t))`. Cosh case:
/// `(sinh*cosh^(m-3)*(cosh^2 + (m-1)/(m-2)))/m`, same remainder order.
/// Requires `m >= 4`.
pub fn moment_leading_term(kind: MomentKind, m: u32, t: f64) -> f64 {
    assert!(m >= 4, "leading term needs m >= 4");
    let mf = f64::from(m);
    let ratio = (mf - 1.0) / (mf - 2.0);
    let sh = t.sinh();
    let ch = t.cosh();
    match kind {
        MomentKind::Sinh => sh.powi(m as i32 - 3) * ch * (sh * sh - ratio) / mf,
        MomentKind::Cosh => sh * ch.powi(m as i32 - 3) * (ch * ch + ratio) / mf,
    }
}

/// Natural log of the two-term expansion, computed in log space so it stays
/// finite where `cosh^m` itself overflows (`t` beyond roughly `700/m`).
///
/// Only meaningful in the asymptotic regime; callers use it for growth-rate
/// checks at very large `t`.
pub fn moment_leading_term_ln(kind: MomentKind, m: u32, t: f64) -> f64 {
    assert!(m >= 4, "leading term needs m >= 4");
    assert!(
        t >= 1.0,
        "log-scaled expansion is for the asymptotic regime"
    );
    let mf = f64::from(m);
    let ratio = (mf - 1.0) / (mf - 2.0);
    // ln sinh(t) = t - ln 2 + ln(1 - e^(-2t)), ln cosh analogous.
    let e2 = (-2.0 * t).exp();
    let ln_sh = t - std::f64::consts::LN_2 + (-e2).ln_1p();
    let ln_ch = t - std::f64::consts::LN_2 + e2.ln_1p();
    match kind {
        MomentKind::Sinh => {
            // sinh^2 - ratio = e^(2 ln sinh) * (1 - ratio * e^(-2 ln sinh))
            (mf - 1.0) * ln_sh + ln_ch + (-ratio * (-2.0 * ln_sh).exp()).ln_1p() - mf.ln()
        }
        MomentKind::Cosh => {
            ln_sh + (mf - 1.0) * ln_ch + (ratio * (-2.0 * ln_ch).exp()).ln_1p() - mf.ln()
        }
    }
}
