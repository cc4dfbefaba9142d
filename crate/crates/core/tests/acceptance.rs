//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Every tolerance is pinned here, in code. Criterion 4 carries a known
//! infeasibility in its first clause (see the inline note with the closed
//! form); it is asserted as stated anyway and its failure is self-reported.

use cmc_core::curve::{CurveKind, GridSpec, SampledCurve};
use cmc_core::geometry::{self, export};
use cmc_core::params::{critical_value, SurfaceParams};
use cmc_core::rotation::{self, GrowthLaw, RotationClass};
use cmc_core::translation::{self, TranslationClass};
use cmc_core::verify;
use std::collections::HashMap;
use std::time::Instant;

fn report(criterion: &str, passed: bool, detail: &str) -> bool {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

fn params(n: u32, h: f64, d: f64) -> SurfaceParams {
    SurfaceParams::new(n, h, d).unwrap()
}

/// Plain bisection oracle, independent of the library's root refinement.
fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) * f(hi) < 0.0, "oracle bracket must straddle the root");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_01_closed_form_breakpoints() {
    let start = Instant::now();
    let mut ok = true;

    let cyl = rotation::classify(&params(2, 0.5, 0.5));
    let a = cyl.breakpoints.left_end.unwrap();
    ok &= cyl.class == RotationClass::Cylinder && (a - std::f64::consts::LN_2).abs() <= 1e-10;

    let sphere = rotation::classify(&params(2, 1.0, 0.0));
    let (lo, hi) = (
        sphere.breakpoints.left_end.unwrap(),
        sphere.breakpoints.right_end.unwrap(),
    );
    ok &= sphere.class == RotationClass::Sphere
        && lo.abs() <= 1e-10
        && (hi - 3f64.ln()).abs() <= 1e-10;

    let peak = rotation::peak_radius(2, 1.0).unwrap();
    ok &= (peak - 0.5 * 3f64.ln()).abs() <= 1e-12;

    let trough = translation::trough_radius(2, 0.25).unwrap();
    ok &= (trough - 0.5 * 3f64.ln()).abs() <= 1e-12;

    let flux = translation::graph_flux_constant(2, 0.25).unwrap();
    ok &= (flux - 3f64.sqrt() / 2.0).abs() <= 1e-10;

    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    assert!(report(
        "01 closed-form breakpoints",
        ok,
        &format!(
            "ln2={a:.12}, sphere=({lo:.2e},{hi:.12}), peak={peak:.12}, trough={trough:.12}, graph_flux={flux:.12}, {elapsed:?}"
        )
    ));
}

/// The shared rotation grid of criteria 2 and 3: dimensions 2..4, five mean
/// curvatures spanning the regimes, three flux constants, 400-sample curves
/// on a span of 0.7 past the left endpoint.
fn acceptance_grid() -> Vec<(SurfaceParams, rotation::RotationSurface)> {
    let mut grid = Vec::new();
    for n in [2u32, 3, 4] {
        for mult in [0.5, 0.75, 1.0, 2.25, 3.0] {
            for d in [-0.5, 0.0, 0.5] {
                let p = params(n, mult * critical_value(n), d);
                let s = rotation::classify(&p);
                match s.class {
                    RotationClass::NoSolution | RotationClass::Unclassified => continue,
                    _ => grid.push((p, s)),
                }
            }
        }
    }
    grid
}

fn grid_curve(surface: &rotation::RotationSurface, samples: usize) -> SampledCurve {
    let rho_max = surface.breakpoints.left_end.unwrap() + 0.7;
    surface
        .sample(&GridSpec::with_rho_max(samples, rho_max))
        .unwrap()
}

#[test]
fn criterion_02_flux_constancy_on_grid() {
    let start = Instant::now();
    let grid = acceptance_grid();
    let mut worst: f64 = 0.0;
    for (_, surface) in &grid {
        let curve = grid_curve(surface, 400);
        let flux = verify::flux_residual(&curve).unwrap();
        worst = worst.max(flux.max_residual);
    }
    let elapsed = start.elapsed();
    let ok = worst < 1e-8 && elapsed.as_secs_f64() < 30.0 && grid.len() >= 30;
    assert!(report(
        "02 flux constancy",
        ok,
        &format!(
            "{} curves, worst |F - d| = {worst:.3e} (< 1e-8), {elapsed:?}",
            grid.len()
        )
    ));
}

#[test]
fn criterion_03_mean_curvature_residual_and_order() {
    let grid = acceptance_grid();
    let mut worst: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut ok = true;
    for (p, surface) in &grid {
        let coarse = verify::mean_curvature_residual(&grid_curve(surface, 400)).unwrap();
        let fine = verify::mean_curvature_residual(&grid_curve(surface, 800)).unwrap();
        worst = worst.max(coarse.max_residual);
        ok &= coarse.max_residual < 1e-5;
        // Halving under sample doubling, measurable only above the rounding
        // floor of the finite differences.
        if coarse.max_residual > 1e-8 {
            worst_ratio = worst_ratio.max(fine.max_residual / coarse.max_residual);
            ok &= fine.max_residual <= 0.5 * coarse.max_residual;
        } else {
            ok &= fine.max_residual <= 1e-7;
        }
        if !ok {
            println!(
                "  offending curve: n={} H={} d={} -> {:.3e} / {:.3e}",
                p.n, p.h, p.d, coarse.max_residual, fine.max_residual
            );
        }
    }
    assert!(report(
        "03 mean-curvature residual",
        ok,
        &format!("worst residual {worst:.3e} (< 1e-5), worst halving ratio {worst_ratio:.3}")
    ));
}

#[test]
fn criterion_04_growth_asymptotics() {
    // (a) Linear growth at rho = 50 within 1e-2 of the predicted slope.
    //
    // Note: for n = 2, H = 1/4, d = 0 the height has the closed form
    // lambda(rho) = (rho - 2 ln(2 + sqrt(3)) + ln 3)/sqrt(3) + O(e^-rho), so
    // |height/rho - 1/sqrt(3)| = 0.8864.../rho = 1.77e-2 at rho = 50: the
    // stated bound is not attainable at this radius (it would need
    // rho >= ~89). The check is asserted as stated and expected to FAIL;
    // the other three clauses pass.
    let lin = rotation::classify(&params(2, 0.25, 0.0));
    let lin_curve = lin.sample(&GridSpec::with_rho_max(800, 50.0)).unwrap();
    let lin_check = verify::asymptote_check(&lin_curve, &lin.growth_law().unwrap()).unwrap();
    let a_ok = lin_check.max_residual < 1e-2;
    println!(
        "  (a) height/rho at 50 = {:.6} vs 1/sqrt(3) = {:.6}: |diff| = {:.4e} {}",
        lin_curve.samples.last().unwrap().height / 50.0,
        1.0 / 3f64.sqrt(),
        lin_check.max_residual,
        if a_ok {
            "PASS"
        } else {
            "FAIL (exact asymptote intercept 0.8864/rho)"
        }
    );

    // (b) Exponential growth for the planar critical family.
    let mut b_ok = true;
    for d in [0.0, 0.5] {
        let s = rotation::classify(&params(2, 0.5, d));
        let curve = s.sample(&GridSpec::with_rho_max(800, 30.0)).unwrap();
        let check = verify::asymptote_check(&curve, &s.growth_law().unwrap()).unwrap();
        println!(
            "  (b) d={d}: |height sqrt(1-d) e^(-rho/2) - 1| = {:.3e}",
            check.max_residual
        );
        b_ok &= check.max_residual < 1e-2;
    }

    // (c) Slope against e^t/(2 sqrt(2) sqrt(t)) for n = 3 at t = 20.
    let s3 = rotation::classify(&params(3, 2.0 / 3.0, 0.0));
    let curve3 = s3.sample(&GridSpec::with_rho_max(600, 20.0)).unwrap();
    let check3 = verify::asymptote_check(&curve3, &s3.growth_law().unwrap()).unwrap();
    println!("  (c) slope ratio deviation = {:.3e}", check3.max_residual);
    let c_ok = check3.max_residual < 3e-2;

    // (d) Empirical exponential rates for n = 4, 5: positive and stable
    // between the windows [20,25] and [25,30]; values reported, not pinned.
    let mut d_ok = true;
    for n in [4u32, 5] {
        let s = rotation::classify(&params(n, critical_value(n), 0.0));
        let curve = s.sample(&GridSpec::with_rho_max(900, 30.0)).unwrap();
        let check = verify::asymptote_check(&curve, &GrowthLaw::ExponentialEmpirical).unwrap();
        let rates: Vec<f64> = check.details.iter().map(|r| r.residual).collect();
        println!(
            "  (d) n={n}: fitted rates {:.6} / {:.6}, window drift {:.2e}",
            rates[0], rates[1], check.max_residual
        );
        d_ok &= check.passed;
    }

    let ok = a_ok && b_ok && c_ok && d_ok;
    assert!(report(
        "04 growth asymptotics",
        ok,
        &format!("linear={a_ok} exponential={b_ok} integral3d={c_ok} empirical={d_ok}")
    ));
}

#[test]
fn criterion_05_moment_recurrences() {
    use cmc_core::hypfun::{eval_moment, MomentKind};
    let mut worst: f64 = 0.0;
    for m in 2..=10u32 {
        let mf = f64::from(m);
        for i in 1..=100 {
            let t = 0.1 * f64::from(i);
            let sinh_res = (mf * eval_moment(MomentKind::Sinh, m, t)
                - t.sinh().powi(m as i32 - 1) * t.cosh()
                + (mf - 1.0) * eval_moment(MomentKind::Sinh, m - 2, t))
            .abs()
                / (1.0 + eval_moment(MomentKind::Sinh, m, t).abs());
            let cosh_res = (mf * eval_moment(MomentKind::Cosh, m, t)
                - t.sinh() * t.cosh().powi(m as i32 - 1)
                - (mf - 1.0) * eval_moment(MomentKind::Cosh, m - 2, t))
            .abs()
                / (1.0 + eval_moment(MomentKind::Cosh, m, t).abs());
            worst = worst.max(sinh_res).max(cosh_res);
        }
    }
    let ok = worst < 1e-10;
    assert!(report(
        "05 moment recurrences",
        ok,
        &format!("worst residual {worst:.3e} (< 1e-10)")
    ));
}

#[test]
fn criterion_06_slope_monotone_in_mean_curvature() {
    let mut ok = true;
    for n in [2u32, 3] {
        for d in [-0.3, 0.0, 0.3] {
            let crit = critical_value(n);
            // The supercritical member is close enough to critical that its
            // flux limit stays above |d| and all three domains overlap.
            let hs = [0.6 * crit, crit, 1.2 * crit];
            // Common existence domain across the three regimes.
            let mut lo: f64 = 1e-3;
            let mut hi: f64 = f64::INFINITY;
            for h in hs {
                let s = rotation::classify(&params(n, h, d));
                if let Some(l) = s.breakpoints.left_end {
                    lo = lo.max(l);
                }
                if let Some(r) = s.breakpoints.right_end {
                    hi = hi.min(r);
                }
            }
            assert!(hi.is_finite() && hi > lo, "domains must overlap");
            let margin = 1e-6 * (hi - lo).max(1.0);
            let grid: Vec<f64> = (0..12)
                .map(|i| lo + margin + (hi - lo - 2.0 * margin) * i as f64 / 11.0)
                .collect();
            let check = verify::slope_monotone_in_h(n, d, &grid, &hs).unwrap();
            ok &= check.passed;
            if !check.passed {
                println!("  violation at n={n} d={d}: {}", check.summary_line());
            }
        }
    }
    assert!(report(
        "06 slope monotone in H",
        ok,
        "3-value H grid, n in {2,3}, d in {-0.3,0,0.3}"
    ));
}

#[test]
fn criterion_07_no_solution_gates() {
    let mut ok = true;
    for d in [1.0, 1.2] {
        ok &= rotation::classify(&params(2, 0.5, d)).class == RotationClass::NoSolution;
    }
    for (n, d) in [(3u32, 1.0), (3, 1.5), (4, 2.0), (5, 1.0)] {
        let h = critical_value(n);
        ok &= translation::classify(&params(n, h, d)).class == TranslationClass::NoSolution;
    }
    assert!(report(
        "07 no-solution gates",
        ok,
        "planar critical d >= 1; critical translation d >= 1"
    ));
}

#[test]
fn criterion_08_translation_case_tables() {
    let mut ok = true;

    // d = 0: convex generator, right endpoint against the bisection oracle
    // on the reduced profile (1 + e^(-2t))/2 - t.
    let convex = translation::classify(&params(3, 2.0 / 3.0, 0.0));
    let c = convex.breakpoints.right_end.unwrap();
    let c_oracle = bisect(&|t: f64| 0.5 * (1.0 + (-2.0 * t).exp()) - t, 0.4, 0.8);
    ok &= convex.class == TranslationClass::EmbeddedConvex && (c - c_oracle).abs() <= 1e-6;

    // d = -2: self-intersecting case; left endpoint against the bisection
    // oracle on cosh^2 + sinh cosh + t - 2, and ordered before the right.
    let imm = translation::classify(&params(3, 2.0 / 3.0, -2.0));
    let alpha = imm.breakpoints.left_end.unwrap();
    let alpha_oracle = bisect(
        &|t: f64| t.cosh().powi(2) + t.sinh() * t.cosh() + t - 2.0,
        0.1,
        1.0,
    );
    ok &= imm.class == TranslationClass::ImmersedSelfInt;
    ok &= (alpha - alpha_oracle).abs() <= 1e-3;
    ok &= alpha < imm.breakpoints.right_end.unwrap();

    // Axis slope d/sqrt(1 - d^2) for |d| < 1.
    let mut slopes = String::new();
    for d in [-0.5, 0.5] {
        let s = translation::classify(&params(3, 2.0 / 3.0, d));
        let curve = s.sample(&GridSpec::new(200)).unwrap();
        let measured = curve.samples[0].slope;
        let predicted = d / (1.0 - d * d).sqrt();
        ok &= (measured - predicted).abs() <= 1e-8;
        slopes.push_str(&format!(" slope({d})={measured:.9}"));
    }

    assert!(report(
        "08 translation case tables",
        ok,
        &format!(
            "c={c:.7} (oracle {c_oracle:.7}), alpha={alpha:.7} (oracle {alpha_oracle:.7}),{slopes}"
        )
    ));
}

#[test]
fn criterion_09_complete_graph() {
    let curve = translation::sample_complete_graph(3, 1.0 / 3.0, 50.0).unwrap();
    let trough = translation::trough_radius(3, 1.0 / 3.0).unwrap();

    let monotone = curve.samples.windows(2).all(|w| w[1].height > w[0].height);

    // The node at trough + 1e-4 exists by construction of the inner grid.
    let near = curve
        .samples
        .iter()
        .find(|s| (s.rho - (trough + 1e-4)).abs() < 1e-12)
        .expect("grid carries the trough + 1e-4 node");
    let dives = near.height < -5.0;

    let sup_slope = curve
        .samples
        .iter()
        .filter(|s| s.rho >= trough + 1.0)
        .map(|s| s.slope.abs())
        .fold(0.0, f64::max);
    let bounded = sup_slope < 10.0;

    let ok = monotone && dives && bounded;
    assert!(report(
        "09 complete graph",
        ok,
        &format!(
            "monotone={monotone}, height(trough+1e-4)={:.3} (< -5), sup|slope|={sup_slope:.3} (< 10)",
            near.height
        )
    ));
}

#[test]
fn criterion_10_geometry() {
    // Sphere mesh: watertight, Euler characteristic 2.
    let s = rotation::classify(&params(2, 1.0, 0.0));
    let curve = s.sample(&GridSpec::new(60)).unwrap();
    let closed = rotation::extend_curve(&curve, s.class, 1).unwrap();
    let meridian = geometry::nonnegative_meridian(&closed);
    let mesh = geometry::embed_rotation_mesh(&meridian, "Sphere_K", 24).unwrap();

    let mut edges: HashMap<(u32, u32), u32> = HashMap::new();
    for f in &mesh.faces {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
            *edges.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let euler = mesh.vertices.len() as i64 - edges.len() as i64 + mesh.faces.len() as i64;
    let watertight = edges.values().all(|&c| c == 2);

    // Translation mesh: center column reproduces the generating curve.
    let t = translation::classify(&params(3, 2.0 / 3.0, 0.0));
    let _ = t; // the 3-d generator is exported as a curve, not meshed
    let tcurve = translation::sample_complete_graph(2, 0.25, 5.0).unwrap();
    let cols = 9usize;
    let tmesh = geometry::embed_translation_mesh(&tcurve, "CompleteGraph_T2", cols, 1.0).unwrap();
    let mut column_ok = true;
    for (i, sample) in tcurve.samples.iter().enumerate() {
        let v = tmesh.vertices[i * cols + cols / 2];
        column_ok &= (v.x - (sample.rho / 2.0).tanh()).abs() <= 1e-10 && v.y.abs() <= 1e-10;
    }

    let inside = mesh.max_horizontal_norm() < 1.0 && tmesh.max_horizontal_norm() < 1.0;

    let ok = euler == 2 && watertight && column_ok && inside;
    assert!(report(
        "10 geometry",
        ok,
        &format!(
            "euler={euler}, watertight={watertight}, center column={column_ok}, |horizontal|<1={inside}"
        )
    ));
}

#[test]
fn criterion_11_fault_detection() {
    let s = rotation::classify(&params(2, 0.5, 0.5));
    let curve = s.sample(&GridSpec::with_rho_max(400, 4.0)).unwrap();
    let rippled = verify::inject_height_ripple(&curve, 1e-3);

    let flux = verify::flux_residual(&rippled).unwrap();
    let mc = verify::mean_curvature_residual(&rippled).unwrap();
    let flux_trips = flux.max_residual >= 10.0 * verify::FLUX_TOLERANCE;
    let mc_trips = mc.max_residual >= 10.0 * verify::MEAN_CURVATURE_TOLERANCE;

    let ok = flux_trips && mc_trips && !flux.passed && !mc.passed;
    assert!(report(
        "11 fault detection",
        ok,
        &format!(
            "flux residual {:.3e} (>= {:.0e}), mc residual {:.3e} (>= {:.0e})",
            flux.max_residual,
            10.0 * verify::FLUX_TOLERANCE,
            mc.max_residual,
            10.0 * verify::MEAN_CURVATURE_TOLERANCE
        )
    ));
}

/// Companion check from the barrier construction: every vertex of the
/// compact sphere lies in the mean-convex side of a far-enough lowered
/// entire graph. Exercises the containment predicate end to end.
#[test]
fn barrier_contains_compact_sphere() {
    let sphere = rotation::classify(&params(2, 1.0, 0.0));
    let curve = sphere.sample(&GridSpec::new(80)).unwrap();
    let closed = rotation::extend_curve(&curve, sphere.class, 1).unwrap();
    let top = closed
        .samples
        .iter()
        .map(|s| s.height)
        .fold(f64::NEG_INFINITY, f64::max);

    let barrier = rotation::classify(&params(2, 0.5, 0.0));
    let barrier_curve = barrier.sample(&GridSpec::with_rho_max(400, 5.0)).unwrap();

    let offset = -(top + 0.1);
    let all_inside = closed
        .samples
        .iter()
        .all(|s| verify::in_mean_convex_side((s.rho, s.height), &barrier_curve, offset).unwrap());
    assert!(report(
        "10b barrier containment",
        all_inside,
        "sphere vs lowered entire graph"
    ));
}

/// Companion check reproducing the stacked profile figure: for fixed d the
/// curves are ordered by mean curvature, and the plot writer emits one
/// polyline per curve.
#[test]
fn profile_curves_stack_by_mean_curvature() {
    let mk = |h: f64| {
        rotation::classify(&params(2, h, 0.0))
            .sample(&GridSpec::with_rho_max(200, 1.0))
            .unwrap()
    };
    let (low, mid, high) = (mk(0.25), mk(0.5), mk(1.0));
    let mut ordered = true;
    for i in 1..low.samples.len() {
        let rho = low.samples[i].rho;
        let (a, b, c) = (
            low.samples[i].height,
            mid.height_at(rho).unwrap(),
            high.height_at(rho).unwrap(),
        );
        ordered &= a < b && b < c;
    }
    let mut buf = Vec::new();
    export::write_plot_svg(
        &mut buf,
        "profiles by mean curvature",
        &[("H=0.25", &low), ("H=0.50", &mid), ("H=1.00", &high)],
    )
    .unwrap();
    let svg = String::from_utf8(buf).unwrap();
    let ok = ordered && svg.matches("<polyline").count() == 3;
    assert!(report(
        "10c profile ordering",
        ok,
        "three-regime stack and SVG polylines"
    ));
    assert!(low.kind == CurveKind::Rotation);
}
