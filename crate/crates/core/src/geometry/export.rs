//! File exporters: Wavefront OBJ meshes, CSV curves, SVG profile plots.
//!
//! All writers are deterministic: the same data produces byte-identical
//! output.

use super::Mesh;
use crate::curve::SampledCurve;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Write a mesh as Wavefront OBJ text: `v x y z` lines, then 1-indexed
/// `f i j k` lines.
pub fn write_obj<W: Write>(w: &mut W, mesh: &Mesh) -> io::Result<()> {
    writeln!(w, "# {} {}", mesh.class_tag, "surface")?;
    writeln!(
        w,
        "# n={} H={} d={} vertices={} faces={}",
        mesh.params.n,
        mesh.params.h,
        mesh.params.d,
        mesh.vertices.len(),
        mesh.faces.len()
    )?;
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", v.x, v.y, v.t)?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub fn write_obj_file<P: AsRef<Path>>(path: P, mesh: &Mesh) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_obj(&mut w, mesh)?;
    w.flush()
}

/// Write a curve as CSV with header `rho,height,slope`, 17 significant
/// digits per value (comma separator, dot decimal, LF line endings).
pub fn write_curve_csv<W: Write>(w: &mut W, curve: &SampledCurve) -> io::Result<()> {
    writeln!(w, "rho,height,slope")?;
    for s in &curve.samples {
        writeln!(w, "{:.16e},{:.16e},{:.16e}", s.rho, s.height, s.slope)?;
    }
    Ok(())
}

pub fn write_curve_csv_file<P: AsRef<Path>>(path: P, curve: &SampledCurve) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_curve_csv(&mut w, curve)?;
    w.flush()
}

const PLOT_WIDTH: f64 = 800.0;
const PLOT_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Plot one or more curves as a standalone SVG: profile axes
/// (radius horizontal, height vertical), one polyline per curve, legend
/// labels, and `title` across the top.
pub fn write_plot_svg<W: Write>(
    w: &mut W,
    title: &str,
    series: &[(&str, &SampledCurve)],
) -> io::Result<()> {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for (_, curve) in series {
        for s in &curve.samples {
            if s.rho.is_finite() && s.height.is_finite() {
                min_x = min_x.min(s.rho);
                max_x = max_x.max(s.rho);
                min_y = min_y.min(s.height);
                max_y = max_y.max(s.height);
            }
        }
    }
    if !min_x.is_finite() {
        (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
    }
    if max_x == min_x {
        max_x = min_x + 1.0;
    }
    if max_y == min_y {
        max_y = min_y + 1.0;
    }
    let sx = (PLOT_WIDTH - 2.0 * MARGIN) / (max_x - min_x);
    let sy = (PLOT_HEIGHT - 2.0 * MARGIN) / (max_y - min_y);
    let map = |rho: f64, height: f64| -> (f64, f64) {
        (
            MARGIN + (rho - min_x) * sx,
            PLOT_HEIGHT - MARGIN - (height - min_y) * sy,
        )
    };

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{PLOT_WIDTH}" height="{PLOT_HEIGHT}" viewBox="0 0 {PLOT_WIDTH} {PLOT_HEIGHT}">"#
    )?;
    writeln!(w, "  <title>{}</title>", xml_escape(title))?;
    writeln!(w, r#"  <rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        w,
        r#"  <text x="{}" y="{}" font-family="monospace" font-size="16" text-anchor="middle">{}</text>"#,
        PLOT_WIDTH / 2.0,
        MARGIN / 2.0,
        xml_escape(title)
    )?;

    // Axes with min/max labels.
    let (x0, y0) = map(min_x, min_y);
    let (x1, _) = map(max_x, min_y);
    let (_, y1) = map(min_x, max_y);
    writeln!(
        w,
        r#"  <line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1"/>"#
    )?;
    writeln!(
        w,
        r#"  <line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>"#
    )?;
    for (value, x, y, anchor) in [
        (min_x, x0, y0 + 20.0, "middle"),
        (max_x, x1, y0 + 20.0, "middle"),
        (min_y, x0 - 8.0, y0, "end"),
        (max_y, x0 - 8.0, y1, "end"),
    ] {
        writeln!(
            w,
            r#"  <text x="{x}" y="{y}" font-family="monospace" font-size="12" text-anchor="{anchor}">{value:.4}</text>"#
        )?;
    }

    for (idx, (label, curve)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut points = String::new();
        for s in &curve.samples {
            if s.rho.is_finite() && s.height.is_finite() {
                let (px, py) = map(s.rho, s.height);
                points.push_str(&format!("{px:.2},{py:.2} "));
            }
        }
        writeln!(
            w,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        )?;
        writeln!(
            w,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="12" fill="{color}">{}</text>"#,
            PLOT_WIDTH - MARGIN - 180.0,
            MARGIN + 18.0 * (idx as f64 + 1.0),
            xml_escape(label)
        )?;
    }
    writeln!(w, "</svg>")
}

pub fn write_plot_svg_file<P: AsRef<Path>>(
    path: P,
    title: &str,
    series: &[(&str, &SampledCurve)],
) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_plot_svg(&mut w, title, series)?;
    w.flush()
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveKind, CurveSample, EndBehavior, GridSpec, SampledCurve};
    use crate::params::SurfaceParams;
    use crate::rotation;

    fn empty_curve() -> SampledCurve {
        SampledCurve {
            kind: CurveKind::Rotation,
            params: SurfaceParams::new(2, 0.5, 0.0).unwrap(),
            samples: Vec::new(),
            left_behavior: EndBehavior::HorizontalTangent,
            right_behavior: EndBehavior::Unbounded,
        }
    }

    #[test]
    fn empty_curve_writes_header_only() {
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &empty_curve()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "rho,height,slope\n");
    }

    #[test]
    fn csv_round_trips_to_full_precision() {
        let curve = SampledCurve {
            samples: vec![
                CurveSample {
                    rho: 0.1,
                    height: std::f64::consts::PI,
                    slope: 1.0 / 3.0,
                },
                CurveSample {
                    rho: 0.2,
                    height: 2.0f64.sqrt(),
                    slope: f64::INFINITY,
                },
            ],
            ..empty_curve()
        };
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &curve).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("rho,height,slope"));
        let row: Vec<f64> = lines
            .next()
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(row[1], std::f64::consts::PI);
        assert_eq!(row[2], 1.0 / 3.0);
        let row2: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row2[2], "inf");
    }

    #[test]
    fn obj_is_parseable_and_one_indexed() {
        let p = SurfaceParams::new(2, 0.5, 0.5).unwrap();
        let s = rotation::classify(&p);
        let curve = s.sample(&GridSpec::with_rho_max(16, 2.0)).unwrap();
        let mesh = super::super::embed_rotation_mesh(&curve, "Cylinder_C", 8).unwrap();
        let mut buf = Vec::new();
        write_obj(&mut buf, &mesh).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut n_v = 0usize;
        let mut n_f = 0usize;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("v ") {
                assert_eq!(rest.split_whitespace().count(), 3);
                n_v += 1;
            } else if let Some(rest) = line.strip_prefix("f ") {
                for tok in rest.split_whitespace() {
                    let idx: usize = tok.parse().unwrap();
                    assert!(idx >= 1 && idx <= mesh.vertices.len());
                }
                n_f += 1;
            }
        }
        assert_eq!(n_v, mesh.vertices.len());
        assert_eq!(n_f, mesh.faces.len());
    }

    #[test]
    fn svg_plot_has_one_polyline_per_curve() {
        let mk = |h: f64| {
            let p = SurfaceParams::new(2, h, 0.0).unwrap();
            rotation::classify(&p)
                .sample(&GridSpec::with_rho_max(32, 1.0))
                .unwrap()
        };
        let (a, b, c) = (mk(0.25), mk(0.5), mk(1.0));
        let series = vec![("subcritical", &a), ("critical", &b), ("supercritical", &c)];
        let mut buf = Vec::new();
        write_plot_svg(&mut buf, "profiles", &series).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<polyline").count(), 3);
        assert!(text.contains("<title>profiles</title>"));
        assert!(text.starts_with("<svg"));
    }

    #[test]
    fn deterministic_output() {
        let p = SurfaceParams::new(2, 1.0, 0.0).unwrap();
        let s = rotation::classify(&p);
        let curve = s.sample(&GridSpec::new(32)).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_curve_csv(&mut a, &curve).unwrap();
        write_curve_csv(&mut b, &curve).unwrap();
        assert_eq!(a, b);
    }
}
