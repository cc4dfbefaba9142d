//! Poincare-ball embeddings and triangle meshes for the `n = 2` surfaces.
//!
//! Rotation surfaces are swept from the generating curve by
//! `(tanh(rho/2) cos theta, tanh(rho/2) sin theta, height)`; translation
//! surfaces are swept along equidistant curves of a geodesic, built in the
//! hyperboloid model (where hyperbolic translations are linear) and projected
//! back to the ball. Surfaces with `n >= 3` are exported as generating
//! curves only; their geometric content is carried entirely by the profile.

pub mod export;

use crate::curve::{CurveKind, SampledCurve};
use crate::params::SurfaceParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("meshing is implemented for n = 2 only, got n = {0} (export the curve instead)")]
    DimensionUnsupported(u32),
    #[error("curve has a negative radius sample ({0}); mesh the nonnegative meridian")]
    NegativeRadius(f64),
    #[error("curve has too few samples to mesh")]
    EmptyCurve,
    #[error("mesh needs at least {needed} transverse/angular samples, got {got}")]
    TooFewSections { needed: usize, got: usize },
    #[error("consecutive axis points cannot be meshed")]
    DegenerateStrip,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A point of `H^2 x R` in ball-model coordinates: horizontal part strictly
/// inside the unit disk, vertical coordinate free.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

/// Triangle mesh of an embedded surface, with the generator parameters and
/// class tag carried along as metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<BallPoint>,
    pub faces: Vec<[u32; 3]>,
    pub params: SurfaceParams,
    pub family: CurveKind,
    pub class_tag: String,
}

impl Mesh {
    /// Largest horizontal norm over the vertices; always `< 1` for a valid
    /// ball-model embedding.
    pub fn max_horizontal_norm(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| (v.x * v.x + v.y * v.y).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Ball-model point to the hyperboloid sheet `x0^2 - x1^2 - x2^2 = 1`,
/// `x0 > 0`.
pub fn ball_to_hyperboloid(p: [f64; 2]) -> [f64; 3] {
    let r2 = p[0] * p[0] + p[1] * p[1];
    let denom = 1.0 - r2;
    [(1.0 + r2) / denom, 2.0 * p[0] / denom, 2.0 * p[1] / denom]
}

/// Hyperboloid sheet back to the ball model.
pub fn hyperboloid_to_ball(x: [f64; 3]) -> [f64; 2] {
    [x[1] / (1.0 + x[0]), x[2] / (1.0 + x[0])]
}

/// Hyperbolic distance between two ball-model points.
pub fn ball_distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    let dp = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
    let np = 1.0 - (p[0] * p[0] + p[1] * p[1]);
    let nq = 1.0 - (q[0] * q[0] + q[1] * q[1]);
    (1.0 + 2.0 * dp / (np * nq)).acosh()
}

/// Longest prefix of the samples with nonnegative radius. Extended sphere
/// profiles close through negative radii; their mesh needs exactly this
/// pole-to-pole meridian.
pub fn nonnegative_meridian(curve: &SampledCurve) -> SampledCurve {
    let keep = curve.samples.iter().take_while(|s| s.rho >= 0.0).count();
    SampledCurve {
        samples: curve.samples[..keep].to_vec(),
        ..curve.clone()
    }
}

const AXIS_EPS: f64 = 1e-12;

/// Sweep a rotation generating curve (`n = 2`) into a triangle mesh.
///
/// Sample `i` becomes a ring of `angular_samples` vertices at horizontal
/// radius `tanh(rho_i/2)` and height `height_i`, or a single apex vertex
/// when the sample sits on the axis. Consecutive rings are joined as quad
/// strips split into triangles, rings and apexes as fans.
pub fn embed_rotation_mesh(
    curve: &SampledCurve,
    class_tag: &str,
    angular_samples: usize,
) -> Result<Mesh, GeometryError> {
    if curve.params.n != 2 {
        return Err(GeometryError::DimensionUnsupported(curve.params.n));
    }
    if angular_samples < 8 {
        return Err(GeometryError::TooFewSections {
            needed: 8,
            got: angular_samples,
        });
    }
    if curve.samples.len() < 2 {
        return Err(GeometryError::EmptyCurve);
    }
    if let Some(s) = curve.samples.iter().find(|s| s.rho < 0.0) {
        return Err(GeometryError::NegativeRadius(s.rho));
    }

    let k = angular_samples as u32;
    let mut vertices = Vec::new();
    // First vertex index of each row, or None for an apex row (single vertex).
    let mut rows: Vec<(u32, bool)> = Vec::with_capacity(curve.samples.len());
    for s in &curve.samples {
        let start = vertices.len() as u32;
        if s.rho <= AXIS_EPS {
            vertices.push(BallPoint {
                x: 0.0,
                y: 0.0,
                t: s.height,
            });
            rows.push((start, true));
        } else {
            let r = (s.rho / 2.0).tanh();
            for j in 0..k {
                let theta = 2.0 * std::f64::consts::PI * f64::from(j) / f64::from(k);
                vertices.push(BallPoint {
                    x: r * theta.cos(),
                    y: r * theta.sin(),
                    t: s.height,
                });
            }
            rows.push((start, false));
        }
    }

    let mut faces = Vec::new();
    for pair in rows.windows(2) {
        let ((a, a_apex), (b, b_apex)) = (pair[0], pair[1]);
        match (a_apex, b_apex) {
            (true, true) => return Err(GeometryError::DegenerateStrip),
            (true, false) => {
                for j in 0..k {
                    faces.push([a, b + j, b + (j + 1) % k]);
                }
            }
            (false, true) => {
                for j in 0..k {
                    faces.push([a + j, b, a + (j + 1) % k]);
                }
            }
            (false, false) => {
                for j in 0..k {
                    let jn = (j + 1) % k;
                    faces.push([a + j, b + j, b + jn]);
                    faces.push([a + j, b + jn, a + jn]);
                }
            }
        }
    }

    Ok(Mesh {
        vertices,
        faces,
        params: curve.params,
        family: CurveKind::Rotation,
        class_tag: class_tag.to_string(),
    })
}

/// Sweep a translation generating curve (`n = 2`) into a triangle mesh.
///
/// Sample `i` is translated along the equidistant curve at distance `rho_i`
/// from the base geodesic: in the hyperboloid model the equidistant point at
/// arclength parameter `s` is `cosh(rho_i)*(cosh s, 0, sinh s) +
/// sinh(rho_i)*(0, 1, 0)`, projected to the ball and paired with the height
/// `mu_i`. The `s = 0` column reproduces the generating curve at
/// `(tanh(rho_i/2), 0)`.
pub fn embed_translation_mesh(
    curve: &SampledCurve,
    class_tag: &str,
    transverse_samples: usize,
    transverse_span: f64,
) -> Result<Mesh, GeometryError> {
    if curve.params.n != 2 {
        return Err(GeometryError::DimensionUnsupported(curve.params.n));
    }
    if transverse_samples < 2 {
        return Err(GeometryError::TooFewSections {
            needed: 2,
            got: transverse_samples,
        });
    }
    if curve.samples.len() < 2 {
        return Err(GeometryError::EmptyCurve);
    }
    assert!(transverse_span > 0.0);

    let m = transverse_samples as u32;
    let mut vertices = Vec::with_capacity(curve.samples.len() * transverse_samples);
    for sample in &curve.samples {
        let (shr, chr) = (sample.rho.sinh(), sample.rho.cosh());
        for j in 0..m {
            let s = -transverse_span + 2.0 * transverse_span * f64::from(j) / f64::from(m - 1);
            let hyp = [chr * s.cosh(), shr, chr * s.sinh()];
            let ball = hyperboloid_to_ball(hyp);
            vertices.push(BallPoint {
                x: ball[0],
                y: ball[1],
                t: sample.height,
            });
        }
    }

    let mut faces = Vec::new();
    for i in 0..curve.samples.len() as u32 - 1 {
        for j in 0..m - 1 {
            let a = i * m + j;
            let b = (i + 1) * m + j;
            faces.push([a, b, b + 1]);
            faces.push([a, b + 1, a + 1]);
        }
    }

    Ok(Mesh {
        vertices,
        faces,
        params: curve.params,
        family: CurveKind::Translation,
        class_tag: class_tag.to_string(),
    })
}
