//! Numerical construction of constant-mean-curvature (CMC) hypersurfaces in
//! the product space H^n x R.
//!
//! The library builds the two classical invariant families:
//!
//! * **rotation hypersurfaces** about a vertical axis, whose generating curve
//!   `(rho, lambda(rho))` solves a first-order integral of the CMC equation
//!   driven by `sinh^(n-1)`, and
//! * **translation hypersurfaces** invariant under hyperbolic translations
//!   along a totally geodesic hyperplane, driven by `cosh^(n-1)`.
//!
//! Each family is parametrized by the dimension `n`, the mean curvature
//! `H > 0` (upward normal) and a flux constant `d`. The crate classifies a
//! parameter triple into its qualitative type (entire graph, cylinder,
//! sphere, unduloid, nodoid, ...), locates the breakpoints of the existence
//! interval, samples the generating curve through the inverse-square-root
//! endpoint singularities, verifies the result against independent oracles
//! (flux constancy, the CMC ODE itself, growth asymptotics), and embeds the
//! `n = 2` surfaces as triangle meshes in Poincare-ball coordinates.
//!
//! Modules mirror that pipeline: [`hypfun`] (moment integrals of `sinh`/
//! `cosh`), [`numerics`] (bracketing, Brent refinement, singular quadrature),
//! [`rotation`] and [`translation`] (profiles, classification, sampling),
//! [`verify`] (residual oracles), [`geometry`] (ball model, meshes, export).

pub mod curve;
pub mod geometry;
pub mod hypfun;
pub mod numerics;
pub mod params;
pub mod rotation;
pub mod translation;
pub mod verify;

pub use curve::{CurveKind, CurveSample, EndBehavior, GridSpec, SampledCurve};
pub use params::{ParamError, Regime, SurfaceParams};
