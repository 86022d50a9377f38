//! Exact intersection theory and Riemann–Roch on Gorenstein del Pezzo
//! surfaces described by the (-1)- and (-2)-curves on their minimal
//! resolutions.
//!
//! The pipeline: a [`surface::SurfaceModel`] is validated into an
//! [`intersection::Surface`]; Weil divisors `D = Σ a_i π_*C_i` are pulled back
//! numerically, local invariants are evaluated at each ADE point, and
//! [`riemann_roch::chi_omega1`] assembles `χ(X, Ω^[1](D))`. The
//! [`positivity`] module certifies ampleness and searches for ample divisors
//! with negative Euler characteristic, which witness failures of Bott
//! vanishing. [`toric`] classifies the cones of complete 2D fans and
//! [`report`] turns catalog metadata and witnesses into a classification.

pub mod intersection;
pub mod invariants;
pub mod linalg;
pub mod positivity;
pub mod rational;
pub mod report;
pub mod riemann_roch;
pub mod surface;
pub mod toric;

pub use intersection::{QDivisor, Surface, SurfaceError, WeilClass};
pub use rational::Rational;
