//! Causal Lorentzian geometry engine for explicit spacetime families.
//!
//! Supports Minkowski space in 1+1 .. 3+1 dimensions, static products
//! `-dt^2 + h(y)` with flat circle/line factors (cylinders and tori) or a
//! grid-sampled 1-D Riemannian factor, and conformally flat 1+1 metrics
//! `c(t,x) * (-dt^2 + dx^2)`.
//!
//! The core quantities are the time separation `tau`, the modified cut
//! value `rho` along null geodesics, observer arrival functions `f^+/f^-`,
//! and earliest light observation sets, together with the `kappa`
//! constants that drive the stepwise reconstruction in the companion
//! crates.

#![allow(clippy::needless_range_loop)]

pub mod cut;
pub mod error;
pub mod event;
pub mod geodesic;
pub mod halton;
pub mod kappa;
pub mod metric;
pub mod obs_set;
pub mod observer;
pub mod time_sep;

pub use error::GeomError;
pub use event::{CausalClass, Event, TangentVec, TimeOrientation};
pub use geodesic::{Geodesic, GeodesicSample};
pub use kappa::{KappaReport, KappaSample};
pub use metric::{ConformalFactor, Metric, SpatialFactor};
pub use obs_set::{Arrival, ConeFan, ObsSetSample};
pub use observer::{ObservationRegion, Observer};

/// Tolerance below which `g(v,v)` counts as null (relative to `|v|_{g+}^2`).
pub const NULL_TOL: f64 = 1e-12;

/// Relative Hamiltonian drift allowed along integrated geodesics.
pub const HAMILTONIAN_TOL: f64 = 1e-9;
