//! Finite-difference laboratory for `u_tt - Lap_h u + a u^2 = f` in 1+1
//! and 2+1 dimensions: leapfrog causal inverse, closed-form d'Alembert
//! oracle, perturbative expansion up to fourth order, interaction waves,
//! singularity-contrast detection, and the oscillatory probe pairing.
//!
//! Geometric units: unit wave speed, the wave operator is
//! `square = d_tt - Lap_h`.

#![allow(clippy::needless_range_loop)]

pub mod closed_form;
pub mod detector;
pub mod error;
pub mod expansion;
pub mod field;
pub mod grid;
pub mod measurement;
pub mod probe;
pub mod solver;
pub mod sources;

pub use detector::{interaction_experiment, ContrastReport, InteractionConfig};
pub use error::WaveError;
pub use expansion::{expansion_terms, interaction_wave, remainder_slope, ExpansionResult};
pub use field::WaveField;
pub use grid::Grid;
pub use measurement::{measurement_l_u, Measurement, RegionU};
pub use probe::{probe_indicator, DecayFit};
pub use solver::{solve_linear, solve_linear_anticausal, solve_nonlinear, SpatialMetric};
pub use sources::{PlanePulse, PointProbe};
