//! Reconstruction of earliest light observation sets from source tuples.
//!
//! The pipeline: admissible 4-tuples of null sources, their intersection
//! point before cut values, the synthesized earliest-detection set of the
//! intersection, the scan functions comparing first-entry parameters with
//! tuple-generated observations, and the stepwise backward collection of
//! the full data set over a causal diamond, with injectivity and
//! embedding diagnostics.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod lab;
pub mod rng;
pub mod scan;
pub mod stepwise;
pub mod tuples;

pub use error::ReconError;
pub use lab::Lab;
pub use rng::SplitMix;
pub use scan::{s_value, t_value, ScanOutcome};
pub use stepwise::{injectivity_and_embed, stepwise_collect, DataSet, InjectivityReport};
pub use tuples::{
    admissible_tuple, intersection_point, synth_se, tuple_from_target, Admissibility,
    DetectionRecord, IntersectionResult, Provenance, RegionV, SourceTuple,
};
