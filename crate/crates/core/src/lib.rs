//! Straight-line graph drawings with large crossing angles.
//!
//! The optimizer repeatedly takes the crossing pair of minimum angle and moves
//! one of its endpoints to the best of many random candidate positions drawn
//! from successively smaller squares. Finding the minimum pair is accelerated
//! by grouping edges into slope buckets.

pub mod cli;
pub mod eval;
pub mod generators;
pub mod geometry;
pub mod layouts;
pub mod minangle;
pub mod model;
pub mod sampler;

pub use geometry::{Angle, Point, Segment};
pub use minangle::{crossing_angle, min_pair_bruteforce, min_pair_bucketed, CrossingPair, MinPairEngine};
pub use model::{Drawing, EdgeId, Graph, ModelError, ResultRecord};
pub use sampler::{optimize, Preset, SamplerConfig};
