//! Multilevel random-sampling optimizer.
//!
//! Each iteration takes the crossing pair with the smallest angle, picks one of
//! its four endpoints `v` uniformly at random, and then runs `L` levels of `T`
//! uniform samples each. Level `i` (counting from 0) samples the axis-aligned
//! square of side `s·bⁱ` centred on the position `v` had when the level began.
//! A sample replaces `v`'s position whenever it strictly raises the local
//! crossing angle of `v`; later samples compete against the improved value.
//!
//! Only pairs incident to `v` change when `v` moves and the minimum pair is
//! incident to `v`, so the global crossing angle never decreases.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{line_angle, segments_cross, Angle, Point, Segment};
use crate::minangle::{CrossingPair, MinPairEngine, QueryStats};
use crate::model::Drawing;

/// RNG stream used by the optimizer. Generators and layouts use other streams
/// of the same seed, so a pipeline may pass one seed to every stage.
pub const SAMPLER_STREAM: u64 = 3;

/// A ChaCha8 generator for `seed` on the given stream.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Sloppy,
    Medium,
    Precise,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Sloppy, Preset::Medium, Preset::Precise];

    /// `(levels, samples per level)`.
    pub fn levels_and_samples(self) -> (usize, usize) {
        match self {
            Preset::Sloppy => (3, 50),
            Preset::Medium => (4, 175),
            Preset::Precise => (5, 400),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sloppy => "sloppy",
            Preset::Medium => "medium",
            Preset::Precise => "precise",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sloppy" => Ok(Preset::Sloppy),
            "medium" => Ok(Preset::Medium),
            "precise" => Ok(Preset::Precise),
            other => Err(format!("unknown preset {other:?}")),
        }
    }
}

pub const DEFAULT_SCALE: f64 = 0.2;
pub const DEFAULT_SIDE: f64 = 1e5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("levels must be at least 1")]
    Levels,
    #[error("samples per level must be at least 1")]
    Samples,
    #[error("initial side length must be positive and finite, got {0}")]
    Side(f64),
    #[error("scaling factor must lie in (0, 1), got {0}")]
    Scale(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub levels: usize,
    pub samples: usize,
    pub side: f64,
    pub scale: f64,
    /// Iteration budget; `None` means `2n`.
    pub max_iterations: Option<usize>,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    pub snap_integer: bool,
    pub engine: MinPairEngine,
}

impl SamplerConfig {
    pub fn from_preset(preset: Preset, seed: u64) -> Self {
        let (levels, samples) = preset.levels_and_samples();
        SamplerConfig {
            levels,
            samples,
            side: DEFAULT_SIDE,
            scale: DEFAULT_SCALE,
            max_iterations: None,
            time_limit: None,
            seed,
            snap_integer: false,
            engine: MinPairEngine::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.levels == 0 {
            return Err(ConfigError::Levels);
        }
        if self.samples == 0 {
            return Err(ConfigError::Samples);
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            return Err(ConfigError::Side(self.side));
        }
        if !(self.scale > 0.0 && self.scale < 1.0) {
            return Err(ConfigError::Scale(self.scale));
        }
        Ok(())
    }

    pub fn iteration_budget(&self, vertex_count: usize) -> usize {
        self.max_iterations.unwrap_or(2 * vertex_count)
    }

    /// Side of the sampling square at `level` (0-based).
    pub fn level_side(&self, level: usize) -> f64 {
        self.side * self.scale.powi(level as i32)
    }
}

/// Local crossing angle of `v`: the smallest crossing angle between an edge
/// incident to `v` and any other edge, or `π/2` if none of them cross.
pub fn local_crossing_angle(drawing: &Drawing, v: usize) -> Angle {
    local_angle_at(drawing, v, drawing.position(v), None).unwrap_or(Angle::RIGHT)
}

/// Local crossing angle of `v` as if it were placed at `p`.
///
/// With `floor = Some(a)` the scan stops early and returns `None` as soon as
/// some pair reaches an angle `<= a`, i.e. when the placement cannot beat `a`.
fn local_angle_at(drawing: &Drawing, v: usize, p: Point, floor: Option<Angle>) -> Option<Angle> {
    let graph = drawing.graph();
    let mut best = Angle::RIGHT;
    for &incident in graph.incident_edges(v) {
        let other = graph.edge(incident).opposite(v);
        if p == drawing.position(other) {
            return None;
        }
        let moved = Segment::new_unchecked(p, drawing.position(other));
        let dir = moved.direction();
        for e in graph.edge_ids() {
            if e == incident {
                continue;
            }
            let edge = graph.edge(e);
            if edge.has_endpoint(v) {
                // Edges sharing v meet only at v.
                continue;
            }
            let s = drawing.segment(e);
            if segments_cross(&moved, &s) {
                let angle = line_angle(dir, s.direction());
                if angle < best {
                    best = angle;
                    if floor.is_some_and(|f| best <= f) {
                        return None;
                    }
                }
            }
        }
    }
    Some(best)
}

/// `count` points drawn uniformly from the axis-aligned square of the given
/// side centred on `center`, optionally rounded to the integer grid.
pub fn sample_square<R: Rng + ?Sized>(
    center: Point,
    side: f64,
    count: usize,
    snap_integer: bool,
    rng: &mut R,
) -> Vec<Point> {
    let half = side / 2.0;
    (0..count)
        .map(|_| {
            let x = center.x + rng.gen_range(-half..=half);
            let y = center.y + rng.gen_range(-half..=half);
            if snap_integer {
                Point::new(x.round(), y.round())
            } else {
                Point::new(x, y)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    /// `None` when the drawing had no crossing to improve.
    pub vertex: Option<usize>,
    pub pair: Option<CrossingPair>,
    pub local_before: Angle,
    pub local_after: Angle,
    pub accepted_moves: usize,
    pub rejected_invalid: usize,
}

impl StepReport {
    pub fn converged(&self) -> bool {
        self.vertex.is_none()
    }
}

fn step_on_pair<R: Rng + ?Sized>(
    drawing: &mut Drawing,
    pair: CrossingPair,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> StepReport {
    let graph = drawing.shared_graph().clone();
    let (e1, e2) = (graph.edge(pair.e), graph.edge(pair.f));
    let endpoints = [e1.u, e1.v, e2.u, e2.v];
    let v = endpoints[rng.gen_range(0..endpoints.len())];

    let before = local_crossing_angle(drawing, v);
    debug_assert!(before <= pair.angle, "candidate {v} must touch the minimum pair");
    let mut current = before;
    let mut accepted = 0;
    let mut rejected_invalid = 0;
    for level in 0..cfg.levels {
        let center = drawing.position(v);
        let samples = sample_square(center, cfg.level_side(level), cfg.samples, cfg.snap_integer, rng);
        for q in samples {
            let Some(value) = local_angle_at(drawing, v, q, Some(current)) else {
                continue;
            };
            if value > current {
                if drawing.placement_is_valid(v, q) {
                    drawing.set_position_unchecked(v, q);
                    current = value;
                    accepted += 1;
                } else {
                    rejected_invalid += 1;
                }
            }
        }
    }
    StepReport {
        vertex: Some(v),
        pair: Some(pair),
        local_before: before,
        local_after: current,
        accepted_moves: accepted,
        rejected_invalid,
    }
}

fn converged_report() -> StepReport {
    StepReport {
        vertex: None,
        pair: None,
        local_before: Angle::RIGHT,
        local_after: Angle::RIGHT,
        accepted_moves: 0,
        rejected_invalid: 0,
    }
}

fn is_optimal(pair: &Option<CrossingPair>) -> bool {
    // A drawing whose smallest crossing is a right angle cannot be improved.
    pair.is_none_or(|p| p.angle.is_right())
}

/// One optimizer iteration on `drawing`.
pub fn optimize_step<R: Rng + ?Sized>(
    drawing: &mut Drawing,
    cfg: &SamplerConfig,
    rng: &mut R,
    stats: &mut QueryStats,
) -> StepReport {
    let pair = cfg.engine.query(drawing, stats);
    if is_optimal(&pair) {
        return converged_report();
    }
    step_on_pair(drawing, pair.expect("checked above"), cfg, rng)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub vertex: usize,
    pub local_before_deg: f64,
    pub local_after_deg: f64,
    /// Global crossing angle after the iteration.
    pub global_deg: f64,
    pub accepted_moves: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub initial_global_deg: f64,
    pub records: Vec<IterationRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    IterationBudget,
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub drawing: Drawing,
    pub trace: IterationTrace,
    pub iterations: usize,
    pub stop: StopReason,
    pub final_angle: Angle,
    pub stats: QueryStats,
    pub wall: Duration,
}

impl Outcome {
    pub fn accepted_moves(&self) -> usize {
        self.trace.records.iter().map(|r| r.accepted_moves).sum()
    }
}

/// Runs the optimizer until convergence or until a budget is exhausted.
pub fn optimize(drawing: &Drawing, cfg: &SamplerConfig) -> Result<Outcome, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = stream_rng(cfg.seed, SAMPLER_STREAM);
    let mut drawing = drawing.clone();
    let mut stats = QueryStats::default();
    let budget = cfg.iteration_budget(drawing.graph().vertex_count());

    let mut pair = cfg.engine.query(&drawing, &mut stats);
    let angle_of = |p: &Option<CrossingPair>| p.map_or(Angle::RIGHT, |p| p.angle);
    let mut trace = IterationTrace {
        initial_global_deg: angle_of(&pair).degrees(),
        records: Vec::new(),
    };
    let mut iterations = 0;
    let stop = loop {
        if is_optimal(&pair) {
            break StopReason::Converged;
        }
        if iterations >= budget {
            break StopReason::IterationBudget;
        }
        if cfg.time_limit.is_some_and(|limit| start.elapsed() >= limit) {
            break StopReason::TimeLimit;
        }
        let report = step_on_pair(&mut drawing, pair.expect("not optimal"), cfg, &mut rng);
        iterations += 1;
        pair = cfg.engine.query(&drawing, &mut stats);
        trace.records.push(IterationRecord {
            iteration: iterations,
            vertex: report.vertex.expect("step on a pair picks a vertex"),
            local_before_deg: report.local_before.degrees(),
            local_after_deg: report.local_after.degrees(),
            global_deg: angle_of(&pair).degrees(),
            accepted_moves: report.accepted_moves,
        });
    };

    Ok(Outcome {
        final_angle: angle_of(&pair),
        drawing,
        trace,
        iterations,
        stop,
        stats,
        wall: start.elapsed(),
    })
}
