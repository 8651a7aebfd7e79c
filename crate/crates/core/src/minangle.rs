//! Minimum crossing-angle queries.
//!
//! [`min_pair_bruteforce`] tests every edge pair. [`min_pair_bucketed`] first
//! estimates an upper bound `δ` on the answer from the longest edges, then
//! distributes edges into `⌊π/δ⌋` slope buckets: a pair crossing at an angle
//! below the bucket width has slopes in the same or in cyclically adjacent
//! buckets, so only those pairs need testing. When the bucket scan cannot
//! certify its best pair, the remaining pairs are tested as well, so both
//! queries always return the same pair.
//!
//! Ties between equal angles are broken by the lexicographically smallest
//! `(e, f)` with `e < f`.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::geometry::{line_angle, segments_cross, slope, Angle, Segment};
use crate::model::{Drawing, EdgeId};

/// Number of long edges used to estimate `δ`.
pub fn longest_edge_sample_size(edge_count: usize) -> usize {
    if edge_count <= 5000 {
        50
    } else {
        300
    }
}

/// Margin below the bucket width under which a bucket-scan result is trusted.
/// Absorbs the rounding difference between slope- and vector-based angles.
const CERTIFY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingPair {
    pub e: EdgeId,
    pub f: EdgeId,
    pub angle: Angle,
}

impl CrossingPair {
    fn order(&self, other: &CrossingPair) -> Ordering {
        self.angle
            .total_cmp(&other.angle)
            .then(self.e.cmp(&other.e))
            .then(self.f.cmp(&other.f))
    }
}

fn better(current: Option<CrossingPair>, candidate: CrossingPair) -> Option<CrossingPair> {
    match current {
        Some(c) if c.order(&candidate) != Ordering::Greater => Some(c),
        _ => Some(candidate),
    }
}

/// Counters for one query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    /// Edge pairs whose crossing angle was evaluated.
    pub tested_pairs: u64,
    /// Tested pairs that turned out to cross.
    pub crossings: u64,
}

impl QueryStats {
    pub fn absorb(&mut self, other: QueryStats) {
        self.tested_pairs += other.tested_pairs;
        self.crossings += other.crossings;
    }
}

/// Which algorithm answers minimum-pair queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinPairEngine {
    #[default]
    Bucket,
    Bruteforce,
}

impl MinPairEngine {
    pub fn query(self, drawing: &Drawing, stats: &mut QueryStats) -> Option<CrossingPair> {
        match self {
            MinPairEngine::Bucket => min_pair_bucketed(drawing, stats),
            MinPairEngine::Bruteforce => min_pair_bruteforce_counted(drawing, stats),
        }
    }
}

struct Tester<'a> {
    segments: &'a [Segment],
    stats: &'a mut QueryStats,
    best: Option<CrossingPair>,
}

impl Tester<'_> {
    #[inline]
    fn test(&mut self, a: usize, b: usize) {
        let (e, f) = if a < b { (a, b) } else { (b, a) };
        self.stats.tested_pairs += 1;
        let (se, sf) = (&self.segments[e], &self.segments[f]);
        if !segments_cross(se, sf) {
            return;
        }
        let angle = line_angle(se.direction(), sf.direction());
        self.stats.crossings += 1;
        self.best = better(
            self.best,
            CrossingPair {
                e: EdgeId(e),
                f: EdgeId(f),
                angle,
            },
        );
    }
}

/// The crossing pair of minimum angle, testing all `m(m-1)/2` pairs.
pub fn min_pair_bruteforce(drawing: &Drawing) -> Option<CrossingPair> {
    min_pair_bruteforce_counted(drawing, &mut QueryStats::default())
}

pub fn min_pair_bruteforce_counted(drawing: &Drawing, stats: &mut QueryStats) -> Option<CrossingPair> {
    let segments = drawing.segments();
    let mut tester = Tester {
        segments: &segments,
        stats,
        best: None,
    };
    for e in 0..segments.len() {
        for f in (e + 1)..segments.len() {
            tester.test(e, f);
        }
    }
    tester.best
}

/// Global crossing angle of a drawing: `π/2` when nothing crosses.
pub fn crossing_angle(drawing: &Drawing) -> Angle {
    min_pair_bruteforce(drawing).map_or(Angle::RIGHT, |p| p.angle)
}

/// Ids of the `r` longest edges, ties broken by smaller id first.
pub fn longest_edges(segments: &[Segment], r: usize) -> Vec<usize> {
    let lengths: Vec<f64> = segments.iter().map(Segment::length).collect();
    let mut ids: Vec<usize> = (0..segments.len()).collect();
    ids.sort_by(|&a, &b| lengths[b].total_cmp(&lengths[a]).then(a.cmp(&b)));
    ids.truncate(r);
    ids
}

fn min_pair_among(segments: &[Segment], ids: &[usize], stats: &mut QueryStats) -> Option<CrossingPair> {
    let mut tester = Tester {
        segments,
        stats,
        best: None,
    };
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            tester.test(a, b);
        }
    }
    tester.best
}

/// Minimal crossing angle among the longest edges, or `None` if none of them cross.
pub fn estimate_delta(drawing: &Drawing) -> Option<Angle> {
    let segments = drawing.segments();
    let ids = longest_edges(&segments, longest_edge_sample_size(segments.len()));
    min_pair_among(&segments, &ids, &mut QueryStats::default()).map(|p| p.angle)
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BucketError {
    #[error("bucket width estimate must be positive, got {0} rad")]
    NonPositiveDelta(f64),
}

/// Edges partitioned by slope into `t` equal intervals of `[0, π)`
/// (after shifting slopes by `π/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BucketIndex {
    buckets: Vec<Vec<EdgeId>>,
    of_edge: Vec<usize>,
}

impl BucketIndex {
    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn width(&self) -> f64 {
        PI / self.buckets.len() as f64
    }

    pub fn buckets(&self) -> &[Vec<EdgeId>] {
        &self.buckets
    }

    pub fn bucket_of(&self, e: EdgeId) -> usize {
        self.of_edge[e.0]
    }

    /// Same bucket or cyclically adjacent buckets.
    pub fn are_neighbors(&self, a: usize, b: usize) -> bool {
        let t = self.buckets.len();
        let d = a.abs_diff(b);
        d <= 1 || d == t - 1
    }
}

/// Bucket count for an estimate `δ`: `⌊π/δ⌋`, with `δ` clamped to `π/2`.
pub fn bucket_count(delta: Angle) -> Result<usize, BucketError> {
    let d = delta.radians();
    if d.is_nan() || d <= 0.0 {
        return Err(BucketError::NonPositiveDelta(d));
    }
    let d = d.min(FRAC_PI_2);
    Ok(((PI / d).floor() as usize).max(2))
}

/// Bucket of a slope `σ` among `t` buckets: the `i` with
/// `i·(π/t) ≤ σ + π/2 < (i+1)·(π/t)`.
pub fn bucket_for_slope(slope: Angle, t: usize) -> usize {
    let width = PI / t as f64;
    let shifted = slope.radians() + FRAC_PI_2;
    let mut i = ((shifted / width).floor().max(0.0) as usize).min(t - 1);
    // Settle rounding so the index satisfies the interval inequality exactly
    // as written above.
    while i > 0 && i as f64 * width > shifted {
        i -= 1;
    }
    while i + 1 < t && (i + 1) as f64 * width <= shifted {
        i += 1;
    }
    i
}

fn bucket_segments(segments: &[Segment], t: usize) -> BucketIndex {
    let mut buckets = vec![Vec::new(); t];
    let mut of_edge = Vec::with_capacity(segments.len());
    for (e, s) in segments.iter().enumerate() {
        let i = bucket_for_slope(slope(s), t);
        buckets[i].push(EdgeId(e));
        of_edge.push(i);
    }
    BucketIndex { buckets, of_edge }
}

pub fn build_buckets(drawing: &Drawing, delta: Angle) -> Result<BucketIndex, BucketError> {
    let t = bucket_count(delta)?;
    Ok(bucket_segments(&drawing.segments(), t))
}

/// Same result as [`min_pair_bruteforce`], usually with far fewer tested pairs.
///
/// Every pair is tested at most once across the estimate, the bucket scan and
/// the fallback, so `stats.tested_pairs` never exceeds `m(m-1)/2`.
pub fn min_pair_bucketed(drawing: &Drawing, stats: &mut QueryStats) -> Option<CrossingPair> {
    let segments = drawing.segments();
    let m = segments.len();
    let r = longest_edge_sample_size(m);
    let sample = longest_edges(&segments, r);
    let estimate = min_pair_among(&segments, &sample, stats);
    if m <= r {
        // The sample already covered every pair.
        return estimate;
    }

    let mut in_sample = vec![false; m];
    for &e in &sample {
        in_sample[e] = true;
    }
    let already_tested = |a: usize, b: usize| in_sample[a] && in_sample[b];

    let mut tester = Tester {
        segments: &segments,
        stats,
        best: estimate,
    };

    let index = match estimate {
        Some(p) => {
            let t = bucket_count(p.angle).expect("crossing angles are positive");
            (t > 2).then(|| bucket_segments(&segments, t))
        }
        None => None,
    };

    let Some(index) = index else {
        for e in 0..m {
            for f in (e + 1)..m {
                if !already_tested(e, f) {
                    tester.test(e, f);
                }
            }
        }
        return tester.best;
    };

    let t = index.bucket_count();
    for i in 0..t {
        let here = &index.buckets[i];
        for (k, &a) in here.iter().enumerate() {
            for &b in &here[k + 1..] {
                if !already_tested(a.0, b.0) {
                    tester.test(a.0, b.0);
                }
            }
        }
        let next = &index.buckets[(i + 1) % t];
        for &a in here {
            for &b in next {
                if !already_tested(a.0, b.0) {
                    tester.test(a.0, b.0);
                }
            }
        }
    }

    let certified = tester
        .best
        .is_some_and(|p| p.angle.radians() < index.width() - CERTIFY_MARGIN);
    if certified {
        return tester.best;
    }

    for e in 0..m {
        let be = index.bucket_of(EdgeId(e));
        for f in (e + 1)..m {
            if !already_tested(e, f) && !index.are_neighbors(be, index.bucket_of(EdgeId(f))) {
                tester.test(e, f);
            }
        }
    }
    tester.best
}
