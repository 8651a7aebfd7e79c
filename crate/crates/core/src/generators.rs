//! Benchmark graph families: triangulations with extra random edges, and
//! 1-planar graphs built geometrically from a point set or combinatorially
//! from a triangulation's embedding.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{interior_intersection, point_in_interior, Point, Segment};
use crate::model::{Drawing, Graph, ModelError};
use crate::sampler::{stream_rng, DEFAULT_SIDE};

/// RNG stream for generators.
pub const GENERATOR_STREAM: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("{family} needs at least {min} vertices, got {n}")]
    TooFewVertices { family: Family, n: usize, min: usize },
    #[error("{n} vertices admit at most {max} edges, asked for {m}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TriPlusX,
    OneplanarGeo,
    OneplanarTopo,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TriPlusX, Family::OneplanarGeo, Family::OneplanarTopo];

    pub fn name(self) -> &'static str {
        match self {
            Family::TriPlusX => "tri_plus_x",
            Family::OneplanarGeo => "oneplanar_geo",
            Family::OneplanarTopo => "oneplanar_topo",
        }
    }

    pub fn min_vertices(self) -> usize {
        match self {
            Family::OneplanarGeo => 2,
            Family::TriPlusX | Family::OneplanarTopo => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

fn check_size(family: Family, n: usize) -> Result<(), GenError> {
    let min = family.min_vertices();
    if n < min {
        return Err(GenError::TooFewVertices { family, n, min });
    }
    Ok(())
}

/// Per-edge crossing counts of a 1-planar witness plus the crossing pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePlanarCertificate {
    pub crossings_per_edge: Vec<usize>,
    /// Crossing pairs as edge ids `(e, f)` with `e < f`.
    pub crossing_pairs: Vec<(usize, usize)>,
}

impl OnePlanarCertificate {
    pub fn from_pairs(edge_count: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        let mut counts = vec![0; edge_count];
        for pair in pairs.iter_mut() {
            if pair.0 > pair.1 {
                *pair = (pair.1, pair.0);
            }
            counts[pair.0] += 1;
            counts[pair.1] += 1;
        }
        pairs.sort_unstable();
        OnePlanarCertificate {
            crossings_per_edge: counts,
            crossing_pairs: pairs,
        }
    }

    pub fn max_crossings(&self) -> usize {
        self.crossings_per_edge.iter().copied().max().unwrap_or(0)
    }

    pub fn is_one_planar(&self) -> bool {
        self.max_crossings() <= 1
    }
}

/// Uniform random simple graph with `n` vertices and `m` edges.
pub fn random_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph, GenError> {
    let possible = n * n.saturating_sub(1) / 2;
    if m > possible {
        return Err(GenError::TooManyEdges { n, m, max: possible });
    }
    let empty = Graph::new(n, [])?;
    Ok(Graph::new(n, random_non_edges(&empty, m, rng))?)
}

/// A maximal planar graph with its embedding as consistently oriented
/// triangular faces (the outer face included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub graph: Graph,
    pub faces: Vec<[usize; 3]>,
}

/// Random stacked triangulation: start from a triangle and repeatedly insert
/// a new vertex into a uniformly chosen face.
pub fn random_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Triangulation, GenError> {
    if n < 3 {
        return Err(GenError::TooFewVertices {
            family: Family::TriPlusX,
            n,
            min: 3,
        });
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    for k in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, k];
        faces.push([b, c, k]);
        faces.push([c, a, k]);
        edges.extend([(a, k), (b, k), (c, k)]);
    }
    Ok(Triangulation {
        graph: Graph::new(n, edges)?,
        faces,
    })
}

/// Inclusive range `[lo, hi]`, collapsed to `lo` when empty.
fn integer_range(lo: usize, hi: usize) -> (usize, usize) {
    (lo, hi.max(lo))
}

/// Bounds for the number of extra edges of a Triangulation+X graph.
pub fn extra_edge_range(n: usize) -> (usize, usize) {
    integer_range(n.div_ceil(10), 3 * n / 20)
}

/// Bounds for the number of chord insertion attempts of the topological
/// 1-planar generator.
pub fn chord_attempt_range(n: usize) -> (usize, usize) {
    integer_range((3 * n).div_ceil(10), 2 * n / 5)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriPlusX {
    pub graph: Graph,
    pub base: Triangulation,
    /// Number of edges added on top of the triangulation.
    pub extra: usize,
}

/// `count` distinct vertex pairs that are not edges of `graph`.
fn random_non_edges<R: Rng + ?Sized>(graph: &Graph, count: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let n = graph.vertex_count();
    let available = n * n.saturating_sub(1) / 2 - graph.edge_count();
    if n * n <= 4096 || 2 * count >= available {
        let mut pool: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !graph.has_edge(u, v))
            .collect();
        pool.shuffle(rng);
        pool.truncate(count);
        return pool;
    }
    let mut chosen = Vec::with_capacity(count);
    let mut seen = std::collections::HashSet::new();
    while chosen.len() < count {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let key = (u.min(v), u.max(v));
        if u != v && !graph.has_edge(u, v) && seen.insert(key) {
            chosen.push(key);
        }
    }
    chosen
}

/// Random triangulation plus `x` uniform random non-edges, with `x` uniform in
/// [`extra_edge_range`] and capped by the number of available non-edges.
pub fn gen_triangulation_plus_x<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TriPlusX, GenError> {
    check_size(Family::TriPlusX, n)?;
    let base = random_triangulation(n, rng)?;
    let (lo, hi) = extra_edge_range(n);
    let available = n * (n - 1) / 2 - base.graph.edge_count();
    let extra = rng.gen_range(lo..=hi).min(available);
    let added = random_non_edges(&base.graph, extra, rng);
    let edges = base.graph.edges().iter().map(|e| (e.u, e.v)).chain(added);
    Ok(TriPlusX {
        graph: Graph::new(n, edges)?,
        base,
        extra,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricOnePlanar {
    pub graph: Arc<Graph>,
    pub drawing: Drawing,
    pub certificate: OnePlanarCertificate,
}

/// Greedy 1-planar straight-line graph on a random point set.
///
/// All vertex pairs are visited in random order; an edge is kept when it
/// passes through no vertex and the drawing stays 1-planar.
pub fn gen_1planar_geometric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<GeometricOnePlanar, GenError> {
    check_size(Family::OneplanarGeo, n)?;
    let mut points: Vec<Point> = Vec::with_capacity(n);
    while points.len() < n {
        let p = Point::new(rng.gen_range(0.0..DEFAULT_SIDE), rng.gen_range(0.0..DEFAULT_SIDE));
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);

    let mut kept: Vec<(usize, usize)> = Vec::new();
    let mut segments: Vec<Segment> = Vec::new();
    let mut crossed: Vec<bool> = Vec::new();
    let mut crossings: Vec<(usize, usize)> = Vec::new();
    'pairs: for (u, v) in pairs {
        let s = Segment::new(points[u], points[v]).expect("points are distinct");
        let mut hit = None;
        for (i, t) in segments.iter().enumerate() {
            if interior_intersection(&s, t).is_some() {
                if hit.is_some() || crossed[i] {
                    continue 'pairs;
                }
                hit = Some(i);
            }
        }
        if points.iter().any(|&p| point_in_interior(p, &s)) {
            continue;
        }
        let id = kept.len();
        if let Some(i) = hit {
            crossed[i] = true;
            crossings.push((i, id));
        }
        kept.push((u, v));
        segments.push(s);
        crossed.push(hit.is_some());
    }
    let graph = Arc::new(Graph::new(n, kept)?);
    let certificate = OnePlanarCertificate::from_pairs(graph.edge_count(), crossings);
    let drawing = Drawing::new(graph.clone(), points)?;
    Ok(GeometricOnePlanar {
        graph,
        drawing,
        certificate,
    })
}

/// What the chord budget of the topological generator counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    #[default]
    Attempts,
    Successes,
}

impl FromStr for CountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "attempts" => Ok(CountMode::Attempts),
            "successes" => Ok(CountMode::Successes),
            other => Err(format!("unknown count mode {other:?}")),
        }
    }
}

/// A chord inserted across the shared edge of two adjacent faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub u: usize,
    pub v: usize,
    /// The triangulation edge the chord crosses.
    pub crossed: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOnePlanar {
    pub graph: Graph,
    pub base: Triangulation,
    pub chords: Vec<Chord>,
    /// The drawn budget; attempts or successes depending on the mode.
    pub budget: usize,
    pub attempts: usize,
    pub certificate: OnePlanarCertificate,
}

/// 1-planar graph from a random triangulation by inserting chords between the
/// apexes of two faces sharing an edge; each face hosts at most one chord.
pub fn gen_1planar_topological<R: Rng + ?Sized>(
    n: usize,
    mode: CountMode,
    rng: &mut R,
) -> Result<TopologicalOnePlanar, GenError> {
    check_size(Family::OneplanarTopo, n)?;
    let base = random_triangulation(n, rng)?;
    let (lo, hi) = chord_attempt_range(n);
    let budget = rng.gen_range(lo..=hi);
    let max_attempts = match mode {
        CountMode::Attempts => budget,
        CountMode::Successes => budget.saturating_mul(50).saturating_add(100),
    };

    // Directed edge -> face holding it.
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut faces_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (f, &[a, b, c]) in base.faces.iter().enumerate() {
        face_of.insert((a, b), f);
        face_of.insert((b, c), f);
        face_of.insert((c, a), f);
        for w in [a, b, c] {
            faces_at[w].push(f);
        }
    }

    let mut used = vec![false; base.faces.len()];
    let mut present: std::collections::HashSet<(usize, usize)> = base
        .graph
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    let mut chords = Vec::new();
    let mut attempts = 0;
    while attempts < max_attempts && (mode == CountMode::Attempts || chords.len() < budget) {
        attempts += 1;
        let v = rng.gen_range(0..n);
        let f = *faces_at[v].choose(rng).expect("every vertex lies on a face");
        let face = base.faces[f];
        let at = face.iter().position(|&w| w == v).expect("face contains v");
        let (x, y) = (face[(at + 1) % 3], face[(at + 2) % 3]);
        let g = face_of[&(y, x)];
        let u = base.faces[g].into_iter().find(|&w| w != x && w != y).expect("triangle");
        let key = (u.min(v), u.max(v));
        if u == v || used[f] || used[g] || present.contains(&key) {
            continue;
        }
        used[f] = true;
        used[g] = true;
        present.insert(key);
        chords.push(Chord {
            u: v,
            v: u,
            crossed: (x, y),
        });
    }

    let base_edges = base.graph.edges().iter().map(|e| (e.u, e.v));
    let graph = Graph::new(n, base_edges.chain(chords.iter().map(|c| (c.u, c.v))))?;
    let index: HashMap<(usize, usize), usize> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.u.min(e.v), e.u.max(e.v)), i))
        .collect();
    let pairs = chords
        .iter()
        .map(|c| {
            let chord = index[&(c.u.min(c.v), c.u.max(c.v))];
            let (x, y) = c.crossed;
            (index[&(x.min(y), x.max(y))], chord)
        })
        .collect();
    let certificate = OnePlanarCertificate::from_pairs(graph.edge_count(), pairs);
    Ok(TopologicalOnePlanar {
        graph,
        base,
        chords,
        budget,
        attempts,
        certificate,
    })
}

/// Parameters of one generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub count_mode: CountMode,
}

/// A generated graph with its witness drawing (geometric family) and
/// certificate (1-planar families).
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Arc<Graph>,
    pub drawing: Option<Drawing>,
    pub certificate: Option<OnePlanarCertificate>,
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let mut rng = stream_rng(spec.seed, GENERATOR_STREAM);
    Ok(match spec.family {
        Family::TriPlusX => Generated {
            graph: Arc::new(gen_triangulation_plus_x(spec.n, &mut rng)?.graph),
            drawing: None,
            certificate: None,
        },
        Family::OneplanarGeo => {
            let out = gen_1planar_geometric(spec.n, &mut rng)?;
            Generated {
                graph: out.graph,
                drawing: Some(out.drawing),
                certificate: Some(out.certificate),
            }
        }
        Family::OneplanarTopo => {
            let out = gen_1planar_topological(spec.n, spec.count_mode, &mut rng)?;
            Generated {
                graph: Arc::new(out.graph),
                drawing: None,
                certificate: Some(out.certificate),
            }
        }
    })
}
