//! Initial drawings: uniform random placement, Fruchterman–Reingold with
//! optional crossing-angle forces, and stress majorization.
//!
//! The crossing forces act on the four endpoints of a crossing pair `uv`, `xy`.
//! All of them vanish when the two edges cross at a right angle.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::Rng;

use crate::geometry::{interior_intersection, Point, Segment};
use crate::model::{Drawing, EdgeId, Graph, ModelError};
use crate::sampler::stream_rng;

/// RNG stream for layout algorithms.
pub const LAYOUT_STREAM: u64 = 2;

/// Below this length the cage force is zero.
const CAGE_UNDERFLOW: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum LayoutError {
    #[error("edges {0:?} and {1:?} do not cross")]
    NotCrossing(EdgeId, EdgeId),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `n` points uniform in `[0, side]²`, redrawn until the drawing is valid.
pub fn random_layout<R: Rng + ?Sized>(graph: &Arc<Graph>, side: f64, rng: &mut R) -> Drawing {
    loop {
        let coords = (0..graph.vertex_count())
            .map(|_| Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side)))
            .collect();
        if let Ok(d) = Drawing::new(graph.clone(), coords) {
            return d;
        }
    }
}

/// Forces on the endpoints of a crossing pair, in the order `[u, v, x, y]`.
pub type EndpointForces = [Point; 4];

fn unit(p: Point) -> Point {
    p.normalized()
}

/// Cosine of the angle between two direction vectors. Exactly zero whenever
/// their dot product is.
fn cos_between(a: Point, b: Point) -> f64 {
    let dot = a.dot(b);
    if dot == 0.0 {
        0.0
    } else {
        dot / (a.norm() * b.norm())
    }
}

/// Cosine force for the crossing edges `uv` and `xy`.
///
/// Each endpoint is pushed with magnitude `k·cos α` (α the acute crossing
/// angle) parallel to the other edge, away from the endpoint of that edge it
/// forms the acute angle with. The four forces sum to zero.
pub fn cosine_forces(u: Point, v: Point, x: Point, y: Point, k: f64) -> EndpointForces {
    let c = cos_between(v - u, x - y);
    // For v: if x lies on the acute side (c > 0) push towards y, else towards x.
    let fv = unit(x - y) * (-k * c);
    let fx = unit(v - u) * (-k * c);
    [-fv, fv, fx, -fx]
}

/// `k·log(l_wz / l*)` towards `z`, where `l*` is the hypotenuse of the right
/// triangle with legs `|wp|` and `|zp|` and `cos_wpz` the cosine at `p`.
fn cage_term(w: Point, z: Point, p: Point, cos_wpz: f64, k: f64) -> Point {
    let (lw, lz) = (w.distance(p), z.distance(p));
    let legs = lw * lw + lz * lz;
    if w.distance(z) < CAGE_UNDERFLOW || legs.sqrt() < CAGE_UNDERFLOW {
        return Point::default();
    }
    // l_wz² = l*² − 2·lw·lz·cos, so log(l_wz / l*) = ½·ln(1 − 2·lw·lz·cos / l*²).
    let log_ratio = 0.5 * (-2.0 * lw * lz * cos_wpz / legs).ln_1p();
    unit(z - w) * (k * log_ratio)
}

/// One component `F_cage(w, z)` for endpoints `w`, `z` of two edges crossing
/// at `p`: pulls `w` towards `z` when the angle at `p` is obtuse and pushes it
/// away when acute.
pub fn cage_component(w: Point, z: Point, p: Point, k: f64) -> Point {
    let (a, b) = (w - p, z - p);
    if a.norm() < CAGE_UNDERFLOW || b.norm() < CAGE_UNDERFLOW {
        return Point::default();
    }
    cage_term(w, z, p, cos_between(a, b), k)
}

/// Cage force on all four endpoints; `p` is the crossing point.
///
/// The angle at `p` is taken from the edge directions rather than from `p`,
/// so a right-angle crossing yields exactly zero.
pub fn cage_forces(u: Point, v: Point, x: Point, y: Point, p: Point, k: f64) -> EndpointForces {
    let c = cos_between(v - u, y - x);
    // w − p points along ±(v − u) and z − p along ±(y − x).
    let on = |w: Point, sw: f64, a: Point, sa: f64, b: Point, sb: f64| {
        cage_term(w, a, p, sw * sa * c, k) + cage_term(w, b, p, sw * sb * c, k)
    };
    [
        on(u, -1.0, x, -1.0, y, 1.0),
        on(v, 1.0, x, -1.0, y, 1.0),
        on(x, -1.0, u, -1.0, v, 1.0),
        on(y, 1.0, u, -1.0, v, 1.0),
    ]
}

/// One component `F_ang` for an endpoint whose own edge points along `own`
/// (towards the endpoint) and the other edge along `other`.
///
/// Magnitude `k·|π/2 − α'|/α'` where `α'` is the angle between the two
/// directions; the force is perpendicular to their bisector and oriented so
/// that moving the endpoint along it turns `α'` towards a right angle.
pub fn angular_component(own: Point, other: Point, k: f64) -> Point {
    let alpha = own.cross(other).abs().atan2(own.dot(other));
    let deviation = alpha - std::f64::consts::FRAC_PI_2;
    if deviation == 0.0 || alpha == 0.0 {
        return Point::default();
    }
    let (d1, d2) = (unit(own), unit(other));
    // d2 − d1 is perpendicular to the bisector d1 + d2 and points from d1's
    // side towards d2's side.
    let a = unit(d2 - d1);
    a * (k * deviation.signum() * deviation.abs() / alpha)
}

/// Angular force on all four endpoints, summing the components for both
/// orientations of the other edge.
pub fn angular_forces(u: Point, v: Point, x: Point, y: Point, k: f64) -> EndpointForces {
    let on = |own: Point, other: Point| angular_component(own, other, k) + angular_component(own, -other, k);
    let (uv, xy) = (v - u, y - x);
    [on(-uv, xy), on(uv, xy), on(-xy, uv), on(xy, uv)]
}

fn crossing_endpoints(drawing: &Drawing, uv: EdgeId, xy: EdgeId) -> Result<([Point; 4], Point), LayoutError> {
    let (s1, s2) = (drawing.segment(uv), drawing.segment(xy));
    let p = interior_intersection(&s1, &s2).ok_or(LayoutError::NotCrossing(uv, xy))?;
    Ok(([s1.a(), s1.b(), s2.a(), s2.b()], p))
}

/// Cosine force on the endpoints `[u, v, x, y]` of two crossing edges of a drawing.
pub fn cosine_force(drawing: &Drawing, uv: EdgeId, xy: EdgeId, k_cos: f64) -> Result<EndpointForces, LayoutError> {
    let ([u, v, x, y], _) = crossing_endpoints(drawing, uv, xy)?;
    Ok(cosine_forces(u, v, x, y, k_cos))
}

pub fn cage_force(drawing: &Drawing, uv: EdgeId, xy: EdgeId, k_cage: f64) -> Result<EndpointForces, LayoutError> {
    let ([u, v, x, y], p) = crossing_endpoints(drawing, uv, xy)?;
    Ok(cage_forces(u, v, x, y, p, k_cage))
}

pub fn angular_force(drawing: &Drawing, uv: EdgeId, xy: EdgeId, k_ang: f64) -> Result<EndpointForces, LayoutError> {
    let ([u, v, x, y], _) = crossing_endpoints(drawing, uv, xy)?;
    Ok(angular_forces(u, v, x, y, k_ang))
}

/// Which crossing-angle forces are added to the classic FR forces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingForces {
    #[default]
    None,
    Cosine,
    CageAngular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForceConfig {
    pub k_cos: f64,
    pub k_cage: f64,
    pub k_ang: f64,
    pub iterations: usize,
    /// Ideal edge length; `None` means `√(area/n)` of the initial drawing's
    /// bounding square.
    pub ideal_length: Option<f64>,
    /// Starting temperature as a fraction of the bounding square's side.
    /// Cools linearly to zero.
    pub initial_temperature: f64,
    pub forces: CrossingForces,
}

impl Default for ForceConfig {
    fn default() -> Self {
        ForceConfig {
            k_cos: 1.0,
            k_cage: 1.0,
            k_ang: 1.0,
            iterations: 500,
            ideal_length: None,
            initial_temperature: 0.1,
            forces: CrossingForces::None,
        }
    }
}

impl ForceConfig {
    pub fn with_forces(forces: CrossingForces) -> Self {
        ForceConfig {
            forces,
            ..ForceConfig::default()
        }
    }
}

fn bounding_side(points: &[Point]) -> f64 {
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi.x - lo.x).max(hi.y - lo.y)
}

/// Crossing pairs by brute force, as `(e, f, crossing point)`.
fn crossing_pairs(graph: &Graph, pos: &[Point]) -> Vec<(usize, usize, Point)> {
    let segs: Vec<Option<Segment>> = graph
        .edges()
        .iter()
        .map(|e| Segment::new(pos[e.u], pos[e.v]).ok())
        .collect();
    let mut out = Vec::new();
    for (i, si) in segs.iter().enumerate() {
        let Some(si) = si else { continue };
        for (j, sj) in segs.iter().enumerate().skip(i + 1) {
            let Some(sj) = sj else { continue };
            if let Some(p) = interior_intersection(si, sj) {
                out.push((i, j, p));
            }
        }
    }
    out
}

/// Fruchterman–Reingold layout starting from `init`, with the selected
/// crossing forces summed over all currently crossing pairs.
///
/// Crossing forces are unit-free, so they are scaled by the ideal edge length
/// to be commensurate with the classic forces.
pub fn fr_layout<R: Rng + ?Sized>(init: &Drawing, cfg: &ForceConfig, rng: &mut R) -> Result<Drawing, LayoutError> {
    if cfg.iterations == 0 {
        return Ok(init.clone());
    }
    let graph = init.shared_graph().clone();
    let n = graph.vertex_count();
    let mut pos = init.positions().to_vec();
    if n < 2 {
        return Ok(init.clone());
    }
    let side = bounding_side(&pos).max(f64::MIN_POSITIVE);
    let k = cfg.ideal_length.unwrap_or_else(|| (side * side / n as f64).sqrt());
    let t0 = cfg.initial_temperature * side;
    let mut disp = vec![Point::default(); n];

    for iter in 0..cfg.iterations {
        disp.iter_mut().for_each(|d| *d = Point::default());
        for i in 0..n {
            for j in (i + 1)..n {
                let mut delta = pos[i] - pos[j];
                let mut dist = delta.norm();
                if dist == 0.0 {
                    delta = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (k * 1e-3);
                    dist = delta.norm().max(f64::MIN_POSITIVE);
                }
                let push = delta * (k * k / (dist * dist));
                disp[i] = disp[i] + push;
                disp[j] = disp[j] - push;
            }
        }
        for e in graph.edges() {
            let delta = pos[e.u] - pos[e.v];
            let pull = delta * (delta.norm() / k);
            disp[e.u] = disp[e.u] - pull;
            disp[e.v] = disp[e.v] + pull;
        }
        if cfg.forces != CrossingForces::None {
            for (a, b, p) in crossing_pairs(&graph, &pos) {
                let (ea, eb) = (graph.edges()[a], graph.edges()[b]);
                let (u, v, x, y) = (pos[ea.u], pos[ea.v], pos[eb.u], pos[eb.v]);
                let forces = match cfg.forces {
                    CrossingForces::Cosine => cosine_forces(u, v, x, y, cfg.k_cos),
                    CrossingForces::CageAngular => {
                        let cage = cage_forces(u, v, x, y, p, cfg.k_cage);
                        let ang = angular_forces(u, v, x, y, cfg.k_ang);
                        [cage[0] + ang[0], cage[1] + ang[1], cage[2] + ang[2], cage[3] + ang[3]]
                    }
                    CrossingForces::None => unreachable!(),
                };
                for (w, f) in [ea.u, ea.v, eb.u, eb.v].into_iter().zip(forces) {
                    disp[w] = disp[w] + f * k;
                }
            }
        }
        let temperature = t0 * (1.0 - iter as f64 / cfg.iterations as f64);
        for (p, d) in pos.iter_mut().zip(&disp) {
            let len = d.norm();
            if len > 0.0 && len.is_finite() {
                *p = *p + *d * (len.min(temperature) / len);
            }
        }
    }
    Ok(Drawing::new_nudged(graph, pos, rng)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StressConfig {
    pub max_iterations: usize,
    /// Stop once the relative stress decrease of an iteration drops below this.
    pub tolerance: f64,
    /// Pair weights are `d_ij^exponent`.
    pub weight_exponent: f64,
}

impl Default for StressConfig {
    fn default() -> Self {
        StressConfig {
            max_iterations: 200,
            tolerance: 1e-4,
            weight_exponent: -2.0,
        }
    }
}

/// Connected components, each as a sorted vertex list, ordered by smallest vertex.
pub fn connected_components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn bfs_distances(graph: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; graph.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued vertices have a distance");
        for w in graph.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

struct StressProblem {
    vertices: Vec<usize>,
    /// Graph distances within the component, indexed by local ids.
    dist: Vec<Vec<f64>>,
    weight: Vec<Vec<f64>>,
}

impl StressProblem {
    fn new(graph: &Graph, vertices: Vec<usize>, exponent: f64) -> Self {
        let local: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let k = vertices.len();
        let mut dist = vec![vec![0.0; k]; k];
        for (i, &v) in vertices.iter().enumerate() {
            for (w, d) in bfs_distances(graph, v).into_iter().enumerate() {
                if let (Some(d), Some(&j)) = (d, local.get(&w)) {
                    dist[i][j] = d as f64;
                }
            }
        }
        let weight = dist
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&d| if d > 0.0 { d.powf(exponent) } else { 0.0 })
                    .collect()
            })
            .collect();
        StressProblem { vertices, dist, weight }
    }

    fn stress(&self, x: &[Point]) -> f64 {
        let k = x.len();
        let mut total = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                let r = x[i].distance(x[j]) - self.dist[i][j];
                total += self.weight[i][j] * r * r;
            }
        }
        total
    }

    /// One sweep of per-vertex majorization updates, in place.
    fn sweep(&self, x: &mut [Point]) {
        let k = x.len();
        for i in 0..k {
            let mut num = Point::default();
            let mut den = 0.0;
            for j in 0..k {
                if i == j {
                    continue;
                }
                let w = self.weight[i][j];
                let delta = x[i] - x[j];
                let len = delta.norm();
                let pull = if len > 0.0 {
                    delta * (self.dist[i][j] / len)
                } else {
                    Point::default()
                };
                num = num + (x[j] + pull) * w;
                den += w;
            }
            if den > 0.0 {
                x[i] = num * (1.0 / den);
            }
        }
    }
}

/// Result of [`stress_layout_traced`]: the drawing and the stress value of
/// each component after every sweep.
pub struct StressRun {
    pub drawing: Drawing,
    pub history: Vec<Vec<f64>>,
}

/// Stress majorization on graph-theoretic distances with unit edge length.
/// Components are laid out independently and placed side by side.
pub fn stress_layout(init: &Drawing, cfg: &StressConfig) -> Result<Drawing, LayoutError> {
    stress_layout_traced(init, cfg).map(|run| run.drawing)
}

pub fn stress_layout_traced(init: &Drawing, cfg: &StressConfig) -> Result<StressRun, LayoutError> {
    if cfg.max_iterations == 0 {
        return Ok(StressRun {
            drawing: init.clone(),
            history: Vec::new(),
        });
    }
    let graph = init.shared_graph().clone();
    let mut pos = init.positions().to_vec();
    let mut history = Vec::new();
    let mut offset_x = 0.0;
    for comp in connected_components(&graph) {
        let problem = StressProblem::new(&graph, comp, cfg.weight_exponent);
        let mut x: Vec<Point> = problem.vertices.iter().map(|&v| pos[v]).collect();
        let mut values = vec![problem.stress(&x)];
        for _ in 0..cfg.max_iterations {
            problem.sweep(&mut x);
            let prev = *values.last().expect("non-empty");
            let now = problem.stress(&x);
            values.push(now);
            if prev <= 0.0 || (prev - now) / prev < cfg.tolerance {
                break;
            }
        }
        let (lo_x, lo_y, hi_x) = x
            .iter()
            .fold((f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY), |acc, p| {
                (acc.0.min(p.x), acc.1.min(p.y), acc.2.max(p.x))
            });
        for (&v, p) in problem.vertices.iter().zip(&x) {
            pos[v] = Point::new(p.x - lo_x + offset_x, p.y - lo_y);
        }
        offset_x += hi_x - lo_x + 1.0;
        history.push(values);
    }
    let drawing = Drawing::new_nudged(graph, pos, &mut stream_rng(0, LAYOUT_STREAM))?;
    Ok(StressRun { drawing, history })
}
