//! Graphs, straight-line drawings, and their text formats.
//!
//! Graph file: a header line `n m` followed by `m` lines `u v` with 0-based
//! vertex ids. Drawing file: `n` lines `id x y`, ids in any order.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{point_in_interior, segments_cross, Point, Segment};

/// Index into [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Self { u, v }
    }

    pub fn has_endpoint(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.has_endpoint(other.u) || self.has_endpoint(other.v)
    }

    /// The endpoint that is not `w`.
    pub fn opposite(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ModelError>,
    },
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },
    #[error("edge ({u}, {v}) is a duplicate")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} appears more than once")]
    RepeatedVertex { vertex: usize },
    #[error("vertex {vertex} has a non-finite coordinate")]
    NonFinite { vertex: usize },
    #[error("vertices {a} and {b} coincide")]
    Coincident { a: usize, b: usize },
    #[error("vertex {vertex} lies on the interior of edge ({u}, {v})")]
    VertexOnEdge { vertex: usize, u: usize, v: usize },
}

impl ModelError {
    /// True for errors caused by well-formed input that violates a graph or
    /// drawing invariant (as opposed to unreadable input).
    pub fn is_validation(&self) -> bool {
        match self {
            ModelError::Io(_) | ModelError::Parse { .. } => false,
            ModelError::AtLine { source, .. } => source.is_validation(),
            _ => true,
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph {
            n,
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
        };
        let mut seen = HashSet::new();
        for (u, v) in edges {
            graph.push_edge(u, v, &mut seen)?;
        }
        Ok(graph)
    }

    fn push_edge(&mut self, u: usize, v: usize, seen: &mut HashSet<(usize, usize)>) -> Result<EdgeId, ModelError> {
        if u >= self.n || v >= self.n {
            return Err(ModelError::VertexOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(ModelError::SelfLoop { u, v });
        }
        let edge = Edge::new(u, v);
        if !seen.insert(edge.key()) {
            return Err(ModelError::DuplicateEdge { u, v });
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(edge);
        self.incident[u].push(id);
        self.incident[v].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(move |&e| self.edges[e.0].opposite(v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).any(|w| w == b)
    }

    /// Re-checks every invariant from scratch.
    pub fn validate(&self) -> Result<(), ModelError> {
        Graph::new(self.n, self.edges.iter().map(|e| (e.u, e.v))).map(|_| ())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
        out
    }
}

fn parse_usize(token: Option<&str>, line: usize, what: &str) -> Result<usize, ModelError> {
    let token = token.ok_or_else(|| ModelError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| ModelError::Parse {
        line,
        message: format!("invalid {what} {token:?}"),
    })
}

fn parse_f64(token: Option<&str>, line: usize, what: &str) -> Result<f64, ModelError> {
    let token = token.ok_or_else(|| ModelError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| ModelError::Parse {
        line,
        message: format!("invalid {what} {token:?}"),
    })
}

fn expect_end<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ModelError> {
    match tokens.next() {
        None => Ok(()),
        Some(extra) => Err(ModelError::Parse {
            line,
            message: format!("unexpected trailing token {extra:?}"),
        }),
    }
}

/// Reads a graph in edge-list format. Blank lines are ignored.
pub fn load_graph<R: BufRead>(reader: R) -> Result<Graph, ModelError> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let (header_line, header) = match lines.next() {
        Some((i, l)) => (i, l?),
        None => {
            return Err(ModelError::Parse {
                line: 1,
                message: "missing header \"n m\"".into(),
            })
        }
    };
    let mut tokens = header.split_whitespace();
    let n = parse_usize(tokens.next(), header_line, "vertex count")?;
    let m = parse_usize(tokens.next(), header_line, "edge count")?;
    expect_end(tokens, header_line)?;

    let mut graph = Graph {
        n,
        edges: Vec::with_capacity(m),
        incident: vec![Vec::new(); n],
    };
    let mut seen = HashSet::with_capacity(m);
    for (line, text) in lines {
        let text = text?;
        if graph.edges.len() == m {
            return Err(ModelError::CountMismatch {
                what: "edges",
                expected: m,
                found: m + 1,
            });
        }
        let mut tokens = text.split_whitespace();
        let u = parse_usize(tokens.next(), line, "vertex id")?;
        let v = parse_usize(tokens.next(), line, "vertex id")?;
        expect_end(tokens, line)?;
        graph.push_edge(u, v, &mut seen).map_err(|source| ModelError::AtLine {
            line,
            source: Box::new(source),
        })?;
    }
    if graph.edges.len() != m {
        return Err(ModelError::CountMismatch {
            what: "edges",
            expected: m,
            found: graph.edges.len(),
        });
    }
    Ok(graph)
}

/// A straight-line drawing: one position per vertex of a shared graph.
///
/// Positions are finite and pairwise distinct, and no vertex lies in the
/// interior of an edge it is not incident to. Every constructor and mutator
/// keeps these invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    graph: Arc<Graph>,
    coords: Vec<Point>,
}

impl Drawing {
    pub fn new(graph: Arc<Graph>, coords: Vec<Point>) -> Result<Self, ModelError> {
        let drawing = Drawing { graph, coords };
        drawing.validate()?;
        Ok(drawing)
    }

    /// Like [`Drawing::new`] but repairs degenerate positions by nudging
    /// offending vertices by a small random offset.
    pub fn new_nudged<R: Rng + ?Sized>(graph: Arc<Graph>, coords: Vec<Point>, rng: &mut R) -> Result<Self, ModelError> {
        let mut drawing = Drawing { graph, coords };
        for (v, p) in drawing.coords.iter().enumerate() {
            if !p.is_finite() {
                return Err(ModelError::NonFinite { vertex: v });
            }
        }
        let scale = {
            let (lo, hi) = drawing.bounding_box();
            (hi.x - lo.x).max(hi.y - lo.y).max(1.0) * 1e-6
        };
        for _ in 0..1000 {
            let culprit = match drawing.validate() {
                Ok(()) => return Ok(drawing),
                Err(ModelError::Coincident { b, .. }) => b,
                Err(ModelError::VertexOnEdge { vertex, .. }) => vertex,
                Err(other) => return Err(other),
            };
            let jitter = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
            drawing.coords[culprit] = drawing.coords[culprit] + jitter;
        }
        drawing.validate().map(|_| drawing)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn positions(&self) -> &[Point] {
        &self.coords
    }

    pub fn position(&self, v: usize) -> Point {
        self.coords[v]
    }

    pub fn segment(&self, e: EdgeId) -> Segment {
        let edge = self.graph.edge(e);
        Segment::new_unchecked(self.coords[edge.u], self.coords[edge.v])
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.graph.edge_ids().map(|e| self.segment(e)).collect()
    }

    pub fn into_positions(self) -> Vec<Point> {
        self.coords
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.graph.vertex_count();
        if self.coords.len() != n {
            return Err(ModelError::CountMismatch {
                what: "coordinates",
                expected: n,
                found: self.coords.len(),
            });
        }
        for (v, p) in self.coords.iter().enumerate() {
            if !p.is_finite() {
                return Err(ModelError::NonFinite { vertex: v });
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (self.coords[a], self.coords[b]);
            pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y)).then(a.cmp(&b))
        });
        for w in order.windows(2) {
            if self.coords[w[0]] == self.coords[w[1]] {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(ModelError::Coincident { a, b });
            }
        }
        for e in self.graph.edges() {
            let s = Segment::new_unchecked(self.coords[e.u], self.coords[e.v]);
            for (w, &p) in self.coords.iter().enumerate() {
                if !e.has_endpoint(w) && point_in_interior(p, &s) {
                    return Err(ModelError::VertexOnEdge {
                        vertex: w,
                        u: e.u,
                        v: e.v,
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether moving `v` to `p` keeps the drawing valid.
    pub fn placement_is_valid(&self, v: usize, p: Point) -> bool {
        if !p.is_finite() {
            return false;
        }
        for (w, &q) in self.coords.iter().enumerate() {
            if w != v && q == p {
                return false;
            }
        }
        // v itself must avoid the other edges.
        for e in self.graph.edges() {
            if !e.has_endpoint(v) {
                let s = Segment::new_unchecked(self.coords[e.u], self.coords[e.v]);
                if point_in_interior(p, &s) {
                    return false;
                }
            }
        }
        // The moved edges must avoid the other vertices.
        for &e in self.graph.incident_edges(v) {
            let other = self.graph.edge(e).opposite(v);
            let s = Segment::new_unchecked(p, self.coords[other]);
            for (w, &q) in self.coords.iter().enumerate() {
                if w != v && w != other && point_in_interior(q, &s) {
                    return false;
                }
            }
        }
        true
    }

    /// Moves `v` to `p` if the result is still a valid drawing.
    pub fn try_move_vertex(&mut self, v: usize, p: Point) -> bool {
        if self.placement_is_valid(v, p) {
            self.coords[v] = p;
            true
        } else {
            false
        }
    }

    pub(crate) fn set_position_unchecked(&mut self, v: usize, p: Point) {
        self.coords[v] = p;
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.coords {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Uniformly scales and translates the drawing into `[0, side]²`.
    ///
    /// Crossing angles are invariant under this map; the result is re-validated
    /// because rounding can in principle create a degeneracy.
    pub fn fit_to_box(&self, side: f64) -> Result<Drawing, ModelError> {
        let (lo, hi) = self.bounding_box();
        let extent = (hi.x - lo.x).max(hi.y - lo.y);
        if self.coords.is_empty() || extent <= 0.0 {
            return Ok(self.clone());
        }
        let scale = side / extent;
        let coords = self.coords.iter().map(|&p| (p - lo) * scale).collect();
        Drawing::new(self.graph.clone(), coords)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, p) in self.coords.iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", v, p.x, p.y);
        }
        out
    }
}

/// Reads a drawing of `graph`. Blank lines are ignored.
pub fn load_drawing<R: BufRead>(graph: Arc<Graph>, reader: R) -> Result<Drawing, ModelError> {
    let n = graph.vertex_count();
    let mut coords: Vec<Option<Point>> = vec![None; n];
    let mut rows = 0;
    for (i, text) in reader.lines().enumerate() {
        let line = i + 1;
        let text = text?;
        if text.trim().is_empty() {
            continue;
        }
        rows += 1;
        let mut tokens = text.split_whitespace();
        let id = parse_usize(tokens.next(), line, "vertex id")?;
        let x = parse_f64(tokens.next(), line, "x coordinate")?;
        let y = parse_f64(tokens.next(), line, "y coordinate")?;
        expect_end(tokens, line)?;
        if id >= n {
            return Err(ModelError::Parse {
                line,
                message: format!("vertex id {id} outside 0..{n}"),
            });
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(ModelError::AtLine {
                line,
                source: Box::new(ModelError::NonFinite { vertex: id }),
            });
        }
        if coords[id].replace(Point::new(x, y)).is_some() {
            return Err(ModelError::AtLine {
                line,
                source: Box::new(ModelError::RepeatedVertex { vertex: id }),
            });
        }
    }
    if rows != n {
        return Err(ModelError::CountMismatch {
            what: "coordinate rows",
            expected: n,
            found: rows,
        });
    }
    let coords = coords.into_iter().map(|p| p.expect("all rows present")).collect();
    Drawing::new(graph, coords)
}

pub fn save_drawing<W: Write>(drawing: &Drawing, mut writer: W) -> std::io::Result<()> {
    writer.write_all(drawing.to_text().as_bytes())
}

pub fn save_graph<W: Write>(graph: &Graph, mut writer: W) -> std::io::Result<()> {
    writer.write_all(graph.to_text().as_bytes())
}

/// Number of unordered edge pairs that cross in their interiors.
pub fn crossing_count(drawing: &Drawing) -> usize {
    let segments = drawing.segments();
    let mut count = 0;
    for i in 0..segments.len() {
        for j in (i + 1)..segments.len() {
            if segments_cross(&segments[i], &segments[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Per-edge number of crossings.
pub fn crossings_per_edge(drawing: &Drawing) -> Vec<usize> {
    let segments = drawing.segments();
    let mut counts = vec![0; segments.len()];
    for i in 0..segments.len() {
        for j in (i + 1)..segments.len() {
            if segments_cross(&segments[i], &segments[j]) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts
}

/// One optimization or layout outcome, as exchanged between pipeline stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph: String,
    pub algorithm: String,
    pub seed: u64,
    pub crossing_angle_deg: f64,
    pub iterations: usize,
    pub wall_ms: f64,
    pub crossings: usize,
    pub tested_pairs: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn path3() -> Arc<Graph> {
        Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap())
    }

    #[test]
    fn loads_path_graph() {
        let g = load_graph(Cursor::new("3 2\n0 1\n1 2")).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn rejects_self_loop() {
        let err = load_graph(Cursor::new("2 1\n0 0")).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("self-loop"), "{err}");
        assert!(err.to_string().starts_with("line 2"), "{err}");
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = load_graph(Cursor::new("2 2\n0 1\n1 0")).unwrap_err();
        assert!(matches!(
            err,
            ModelError::AtLine { line: 3, ref source } if matches!(**source, ModelError::DuplicateEdge { u: 1, v: 0 })
        ));
    }

    #[test]
    fn graph_parse_errors_carry_line_numbers() {
        let err = load_graph(Cursor::new("3 2\n0 1\n1 x")).unwrap_err();
        assert!(matches!(err, ModelError::Parse { line: 3, .. }), "{err}");
        assert!(!err.is_validation());
        let err = load_graph(Cursor::new("3 2\n0 1")).unwrap_err();
        assert!(matches!(
            err,
            ModelError::CountMismatch {
                expected: 2,
                found: 1,
                ..
            }
        ));
        let err = load_graph(Cursor::new("3 1\n0 5")).unwrap_err();
        assert!(err.is_validation());
    }

    #[test]
    fn drawing_round_trip() {
        let g = path3();
        let d = Drawing::new(
            g.clone(),
            vec![
                Point::new(0.1, -2.5),
                Point::new(1e5 / 3.0, 7.0),
                Point::new(-0.0, 1e-300),
            ],
        )
        .unwrap();
        let text = d.to_text();
        let back = load_drawing(g, Cursor::new(text)).unwrap();
        assert_eq!(back, d);
        for (a, b) in back.positions().iter().zip(d.positions()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn drawing_rows_in_any_order() {
        let d = load_drawing(path3(), Cursor::new("2 4 4\n0 0 0\n1 1 0\n")).unwrap();
        assert_eq!(d.position(2), Point::new(4.0, 4.0));
    }

    #[test]
    fn drawing_errors() {
        let err = load_drawing(path3(), Cursor::new("0 0 0\n1 1 0\n")).unwrap_err();
        assert!(matches!(
            err,
            ModelError::CountMismatch {
                expected: 3,
                found: 2,
                ..
            }
        ));
        let err = load_drawing(path3(), Cursor::new("0 0 0\n1 nan 0\n2 3 3\n")).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("non-finite"), "{err}");
        let err = load_drawing(path3(), Cursor::new("0 0 0\n1 0 0\n2 3 3\n")).unwrap_err();
        assert!(matches!(err, ModelError::Coincident { a: 0, b: 1 }));
        let err = load_drawing(path3(), Cursor::new("0 0 0\n0 1 0\n2 3 3\n")).unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");
    }

    #[test]
    fn vertex_on_edge_rejected() {
        let g = Arc::new(Graph::new(3, [(0, 1)]).unwrap());
        let err = Drawing::new(g, vec![Point::new(0., 0.), Point::new(2., 0.), Point::new(1., 0.)]).unwrap_err();
        assert!(matches!(err, ModelError::VertexOnEdge { vertex: 2, u: 0, v: 1 }));
    }

    #[test]
    fn placement_checks() {
        let g = Arc::new(Graph::new(4, [(0, 1), (2, 3)]).unwrap());
        let mut d = Drawing::new(
            g,
            vec![
                Point::new(0., 0.),
                Point::new(4., 0.),
                Point::new(1., 1.),
                Point::new(1., 3.),
            ],
        )
        .unwrap();
        // onto another vertex
        assert!(!d.placement_is_valid(3, Point::new(0., 0.)));
        // onto the interior of edge 0-1
        assert!(!d.placement_is_valid(3, Point::new(2., 0.)));
        // edge 2-3 would pass through vertex 1
        assert!(!d.placement_is_valid(3, Point::new(7., -1.)));
        assert!(d.try_move_vertex(3, Point::new(1., -1.)));
        assert_eq!(d.position(3), Point::new(1., -1.));
        d.validate().unwrap();
    }

    #[test]
    fn crossing_counts() {
        let k3 = Arc::new(Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap());
        let d = Drawing::new(k3, vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)]).unwrap();
        assert_eq!(crossing_count(&d), 0);

        let k4 = Arc::new(Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap());
        let circle: Vec<Point> = (0..4)
            .map(|i| {
                let t = std::f64::consts::FRAC_PI_2 * i as f64 + 0.3;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        let d = Drawing::new(k4, circle).unwrap();
        assert_eq!(crossing_count(&d), 1);
        assert_eq!(crossings_per_edge(&d), vec![0, 1, 0, 0, 1, 0]);

        let two = Arc::new(Graph::new(4, [(0, 1), (2, 3)]).unwrap());
        let d = Drawing::new(
            two,
            vec![
                Point::new(0., 0.),
                Point::new(2., 2.),
                Point::new(0., 2.),
                Point::new(2., 0.),
            ],
        )
        .unwrap();
        assert_eq!(crossing_count(&d), 1);
    }

    #[test]
    fn fit_to_box_preserves_shape() {
        let d = Drawing::new(
            path3(),
            vec![Point::new(-5., 1.), Point::new(5., 3.), Point::new(0., -4.)],
        )
        .unwrap();
        let f = d.fit_to_box(100.0).unwrap();
        let (lo, hi) = f.bounding_box();
        assert_eq!(lo, Point::new(0.0, 0.0));
        assert_eq!(hi.x, 100.0);
        assert!(hi.y <= 100.0);
    }

    #[test]
    fn result_record_json_fields() {
        let r = ResultRecord {
            graph: "g0".into(),
            algorithm: "precise".into(),
            seed: 7,
            crossing_angle_deg: 45.0,
            iterations: 10,
            wall_ms: 1.5,
            crossings: 3,
            tested_pairs: 99,
        };
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in [
            "graph",
            "algorithm",
            "seed",
            "crossing_angle_deg",
            "iterations",
            "wall_ms",
            "crossings",
            "tested_pairs",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
