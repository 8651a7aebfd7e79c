use std::collections::{HashMap, HashSet, VecDeque};

use crossangle::generators::{OnePlanarCertificate, TopologicalOnePlanar, Triangulation};

/// Checks that the faces form a triangulated sphere whose edges are exactly
/// the graph's edges. Such a face list is a planar embedding.
pub fn check_sphere(t: &Triangulation) -> Result<(), String> {
    let n = t.graph.vertex_count();
    let mut directed = HashSet::new();
    for f in &t.faces {
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(format!("degenerate face {f:?}"));
        }
        for k in 0..3 {
            if !directed.insert((f[k], f[(k + 1) % 3])) {
                return Err(format!("directed edge {:?} used twice", (f[k], f[(k + 1) % 3])));
            }
        }
    }
    for &(a, b) in &directed {
        if !directed.contains(&(b, a)) {
            return Err(format!("edge {a}-{b} borders only one face"));
        }
    }
    let face_edges: HashSet<(usize, usize)> = directed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let graph_edges: HashSet<(usize, usize)> = t.graph.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
    if face_edges != graph_edges {
        return Err("faces and graph disagree on edges".into());
    }
    // Each vertex link is one cycle.
    for v in 0..n {
        let mut next = HashMap::new();
        for f in &t.faces {
            if let Some(i) = f.iter().position(|&w| w == v) {
                next.insert(f[(i + 1) % 3], f[(i + 2) % 3]);
            }
        }
        let Some(&start) = next.keys().next() else {
            return Err(format!("vertex {v} on no face"));
        };
        let (mut w, mut steps) = (start, 0);
        loop {
            w = next[&w];
            steps += 1;
            if w == start {
                break;
            }
        }
        if steps != next.len() {
            return Err(format!("link of vertex {v} is not a single cycle"));
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for w in t.graph.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err("disconnected".into());
    }
    let euler = n as i64 - graph_edges.len() as i64 + t.faces.len() as i64;
    if euler != 2 {
        return Err(format!("Euler characteristic {euler}"));
    }
    Ok(())
}

/// Independent check of a topological certificate: every chord joins the
/// apexes of two faces sharing the crossed edge, no face hosts two chords and
/// the per-edge counts follow from the crossing list.
pub fn check_topological(t: &TopologicalOnePlanar) {
    check_sphere(&t.base).unwrap();
    let face_index: HashMap<[usize; 3], usize> = t
        .base
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut k = *f;
            k.sort_unstable();
            (k, i)
        })
        .collect();
    let mut used = HashSet::new();
    for c in &t.chords {
        let (x, y) = c.crossed;
        assert!(t.base.graph.has_edge(x, y));
        assert!(!t.base.graph.has_edge(c.u, c.v));
        for apex in [c.u, c.v] {
            let mut k = [apex, x, y];
            k.sort_unstable();
            let f = face_index[&k];
            assert!(used.insert(f), "face {f} hosts two chords");
        }
    }
    let edges = t.graph.edges();
    let id = |a: usize, b: usize| {
        edges
            .iter()
            .position(|e| e.u.min(e.v) == a.min(b) && e.u.max(e.v) == a.max(b))
            .unwrap()
    };
    let pairs = t
        .chords
        .iter()
        .map(|c| (id(c.u, c.v), id(c.crossed.0, c.crossed.1)))
        .collect();
    assert_eq!(OnePlanarCertificate::from_pairs(edges.len(), pairs), t.certificate);
    assert!(t.certificate.is_one_planar());
}
