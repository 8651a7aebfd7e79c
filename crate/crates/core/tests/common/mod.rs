#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use crossangle::generators::random_gnm;
use crossangle::geometry::{point_in_interior, Segment};
use crossangle::layouts::random_layout;
use crossangle::model::{Drawing, Graph};
use crossangle::sampler::stream_rng;
use crossangle::Point;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TEST_STREAM: u64 = 99;

pub fn rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, TEST_STREAM)
}

/// Random G(n, m) drawn uniformly in a square.
pub fn random_drawing(n: usize, m: usize, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let g = Arc::new(random_gnm(n, m, &mut r).unwrap());
    random_layout(&g, 1000.0, &mut r)
}

/// Up to `m` random edges on `n` distinct integer points in `[0, side)²`;
/// candidate edges through another vertex are skipped.
pub fn integer_drawing(n: usize, m: usize, side: i64, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let mut cells: Vec<(i64, i64)> = (0..side).flat_map(|x| (0..side).map(move |y| (x, y))).collect();
    cells.shuffle(&mut r);
    let coords: Vec<Point> = cells[..n]
        .iter()
        .map(|&(x, y)| Point::new(x as f64, y as f64))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut r);
    let edges: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(u, v)| {
            let s = Segment::new(coords[u], coords[v]).unwrap();
            !coords.iter().any(|&p| point_in_interior(p, &s))
        })
        .take(m)
        .collect();
    Drawing::new(Arc::new(Graph::new(n, edges).unwrap()), coords).unwrap()
}

/// Points scattered around a line, so every edge is nearly parallel to every
/// other and crossings have tiny angles.
pub fn near_parallel_drawing(n: usize, m: usize, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let g = Arc::new(random_gnm(n, m, &mut r).unwrap());
    let theta: f64 = r.gen_range(-1.5..1.5);
    let (c, s) = (theta.cos(), theta.sin());
    loop {
        let coords = (0..n)
            .map(|_| {
                let t: f64 = r.gen_range(0.0..1000.0);
                let off: f64 = r.gen_range(-1.0..1.0);
                Point::new(t * c - off * s, t * s + off * c)
            })
            .collect();
        if let Ok(d) = Drawing::new(g.clone(), coords) {
            return d;
        }
    }
}

/// A star with its leaves on a circle: no two edges cross.
pub fn crossing_free_drawing(leaves: usize, seed: u64) -> Drawing {
    let mut r = rng(seed);
    let g = Arc::new(Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap());
    let phase: f64 = r.gen_range(0.0..1.0);
    let mut coords = vec![Point::new(0.0, 0.0)];
    for i in 0..leaves {
        let a = (i as f64 + phase) * std::f64::consts::TAU / leaves as f64;
        coords.push(Point::new(a.cos(), a.sin()) * 100.0);
    }
    Drawing::new(g, coords).unwrap()
}

pub fn median(values: &[f64]) -> f64 {
    crossangle::eval::summarize_values(values).unwrap().median
}
