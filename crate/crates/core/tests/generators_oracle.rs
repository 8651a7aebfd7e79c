mod common;

use common::oracle::{check_sphere, check_topological};
use crossangle::generators::{
    extra_edge_range, gen_1planar_geometric, gen_1planar_topological, gen_triangulation_plus_x, random_triangulation,
    CountMode,
};
use crossangle::model::crossings_per_edge;

#[test]
fn sphere_check_rejects_broken_embeddings() {
    let mut t = random_triangulation(10, &mut common::rng(0)).unwrap();
    check_sphere(&t).unwrap();
    t.faces[0].swap(0, 1);
    assert!(check_sphere(&t).is_err());
    let mut t = random_triangulation(10, &mut common::rng(0)).unwrap();
    t.faces.pop();
    assert!(check_sphere(&t).is_err());
}

#[test]
fn triangulation_plus_x_counts_and_planarity() {
    for seed in 0..40 {
        let n = 4 + (seed as usize * 37) % 300;
        let g = gen_triangulation_plus_x(n, &mut common::rng(seed)).unwrap();
        check_sphere(&g.base).unwrap();
        assert_eq!(g.base.graph.edge_count(), 3 * n - 6);
        assert_eq!(g.graph.edge_count(), 3 * n - 6 + g.extra);
        let (lo, hi) = extra_edge_range(n);
        let available = n * (n - 1) / 2 - (3 * n - 6);
        assert!(g.extra >= lo.min(available) && g.extra <= hi);
        for e in g.base.graph.edges() {
            assert!(g.graph.has_edge(e.u, e.v));
        }
        g.graph.validate().unwrap();
    }
}

#[test]
fn geometric_witness_recount() {
    for seed in 0..30 {
        let n = 2 + seed as usize * 3;
        let g = gen_1planar_geometric(n, &mut common::rng(seed)).unwrap();
        g.drawing.validate().unwrap();
        let recount = crossings_per_edge(&g.drawing);
        assert!(recount.iter().all(|&c| c <= 1));
        assert_eq!(recount, g.certificate.crossings_per_edge);
    }
}

#[test]
fn topological_certificates_verify() {
    for seed in 0..40 {
        let n = 4 + (seed as usize * 13) % 150;
        for mode in [CountMode::Attempts, CountMode::Successes] {
            let t = gen_1planar_topological(n, mode, &mut common::rng(seed)).unwrap();
            check_topological(&t);
            assert!(t.graph.edge_count() <= 3 * n - 6 + t.budget);
        }
    }
}
