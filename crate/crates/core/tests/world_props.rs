use pebblekit::graph::Graph;
use pebblekit::ray::{ray_graph, RaySpec};
use pebblekit::world::{truncate, World};
use proptest::prelude::*;

fn worlds() -> Vec<World> {
    vec![
        World::full_grid(),
        World::half_grid(),
        World::hex_half_grid(),
        World::product_z(Graph::cycle(4)).unwrap(),
        World::product_n(Graph::star(3)).unwrap(),
        World::dominated_ray(3).unwrap(),
        World::inflated_dominated_ray(3).unwrap(),
    ]
}

#[test]
fn interior_degrees_match_the_world() {
    for w in worlds() {
        for d in 1..=8 {
            let t = truncate(&w, d).unwrap();
            let g = t.graph();
            for v in 0..g.n() {
                if t.boundary().contains(&v) {
                    continue;
                }
                if let Some(nb) = w.neighbours(t.coord(v)) {
                    assert_eq!(g.degree(v), nb.len(), "{:?} at {:?}", w.kind(), t.coord(v));
                }
            }
        }
    }
    let t = truncate(&World::full_grid(), 6).unwrap();
    assert!((0..t.graph().n()).filter(|v| !t.boundary().contains(v)).all(|v| t.graph().degree(v) == 4));
    let t = truncate(&World::hex_half_grid(), 6).unwrap();
    for v in (0..t.graph().n()).filter(|v| !t.boundary().contains(v)) {
        let deg = t.graph().degree(v);
        assert!(deg == 3 || (t.coord(v)[1] == 0 && deg == 2));
    }
}

#[test]
fn windows_are_nested_induced_subgraphs() {
    for w in worlds() {
        for d in 1..=6 {
            let (small, big) = (truncate(&w, d).unwrap(), truncate(&w, d + 1).unwrap());
            for u in 0..small.graph().n() {
                let bu = big.vertex(small.coord(u)).expect("window grows");
                for v in 0..small.graph().n() {
                    let bv = big.vertex(small.coord(v)).unwrap();
                    assert_eq!(small.graph().has_edge(u, v), big.graph().has_edge(bu, bv));
                }
            }
        }
    }
}

#[test]
fn canonical_rays_are_disjoint_at_every_depth() {
    for w in worlds() {
        let m = (1..=8).take_while(|&m| w.canonical_rays(m).is_ok()).last().unwrap();
        let rays = w.canonical_rays(m).unwrap();
        for d in 1..=12 {
            let t = truncate(&w, d).unwrap();
            let mut seen = vec![false; t.graph().n()];
            for r in &rays {
                for (_, v) in r.window_positions(&t) {
                    assert!(!seen[v], "{:?} depth {d}", w.kind());
                    seen[v] = true;
                }
            }
        }
    }
}

#[test]
fn one_ended_families_have_connected_ray_graphs() {
    let cases = [
        (World::full_grid(), 5),
        (World::half_grid(), 4),
        (World::hex_half_grid(), 3),
        (World::product_n(Graph::path(3)).unwrap(), 3),
        (World::product_z(Graph::cycle(5)).unwrap(), 5),
    ];
    for (w, m) in cases {
        let rg = ray_graph(&w, &w.canonical_rays(m).unwrap(), 8, 3).unwrap();
        assert!(rg.stabilized, "{:?}", w.kind());
        assert!(rg.to_graph().is_connected(), "{:?}", w.kind());
    }
}

#[test]
fn double_ray_ends_are_separated() {
    let w = World::product_z(Graph::path(1)).unwrap();
    let up = RaySpec::new(vec![[0, 0]], vec![[0, 1]], 0);
    let down = RaySpec::new(vec![[0, -1]], vec![[0, -1]], 1);
    let rg = ray_graph(&w, &[up, down], 4, 3).unwrap();
    assert!(rg.stabilized);
    assert!(rg.edges.is_empty());
    assert!(!rg.to_graph().is_connected());
}

#[test]
fn sub_world_ray_graph_embeds() {
    // the half grid sits inside the full grid; extra rays below it are
    // never in the way of paths above it
    let full = World::full_grid();
    let half = World::half_grid();
    let r: Vec<RaySpec> = half.canonical_rays(3).unwrap();
    let mut family = r.clone();
    family.extend((0..3).map(|i| RaySpec::new(vec![[i as i64 * 2 - 2, -1]], vec![[0, -1]], 3 + i)));
    for d0 in [6, 9] {
        let small = ray_graph(&half, &r, d0, 3).unwrap();
        let large = ray_graph(&full, &family, d0, 3).unwrap();
        for e in &small.edges {
            assert!(large.edges.contains(e), "{e:?} missing at d0 = {d0}");
        }
    }
}

#[test]
fn dominated_ray_spine_has_degree_k() {
    for k in 3..=4 {
        let w = World::inflated_dominated_ray(k).unwrap();
        let rays = w.canonical_rays(k + 1).unwrap();
        let rg = ray_graph(&w, &rays, 6, 3).unwrap();
        assert!(rg.stabilized);
        let g = rg.to_graph();
        // ray 0 runs up the centre of the star
        assert_eq!(g.degree(0), k);
        assert!((1..=k).all(|i| g.has_edge(0, i)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ray_coordinates_follow_the_period(prefix_len in 1usize..4, steps in proptest::collection::vec(0usize..4, 1..4), p in 0usize..40) {
        let dirs = [[0, 1], [1, 0], [0, -1], [-1, 0]];
        let prefix: Vec<[i64; 2]> = (0..prefix_len as i64).map(|i| [i, 0]).collect();
        let period: Vec<[i64; 2]> = steps.iter().map(|&s| dirs[s]).collect();
        let r = RaySpec::new(prefix.clone(), period.clone(), 0);
        let c = r.coord(p);
        let next = r.coord(p + 1);
        if p + 1 < prefix_len {
            prop_assert_eq!(next, prefix[p + 1]);
        } else {
            let step = period[(p + 1 - prefix_len) % period.len()];
            prop_assert_eq!(next, [c[0] + step[0], c[1] + step[1]]);
        }
    }
}
