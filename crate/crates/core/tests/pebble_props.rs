mod common;

use std::collections::HashSet;

use common::{distance, graph_of, iddfs, labelled_reach};
use pebblekit::graph::Graph;
use pebblekit::pebble::{GameState, PebbleGame};
use proptest::prelude::*;

/// A graph on at most 5 vertices and two states with the same pebble count.
fn instance() -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    (2..=5usize).prop_flat_map(|n| (0..1u64 << (n * (n - 1) / 2), 1..=3.min(n - 1), Just(n))).prop_flat_map(
        |(mask, k, n)| {
            let g = graph_of(n, mask);
            let state = Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| p[..k].to_vec());
            (Just(g), state.clone(), state)
        },
    )
}

fn st(v: &[usize]) -> GameState {
    GameState::new(v.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn achievability_is_symmetric((g, x, y) in instance()) {
        let game = PebbleGame::new(&g);
        prop_assert_eq!(game.is_achievable(&st(&x), &st(&y)).unwrap(), game.is_achievable(&st(&y), &st(&x)).unwrap());
        prop_assert_eq!(game.is_achievable(&st(&x), &st(&y)).unwrap(), labelled_reach(&g, &x).contains(&y));
    }

    #[test]
    fn solutions_are_legal_and_shortest((g, x, y) in instance()) {
        let game = PebbleGame::new(&g);
        match game.solve(&st(&x), &st(&y)).unwrap() {
            Some(seq) => {
                seq.validate(&g).unwrap();
                prop_assert_eq!(seq.first().positions(), &x[..]);
                prop_assert_eq!(seq.last().positions(), &y[..]);
                for w in seq.states().windows(2) {
                    let moved = (0..x.len()).filter(|&i| w[0].positions()[i] != w[1].positions()[i]).count();
                    prop_assert_eq!(moved, 1);
                }
                prop_assert_eq!(Some(seq.moves()), iddfs(&g, &x, &y, seq.moves()));
            }
            None => prop_assert_eq!(distance(&g, &x, &y), None),
        }
    }

    #[test]
    fn reachability_classes_partition((g, x, _y) in instance()) {
        let game = PebbleGame::new(&g);
        let class = |s: &[usize]| -> HashSet<Vec<usize>> {
            game.reachable_states(&st(s)).unwrap().into_iter().map(GameState::into_positions).collect()
        };
        let cx = class(&x);
        prop_assert_eq!(&cx, &labelled_reach(&g, &x));
        for y in common::all_states(g.n(), x.len()) {
            prop_assert_eq!(cx.contains(&y), class(&y) == cx);
        }
    }
}

#[test]
fn transitivity_over_random_triples() {
    use rand::seq::IndexedRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in 3..=5 {
        for mask in (0..1u64 << (n * (n - 1) / 2)).step_by(3) {
            let g = graph_of(n, mask);
            let game = PebbleGame::new(&g);
            for k in 1..=2.min(n - 1) {
                let states = common::all_states(n, k);
                for _ in 0..4 {
                    let x = states.choose(&mut rng).unwrap();
                    let reach: Vec<Vec<usize>> = labelled_reach(&g, x).into_iter().collect();
                    let y = reach.choose(&mut rng).unwrap();
                    let z = labelled_reach(&g, y).into_iter().next().unwrap();
                    assert!(game.is_achievable(&st(x), &st(y)).unwrap());
                    assert!(game.is_achievable(&st(y), &st(&z)).unwrap());
                    assert!(game.is_achievable(&st(x), &st(&z)).unwrap());
                }
            }
        }
    }
}

#[test]
fn four_cycle_swap_takes_four_moves() {
    let g = Graph::cycle(4);
    let seq = PebbleGame::new(&g).solve(&st(&[0, 1]), &st(&[1, 0])).unwrap().unwrap();
    assert_eq!(seq.moves(), 4);
    assert_eq!(distance(&g, &[0, 1], &[1, 0]), Some(4));
    // on a path the order of the pebbles never changes
    assert_eq!(PebbleGame::new(&Graph::path(5)).solve(&st(&[0, 1]), &st(&[1, 0])).unwrap(), None);
}
