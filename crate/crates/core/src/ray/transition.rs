//! Turning a pebble-move sequence on a ray graph into one linkage.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use super::{validate_family, LinkPath, Linkage, RayError, RaySpec};
use crate::graph::Graph;
use crate::pebble::MoveSequence;
use crate::world::{Coord, Truncation};

struct Walk {
    ray: usize,
    /// Position on the current ray where the walk joined it.
    joined: usize,
    /// `x'` on the source ray once the walk has left it.
    x_prime: Option<usize>,
    path: Vec<Coord>,
}

/// A linkage from `(rays[z_i])` to `rays` after `x`, where `z` is the first
/// state of `moves`, inducing `i -> w_i` for the last state `w`.
///
/// Pebbles are pushed one move at a time. The pebble on ray `a` moving to
/// ray `b` takes a shortest path between the tails of `a` and `b` that stays
/// strictly deeper than `x` and everything used so far and avoids every
/// other ray; the walks of pebbles that never move are the rays themselves.
pub fn realize_transition(
    t: &Truncation,
    rays: &[RaySpec],
    moves: &MoveSequence,
    x: &[Coord],
) -> Result<Linkage, RayError> {
    let m = rays.len();
    moves.validate(&Graph::complete(m)).map_err(|e| RayError::BadMoves(e.to_string()))?;
    let family = validate_family(t, rays)?;
    let depth = t.depth();
    let g = t.graph();
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (j, pos) in family.iter().enumerate() {
        for &(_, v) in pos {
            owner[v] = j;
        }
    }
    let mut used = vec![false; n];
    let mut floor: Option<u64> = None;
    for &c in x {
        let v = t.vertex(c).ok_or(RayError::OutsideWindow(c))?;
        used[v] = true;
        floor = floor.max(Some(t.vertex_depth(v)));
    }

    let first = moves.first().positions();
    let mut walks: Vec<Walk> =
        first.iter().map(|&j| Walk { ray: j, joined: 0, x_prime: None, path: Vec::new() }).collect();

    for (step, pair) in moves.states().windows(2).enumerate() {
        let i = (0..first.len()).find(|&i| pair[0].positions()[i] != pair[1].positions()[i]).unwrap();
        let (a, b) = (pair[0].positions()[i], pair[1].positions()[i]);
        let no = |reason: String| RayError::NoLinkage { depth, reason: format!("move {}: {reason}", step + 1) };
        let region = |v: usize| floor.is_none_or(|f| t.vertex_depth(v) > f) && !used[v];
        let joined = walks[i].joined;
        let sources: Vec<(usize, usize)> =
            family[a].iter().copied().filter(|&(p, v)| p >= joined && region(v)).collect();
        let mut is_target = vec![usize::MAX; n];
        for &(p, v) in &family[b] {
            if region(v) {
                is_target[v] = p;
            }
        }

        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &(_, v) in &sources {
            pred[v] = v;
            queue.push_back(v);
        }
        let mut hit = None;
        while let Some(v) = queue.pop_front() {
            if is_target[v] != usize::MAX {
                hit = Some(v);
                break;
            }
            for &w in g.neighbours(v) {
                let free = owner[w] == usize::MAX || owner[w] == b;
                if pred[w] == usize::MAX && free && region(w) {
                    pred[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let Some(end) = hit else {
            return Err(no(format!("no path from ray {a} to ray {b} beyond the used region")));
        };
        let mut p = vec![end];
        while pred[*p.last().unwrap()] != *p.last().unwrap() {
            p.push(pred[*p.last().unwrap()]);
        }
        p.reverse();
        let x_pos = sources.iter().find(|&&(_, v)| v == p[0]).unwrap().0;
        let y_pos = is_target[end];

        // the walk runs along ray a from where it joined up to x', then p
        let w = &mut walks[i];
        let run: Vec<Coord> = (joined..=x_pos).map(|q| rays[a].coord(q)).collect();
        match w.x_prime {
            None => w.x_prime = Some(x_pos),
            Some(_) => w.path.extend_from_slice(&run[1..]),
        }
        if w.path.is_empty() {
            w.path.push(run[run.len() - 1]);
        }
        w.path.extend(p[1..].iter().map(|&v| t.coord(v)));
        for c in run.iter().copied().chain(p.iter().map(|&v| t.coord(v))) {
            if let Some(v) = t.vertex(c) {
                used[v] = true;
                floor = floor.max(Some(t.vertex_depth(v)));
            }
        }
        w.ray = b;
        w.joined = y_pos;
    }

    let xs: FxHashSet<Coord> = x.iter().copied().collect();
    let paths = walks
        .into_iter()
        .enumerate()
        .map(|(i, w)| match w.x_prime {
            Some(xp) => LinkPath { source: i, target: w.ray, x_prime: xp, y: w.joined, path: w.path },
            None => {
                let r = &rays[w.ray];
                let hit = (0..r.escape(t.world(), depth)).rev().find(|&q| xs.contains(&r.coord(q))).unwrap_or(0);
                LinkPath { source: i, target: w.ray, x_prime: hit, y: hit, path: vec![r.coord(hit)] }
            }
        })
        .collect();
    let mut after = x.to_vec();
    after.sort_unstable();
    after.dedup();
    Ok(Linkage { sigma: moves.last().positions().to_vec(), paths, after, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pebble::GameState;
    use crate::ray::check_linkage;
    use crate::world::{truncate, World};

    fn seq(states: &[&[usize]]) -> MoveSequence {
        MoveSequence::new(&Graph::complete(3), states.iter().map(|s| GameState::new(s.to_vec())).collect()).unwrap()
    }

    #[test]
    fn empty_sequence_is_identity() {
        let w = World::full_grid();
        let t = truncate(&w, 8).unwrap();
        let rays = w.canonical_rays(3).unwrap();
        let l = realize_transition(&t, &rays, &seq(&[&[0, 1]]), &[]).unwrap();
        assert_eq!(l.sigma, vec![0, 1]);
        assert!(l.paths.iter().all(|p| p.path.len() == 1));
        let sources = vec![rays[0].clone(), rays[1].clone()];
        check_linkage(&w, &sources, &rays, &l).unwrap();
    }

    #[test]
    fn one_and_two_moves() {
        let w = World::full_grid();
        let t = truncate(&w, 12).unwrap();
        let rays = w.canonical_rays(3).unwrap();
        let x = t.ball(2);
        let sources = vec![rays[0].clone(), rays[1].clone()];
        let l = realize_transition(&t, &rays, &seq(&[&[0, 1], &[2, 1]]), &x).unwrap();
        assert_eq!(l.sigma, vec![2, 1]);
        assert!(l.paths[0].path.len() > 1);
        assert_eq!(l.paths[1].path.len(), 1);
        check_linkage(&w, &sources, &rays, &l).unwrap();

        let l = realize_transition(&t, &rays, &seq(&[&[0, 1], &[2, 1], &[2, 0]]), &x).unwrap();
        assert_eq!(l.sigma, vec![2, 0]);
        check_linkage(&w, &sources, &rays, &l).unwrap();
    }

    #[test]
    fn shallow_window_is_depth_limited() {
        let w = World::full_grid();
        let t = truncate(&w, 3).unwrap();
        let rays = w.canonical_rays(3).unwrap();
        let err = realize_transition(&t, &rays, &seq(&[&[0, 1], &[2, 1]]), &t.ball(3)).unwrap_err();
        assert!(matches!(err, RayError::NoLinkage { depth: 3, .. }));
    }
}
