//! Literal verification of a linkage: every transitioned walk is traced
//! coordinate by coordinate, independently of how the linkage was found.

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use super::{Linkage, RaySpec};
use crate::world::{Coord, World};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkageViolation {
    #[error("sigma is not an injection from the sources into the targets")]
    Sigma,
    #[error("walk {0}: path does not start at x' on its source ray")]
    Start(usize),
    #[error("walk {0}: path does not end at y on its target ray")]
    End(usize),
    #[error("walk {walk}: steps {a:?} -> {b:?} is not an edge")]
    Step { walk: usize, a: Coord, b: Coord },
    #[error("walk {walk} visits {at:?} twice")]
    Repeat { walk: usize, at: Coord },
    #[error("walks {0} and {1} meet at {2:?}")]
    Meet(usize, usize, Coord),
    #[error("source ray {walk} meets X at position {pos}, beyond x' = {x_prime}")]
    LateX { walk: usize, pos: usize, x_prime: usize },
    #[error("walk {walk} uses {at:?} in X outside its initial segment")]
    UsesX { walk: usize, at: Coord },
}

fn depth(w: &World, c: Coord) -> u64 {
    w.depth_of(c).unwrap_or(0)
}

/// Checks that `l` is a linkage from `r` to `s` after `l.after`.
///
/// Each walk `x_i R_i x'_i P_i y S_sigma(i)` is expanded until its target ray
/// has passed beyond every finite coordinate involved, plus two periods.
/// Beyond that point the walks are tails of distinct rays of `s`, which are
/// disjoint and injective by assumption on `s`.
pub fn check_linkage(w: &World, r: &[RaySpec], s: &[RaySpec], l: &Linkage) -> Result<(), LinkageViolation> {
    let k = r.len();
    if l.sigma.len() != k || l.paths.len() != k {
        return Err(LinkageViolation::Sigma);
    }
    let mut image = FxHashSet::default();
    if l.sigma.iter().any(|&j| j >= s.len() || !image.insert(j)) {
        return Err(LinkageViolation::Sigma);
    }
    let xs: FxHashSet<Coord> = l.after.iter().copied().collect();

    let mut far = l.after.iter().map(|&c| depth(w, c)).max().unwrap_or(0);
    for (i, p) in l.paths.iter().enumerate() {
        if p.source != i || p.target != l.sigma[i] || p.path.is_empty() {
            return Err(LinkageViolation::Sigma);
        }
        far = far.max(p.path.iter().map(|&c| depth(w, c)).max().unwrap());
        far = far.max((0..=p.x_prime).map(|q| depth(w, r[i].coord(q))).max().unwrap());
    }

    let xfar = l.after.iter().map(|&c| depth(w, c)).max().unwrap_or(0);
    let mut owner: FxHashMap<Coord, usize> = FxHashMap::default();
    for (i, p) in l.paths.iter().enumerate() {
        let ri = &r[i];
        let sj = &s[p.target];
        let reach = ri.escape(w, xfar);
        if let Some(pos) = (0..reach).rev().find(|&q| xs.contains(&ri.coord(q))) {
            if pos > p.x_prime {
                return Err(LinkageViolation::LateX { walk: i, pos, x_prime: p.x_prime });
            }
        }
        if p.path[0] != ri.coord(p.x_prime) {
            return Err(LinkageViolation::Start(i));
        }
        if *p.path.last().unwrap() != sj.coord(p.y) {
            return Err(LinkageViolation::End(i));
        }
        // the initial segment x_i R_i x'_i may meet X; nothing after it may
        let mut walk: Vec<(Coord, bool)> = (0..p.x_prime).map(|q| (ri.coord(q), true)).collect();
        walk.push((p.path[0], true));
        walk.extend(p.path[1..].iter().map(|&c| (c, false)));
        let tail_end = sj.escape(w, far + 2) + 2 * sj.period().len();
        walk.extend((p.y + 1..tail_end.max(p.y + 1)).map(|q| (sj.coord(q), false)));

        let mut mine = FxHashSet::default();
        for (idx, &(c, initial)) in walk.iter().enumerate() {
            if idx > 0 {
                let a = walk[idx - 1].0;
                if !w.adjacent(a, c) {
                    return Err(LinkageViolation::Step { walk: i, a, b: c });
                }
            } else if !w.contains(c) {
                return Err(LinkageViolation::Step { walk: i, a: c, b: c });
            }
            if !mine.insert(c) {
                return Err(LinkageViolation::Repeat { walk: i, at: c });
            }
            if !initial && xs.contains(&c) {
                return Err(LinkageViolation::UsesX { walk: i, at: c });
            }
            if let Some(&o) = owner.get(&c) {
                return Err(LinkageViolation::Meet(o, i, c));
            }
        }
        for &(c, _) in &walk {
            owner.insert(c, i);
        }
    }
    Ok(())
}
