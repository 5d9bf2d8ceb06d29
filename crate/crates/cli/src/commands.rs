use std::fs;

use pebblekit::dot::{graph_to_dot, truncation_to_dot};
use pebblekit::pebble::{GameState, MoveSequence, PebbleGame, DEFAULT_STATE_CAP};
use pebblekit::ray::{
    find_linkage_with, ray_graph_capped, realize_transition, LinkOptions, Linkage, RayError, DEFAULT_SEARCH_CAP,
};
use pebblekit::structure::{
    is_k_pebble_win_capped, pebble_permutation_group, structure_witness_capped, verify_colouring_contract,
    verify_structure_theorem_with, Strategy,
};
use pebblekit::world::{truncate_capped, Coord, Truncation, DEFAULT_WINDOW_CAP};
use serde_json::{json, Value};

use crate::input::{self, CliError, Result};
use crate::{Command, WorldArgs};

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn window(w: &WorldArgs) -> Result<Truncation> {
    let (world, depth) = input::world(&w.world, w.base.as_deref(), w.k, w.depth)?;
    Ok(truncate_capped(&world, input::need_depth(depth)?, w.window_cap.unwrap_or(DEFAULT_WINDOW_CAP))?)
}

fn finite_set(t: &Truncation, x: Option<&str>, ball: Option<u64>) -> Result<Vec<Coord>> {
    match (x, ball) {
        (Some(x), _) => input::inline_or_file(x, "x"),
        (None, Some(r)) => Ok(t.ball(r)),
        (None, None) => Ok(Vec::new()),
    }
}

/// A linkage, or the reason none exists within the window.
fn linkage_value(found: std::result::Result<Linkage, RayError>) -> Result<Value> {
    match found {
        Ok(l) => Ok(json!({ "found": true, "linkage": to_value(&l) })),
        Err(RayError::NoLinkage { depth, reason }) => Ok(json!({ "found": false, "depth": depth, "reason": reason })),
        Err(e) => Err(e.into()),
    }
}

/// A linkage file, bare or as printed by the `linkage` and `transition` verbs.
fn linkage_input(arg: &str) -> Result<Linkage> {
    let mut v: Value = input::inline_or_file(arg, "linkage")?;
    if v.get("found") == Some(&Value::Bool(false)) {
        return Err(CliError::Input(format!("{arg}: holds no linkage")));
    }
    if let Some(inner) = v.get_mut("linkage") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("linkage: {e}")))
}

pub fn run(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Solve { graph, from, to, state_cap } => {
            let g = input::graph(&graph.graph, graph.format.as_deref())?;
            let x = GameState::new(input::inline_or_file(&from, "from")?);
            let y = GameState::new(input::inline_or_file(&to, "to")?);
            let game = PebbleGame::new(&g).with_cap(state_cap.unwrap_or(DEFAULT_STATE_CAP));
            Ok(match game.solve(&x, &y)? {
                Some(seq) => json!({ "achievable": true, "moves": seq.moves(), "sequence": to_value(&seq) }),
                None => json!({ "achievable": false, "moves": null, "sequence": null }),
            })
        }
        Command::Group { graph, state, state_cap } => {
            let g = input::graph(&graph.graph, graph.format.as_deref())?;
            let x = GameState::new(input::inline_or_file(&state, "state")?);
            let group = pebble_permutation_group(&g, &x, state_cap.unwrap_or(DEFAULT_STATE_CAP))?;
            let mut v = to_value(&group);
            v["symmetric"] = json!(group.is_symmetric());
            Ok(v)
        }
        Command::Win { graph, k, state_cap } => {
            let g = input::graph(&graph.graph, graph.format.as_deref())?;
            Ok(json!({ "pebble_win": is_k_pebble_win_capped(&g, k, state_cap.unwrap_or(DEFAULT_STATE_CAP))? }))
        }
        Command::Structure { graph, k, state_cap } => {
            let g = input::graph(&graph.graph, graph.format.as_deref())?;
            Ok(to_value(&structure_witness_capped(&g, k, state_cap.unwrap_or(DEFAULT_STATE_CAP))?))
        }
        Command::Verify { structure: _, colouring, n_max, sequential } => {
            let report = if colouring {
                verify_colouring_contract(n_max)?
            } else {
                let strategy = if sequential { Strategy::Sequential } else { Strategy::Parallel };
                verify_structure_theorem_with(n_max, strategy)?
            };
            Ok(to_value(&report))
        }
        Command::Raygraph { world, rays, d0, annuli } => {
            let (w, _) = input::world(&world.world, world.base.as_deref(), world.k, None)?;
            let rays = input::rays(&rays, &w)?;
            let rg = ray_graph_capped(&w, &rays, d0, annuli, world.window_cap.unwrap_or(DEFAULT_WINDOW_CAP))?;
            Ok(to_value(&rg))
        }
        Command::Linkage { world, from, to, x, ball, sigma, state_cap } => {
            let t = window(&world)?;
            let r = input::rays(&from, t.world())?;
            let s = input::rays(&to, t.world())?;
            let x = finite_set(&t, x.as_deref(), ball)?;
            let sigma: Option<Vec<usize>> = sigma.map(|s| input::inline_or_file(&s, "sigma")).transpose()?;
            let opts = LinkOptions { search_cap: state_cap.unwrap_or(DEFAULT_SEARCH_CAP), ..LinkOptions::default() };
            linkage_value(find_linkage_with(&t, &r, &s, &x, sigma.as_deref(), opts))
        }
        Command::Transition { world, rays, moves, x, ball } => {
            let t = window(&world)?;
            let rays = input::rays(&rays, t.world())?;
            let moves: MoveSequence = input::inline_or_file(&moves, "moves")?;
            let x = finite_set(&t, x.as_deref(), ball)?;
            linkage_value(realize_transition(&t, &rays, &moves, &x))
        }
        Command::ExportDot { graph, format, world, base, k, depth, window_cap, rays, linkage, out } => {
            let (dot, vertices, edges) = match (graph, world) {
                (Some(path), _) => {
                    let g = input::graph(&path, format.as_deref())?;
                    (graph_to_dot(&g), g.n(), g.edge_count())
                }
                (None, Some(world)) => {
                    let t = window(&WorldArgs { world, base, k, depth, window_cap })?;
                    let rays = rays.map(|r| input::rays(&r, t.world())).transpose()?.unwrap_or_default();
                    let linkage = linkage.map(|l| linkage_input(&l)).transpose()?;
                    (truncation_to_dot(&t, &rays, linkage.as_ref()), t.graph().n(), t.graph().edge_count())
                }
                (None, None) => return Err(CliError::Input("need --graph or --world".into())),
            };
            fs::write(&out, dot).map_err(|e| CliError::Input(format!("{out}: {e}")))?;
            Ok(json!({ "written": out, "vertices": vertices, "edges": edges }))
        }
    }
}
