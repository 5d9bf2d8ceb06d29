use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use pebblekit::graph::{parse_graph, Graph, GraphFormat};
use pebblekit::ray::RaySpec;
use pebblekit::world::{World, WorldKind, WorldSpec};
use serde::de::DeserializeOwned;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(pebblekit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl<E: Into<pebblekit::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Lib(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// A JSON value given inline or as a path to a file holding it.
pub fn inline_or_file<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let t = arg.trim_start();
    let text = if t.starts_with('[') || t.starts_with('{') { arg.to_string() } else { read(arg)? };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

pub fn graph(path: &str, format: Option<&str>) -> Result<Graph> {
    let text = read(path)?;
    let format = match format {
        Some(f) => GraphFormat::from_str(f).map_err(CliError::Input)?,
        None if path.ends_with(".json") || text.trim_start().starts_with('{') => GraphFormat::Json,
        None => GraphFormat::EdgeList,
    };
    Ok(parse_graph(&text, format)?)
}

/// A world with its window depth, from a kind name plus flags or from a
/// descriptor file; flags override the descriptor.
pub fn world(arg: &str, base: Option<&str>, k: Option<usize>, depth: Option<u64>) -> Result<(World, Option<u64>)> {
    let mut spec = match WorldKind::from_str(arg) {
        Ok(kind) => WorldSpec { kind, base: None, k: None, depth: None },
        Err(_) if Path::new(arg).exists() => {
            serde_json::from_str(&read(arg)?).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
        }
        Err(e) => return Err(CliError::Lib(e.into())),
    };
    if let Some(b) = base {
        spec.base = Some(graph(b, None)?);
    }
    spec.k = k.or(spec.k);
    spec.depth = depth.or(spec.depth);
    Ok((World::from_spec(&spec)?, spec.depth))
}

pub fn need_depth(depth: Option<u64>) -> Result<u64> {
    depth.ok_or_else(|| CliError::Input("a window depth is required (--depth or \"depth\" in the world file)".into()))
}

/// `canonical:m`, `canonical:a..b` (rays `a` up to `b - 1` of the canonical
/// family), or a JSON file with one ray or a list of rays.
pub fn rays(arg: &str, w: &World) -> Result<Vec<RaySpec>> {
    let Some(spec) = arg.strip_prefix("canonical:") else {
        let v: serde_json::Value = inline_or_file(arg, "rays")?;
        let v = if v.is_array() { v } else { serde_json::Value::Array(vec![v]) };
        return serde_json::from_value(v).map_err(|e| CliError::Input(format!("rays: {e}")));
    };
    let bad = || CliError::Input(format!("bad ray family `{arg}`: expected canonical:m or canonical:a..b"));
    let (a, b) = match spec.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => (0, spec.parse().map_err(|_| bad())?),
    };
    if a >= b {
        return Err(bad());
    }
    let all = w.canonical_rays(b)?;
    Ok(all[a..].to_vec())
}
