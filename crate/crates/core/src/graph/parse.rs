use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// One `u v` pair per line, `#` starts a comment.
    EdgeList,
    /// `{"n": 4, "edges": [[0, 1], ...]}`
    Json,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" | "txt" => Ok(Self::EdgeList),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Wire form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        Self { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect(), labels: g.labels().map(<[String]>::to_vec) }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let mut g = Graph::new(j.n);
        for (i, &[u, v]) in j.edges.iter().enumerate() {
            g.add_edge(u, v).map_err(|e| GraphError::Field { field: format!("edges[{i}]"), msg: e.to_string() })?;
        }
        if let Some(labels) = j.labels {
            if labels.len() != j.n {
                return Err(GraphError::Field {
                    field: "labels".into(),
                    msg: format!("expected {} labels, got {}", j.n, labels.len()),
                });
            }
            g = g.with_labels(labels);
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Json => {
            let j: GraphJson =
                serde_json::from_str(text).map_err(|e| GraphError::Parse { line: e.line(), msg: e.to_string() })?;
            Graph::try_from(j)
        }
    }
}

/// Vertices are numbered in order of first appearance; the tokens become
/// display labels.
fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = tokens[..] else {
            return Err(GraphError::Parse {
                line: lineno + 1,
                msg: format!("expected `u v`, found {} token(s)", tokens.len()),
            });
        };
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip([a, b]) {
            *slot = match index.get(tok) {
                Some(&i) => i,
                None => {
                    let i = labels.len();
                    index.insert(tok, i);
                    labels.push(tok.to_string());
                    i
                }
            };
        }
        pairs.push((lineno + 1, ids[0], ids[1]));
    }
    let mut g = Graph::new(labels.len());
    for (line, u, v) in pairs {
        g.add_edge(u, v).map_err(|e| GraphError::Parse { line, msg: e.to_string() })?;
    }
    Ok(g.with_labels(labels))
}
