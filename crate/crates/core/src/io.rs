//! Graph file formats: graph6 and a plain edge list.
//!
//! Edge-list text: first non-comment line is the vertex count `n`, then one
//! `u v` pair per line. Tokens that are not all integers below `n` are treated
//! as labels and mapped to dense ids in order of first appearance.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("malformed edge list at line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl Format {
    /// `.g6` / `.graph6` is graph6, anything else is the edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            _ => Format::EdgeList,
        }
    }
}

/// A graph plus the original vertex labels (index = dense id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = (0..graph.n()).map(|v| v.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph, IoError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |m: &str| IoError::Graph6(m.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(bad("empty string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated size"));
            }
            (rest[..6].iter().fold(0, |a, &b| a << 6 | val(b)), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size"));
            }
            (rest[..3].iter().fold(0, |a, &b| a << 6 | val(b)), &rest[3..])
        }
        [b, rest @ ..] => (val(*b), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad(&format!("expected {} data bytes, got {}", bits.div_ceil(6), body.len())));
    }
    let mut g = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if val(body[k / 6]) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g.build())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<LabeledGraph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(IoError::EdgeList { line: 1, msg: "missing header".into() })?;
    let n: usize = header
        .parse()
        .map_err(|_| IoError::EdgeList { line: hline, msg: format!("bad vertex count {header:?}") })?;
    let mut raw = vec![];
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => raw.push((line, a.to_string(), b.to_string())),
            _ => return Err(IoError::EdgeList { line, msg: "expected `u v`".into() }),
        }
    }
    let numeric = raw
        .iter()
        .all(|(_, a, b)| [a, b].iter().all(|t| t.parse::<usize>().is_ok_and(|v| v < n)));
    let mut labels: Vec<String> = vec![];
    let mut ids: HashMap<String, usize> = HashMap::new();
    if numeric {
        labels = (0..n).map(|v| v.to_string()).collect();
        ids = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    }
    let mut b = GraphBuilder::new(n);
    for (line, a, c) in raw {
        let mut id = |t: String| -> Result<usize, IoError> {
            if let Some(&i) = ids.get(&t) {
                return Ok(i);
            }
            if labels.len() == n {
                return Err(IoError::EdgeList { line, msg: format!("more than {n} distinct labels") });
            }
            labels.push(t.clone());
            ids.insert(t, labels.len() - 1);
            Ok(labels.len() - 1)
        };
        let (u, v) = (id(a)?, id(c)?);
        if u == v {
            return Err(GraphError::SelfLoop(u).into());
        }
        b.add_edge(u, v);
    }
    while labels.len() < n {
        labels.push(format!("_{}", labels.len()));
    }
    Ok(LabeledGraph { graph: b.build(), labels })
}

pub fn read_graph(path: &Path) -> Result<LabeledGraph, IoError> {
    let text = fs::read_to_string(path)?;
    match Format::from_path(path) {
        Format::Graph6 => {
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            Ok(LabeledGraph::unlabeled(from_graph6(first)?))
        }
        Format::EdgeList => from_edge_list(&text),
    }
}

/// Every non-empty line of a graph6 catalog file.
pub fn read_graph6_catalog(path: &Path) -> Result<Vec<Graph>, IoError> {
    fs::read_to_string(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(from_graph6)
        .collect()
}

pub fn write_graph(path: &Path, g: &Graph, format: Format) -> Result<(), IoError> {
    let text = match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::EdgeList => to_edge_list(g),
    };
    fs::write(path, text)?;
    Ok(())
}
