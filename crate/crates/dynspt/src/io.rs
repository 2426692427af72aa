//! Graph and update-stream file formats.
//!
//! Graphs use a DIMACS-shortest-path style text format with 1-based vertex
//! ids and negative weights permitted:
//!
//! ```text
//! c free-form comment
//! c name 1 s          (optional: symbolic label for a vertex)
//! p sp <n> <m>
//! a <tail> <head> <weight>
//! ```
//!
//! Update streams hold one update per line, `<tail> <head> <new_weight>`,
//! where endpoints are 1-based ids or declared labels; blank lines and lines
//! starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, VertexId, WeightUpdate};

/// Optional symbolic vertex labels declared via `c name <id> <label>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexNames {
    by_name: HashMap<String, VertexId>,
    by_id: HashMap<VertexId, String>,
}

impl VertexNames {
    pub fn insert(&mut self, id: VertexId, name: &str) {
        self.by_name.insert(name.to_string(), id);
        self.by_id.insert(id, name.to_string());
    }

    pub fn id_of(&self, name: &str) -> Option<VertexId> {
        self.by_name.get(name).copied()
    }

    pub fn name_of(&self, id: VertexId) -> Option<&str> {
        self.by_id.get(&id).map(String::as_str)
    }

    /// Resolves a token that is either a declared label or a 1-based id.
    pub fn resolve(&self, token: &str, n: usize) -> Option<VertexId> {
        if let Some(id) = self.id_of(token) {
            return Some(id);
        }
        let raw: usize = token.parse().ok()?;
        (1..=n).contains(&raw).then(|| (raw - 1) as VertexId)
    }

    /// Printable form of a vertex: its label if declared, else its 1-based id.
    pub fn display(&self, id: VertexId) -> String {
        self.name_of(id)
            .map(str::to_string)
            .unwrap_or_else(|| (id + 1).to_string())
    }
}

fn syntax(line_no: usize, msg: &str) -> Error {
    Error::SyntaxError(format!("line {line_no}: {msg}"))
}

/// Parses the graph format; `source` is the 1-based source vertex id.
pub fn parse_graph(text: &str, source: usize) -> Result<(Graph, VertexNames)> {
    let mut names = VertexNames::default();
    let mut header: Option<(usize, usize)> = None;
    let mut arcs: Vec<(VertexId, VertexId, i64)> = Vec::new();
    let mut pending_names: Vec<(usize, usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next().unwrap() {
            "c" => {
                let rest: Vec<&str> = tokens.collect();
                if rest.first() == Some(&"name") {
                    let [_, id, label] = rest[..] else {
                        return Err(syntax(line_no, "expected `c name <id> <label>`"));
                    };
                    let id: usize = id
                        .parse()
                        .map_err(|_| syntax(line_no, "bad id in name comment"))?;
                    pending_names.push((line_no, id, label.to_string()));
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(syntax(line_no, "duplicate problem line"));
                }
                let parts: Vec<&str> = tokens.collect();
                let ["sp", n, m] = parts[..] else {
                    return Err(syntax(line_no, "expected `p sp <n> <m>`"));
                };
                let n = n.parse().map_err(|_| syntax(line_no, "bad vertex count"))?;
                let m = m.parse().map_err(|_| syntax(line_no, "bad arc count"))?;
                header = Some((n, m));
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| syntax(line_no, "arc before problem line"))?;
                let parts: Vec<&str> = tokens.collect();
                let [t, h, w] = parts[..] else {
                    return Err(syntax(line_no, "expected `a <tail> <head> <weight>`"));
                };
                let t: usize = t.parse().map_err(|_| syntax(line_no, "bad tail id"))?;
                let h: usize = h.parse().map_err(|_| syntax(line_no, "bad head id"))?;
                let w: i64 = w.parse().map_err(|_| syntax(line_no, "bad weight"))?;
                if t == 0 || t > n || h == 0 || h > n {
                    return Err(Error::IdOutOfRange(t.max(h) as VertexId));
                }
                arcs.push(((t - 1) as VertexId, (h - 1) as VertexId, w));
            }
            other => return Err(syntax(line_no, &format!("unknown record `{other}`"))),
        }
    }

    let (n, m) = header.ok_or_else(|| syntax(0, "missing problem line"))?;
    if arcs.len() != m {
        return Err(Error::CountMismatch { expected: m, actual: arcs.len() });
    }
    for (line_no, id, label) in pending_names {
        if id == 0 || id > n {
            return Err(syntax(line_no, "name id out of range"));
        }
        names.insert((id - 1) as VertexId, &label);
    }
    if source == 0 || source > n {
        return Err(Error::IdOutOfRange(source as VertexId));
    }
    let graph = build_graph(n, (source - 1) as VertexId, &arcs)?;
    Ok((graph, names))
}

/// Writes the graph format, including any symbolic labels.
pub fn write_graph(graph: &Graph, names: &VertexNames) -> String {
    let mut out = String::new();
    for v in 0..graph.vertex_count() as VertexId {
        if let Some(name) = names.name_of(v) {
            let _ = writeln!(out, "c name {} {}", v + 1, name);
        }
    }
    let _ = writeln!(out, "p sp {} {}", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        let _ = writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, e.weight);
    }
    out
}

/// Parses an update stream against a parsed graph's size and labels.
pub fn parse_updates(text: &str, n: usize, names: &VertexNames) -> Result<Vec<WeightUpdate>> {
    let mut updates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [t, h, w] = parts[..] else {
            return Err(syntax(line_no, "expected `<tail> <head> <new_weight>`"));
        };
        let tail = names
            .resolve(t, n)
            .ok_or_else(|| syntax(line_no, &format!("unknown vertex `{t}`")))?;
        let head = names
            .resolve(h, n)
            .ok_or_else(|| syntax(line_no, &format!("unknown vertex `{h}`")))?;
        let new_weight = w.parse().map_err(|_| syntax(line_no, "bad weight"))?;
        updates.push(WeightUpdate { tail, head, new_weight });
    }
    Ok(updates)
}
