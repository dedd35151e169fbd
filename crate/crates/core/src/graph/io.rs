//! Edge-list text format: whitespace-separated `u v [w]` lines, `#` comments.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::Graph;

/// Result of loading an edge list: ids are densified to `[0, n)` in order of
/// first appearance; duplicate edges are tolerated (first one wins) and
/// counted.
pub struct LoadedGraph {
    pub graph: Graph,
    pub duplicate_count: usize,
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(BufReader::new(file))
}

pub fn parse_edge_list(reader: impl BufRead) -> Result<LoadedGraph> {
    let mut ids: std::collections::HashMap<u64, u32> = std::collections::HashMap::new();
    let mut dense = |raw: u64| -> u32 {
        let next = ids.len() as u32;
        *ids.entry(raw).or_insert(next)
    };
    let mut seen: std::collections::HashSet<(u32, u32)> = std::collections::HashSet::new();
    let mut triples: Vec<(u32, u32, u64)> = Vec::new();
    let mut weighted = None;
    let mut duplicates = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut parts = body.split_whitespace();
        let parse = |tok: Option<&str>, what: &str| -> Result<u64> {
            let tok = tok.ok_or_else(|| Error::ParseError {
                line: lineno,
                message: format!("missing {what}"),
            })?;
            tok.parse::<u64>().map_err(|_| Error::ParseError {
                line: lineno,
                message: format!("invalid {what} `{tok}`"),
            })
        };
        let u = parse(parts.next(), "source vertex")?;
        let v = parse(parts.next(), "target vertex")?;
        let w = match parts.next() {
            Some(tok) => Some(tok.parse::<u64>().map_err(|_| Error::ParseError {
                line: lineno,
                message: format!("invalid weight `{tok}`"),
            })?),
            None => None,
        };
        if parts.next().is_some() {
            return Err(Error::ParseError { line: lineno, message: "too many fields".into() });
        }
        match (weighted, w.is_some()) {
            (None, has) => weighted = Some(has),
            (Some(expect), has) if expect != has => {
                return Err(Error::ParseError {
                    line: lineno,
                    message: "mixed weighted and unweighted lines".into(),
                })
            }
            _ => {}
        }
        if u == v {
            return Err(Error::ParseError { line: lineno, message: "self-loop".into() });
        }
        let (a, b) = (dense(u), dense(v));
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            duplicates += 1;
            continue;
        }
        triples.push((key.0, key.1, w.unwrap_or(0)));
    }
    if duplicates > 0 {
        log::warn!("edge list contained {duplicates} duplicate edges; first occurrence kept");
    }
    let n = ids.len();
    let graph = Graph::new(n, triples, weighted.unwrap_or(false))?;
    Ok(LoadedGraph { graph, duplicate_count: duplicates })
}

/// Writes the graph back out in the same format.
pub fn save_edge_list(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    for e in g.edges() {
        if g.is_weighted() {
            writeln!(f, "{} {} {}", e.u, e.v, e.w)?;
        } else {
            writeln!(f, "{} {}", e.u, e.v)?;
        }
    }
    Ok(())
}

/// Writes a chosen set of original edges (an MSF, a matching) as an edge list.
pub fn save_edge_ids(path: impl AsRef<Path>, g: &Graph, ids: &[u32]) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    for &id in ids {
        let e = g.edge(id);
        if g.is_weighted() {
            writeln!(f, "{} {} {}", e.u, e.v, e.w)?;
        } else {
            writeln!(f, "{} {}", e.u, e.v)?;
        }
    }
    Ok(())
}
