use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use super::{Delay, Graph};
use crate::error::{GraphError, LoadError};

/// Options for [`load_edge_list`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Remove nodes left without edges (after any id filtering).
    pub drop_isolated: bool,
    /// Keep only nodes whose external id lies in this inclusive range.
    pub id_range: Option<(u64, u64)>,
}

/// Reads a whitespace-delimited edge list: `u v [delay]` per line.
///
/// Lines starting with `#` are comments. A line holding a single id declares
/// a node without edges. External ids are compacted to `0..n` in increasing
/// id order.
pub fn load_edge_list(source: impl BufRead, options: &LoadOptions) -> Result<Graph, LoadError> {
    let keep = |id: u64| match options.id_range {
        Some((lo, hi)) => (lo..=hi).contains(&id),
        None => true,
    };

    let mut nodes = BTreeSet::new();
    let mut raw_edges: Vec<(u64, u64, Delay)> = Vec::new();
    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() > 3 {
            return Err(parse_error(line_no, format!("expected `u v [delay]`, found {} fields", fields.len())));
        }
        let u = parse_id(fields[0], line_no)?;
        let v = fields.get(1).map(|f| parse_id(f, line_no)).transpose()?;
        let delay = match fields.get(2) {
            Some(f) => {
                let d: Delay = f.parse().map_err(|_| parse_error(line_no, format!("invalid delay `{f}`")))?;
                if d == 0 {
                    return Err(parse_error(line_no, "delay must be a positive integer".into()));
                }
                d
            }
            None => 1,
        };

        if keep(u) {
            nodes.insert(u);
        }
        if let Some(v) = v {
            if keep(v) {
                nodes.insert(v);
            }
            if keep(u) && keep(v) && u != v {
                raw_edges.push((u, v, delay));
            }
        }
    }

    if options.drop_isolated {
        let touched: BTreeSet<u64> = raw_edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        nodes.retain(|id| touched.contains(id));
    }

    let index: BTreeMap<u64, usize> = nodes.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let labels: Vec<u64> = nodes.into_iter().collect();
    let edges = raw_edges.into_iter().map(|(u, v, d)| (index[&u], index[&v], d));
    Ok(Graph::with_labels(labels, edges)?)
}

fn parse_id(field: &str, line: usize) -> Result<u64, LoadError> {
    field.parse().map_err(|_| parse_error(line, format!("invalid node id `{field}`")))
}

fn parse_error(line: usize, message: String) -> LoadError {
    LoadError::Graph(GraphError::Parse { line, message })
}
