//! Line-oriented edge lists.
//!
//! ```text
//! # comment
//! n 5
//! 0 3
//! 1 2
//! x 0 0.25 1.0
//! ```
//!
//! `n <count>` fixes the vertex count, otherwise it is one more than the
//! largest endpoint. `x <vertex> <values...>` lines attach attributes; when
//! present, every vertex needs one with the same number of values.

use std::fmt::Write as _;

use graphtopo_core::Graph;

use crate::error::{IoError, Result};

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut attrs: Vec<(usize, usize, Vec<f64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let first = fields.next().unwrap_or_default();
        let int = |s: Option<&str>, what: &str| -> Result<usize> {
            let s = s.ok_or_else(|| parse_err(line_no, format!("missing {what}")))?;
            s.parse().map_err(|_| parse_err(line_no, format!("expected a non-negative integer {what}, got {s:?}")))
        };
        match first {
            "n" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "repeated header"));
                }
                n = Some(int(fields.next(), "vertex count")?);
            }
            "x" => {
                let v = int(fields.next(), "vertex")?;
                let values = fields
                    .map(|s| s.parse::<f64>().map_err(|_| parse_err(line_no, format!("bad attribute value {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                attrs.push((line_no, v, values));
                continue;
            }
            _ => {
                let u = int(Some(first), "endpoint")?;
                let v = int(fields.next(), "second endpoint")?;
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
                }
                edges.push((line_no, u.min(v), u.max(v)));
            }
        }
        if let Some(extra) = fields.next() {
            return Err(parse_err(line_no, format!("unexpected trailing field {extra:?}")));
        }
    }
    let implied = edges.iter().map(|&(_, _, v)| v + 1).max().unwrap_or(0);
    let n = match n {
        Some(n) => {
            if let Some(&(line, u, v)) = edges.iter().find(|e| e.2 >= n) {
                return Err(parse_err(line, format!("edge ({u}, {v}) exceeds vertex count {n}")));
            }
            n
        }
        None => implied.max(attrs.iter().map(|a| a.1 + 1).max().unwrap_or(0)),
    };
    let g = Graph::from_edges_dedup(n, edges.into_iter().map(|(_, u, v)| (u, v)))?;
    if attrs.is_empty() {
        return Ok(g);
    }
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; n];
    for (line, v, values) in attrs {
        let slot = rows.get_mut(v).ok_or_else(|| parse_err(line, format!("attribute for vertex {v} >= {n}")))?;
        if slot.replace(values).is_some() {
            return Err(parse_err(line, format!("repeated attributes for vertex {v}")));
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| IoError::Invalid(format!("vertex {v} has no attribute line"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.with_attributes(rows)?)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(attrs) = g.attributes() {
        for (v, row) in attrs.iter().enumerate() {
            let _ = write!(out, "x {v}");
            for x in row {
                let _ = write!(out, " {x:?}");
            }
            out.push('\n');
        }
    }
    out
}
