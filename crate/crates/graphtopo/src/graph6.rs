//! graph6: the upper triangle of the adjacency matrix, column by column,
//! packed six bits per printable byte (`63..=126`), preceded by the vertex
//! count.

use graphtopo_core::Graph;

use crate::error::{IoError, Result};

const HEADER: &str = ">>graph6<<";

fn err(msg: impl Into<String>) -> IoError {
    IoError::Graph6(msg.into())
}

fn sextet(b: u8, pos: usize) -> Result<usize> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as usize)
    } else {
        Err(err(format!("byte {b} at offset {pos} is outside 63..=126")))
    }
}

/// Decodes the vertex count; returns it with the number of bytes used.
fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| err("empty input"))?;
    if first != b'~' {
        return Ok((sextet(first, 0)?, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&b'~') { (2, 6) } else { (1, 3) };
    let digits = bytes.get(start..start + width).ok_or_else(|| err("truncated vertex count"))?;
    let mut n = 0;
    for (i, &b) in digits.iter().enumerate() {
        n = (n << 6) | sextet(b, start + i)?;
    }
    Ok((n, start + width))
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    let (prefix, width): (&[u8], usize) = match n {
        0..=62 => (b"", 1),
        63..=258_047 => (b"~", 3),
        _ => (b"~~", 6),
    };
    out.extend_from_slice(prefix);
    for i in (0..width).rev() {
        out.push(((n >> (6 * i)) & 63) as u8 + 63);
    }
}

pub fn parse_graph6(line: &[u8]) -> Result<Graph> {
    let line = line.strip_prefix(HEADER.as_bytes()).unwrap_or(line);
    let line = line.trim_ascii_end();
    let (n, used) = decode_n(line)?;
    let body = &line[used..];
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(err(format!("truncated payload: {n} vertices need {need} bytes, got {}", body.len())));
    }
    if body.len() > need {
        return Err(err(format!("{} trailing bytes after the payload", body.len() - need)));
    }
    let mut data = Vec::with_capacity(need);
    for (i, &b) in body.iter().enumerate() {
        data.push(sextet(b, used + i)?);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if (data[k / 6] >> (5 - k % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges)?)
}

pub fn serialize_graph6(g: &Graph) -> String {
    let n = g.n_vertices();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        // Position of (u, v), u < v, in column-major upper-triangle order.
        let k = v * (v - 1) / 2 + u;
        data[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(data.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// One graph per non-empty line; an optional `>>graph6<<` header is skipped.
/// Errors carry the 1-based line number.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim().as_bytes()).map_err(|e| IoError::Parse { line: i + 1, message: e.to_string() })
        })
        .collect()
}
