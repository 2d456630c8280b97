//! graph6 text format (short form, n ≤ 62).

use super::{Graph, GraphError};

/// Encodes `g`. Bits run over the upper triangle column by column:
/// x(0,1), x(0,2), x(1,2), x(0,3), ...
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= 62, "graph6 short form needs n <= 62");
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((63 + n as u8) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let bad = |m: String| GraphError::MalformedGraph6(m);
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let first = *bytes.first().ok_or_else(|| bad("empty input".into()))?;
    if !(63..=125).contains(&first) {
        return Err(bad(format!("unsupported order byte {first}")));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(bad("order 0".into()));
    }
    let bits = n * (n - 1) / 2;
    let body = &bytes[1..];
    if body.len() != bits.div_ceil(6) {
        return Err(bad(format!(
            "expected {} data bytes for n={n}, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(format!("byte {b} outside 63..=126")));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (bits..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits".into()));
    }
    Graph::build(n, &edges)
}
