//! graph6 encoding, short form only (`n <= 62`).
//!
//! Byte 0 is `n + 63`. The upper triangle of the adjacency matrix is read
//! column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per
//! byte, most significant bit first, zero padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_SHORT_N: usize = 62;
const OPTIONAL_HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(OPTIONAL_HEADER) {
        Some(rest) => (OPTIONAL_HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = body.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(err(skip, "empty input"));
    };
    if head == b'~' {
        return Err(err(skip, "long-form header (n > 62) is not supported"));
    }
    if !(63..=125).contains(&head) {
        return Err(err(skip, format!("header byte {head:#04x} out of range")));
    }
    let n = (head - 63) as usize;
    let expect = data_len(n);
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(err(skip + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let got = bytes.len() - 1;
    if got < expect {
        return Err(err(
            skip + bytes.len(),
            format!("truncated bit vector: expected {expect} data bytes, found {got}"),
        ));
    }
    if got > expect {
        return Err(err(
            skip + 1 + expect,
            format!("trailing data: expected {expect} data bytes, found {got}"),
        ));
    }

    let data = &bytes[1..];
    let mut edges = Vec::new();
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = data[k / 6] - 63;
        let pad = (1u8 << (6 - k % 6)) - 1;
        if last & pad != 0 {
            return Err(err(skip + 1 + k / 6, "non-zero padding bits"));
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_SHORT_N {
        return Err(Error::Precondition(format!(
            "graph6 short form supports n <= {MAX_SHORT_N}, got {n}"
        )));
    }
    let mut data = vec![0u8; data_len(n)];
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(data.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_decodes_from_c_tilde() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn empty_five_vertex_graph() {
        let g = parse_graph6("D??").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(to_graph6(&g).unwrap(), "D??");
    }

    #[test]
    fn known_small_graph() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc\n").unwrap(), g);
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(to_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_graph6("C") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6("D?\x20") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph6("C~?") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("~"), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("\x20"), Err(Error::Graph6 { offset: 0, .. })));
        // K3 uses 3 of 6 bits; low bits must be zero
        assert!(parse_graph6("Bw").is_ok());
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6 { offset: 1, .. })));
    }
}
