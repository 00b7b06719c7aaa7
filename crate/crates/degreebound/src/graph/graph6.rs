//! Bit-exact graph6 encoding and decoding (header-less variant).
//!
//! Layout: the order `n` is written as `n + 63` for `n <= 62`, or as `126`
//! followed by three bytes carrying an 18-bit big-endian value (each 6-bit
//! group offset by 63). The upper triangle of the adjacency matrix follows in
//! column order — bit `(i, j)` for `j = 1..n`, `i = 0..j` — packed into 6-bit
//! groups, zero-padded, each offset by 63.

use super::{Graph, GraphError};

pub fn encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else {
        assert!(n <= 258_047, "graph6 supports at most 258047 vertices here");
        bytes.push(126);
        bytes.push(63 + ((n >> 12) & 0x3f) as u8);
        bytes.push(63 + ((n >> 6) & 0x3f) as u8);
        bytes.push(63 + (n & 0x3f) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(63 + (group << (6 - filled)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

pub fn decode(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end().as_bytes();
    let err = |offset: usize, reason: &str| GraphError::Graph6 {
        offset,
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty input"));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(err(0, "truncated order field"));
        }
        let mut n = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(err(1 + k, "order byte out of range"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if !(63..=125).contains(&bytes[0]) {
            return Err(err(0, "order byte out of range"));
        }
        ((bytes[0] - 63) as usize, 1)
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let body_len = bits_needed.div_ceil(6);
    if bytes.len() != pos + body_len {
        return Err(err(
            bytes.len().min(pos + body_len),
            "body length does not match order",
        ));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut current = 0u8;
    let mut remaining = 0u8;
    let mut cursor = pos;
    for j in 1..n {
        for i in 0..j {
            if remaining == 0 {
                let b = bytes[cursor];
                if !(63..=126).contains(&b) {
                    return Err(err(cursor, "body byte out of range"));
                }
                current = b - 63;
                remaining = 6;
                cursor += 1;
            }
            if current >> (remaining - 1) & 1 == 1 {
                edges.push((i, j));
            }
            remaining -= 1;
            bit_index += 1;
        }
    }
    let _ = bit_index;
    // Padding bits must be zero for a canonical encoding.
    if remaining > 0 && current & ((1 << remaining) - 1) != 0 {
        return Err(err(cursor - 1, "nonzero padding bits"));
    }
    pos = cursor;
    let _ = pos;
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn hand_encoded_values() {
        // K3: order byte 63+3='B'; bits 111 padded to 111000 = 56, 56+63='w'.
        assert_eq!(encode(&named::complete(3)), "Bw");
        // Single vertex: just the order byte '@'.
        assert_eq!(encode(&Graph::empty(1)), "@");
        // Five-cycle: bits 1,0,1,0,0,1|1,0,0,1,pad -> 41,36 -> 'h','c'.
        assert_eq!(encode(&named::cycle(5)), "Dhc");
    }

    #[test]
    fn decode_inverts_encode() {
        for g in [
            Graph::empty(0),
            Graph::empty(1),
            named::complete(3),
            named::petersen(),
            named::complete_bipartite(3, 4),
            named::path(7),
        ] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }

    #[test]
    fn long_order_form() {
        let g = Graph::from_edges(70, &[(0, 69), (1, 2)]).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        match decode("") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        // Order says 3 vertices (one body byte) but body is missing.
        assert!(decode("B").is_err());
        // Byte below the graph6 range.
        assert!(decode("B!").is_err());
        // Trailing garbage.
        assert!(decode("Bww").is_err());
    }
}
