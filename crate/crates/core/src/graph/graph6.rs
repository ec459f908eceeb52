//! graph6 encoding as used by the nauty/gtools ecosystem.
//!
//! Layout: a size header (`n + 63` for `n <= 62`, otherwise `~` followed by
//! three 6-bit groups, or `~~` followed by six for `n > 258047`), then the
//! upper triangle of the adjacency matrix in column-major order
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte (most
//! significant first), each byte offset by 63, final group zero-padded.

use std::io::BufRead;

use super::Graph;
use crate::error::{Error, Result};

const OPTIONAL_HEADER: &[u8] = b">>graph6<<";
const MAX_ORDER: usize = (1 << 36) - 1;

fn malformed(offset: usize, reason: impl Into<String>) -> Error {
    Error::MalformedGraph6 {
        offset,
        reason: reason.into(),
    }
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= MAX_ORDER, "graph too large for graph6");
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

pub fn encode(g: &Graph) -> String {
    String::from_utf8(encode_bytes(g)).expect("graph6 is printable ASCII")
}

fn sixbit(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(malformed(offset, format!("byte {b:#04x} outside 63..=126"))),
        None => Err(malformed(offset, "truncated size header")),
    }
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize)> {
    match bytes.first() {
        None => Err(malformed(0, "empty input")),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | sixbit(bytes, i)? as usize;
            }
            if n <= 258_047 {
                return Err(malformed(0, "non-minimal size header"));
            }
            Ok((n, 8))
        }
        Some(&126) => {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sixbit(bytes, i)? as usize;
            }
            if n <= 62 {
                return Err(malformed(0, "non-minimal size header"));
            }
            Ok((n, 4))
        }
        Some(_) => Ok((sixbit(bytes, 0)? as usize, 1)),
    }
}

/// Decodes one graph6 string. A leading `>>graph6<<` marker and a trailing
/// newline are tolerated; padding bits must be zero.
pub fn decode(input: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if input.starts_with(OPTIONAL_HEADER) {
        start = OPTIONAL_HEADER.len();
    }
    let mut end = input.len();
    while end > start && matches!(input[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let bytes = &input[start..end];
    let (n, header) = read_size(bytes).map_err(|e| shift_offset(e, start))?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = header + bits.div_ceil(6);
    if bytes.len() != expected {
        return Err(malformed(
            start + bytes.len().min(expected),
            format!("expected {expected} bytes for n={n}, found {}", bytes.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    let body = &bytes[header..];
    for v in 1..n {
        for u in 0..v {
            let byte = sixbit(body, idx / 6).map_err(|e| shift_offset(e, start + header))?;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    if idx % 6 != 0 {
        let last = sixbit(body, idx / 6).map_err(|e| shift_offset(e, start + header))?;
        if last & ((1 << (6 - idx % 6)) - 1) != 0 {
            return Err(malformed(start + header + idx / 6, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.trim().as_bytes())
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::MalformedGraph6 { offset, reason } => Error::MalformedGraph6 {
            offset: offset + by,
            reason,
        },
        other => other,
    }
}

/// Reads a newline-delimited graph6 stream, skipping blank lines.
pub fn read_stream<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph>> {
    reader.lines().filter_map(|line| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(decode_str(&l)),
        Err(e) => Some(Err(malformed(0, e.to_string()))),
    })
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k4_is_c_tilde() {
        assert_eq!(encode(&complete(4)), "C~");
        assert_eq!(decode_str("C~").unwrap(), complete(4));
    }

    #[test]
    fn single_vertex_is_header_only() {
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&Graph::empty(0)), "?");
    }

    #[test]
    fn known_strings() {
        // P_3 as 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000
        assert_eq!(encode(&path(3)), "Bg");
        assert_eq!(encode(&petersen()), "IheA@GUAo");
    }

    #[test]
    fn large_header() {
        let g = path(63);
        let s = encode_bytes(&g);
        assert_eq!(&s[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(decode(&s).unwrap(), g);
        let big = Graph::empty(258_048);
        let bytes = {
            let mut v = Vec::new();
            push_size(&mut v, big.order());
            v
        };
        assert_eq!(bytes.len(), 8);
        assert_eq!(read_size(&bytes).unwrap(), (258_048, 8));
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        match decode(b"C}x") {
            Err(Error::MalformedGraph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match decode(b"C") {
            Err(Error::MalformedGraph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match decode(b"C\x20") {
            Err(Error::MalformedGraph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        // n=2 has one edge bit; the other five must be zero
        assert!(decode(b"A_").is_ok());
        assert!(matches!(decode(b"A`"), Err(Error::MalformedGraph6 { offset: 1, .. })));
        assert!(decode(b"").is_err());
        assert!(decode(b"~??~").is_err());
    }

    #[test]
    fn stream_reading() {
        let text = ">>graph6<<C~\n\nBg\n";
        let graphs: Vec<_> = read_stream(text.as_bytes()).collect::<Result<_>>().unwrap();
        assert_eq!(graphs, vec![complete(4), path(3)]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=20).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut i = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[i] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(g in arb_graph()) {
            let s = encode_bytes(&g);
            let back = decode(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(encode_bytes(&back), s);
        }
    }
}
