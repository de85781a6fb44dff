//! graph6 encoding.
//!
//! Header `N(n)`, then the upper triangle of the adjacency matrix in column
//! order `(0,1), (0,2), (1,2), (0,3), ...`, packed big-endian into 6-bit groups
//! with each group offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder};

/// Largest order representable by the 8-byte header form.
pub const MAX_ORDER: u64 = 68_719_476_735;

/// Orders above this are refused when decoding so a corrupt header cannot
/// trigger a huge allocation.
pub const DECODE_ORDER_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("truncated graph6: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after graph6 body")]
    TrailingBytes(usize),
    #[error("non-zero padding bits in final graph6 byte")]
    NonZeroPadding,
    #[error("order {0} exceeds the decoder limit")]
    TooLarge(u64),
}

fn encode_order(n: u64, out: &mut Vec<u8>) {
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

/// Encodes `g` as graph6 bytes (no trailing newline).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    assert!(n as u64 <= MAX_ORDER);
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n as u64, &mut out);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    out
}

/// [`encode`] as a `String`; graph6 is always printable ASCII.
pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(Graph6Error::InvalidByte { byte: b, offset }),
        None => Err(Graph6Error::Truncated {
            expected: offset + 1,
            found: bytes.len(),
        }),
    }
}

/// Decodes one graph6 graph. An optional `>>graph6<<` prefix is accepted;
/// line terminators are not.
pub fn decode(input: &[u8]) -> Result<Graph, Graph6Error> {
    let bytes = input.strip_prefix(b">>graph6<<").unwrap_or(input);
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header) = if bytes[0] != 126 {
        (sextet(bytes, 0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0;
        for k in 1..=3 {
            n = n << 6 | sextet(bytes, k)?;
        }
        (n, 4)
    } else {
        let mut n = 0;
        for k in 2..=7 {
            n = n << 6 | sextet(bytes, k)?;
        }
        (n, 8)
    };
    if n > DECODE_ORDER_LIMIT {
        return Err(Graph6Error::TooLarge(n));
    }
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let expected = header + body_len;
    // Validate every body byte before looking at adjacency.
    for offset in header..bytes.len().min(expected) {
        sextet(bytes, offset)?;
    }
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingBytes(bytes.len() - expected));
    }
    let body = &bytes[header..];
    if bits % 6 != 0 {
        let last = body[body_len - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let group = body[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                b.set(i, j);
            }
            k += 1;
        }
    }
    Ok(b.build())
}

pub fn decode_str(s: &str) -> Result<Graph, Graph6Error> {
    decode(s.as_bytes())
}
