//! The graph6 format: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, six bits per printable byte.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("graph6 payload is {got} bytes, expected {expected}")]
    TruncatedBits { expected: usize, got: usize },
    #[error("unexpected data after the graph6 payload")]
    TrailingGarbage,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 alphabet")]
    InvalidByte { offset: usize, byte: u8 },
}

const BIAS: u8 = 63;
const OPTIONAL_PREFIX: &str = ">>graph6<<";

fn six_bits(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (BIAS..=BIAS + 63).contains(&byte) {
        Ok(byte - BIAS)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte })
    }
}

fn parse_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let header = |i: usize| -> Result<u8, Graph6Error> {
        let b = *bytes.get(i).ok_or(Graph6Error::MalformedHeader)?;
        six_bits(i, b).map_err(|_| Graph6Error::MalformedHeader)
    };
    match bytes.first() {
        None => Err(Graph6Error::MalformedHeader),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | header(i)? as usize;
            }
            if n < 258048 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 8))
        }
        Some(&126) => {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | header(i)? as usize;
            }
            if n < 63 {
                return Err(Graph6Error::MalformedHeader);
            }
            Ok((n, 4))
        }
        Some(_) => Ok((header(0)? as usize, 1)),
    }
}

/// Parses one graph6 line. A trailing newline and the optional `>>graph6<<`
/// prefix are accepted; padding bits must be zero.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(OPTIONAL_PREFIX).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, header_len) = parse_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[header_len..];
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedBits {
            expected,
            got: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage);
    }
    let mut values = Vec::with_capacity(expected);
    for (i, &b) in payload.iter().enumerate() {
        values.push(six_bits(header_len + i, b)?);
    }
    let bit = |k: usize| (values[k / 6] >> (5 - k % 6)) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::TrailingGarbage);
    }
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
    Ok(Graph::from_edges(n, edges).expect("decoded pairs are simple and in range"))
}

/// Canonical graph6 encoding, without prefix or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(BIAS + n as u8);
    } else if n <= 258047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 63) as u8);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 63) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
