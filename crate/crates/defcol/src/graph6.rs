//! graph6 reading and writing.
//!
//! A graph6 string is the vertex count `N(n)` followed by the upper triangle
//! of the adjacency matrix in column order, packed six bits per byte, each
//! byte offset by 63.

use defcol_core::Graph;
use thiserror::Error;

/// Largest order the format can express.
pub const MAX_ORDER: u64 = 68_719_476_735;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: {byte:#04x} is outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: string ends inside the vertex count")]
    TruncatedSize { offset: usize },
    #[error("byte {offset}: expected {expected} adjacency bytes, found {found}")]
    WrongLength { offset: usize, expected: usize, found: usize },
    #[error("byte {offset}: padding bits are not zero")]
    NonzeroPadding { offset: usize },
    #[error("byte {offset}: {n} vertices cannot be stored")]
    TooLarge { offset: usize, n: u64 },
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Graph6Error::BadByte { offset, byte: b }),
        None => Err(Graph6Error::TruncatedSize { offset }),
    }
}

fn big_endian(bytes: &[u8], start: usize, len: usize) -> Result<u64, Graph6Error> {
    (start..start + len).try_fold(0u64, |acc, i| Ok(acc << 6 | sextet(bytes, i)? as u64))
}

/// Decodes `N(n)`, returning the order and the number of bytes it used.
fn read_order(bytes: &[u8], base: usize) -> Result<(u64, usize), Graph6Error> {
    let first = sextet(bytes, 0).map_err(|e| shift(e, base))?;
    if first < 63 {
        return Ok((first as u64, 1));
    }
    if bytes.get(1) == Some(&126) {
        let n = big_endian(bytes, 2, 6).map_err(|e| shift(e, base))?;
        return Ok((n, 8));
    }
    let n = big_endian(bytes, 1, 3).map_err(|e| shift(e, base))?;
    Ok((n, 4))
}

fn shift(e: Graph6Error, base: usize) -> Graph6Error {
    match e {
        Graph6Error::BadByte { offset, byte } => Graph6Error::BadByte { offset: offset + base, byte },
        Graph6Error::TruncatedSize { offset } => Graph6Error::TruncatedSize { offset: offset + base },
        other => other,
    }
}

/// Parses one graph6 string. An optional `>>graph6<<` header and a trailing
/// newline are accepted; byte offsets in errors count from the start of `text`.
pub fn parse(text: &str) -> Result<Graph, Graph6Error> {
    let base = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let body = text[base..].strip_suffix('\n').unwrap_or(&text[base..]);
    let body = body.strip_suffix('\r').unwrap_or(body);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, used) = read_order(bytes, base)?;
    let pairs = n.checked_mul(n.saturating_sub(1)).map(|x| x / 2);
    let expected = match pairs.and_then(|p| usize::try_from(p.div_ceil(6)).ok()) {
        Some(e) if usize::try_from(n).is_ok() => e,
        _ => return Err(Graph6Error::TooLarge { offset: base, n }),
    };
    let data = &bytes[used..];
    if data.len() != expected {
        return Err(Graph6Error::WrongLength { offset: base + used, expected, found: data.len() });
    }
    let n = n as usize;
    let mut edges = Vec::new();
    let mut k = 0usize;
    let total = n * n.saturating_sub(1) / 2;
    let (mut i, mut j) = (0usize, 1usize);
    for (idx, _) in data.iter().enumerate() {
        let offset = base + used + idx;
        let x = sextet(bytes, used + idx).map_err(|e| shift(e, base))?;
        for bit in (0..6).rev() {
            let set = x >> bit & 1 == 1;
            if k >= total {
                if set {
                    return Err(Graph6Error::NonzeroPadding { offset });
                }
                continue;
            }
            if set {
                edges.push((i, j));
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range and loop-free"))
}

fn push_order(out: &mut String, n: u64) {
    let mut push = |x: u64| out.push((x as u8 + 63) as char);
    if n <= 62 {
        push(n);
    } else if n <= 258_047 {
        out.push('~');
        for s in (0..3).rev() {
            out.push(((n >> (6 * s) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for s in (0..6).rev() {
            out.push(((n >> (6 * s) & 63) as u8 + 63) as char);
        }
    }
}

/// The graph6 string of `g`, without header or newline.
pub fn emit(g: &Graph) -> String {
    let bits = g.upper_triangle_bits();
    let mut out = String::with_capacity(8 + bits.len().div_ceil(6));
    push_order(&mut out, g.n() as u64);
    for chunk in bits.chunks(6) {
        let x = chunk.iter().enumerate().fold(0u8, |acc, (k, &b)| acc | (b as u8) << (5 - k));
        out.push((x + 63) as char);
    }
    out
}

/// Parses one graph per non-blank line.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse(l.trim_end()).map_err(|e| (i + 1, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use defcol_core::families::{complete, cycle, petersen};
    use proptest::prelude::*;

    #[test]
    fn round_trips_small_string() {
        let g = parse("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(emit(&g), "D?{");
    }

    #[test]
    fn known_strings() {
        assert_eq!(emit(&complete(1)), "@");
        assert_eq!(emit(&complete(0)), "?");
        assert_eq!(emit(&complete(4)), "C~");
        assert_eq!(emit(&cycle(5)), "Dhc");
        assert_eq!(emit(&petersen()).len(), 9);
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit(&g), "DQc");
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(parse(">>graph6<<D?{\n").unwrap(), parse("D?{").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse(""), Err(Graph6Error::Empty));
        assert_eq!(parse("D?"), Err(Graph6Error::WrongLength { offset: 1, expected: 2, found: 1 }));
        assert_eq!(parse("D? "), Err(Graph6Error::BadByte { offset: 2, byte: b' ' }));
        assert_eq!(parse(">>graph6<<D? "), Err(Graph6Error::BadByte { offset: 12, byte: b' ' }));
        // C5 needs 10 bits; the last two of the second byte are padding
        assert_eq!(parse("Dh@"), Err(Graph6Error::NonzeroPadding { offset: 2 }));
        assert_eq!(parse("~?"), Err(Graph6Error::TruncatedSize { offset: 2 }));
    }

    #[test]
    fn long_order_forms() {
        let g = Graph::empty(63);
        let s = emit(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse(&s).unwrap(), g);
        let big = Graph::from_edges(300, &[(0, 299), (17, 18)]).unwrap();
        let s = emit(&big);
        assert_eq!(&s[..4], "~?Ck");
        assert_eq!(parse(&s).unwrap(), big);
        assert!(matches!(parse("~~??????"), Ok(g) if g.n() == 0));
    }

    #[test]
    fn lines() {
        let gs = parse_lines("D?{\n\n@\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(parse_lines("@\nD?").unwrap_err().0, 2);
    }

    proptest! {
        #[test]
        fn emit_then_parse_is_identity(n in 0usize..=20, seed in any::<u64>()) {
            let mut s = seed;
            let g = Graph::from_fn(n, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                s >> 63 == 1
            });
            let text = emit(&g);
            prop_assert_eq!(parse(&text).unwrap(), g.clone());
            prop_assert_eq!(emit(&parse(&text).unwrap()), text);
        }
    }
}
