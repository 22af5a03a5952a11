//! graph6 text format.
//!
//! A line is `N(n)` followed by the upper triangle of the adjacency matrix,
//! bit `x(i, j)` for `i < j` ordered by `j` then `i`, packed six bits per
//! byte (most significant first), each byte offset by 63. `N(n)` is one
//! byte `n + 63` for `n <= 62`, otherwise `~` and three bytes carrying `n`
//! in 18 bits.

use fixedbitset::FixedBitSet;

use crate::error::{param, Error, Result};
use crate::graph::Graph;

/// Largest order the four-byte size form can express.
pub const GRAPH6_MAX_N: usize = 258_047;

const HEADER: &str = ">>graph6<<";

pub fn graph6_encode(g: &Graph) -> Result<String> {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= GRAPH6_MAX_N {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        return param(format!("graph6 encoding supports n <= {GRAPH6_MAX_N}, got {n}"));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn graph6_decode(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    let err = |offset: usize, message: &str| Error::Parse {
        offset: skip + offset,
        message: message.to_string(),
    };
    if let Some(pos) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(pos, &format!("byte {:#04x} outside the printable range 63..=126", body[pos])));
    }
    if body.is_empty() {
        return Err(err(0, "empty graph6 line"));
    }
    let (n, mut pos) = if body[0] < 126 {
        (usize::from(body[0] - 63), 1)
    } else {
        if body.len() < 4 {
            return Err(err(body.len(), "truncated size field"));
        }
        if body[1] == 126 {
            return Err(err(1, "eight-byte size form is not supported"));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        if n <= 62 {
            return Err(err(1, "four-byte size form used for n <= 62"));
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let have = body.len() - pos;
    if have < need {
        return Err(err(body.len(), &format!("truncated payload: expected {need} bytes, found {have}")));
    }
    if have > need {
        return Err(err(pos + need, "trailing bytes after payload"));
    }
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[pos + bit / 6] - 63;
            if byte & (0x20 >> (bit % 6)) != 0 {
                rows[i].insert(j);
                rows[j].insert(i);
            }
            bit += 1;
            if bit == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = body[pos + need - 1] - 63;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(pos + need - 1, "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, body.len());
    Ok(Graph::from_rows(rows))
}

/// Decodes every non-blank line, tagging errors with the record index.
pub fn graph6_decode_lines(text: &str) -> impl Iterator<Item = Result<Graph>> + '_ {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(index, line)| {
            graph6_decode(line).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Data {
                    index,
                    message: format!("byte {offset}: {message}"),
                },
                other => other,
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_named, Family};

    #[test]
    fn small_examples() {
        assert_eq!(graph6_encode(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(graph6_encode(&Graph::empty(0)).unwrap(), "?");
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        // bits 101 padded to 101000 = 40, and 40 + 63 = 103 = 'g'
        assert_eq!(graph6_encode(&p3).unwrap(), "Bg");
        assert_eq!(graph6_decode("Bg").unwrap(), p3);
        assert_eq!(graph6_decode(">>graph6<<Bg\n").unwrap(), p3);
        // 'o' carries 110000: the path centered at vertex 0
        let centered = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(graph6_decode("Bo").unwrap(), centered);
    }

    #[test]
    fn matches_reference_strings() {
        // strings produced by networkx.to_graph6_bytes
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g).unwrap(), "DQc");
        let k4 = construct_named(Family::Complete, &[4]).unwrap();
        assert_eq!(graph6_encode(&k4).unwrap(), "C~");
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4),
                (3, 8), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
            ],
        )
        .unwrap();
        assert_eq!(graph6_encode(&petersen).unwrap(), "IheA@GUAo");
        let k3_97 = construct_named(Family::CompleteBipartite, &[3, 97]).unwrap();
        assert!(graph6_encode(&k3_97).unwrap().starts_with("~?@cFzfFB_wF"));
    }

    #[test]
    fn large_size_form_round_trips() {
        let g = construct_named(Family::SNkPlus, &[100, 3]).unwrap();
        let s = graph6_encode(&g).unwrap();
        assert!(s.starts_with("~?@c"), "{}", &s[..4]);
        assert_eq!(graph6_decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let cases: &[(&str, usize)] = &[
            ("", 0),
            ("B", 1),
            ("Bo?", 2),
            ("B p", 1),
            ("Bp", 1),
            ("~??", 3),
            ("~~??????", 1),
        ];
        for &(input, offset) in cases {
            match graph6_decode(input) {
                Err(Error::Parse { offset: o, .. }) => assert_eq!(o, offset, "input {input:?}"),
                other => panic!("{input:?} decoded to {other:?}"),
            }
        }
    }

    #[test]
    fn line_decoder_tags_record_index() {
        let text = "Bg\n\nB!\n";
        let out: Vec<_> = graph6_decode_lines(text).collect();
        assert!(out[0].is_ok());
        assert!(matches!(out[1], Err(Error::Data { index: 1, .. })));
    }
}
