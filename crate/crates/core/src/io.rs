//! Plain-text formats for graph systems and certificates.
//!
//! System file:
//!
//! ```text
//! rgs 1
//! <n>
//! <c> <u> <v>      one edge per line, 0-based ids
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Canonical output lists
//! edges sorted by `(c, u, v)` with `u < v`.
//!
//! Certificate: `path k` or `cycle k`, then the `k` vertices, then the `k - 1`
//! (path) or `k` (cycle) colors, each list on one line. A file may hold several
//! certificates back to back.

use std::fmt::Write as _;

use thiserror::Error;

use crate::certificate::{Certificate, RainbowCycle, RainbowPath};
use crate::system::{GraphSystem, SystemError};

pub const MAGIC: &str = "rgs 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing header \"{MAGIC}\"")]
    MissingMagic,
    #[error("missing vertex count")]
    MissingCount,
    #[error("malformed line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("id out of range at line {line}: {source}")]
    OutOfRange { line: usize, source: SystemError },
    #[error("color count mismatch at line {line}: expected {expected}, found {found}")]
    ColorCountMismatch { line: usize, expected: usize, found: usize },
    #[error("vertex count mismatch at line {line}: header says {expected}, found {found}")]
    VertexCountMismatch { line: usize, expected: usize, found: usize },
    #[error("only square systems can be written ({colors} colors on {n} vertices)")]
    NotSquare { n: usize, colors: usize },
    #[error("unexpected end of input after line {line}")]
    Truncated { line: usize },
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_ids(line: usize, s: &str) -> Result<Vec<usize>, FormatError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| FormatError::Malformed {
                line,
                reason: format!("not a non-negative integer: {tok:?}"),
            })
        })
        .collect()
}

pub fn parse_system(text: &str) -> Result<GraphSystem, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, MAGIC)) => {}
        _ => return Err(FormatError::MissingMagic),
    }
    let (count_line, count) = lines.next().ok_or(FormatError::MissingCount)?;
    let n = match parse_ids(count_line, count)?.as_slice() {
        [n] => *n,
        _ => {
            return Err(FormatError::Malformed {
                line: count_line,
                reason: "expected a single vertex count".into(),
            })
        }
    };

    let mut edges = Vec::new();
    let mut line_of = Vec::new();
    for (line, body) in lines {
        let (c, u, v) = match parse_ids(line, body)?.as_slice() {
            &[c, u, v] => (c, u, v),
            _ => {
                return Err(FormatError::Malformed {
                    line,
                    reason: "expected \"c u v\"".into(),
                })
            }
        };
        if u == v {
            return Err(FormatError::SelfLoop { line });
        }
        edges.push((c, u, v));
        line_of.push(line);
    }
    GraphSystem::build(n, edges).map_err(|e| match e {
        SystemError::VertexOutOfRange { index, .. } | SystemError::ColorOutOfRange { index, .. } => {
            FormatError::OutOfRange { line: line_of[index], source: e }
        }
        SystemError::SelfLoop { index, .. } => FormatError::SelfLoop { line: line_of[index] },
        other => FormatError::OutOfRange { line: 0, source: other },
    })
}

pub fn serialize_system(sys: &GraphSystem) -> Result<String, FormatError> {
    if !sys.is_square() {
        return Err(FormatError::NotSquare { n: sys.n(), colors: sys.color_count() });
    }
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "{}", sys.n()).unwrap();
    for (c, u, v) in sys.edges() {
        writeln!(out, "{c} {u} {v}").unwrap();
    }
    Ok(out)
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn serialize_certificate(cert: &Certificate) -> String {
    let (kind, vertices, colors) = match cert {
        Certificate::Path(p) => ("path", &p.vertices, &p.colors),
        Certificate::Cycle(c) => ("cycle", &c.vertices, &c.colors),
    };
    format!("{kind} {}\n{}\n{}\n", vertices.len(), join(vertices), join(colors))
}

pub fn serialize_certificates<'a, I>(certs: I) -> String
where
    I: IntoIterator<Item = &'a Certificate>,
{
    certs.into_iter().map(serialize_certificate).collect()
}

/// Parses exactly one certificate.
pub fn parse_certificate(text: &str) -> Result<Certificate, FormatError> {
    let mut certs = parse_certificates(text)?;
    match certs.len() {
        1 => Ok(certs.remove(0)),
        0 => Err(FormatError::Truncated { line: 0 }),
        _ => Err(FormatError::Malformed {
            line: 0,
            reason: format!("expected one certificate, found {}", certs.len()),
        }),
    }
}

/// Parses a sequence of certificates. Comment lines are skipped; the color
/// line of a single-vertex path is the only line allowed to be empty.
pub fn parse_certificates(text: &str) -> Result<Vec<Certificate>, FormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (hline, header) = lines[i];
        if header.is_empty() {
            i += 1;
            continue;
        }
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let is_cycle = match kind {
            "path" => false,
            "cycle" => true,
            _ => {
                return Err(FormatError::Malformed {
                    line: hline,
                    reason: format!("expected \"path k\" or \"cycle k\", found {header:?}"),
                })
            }
        };
        let k = match (parts.next().map(str::parse::<usize>), parts.next()) {
            (Some(Ok(k)), None) => k,
            _ => {
                return Err(FormatError::Malformed {
                    line: hline,
                    reason: "bad certificate length".into(),
                })
            }
        };
        let (vline, vtext) = *lines.get(i + 1).ok_or(FormatError::Truncated { line: hline })?;
        let vertices = parse_ids(vline, vtext)?;
        if vertices.len() != k {
            return Err(FormatError::VertexCountMismatch { line: vline, expected: k, found: vertices.len() });
        }
        let expected = if is_cycle { k } else { k.saturating_sub(1) };
        let (cline, colors) = match lines.get(i + 2) {
            Some(&(cline, ctext)) => (cline, parse_ids(cline, ctext)?),
            None if expected == 0 => (vline + 1, Vec::new()),
            None => return Err(FormatError::Truncated { line: vline }),
        };
        if colors.len() != expected {
            return Err(FormatError::ColorCountMismatch { line: cline, expected, found: colors.len() });
        }
        out.push(if is_cycle {
            Certificate::Cycle(RainbowCycle { vertices, colors })
        } else {
            Certificate::Path(RainbowPath { vertices, colors })
        });
        i += 3;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_random_min_degree};
    use proptest::prelude::*;

    #[test]
    fn minimal_system() {
        let sys = parse_system("rgs 1\n2\n0 0 1\n").unwrap();
        assert_eq!(sys.n(), 2);
        assert!(sys.adjacent(0, 1, 0));
        assert_eq!(sys.edge_count(), 1);
    }

    #[test]
    fn comments_and_duplicates() {
        let sys = parse_system("# hi\nrgs 1\n3\n# edge\n1 2 0\n1 0 2\n\n").unwrap();
        assert_eq!(serialize_system(&sys).unwrap(), "rgs 1\n3\n1 0 2\n");
    }

    #[test]
    fn self_loop_line_number() {
        let err = parse_system("rgs 1\n2\n0 0 0\n").unwrap_err();
        assert_eq!(err, FormatError::SelfLoop { line: 3 });
        assert_eq!(err.to_string(), "self-loop at line 3");
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_system("rgs 2\n2\n"), Err(FormatError::MissingMagic));
        assert_eq!(parse_system("rgs 1\n"), Err(FormatError::MissingCount));
        assert!(matches!(parse_system("rgs 1\n3\n0 1\n"), Err(FormatError::Malformed { line: 3, .. })));
        assert!(matches!(parse_system("rgs 1\n3\n0 1 x\n"), Err(FormatError::Malformed { line: 3, .. })));
        assert!(matches!(
            parse_system("rgs 1\n3\n0 1 2\n3 0 1\n"),
            Err(FormatError::OutOfRange { line: 4, .. })
        ));
    }

    #[test]
    fn complete_round_trip_is_byte_identical() {
        let text = serialize_system(&gen_complete(5).unwrap()).unwrap();
        assert_eq!(serialize_system(&parse_system(&text).unwrap()).unwrap(), text);
        assert_eq!(text.lines().count(), 2 + 5 * 10);
    }

    #[test]
    fn certificates() {
        assert_eq!(
            parse_certificate("cycle 3\n0 1 2\n0 1 2\n").unwrap(),
            Certificate::Cycle(RainbowCycle { vertices: vec![0, 1, 2], colors: vec![0, 1, 2] })
        );
        assert_eq!(
            parse_certificate("path 2\n0 1\n5\n").unwrap(),
            Certificate::Path(RainbowPath { vertices: vec![0, 1], colors: vec![5] })
        );
        let err = parse_certificate("cycle 3\n0 1 2\n0 1\n").unwrap_err();
        assert!(err.to_string().starts_with("color count mismatch"), "{err}");
        let single = Certificate::Path(RainbowPath::single(4));
        let text = serialize_certificate(&single);
        assert_eq!(text, "path 1\n4\n\n");
        assert_eq!(parse_certificate(&text).unwrap(), single);
        assert_eq!(parse_certificate("path 1\n4\n").unwrap(), single);
    }

    #[test]
    fn several_certificates() {
        let certs = vec![
            Certificate::Cycle(RainbowCycle { vertices: vec![0, 1, 2], colors: vec![2, 1, 0] }),
            Certificate::Path(RainbowPath::single(3)),
            Certificate::Path(RainbowPath { vertices: vec![3, 1], colors: vec![0] }),
        ];
        let text = serialize_certificates(&certs);
        assert_eq!(parse_certificates(&text).unwrap(), certs);
        assert!(parse_certificate(&text).is_err());
    }

    proptest! {
        #[test]
        fn random_system_round_trip(n in 2usize..14, seed in 0u64..1000) {
            let sys = gen_random_min_degree(n, n / 2, seed).unwrap();
            let text = serialize_system(&sys).unwrap();
            let back = parse_system(&text).unwrap();
            prop_assert_eq!(&back, &sys);
            prop_assert_eq!(serialize_system(&back).unwrap(), text);
        }

        #[test]
        fn certificate_round_trip(vs in proptest::collection::vec(0usize..50, 1..12), cyc in any::<bool>()) {
            let colors: Vec<usize> = vs.iter().map(|v| v + 7).collect();
            let cert = if cyc {
                Certificate::Cycle(RainbowCycle { vertices: vs.clone(), colors })
            } else {
                Certificate::Path(RainbowPath { vertices: vs.clone(), colors: colors[1..].to_vec() })
            };
            prop_assert_eq!(parse_certificate(&serialize_certificate(&cert)).unwrap(), cert);
        }
    }
}
