//! Input and output formats.
//!
//! - Algebra (JSON): `{"dim": d, "brackets": [{"i": 1, "j": 2, "v": ["0", "1/2", ...]}]}`,
//!   1-based indices, `v` of length `d` in the input basis.
//! - Graph (text): a header `n <vertex-count>`, then one `i j` edge per line (1-based);
//!   blank lines and `#` comments are ignored.
//! - Gram matrix (JSON): `{"gram": [["1", "0"], ["0", "1"]]}`, rational strings, row-major.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{format_rational, parse_rational};
use crate::lie::{Graph, RawAlgebra};
use crate::linalg::RatMatrix;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketJson {
    i: usize,
    j: usize,
    v: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim: usize,
    brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GramJson {
    gram: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("invalid JSON: {e}"))
}

pub fn parse_algebra_json(text: &str) -> Result<RawAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(text).map_err(json_error)?;
    let mut entries = Vec::with_capacity(raw.brackets.len());
    for br in raw.brackets {
        if br.i == 0 || br.j == 0 {
            return Err(Error::Parse("bracket indices are 1-based".into()));
        }
        let v = br
            .v
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        entries.push((br.i - 1, br.j - 1, v));
    }
    RawAlgebra::from_entries(raw.dim, entries)
}

pub fn algebra_to_json(raw: &RawAlgebra) -> String {
    let doc = AlgebraJson {
        dim: raw.dim(),
        brackets: raw
            .entries()
            .map(|(i, j, v)| BracketJson {
                i: i + 1,
                j: j + 1,
                v: v.iter().map(format_rational).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("algebra serialises")
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: cannot parse `{line}`", lineno + 1));
        match (n, fields.as_slice()) {
            (None, ["n", count]) => n = Some(count.parse().map_err(|_| bad())?),
            (None, _) => {
                return Err(Error::Parse(format!(
                    "line {}: expected header `n <vertex-count>`",
                    lineno + 1
                )))
            }
            (Some(_), [a, b]) => {
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                if a == 0 || b == 0 {
                    return Err(Error::InvalidGraph(format!(
                        "line {}: vertices are numbered from 1",
                        lineno + 1
                    )));
                }
                edges.push((a - 1, b - 1));
            }
            (Some(_), _) => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing header `n <vertex-count>`".into()))?;
    Graph::new(n, edges)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.vertex_count());
    for (i, j) in g.edges() {
        s.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    s
}

pub fn parse_gram_json(text: &str) -> Result<RatMatrix> {
    let raw: GramJson = serde_json::from_str(text).map_err(json_error)?;
    raw.gram
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

pub fn gram_to_json(m: &RatMatrix) -> String {
    let doc = GramJson {
        gram: m
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("gram serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Rational;
    use crate::lie::adapt_basis;

    #[test]
    fn algebra_round_trip() {
        let text = r#"{"dim": 3, "brackets": [{"i": 2, "j": 1, "v": ["0", "0", "-1/2"]}]}"#;
        let raw = parse_algebra_json(text).unwrap();
        assert_eq!(raw.bracket(0, 1)[2], Rational::new(1.into(), 2.into()));
        let back = parse_algebra_json(&algebra_to_json(&raw)).unwrap();
        assert_eq!(back, raw);
        let adapted = adapt_basis(&raw).unwrap().algebra;
        assert_eq!((adapted.b(), adapted.c()), (2, 1));
    }

    #[test]
    fn algebra_errors() {
        assert!(matches!(parse_algebra_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_algebra_json(r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "v": ["0", "0"]}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_algebra_json(r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "v": ["x", "0"]}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_algebra_json(r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "v": ["0"]}]}"#),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn graph_parsing() {
        let g = parse_graph("# path\nn 3\n\n1 2  # first edge\n2 3\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(parse_graph(&graph_to_text(&g)).unwrap(), g);
        assert_eq!(parse_graph("n 5\n").unwrap().edge_count(), 0);
        assert!(matches!(parse_graph("1 2\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph(""), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("n 2\n1 1\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_graph("n 2\n1 3\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(parse_graph("n 2\n1 2 3\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn gram_parsing() {
        let m = parse_gram_json(r#"{"gram": [["1", "1/2"], ["1/2", "5/4"]]}"#).unwrap();
        assert_eq!(m[1][1], Rational::new(5.into(), 4.into()));
        assert_eq!(parse_gram_json(&gram_to_json(&m)).unwrap(), m);
        assert!(parse_gram_json(r#"{"gram": [["0.5"]]}"#).is_err());
    }
}
