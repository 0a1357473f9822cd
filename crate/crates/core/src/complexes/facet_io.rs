//! Plain-text facet lists.
//!
//! ```text
//! # vertices: <labels separated by tabs>
//! 0 1
//! 1 2
//! ```
//!
//! The header carries tab-separated vertex labels; every following line is a
//! facet given as ascending 0-based vertex indices, facets in lexicographic
//! order. A blank facet line stands for the empty face, so the empty complex
//! is a header followed by one blank line and the void complex is the header
//! alone.

use std::path::Path;

use super::SimplicialComplex;
use crate::error::{Error, Result};

const HEADER: &str = "# vertices:";

pub fn to_facet_list(k: &SimplicialComplex) -> String {
    let mut out = String::from(HEADER);
    if !k.labels().is_empty() {
        out.push(' ');
        out.push_str(&k.labels().join("\t"));
    }
    out.push('\n');
    for f in k.facets() {
        let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_facet_list(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let rest = header
        .strip_prefix(HEADER)
        .ok_or_else(|| parse_err(0, "header must start with '# vertices:'"))?;
    let rest = rest.strip_prefix(' ').unwrap_or(rest);
    let labels: Vec<String> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split('\t').map(str::to_string).collect()
    };
    let mut offset = header.len() + 1;
    let mut facets = Vec::new();
    for line in lines {
        if !line.starts_with('#') {
            let facet = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| parse_err(offset, &format!("bad vertex index {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            facets.push(facet);
        }
        offset += line.len() + 1;
    }
    SimplicialComplex::new(labels, facets)
}

fn parse_err(offset: usize, message: &str) -> Error {
    Error::Parse {
        offset,
        message: message.to_string(),
    }
}

pub fn write_facet_list(k: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_facet_list(k))?;
    Ok(())
}

pub fn read_facet_list(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    from_facet_list(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_round_trip() {
        let k = SimplicialComplex::new(
            vec!["2".into(), "3".into(), "4".into()],
            vec![vec![1, 2], vec![0, 1]],
        )
        .unwrap();
        let text = to_facet_list(&k);
        assert_eq!(text, "# vertices: 2\t3\t4\n0 1\n1 2\n");
        assert_eq!(from_facet_list(&text).unwrap(), k);
    }

    #[test]
    fn void_and_empty_round_trip() {
        for k in [SimplicialComplex::void(), SimplicialComplex::empty()] {
            assert_eq!(from_facet_list(&to_facet_list(&k)).unwrap(), k);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_facet_list("vertices a b\n").is_err());
        assert!(matches!(from_facet_list("# vertices: a\nx\n"), Err(Error::Parse { .. })));
        assert!(from_facet_list("# vertices: a\n3\n").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.txt");
        let k = SimplicialComplex::discrete(3);
        write_facet_list(&k, &path).unwrap();
        assert_eq!(read_facet_list(&path).unwrap(), k);
    }
}
