//! Plain edge lists: an `n m` header, then `m` lines `u v` with 0-indexed
//! endpoints. Blank lines are ignored.

use defcol_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct EdgeListError {
    pub line: usize,
    pub reason: String,
}

fn fail(line: usize, reason: impl Into<String>) -> EdgeListError {
    EdgeListError { line, reason: reason.into() }
}

fn pair(line: usize, text: &str, what: &str) -> Result<(usize, usize), EdgeListError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(fail(line, format!("expected two integers ({what}), found {} fields", fields.len())));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| fail(line, format!("`{s}` is not a non-negative integer")));
    Ok((num(fields[0])?, num(fields[1])?))
}

pub fn parse(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| fail(1, "missing `n m` header"))?;
    let (n, m) = pair(hline, header, "n m")?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, text) in lines {
        let (u, v) = pair(line, text, "u v")?;
        if u >= n || v >= n {
            return Err(fail(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        if u == v {
            return Err(fail(line, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
        last = line;
    }
    if edges.len() != m {
        return Err(fail(last, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges).map_err(|e| fail(hline, e.to_string()))
}

pub fn emit(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use defcol_core::families::petersen;

    #[test]
    fn reads_header_and_edges() {
        let g = parse("4 3\n0 1\n\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn round_trip() {
        let p = petersen();
        assert_eq!(parse(&emit(&p)).unwrap(), p);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse("").unwrap_err().line, 1);
        assert_eq!(parse("3 1\n0 3\n").unwrap_err().line, 2);
        assert_eq!(parse("3 1\n1 1\n").unwrap_err().line, 2);
        assert_eq!(parse("3 2\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse("3 1\n0 x\n").unwrap_err().line, 2);
        assert_eq!(parse("3\n").unwrap_err().line, 1);
    }
}
