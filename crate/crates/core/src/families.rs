//! Named graph families with fixed, deterministic vertex labellings.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{join, line_graph, Graph};
use crate::linalg::Matrix;

pub fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true).with_name(format!("K{n}"))
}

pub fn empty(n: usize) -> Graph {
    Graph::empty(n).with_name(format!("E{n}"))
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v == u + 1).with_name(format!("P{n}"))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)).with_name(format!("C{n}"))
}

/// `K_{a,b}` with the `a` side first.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_fn(a + b, |u, v| (u < a) != (v < a)).with_name(format!("K{a},{b}"))
}

/// `m` disjoint edges `(2i, 2i+1)`.
pub fn matching(m: usize) -> Graph {
    Graph::from_fn(2 * m, |u, v| v == u + 1 && u % 2 == 0).with_name(format!("{m}K2"))
}

/// Kneser graph K(5,2): 2-subsets of {0..4} in lexicographic order, adjacent when disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> =
        (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    Graph::from_fn(10, |x, y| {
        let (a, b) = pairs[x];
        let (c, d) = pairs[y];
        a != c && a != d && b != c && b != d
    })
    .with_name("petersen")
}

/// Paley graph on GF(9) = GF(3)[x]/(x² + 1). Element `a + b·x` has index `a + 3b`;
/// two elements are adjacent when their difference is a nonzero square.
pub fn paley9() -> Graph {
    let mul = |p: usize, q: usize| {
        let (a, b) = (p % 3, p / 3);
        let (c, d) = (q % 3, q / 3);
        // (a + bx)(c + dx) = ac - bd + (ad + bc)x since x² = -1
        let re = (a * c + 2 * b * d) % 3;
        let im = (a * d + b * c) % 3;
        re + 3 * im
    };
    let sub = |p: usize, q: usize| {
        let re = (p % 3 + 3 - q % 3) % 3;
        let im = (p / 3 + 3 - q / 3) % 3;
        re + 3 * im
    };
    let mut square = [false; 9];
    for z in 1..9 {
        square[mul(z, z)] = true;
    }
    Graph::from_fn(9, |u, v| square[sub(u, v)]).with_name("paley9")
}

/// Two triangles `{0,1,2}` and `{0,3,4}` sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
        .expect("static edge list")
        .with_name("bowtie")
}

/// `2K2 ∇ 2K2`: matchings `{01, 23}` and `{45, 67}` joined completely.
pub fn matching_join() -> Graph {
    join(&matching(2), &matching(2)).with_name("matching_join")
}

/// A compatible weighting of [`matching_join`] with four eigenvalues below −1.
pub fn matching_join_weights() -> Matrix {
    let a = 0.99;
    let rows = [
        [0.0, 1.0, 0.0, 0.0, 1.0, 1.0, -a, 1.0],
        [1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 1.0, -1.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, 0.0, -1.0, a, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0, 0.0, -1.0, 0.0, 0.0],
        [1.0, 1.0, 1.0, a, -1.0, 0.0, 0.0, 0.0],
        [-a, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        [1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0],
    ];
    Matrix::from_rows(&rows.map(|r| r.to_vec())).expect("square")
}

/// Line graph of K5; vertex k is the k-th edge of K5 in lexicographic order.
pub fn line_k5() -> Graph {
    line_graph(&complete(5)).expect("K5 has edges").with_name("line_k5")
}

/// Colour 1 on the Hamiltonian cycle 0-1-2-3-4 of K5, colour 2 on 0-2-4-1-3,
/// as a colouring of [`line_k5`].
pub fn line_k5_two_factor_colours() -> Vec<u32> {
    complete(5)
        .edges()
        .into_iter()
        .map(|(u, v)| if matches!((v - u) % 5, 1 | 4) { 1 } else { 2 })
        .collect()
}

pub fn line_paley9() -> Graph {
    line_graph(&paley9()).expect("paley9 has edges").with_name("line_paley9")
}

fn arity(name: &str, params: &[usize], want: usize) -> Result<()> {
    if params.len() != want {
        return Err(Error::BadParameters {
            name: name.to_string(),
            reason: format!("expected {want} parameter(s), got {}", params.len()),
        });
    }
    Ok(())
}

/// Splits shorthands such as `c5`, `k3`, `p4`, `e2` and `3K2` into a family and parameters.
fn shorthand(name: &str) -> Option<(String, Vec<usize>)> {
    let lower = name.to_ascii_lowercase();
    if let Some(m) = lower.strip_suffix("k2") {
        if let Ok(m) = m.parse::<usize>() {
            return Some(("mk2".into(), alloc::vec![m]));
        }
    }
    if lower.is_empty() || !lower.is_char_boundary(1) {
        return None;
    }
    let (head, tail) = lower.split_at(1);
    let family = match head {
        "c" => "cycle",
        "k" => "complete",
        "p" => "path",
        "e" => "empty",
        _ => return None,
    };
    if let Some((a, b)) = tail.split_once(',') {
        if family == "complete" {
            return Some(("complete_bipartite".into(), alloc::vec![a.parse().ok()?, b.parse().ok()?]));
        }
        return None;
    }
    tail.parse::<usize>().ok().map(|k| (family.into(), alloc::vec![k]))
}

/// Builds a graph from a family name and integer parameters.
///
/// Families: `complete [n]`, `cycle [n]`, `path [n]`, `empty [n]`,
/// `complete_bipartite [a, b]`, `petersen`, `paley9`, `bowtie`, `mK2 [m]`,
/// `matching_join`, `line_k5`, `line_paley9`.
/// Shorthands like `c5`, `k6`, `p3` and `3K2` are accepted with no parameters.
pub fn named_graph(name: &str, params: &[usize]) -> Result<Graph> {
    let key = name.to_ascii_lowercase();
    match key.as_str() {
        "complete" => {
            arity(name, params, 1)?;
            Ok(complete(params[0]))
        }
        "empty" => {
            arity(name, params, 1)?;
            Ok(empty(params[0]))
        }
        "path" => {
            arity(name, params, 1)?;
            Ok(path(params[0]))
        }
        "cycle" => {
            arity(name, params, 1)?;
            if params[0] < 3 {
                return Err(Error::BadParameters {
                    name: name.to_string(),
                    reason: "cycles need at least 3 vertices".into(),
                });
            }
            Ok(cycle(params[0]))
        }
        "complete_bipartite" => {
            arity(name, params, 2)?;
            Ok(complete_bipartite(params[0], params[1]))
        }
        "mk2" => {
            arity(name, params, 1)?;
            Ok(matching(params[0]))
        }
        "petersen" => {
            arity(name, params, 0)?;
            Ok(petersen())
        }
        "paley9" => {
            arity(name, params, 0)?;
            Ok(paley9())
        }
        "bowtie" => {
            arity(name, params, 0)?;
            Ok(bowtie())
        }
        "matching_join" => {
            arity(name, params, 0)?;
            Ok(matching_join())
        }
        "line_k5" => {
            arity(name, params, 0)?;
            Ok(line_k5())
        }
        "line_paley9" => {
            arity(name, params, 0)?;
            Ok(line_paley9())
        }
        _ => match shorthand(name) {
            Some((family, p)) if params.is_empty() => named_graph(&family, &p),
            _ => Err(Error::UnknownFamily(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn girth(g: &Graph) -> usize {
        // shortest cycle by BFS from every vertex
        let n = g.n();
        let mut best = usize::MAX;
        for r in 0..n {
            let mut dist = alloc::vec![usize::MAX; n];
            let mut parent = alloc::vec![usize::MAX; n];
            dist[r] = 0;
            let mut queue = alloc::collections::VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbours(u).iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn bowtie_shape() {
        let g = named_graph("bowtie", &[]).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.max_degree()), (5, 6, 4));
    }

    #[test]
    fn c4_is_2_regular_bipartite() {
        let g = named_graph("cycle", &[4]).unwrap();
        assert!(g.is_regular() && g.max_degree() == 2);
        assert!(g.edges().iter().all(|&(u, v)| (u + v) % 2 == 1));
    }

    #[test]
    fn petersen_shape() {
        let g = named_graph("petersen", &[]).unwrap();
        assert_eq!(g.n(), 10);
        assert!(g.is_regular() && g.max_degree() == 3);
        assert_eq!(girth(&g), 5);
    }

    #[test]
    fn paley9_is_srg_9_4_1_2() {
        let g = paley9();
        assert!(g.is_regular() && g.max_degree() == 4);
        for u in 0..9 {
            for v in u + 1..9 {
                let common = g.neighbours(u).intersection_len(g.neighbours(v));
                assert_eq!(common, if g.has_edge(u, v) { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn shorthands_and_errors() {
        assert_eq!(named_graph("c5", &[]).unwrap(), cycle(5));
        assert_eq!(named_graph("K6", &[]).unwrap(), complete(6));
        assert_eq!(named_graph("2K2", &[]).unwrap(), matching(2));
        assert_eq!(named_graph("k2,3", &[]).unwrap(), complete_bipartite(2, 3));
        assert!(matches!(named_graph("dodecahedron", &[]), Err(Error::UnknownFamily(_))));
        assert!(matches!(named_graph("cycle", &[]), Err(Error::BadParameters { .. })));
        assert!(matches!(named_graph("cycle", &[2]), Err(Error::BadParameters { .. })));
        assert!(matches!(named_graph("petersen", &[1]), Err(Error::BadParameters { .. })));
    }
}
