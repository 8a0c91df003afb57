//! Isomorph-free generation of small connected graphs.
//!
//! Every connected graph on n vertices has a vertex whose removal leaves a
//! connected graph, so extending each connected graph on n−1 vertices by one
//! vertex with every non-empty neighbourhood reaches all of them. Duplicates
//! are removed by a canonical code: colour refinement splits the vertices into
//! ordered cells, and the code is the largest upper-triangle bitstring over
//! all orderings that respect the cells.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_GENERATED: usize = 8;

fn refine(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|a| a.count_ones() as usize).collect();
    let mut classes = 0;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = keys.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        colour = keys.iter().map(|k| ranked.binary_search(&k).expect("present")).collect();
        if ranked.len() == classes {
            return colour;
        }
        classes = ranked.len();
    }
}

/// Upper-triangle code of `adj` relabelled so that `order[i]` becomes vertex i.
fn code(adj: &[u64], order: &[usize]) -> u64 {
    let mut bits = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            bits = bits << 1 | (adj[order[i]] >> order[j] & 1);
        }
    }
    bits
}

struct Canon<'a> {
    adj: &'a [u64],
    cells: Vec<Vec<usize>>,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Canon<'_> {
    fn run(&mut self, cell: usize, used: u64) {
        if cell == self.cells.len() {
            let c = code(self.adj, &self.order);
            if self.best.as_ref().is_none_or(|(b, _)| c > *b) {
                self.best = Some((c, self.order.clone()));
            }
            return;
        }
        let members = self.cells[cell].clone();
        let placed = members.iter().filter(|&&v| used >> v & 1 == 1).count();
        if placed == members.len() {
            self.run(cell + 1, used);
            return;
        }
        for &v in &members {
            if used >> v & 1 == 0 {
                self.order.push(v);
                self.run(cell, used | 1 << v);
                self.order.pop();
            }
        }
    }
}

fn relabel(adj: &[u64], order: &[usize]) -> Vec<u64> {
    order
        .iter()
        .map(|&v| (0..order.len()).filter(|&i| adj[v] >> order[i] & 1 == 1).fold(0, |acc, i| acc | 1 << i))
        .collect()
}

/// Canonical relabelling: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    if g.n() > MAX_GENERATED {
        return Err(Error::TooLarge { n: g.n(), cap: MAX_GENERATED });
    }
    let adj = g.masks()?;
    let (_, order) = canonical_order(&adj);
    let mut perm = alloc::vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok(g.permuted(&perm))
}

fn canonical_order(adj: &[u64]) -> (u64, Vec<usize>) {
    let colour = refine(adj);
    let k = colour.iter().max().map_or(0, |&c| c + 1);
    let mut cells = alloc::vec![Vec::new(); k];
    for (v, &c) in colour.iter().enumerate() {
        cells[c].push(v);
    }
    let mut canon = Canon { adj, cells, order: Vec::new(), best: None };
    canon.run(0, 0);
    canon.best.unwrap_or((0, Vec::new()))
}

/// All connected graphs on exactly `n` vertices up to isomorphism, in
/// increasing order of canonical code.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_GENERATED, "exhaustive generation is limited to {MAX_GENERATED} vertices");
    if n == 0 {
        return Vec::new();
    }
    let mut masks: Vec<Vec<u64>> = alloc::vec![alloc::vec![0]];
    for m in 2..=n {
        let mut next: BTreeSet<u64> = BTreeSet::new();
        let mut next_masks = Vec::new();
        for adj in &masks {
            for nb in 1u64..1 << (m - 1) {
                let mut ext: Vec<u64> = adj.iter().enumerate().map(|(v, &a)| a | (nb >> v & 1) << (m - 1)).collect();
                ext.push(nb);
                let (c, order) = canonical_order(&ext);
                if next.insert(c) {
                    next_masks.push(relabel(&ext, &order));
                }
            }
        }
        masks = next_masks;
    }
    let mut out: Vec<(u64, Graph)> = masks
        .into_iter()
        .map(|adj| {
            let g = Graph::from_fn(n, |u, v| adj[u] >> v & 1 == 1);
            (code(&adj, &(0..n).collect::<Vec<_>>()), g)
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, g)| g).collect()
}

/// Connected graphs on 1..=max_n vertices, smallest first.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, path, petersen};

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn seven_vertex_count() {
        assert_eq!(connected_graphs(7).len(), 853);
    }

    #[test]
    fn canonical_is_invariant() {
        let g = cycle(6);
        let h = g.permuted(&[3, 0, 4, 1, 5, 2]);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        assert_ne!(canonical_form(&path(6)).unwrap(), canonical_form(&g).unwrap());
        assert!(canonical_form(&petersen()).is_err());
    }

    #[test]
    fn generated_graphs_are_connected_and_distinct() {
        let all = connected_graphs(5);
        assert!(all.iter().all(|g| g.is_connected() && g.n() == 5));
        let canon: BTreeSet<Vec<bool>> =
            all.iter().map(|g| canonical_form(g).unwrap().upper_triangle_bits()).collect();
        assert_eq!(canon.len(), all.len());
    }
}
