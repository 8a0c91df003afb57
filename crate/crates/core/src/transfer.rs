//! From a clustered colouring of `G ⊠ K_t` to a clustered colouring of `G`.
//!
//! Vertex `(v, i)` of the product is `v·t + i`. The incidence graph links each
//! vertex of `G` to the monochromatic components of the product that contain
//! one of its copies. Cycles in it are removed by shifting colours around the
//! cycle; once it is a forest, some component covers at most `ℓ` vertices of
//! `G`, and those vertices take its colour and are removed. Every step checks
//! its own invariants and fails with [`Error::Certification`] rather than
//! return a wrong answer.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::colouring::{check_clustered, mono_components, Colouring};
use crate::error::{Error, Result};
use crate::families::complete;
use crate::graph::{strong_product, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceComponent {
    pub colour: u32,
    /// vertices of the product
    pub members: VertexSet,
    /// vertices of the base graph with a copy in `members`
    pub covers: VertexSet,
}

/// Bipartite graph on the base vertices `0..n` and the components `n..n+k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryIncidenceGraph {
    pub n: usize,
    pub components: Vec<IncidenceComponent>,
}

impl AuxiliaryIncidenceGraph {
    pub fn node_count(&self) -> usize {
        self.n + self.components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.covers.len()).sum()
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            edges.extend(c.covers.iter().map(|v| (v, self.n + k)));
        }
        Graph::from_edges(self.node_count(), &edges).expect("bipartite by construction")
    }

    /// `|E| − |V| + #components`, zero exactly for forests.
    pub fn cycle_rank(&self) -> usize {
        let g = self.graph();
        g.edge_count() + g.components().len() - g.n()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_rank() == 0
    }

    /// A shortest cycle as `(base vertices, component indices)` with
    /// component `i` covering base vertices `i` and `i + 1` (cyclically).
    /// Roots are tried in index order and the first shortest cycle wins.
    pub fn shortest_cycle(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let g = self.graph();
        let total = g.n();
        let mut best: Option<Vec<usize>> = None;
        for root in 0..total {
            let mut dist = alloc::vec![usize::MAX; total];
            let mut parent = alloc::vec![usize::MAX; total];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                if best.as_ref().is_some_and(|b| 2 * dist[x] + 1 >= b.len()) {
                    break;
                }
                for y in g.neighbours(x).iter() {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if y != parent[x] && dist[y] >= dist[x] {
                        let len = dist[x] + dist[y] + 1;
                        if best.as_ref().is_some_and(|b| len >= b.len()) {
                            continue;
                        }
                        if let Some(cycle) = join_paths(&parent, root, x, y) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        let cycle = best?;
        let start = cycle.iter().position(|&v| v < self.n).expect("bipartite cycle meets the base");
        let rotated: Vec<usize> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();
        let verts = rotated.iter().step_by(2).copied().collect();
        let comps = rotated.iter().skip(1).step_by(2).map(|&c| c - self.n).collect();
        Some((verts, comps))
    }
}

/// `root → … → x, y → … → root` if the two tree paths meet only at the root.
fn join_paths(parent: &[usize], root: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let path = |mut v: usize| {
        let mut p = alloc::vec![v];
        while v != root {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let px = path(x);
    let py = path(y);
    let sx: BTreeSet<usize> = px.iter().copied().collect();
    if py.iter().filter(|v| sx.contains(v)).count() != 1 {
        return None;
    }
    // root, ..., x, y, ..., (back to root)
    let mut cycle: Vec<usize> = px.into_iter().rev().collect();
    cycle.extend(py.into_iter().take_while(|&v| v != root));
    Some(cycle)
}

fn check_shape(g: &Graph, c: &Colouring, t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::OutOfRange("the complete factor needs t >= 1".into()));
    }
    if c.len() != g.n() * t {
        return Err(Error::PartialColouring { got: c.len(), expected: g.n() * t });
    }
    Ok(())
}

fn product(g: &Graph, t: usize) -> Graph {
    strong_product(g, &complete(t))
}

pub fn build_incidence(g: &Graph, c: &Colouring, t: usize) -> Result<AuxiliaryIncidenceGraph> {
    check_shape(g, c, t)?;
    let host = product(g, t);
    let components = mono_components(&host, c)?
        .into_iter()
        .map(|(colour, members)| {
            let covers = VertexSet::from_iter(g.n(), members.iter().map(|p| p / t));
            IncidenceComponent { colour, members, covers }
        })
        .collect();
    Ok(AuxiliaryIncidenceGraph { n: g.n(), components })
}

fn multiplicity(c: &Colouring, t: usize, v: usize, a: u32) -> usize {
    (0..t).filter(|&i| c.colour(v * t + i) == a).count()
}

fn colour_set(c: &Colouring, t: usize, v: usize) -> BTreeSet<u32> {
    (0..t).map(|i| c.colour(v * t + i)).collect()
}

/// One cyclic redistribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    /// base vertices `v_1 … v_k` of the cycle
    pub cycle: Vec<usize>,
    /// colour of the component between `v_i` and `v_{i+1}`
    pub colours: Vec<u32>,
    /// position whose vertex gives up its forward colour entirely
    pub pivot: usize,
    /// copies recoloured at every cycle vertex
    pub shift: usize,
}

/// A component whose covered vertices were coloured and removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peel {
    pub colour: u32,
    pub covered: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TransferTrace {
    pub eliminations: Vec<EliminationStep>,
    pub peels: Vec<Peel>,
}

/// At every `v_i`, the `shift` lowest copies of colour `a_i` take `a_{i−1}`.
fn redistribute(c: &Colouring, t: usize, step: &EliminationStep) -> Result<Colouring> {
    let k = step.cycle.len();
    let mut next = c.clone();
    for i in 0..k {
        let v = step.cycle[i];
        let (from, to) = (step.colours[i], step.colours[(i + k - 1) % k]);
        let copies: Vec<usize> = (0..t).filter(|&x| c.colour(v * t + x) == from).take(step.shift).collect();
        if copies.len() != step.shift {
            return Err(Error::Certification(format!(
                "vertex {v} has fewer than {} copies of colour {from}",
                step.shift
            )));
        }
        for x in copies {
            next.set_colour(v * t + x, to);
        }
    }
    Ok(next)
}

fn certify(ok: bool, what: impl FnOnce() -> alloc::string::String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Certification(what()))
    }
}

fn ensure_clustered(host: &Graph, c: &Colouring, param: usize) -> Result<()> {
    match check_clustered(host, c, param)?.violation() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidColouring(format!("not {param}-clustered on the product: {v:?}"))),
    }
}

/// Removes every cycle of the incidence graph. `param` is the clustering
/// parameter the input satisfies on the product and the output keeps.
pub fn eliminate_cycles(g: &Graph, c: &Colouring, t: usize, param: usize) -> Result<(Colouring, TransferTrace)> {
    check_shape(g, c, t)?;
    let host = product(g, t);
    ensure_clustered(&host, c, param)?;
    let mut current = c.clone();
    let mut inc = build_incidence(g, &current, t)?;
    let budget = inc.edge_count();
    let mut trace = TransferTrace::default();
    while let Some((cycle, comps)) = inc.shortest_cycle() {
        certify(trace.eliminations.len() < budget, || "cycle elimination did not terminate".into())?;
        let colours: Vec<u32> = comps.iter().map(|&k| inc.components[k].colour).collect();
        let mults: Vec<usize> = cycle.iter().zip(&colours).map(|(&v, &a)| multiplicity(&current, t, v, a)).collect();
        let shift = *mults.iter().min().expect("cycles are non-empty");
        let pivot = mults.iter().position(|&m| m == shift).expect("minimum is attained");
        let step = EliminationStep { cycle, colours, pivot, shift };
        let next = redistribute(&current, t, &step)?;
        let next_inc = build_incidence(g, &next, t)?;

        for v in 0..g.n() {
            certify(colour_set(&next, t, v).is_subset(&colour_set(&current, t, v)), || {
                format!("colour set of vertex {v} grew")
            })?;
        }
        for comp in &inc.components {
            let before: usize = comp.covers.iter().map(|v| multiplicity(&current, t, v, comp.colour)).sum();
            let after: usize = comp.covers.iter().map(|v| multiplicity(&next, t, v, comp.colour)).sum();
            certify(before == after, || format!("colour {} not conserved over {:?}", comp.colour, comp.covers))?;
        }
        let pv = step.cycle[step.pivot];
        certify(multiplicity(&next, t, pv, step.colours[step.pivot]) == 0, || {
            format!("pivot {pv} kept colour {}", step.colours[step.pivot])
        })?;
        certify(next_inc.edge_count() < inc.edge_count(), || "incidence edges did not decrease".into())?;
        certify(next_inc.cycle_rank() <= inc.cycle_rank(), || "redistribution created a cycle".into())?;
        ensure_clustered(&host, &next, param)
            .map_err(|e| Error::Certification(format!("redistribution broke clustering: {e}")))?;

        trace.eliminations.push(step);
        current = next;
        inc = next_inc;
    }
    Ok((current, trace))
}

/// First component (by smallest product vertex) covering at most `ell` base
/// vertices. Requires an acyclic incidence graph.
pub fn find_small_component(g: &Graph, c: &Colouring, t: usize, ell: usize) -> Result<IncidenceComponent> {
    let inc = build_incidence(g, c, t)?;
    certify(inc.is_acyclic(), || "incidence graph has a cycle".into())?;
    if let Some(comp) = inc.components.iter().find(|comp| comp.covers.len() <= ell) {
        return Ok(comp.clone());
    }
    let sizes: Vec<(u32, usize)> = inc.components.iter().map(|c| (c.colour, c.covers.len())).collect();
    Err(Error::Certification(format!(
        "no component covers at most {ell} vertices; (colour, covered) = {sizes:?}"
    )))
}

/// An `ell`-clustered colouring of `g` from an `ell·t`-clustered colouring of
/// `g ⊠ K_t`, using only colours each vertex already carries.
pub fn descend(g: &Graph, c: &Colouring, t: usize, ell: usize) -> Result<(Colouring, TransferTrace)> {
    check_shape(g, c, t)?;
    if ell == 0 {
        return Err(Error::OutOfRange("cluster size must be at least 1".into()));
    }
    let param = ell * t;
    ensure_clustered(&product(g, t), c, param)?;
    let n = g.n();
    let mut current = c.clone();
    let mut out = alloc::vec![0u32; n];
    let mut alive = VertexSet::full(n);
    let mut trace = TransferTrace::default();
    while !alive.is_empty() {
        let idx = alive.to_vec();
        let sub = g.induced(&alive);
        let sub_c = Colouring::new(idx.iter().flat_map(|&v| v * t..(v + 1) * t).map(|p| current.colour(p)).collect())?;
        let (nice, steps) = eliminate_cycles(&sub, &sub_c, t, param)?;
        for (a, &v) in idx.iter().enumerate() {
            for i in 0..t {
                current.set_colour(v * t + i, nice.colour(a * t + i));
            }
        }
        trace.eliminations.extend(steps.eliminations.into_iter().map(|mut s| {
            s.cycle.iter_mut().for_each(|v| *v = idx[*v]);
            s
        }));
        let comp = find_small_component(&sub, &nice, t, ell)?;
        let covered: Vec<usize> = comp.covers.iter().map(|a| idx[a]).collect();
        for &v in &covered {
            out[v] = comp.colour;
            alive.remove(v);
        }
        trace.peels.push(Peel { colour: comp.colour, covered });
    }
    let out = Colouring::new(out)?;
    certify(check_clustered(g, &out, ell)?.is_valid(), || format!("descended colouring is not {ell}-clustered"))?;
    for v in 0..n {
        certify(colour_set(c, t, v).contains(&out.colour(v)), || format!("vertex {v} got a colour it never carried"))?;
    }
    Ok((out, trace))
}

/// Re-applies the redistribution steps of a trace.
pub fn replay_eliminations(g: &Graph, c: &Colouring, t: usize, steps: &[EliminationStep]) -> Result<Colouring> {
    check_shape(g, c, t)?;
    let mut current = c.clone();
    for step in steps {
        if step.cycle.iter().any(|&v| v >= g.n()) || step.cycle.len() != step.colours.len() {
            return Err(Error::Certification("malformed elimination step".into()));
        }
        current = redistribute(&current, t, step)?;
    }
    Ok(current)
}

/// Re-applies a full trace from [`descend`]; returns the cycle-free product
/// colouring and the colouring of `g`.
pub fn replay(g: &Graph, c: &Colouring, t: usize, trace: &TransferTrace) -> Result<(Colouring, Colouring)> {
    let current = replay_eliminations(g, c, t, &trace.eliminations)?;
    let mut out = alloc::vec![0u32; g.n()];
    for peel in &trace.peels {
        for &v in &peel.covered {
            if v >= g.n() || multiplicity(&current, t, v, peel.colour) == 0 {
                return Err(Error::Certification(format!("peel colour {} absent at vertex {v}", peel.colour)));
            }
            out[v] = peel.colour;
        }
    }
    if let Some(v) = out.iter().position(|&x| x == 0) {
        return Err(Error::Certification(format!("trace never colours vertex {v}")));
    }
    Ok((current, Colouring::new(out)?))
}

#[cfg(test)]
mod tests;
