//! Exact solvers for chromatic parameters of small graphs.
//!
//! Every solve is deterministic. A solve that hits its node limit or whose
//! stop callback fires returns [`Outcome::Timeout`] with the best bounds it
//! had, never a guessed value.

mod lp;
mod search;
mod sets;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::colouring::{check, check_bfold, BFoldColouring, Colouring, Mode};
use crate::error::{Error, Result};
use crate::families::complete;
use crate::graph::{strong_product, Graph, VertexSet};
use crate::spectra::{spectrum, MatrixKind};

pub use lp::rational_approx;
use search::{Found, Plan, Search};
use sets::SetSearch;

/// Default vertex cap for the exact solvers.
pub const DEFAULT_CAP: usize = 40;

/// Vertex cap for the fractional solver, which enumerates all vertex subsets.
pub const FRACTIONAL_CAP: usize = 16;

/// Resource limits for a single solve.
#[derive(Clone, Copy)]
pub struct Limits<'a> {
    /// Largest accepted graph order (at most 64).
    pub cap: usize,
    /// Abort after this many search nodes.
    pub node_limit: Option<u64>,
    /// Polled every 1024 nodes; returning `true` aborts the solve.
    pub stop: Option<&'a dyn Fn() -> bool>,
}

impl Default for Limits<'_> {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP, node_limit: None, stop: None }
    }
}

impl<'a> Limits<'a> {
    pub fn with_cap(cap: usize) -> Self {
        Limits { cap, ..Default::default() }
    }

    fn admit(&self, g: &Graph) -> Result<Vec<u64>> {
        let cap = self.cap.min(64);
        if g.n() > cap {
            return Err(Error::TooLarge { n: g.n(), cap });
        }
        g.masks()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult<W> {
    pub value: usize,
    pub witness: W,
    pub nodes_explored: u64,
}

/// What a solve knew when it was stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partial<W> {
    pub lower: usize,
    pub upper: usize,
    pub best: W,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<W> {
    Solved(SolveResult<W>),
    Timeout(Partial<W>),
}

impl<W> Outcome<W> {
    pub fn solved(&self) -> Option<&SolveResult<W>> {
        match self {
            Outcome::Solved(r) => Some(r),
            Outcome::Timeout(_) => None,
        }
    }

    pub fn value(&self) -> Option<usize> {
        self.solved().map(|r| r.value)
    }

    pub fn is_timeout(&self) -> bool {
        matches!(self, Outcome::Timeout(_))
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            Outcome::Solved(r) => r.nodes_explored,
            Outcome::Timeout(p) => p.nodes_explored,
        }
    }

    /// The solved result; panics on timeout.
    pub fn unwrap_solved(self) -> SolveResult<W> {
        match self {
            Outcome::Solved(r) => r,
            Outcome::Timeout(_) => panic!("solve timed out"),
        }
    }
}

fn to_colouring(colours: Vec<u32>) -> Colouring {
    Colouring::new(colours).expect("search colours start at 1")
}

/// Hoffman–Bilu ceiling valid for `mode` (clustered-t colourings are (t−1)-improper).
fn spectral_floor(g: &Graph, mode: Mode) -> usize {
    if g.edge_count() == 0 {
        return 1;
    }
    let d = match mode {
        Mode::Proper => 0.0,
        Mode::Improper(d) => d as f64,
        Mode::Clustered(t) => t as f64 - 1.0,
    };
    let Ok(s) = spectrum(g, MatrixKind::Adjacency) else {
        return 1;
    };
    let (l1, ln) = (s.largest(), s.smallest());
    let bound = (l1 - ln) / (d - ln);
    libm::ceil(bound - 1e-6).max(1.0) as usize
}

/// Exact minimum number of colours under `mode`.
pub fn chromatic(g: &Graph, mode: Mode, limits: &Limits<'_>) -> Result<Outcome<Colouring>> {
    match mode {
        Mode::Clustered(0) => return Err(Error::OutOfRange("cluster size t must be at least 1".into())),
        Mode::Improper(_) | Mode::Proper | Mode::Clustered(_) => {}
    }
    let adj = limits.admit(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(Outcome::Solved(SolveResult { value: 0, witness: to_colouring(Vec::new()), nodes_explored: 0 }));
    }
    let plan = Plan::with_twins(&adj);
    colour_search(&adj, &plan, mode, limits, lower_bound(g, &adj, mode, limits))
}

fn lower_bound(g: &Graph, adj: &[u64], mode: Mode, limits: &Limits<'_>) -> usize {
    let mut clique = SetSearch::new(adj, limits);
    clique.max_clique();
    let omega = clique.best.count_ones() as usize;
    let per_class = mode.clique_capacity();
    omega.div_ceil(per_class).max(spectral_floor(g, mode)).max(1)
}

fn colour_search(
    adj: &[u64],
    plan: &Plan,
    mode: Mode,
    limits: &Limits<'_>,
    lower: usize,
) -> Result<Outcome<Colouring>> {
    let mut search = Search::new(adj, plan, mode, limits);
    let greedy = search.greedy();
    let upper = *greedy.iter().max().expect("nonempty") as usize;
    for k in lower..upper {
        match search.colourable(k) {
            Found::Yes(c) => {
                return Ok(Outcome::Solved(SolveResult {
                    value: k,
                    witness: to_colouring(c),
                    nodes_explored: search.nodes,
                }))
            }
            Found::No => {}
            Found::Aborted => {
                return Ok(Outcome::Timeout(Partial {
                    lower: k,
                    upper,
                    best: to_colouring(greedy),
                    nodes_explored: search.nodes,
                }))
            }
        }
    }
    Ok(Outcome::Solved(SolveResult { value: upper, witness: to_colouring(greedy), nodes_explored: search.nodes }))
}

/// χ^d(G)
pub fn chromatic_improper(g: &Graph, d: usize, limits: &Limits<'_>) -> Result<Outcome<Colouring>> {
    chromatic(g, Mode::Improper(d), limits)
}

/// χ^t̲(G)
pub fn chromatic_clustered(g: &Graph, t: usize, limits: &Limits<'_>) -> Result<Outcome<Colouring>> {
    if t == 0 {
        return Err(Error::OutOfRange("cluster size t must be at least 1".into()));
    }
    chromatic(g, Mode::Clustered(t), limits)
}

fn bfold_from_product(colours: &[u32], b: usize) -> BFoldColouring {
    let sets = colours.chunks(b).map(|c| c.iter().copied().collect::<BTreeSet<u32>>()).collect();
    BFoldColouring::new(sets).expect("search colours start at 1")
}

/// b-fold chromatic number under `mode`, by direct search: `(v, i)` of
/// `G ⊠ K_b` carries the `i`-th smallest colour of `v`.
pub fn chromatic_bfold(g: &Graph, b: usize, mode: Mode, limits: &Limits<'_>) -> Result<Outcome<BFoldColouring>> {
    if b == 0 {
        return Err(Error::OutOfRange("fold size b must be at least 1".into()));
    }
    if b == 1 {
        return Ok(match chromatic(g, mode, limits)? {
            Outcome::Solved(r) => Outcome::Solved(SolveResult {
                value: r.value,
                witness: BFoldColouring::from(&r.witness),
                nodes_explored: r.nodes_explored,
            }),
            Outcome::Timeout(p) => Outcome::Timeout(Partial {
                lower: p.lower,
                upper: p.upper,
                best: BFoldColouring::from(&p.best),
                nodes_explored: p.nodes_explored,
            }),
        });
    }
    let host = strong_product(g, &complete(b));
    let adj = limits.admit(&host)?;
    if g.n() == 0 {
        return Ok(Outcome::Solved(SolveResult { value: 0, witness: bfold_from_product(&[], b), nodes_explored: 0 }));
    }
    let plan = Plan::strict_blocks(&adj, b);
    // each vertex needs b distinct colours; a clique of the base needs ω·b / capacity
    let lower = {
        let base = g.masks()?;
        let mut clique = SetSearch::new(&base, limits);
        clique.max_clique();
        let omega = clique.best.count_ones() as usize;
        (omega * b).div_ceil(mode.clique_capacity()).max(b)
    };
    Ok(match colour_search(&adj, &plan, mode, limits, lower)? {
        Outcome::Solved(r) => Outcome::Solved(SolveResult {
            value: r.value,
            witness: bfold_from_product(r.witness.as_slice(), b),
            nodes_explored: r.nodes_explored,
        }),
        Outcome::Timeout(p) => Outcome::Timeout(Partial {
            lower: p.lower,
            upper: p.upper,
            best: bfold_from_product(p.best.as_slice(), b),
            nodes_explored: p.nodes_explored,
        }),
    })
}

/// b-fold chromatic number of `base ⊠ K_factor` through the product identity
/// `χ_b(base ⊠ K_f) = χ(base ⊠ K_f ⊠ K_b)`, valid for `Improper(f − 1)` and
/// `Clustered(f)`. The optimal colouring of the triple product is folded back
/// into a b-fold colouring of `base ⊠ K_f` and re-checked.
pub fn chromatic_bfold_by_product(
    base: &Graph,
    factor: usize,
    b: usize,
    mode: Mode,
    limits: &Limits<'_>,
) -> Result<Outcome<BFoldColouring>> {
    let ok = match mode {
        Mode::Improper(d) => d + 1 == factor,
        Mode::Clustered(t) => t == factor,
        Mode::Proper => factor == 1,
    };
    if !ok || b == 0 {
        return Err(Error::OutOfRange(alloc::format!(
            "product reduction needs b >= 1 and a factor matching the mode ({mode:?}, factor {factor})"
        )));
    }
    let host = strong_product(base, &complete(factor));
    let triple = strong_product(&host, &complete(b));
    let r = match chromatic(&triple, mode, limits)? {
        Outcome::Solved(r) => r,
        Outcome::Timeout(p) => {
            return Ok(Outcome::Timeout(Partial {
                lower: p.lower,
                upper: p.upper,
                best: bfold_from_product(&Vec::new(), b),
                nodes_explored: p.nodes_explored,
            }))
        }
    };
    let block = factor * b;
    let mut sets: Vec<BTreeSet<u32>> = Vec::with_capacity(host.n());
    for chunk in r.witness.as_slice().chunks(block) {
        let mut colours = chunk.to_vec();
        colours.sort_unstable();
        let mut rows = alloc::vec![BTreeSet::new(); factor];
        // each colour occurs at most `factor` times in a block, so dealing the
        // sorted list round-robin gives every row b distinct colours
        for (k, x) in colours.into_iter().enumerate() {
            rows[k % factor].insert(x);
        }
        sets.extend(rows);
    }
    let witness = BFoldColouring::new(sets)?;
    if !check_bfold(&host, &witness, b, mode)?.is_valid() {
        return Err(Error::Certification("folded b-fold colouring failed its check".into()));
    }
    Ok(Outcome::Solved(SolveResult { value: r.value, witness, nodes_explored: r.nodes_explored }))
}

/// ω(G)
pub fn clique_number(g: &Graph, limits: &Limits<'_>) -> Result<Outcome<VertexSet>> {
    let adj = limits.admit(g)?;
    let mut s = SetSearch::new(&adj, limits);
    s.max_clique();
    let witness = VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| s.best >> v & 1 == 1));
    let size = witness.len();
    Ok(if s.aborted {
        Outcome::Timeout(Partial { lower: size, upper: g.n(), best: witness, nodes_explored: s.nodes })
    } else {
        Outcome::Solved(SolveResult { value: size, witness, nodes_explored: s.nodes })
    })
}

/// Largest induced subgraph with maximum degree at most `d`.
pub fn alpha_d(g: &Graph, d: usize, limits: &Limits<'_>) -> Result<Outcome<VertexSet>> {
    let adj = limits.admit(g)?;
    let mut s = SetSearch::new(&adj, limits);
    s.max_sparse(d);
    let witness = VertexSet::from_iter(g.n(), (0..g.n()).filter(|&v| s.best >> v & 1 == 1));
    let size = witness.len();
    Ok(if s.aborted {
        Outcome::Timeout(Partial { lower: size, upper: g.n(), best: witness, nodes_explored: s.nodes })
    } else {
        Outcome::Solved(SolveResult { value: size, witness, nodes_explored: s.nodes })
    })
}

/// Every colouring with at most `k` colours under `mode`, one per colour
/// permutation class, stopping after `max`. `None` when the limits fire.
pub fn enumerate_colourings(
    g: &Graph,
    mode: Mode,
    k: usize,
    max: usize,
    limits: &Limits<'_>,
) -> Result<Option<Vec<Colouring>>> {
    let adj = limits.admit(g)?;
    let plan = Plan::plain(&adj);
    let mut search = Search::new(&adj, &plan, mode, limits);
    Ok(search.enumerate(k, max).map(|all| all.into_iter().map(to_colouring).collect()))
}

/// Optimal fractional covering by admissible sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalResult {
    pub value: f64,
    /// `(p, q)` with `q ≤ n` when the value is such a fraction to 1e-9.
    pub rational: Option<(i64, u64)>,
    /// Admissible sets with positive weight; the weights sum to `value`.
    pub witness: Vec<(VertexSet, f64)>,
    /// Number of inclusion-maximal admissible sets in the LP.
    pub maximal_sets: usize,
    pub nodes_explored: u64,
}

fn admissible_mask(adj: &[u64], set: u64, mode: Mode) -> bool {
    let mut s = set;
    match mode {
        Mode::Proper | Mode::Improper(_) => {
            let d = if let Mode::Improper(d) = mode { d } else { 0 };
            while s != 0 {
                let v = s.trailing_zeros() as usize;
                s &= s - 1;
                if (adj[v] & set).count_ones() as usize > d {
                    return false;
                }
            }
            true
        }
        Mode::Clustered(t) => {
            while s != 0 {
                let v = s.trailing_zeros() as usize;
                let mut comp = 1u64 << v;
                let mut frontier = comp;
                while frontier != 0 {
                    let u = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let fresh = adj[u] & set & !comp;
                    comp |= fresh;
                    frontier |= fresh;
                }
                if comp.count_ones() as usize > t {
                    return false;
                }
                s &= !comp;
            }
            true
        }
    }
}

/// Fractional chromatic number under `mode`: the covering LP over all
/// inclusion-maximal admissible vertex sets, solved through its dual.
pub fn fractional_chromatic(g: &Graph, mode: Mode) -> Result<FractionalResult> {
    if let Mode::Clustered(0) = mode {
        return Err(Error::OutOfRange("cluster size t must be at least 1".into()));
    }
    let n = g.n();
    if n > FRACTIONAL_CAP {
        return Err(Error::TooLarge { n, cap: FRACTIONAL_CAP });
    }
    if n == 0 {
        return Ok(FractionalResult { value: 0.0, rational: Some((0, 1)), witness: Vec::new(), maximal_sets: 0, nodes_explored: 0 });
    }
    let adj = g.masks()?;
    let full = (1u64 << n) - 1;
    let mut ok = alloc::vec![false; 1 << n];
    for set in 1..=full {
        ok[set as usize] = admissible_mask(&adj, set, mode);
    }
    let maximal: Vec<u64> = (1..=full)
        .filter(|&s| ok[s as usize] && (0..n).all(|v| s >> v & 1 == 1 || !ok[(s | 1 << v) as usize]))
        .collect();
    // dual: max Σ y_v  s.t.  Σ_{v ∈ S} y_v ≤ 1 for every maximal S
    let rows: Vec<Vec<f64>> = maximal
        .iter()
        .map(|&s| (0..n).map(|v| if s >> v & 1 == 1 { 1.0 } else { 0.0 }).collect())
        .collect();
    let sol = lp::maximise(&rows, &alloc::vec![1.0; rows.len()], &alloc::vec![1.0; n])?;
    let witness: Vec<(VertexSet, f64)> = maximal
        .iter()
        .zip(&sol.dual)
        .filter(|(_, &w)| w > 1e-12)
        .map(|(&s, &w)| (VertexSet::from_iter(n, (0..n).filter(|&v| s >> v & 1 == 1)), w))
        .collect();
    // certify: the set weights cover every vertex and sum to the dual optimum
    for v in 0..n {
        let cover: f64 = witness.iter().filter(|(s, _)| s.contains(v)).map(|(_, w)| w).sum();
        if cover < 1.0 - 1e-7 {
            return Err(Error::Certification(alloc::format!("vertex {v} covered only {cover}")));
        }
    }
    // and the vertex weights are a feasible dual with the same value
    if maximal.iter().any(|&s| (0..n).filter(|&v| s >> v & 1 == 1).map(|v| sol.primal[v]).sum::<f64>() > 1.0 + 1e-7)
        || (sol.primal.iter().sum::<f64>() - sol.value).abs() > 1e-7
    {
        return Err(Error::Certification("vertex weights are not dual feasible".into()));
    }
    let primal: f64 = witness.iter().map(|(_, w)| w).sum();
    if (primal - sol.value).abs() > 1e-7 {
        return Err(Error::Certification(alloc::format!("duality gap {primal} vs {}", sol.value)));
    }
    Ok(FractionalResult {
        value: sol.value,
        rational: rational_approx(sol.value, n as u64, 1e-9),
        witness,
        maximal_sets: maximal.len(),
        nodes_explored: sol.pivots,
    })
}

/// Checks a colouring witness against `mode`; used to certify solver output.
pub fn certify(g: &Graph, c: &Colouring, mode: Mode) -> Result<bool> {
    Ok(check(g, c, mode)?.is_valid())
}
