//! Spectral and combinatorial bounds on improper chromatic numbers.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::solver::{clique_number, Limits};
use crate::spectra::{adjacency_matrix, eigensolve, spectrum, MatrixKind, Spectrum};

/// Margin for "strictly greater than d" in eigenvalue counts.
pub const INERTIA_MARGIN: f64 = 1e-9;

/// Slack when rounding a real lower bound up to an integer.
pub const CEILING_SLACK: f64 = 1e-6;

const VACUOUS_DENOMINATOR: f64 = 1e-9;

/// A symmetric matrix supported on the edges (and diagonal) of a graph with
/// entries in [−1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedCompatibleMatrix {
    matrix: Matrix,
}

impl WeightedCompatibleMatrix {
    pub fn new(g: &Graph, w: Matrix) -> Result<Self> {
        if w.n() != g.n() {
            return Err(Error::DimensionMismatch);
        }
        w.check_symmetric()?;
        for u in 0..w.n() {
            for v in 0..w.n() {
                let x = w.get(u, v);
                if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
                    return Err(Error::IncompatibleEntry { row: u, col: v });
                }
                if u != v && !g.has_edge(u, v) && x != 0.0 {
                    return Err(Error::IncompatibleEntry { row: u, col: v });
                }
            }
        }
        Ok(WeightedCompatibleMatrix { matrix: w })
    }

    pub fn adjacency(g: &Graph) -> Self {
        WeightedCompatibleMatrix { matrix: adjacency_matrix(g) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

/// ⌈x⌉ forgiving eigensolver noise just above an integer.
pub fn ceil_bound(x: f64) -> usize {
    let c = libm::ceil(x - CEILING_SLACK);
    if c < 0.0 {
        0
    } else {
        c as usize
    }
}

/// `(λ₁ − λₙ)/(d − λₙ)`, a lower bound on the d-improper chromatic number.
pub fn hoffman_bilu(g: &Graph, d: usize) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let s = spectrum(g, MatrixKind::Adjacency)?;
    Ok(hoffman_from(&s, d))
}

fn hoffman_from(s: &Spectrum, d: usize) -> f64 {
    let (l1, ln) = (s.largest(), s.smallest());
    (l1 - ln) / (d as f64 - ln)
}

/// Eigenvalues of `W` strictly above `d` and strictly below `−d`.
pub fn inertia_counts(w: &WeightedCompatibleMatrix, d: usize) -> Result<(usize, usize)> {
    if w.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (s, _) = eigensolve(w.matrix())?;
    let d = d as f64;
    let plus = s.values.iter().filter(|&&x| x > d + INERTIA_MARGIN).count();
    let minus = s.values.iter().filter(|&&x| x < -d - INERTIA_MARGIN).count();
    Ok((plus, minus))
}

/// Upper bound on the largest d-sparse induced subgraph.
pub fn inertia_alpha_bound(w: &WeightedCompatibleMatrix, d: usize) -> Result<usize> {
    let (plus, minus) = inertia_counts(w, d)?;
    let n = w.n();
    Ok((n - plus).min(n - minus))
}

/// `⌈max(n/(n − n⁺), n/(n − n⁻))⌉`
pub fn inertia_chromatic_bound(w: &WeightedCompatibleMatrix, d: usize) -> Result<usize> {
    let (plus, minus) = inertia_counts(w, d)?;
    let n = w.n();
    if plus == n || minus == n {
        return Err(Error::Degenerate("every eigenvalue lies beyond ±d".into()));
    }
    Ok(n.div_ceil(n - plus).max(n.div_ceil(n - minus)))
}

/// The four generalised Wocjan–Elphick bounds for one `m`; `None` marks a
/// non-positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WocjanElphick {
    pub m: usize,
    pub adjacency_tail: Option<f64>,
    pub laplacian: Option<f64>,
    pub signless: Option<f64>,
    pub mixed: Option<f64>,
}

impl WocjanElphick {
    pub fn values(&self) -> [(&'static str, Option<f64>); 4] {
        [
            ("wocjan_elphick_adjacency", self.adjacency_tail),
            ("wocjan_elphick_laplacian", self.laplacian),
            ("wocjan_elphick_signless", self.signless),
            ("wocjan_elphick_mixed", self.mixed),
        ]
    }
}

pub(crate) struct Spectra {
    pub adjacency: Spectrum,
    pub laplacian: Spectrum,
    pub signless: Spectrum,
}

impl Spectra {
    pub fn of(g: &Graph) -> Result<Self> {
        Ok(Spectra {
            adjacency: spectrum(g, MatrixKind::Adjacency)?,
            laplacian: spectrum(g, MatrixKind::Laplacian)?,
            signless: spectrum(g, MatrixKind::SignlessLaplacian)?,
        })
    }
}

pub fn wocjan_elphick(g: &Graph, d: usize, m: usize) -> Result<WocjanElphick> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if m == 0 || m > g.n() {
        return Err(Error::OutOfRange(alloc::format!("m = {m} must lie in 1..={}", g.n())));
    }
    Ok(wocjan_from(&Spectra::of(g)?, d, m))
}

pub(crate) fn wocjan_from(s: &Spectra, d: usize, m: usize) -> WocjanElphick {
    let n = s.adjacency.len();
    let lam = |i: usize| s.adjacency.nth(i);
    let mu = |i: usize| s.laplacian.nth(i);
    let theta = |i: usize| s.signless.nth(i);
    let dm = (d * m) as f64;
    let sum = |f: &dyn Fn(usize) -> f64| (1..=m).map(f).sum::<f64>();
    let numerator = -dm + sum(&|i| lam(i));
    let bound = |den: f64| (den > VACUOUS_DENOMINATOR).then(|| 1.0 + numerator / den);
    WocjanElphick {
        m,
        adjacency_tail: bound(dm - sum(&|i| lam(n + 1 - i))),
        laplacian: bound(dm + sum(&|i| mu(i) - lam(i))),
        signless: bound(dm + sum(&|i| lam(i) + mu(i) - theta(i))),
        mixed: bound(dm + sum(&|i| lam(i) + mu(n + 1 - i) - theta(n + 1 - i))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Combinatorial {
    pub omega: usize,
    /// ω/(d+1)
    pub clique_lb: f64,
    /// ⌈(Δ+1)/(d+1)⌉
    pub lovasz_ub: usize,
}

/// Clique and Lovász bounds. Returns `None` for ω when the clique search
/// hits the limits.
pub fn combinatorial_bounds(g: &Graph, d: usize, limits: &Limits<'_>) -> Result<Option<Combinatorial>> {
    let lovasz_ub = if g.is_empty() { 0 } else { (g.max_degree() + 1).div_ceil(d + 1) };
    Ok(clique_number(g, limits)?.value().map(|omega| Combinatorial {
        omega,
        clique_lb: omega as f64 / (d + 1) as f64,
        lovasz_ub,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// lower bound on the d-improper chromatic number
    ChromaticLower,
    /// upper bound on the d-improper chromatic number
    ChromaticUpper,
    /// upper bound on the largest d-sparse induced subgraph
    SparseSetUpper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    /// `None` when the bound carries no information for this graph
    pub value: Option<f64>,
    pub ceiling: Option<usize>,
    pub best: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<BoundEntry>,
    pub best_lower: usize,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> impl Iterator<Item = &BoundEntry> {
        let name = String::from(name);
        self.entries.iter().filter(move |e| e.name == name)
    }

    pub fn lower_bounds(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.kind == BoundKind::ChromaticLower)
    }

    pub fn best_entries(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.best)
    }
}

fn entry(name: &str, kind: BoundKind, d: usize, value: Option<f64>) -> BoundEntry {
    let ceiling = value.map(|v| match kind {
        BoundKind::ChromaticLower => ceil_bound(v),
        _ => libm::floor(v + CEILING_SLACK) as usize,
    });
    BoundEntry { name: name.into(), kind, d, m: None, matrix: None, value, ceiling, best: false }
}

/// Every bound above for one graph. `weights` are extra compatible matrices
/// for the inertia bound, labelled by the caller; the adjacency matrix is
/// always included. Every entry attaining the largest lower-bound ceiling is
/// flagged `best`.
pub fn bound_report(
    g: &Graph,
    d: usize,
    m_max: usize,
    weights: &[(String, WeightedCompatibleMatrix)],
    limits: &Limits<'_>,
) -> Result<BoundReport> {
    let n = g.n();
    let mut entries = Vec::new();
    if n == 0 {
        return Ok(BoundReport { n, d, entries, best_lower: 0 });
    }
    let spectra = Spectra::of(g)?;
    let hoffman = (g.edge_count() > 0).then(|| hoffman_from(&spectra.adjacency, d));
    entries.push(entry("hoffman_bilu", BoundKind::ChromaticLower, d, hoffman));
    for m in 1..=m_max.min(n) {
        let we = wocjan_from(&spectra, d, m);
        for (name, value) in we.values() {
            let mut e = entry(name, BoundKind::ChromaticLower, d, value);
            e.m = Some(m);
            entries.push(e);
        }
    }
    let mut matrices = alloc::vec![(String::from("adjacency"), WeightedCompatibleMatrix::adjacency(g))];
    matrices.extend(weights.iter().cloned());
    for (label, w) in &matrices {
        if w.n() != n {
            return Err(Error::DimensionMismatch);
        }
        let (plus, minus) = inertia_counts(w, d)?;
        let chromatic = (plus < n && minus < n)
            .then(|| (n as f64 / (n - plus) as f64).max(n as f64 / (n - minus) as f64));
        let mut e = entry("inertia_chromatic", BoundKind::ChromaticLower, d, chromatic);
        e.ceiling = chromatic.map(|_| n.div_ceil(n - plus).max(n.div_ceil(n - minus)));
        e.matrix = Some(label.clone());
        entries.push(e);
        let mut e = entry("inertia_alpha", BoundKind::SparseSetUpper, d, Some((n - plus).min(n - minus) as f64));
        e.matrix = Some(label.clone());
        entries.push(e);
    }
    let comb = combinatorial_bounds(g, d, limits)?;
    entries.push(entry("clique", BoundKind::ChromaticLower, d, comb.map(|c| c.clique_lb)));
    entries.push(entry(
        "lovasz",
        BoundKind::ChromaticUpper,
        d,
        Some((g.max_degree() + 1).div_ceil(d + 1) as f64),
    ));
    let best_lower = entries
        .iter()
        .filter(|e| e.kind == BoundKind::ChromaticLower)
        .filter_map(|e| e.ceiling)
        .max()
        .unwrap_or(0)
        .max(1);
    for e in &mut entries {
        e.best = e.kind == BoundKind::ChromaticLower && e.ceiling == Some(best_lower);
    }
    Ok(BoundReport { n, d, entries, best_lower })
}
