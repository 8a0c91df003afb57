//! When is the d-improper Hoffman bound attained? Quotient matrices,
//! weight-regular and equitable partitions, and a structural diagnosis of
//! colourings that meet the bound.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bounds::hoffman_bilu;
use crate::colouring::{check_improper, check_proper, lift_colouring, Colouring, Mode};
use crate::error::{Error, Result};
use crate::families::complete;
use crate::graph::{strong_product, Graph, VertexSet};
use crate::linalg::Matrix;
use crate::solver::{enumerate_colourings, Limits};
use crate::spectra::{eigensolve, perron_vector, spectrum, MatrixKind};

pub const WEIGHT_TOL: f64 = 1e-6;
pub const EQUALITY_TOL: f64 = 1e-6;
/// Largest graph on which optimal colourings are enumerated for uniqueness.
pub const UNIQUENESS_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::new(n);
        for p in &parts {
            if p.universe() != n {
                return Err(Error::DimensionMismatch);
            }
            if p.is_empty() {
                return Err(Error::OutOfRange("partition parts must be non-empty".into()));
            }
            if !p.is_disjoint(&seen) {
                return Err(Error::OutOfRange("partition parts overlap".into()));
            }
            seen.union_with(p);
        }
        if seen.len() != n {
            return Err(Error::OutOfRange("partition does not cover every vertex".into()));
        }
        Ok(Partition { parts })
    }

    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        for &v in lists.iter().flat_map(|l| l.iter()) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Self::new(n, lists.iter().map(|l| VertexSet::from_iter(n, l.iter().copied())).collect())
    }

    /// Colour classes in increasing colour order.
    pub fn from_colouring(c: &Colouring) -> Self {
        Partition { parts: c.classes().into_iter().map(|(_, s)| s).collect() }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.parts.iter().position(|p| p.contains(v)).expect("partition covers every vertex")
    }

    fn check_host(&self, g: &Graph) -> Result<()> {
        match self.parts.first() {
            Some(p) if p.universe() == g.n() => Ok(()),
            None if g.is_empty() => Ok(()),
            _ => Err(Error::DimensionMismatch),
        }
    }
}

/// `C_ij = x_iᵀ A x_j / ‖x_i‖²` for the Perron vector masked to each part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub rows: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuotientMatrix {
    /// Eigenvalues, descending. `C` is similar to the symmetric matrix
    /// `D^{1/2} C D^{-1/2}` with `D = diag(‖x_i‖²)`.
    pub fn eigenvalues(&self, partition: &Partition) -> Result<Vec<f64>> {
        let norms: Vec<f64> = partition
            .parts()
            .iter()
            .map(|p| p.iter().map(|v| self.weights[v] * self.weights[v]).sum::<f64>())
            .collect();
        let m = self.rows.len();
        let sym = Matrix::from_fn(m, |i, j| self.rows[i][j] * libm::sqrt(norms[i] / norms[j]));
        // symmetric up to rounding
        let sym = Matrix::from_fn(m, |i, j| 0.5 * (sym.get(i, j) + sym.get(j, i)));
        Ok(eigensolve(&sym)?.0.values)
    }
}

pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix> {
    p.check_host(g)?;
    let x = perron_vector(g)?;
    let m = p.len();
    let mut rows = alloc::vec![alloc::vec![0.0; m]; m];
    for (i, pi) in p.parts().iter().enumerate() {
        let norm: f64 = pi.iter().map(|u| x[u] * x[u]).sum();
        for (j, pj) in p.parts().iter().enumerate() {
            let cross: f64 = pi
                .iter()
                .map(|u| x[u] * g.neighbours(u).iter().filter(|&v| pj.contains(v)).map(|v| x[v]).sum::<f64>())
                .sum();
            rows[i][j] = cross / norm;
        }
    }
    Ok(QuotientMatrix { rows, weights: x })
}

/// `b_ij(u) = (1/x_u) Σ_{v ∈ V_j ∩ N(u)} x_v` for every part j.
pub fn weight_intersection_numbers(g: &Graph, p: &Partition, u: usize) -> Result<Vec<f64>> {
    p.check_host(g)?;
    if u >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: g.n() });
    }
    let x = perron_vector(g)?;
    Ok(intersection_row(g, p, &x, u))
}

fn intersection_row(g: &Graph, p: &Partition, x: &[f64], u: usize) -> Vec<f64> {
    p.parts()
        .iter()
        .map(|pj| g.neighbours(u).iter().filter(|&v| pj.contains(v)).map(|v| x[v]).sum::<f64>() / x[u])
        .collect()
}

fn constant_per_part<T>(p: &Partition, row: impl Fn(usize) -> Vec<T>, same: impl Fn(&T, &T) -> bool) -> bool {
    p.parts().iter().all(|pi| {
        let first = row(pi.first().expect("non-empty part"));
        pi.iter().all(|u| row(u).iter().zip(&first).all(|(a, b)| same(a, b)))
    })
}

pub fn is_weight_regular(g: &Graph, p: &Partition) -> Result<bool> {
    p.check_host(g)?;
    let x = perron_vector(g)?;
    Ok(constant_per_part(p, |u| intersection_row(g, p, &x, u), |a, b| (a - b).abs() <= WEIGHT_TOL))
}

/// Number of neighbours of `u` in each part.
pub fn part_degrees(g: &Graph, p: &Partition, u: usize) -> Vec<usize> {
    p.parts().iter().map(|pj| g.neighbours(u).intersection_len(pj)).collect()
}

pub fn is_equitable(g: &Graph, p: &Partition) -> Result<bool> {
    p.check_host(g)?;
    Ok(constant_per_part(p, |u| part_degrees(g, p, u), |a, b| a == b))
}

/// Whether the optimal colourings are unique up to colour permutation, and
/// whether the smallest eigenvalue then has multiplicity exactly m − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessCheck {
    pub unique: bool,
    pub multiplicity_exact: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoffmanDiagnosis {
    pub d: usize,
    pub bound: f64,
    pub colours: usize,
    pub equality: bool,
    pub smallest_eigenvalue: f64,
    pub smallest_multiplicity: usize,
    pub quotient: Vec<Vec<f64>>,
    /// smallest eigenvalue has multiplicity ≥ m − 1
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity_ok: Option<bool>,
    /// every colour class induces a d-regular graph
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes_regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_regular: Option<bool>,
    /// present only when n is small enough to enumerate optimal colourings
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniqueness: Option<UniquenessCheck>,
    /// for regular graphs: equitable classes, d neighbours at home and
    /// d − λₙ in every other class
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_structure: Option<bool>,
}

impl HoffmanDiagnosis {
    /// Every applicable structural check passed (vacuously true without equality).
    pub fn all_pass(&self) -> bool {
        [self.multiplicity_ok, self.classes_regular, self.weight_regular, self.regular_structure]
            .iter()
            .all(|x| x.unwrap_or(true))
            && self.uniqueness.is_none_or(|u| u.holds)
    }
}

pub fn diagnose_hoffman(g: &Graph, d: usize, c: &Colouring) -> Result<HoffmanDiagnosis> {
    if let Some(v) = check_improper(g, c, d)?.violation() {
        return Err(Error::InvalidColouring(alloc::format!("{v:?}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bound = hoffman_bilu(g, d)?;
    let s = spectrum(g, MatrixKind::Adjacency)?;
    let ln = s.smallest();
    let smallest_multiplicity = s.multiplicity(ln);
    let partition = Partition::from_colouring(c);
    let m = partition.len();
    let quotient = quotient_matrix(g, &partition)?;
    let equality = (m as f64 - bound).abs() <= EQUALITY_TOL && m == crate::bounds::ceil_bound(bound);
    let mut diag = HoffmanDiagnosis {
        d,
        bound,
        colours: m,
        equality,
        smallest_eigenvalue: ln,
        smallest_multiplicity,
        quotient: quotient.rows.clone(),
        multiplicity_ok: None,
        classes_regular: None,
        weight_regular: None,
        uniqueness: None,
        regular_structure: None,
    };
    if !equality {
        return Ok(diag);
    }
    diag.multiplicity_ok = Some(smallest_multiplicity + 1 >= m);
    diag.classes_regular = Some(
        partition.parts().iter().all(|p| p.iter().all(|u| g.neighbours(u).intersection_len(p) == d)),
    );
    diag.weight_regular = Some(is_weight_regular(g, &partition)?);
    if g.n() <= UNIQUENESS_CAP {
        if let Some(all) = enumerate_colourings(g, Mode::Improper(d), m, 2, &Limits::default())? {
            let unique = all.len() == 1;
            let multiplicity_exact = smallest_multiplicity + 1 == m;
            diag.uniqueness = Some(UniquenessCheck { unique, multiplicity_exact, holds: !unique || multiplicity_exact });
        }
    }
    if g.is_regular() {
        let outside = d as f64 - ln;
        let structure = is_equitable(g, &partition)?
            && (0..g.n()).all(|u| {
                let home = partition.part_of(u);
                part_degrees(g, &partition, u).iter().enumerate().all(|(j, &k)| {
                    if j == home {
                        k == d
                    } else {
                        (k as f64 - outside).abs() <= EQUALITY_TOL
                    }
                })
            });
        diag.regular_structure = Some(structure);
    }
    Ok(diag)
}

/// Lifts a Hoffman colouring of `g` to `g ⊠ K_{d+1}` and reports whether the
/// lift attains the d-improper bound there.
pub fn check_construction_lemma(g: &Graph, d: usize, witness: &Colouring) -> Result<bool> {
    if let Some(v) = check_proper(g, witness)?.violation() {
        return Err(Error::InvalidColouring(alloc::format!("{v:?}")));
    }
    let bound = hoffman_bilu(g, 0)?;
    if (witness.num_colours() as f64 - bound).abs() > EQUALITY_TOL {
        return Err(Error::Certification(
            alloc::format!("{} colours do not meet the Hoffman bound {bound}", witness.num_colours()),
        ));
    }
    let host = strong_product(g, &complete(d + 1));
    Ok(diagnose_hoffman(&host, d, &lift_colouring(witness, d + 1))?.equality)
}
