//! Spectra of the adjacency, Laplacian and signless Laplacian matrices.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{strong_product, Graph};
use crate::families::complete;
use crate::linalg::{jacobi, Matrix};

/// Default tolerance for grouping numerically equal eigenvalues.
pub const MULTIPLICITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    Adjacency,
    /// `D - A`
    Laplacian,
    /// `D + A`
    SignlessLaplacian,
}

/// Eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, tol: MULTIPLICITY_TOL }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// λ₁
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// λₙ
    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `i`-th largest, 1-based.
    pub fn nth(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn multiplicity(&self, value: f64) -> usize {
        self.values.iter().filter(|&&x| (x - value).abs() <= self.tol).count()
    }

    /// Distinct eigenvalues with multiplicities. Consecutive values closer than
    /// the tolerance are merged; each group reports its mean.
    pub fn groups(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((sum, count, last)) if (*last - x).abs() <= self.tol => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter().map(|(sum, count, _)| (sum / count as f64, count)).collect()
    }
}

/// Number of entries of `s` within its tolerance of `value`.
pub fn multiplicity(s: &Spectrum, value: f64) -> usize {
    s.multiplicity(value)
}

pub fn adjacency_matrix(g: &Graph) -> Matrix {
    Matrix::from_fn(g.n(), |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

pub fn graph_matrix(g: &Graph, kind: MatrixKind) -> Matrix {
    let sign = match kind {
        MatrixKind::Adjacency => return adjacency_matrix(g),
        MatrixKind::Laplacian => -1.0,
        MatrixKind::SignlessLaplacian => 1.0,
    };
    Matrix::from_fn(g.n(), |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            sign
        } else {
            0.0
        }
    })
}

/// Eigenvalues (descending) and the matching orthonormal eigenvectors.
pub fn eigensolve(m: &Matrix) -> Result<(Spectrum, Vec<Vec<f64>>)> {
    let e = jacobi(m)?;
    Ok((Spectrum { values: e.values, tol: MULTIPLICITY_TOL }, e.vectors))
}

pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(eigensolve(&graph_matrix(g, kind))?.0)
}

/// Positive unit eigenvector of λ₁ for a connected graph.
pub fn perron_vector(g: &Graph) -> Result<Vec<f64>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (_, vectors) = eigensolve(&adjacency_matrix(g))?;
    let mut u = vectors.into_iter().next().expect("n >= 1");
    if u[0] < 0.0 {
        u.iter_mut().for_each(|x| *x = -*x);
    }
    if let Some(v) = u.iter().position(|&x| x <= 0.0) {
        return Err(Error::Certification(alloc::format!(
            "Perron vector entry {v} is not positive"
        )));
    }
    Ok(u)
}

/// Predicted spectrum of `G ⊠ K_n` from the spectrum and degrees of `G`.
pub fn predicted_product_spectrum(g: &Graph, n: usize, kind: MatrixKind) -> Result<Spectrum> {
    let base = spectrum(g, kind)?;
    let nf = n as f64;
    let mut values: Vec<f64> = base
        .values
        .iter()
        .map(|&x| match kind {
            MatrixKind::Adjacency => nf * x + (nf - 1.0),
            MatrixKind::Laplacian => nf * x,
            MatrixKind::SignlessLaplacian => nf * x + 2.0 * (nf - 1.0),
        })
        .collect();
    for u in 0..g.n() {
        let d = g.degree(u) as f64;
        let second = match kind {
            MatrixKind::Adjacency => -1.0,
            MatrixKind::Laplacian => nf * d + nf,
            MatrixKind::SignlessLaplacian => (nf - 2.0) + nf * d,
        };
        values.extend(core::iter::repeat_n(second, n - 1));
    }
    Ok(Spectrum::new(values))
}

/// Whether the computed spectrum of `G ⊠ K_n` matches the predicted multiset within 1e-7.
pub fn product_spectrum_identity_check(g: &Graph, n: usize, kind: MatrixKind) -> bool {
    if n == 0 || g.is_empty() {
        return false;
    }
    let Ok(predicted) = predicted_product_spectrum(g, n, kind) else {
        return false;
    };
    let Ok(actual) = spectrum(&strong_product(g, &complete(n)), kind) else {
        return false;
    };
    predicted.len() == actual.len()
        && predicted.values.iter().zip(&actual.values).all(|(a, b)| (a - b).abs() <= 1e-7)
}
