//! Dense simplex on the dictionary form, with Bland's rule.
//!
//! Solves `max cᵀy` subject to `A y ≤ b`, `y ≥ 0`, `b ≥ 0`, starting from the
//! all-slack basis. Returns the primal optimum and the dual prices of the
//! constraints.

use alloc::vec::Vec;

use crate::error::{Error, Result};

const EPS: f64 = 1e-11;

pub(crate) struct LpSolution {
    pub value: f64,
    pub primal: Vec<f64>,
    pub dual: Vec<f64>,
    pub pivots: u64,
}

/// Variable labels: `0..n` are structural, `n..n+m` are slacks.
pub(crate) fn maximise(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::LinearProgram("inconsistent dimensions".into()));
    }
    if b.iter().any(|&x| x < 0.0) {
        return Err(Error::LinearProgram("right-hand side must be non-negative".into()));
    }
    let mut t: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut obj = c.to_vec();
    let mut z = 0.0;
    let mut basic: Vec<usize> = (n..n + m).collect();
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut pivots = 0u64;

    loop {
        // Bland: entering variable with the smallest label among improving columns
        let Some(s) = (0..n)
            .filter(|&j| obj[j] > EPS)
            .min_by_key(|&j| nonbasic[j])
        else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][s] > EPS {
                let ratio = rhs[i] / t[i][s];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - EPS || (ratio <= best + EPS && basic[i] < basic[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::LinearProgram("unbounded".into()));
        };
        pivots += 1;
        let p = t[r][s];
        rhs[r] /= p;
        for j in 0..n {
            if j != s {
                t[r][j] /= p;
            }
        }
        t[r][s] = 1.0 / p;
        let row_r = t[r].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = t[i][s];
            if f == 0.0 {
                continue;
            }
            rhs[i] -= f * rhs[r];
            for j in 0..n {
                if j != s {
                    t[i][j] -= f * row_r[j];
                }
            }
            t[i][s] = -f / p;
        }
        let f = obj[s];
        z += f * rhs[r];
        for j in 0..n {
            if j != s {
                obj[j] -= f * row_r[j];
            }
        }
        obj[s] = -f / p;
        core::mem::swap(&mut basic[r], &mut nonbasic[s]);
    }

    let mut primal = alloc::vec![0.0; n];
    for (i, &label) in basic.iter().enumerate() {
        if label < n {
            primal[label] = rhs[i];
        }
    }
    let mut dual = alloc::vec![0.0; m];
    for (j, &label) in nonbasic.iter().enumerate() {
        if label >= n {
            dual[label - n] = -obj[j];
        }
    }
    Ok(LpSolution { value: z, primal, dual, pivots })
}

/// Smallest-denominator fraction `p/q` with `q ≤ max_den` within `tol` of `x`.
pub fn rational_approx(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    (1..=max_den.max(1)).find_map(|q| {
        let p = libm::round(x * q as f64);
        ((x - p / q as f64).abs() <= tol).then_some((p as i64, q))
    })
}
