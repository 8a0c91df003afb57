//! Weight matrix files: the order `n` on the first line, then `n` rows of
//! `n` whitespace-separated decimals.

use defcol_core::bounds::WeightedCompatibleMatrix;
use defcol_core::linalg::Matrix;
use defcol_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightsError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("weight matrix is {found}x{found} but the graph has {expected} vertices")]
    Order { expected: usize, found: usize },
    #[error(transparent)]
    Incompatible(#[from] defcol_core::Error),
}

fn syntax(line: usize, reason: impl Into<String>) -> WeightsError {
    WeightsError::Syntax { line, reason: reason.into() }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, WeightsError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing order line"))?;
    let n: usize = header.trim().parse().map_err(|_| syntax(hline, format!("`{}` is not an order", header.trim())))?;
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        if rows.len() == n {
            return Err(syntax(line, format!("more than {n} rows")));
        }
        let row = text
            .split_whitespace()
            .map(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| syntax(line, format!("`{s}` is not a finite decimal"))))
            .collect::<Result<Vec<f64>, _>>()?;
        if row.len() != n {
            return Err(syntax(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(syntax(hline, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(Matrix::from_rows(&rows)?)
}

/// Parses a weight file and checks it against `g`.
pub fn parse(text: &str, g: &Graph) -> Result<WeightedCompatibleMatrix, WeightsError> {
    let m = parse_matrix(text)?;
    if m.n() != g.n() {
        return Err(WeightsError::Order { expected: g.n(), found: m.n() });
    }
    Ok(WeightedCompatibleMatrix::new(g, m)?)
}

pub fn emit(m: &Matrix) -> String {
    let mut out = format!("{}\n", m.n());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
