//! Applications of the synthesizer: semiring matrix products with a
//! complement-of-sparse 0/1 factor, and linear-size algebraic expressions
//! for dense graphs.

mod graph_expr;
mod semiring;

pub use graph_expr::{
    build_dense_graph_expr, eval_graph_expr, GraphExpr, GraphExprError, GraphExprReport, GraphNode,
};
pub use semiring::{find_semiring, semirings, Semiring, BOOLEAN, INT_RING, TROPICAL};

use crate::circuit::CircuitError;
use crate::matrix::Matrix01;
use crate::semigroup::{SemigroupError, Value};
use crate::synth::{synthesize, SynthError, SynthParams};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("row {0} of the 0/1 factor has no ones; its product entries are undefined")]
    AllZeroRow(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// A dense matrix over a semiring carrier, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    values: Vec<Value>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<Value>) -> Result<Self, AppError> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(AppError::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.values[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Value> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// `semicirc-dense v1` text form.
    pub fn to_text(&self, s: &dyn Semiring) -> Result<String, AppError> {
        let mut out = String::new();
        out.push_str("semicirc-dense v1\n");
        out.push_str(&format!("dims {} {}\n", self.rows, self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&s.format_value(self.get(i, j))?);
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_text(text: &str, s: &dyn Semiring) -> Result<Self, AppError> {
        let mut lines = crate::matrix::meaningful_lines(text);
        let (line, header) = lines.next().ok_or(AppError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        if header != "semicirc-dense v1" {
            return Err(AppError::Parse {
                line,
                msg: format!("expected `semicirc-dense v1`, got `{header}`"),
            });
        }
        let (line, dims) = lines.next().ok_or(AppError::Parse {
            line: line + 1,
            msg: "missing dims line".into(),
        })?;
        let mut it = dims.split_whitespace();
        let parsed = (|| {
            if it.next() != Some("dims") {
                return None;
            }
            let r: usize = it.next()?.parse().ok()?;
            let c: usize = it.next()?.parse().ok()?;
            if it.next().is_some() {
                return None;
            }
            Some((r, c))
        })();
        let (rows, cols) = parsed.ok_or(AppError::Parse {
            line,
            msg: format!("bad dims line `{dims}`"),
        })?;
        let mut values = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line, row) = lines.next().ok_or(AppError::Parse {
                line: line + 1,
                msg: "missing matrix row".into(),
            })?;
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(AppError::Parse {
                    line,
                    msg: format!("expected {cols} values, found {}", tokens.len()),
                });
            }
            for tok in tokens {
                values.push(s.parse_value(tok).map_err(|e| AppError::Parse {
                    line,
                    msg: e.to_string(),
                })?);
            }
        }
        if let Some((line, extra)) = lines.next() {
            return Err(AppError::Parse {
                line,
                msg: format!("trailing content `{extra}`"),
            });
        }
        DenseMatrix::new(rows, cols, values)
    }
}

/// Multiply a 0/1 matrix (given by its zeros) by a dense semiring matrix:
/// `(AB)[i][k]` is the semiring sum of `B[j][k]` over the ones of row `i`.
///
/// The circuit for `A` is synthesized once, then evaluated per column of
/// `B` in topological order, so the whole product costs `O(mn + nk + Wk)`
/// where `W` is the circuit size. All-zero rows are rejected: a semiring
/// sum over nothing has no value without an additive identity.
pub fn matmul_complement_sparse(
    a: &Matrix01,
    b: &DenseMatrix,
    s: &dyn Semiring,
    p: &SynthParams,
) -> Result<DenseMatrix, AppError> {
    if a.n() != b.rows() {
        return Err(AppError::DimensionMismatch(format!(
            "left factor is {}x{}, right factor is {}x{}",
            a.m(),
            a.n(),
            b.rows(),
            b.cols()
        )));
    }
    if let Some(&row) = a.all_zero_rows().first() {
        return Err(AppError::AllZeroRow(row));
    }
    let (circuit, _) = synthesize(a, p)?;
    let add = s.add();
    let mut values = vec![Value::Bool(false); a.m() * b.cols()];
    for k in 0..b.cols() {
        let column = b.column(k);
        let outs = circuit.evaluate(add, &column)?;
        for (label, v) in outs {
            values[label as usize * b.cols() + k] = v;
        }
    }
    DenseMatrix::new(a.m(), b.cols(), values)
}
