//! 0/1 matrices stored by their zero positions.
//!
//! The matrices this crate cares about are dense in ones, so a matrix is
//! held as per-row sorted lists of zero columns. `z` is the total zero count
//! and `u = m*n - z` the one count.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix dimensions must be positive")]
    EmptyDims,
    #[error("zero position ({0}, {1}) out of bounds")]
    OutOfBounds(usize, usize),
    #[error("duplicate zero position ({0}, {1})")]
    DuplicateZero(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An `m x n` 0/1 matrix described by its zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix01 {
    m: usize,
    n: usize,
    zeros: Vec<Vec<u32>>,
}

impl Matrix01 {
    /// Build from explicit zero positions (0-based). Rejects out-of-bounds
    /// and duplicate entries.
    pub fn from_zeros(
        m: usize,
        n: usize,
        zeros: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MatrixError> {
        if m == 0 || n == 0 {
            return Err(MatrixError::EmptyDims);
        }
        let mut rows = vec![Vec::new(); m];
        for (i, j) in zeros {
            if i >= m || j >= n {
                return Err(MatrixError::OutOfBounds(i, j));
            }
            rows[i].push(j as u32);
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                let dup = row.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(MatrixError::DuplicateZero(i, dup as usize));
            }
        }
        Ok(Matrix01 { m, n, zeros: rows })
    }

    /// All-ones matrix.
    pub fn ones(m: usize, n: usize) -> Result<Self, MatrixError> {
        Matrix01::from_zeros(m, n, std::iter::empty())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of zeros.
    pub fn z(&self) -> usize {
        self.zeros.iter().map(Vec::len).sum()
    }

    /// Total number of ones.
    pub fn u(&self) -> usize {
        self.m * self.n - self.z()
    }

    /// Sorted zero columns of row `i`.
    pub fn row_zeros(&self, i: usize) -> &[u32] {
        &self.zeros[i]
    }

    pub fn is_one(&self, i: usize, j: usize) -> bool {
        self.zeros[i].binary_search(&(j as u32)).is_err()
    }

    /// Sorted columns where row `i` is one.
    pub fn row_support(&self, i: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n - self.zeros[i].len());
        let mut zs = self.zeros[i].iter().peekable();
        for j in 0..self.n as u32 {
            if zs.peek() == Some(&&j) {
                zs.next();
            } else {
                out.push(j);
            }
        }
        out
    }

    /// Maximal runs of ones in row `i`, as inclusive `(l, r)` column ranges.
    pub fn row_segments(&self, i: usize) -> Vec<(usize, usize)> {
        segments_between_zeros(&self.zeros[i], self.n)
    }

    /// Row indices with no ones at all.
    pub fn all_zero_rows(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&i| self.zeros[i].len() == self.n)
            .collect()
    }

    pub fn transpose(&self) -> Matrix01 {
        let mut zeros = vec![Vec::new(); self.n];
        for (i, row) in self.zeros.iter().enumerate() {
            for &j in row {
                zeros[j as usize].push(i as u32);
            }
        }
        Matrix01 {
            m: self.n,
            n: self.m,
            zeros,
        }
    }

    /// The submatrix made of `rows`, in the given order.
    pub fn restrict_rows(&self, rows: &[usize]) -> Matrix01 {
        Matrix01 {
            m: rows.len(),
            n: self.n,
            zeros: rows.iter().map(|&i| self.zeros[i].clone()).collect(),
        }
    }

    /// Append one all-one column at index `n`; no row is all-zero afterwards.
    pub fn append_ones_column(&self) -> Matrix01 {
        Matrix01 {
            m: self.m,
            n: self.n + 1,
            zeros: self.zeros.clone(),
        }
    }

    /// Grow to `t x t` by appending all-one rows and columns. `t` must be at
    /// least `max(m, n)`; original row and column indices are unchanged.
    pub fn pad_square(&self, t: usize) -> Matrix01 {
        assert!(t >= self.m && t >= self.n);
        let mut zeros = self.zeros.clone();
        zeros.resize(t, Vec::new());
        Matrix01 { m: t, n: t, zeros }
    }

    /// Reorder columns: position `p` of the result holds column `perm[p]`.
    pub fn permute_columns(&self, perm: &[u32]) -> Matrix01 {
        assert_eq!(perm.len(), self.n);
        let mut pos_of = vec![0u32; self.n];
        for (p, &c) in perm.iter().enumerate() {
            pos_of[c as usize] = p as u32;
        }
        let zeros = self
            .zeros
            .iter()
            .map(|row| {
                let mut r: Vec<u32> = row.iter().map(|&j| pos_of[j as usize]).collect();
                r.sort_unstable();
                r
            })
            .collect();
        Matrix01 {
            m: self.m,
            n: self.n,
            zeros,
        }
    }

    /// Serialize in the `semicirc-matrix v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("semicirc-matrix v1\n");
        out.push_str(&format!("dims {} {}\n", self.m, self.n));
        for (i, row) in self.zeros.iter().enumerate() {
            for &j in row {
                out.push_str(&format!("zero {i} {j}\n"));
            }
        }
        out
    }

    /// Parse the `semicirc-matrix v1` text format. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, MatrixError> {
        let mut lines = meaningful_lines(text);
        let (line_no, header) = lines.next().ok_or(MatrixError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        if header != "semicirc-matrix v1" {
            return Err(MatrixError::Parse {
                line: line_no,
                msg: format!("expected `semicirc-matrix v1`, got `{header}`"),
            });
        }
        let (line_no, dims) = lines.next().ok_or(MatrixError::Parse {
            line: line_no + 1,
            msg: "missing dims line".into(),
        })?;
        let (m, n) = parse_dims(dims).ok_or(MatrixError::Parse {
            line: line_no,
            msg: format!("bad dims line `{dims}`"),
        })?;
        let mut zeros = Vec::new();
        for (line_no, line) in lines {
            let mut it = line.split_whitespace();
            let ok = it.next() == Some("zero");
            let i = it.next().and_then(|t| t.parse::<usize>().ok());
            let j = it.next().and_then(|t| t.parse::<usize>().ok());
            match (ok, i, j, it.next()) {
                (true, Some(i), Some(j), None) => zeros.push((i, j)),
                _ => {
                    return Err(MatrixError::Parse {
                        line: line_no,
                        msg: format!("bad zero line `{line}`"),
                    })
                }
            }
        }
        Matrix01::from_zeros(m, n, zeros).map_err(|e| match e {
            MatrixError::Parse { .. } => e,
            other => MatrixError::Parse {
                line: 0,
                msg: other.to_string(),
            },
        })
    }
}

/// Maximal 1-runs of a row with the given sorted zero columns, as inclusive
/// `(l, r)` ranges over `0..n`.
pub fn segments_between_zeros(zeros: &[u32], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(zeros.len() + 1);
    let mut start = 0usize;
    for &z in zeros {
        let z = z as usize;
        if z > start {
            out.push((start, z - 1));
        }
        start = z + 1;
    }
    if start < n {
        out.push((start, n - 1));
    }
    out
}

fn parse_dims(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    if it.next() != Some("dims") {
        return None;
    }
    let m = it.next()?.parse().ok()?;
    let n = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((m, n))
}

/// Lines with comments stripped and blanks skipped, tagged with 1-based
/// line numbers.
pub(crate) fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if body.is_empty() {
            None
        } else {
            Some((idx + 1, body))
        }
    })
}
