//! Deterministic column ordering for the light-row builder.
//!
//! The goal of the permutation is that every short run of ones between two
//! zeros ends up near the right edge, inside the all-ranges window. Columns
//! are chosen one at a time while maintaining the prefix-zero property: after
//! every step, the first `i` chosen columns contain at least `i` zeros.
//!
//! With `L = ceil(lg t)`, one step looks at the rows with a zero among the
//! last `L` chosen columns (the set `R`):
//!
//! * `|R| <= L`: the unpicked columns with a zero in some row of `R` form
//!   the forbidden set `F` (at most `L^2` columns). Pick the lowest-index
//!   unpicked column outside `F` that still has a zero; if none exists,
//!   every other column is all-ones: append them all, then `F`, done.
//! * `|R| > L`: the window already holds more than `L` zeros, so by the
//!   prefix-zero property an all-one unpicked column must exist; pick the
//!   lowest.
//!
//! Ties always go to the lowest column index and `F` is appended in
//! ascending order, so the permutation is a pure function of the matrix.

use super::SynthError;
use crate::matrix::Matrix01;
use crate::util::ceil_log2;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Pad to a `t x t` matrix with `t = max(n, m, z)` by appending all-one
/// rows and columns; original indices are unchanged. The result has at most
/// `t` zeros in total and, provided every input row had at most
/// `ceil(lg n)` zeros, at most `ceil(lg t)` zeros per row.
pub fn pad_for_permute(a: &Matrix01) -> Result<(Matrix01, usize), SynthError> {
    let t = a.n().max(a.m()).max(a.z());
    let bound = ceil_log2(t.max(1)).max(1);
    for i in 0..a.m() {
        if a.row_zeros(i).len() > bound {
            return Err(SynthError::PreconditionViolated(format!(
                "row {i} has {} zeros, more than ceil(lg t) = {bound}",
                a.row_zeros(i).len()
            )));
        }
    }
    Ok((a.pad_square(t), t))
}

pub fn greedy_column_order(a: &Matrix01) -> Result<Vec<u32>, SynthError> {
    let t = a.n();
    if t == 1 {
        return Ok(vec![0]);
    }
    let l = ceil_log2(t);
    if a.z() > t {
        return Err(SynthError::PreconditionViolated(format!(
            "{} zeros in a {t}-column matrix, more than t",
            a.z()
        )));
    }
    for i in 0..a.m() {
        if a.row_zeros(i).len() > l {
            return Err(SynthError::PreconditionViolated(format!(
                "row {i} has {} zeros, more than ceil(lg t) = {l}",
                a.row_zeros(i).len()
            )));
        }
    }

    // per-column sorted zero rows
    let by_column = a.transpose();
    let mut zero_cols: BTreeSet<u32> = BTreeSet::new();
    let mut one_cols: BTreeSet<u32> = BTreeSet::new();
    for c in 0..t {
        if by_column.row_zeros(c).is_empty() {
            one_cols.insert(c as u32);
        } else {
            zero_cols.insert(c as u32);
        }
    }
    if zero_cols.is_empty() {
        return Ok((0..t as u32).collect());
    }

    let mut seq: Vec<u32> = Vec::with_capacity(t);
    let mut zeros_so_far = 0usize;
    let mut window: VecDeque<u32> = VecDeque::with_capacity(l + 1);
    // rows of R with the number of window columns holding their zeros
    let mut r_counts: BTreeMap<u32, u32> = BTreeMap::new();

    let push = |seq: &mut Vec<u32>,
                zeros_so_far: &mut usize,
                window: &mut VecDeque<u32>,
                r_counts: &mut BTreeMap<u32, u32>,
                c: u32|
     -> Result<(), SynthError> {
        seq.push(c);
        *zeros_so_far += by_column.row_zeros(c as usize).len();
        if *zeros_so_far < seq.len() {
            return Err(SynthError::GreedyInvariantViolated { step: seq.len() });
        }
        window.push_back(c);
        for &row in by_column.row_zeros(c as usize) {
            *r_counts.entry(row).or_insert(0) += 1;
        }
        if window.len() > l {
            let old = window.pop_front().unwrap();
            for &row in by_column.row_zeros(old as usize) {
                match r_counts.get_mut(&row) {
                    Some(cnt) if *cnt > 1 => *cnt -= 1,
                    _ => {
                        r_counts.remove(&row);
                    }
                }
            }
        }
        Ok(())
    };

    // first step: the lowest column with a zero
    let first = *zero_cols.iter().next().unwrap();
    zero_cols.remove(&first);
    push(
        &mut seq,
        &mut zeros_so_far,
        &mut window,
        &mut r_counts,
        first,
    )?;

    while seq.len() < t {
        if r_counts.len() <= l {
            let mut forbidden: BTreeSet<u32> = BTreeSet::new();
            for &row in r_counts.keys() {
                for &col in a.row_zeros(row as usize) {
                    if zero_cols.contains(&col) {
                        forbidden.insert(col);
                    }
                }
            }
            match zero_cols.iter().copied().find(|c| !forbidden.contains(c)) {
                Some(c) => {
                    zero_cols.remove(&c);
                    push(&mut seq, &mut zeros_so_far, &mut window, &mut r_counts, c)?;
                }
                None => {
                    // every remaining column is all-ones or forbidden:
                    // append the all-one columns, then F, and stop
                    seq.extend(one_cols.iter().copied());
                    seq.extend(zero_cols.iter().copied());
                    return Ok(seq);
                }
            }
        } else {
            let c = *one_cols
                .iter()
                .next()
                .ok_or(SynthError::GreedyInvariantViolated {
                    step: seq.len() + 1,
                })?;
            one_cols.remove(&c);
            push(&mut seq, &mut zeros_so_far, &mut window, &mut r_counts, c)?;
        }
    }
    Ok(seq)
}
