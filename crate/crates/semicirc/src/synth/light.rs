//! Circuits for rows with few zeros, via column permutation.
//!
//! Each row splits into maximal runs of ones between its zeros. Runs at
//! least one block long come from a block-decomposition pool; anything
//! shorter is either read off the all-ranges window (deterministic mode) or
//! chained directly from the inputs. Commutativity is what allows the
//! columns to be permuted at all; outputs combine their runs in permuted
//! order.
//!
//! Two ways to pick the permutation:
//!
//! * randomized: seeded Fisher-Yates draws, accepted when the total length
//!   of short interior runs fits the budget `ceil(n / ceil(lg n))`, with
//!   bounded retries and a deterministic fallback, so correctness never
//!   depends on the draw;
//! * deterministic: pad to `t = max(n, m, z)` columns, order greedily so
//!   short interior runs land in the last `ceil(lg t)^2 + 2 ceil(lg t)`
//!   columns, and precompute every range of that window. Stray short runs
//!   are chained and accounted as fallbacks.
//!
//! A *short interior run* is a run strictly between two zeros of its row
//! with length below the block length; runs touching the matrix edge are
//! not counted against the budget (they are still built, of course).

use super::{SynthError, SynthMode, SynthParams};
use crate::circuit::{Circuit, CircuitBuilder, Ref};
use crate::matrix::{segments_between_zeros, Matrix01};
use crate::range::{build_blocks_pool, build_window_pool, RangeQuery};
use crate::rng::{fisher_yates, SplitMix64};
use crate::util::ceil_log2;

#[derive(Debug, Clone)]
pub struct LightOutcome {
    /// Outputs labeled by row position in the given matrix.
    pub circuit: Circuit,
    /// Column order used; positions map to columns. Covers the padded
    /// column count in deterministic mode.
    pub permutation: Vec<u32>,
    /// Total length of naively chained short interior runs.
    pub short_total: usize,
    /// Short interior runs that missed the window and were chained.
    pub fallback_count: usize,
    pub fallback_total: usize,
    /// Permutations rejected before acceptance (randomized mode).
    pub retries: usize,
    /// Randomized mode ran out of retries and built deterministically.
    pub used_deterministic_fallback: bool,
}

/// Total length of short interior runs of `a` under the given column order:
/// runs between two consecutive zeros of a row, shorter than `threshold`.
pub fn short_interior_total(a: &Matrix01, perm: &[u32], threshold: usize) -> usize {
    assert_eq!(perm.len(), a.n());
    let mut pos_of = vec![0u32; a.n()];
    for (p, &c) in perm.iter().enumerate() {
        pos_of[c as usize] = p as u32;
    }
    let mut total = 0usize;
    let mut zpos: Vec<u32> = Vec::new();
    for i in 0..a.m() {
        zpos.clear();
        zpos.extend(a.row_zeros(i).iter().map(|&j| pos_of[j as usize]));
        zpos.sort_unstable();
        for w in zpos.windows(2) {
            let gap = (w[1] - w[0]) as usize - 1;
            if gap >= 1 && gap < threshold {
                total += gap;
            }
        }
    }
    total
}

/// The randomized acceptance budget for `n` columns.
pub fn accept_budget(n: usize) -> usize {
    n.div_ceil(ceil_log2(n).max(1))
}

pub fn synth_light_rows(a: &Matrix01, p: &SynthParams) -> Result<LightOutcome, SynthError> {
    match p.mode {
        SynthMode::Randomized => {
            let n = a.n();
            let threshold = p.short_threshold.unwrap_or(ceil_log2(n).max(1)).max(1);
            let budget = p.accept_budget.unwrap_or_else(|| accept_budget(n));
            let mut rng = SplitMix64::new(p.seed);
            for attempt in 0..p.retry_limit.max(1) {
                let perm = fisher_yates(n, &mut rng);
                let short = short_interior_total(a, &perm, threshold);
                if short <= budget {
                    let built = build_permuted(a, a.m(), a.n(), &perm, None, threshold)?;
                    return Ok(LightOutcome {
                        circuit: built.circuit,
                        permutation: perm,
                        short_total: built.short_total,
                        fallback_count: 0,
                        fallback_total: 0,
                        retries: attempt,
                        used_deterministic_fallback: false,
                    });
                }
            }
            let mut out = deterministic(a, p)?;
            out.retries = p.retry_limit.max(1);
            out.used_deterministic_fallback = true;
            Ok(out)
        }
        SynthMode::Deterministic => deterministic(a, p),
    }
}

fn deterministic(a: &Matrix01, p: &SynthParams) -> Result<LightOutcome, SynthError> {
    let (padded, t) = super::greedy::pad_for_permute(a)?;
    let perm = super::greedy::greedy_column_order(&padded)?;
    let threshold = p.short_threshold.unwrap_or(ceil_log2(t).max(1)).max(1);
    let wstar = (threshold * threshold + 2 * threshold).min(t);
    let built = build_permuted(
        &padded,
        a.m(),
        a.n(),
        &perm,
        Some((t - wstar, wstar)),
        threshold,
    )?;
    Ok(LightOutcome {
        circuit: built.circuit,
        permutation: perm,
        short_total: built.short_total,
        fallback_count: built.fallback_count,
        fallback_total: built.fallback_total,
        retries: 0,
        used_deterministic_fallback: false,
    })
}

struct PermutedBuild {
    circuit: Circuit,
    short_total: usize,
    fallback_count: usize,
    fallback_total: usize,
}

/// Realize rows `0..real_rows` of `a` over the permuted columns; window is
/// in position coordinates. Inputs beyond `real_cols` are padding and get
/// erased from the finished circuit.
fn build_permuted(
    a: &Matrix01,
    real_rows: usize,
    real_cols: usize,
    perm: &[u32],
    window: Option<(usize, usize)>,
    threshold: usize,
) -> Result<PermutedBuild, SynthError> {
    let n = a.n();
    assert_eq!(perm.len(), n);
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = perm.iter().map(|&c| Ref::Input(c)).collect();
    let blocks = build_blocks_pool(&mut b, &vars, threshold);
    let window = window.map(|(offset, w)| build_window_pool(&mut b, &vars, offset, w));

    let mut pos_of = vec![0u32; n];
    for (p, &c) in perm.iter().enumerate() {
        pos_of[c as usize] = p as u32;
    }

    let mut short_total = 0usize;
    let mut fallback_count = 0usize;
    let mut fallback_total = 0usize;

    for i in 0..real_rows {
        let mut zpos: Vec<u32> = a.row_zeros(i).iter().map(|&j| pos_of[j as usize]).collect();
        zpos.sort_unstable();
        let segments = segments_between_zeros(&zpos, n);
        debug_assert!(!segments.is_empty(), "all-zero rows are rejected upstream");
        let mut row_refs = Vec::with_capacity(segments.len());
        for (l, r) in segments {
            let len = r - l + 1;
            let piece = if len >= threshold {
                let plan = blocks
                    .plan(RangeQuery::new(l, r))
                    .expect("long runs are plannable");
                b.shared_gate(plan.plan.refs().collect())
            } else if window.as_ref().is_some_and(|w| w.contains(l, r)) {
                window.as_ref().unwrap().get(l, r).unwrap()
            } else {
                let interior = l > 0 && r < n - 1;
                if interior {
                    short_total += len;
                    if window.is_some() {
                        fallback_count += 1;
                        fallback_total += len;
                    }
                }
                b.shared_gate((l..=r).map(|p| vars[p]).collect())
            };
            row_refs.push(piece);
        }
        b.output_gate(i as u32, row_refs);
    }

    let circuit = if real_cols < n {
        b.eliminate_inputs(real_cols).finish_pruned()
    } else {
        b.finish_pruned()
    };
    Ok(PermutedBuild {
        circuit,
        short_total,
        fallback_count,
        fallback_total,
    })
}
