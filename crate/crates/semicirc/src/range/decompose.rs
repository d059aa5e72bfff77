//! Midpoint divide-and-conquer range pool.
//!
//! Split the variable range in half, precompute all suffixes of the left
//! half and all prefixes of the right half, and recurse into both halves.
//! Any query crossing a split point is the combination of one stored suffix
//! and one stored prefix, so every range needs at most one extra gate.
//!
//! Gate count follows `G(n) = G(floor(n/2)) + G(ceil(n/2)) + n - 2` with
//! `G(1) = 0`, which is at most `n * ceil(lg n)`.

use super::{PlanPiece, QueryPlan, RangeError, RangeQuery, RangeStrategy, SchemeKind};
use crate::circuit::{Circuit, CircuitBuilder, Ref};
use std::collections::BTreeMap;

/// Pool index over one variable list. Splits are recomputed on the fly
/// during planning; only the stored ranges are kept.
pub(crate) struct DecomposeIndex {
    pub n: usize,
    /// Every stored range: per-level left suffixes and right prefixes, plus
    /// the length-1 ranges (plain variable references).
    pub ranges: BTreeMap<(usize, usize), Ref>,
}

/// Left half of a segment of `len` variables: `floor(len / 2)`.
fn left_len(len: usize) -> usize {
    len / 2
}

pub(crate) fn build_decompose_pool(b: &mut CircuitBuilder, vars: &[Ref]) -> DecomposeIndex {
    let n = vars.len();
    let mut ranges = BTreeMap::new();
    for (p, &v) in vars.iter().enumerate() {
        ranges.insert((p, p), v);
    }
    // worklist of segments [lo, hi]
    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        let len = hi - lo + 1;
        if len < 2 {
            continue;
        }
        let mid = lo + left_len(len); // first index of the right half
                                      // suffixes of the left half: (i, mid-1) for lo <= i < mid
        let mut suffix = vars[mid - 1];
        for i in (lo..mid - 1).rev() {
            suffix = b.raw_gate(vec![vars[i], suffix]);
            ranges.insert((i, mid - 1), suffix);
        }
        // prefixes of the right half: (mid, j) for mid <= j <= hi
        let mut prefix = vars[mid];
        for j in mid + 1..=hi {
            prefix = b.raw_gate(vec![prefix, vars[j]]);
            ranges.insert((mid, j), prefix);
        }
        stack.push((lo, mid - 1));
        stack.push((mid, hi));
    }
    DecomposeIndex { n, ranges }
}

impl DecomposeIndex {
    /// One stored range, or an ordered (suffix, prefix) pair combining to
    /// the query; never more than one extra gate.
    pub fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError> {
        q.check(self.n)?;
        let piece = |l: usize, r: usize| PlanPiece {
            range: (l, r),
            gate: self.ranges[&(l, r)],
        };
        let (mut lo, mut hi) = (0usize, self.n - 1);
        loop {
            if q.l == q.r {
                return Ok(QueryPlan::single((q.l, q.r), self.ranges[&(q.l, q.l)]));
            }
            let mid = lo + left_len(hi - lo + 1);
            if q.r < mid {
                if q.r == mid - 1 {
                    // a stored left suffix
                    return Ok(QueryPlan {
                        pieces: vec![piece(q.l, q.r)],
                    });
                }
                hi = mid - 1;
            } else if q.l >= mid {
                if q.l == mid {
                    // a stored right prefix
                    return Ok(QueryPlan {
                        pieces: vec![piece(q.l, q.r)],
                    });
                }
                lo = mid;
            } else {
                // crosses the split: suffix of the left half, prefix of the right
                return Ok(QueryPlan {
                    pieces: vec![piece(q.l, mid - 1), piece(mid, q.r)],
                });
            }
        }
    }
}

/// The number of gates `build_decompose` emits for `n` variables.
pub fn decompose_gate_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        let left = left_len(n);
        decompose_gate_count(left) + decompose_gate_count(n - left) + n - 2
    }
}

pub struct DecomposeScheme {
    circuit: Circuit,
    index: DecomposeIndex,
}

pub fn build_decompose(n: usize) -> Result<DecomposeScheme, RangeError> {
    if n == 0 {
        return Err(RangeError::EmptyScheme);
    }
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = (0..n).map(|j| b.input(j)).collect();
    let index = build_decompose_pool(&mut b, &vars);
    Ok(DecomposeScheme {
        circuit: b.finish(),
        index,
    })
}

impl RangeStrategy for DecomposeScheme {
    fn kind(&self) -> SchemeKind {
        SchemeKind::Decompose
    }

    fn base_len(&self) -> usize {
        self.index.n
    }

    fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    fn extra_budget(&self) -> usize {
        1
    }

    fn indexed_ranges(&self) -> Vec<((usize, usize), Ref)> {
        self.index.ranges.iter().map(|(&k, &v)| (k, v)).collect()
    }

    fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError> {
        self.index.plan(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_count_follows_the_recurrence() {
        assert_eq!(decompose_gate_count(1), 0);
        assert_eq!(decompose_gate_count(2), 0);
        assert_eq!(decompose_gate_count(4), 2);
        assert_eq!(decompose_gate_count(8), 10);
        for n in 1..=512 {
            let s = build_decompose(n).unwrap();
            assert_eq!(s.circuit().gate_count(), decompose_gate_count(n), "n={n}");
            assert!(s.circuit().gate_count() <= n * crate::util::ceil_log2(n).max(1));
        }
    }

    #[test]
    fn crossing_query_uses_a_suffix_prefix_pair() {
        let s = build_decompose(8).unwrap();
        // (2,5) crosses the 3|4 split
        let plan = s.plan(RangeQuery::new(2, 5)).unwrap();
        assert_eq!(plan.pieces.len(), 2);
        assert_eq!(plan.pieces[0].range, (2, 3));
        assert_eq!(plan.pieces[1].range, (4, 5));
    }

    #[test]
    fn aligned_query_is_a_single_gate() {
        let s = build_decompose(8).unwrap();
        let plan = s.plan(RangeQuery::new(0, 3)).unwrap();
        assert_eq!(plan.pieces.len(), 1);
        assert_eq!(plan.extra_gates(), 0);
    }

    #[test]
    fn singleton_query_is_the_input() {
        let s = build_decompose(8).unwrap();
        let plan = s.plan(RangeQuery::new(4, 4)).unwrap();
        assert_eq!(
            plan.pieces,
            vec![PlanPiece {
                range: (4, 4),
                gate: Ref::Input(4)
            }]
        );
    }

    #[test]
    fn out_of_bounds_query_is_rejected() {
        let s = build_decompose(8).unwrap();
        assert!(s.plan(RangeQuery::new(3, 9)).is_err());
        assert!(s.plan(RangeQuery::new(5, 3)).is_err());
    }

    #[test]
    fn every_query_needs_at_most_one_extra_gate() {
        for n in [2usize, 3, 7, 16, 31, 64] {
            let s = build_decompose(n).unwrap();
            for l in 0..n {
                for r in l..n {
                    let plan = s.plan(RangeQuery::new(l, r)).unwrap();
                    assert!(plan.extra_gates() <= 1, "n={n} ({l},{r})");
                }
            }
        }
    }
}
