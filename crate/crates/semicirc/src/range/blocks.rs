//! Block-decomposition range pool.
//!
//! The variables are cut into blocks of length `b = max(1, ceil(lg n))` (the
//! last block may be shorter). Per block, all prefixes and suffixes are
//! precomputed; the block product is the block's longest prefix, shared
//! rather than duplicated. On top of the block products sits a decompose
//! pool, so a run of whole blocks costs at most one extra gate.
//!
//! Any range at least `b` long decomposes into a suffix of its first block,
//! a run of whole blocks, and a prefix of its last block (parts may be
//! empty), hence at most three extra gates. Total pool size stays under
//! `4n` gates.

use super::decompose::{build_decompose_pool, DecomposeIndex};
use super::{PlanPiece, QueryPlan, RangeError, RangeQuery, RangeStrategy, SchemeKind};
use crate::circuit::{Circuit, CircuitBuilder, Ref};
use crate::util::ceil_log2;
use std::collections::BTreeMap;

pub(crate) struct BlocksIndex {
    pub n: usize,
    pub block_len: usize,
    /// Inclusive (start, end) per block.
    pub blocks: Vec<(usize, usize)>,
    /// Stored per-block prefixes `(start, j)`, suffixes `(i, end)` and
    /// singletons, keyed by variable range.
    pub ranges: BTreeMap<(usize, usize), Ref>,
    /// Decompose pool over the block products, in block coordinates.
    pub over_blocks: DecomposeIndex,
}

pub(crate) fn build_blocks_pool(
    b: &mut CircuitBuilder,
    vars: &[Ref],
    block_len: usize,
) -> BlocksIndex {
    let n = vars.len();
    debug_assert!(block_len >= 1);
    let mut blocks = Vec::new();
    let mut ranges = BTreeMap::new();
    let mut products = Vec::new();
    for (p, &v) in vars.iter().enumerate() {
        ranges.insert((p, p), v);
    }
    let mut start = 0usize;
    while start < n {
        let end = (start + block_len - 1).min(n - 1);
        blocks.push((start, end));
        // prefixes (start, j); the full one is the block product
        let mut prefix = vars[start];
        for j in start + 1..=end {
            prefix = b.raw_gate(vec![prefix, vars[j]]);
            ranges.insert((start, j), prefix);
        }
        products.push(prefix);
        // suffixes (i, end) for i > start; (start, end) is the shared product
        if end > start {
            let mut suffix = vars[end];
            for i in (start + 1..end).rev() {
                suffix = b.raw_gate(vec![vars[i], suffix]);
                ranges.insert((i, end), suffix);
            }
        }
        start = end + 1;
    }
    let over_blocks = build_decompose_pool(b, &products);
    BlocksIndex {
        n,
        block_len,
        blocks,
        ranges,
        over_blocks,
    }
}

/// A planned block-decomposition of one query: the partial-block suffix,
/// the run of whole blocks (by block index), and the partial-block prefix,
/// plus the ordered pool references realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlocksPlan {
    pub suffix: Option<(usize, usize)>,
    pub middle_blocks: Option<(usize, usize)>,
    pub prefix: Option<(usize, usize)>,
    pub plan: QueryPlan,
}

impl BlocksIndex {
    pub fn block_of(&self, pos: usize) -> usize {
        pos / self.block_len
    }

    pub fn plan(&self, q: RangeQuery) -> Result<BlocksPlan, RangeError> {
        q.check(self.n)?;
        if q.len() < self.block_len {
            return Err(RangeError::ShortRange {
                l: q.l,
                r: q.r,
                block_len: self.block_len,
            });
        }
        let kl = self.block_of(q.l);
        let kr = self.block_of(q.r);
        let mut pieces = Vec::with_capacity(4);
        let mut suffix = None;
        let mut prefix = None;

        let first_whole = if q.l > self.blocks[kl].0 {
            let range = (q.l, self.blocks[kl].1);
            suffix = Some(range);
            pieces.push(PlanPiece {
                range,
                gate: self.ranges[&range],
            });
            kl + 1
        } else {
            kl
        };
        let last_whole = if q.r < self.blocks[kr].1 {
            kr.wrapping_sub(1)
        } else {
            kr
        };

        let middle_blocks = (first_whole <= last_whole && last_whole != usize::MAX)
            .then_some((first_whole, last_whole));
        if let Some((b0, b1)) = middle_blocks {
            let mid_plan = self
                .over_blocks
                .plan(RangeQuery::new(b0, b1))
                .expect("block run is in range");
            for piece in mid_plan.pieces {
                let (pb0, pb1) = piece.range;
                pieces.push(PlanPiece {
                    range: (self.blocks[pb0].0, self.blocks[pb1].1),
                    gate: piece.gate,
                });
            }
        }
        if q.r < self.blocks[kr].1 {
            let range = (self.blocks[kr].0, q.r);
            prefix = Some(range);
            pieces.push(PlanPiece {
                range,
                gate: self.ranges[&range],
            });
        }
        Ok(BlocksPlan {
            suffix,
            middle_blocks,
            prefix,
            plan: QueryPlan { pieces },
        })
    }
}

pub struct BlocksScheme {
    circuit: Circuit,
    index: BlocksIndex,
}

pub fn build_blocks(n: usize) -> Result<BlocksScheme, RangeError> {
    if n == 0 {
        return Err(RangeError::EmptyScheme);
    }
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = (0..n).map(|j| b.input(j)).collect();
    let index = build_blocks_pool(&mut b, &vars, ceil_log2(n).max(1));
    Ok(BlocksScheme {
        circuit: b.finish(),
        index,
    })
}

impl BlocksScheme {
    pub fn block_len(&self) -> usize {
        self.index.block_len
    }

    /// The structured decomposition of one query; `plan` gives just the
    /// pool references.
    pub fn plan_blocks(&self, q: RangeQuery) -> Result<BlocksPlan, RangeError> {
        self.index.plan(q)
    }
}

impl RangeStrategy for BlocksScheme {
    fn kind(&self) -> SchemeKind {
        SchemeKind::Blocks
    }

    fn base_len(&self) -> usize {
        self.index.n
    }

    fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    fn extra_budget(&self) -> usize {
        3
    }

    fn indexed_ranges(&self) -> Vec<((usize, usize), Ref)> {
        self.index.ranges.iter().map(|(&k, &v)| (k, v)).collect()
    }

    fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError> {
        self.index.plan(q).map(|bp| bp.plan)
    }
}
