//! Range-query gate pools.
//!
//! A scheme precomputes a pool of gates over `n` variables so that
//! contiguous range products `x_l . ... . x_r` can be assembled from few
//! pool gates. The four schemes trade pool size against the number of extra
//! gates a query needs:
//!
//! | scheme          | pool gates        | extra gates per query | queries handled          |
//! |-----------------|-------------------|-----------------------|--------------------------|
//! | `prefix-suffix` | `2(n-1)`          | 0                     | prefixes, suffixes       |
//! | `decompose`     | `<= n ceil(lg n)` | <= 1                  | all ranges               |
//! | `blocks`        | `<= 4n`           | <= 3                  | ranges of length >= `b`  |
//! | `window`        | `w(w-1)/2`        | 0                     | ranges inside the window |
//!
//! Every scheme implements [`RangeStrategy`]; `builders()` registers them by
//! name. Plans are returned as data, ordered pool references whose
//! left-to-right combination is the requested range, so callers decide how
//! to materialize them. Over the word oracle every indexed gate and every
//! plan yields its variables in strictly increasing order, which is what
//! makes the pools safe for non-commutative use.

mod blocks;
mod decompose;
mod prefix_suffix;
mod window;

pub use blocks::{build_blocks, BlocksPlan, BlocksScheme};
pub use decompose::{build_decompose, decompose_gate_count, DecomposeScheme};
pub use prefix_suffix::{build_prefix_suffix, PrefixSuffixScheme};
pub use window::{build_window_all_ranges, WindowScheme};

pub(crate) use blocks::build_blocks_pool;
pub(crate) use decompose::build_decompose_pool;
pub(crate) use prefix_suffix::build_chains;
pub(crate) use window::build_window_pool;

use crate::circuit::{Circuit, Ref};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RangeError {
    #[error("cannot build a scheme over zero variables")]
    EmptyScheme,
    #[error("bad range ({l}, {r}) for {n} variables")]
    BadRange { l: usize, r: usize, n: usize },
    #[error("range ({l}, {r}) is shorter than the block length {block_len}")]
    ShortRange {
        l: usize,
        r: usize,
        block_len: usize,
    },
    #[error("range ({l}, {r}) is not answerable by the {scheme} scheme")]
    Unsupported {
        l: usize,
        r: usize,
        scheme: &'static str,
    },
}

/// An inclusive 0-based range query `(l, r)` with `l <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeQuery {
    pub l: usize,
    pub r: usize,
}

impl RangeQuery {
    pub fn new(l: usize, r: usize) -> Self {
        RangeQuery { l, r }
    }

    pub fn len(&self) -> usize {
        self.r - self.l + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn check(&self, n: usize) -> Result<(), RangeError> {
        if self.l > self.r || self.r >= n {
            Err(RangeError::BadRange {
                l: self.l,
                r: self.r,
                n,
            })
        } else {
            Ok(())
        }
    }
}

/// One pool reference in a plan, tagged with the range it computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanPiece {
    pub range: (usize, usize),
    pub gate: Ref,
}

/// An ordered sequence of pool references whose left-to-right combination
/// is the requested range. Materializing the plan costs `pieces - 1`
/// binary gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPlan {
    pub pieces: Vec<PlanPiece>,
}

impl QueryPlan {
    pub fn single(range: (usize, usize), gate: Ref) -> Self {
        QueryPlan {
            pieces: vec![PlanPiece { range, gate }],
        }
    }

    /// Binary gates needed beyond the pool to realize this plan.
    pub fn extra_gates(&self) -> usize {
        self.pieces.len().saturating_sub(1)
    }

    pub fn refs(&self) -> impl Iterator<Item = Ref> + '_ {
        self.pieces.iter().map(|p| p.gate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    PrefixSuffix,
    Decompose,
    Blocks,
    Window,
}

impl SchemeKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::PrefixSuffix => "prefix-suffix",
            SchemeKind::Decompose => "decompose",
            SchemeKind::Blocks => "blocks",
            SchemeKind::Window => "window",
        }
    }
}

/// The common face of the four schemes: a gate pool over `base_len`
/// variables, an index of precomputed ranges, and a planner.
pub trait RangeStrategy {
    fn kind(&self) -> SchemeKind;
    fn base_len(&self) -> usize;
    /// The pool circuit. It has no outputs; its inputs are the variables.
    fn circuit(&self) -> &Circuit;
    /// Maximum extra gates any supported query needs.
    fn extra_budget(&self) -> usize;
    /// Every precomputed range, including length-1 ranges (input refs).
    fn indexed_ranges(&self) -> Vec<((usize, usize), Ref)>;
    fn plan(&self, q: RangeQuery) -> Result<QueryPlan, RangeError>;
}

type BuilderFn = fn(usize) -> Result<Box<dyn RangeStrategy>, RangeError>;

/// The scheme registry: builder per kind name, selectable at runtime.
/// The window scheme is registered over the whole range (`offset = 0`).
pub fn builders() -> &'static [(&'static str, BuilderFn)] {
    fn ps(n: usize) -> Result<Box<dyn RangeStrategy>, RangeError> {
        Ok(Box::new(build_prefix_suffix(n)?))
    }
    fn dec(n: usize) -> Result<Box<dyn RangeStrategy>, RangeError> {
        Ok(Box::new(build_decompose(n)?))
    }
    fn blk(n: usize) -> Result<Box<dyn RangeStrategy>, RangeError> {
        Ok(Box::new(build_blocks(n)?))
    }
    fn win(n: usize) -> Result<Box<dyn RangeStrategy>, RangeError> {
        Ok(Box::new(build_window_all_ranges(0, n)?))
    }
    &[
        ("prefix-suffix", ps as BuilderFn),
        ("decompose", dec as BuilderFn),
        ("blocks", blk as BuilderFn),
        ("window", win as BuilderFn),
    ]
}

pub fn build_by_name(name: &str, n: usize) -> Result<Box<dyn RangeStrategy>, RangeError> {
    builders()
        .iter()
        .find(|(nm, _)| *nm == name)
        .map(|(_, f)| f(n))
        .unwrap_or(Err(RangeError::Unsupported {
            l: 0,
            r: 0,
            scheme: "unknown",
        }))
}
