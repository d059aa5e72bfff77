//! The linear-operator circuit synthesizer.
//!
//! Given an `m x n` 0/1 matrix with `z` zeros, [`synthesize`] emits a
//! circuit computing all row products over any commutative semigroup using
//! `O(n + z)` wires plus a polylogarithmic window term. Rows are split by
//! zero count at `ceil(lg n)`:
//!
//! * light rows (fewer zeros) go through column permutation and range
//!   pools ([`synth_light_rows`]);
//! * heavy rows (at least `ceil(lg n)` zeros) are computed through their
//!   transpose and wire reversal ([`synth_heavy_rows`]); there are at
//!   most `z / ceil(lg n)` of them, so the transpose side stays small.
//!
//! Every original row ends up with exactly one labeled output gate. The
//! produced circuit's multiset-oracle outputs equal the row supports with
//! multiplicity one, which certifies it for every commutative semigroup at
//! once; synthesis is deterministic given the mode and seed.

pub(crate) mod greedy;
mod heavy;
mod light;

pub use greedy::{greedy_column_order, pad_for_permute};
pub use heavy::synth_heavy_rows;
pub use light::{accept_budget, short_interior_total, synth_light_rows, LightOutcome};

use crate::circuit::{Circuit, CircuitBuilder, CircuitError, Ref};
use crate::matrix::Matrix01;
use crate::range::{build_chains, RangeError};
use crate::util::ceil_log2;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error(
        "row {row} has empty support; enable allow_empty_rows to append a virtual all-one column"
    )]
    EmptyRowSupport { row: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("greedy invariant violated at step {step}: prefix-zero property failed")]
    GreedyInvariantViolated { step: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthMode {
    Deterministic,
    Randomized,
}

impl SynthMode {
    pub fn name(&self) -> &'static str {
        match self {
            SynthMode::Deterministic => "det",
            SynthMode::Randomized => "rand",
        }
    }
}

/// Synthesis knobs. The thresholds default to the `ceil(lg .)` convention;
/// overrides exist for experiments and tests.
#[derive(Debug, Clone)]
pub struct SynthParams {
    pub mode: SynthMode,
    /// Seed for the randomized permutation draws.
    pub seed: u64,
    /// Rows with at least this many zeros take the transpose path.
    /// Default: `max(1, ceil(lg n))`.
    pub heavy_threshold: Option<usize>,
    /// Runs shorter than this are "short" (and this is the block length).
    /// Default: `max(1, ceil(lg n))` over the columns being permuted.
    pub short_threshold: Option<usize>,
    /// Randomized draws before falling back to the deterministic order.
    pub retry_limit: usize,
    /// Accept a random permutation when the short interior run total is at
    /// most this. Default: `ceil(n / ceil(lg n))`.
    pub accept_budget: Option<usize>,
    /// Append a virtual all-one column (and require its neutral-like value
    /// at evaluation time) instead of rejecting all-zero rows.
    pub allow_empty_rows: bool,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            mode: SynthMode::Deterministic,
            seed: 0,
            heavy_threshold: None,
            short_threshold: None,
            retry_limit: 16,
            accept_budget: None,
            allow_empty_rows: false,
        }
    }
}

impl SynthParams {
    pub fn randomized(seed: u64) -> Self {
        SynthParams {
            mode: SynthMode::Randomized,
            seed,
            ..SynthParams::default()
        }
    }
}

/// What one synthesis did: sizes, the column order used by the light stage,
/// and the short-run accounting.
#[derive(Debug, Clone)]
pub struct SynthReport {
    pub mode: SynthMode,
    /// A virtual all-one column was appended; the circuit has `n + 1`
    /// inputs and callers must supply a neutral-like value for the last.
    pub virtual_column: bool,
    pub wires: usize,
    pub gates: usize,
    pub heavy_rows: usize,
    pub light_rows: usize,
    /// Column order used for the light rows (over the padded width in
    /// deterministic mode); empty when there were no light rows.
    pub permutation: Vec<u32>,
    /// Total length of naively chained short interior runs.
    pub short_total: usize,
    /// Short interior runs that missed the window (deterministic mode).
    pub fallback_count: usize,
    pub fallback_total: usize,
    /// Rejected permutations before acceptance (randomized mode).
    pub retries: usize,
    /// Randomized mode exhausted its retries and used the greedy order.
    pub used_deterministic_fallback: bool,
}

/// Build a circuit computing `Ax` for every commutative semigroup.
///
/// Rows are partitioned by zero count; the two partial circuits share the
/// input nodes and each original row gets one labeled output. With
/// `allow_empty_rows`, all-zero rows are handled by appending a virtual
/// all-one column at index `n`; every row then also reads `x_n`, which
/// callers supply as a neutral-like value.
pub fn synthesize(a: &Matrix01, p: &SynthParams) -> Result<(Circuit, SynthReport), SynthError> {
    let empty_rows = a.all_zero_rows();
    let (work, virtual_column) = if empty_rows.is_empty() {
        (a.clone(), false)
    } else if p.allow_empty_rows {
        (a.append_ones_column(), true)
    } else {
        return Err(SynthError::EmptyRowSupport { row: empty_rows[0] });
    };

    let n = work.n();
    let heavy_threshold = p.heavy_threshold.unwrap_or(ceil_log2(n).max(1)).max(1);
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for i in 0..work.m() {
        if work.row_zeros(i).len() >= heavy_threshold {
            heavy.push(i);
        } else {
            light.push(i);
        }
    }

    let mut b = CircuitBuilder::new(n);
    let identity: Vec<Ref> = (0..n).map(|j| Ref::Input(j as u32)).collect();
    let mut report = SynthReport {
        mode: p.mode,
        virtual_column,
        wires: 0,
        gates: 0,
        heavy_rows: heavy.len(),
        light_rows: light.len(),
        permutation: Vec::new(),
        short_total: 0,
        fallback_count: 0,
        fallback_total: 0,
        retries: 0,
        used_deterministic_fallback: false,
    };

    if !heavy.is_empty() {
        let hc = synth_heavy_rows(&work.restrict_rows(&heavy))?;
        let gate_map = b.embed(&hc, &identity);
        for &(label, gate) in hc.outputs() {
            b.mark_output(heavy[label as usize] as u32, gate_map[gate as usize]);
        }
    }
    if !light.is_empty() {
        let lo = synth_light_rows(&work.restrict_rows(&light), p)?;
        let gate_map = b.embed(&lo.circuit, &identity);
        for &(label, gate) in lo.circuit.outputs() {
            b.mark_output(light[label as usize] as u32, gate_map[gate as usize]);
        }
        report.permutation = lo.permutation;
        report.short_total = lo.short_total;
        report.fallback_count = lo.fallback_count;
        report.fallback_total = lo.fallback_total;
        report.retries = lo.retries;
        report.used_deterministic_fallback = lo.used_deterministic_fallback;
    }

    let circuit = b.finish();
    report.wires = circuit.wires();
    report.gates = circuit.gate_count();
    Ok((circuit, report))
}

/// The direct construction for matrices with at most one zero per row:
/// precompute all prefixes and suffixes, then each row output is
/// `p[i-1] . s[i+1]` around its zero (redundant side omitted at the edges),
/// or the full product for all-one rows. Valid over non-commutative
/// semigroups: every output reads its variables in increasing order.
pub fn build_one_zero_per_row(a: &Matrix01) -> Result<Circuit, SynthError> {
    let n = a.n();
    for i in 0..a.m() {
        let zeros = a.row_zeros(i);
        if zeros.len() > 1 {
            return Err(SynthError::PreconditionViolated(format!(
                "row {i} has {} zeros, at most one allowed",
                zeros.len()
            )));
        }
        if zeros.len() == n {
            return Err(SynthError::EmptyRowSupport { row: i });
        }
    }
    let mut b = CircuitBuilder::new(n);
    let vars: Vec<Ref> = (0..n).map(|j| b.input(j)).collect();
    let chains = build_chains(&mut b, &vars);
    for i in 0..a.m() {
        let ops = match a.row_zeros(i) {
            [] => vec![chains.prefixes[n - 1]],
            [z] => {
                let z = *z as usize;
                if z == 0 {
                    vec![chains.suffixes[1]]
                } else if z == n - 1 {
                    vec![chains.prefixes[n - 2]]
                } else {
                    vec![chains.prefixes[z - 1], chains.suffixes[z + 1]]
                }
            }
            _ => unreachable!("checked above"),
        };
        b.output_gate(i as u32, ops);
    }
    Ok(b.finish_pruned())
}
