//! Circuits for rows with many zeros, via the transpose.
//!
//! A batch of `t0` zero-heavy rows is cheap to compute *as columns*: build a
//! regular circuit for the transposed matrix over `t0` variables (row runs
//! come from a midpoint-decompose pool at one extra gate each), then reverse
//! every wire. Reversal swaps inputs with outputs, so the reversed circuit
//! computes the original heavy rows over the original column variables
//! (commutativity makes the reversed operand orders irrelevant).
//!
//! The forward circuit is asserted regular before reversal; a failure here
//! is a construction bug, not bad input.

use super::SynthError;
use crate::circuit::{Circuit, CircuitBuilder, Ref};
use crate::matrix::Matrix01;
use crate::range::{build_decompose_pool, RangeQuery};

/// `a` holds the heavy rows only (each with at least one one-entry).
/// The result has `a.n()` inputs and one output per row of `a`, labeled by
/// row position.
pub fn synth_heavy_rows(a: &Matrix01) -> Result<Circuit, SynthError> {
    let t0 = a.m();
    let transposed = a.transpose();

    // columns of `a` that some heavy row reads; the rest never appear
    let active: Vec<usize> = (0..transposed.m())
        .filter(|&i| transposed.row_zeros(i).len() < t0)
        .collect();
    if active.is_empty() {
        return Err(SynthError::EmptyRowSupport { row: 0 });
    }

    let mut b = CircuitBuilder::new(t0);
    let vars: Vec<Ref> = (0..t0).map(|k| b.input(k)).collect();
    let pool = build_decompose_pool(&mut b, &vars);
    for (label, &col) in active.iter().enumerate() {
        let row_refs: Vec<Ref> = transposed
            .row_segments(col)
            .into_iter()
            .map(|(l, r)| {
                let plan = pool
                    .plan(RangeQuery::new(l, r))
                    .expect("segments are in range");
                b.shared_gate(plan.refs().collect())
            })
            .collect();
        b.output_gate(label as u32, row_refs);
    }
    let forward = b.finish_pruned();

    let forward_matrix = transposed.restrict_rows(&active);
    if !forward.is_regular(&forward_matrix)? {
        return Err(SynthError::Internal(
            "transpose-side circuit failed the regularity check".into(),
        ));
    }
    let reversed = forward.reverse()?;

    // re-express over all n columns: reversed input k is column active[k]
    let mut fin = CircuitBuilder::new(a.n());
    let input_map: Vec<Ref> = active.iter().map(|&i| Ref::Input(i as u32)).collect();
    let gate_map = fin.embed(&reversed, &input_map);
    for &(label, gate) in reversed.outputs() {
        fin.mark_output(label, gate_map[gate as usize]);
    }
    Ok(fin.finish())
}
