#![allow(dead_code)]

//! Shared generators for the integration suites.

use semicirc::rng::SplitMix64;
use semicirc::{Circuit, Matrix01, Ref};
use std::collections::HashSet;

/// A random DAG circuit: `1..=max_inputs` inputs, `1..=max_gates` gates with
/// fan-in 1..=3 over earlier nodes, every sink gate marked as an output.
pub fn random_circuit(rng: &mut SplitMix64, max_inputs: usize, max_gates: usize) -> Circuit {
    let n = 1 + rng.next_usize(max_inputs);
    let g = 1 + rng.next_usize(max_gates);
    let mut c = Circuit::new(n);
    for k in 0..g {
        let fan = 1 + rng.next_usize(3);
        let ops: Vec<Ref> = (0..fan)
            .map(|_| {
                let pick = rng.next_usize(n + k);
                if pick < n {
                    Ref::Input(pick as u32)
                } else {
                    Ref::Gate((pick - n) as u32)
                }
            })
            .collect();
        c.add_gate(ops).unwrap();
    }
    let mut fanout = vec![false; c.gate_count()];
    for ops in c.gates() {
        for &r in ops {
            if let Ref::Gate(k) = r {
                fanout[k as usize] = true;
            }
        }
    }
    let mut label = 0;
    for (k, &has_fanout) in fanout.iter().enumerate() {
        if !has_fanout {
            c.mark_output(label, k as u32).unwrap();
            label += 1;
        }
    }
    c
}

/// A random 0/1 matrix with `m` in `m_range`, `n` in `n_range`, and up to
/// `z_factor * n` zeros scattered uniformly; no row is ever left without a
/// one.
pub fn random_matrix(
    rng: &mut SplitMix64,
    n_range: (usize, usize),
    m_range: (usize, usize),
    z_factor: usize,
) -> Matrix01 {
    let n = n_range.0 + rng.next_usize(n_range.1 - n_range.0 + 1);
    let m = m_range.0 + rng.next_usize(m_range.1 - m_range.0 + 1);
    let z_target = rng.next_usize(z_factor * n + 1);
    let mut row_zeros = vec![0usize; m];
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut zeros = Vec::new();
    for _ in 0..z_target {
        let i = rng.next_usize(m);
        let j = rng.next_usize(n);
        if row_zeros[i] + 1 < n && seen.insert((i, j)) {
            row_zeros[i] += 1;
            zeros.push((i, j));
        }
    }
    Matrix01::from_zeros(m, n, zeros).unwrap()
}

/// Like `random_matrix`, but also guarantees every column has a one (so
/// every circuit input feeds a wire and reversal is defined).
pub fn random_matrix_full_columns(
    rng: &mut SplitMix64,
    n_range: (usize, usize),
    m_range: (usize, usize),
    z_factor: usize,
) -> Matrix01 {
    loop {
        let a = random_matrix(rng, n_range, m_range, z_factor);
        if a.transpose().all_zero_rows().is_empty() {
            return a;
        }
    }
}

/// Exactly `k` distinct zeros in every row of an `n x n` matrix.
pub fn matrix_with_k_zeros_per_row(rng: &mut SplitMix64, n: usize, k: usize) -> Matrix01 {
    assert!(k < n);
    let mut zeros = Vec::with_capacity(n * k);
    let mut cols: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for t in 0..k {
            let j = t + rng.next_usize(n - t);
            cols.swap(t, j);
        }
        zeros.extend(cols[..k].iter().map(|&c| (i, c)));
    }
    Matrix01::from_zeros(n, n, zeros).unwrap()
}
