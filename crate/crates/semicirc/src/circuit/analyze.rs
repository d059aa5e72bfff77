//! Path counting, wire reversal, and structural comparison.

use super::{Circuit, CircuitError, Ref};
use std::collections::HashMap;

/// Number of input-to-output paths, saturated at two. Exact counts can be
/// exponential; only zero / one / at-least-two matters for regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mult {
    Zero,
    One,
    Many,
}

/// Per (output label, input) path counts, stored sparsely.
#[derive(Debug, Clone)]
pub struct PathMultiplicity {
    /// `(label, sorted [(input, count >= 1)])`, sorted by label.
    entries: Vec<(u32, Vec<(u32, u8)>)>,
}

impl PathMultiplicity {
    pub fn get(&self, label: u32, input: u32) -> Mult {
        let Ok(pos) = self.entries.binary_search_by_key(&label, |&(l, _)| l) else {
            return Mult::Zero;
        };
        match self.entries[pos]
            .1
            .binary_search_by_key(&input, |&(v, _)| v)
        {
            Ok(i) => {
                if self.entries[pos].1[i].1 >= 2 {
                    Mult::Many
                } else {
                    Mult::One
                }
            }
            Err(_) => Mult::Zero,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(l, _)| l)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True iff no pair has two or more paths.
    pub fn all_at_most_one(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, row)| row.iter().all(|&(_, c)| c < 2))
    }
}

fn saturating_merge(a: &[(u32, u8)], b: &[(u32, u8)]) -> Vec<(u32, u8)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, (a[i].1 + b[j].1).min(2)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Circuit {
    /// Count input-to-output paths per (output, input) pair by a topological
    /// sweep, saturating counts at two.
    pub fn path_multiplicity(&self) -> PathMultiplicity {
        let mut per_gate: Vec<Vec<(u32, u8)>> = Vec::with_capacity(self.gate_count());
        for ops in self.gates() {
            let mut acc: Vec<(u32, u8)> = Vec::new();
            for &r in ops {
                let operand: &[(u32, u8)] = match r {
                    Ref::Input(j) => {
                        acc = saturating_merge(&acc, &[(j, 1)]);
                        continue;
                    }
                    Ref::Gate(k) => &per_gate[k as usize],
                };
                acc = saturating_merge(&acc, operand);
            }
            per_gate.push(acc);
        }
        let entries = self
            .outputs()
            .iter()
            .map(|&(label, gate)| (label, per_gate[gate as usize].clone()))
            .collect();
        PathMultiplicity { entries }
    }

    /// Reverse every wire: inputs and outputs swap roles, so a regular
    /// circuit computing `A` becomes one computing `A` transposed (over
    /// commutative semigroups).
    ///
    /// Requires output labels `0..m-1` on `m` distinct gates, every input
    /// feeding at least one wire, no dead gates, and at most one path from
    /// any input to any output; otherwise the reversal contract is undefined
    /// and an error is returned.
    pub fn reverse(&self) -> Result<Circuit, CircuitError> {
        let n = self.n_inputs();
        let g = self.gate_count();
        let m = self.outputs().len();

        let mut label_of = vec![None::<u32>; g];
        for (pos, &(label, gate)) in self.outputs().iter().enumerate() {
            if label as usize != pos {
                return Err(CircuitError::ShapeMismatch(format!(
                    "output labels are not 0..{m}"
                )));
            }
            if label_of[gate as usize].is_some() {
                return Err(CircuitError::NotRegular(format!(
                    "gate g{gate} carries more than one output label"
                )));
            }
            label_of[gate as usize] = Some(label);
        }

        let (in_deg, gate_deg) = self.out_degrees();
        if let Some(j) = in_deg.iter().position(|&d| d == 0) {
            return Err(CircuitError::NotRegular(format!(
                "input x{j} feeds no wire"
            )));
        }
        for k in 0..g {
            if gate_deg[k] == 0 && label_of[k].is_none() {
                return Err(CircuitError::NotRegular(format!(
                    "gate g{k} is dead (out-degree 0 but not an output)"
                )));
            }
        }
        if !self.path_multiplicity().all_at_most_one() {
            return Err(CircuitError::NotRegular(
                "some input reaches an output along two paths".into(),
            ));
        }

        // Reversed gate order: internal gates by descending original index,
        // then original inputs ascending (they become the outputs).
        let mut rev_idx = vec![u32::MAX; g];
        let mut internal = 0u32;
        for k in (0..g).rev() {
            if label_of[k].is_none() {
                rev_idx[k] = internal;
                internal += 1;
            }
        }

        // Consumer lists double as reversed operand lists; scanning gates in
        // ascending order keeps them deterministic.
        let mut consumers: Vec<Vec<Ref>> = vec![Vec::new(); n + g];
        for (k, ops) in self.gates().enumerate() {
            let consumer_ref = match label_of[k] {
                Some(label) => Ref::Input(label),
                None => Ref::Gate(rev_idx[k]),
            };
            for &r in ops {
                let node = match r {
                    Ref::Input(j) => j as usize,
                    Ref::Gate(kk) => n + kk as usize,
                };
                consumers[node].push(consumer_ref);
            }
        }

        let mut gates: Vec<Vec<Ref>> = Vec::with_capacity(internal as usize + n);
        for k in (0..g).rev() {
            if label_of[k].is_none() {
                gates.push(std::mem::take(&mut consumers[n + k]));
            }
        }
        let mut outputs = Vec::with_capacity(n);
        for (j, cons) in consumers.iter_mut().take(n).enumerate() {
            gates.push(std::mem::take(cons));
            outputs.push((j as u32, internal + j as u32));
        }
        Circuit::from_parts(m, gates, outputs)
    }
}

/// Structural equality of two circuits up to gate renumbering and operand
/// order within a gate (the underlying shared DAG, read commutatively).
///
/// Nodes are canonicalized bottom-up by hash-consing on sorted operand ids;
/// two circuits are considered equal when their labeled outputs map to the
/// same canonical ids and their live gates form the same id multiset.
pub fn isomorphic_mod_renumbering(a: &Circuit, b: &Circuit) -> bool {
    if a.n_inputs() != b.n_inputs() || a.outputs().len() != b.outputs().len() {
        return false;
    }
    let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut next_id = a.n_inputs() as u32; // ids 0..n are the inputs
    let sig_a = canonical_signature(a, &mut table, &mut next_id);
    let sig_b = canonical_signature(b, &mut table, &mut next_id);
    sig_a == sig_b
}

fn canonical_signature(
    c: &Circuit,
    table: &mut HashMap<Vec<u32>, u32>,
    next_id: &mut u32,
) -> (Vec<(u32, u32)>, Vec<u32>) {
    // live = feeds some output
    let mut live = vec![false; c.gate_count()];
    for &(_, gate) in c.outputs() {
        live[gate as usize] = true;
    }
    for k in (0..c.gate_count()).rev() {
        if live[k] {
            for &r in c.gate_ops(k) {
                if let Ref::Gate(op) = r {
                    live[op as usize] = true;
                }
            }
        }
    }
    let mut ids = vec![u32::MAX; c.gate_count()];
    let mut live_ids = Vec::new();
    for k in 0..c.gate_count() {
        if !live[k] {
            continue;
        }
        let mut key: Vec<u32> = c
            .gate_ops(k)
            .iter()
            .map(|&r| match r {
                Ref::Input(j) => j,
                Ref::Gate(g) => ids[g as usize],
            })
            .collect();
        key.sort_unstable();
        let id = *table.entry(key).or_insert_with(|| {
            let id = *next_id;
            *next_id += 1;
            id
        });
        ids[k] = id;
        live_ids.push(id);
    }
    live_ids.sort_unstable();
    let outs = c
        .outputs()
        .iter()
        .map(|&(label, gate)| (label, ids[gate as usize]))
        .collect();
    (outs, live_ids)
}

#[cfg(test)]
mod tests {
    use super::super::example_circuit;
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn multiplicity_matches_example_matrix() {
        let (c, a) = example_circuit();
        let mult = c.path_multiplicity();
        for i in 0..a.m() {
            for j in 0..a.n() {
                let expected = if a.is_one(i, j) {
                    Mult::One
                } else {
                    Mult::Zero
                };
                assert_eq!(mult.get(i as u32, j as u32), expected, "at ({i},{j})");
            }
        }
    }

    #[test]
    fn parallel_wires_count_as_many() {
        let mut c = Circuit::new(1);
        let g = c.add_gate(vec![Ref::Input(0), Ref::Input(0)]).unwrap();
        c.mark_output(0, g).unwrap();
        assert_eq!(c.path_multiplicity().get(0, 0), Mult::Many);
    }

    #[test]
    fn empty_circuit_has_empty_table() {
        let c = Circuit::new(3);
        assert!(c.path_multiplicity().is_empty());
    }

    // Exhaustive comparison against brute-force path enumeration on small
    // random DAGs. The enumeration is a direct DFS over wires, independent
    // of the sweep implementation.
    #[test]
    fn multiplicity_agrees_with_path_enumeration() {
        fn count_paths(
            c: &Circuit,
            from_input: u32,
            node: Ref,
            memo: &mut Vec<Option<u64>>,
        ) -> u64 {
            match node {
                Ref::Input(j) => u64::from(j == from_input),
                Ref::Gate(k) => {
                    if let Some(v) = memo[k as usize] {
                        return v;
                    }
                    let total = c
                        .gate_ops(k as usize)
                        .iter()
                        .map(|&op| count_paths(c, from_input, op, memo))
                        .sum();
                    memo[k as usize] = Some(total);
                    total
                }
            }
        }

        let mut rng = SplitMix64::new(31337);
        for _ in 0..300 {
            let n = 1 + rng.next_usize(4);
            let g = 1 + rng.next_usize(6);
            let mut c = Circuit::new(n);
            for k in 0..g {
                let fan = 1 + rng.next_usize(3);
                let ops = (0..fan)
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
            let (_, deg) = c.out_degrees();
            let mut label = 0;
            for (k, &d) in deg.iter().enumerate() {
                if d == 0 {
                    c.mark_output(label, k as u32).unwrap();
                    label += 1;
                }
            }
            let mult = c.path_multiplicity();
            for &(out_label, gate) in c.outputs() {
                for j in 0..n as u32 {
                    let mut memo = vec![None; c.gate_count()];
                    let exact = count_paths(&c, j, Ref::Gate(gate), &mut memo);
                    let expected = match exact {
                        0 => Mult::Zero,
                        1 => Mult::One,
                        _ => Mult::Many,
                    };
                    assert_eq!(mult.get(out_label, j), expected);
                }
            }
        }
    }

    #[test]
    fn reverse_computes_the_transpose_of_the_example() {
        let (c, a) = example_circuit();
        let rev = c.reverse().unwrap();
        assert_eq!(rev.n_inputs(), 3);
        assert_eq!(rev.outputs().len(), 5);
        assert_eq!(rev.wires(), c.wires());
        let at = a.transpose();
        assert!(rev.is_regular(&at).unwrap());
        // transposed support rows, frozen from the reversed example:
        // (1 0 0 / 1 1 0 / 1 1 0 / 1 1 1 / 0 1 1)
        let outs = rev.output_multisets().unwrap();
        let expected: [&[u32]; 5] = [&[0], &[0, 1], &[0, 1], &[0, 1, 2], &[1, 2]];
        for (label, ms) in outs {
            assert!(
                ms.is_unit_support(expected[label as usize]),
                "row {label}: {ms}"
            );
        }
    }

    #[test]
    fn double_reverse_is_identity_up_to_renumbering() {
        let (c, _) = example_circuit();
        let twice = c.reverse().unwrap().reverse().unwrap();
        assert!(isomorphic_mod_renumbering(&c, &twice));
        assert_eq!(c.wires(), twice.wires());
    }

    #[test]
    fn reverse_rejects_non_regular_circuits() {
        let mut c = Circuit::new(1);
        let g = c.add_gate(vec![Ref::Input(0), Ref::Input(0)]).unwrap();
        c.mark_output(0, g).unwrap();
        assert!(matches!(c.reverse(), Err(CircuitError::NotRegular(_))));

        // dangling input
        let mut c = Circuit::new(2);
        let g = c.add_gate(vec![Ref::Input(0)]).unwrap();
        c.mark_output(0, g).unwrap();
        assert!(matches!(c.reverse(), Err(CircuitError::NotRegular(_))));
    }

    #[test]
    fn isomorphism_detects_differences() {
        let (c, _) = example_circuit();
        let mut other = Circuit::new(5);
        let g0 = other
            .add_gate(vec![Ref::Input(1), Ref::Input(2), Ref::Input(3)])
            .unwrap();
        let g1 = other.add_gate(vec![Ref::Input(0), Ref::Gate(g0)]).unwrap();
        let g2 = other.add_gate(vec![Ref::Gate(g0), Ref::Input(4)]).unwrap();
        // third output differs: (2,4) instead of (3,4)
        let g3 = other.add_gate(vec![Ref::Input(2), Ref::Input(4)]).unwrap();
        other.mark_output(0, g1).unwrap();
        other.mark_output(1, g2).unwrap();
        other.mark_output(2, g3).unwrap();
        assert!(!isomorphic_mod_renumbering(&c, &other));
    }
}
