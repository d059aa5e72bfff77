//! Incremental circuit construction for the synthesizers.
//!
//! The builder separates two kinds of gates:
//!
//! * shared gates, deduplicated by operand list so identical range requests
//!   are materialized once and may be referenced freely, and
//! * output gates, which are always fresh and never enter the dedup table,
//!   keeping their out-degree at zero.
//!
//! `finish_pruned` drops every gate that does not feed an output, renumbering
//! the survivors densely while preserving construction (topological) order,
//! so builds are reproducible gate for gate.

use super::{Circuit, Ref};
use std::collections::HashMap;

#[derive(Debug)]
pub struct CircuitBuilder {
    n_inputs: usize,
    gates: Vec<Vec<Ref>>,
    shared: HashMap<Vec<Ref>, u32>,
    outputs: Vec<(u32, u32)>,
}

impl CircuitBuilder {
    pub fn new(n_inputs: usize) -> Self {
        CircuitBuilder {
            n_inputs,
            gates: Vec::new(),
            shared: HashMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn input(&self, j: usize) -> Ref {
        debug_assert!(j < self.n_inputs);
        Ref::Input(j as u32)
    }

    fn check(&self, ops: &[Ref]) {
        debug_assert!(!ops.is_empty());
        debug_assert!(ops.iter().all(|&r| match r {
            Ref::Input(j) => (j as usize) < self.n_inputs,
            Ref::Gate(k) => (k as usize) < self.gates.len(),
        }));
    }

    /// Append a gate without deduplication. Used by the scheme builders,
    /// whose gate counts follow exact formulas.
    pub fn raw_gate(&mut self, ops: Vec<Ref>) -> Ref {
        self.check(&ops);
        self.gates.push(ops);
        Ref::Gate((self.gates.len() - 1) as u32)
    }

    /// A gate for `ops`, reusing an existing shared gate with the same
    /// operand list if one exists. A single-operand request returns the
    /// operand itself rather than a pass-through gate.
    pub fn shared_gate(&mut self, ops: Vec<Ref>) -> Ref {
        self.check(&ops);
        if ops.len() == 1 {
            return ops[0];
        }
        if let Some(&k) = self.shared.get(&ops) {
            return Ref::Gate(k);
        }
        let k = (self.gates.len()) as u32;
        self.gates.push(ops.clone());
        self.shared.insert(ops, k);
        Ref::Gate(k)
    }

    /// A fresh, never-shared gate labeled as output `label`. Dedicating a
    /// gate per output keeps output out-degrees at zero even when two rows
    /// compute the same word.
    pub fn output_gate(&mut self, label: u32, ops: Vec<Ref>) {
        self.check(&ops);
        debug_assert!(self.outputs.iter().all(|&(l, _)| l != label));
        self.gates.push(ops);
        self.outputs.push((label, (self.gates.len() - 1) as u32));
    }

    /// Copy every gate of `sub` into this builder, rewriting `sub`'s input
    /// references through `input_map`. Returns the gate index map; `sub`'s
    /// outputs are not marked here.
    pub fn embed(&mut self, sub: &Circuit, input_map: &[Ref]) -> Vec<u32> {
        assert_eq!(input_map.len(), sub.n_inputs());
        let mut gate_map = Vec::with_capacity(sub.gate_count());
        for ops in sub.gates() {
            let mapped: Vec<Ref> = ops
                .iter()
                .map(|&r| match r {
                    Ref::Input(j) => input_map[j as usize],
                    Ref::Gate(k) => Ref::Gate(gate_map[k as usize]),
                })
                .collect();
            self.check(&mapped);
            self.gates.push(mapped);
            gate_map.push((self.gates.len() - 1) as u32);
        }
        gate_map
    }

    pub fn mark_output(&mut self, label: u32, gate: u32) {
        debug_assert!((gate as usize) < self.gates.len());
        debug_assert!(self.outputs.iter().all(|&(l, _)| l != label));
        self.outputs.push((label, gate));
    }

    /// Drop inputs `keep_inputs..` from the circuit: operands referencing
    /// them disappear, gates left with no operands disappear transitively,
    /// and gates reduced to a single operand collapse to an alias of it.
    /// Output gates always survive as gates (possibly unary).
    ///
    /// The surviving structure computes, at every kept node, the original
    /// word with the dropped variables erased.
    pub fn eliminate_inputs(self, keep_inputs: usize) -> CircuitBuilder {
        assert!(keep_inputs <= self.n_inputs);
        let is_output: Vec<bool> = {
            let mut v = vec![false; self.gates.len()];
            for &(_, g) in &self.outputs {
                v[g as usize] = true;
            }
            v
        };
        // For each old gate: either a replacement reference (alias or new
        // gate) or None when its word died entirely.
        let mut replace: Vec<Option<Ref>> = Vec::with_capacity(self.gates.len());
        let mut gates: Vec<Vec<Ref>> = Vec::new();
        for (k, ops) in self.gates.iter().enumerate() {
            let mapped: Vec<Ref> = ops
                .iter()
                .filter_map(|&r| match r {
                    Ref::Input(j) => ((j as usize) < keep_inputs).then_some(Ref::Input(j)),
                    Ref::Gate(old) => replace[old as usize],
                })
                .collect();
            let rep = if mapped.is_empty() {
                None
            } else if mapped.len() == 1 && !is_output[k] {
                Some(mapped[0])
            } else {
                gates.push(mapped);
                Some(Ref::Gate((gates.len() - 1) as u32))
            };
            replace.push(rep);
        }
        let outputs = self
            .outputs
            .iter()
            .map(|&(label, g)| {
                let rep = replace[g as usize]
                    .expect("output gate lost all operands during input elimination");
                match rep {
                    Ref::Gate(k) => (label, k),
                    Ref::Input(_) => unreachable!("output gates are never aliased"),
                }
            })
            .collect();
        let mut shared = HashMap::new();
        let is_out: Vec<bool> = {
            let mut v = vec![false; gates.len()];
            let outs: &Vec<(u32, u32)> = &outputs;
            for &(_, g) in outs {
                v[g as usize] = true;
            }
            v
        };
        for (k, ops) in gates.iter().enumerate() {
            if !is_out[k] {
                shared.entry(ops.clone()).or_insert(k as u32);
            }
        }
        CircuitBuilder {
            n_inputs: keep_inputs,
            gates,
            shared,
            outputs,
        }
    }

    /// Finish without pruning; scheme pools keep every constructed gate.
    pub fn finish(self) -> Circuit {
        Circuit::from_parts(self.n_inputs, self.gates, self.outputs)
            .expect("builder maintains circuit invariants")
    }

    /// Finish keeping only gates that feed some output (directly or
    /// transitively), renumbered densely in construction order.
    pub fn finish_pruned(self) -> Circuit {
        let mut alive = vec![false; self.gates.len()];
        for &(_, g) in &self.outputs {
            alive[g as usize] = true;
        }
        for k in (0..self.gates.len()).rev() {
            if alive[k] {
                for &r in &self.gates[k] {
                    if let Ref::Gate(op) = r {
                        alive[op as usize] = true;
                    }
                }
            }
        }
        let mut new_idx = vec![u32::MAX; self.gates.len()];
        let mut gates = Vec::with_capacity(alive.iter().filter(|&&a| a).count());
        for (k, ops) in self.gates.into_iter().enumerate() {
            if !alive[k] {
                continue;
            }
            let mapped = ops
                .into_iter()
                .map(|r| match r {
                    Ref::Input(j) => Ref::Input(j),
                    Ref::Gate(g) => Ref::Gate(new_idx[g as usize]),
                })
                .collect();
            new_idx[k] = gates.len() as u32;
            gates.push(mapped);
        }
        let outputs = self
            .outputs
            .into_iter()
            .map(|(label, g)| (label, new_idx[g as usize]))
            .collect();
        Circuit::from_parts(self.n_inputs, gates, outputs)
            .expect("pruning preserves circuit invariants")
    }
}
