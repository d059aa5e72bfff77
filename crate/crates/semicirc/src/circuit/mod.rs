//! The computation-DAG representation.
//!
//! A circuit has `n` input nodes and an append-only list of gates. Each gate
//! holds an ordered, nonempty operand list; every operand references an input
//! or an earlier gate, so circuits are acyclic by construction. Output gates
//! are labeled and must have out-degree zero. The circuit's *size* is its
//! wire count (the sum of fan-ins); `gate_count` is reported alongside.
//!
//! A gate of fan-in `r` computes the ordered product `f1 . f2 . ... . fr` of
//! the words computed by its operands, so evaluation over any semigroup is a
//! left-to-right fold per gate in index order.

mod analyze;
mod builder;
mod text;

pub use analyze::{isomorphic_mod_renumbering, Mult, PathMultiplicity};
pub use builder::CircuitBuilder;

use crate::matrix::Matrix01;
use crate::semigroup::{Multiset, Semigroup, SemigroupError, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("invalid operand {0:?}: references a later gate or is out of range")]
    InvalidOperand(Ref),
    #[error("gate operand list is empty")]
    EmptyGate,
    #[error("output label {0} already used")]
    DuplicateLabel(u32),
    #[error("output gate g{0} is referenced by a later gate (out-degree must be 0)")]
    OutputHasFanout(u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("assignment has {got} values, circuit has {expected} inputs")]
    AssignmentLength { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A gate operand: an input node or an earlier gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ref {
    Input(u32),
    Gate(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_inputs: usize,
    gates: Vec<Vec<Ref>>,
    /// `(label, gate)` pairs, kept sorted by label; labels are distinct and
    /// each referenced gate has out-degree zero.
    outputs: Vec<(u32, u32)>,
}

impl Circuit {
    pub fn new(n_inputs: usize) -> Self {
        Circuit {
            n_inputs,
            gates: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Assemble and validate a whole circuit in one pass: operands must
    /// reference inputs or earlier gates, labels must be distinct, and every
    /// output gate must have out-degree zero.
    pub fn from_parts(
        n_inputs: usize,
        gates: Vec<Vec<Ref>>,
        mut outputs: Vec<(u32, u32)>,
    ) -> Result<Self, CircuitError> {
        for (k, ops) in gates.iter().enumerate() {
            if ops.is_empty() {
                return Err(CircuitError::EmptyGate);
            }
            for &r in ops {
                let ok = match r {
                    Ref::Input(j) => (j as usize) < n_inputs,
                    Ref::Gate(g) => (g as usize) < k,
                };
                if !ok {
                    return Err(CircuitError::InvalidOperand(r));
                }
            }
        }
        outputs.sort_unstable();
        if let Some(w) = outputs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(CircuitError::DuplicateLabel(w[0].0));
        }
        let mut fanout = vec![false; gates.len()];
        for ops in &gates {
            for &r in ops {
                if let Ref::Gate(g) = r {
                    fanout[g as usize] = true;
                }
            }
        }
        for &(_, gate) in &outputs {
            if (gate as usize) >= gates.len() {
                return Err(CircuitError::InvalidOperand(Ref::Gate(gate)));
            }
            if fanout[gate as usize] {
                return Err(CircuitError::OutputHasFanout(gate));
            }
        }
        Ok(Circuit {
            n_inputs,
            gates,
            outputs,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Number of wires: the sum of gate fan-ins. The primary size metric.
    pub fn wires(&self) -> usize {
        self.gates.iter().map(Vec::len).sum()
    }

    pub fn gate_ops(&self, gate: usize) -> &[Ref] {
        &self.gates[gate]
    }

    pub fn gates(&self) -> impl Iterator<Item = &[Ref]> {
        self.gates.iter().map(Vec::as_slice)
    }

    /// `(label, gate)` pairs sorted by label.
    pub fn outputs(&self) -> &[(u32, u32)] {
        &self.outputs
    }

    pub fn output_gate(&self, label: u32) -> Option<u32> {
        self.outputs
            .binary_search_by_key(&label, |&(l, _)| l)
            .ok()
            .map(|pos| self.outputs[pos].1)
    }

    fn check_ref(&self, r: Ref, next_gate: usize) -> Result<(), CircuitError> {
        let ok = match r {
            Ref::Input(j) => (j as usize) < self.n_inputs,
            Ref::Gate(k) => (k as usize) < next_gate,
        };
        if ok {
            Ok(())
        } else {
            Err(CircuitError::InvalidOperand(r))
        }
    }

    /// Append a gate. Operand order is preserved; each operand must
    /// reference an input or an earlier gate.
    pub fn add_gate(&mut self, ops: Vec<Ref>) -> Result<u32, CircuitError> {
        if ops.is_empty() {
            return Err(CircuitError::EmptyGate);
        }
        for &r in &ops {
            self.check_ref(r, self.gates.len())?;
        }
        self.gates.push(ops);
        Ok((self.gates.len() - 1) as u32)
    }

    /// Label `gate` as output `label`. The gate must exist, the label must be
    /// fresh, and the gate must not feed any other gate.
    pub fn mark_output(&mut self, label: u32, gate: u32) -> Result<(), CircuitError> {
        if (gate as usize) >= self.gates.len() {
            return Err(CircuitError::InvalidOperand(Ref::Gate(gate)));
        }
        if self.output_gate(label).is_some() {
            return Err(CircuitError::DuplicateLabel(label));
        }
        if self.gates.iter().any(|ops| ops.contains(&Ref::Gate(gate))) {
            return Err(CircuitError::OutputHasFanout(gate));
        }
        let pos = self
            .outputs
            .binary_search_by_key(&label, |&(l, _)| l)
            .unwrap_err();
        self.outputs.insert(pos, (label, gate));
        Ok(())
    }

    /// Out-degree of every node, inputs first then gates.
    pub(crate) fn out_degrees(&self) -> (Vec<u32>, Vec<u32>) {
        let mut inp = vec![0u32; self.n_inputs];
        let mut gat = vec![0u32; self.gates.len()];
        for ops in &self.gates {
            for &r in ops {
                match r {
                    Ref::Input(j) => inp[j as usize] += 1,
                    Ref::Gate(k) => gat[k as usize] += 1,
                }
            }
        }
        (inp, gat)
    }

    /// Evaluate every gate over `sg` for the given input assignment, in
    /// gate order. Gates fold their operands left to right.
    pub fn gate_values(
        &self,
        sg: &dyn Semigroup,
        assignment: &[Value],
    ) -> Result<Vec<Value>, CircuitError> {
        if assignment.len() != self.n_inputs {
            return Err(CircuitError::AssignmentLength {
                expected: self.n_inputs,
                got: assignment.len(),
            });
        }
        let mut values: Vec<Value> = Vec::with_capacity(self.gates.len());
        for ops in &self.gates {
            let fetch = |r: Ref| -> &Value {
                match r {
                    Ref::Input(j) => &assignment[j as usize],
                    Ref::Gate(k) => &values[k as usize],
                }
            };
            let mut acc = fetch(ops[0]).clone();
            for &r in &ops[1..] {
                acc = sg.combine(&acc, fetch(r))?;
            }
            values.push(acc);
        }
        Ok(values)
    }

    /// Evaluate all outputs over `sg` for the given input assignment.
    /// The result is keyed by output label, ascending.
    pub fn evaluate(
        &self,
        sg: &dyn Semigroup,
        assignment: &[Value],
    ) -> Result<Vec<(u32, Value)>, CircuitError> {
        let values = self.gate_values(sg, assignment)?;
        Ok(self
            .outputs
            .iter()
            .map(|&(label, gate)| (label, values[gate as usize].clone()))
            .collect())
    }

    /// Multiset value of every gate under unit generators: per gate, the
    /// set of inputs reaching it with path multiplicities.
    pub fn gate_multisets(&self) -> Vec<Multiset> {
        let mut values: Vec<Multiset> = Vec::with_capacity(self.gates.len());
        for ops in &self.gates {
            let mut acc: Option<Multiset> = None;
            for &r in ops {
                let operand = match r {
                    Ref::Input(j) => Multiset::unit(j),
                    Ref::Gate(k) => values[k as usize].clone(),
                };
                acc = Some(match acc {
                    None => operand,
                    Some(a) => a.merge(&operand),
                });
            }
            values.push(acc.expect("gates are nonempty"));
        }
        values
    }

    /// Evaluate over the multiset oracle with unit generators: per output,
    /// the multiset of inputs reaching it, with path multiplicities.
    pub fn output_multisets(&self) -> Result<Vec<(u32, Multiset)>, CircuitError> {
        let values = self.gate_multisets();
        Ok(self
            .outputs
            .iter()
            .map(|&(label, gate)| (label, values[gate as usize].clone()))
            .collect())
    }

    /// Convert to fan-in <= 2 by expanding each wide gate into a left-leaning
    /// chain `((f1.f2).f3)...`, preserving operand order. The word computed
    /// at every output is unchanged and the wire count at most doubles.
    /// Circuits that are already binary come back structurally identical.
    pub fn to_binary(&self) -> Circuit {
        let mut out = Circuit::new(self.n_inputs);
        let mut gate_map: Vec<u32> = Vec::with_capacity(self.gates.len());
        for ops in &self.gates {
            let remap = |r: Ref| -> Ref {
                match r {
                    Ref::Input(j) => Ref::Input(j),
                    Ref::Gate(k) => Ref::Gate(gate_map[k as usize]),
                }
            };
            let new_idx = if ops.len() <= 2 {
                let mapped: Vec<Ref> = ops.iter().map(|&r| remap(r)).collect();
                out.add_gate(mapped).expect("remapped gate is valid")
            } else {
                let mut acc = remap(ops[0]);
                let mut last = 0u32;
                for &r in &ops[1..] {
                    last = out
                        .add_gate(vec![acc, remap(r)])
                        .expect("remapped gate is valid");
                    acc = Ref::Gate(last);
                }
                last
            };
            gate_map.push(new_idx);
        }
        for &(label, gate) in &self.outputs {
            out.mark_output(label, gate_map[gate as usize])
                .expect("output mapping is valid");
        }
        out
    }

    /// True iff the circuit computes exactly `a`: over the multiset oracle,
    /// output `i` must be the support of row `i` with multiplicity one
    /// everywhere (one input-to-output path per one-entry, none per zero).
    pub fn is_regular(&self, a: &Matrix01) -> Result<bool, CircuitError> {
        if self.n_inputs != a.n() {
            return Err(CircuitError::ShapeMismatch(format!(
                "circuit has {} inputs, matrix has {} columns",
                self.n_inputs,
                a.n()
            )));
        }
        if self.outputs.len() != a.m()
            || self
                .outputs
                .iter()
                .enumerate()
                .any(|(i, &(label, _))| label as usize != i)
        {
            return Err(CircuitError::ShapeMismatch(format!(
                "circuit outputs are not labeled 0..{}",
                a.m()
            )));
        }
        let mult = self.path_multiplicity();
        for i in 0..a.m() {
            let mut support = a.row_support(i).into_iter().peekable();
            for j in 0..self.n_inputs as u32 {
                let expected = if support.peek() == Some(&j) {
                    support.next();
                    Mult::One
                } else {
                    Mult::Zero
                };
                if mult.get(i as u32, j) != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
pub(crate) fn example_circuit() -> (Circuit, Matrix01) {
    // Five inputs; one shared inner gate; three range outputs covering
    // columns (0,3), (1,4) and (3,4).
    let mut c = Circuit::new(5);
    let g0 = c
        .add_gate(vec![Ref::Input(1), Ref::Input(2), Ref::Input(3)])
        .unwrap();
    let g1 = c.add_gate(vec![Ref::Input(0), Ref::Gate(g0)]).unwrap();
    let g2 = c.add_gate(vec![Ref::Gate(g0), Ref::Input(4)]).unwrap();
    let g3 = c.add_gate(vec![Ref::Input(3), Ref::Input(4)]).unwrap();
    c.mark_output(0, g1).unwrap();
    c.mark_output(1, g2).unwrap();
    c.mark_output(2, g3).unwrap();
    let a = Matrix01::from_zeros(3, 5, [(0, 4), (1, 0), (2, 0), (2, 1), (2, 2)]).unwrap();
    (c, a)
}
