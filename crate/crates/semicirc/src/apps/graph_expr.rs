//! Algebraic graph expressions: overlay and connect over vertex leaves.
//!
//! An expression denotes a directed graph: `overlay` is pairwise union and
//! `connect` additionally adds every edge from its left vertices to its
//! right vertices. Expressions are stored as a shared DAG (nodes reference
//! earlier nodes), because only sharing makes dense graphs representable in
//! linear size: a dense adjacency matrix `A` becomes
//!
//! ```text
//! G_A = leaf(0) + ... + leaf(n-1) + sum_i connect(leaf(i), y_i)
//! ```
//!
//! where the `y_i` (the overlay `sum of leaf(j) over A[i][j] = 1`) reuse
//! the synthesized circuit for `A` over the graph-overlay semigroup as
//! shared subexpressions, giving `O(n + z)` nodes in total.

use super::AppError;
use crate::matrix::{meaningful_lines, Matrix01};
use crate::semigroup::DiGraph;
use crate::synth::{synthesize, SynthParams};
use crate::Ref;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphExprError {
    #[error("node e{0} references a node at or after itself")]
    ForwardReference(u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphNode {
    /// The empty graph; identity for both operations.
    Empty,
    Leaf(u32),
    Overlay(u32, u32),
    Connect(u32, u32),
}

/// An expression DAG. Nodes only reference earlier nodes; the last node is
/// the root. An expression with no nodes denotes the empty graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphExpr {
    nodes: Vec<GraphNode>,
}

impl GraphExpr {
    pub fn new() -> Self {
        GraphExpr::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    fn push(&mut self, node: GraphNode) -> Result<u32, GraphExprError> {
        let next = self.nodes.len() as u32;
        let ok = match node {
            GraphNode::Empty | GraphNode::Leaf(_) => true,
            GraphNode::Overlay(a, b) | GraphNode::Connect(a, b) => a < next && b < next,
        };
        if !ok {
            return Err(GraphExprError::ForwardReference(next));
        }
        self.nodes.push(node);
        Ok(next)
    }

    pub fn empty_node(&mut self) -> u32 {
        self.push(GraphNode::Empty).unwrap()
    }

    pub fn leaf(&mut self, vertex: u32) -> u32 {
        self.push(GraphNode::Leaf(vertex)).unwrap()
    }

    pub fn overlay(&mut self, a: u32, b: u32) -> Result<u32, GraphExprError> {
        self.push(GraphNode::Overlay(a, b))
    }

    pub fn connect(&mut self, a: u32, b: u32) -> Result<u32, GraphExprError> {
        self.push(GraphNode::Connect(a, b))
    }

    /// The graph denoted by node `id` (bottom-up, memoized over the DAG).
    pub fn eval_node(&self, id: u32) -> DiGraph {
        self.eval_all()[id as usize].clone()
    }

    fn eval_all(&self) -> Vec<DiGraph> {
        let mut values: Vec<DiGraph> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let g = match *node {
                GraphNode::Empty => DiGraph::empty(),
                GraphNode::Leaf(v) => DiGraph::vertex(v),
                GraphNode::Overlay(a, b) => values[a as usize].overlay(&values[b as usize]),
                GraphNode::Connect(a, b) => values[a as usize].connect(&values[b as usize]),
            };
            values.push(g);
        }
        values
    }

    /// `semicirc-graph v1` text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("semicirc-graph v1\n");
        let _ = writeln!(out, "nodes {}", self.nodes.len());
        for (k, node) in self.nodes.iter().enumerate() {
            match *node {
                GraphNode::Empty => {
                    let _ = writeln!(out, "e{k}: empty");
                }
                GraphNode::Leaf(v) => {
                    let _ = writeln!(out, "e{k}: leaf {v}");
                }
                GraphNode::Overlay(a, b) => {
                    let _ = writeln!(out, "e{k}: overlay e{a} e{b}");
                }
                GraphNode::Connect(a, b) => {
                    let _ = writeln!(out, "e{k}: connect e{a} e{b}");
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphExprError> {
        let mut lines = meaningful_lines(text);
        let (line, header) = lines.next().ok_or(GraphExprError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        if header != "semicirc-graph v1" {
            return Err(GraphExprError::Parse {
                line,
                msg: format!("expected `semicirc-graph v1`, got `{header}`"),
            });
        }
        let (line, count_line) = lines.next().ok_or(GraphExprError::Parse {
            line: line + 1,
            msg: "missing nodes line".into(),
        })?;
        let count: usize = count_line
            .strip_prefix("nodes ")
            .and_then(|c| c.trim().parse().ok())
            .ok_or(GraphExprError::Parse {
                line,
                msg: format!("bad nodes line `{count_line}`"),
            })?;
        let mut expr = GraphExpr::new();
        for k in 0..count {
            let (line, body) = lines.next().ok_or(GraphExprError::Parse {
                line: line + 1,
                msg: "missing node line".into(),
            })?;
            let bad = || GraphExprError::Parse {
                line,
                msg: format!("bad node line `{body}`"),
            };
            let (head, rest) = body.split_once(':').ok_or_else(bad)?;
            if head.trim() != format!("e{k}") {
                return Err(bad());
            }
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let parse_id = |tok: &str| -> Option<u32> {
                let id: u32 = tok.strip_prefix('e')?.parse().ok()?;
                ((id as usize) < k).then_some(id)
            };
            let node = match tokens.as_slice() {
                ["empty"] => GraphNode::Empty,
                ["leaf", v] => GraphNode::Leaf(v.parse().map_err(|_| bad())?),
                ["overlay", a, b] => {
                    GraphNode::Overlay(parse_id(a).ok_or_else(bad)?, parse_id(b).ok_or_else(bad)?)
                }
                ["connect", a, b] => {
                    GraphNode::Connect(parse_id(a).ok_or_else(bad)?, parse_id(b).ok_or_else(bad)?)
                }
                _ => return Err(bad()),
            };
            expr.push(node).map_err(|_| bad())?;
        }
        if let Some((line, extra)) = lines.next() {
            return Err(GraphExprError::Parse {
                line,
                msg: format!("trailing content `{extra}`"),
            });
        }
        Ok(expr)
    }
}

/// Evaluate a whole expression: the graph denoted by its root (last node),
/// or the empty graph for an empty expression.
pub fn eval_graph_expr(expr: &GraphExpr) -> DiGraph {
    match expr.node_count() {
        0 => DiGraph::empty(),
        n => expr.eval_node((n - 1) as u32),
    }
}

#[derive(Debug, Clone)]
pub struct GraphExprReport {
    pub node_count: usize,
    /// Rows with no ones: these vertices appear as bare leaves, with no
    /// connect term.
    pub isolated_rows: Vec<usize>,
}

/// Build a linear-size expression for the dense graph with adjacency `a`:
/// vertex `i` connects to the overlay of its row's ones. The synthesized
/// circuit for `a` is reused as shared overlay structure, so the expression
/// has `O(n + z)` nodes.
pub fn build_dense_graph_expr(
    a: &Matrix01,
    p: &SynthParams,
) -> Result<(GraphExpr, GraphExprReport), AppError> {
    if a.m() != a.n() {
        return Err(AppError::DimensionMismatch(format!(
            "adjacency matrix must be square, got {}x{}",
            a.m(),
            a.n()
        )));
    }
    let n = a.n();
    let isolated: Vec<usize> = a.all_zero_rows();
    let isolated_set: BTreeSet<usize> = isolated.iter().copied().collect();
    let supported: Vec<usize> = (0..n).filter(|i| !isolated_set.contains(i)).collect();

    let mut expr = GraphExpr::new();
    let leaves: Vec<u32> = (0..n as u32).map(|v| expr.leaf(v)).collect();

    // overlay of all vertex leaves, so every vertex is present
    let mut acc = leaves[0];
    for &leaf in &leaves[1..] {
        acc = expr.overlay(acc, leaf).expect("append-only ids");
    }

    if !supported.is_empty() {
        let sub = a.restrict_rows(&supported);
        let (circuit, _) = synthesize(&sub, p)?;
        // mirror the circuit's gates as overlay folds over the leaves
        let mut gate_expr: Vec<u32> = Vec::with_capacity(circuit.gate_count());
        for ops in circuit.gates() {
            let mut fold: Option<u32> = None;
            for &r in ops {
                let operand = match r {
                    Ref::Input(j) => leaves[j as usize],
                    Ref::Gate(k) => gate_expr[k as usize],
                };
                fold = Some(match fold {
                    None => operand,
                    Some(f) => expr.overlay(f, operand).expect("append-only ids"),
                });
            }
            gate_expr.push(fold.expect("gates are nonempty"));
        }
        for &(label, gate) in circuit.outputs() {
            let row = supported[label as usize];
            let y = gate_expr[gate as usize];
            let conn = expr.connect(leaves[row], y).expect("append-only ids");
            acc = expr.overlay(acc, conn).expect("append-only ids");
        }
    }
    let report = GraphExprReport {
        node_count: expr.node_count(),
        isolated_rows: isolated,
    };
    Ok((expr, report))
}
