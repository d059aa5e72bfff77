//! Semigroup carriers and the instance catalog.
//!
//! Every evaluation in this crate is parameterized by a [`Semigroup`]: a named
//! carrier with one closed associative binary operation. Instances are
//! registered by name and selected at runtime (`int-sum`, `bool-or`, ...).
//! Two free-object instances double as universal test oracles:
//!
//! * [`multiset`](Multiset): the free commutative semigroup on the input
//!   variables. A circuit output evaluated here records exactly which inputs
//!   reach it and with what multiplicity, which certifies the output for
//!   every commutative semigroup at once.
//! * [`word`](Word): the free semigroup (concatenation, never reordered),
//!   used to check operand order where commutativity may not be assumed.
//!
//! Variable indices are 0-based everywhere.

mod graph;
mod instances;
mod multiset;
mod word;

pub use graph::DiGraph;
pub use instances::{
    AVG, BOOL_AND, BOOL_OR, GRAPH_OVERLAY, INT_MAX, INT_MIN, INT_SUM, MULTISET, TROPICAL_MIN, WORD,
};
pub use multiset::Multiset;
pub use word::Word;

use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty product: semigroups have no neutral element")]
    EmptyProduct,
    #[error("value of kind {got} where {expected} was expected")]
    TypeMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown semigroup instance `{0}`")]
    UnknownInstance(String),
    #[error("malformed {kind} value `{text}`")]
    BadValue { kind: &'static str, text: String },
}

/// Tropical number: an integer or `+inf`. `min` combines, addition saturates
/// at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tropical {
    Finite(i64),
    Infinity,
}

impl Tropical {
    pub fn min(self, other: Tropical) -> Tropical {
        match (self, other) {
            (Tropical::Infinity, x) | (x, Tropical::Infinity) => x,
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a.min(b)),
        }
    }

    pub fn checked_add(self, other: Tropical) -> Option<Tropical> {
        match (self, other) {
            (Tropical::Infinity, _) | (_, Tropical::Infinity) => Some(Tropical::Infinity),
            (Tropical::Finite(a), Tropical::Finite(b)) => a.checked_add(b).map(Tropical::Finite),
        }
    }
}

impl std::fmt::Display for Tropical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tropical::Finite(v) => write!(f, "{v}"),
            Tropical::Infinity => write!(f, "inf"),
        }
    }
}

/// A carrier element of one of the catalog instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    /// Running (total, count) pair for averaging.
    Avg {
        total: i64,
        count: i64,
    },
    Tropical(Tropical),
    Multiset(Multiset),
    Word(Word),
    Graph(DiGraph),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Bool(_) => "bool",
            Value::Avg { .. } => "avg",
            Value::Tropical(_) => "tropical",
            Value::Multiset(_) => "multiset",
            Value::Word(_) => "word",
            Value::Graph(_) => "graph",
        }
    }

    pub fn as_int(&self) -> Result<i64, SemigroupError> {
        match self {
            Value::Int(v) => Ok(*v),
            other => Err(SemigroupError::TypeMismatch {
                expected: "int",
                got: other.kind(),
            }),
        }
    }

    pub fn as_multiset(&self) -> Result<&Multiset, SemigroupError> {
        match self {
            Value::Multiset(m) => Ok(m),
            other => Err(SemigroupError::TypeMismatch {
                expected: "multiset",
                got: other.kind(),
            }),
        }
    }

    pub fn as_word(&self) -> Result<&Word, SemigroupError> {
        match self {
            Value::Word(w) => Ok(w),
            other => Err(SemigroupError::TypeMismatch {
                expected: "word",
                got: other.kind(),
            }),
        }
    }
}

/// One named semigroup instance: a carrier plus its binary operation.
///
/// `combine` must be associative on the whole carrier; when `is_commutative`
/// (resp. `is_idempotent`) returns true the operation must also commute
/// (resp. satisfy `op(a, a) = a`). These laws are spot-checked by tests via
/// [`sample`](Semigroup::sample), not enforced at runtime.
pub trait Semigroup: Send + Sync {
    fn name(&self) -> &'static str;
    /// Human-readable description of the carrier set.
    fn carrier(&self) -> &'static str;
    fn is_commutative(&self) -> bool;
    fn is_idempotent(&self) -> bool;
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError>;
    /// Parse one carrier value from its text form (used by value files).
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError>;
    /// Canonical text form, inverse of `parse_value`.
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError>;
    /// Draw a random carrier element, for law sampling.
    fn sample(&self, rng: &mut SplitMix64) -> Value;
}

/// Left-to-right fold of a nonempty sequence. For non-commutative instances
/// the operand order is exactly the sequence order.
pub fn fold_ordered(s: &dyn Semigroup, items: &[Value]) -> Result<Value, SemigroupError> {
    let (first, rest) = items.split_first().ok_or(SemigroupError::EmptyProduct)?;
    let mut acc = first.clone();
    for item in rest {
        acc = s.combine(&acc, item)?;
    }
    Ok(acc)
}

/// The instance catalog. At least the nine named instances below are
/// always present; `find` resolves the names accepted on the command line.
pub fn catalog() -> &'static [&'static dyn Semigroup] {
    static CATALOG: [&dyn Semigroup; 9] = [
        &INT_SUM,
        &INT_MIN,
        &INT_MAX,
        &BOOL_OR,
        &BOOL_AND,
        &AVG,
        &MULTISET,
        &WORD,
        &GRAPH_OVERLAY,
    ];
    &CATALOG
}

pub fn find(name: &str) -> Result<&'static dyn Semigroup, SemigroupError> {
    catalog()
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| SemigroupError::UnknownInstance(name.to_string()))
}
