//! The concrete instance structs behind the catalog.

use super::graph::{parse_graph, DiGraph};
use super::multiset::parse_multiset;
use super::word::parse_word;
use super::{Multiset, Semigroup, SemigroupError, Tropical, Value, Word};
use crate::rng::SplitMix64;

// Sampling keeps integers small enough that a thousand-element fold cannot
// overflow i64, so law tests exercise the operation, not the overflow check.
const SAMPLE_ABS: i64 = 1_000_000;

fn expect_int(v: &Value, op: &'static str) -> Result<i64, SemigroupError> {
    match v {
        Value::Int(x) => Ok(*x),
        other => Err(SemigroupError::TypeMismatch {
            expected: op,
            got: other.kind(),
        }),
    }
}

fn expect_bool(v: &Value, op: &'static str) -> Result<bool, SemigroupError> {
    match v {
        Value::Bool(x) => Ok(*x),
        other => Err(SemigroupError::TypeMismatch {
            expected: op,
            got: other.kind(),
        }),
    }
}

fn parse_int(text: &str, kind: &'static str) -> Result<Value, SemigroupError> {
    text.trim()
        .parse::<i64>()
        .map(Value::Int)
        .map_err(|_| SemigroupError::BadValue {
            kind,
            text: text.to_string(),
        })
}

fn parse_bool(text: &str, kind: &'static str) -> Result<Value, SemigroupError> {
    match text.trim() {
        "0" | "false" => Ok(Value::Bool(false)),
        "1" | "true" => Ok(Value::Bool(true)),
        _ => Err(SemigroupError::BadValue {
            kind,
            text: text.to_string(),
        }),
    }
}

/// Integers under checked addition.
pub struct IntSum;
pub static INT_SUM: IntSum = IntSum;

impl Semigroup for IntSum {
    fn name(&self) -> &'static str {
        "int-sum"
    }
    fn carrier(&self) -> &'static str {
        "64-bit integers (overflow-checked addition)"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        false
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        let (a, b) = (expect_int(a, "int")?, expect_int(b, "int")?);
        a.checked_add(b)
            .map(Value::Int)
            .ok_or(SemigroupError::Overflow("int-sum"))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_int(text, "int")
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        expect_int(v, "int").map(|x| x.to_string())
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Int(rng.next_i64(-SAMPLE_ABS, SAMPLE_ABS))
    }
}

/// Integers under minimum.
pub struct IntMin;
pub static INT_MIN: IntMin = IntMin;

impl Semigroup for IntMin {
    fn name(&self) -> &'static str {
        "int-min"
    }
    fn carrier(&self) -> &'static str {
        "64-bit integers under min"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Int(expect_int(a, "int")?.min(expect_int(b, "int")?)))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_int(text, "int")
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        expect_int(v, "int").map(|x| x.to_string())
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Int(rng.next_i64(-SAMPLE_ABS, SAMPLE_ABS))
    }
}

/// Integers under maximum.
pub struct IntMax;
pub static INT_MAX: IntMax = IntMax;

impl Semigroup for IntMax {
    fn name(&self) -> &'static str {
        "int-max"
    }
    fn carrier(&self) -> &'static str {
        "64-bit integers under max"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Int(expect_int(a, "int")?.max(expect_int(b, "int")?)))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_int(text, "int")
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        expect_int(v, "int").map(|x| x.to_string())
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Int(rng.next_i64(-SAMPLE_ABS, SAMPLE_ABS))
    }
}

/// Booleans under disjunction.
pub struct BoolOr;
pub static BOOL_OR: BoolOr = BoolOr;

impl Semigroup for BoolOr {
    fn name(&self) -> &'static str {
        "bool-or"
    }
    fn carrier(&self) -> &'static str {
        "booleans under or"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Bool(
            expect_bool(a, "bool")? | expect_bool(b, "bool")?,
        ))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_bool(text, "bool")
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        expect_bool(v, "bool").map(|x| if x { "1".into() } else { "0".into() })
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Bool(rng.next_bool())
    }
}

/// Booleans under conjunction.
pub struct BoolAnd;
pub static BOOL_AND: BoolAnd = BoolAnd;

impl Semigroup for BoolAnd {
    fn name(&self) -> &'static str {
        "bool-and"
    }
    fn carrier(&self) -> &'static str {
        "booleans under and"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Bool(
            expect_bool(a, "bool")? & expect_bool(b, "bool")?,
        ))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_bool(text, "bool")
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        expect_bool(v, "bool").map(|x| if x { "1".into() } else { "0".into() })
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Bool(rng.next_bool())
    }
}

/// (total, count) pairs under pairwise addition; the running state for
/// averaging a set of numbers.
pub struct Avg;
pub static AVG: Avg = Avg;

impl Semigroup for Avg {
    fn name(&self) -> &'static str {
        "avg"
    }
    fn carrier(&self) -> &'static str {
        "(total, count) pairs under pairwise addition"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        false
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        match (a, b) {
            (
                Value::Avg {
                    total: t1,
                    count: c1,
                },
                Value::Avg {
                    total: t2,
                    count: c2,
                },
            ) => {
                let total = t1.checked_add(*t2).ok_or(SemigroupError::Overflow("avg"))?;
                let count = c1.checked_add(*c2).ok_or(SemigroupError::Overflow("avg"))?;
                Ok(Value::Avg { total, count })
            }
            _ => Err(SemigroupError::TypeMismatch {
                expected: "avg",
                got: if matches!(a, Value::Avg { .. }) {
                    b.kind()
                } else {
                    a.kind()
                },
            }),
        }
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        let bad = || SemigroupError::BadValue {
            kind: "avg",
            text: text.to_string(),
        };
        let (t, c) = text.trim().split_once(',').ok_or_else(bad)?;
        Ok(Value::Avg {
            total: t.trim().parse().map_err(|_| bad())?,
            count: c.trim().parse().map_err(|_| bad())?,
        })
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        match v {
            Value::Avg { total, count } => Ok(format!("{total},{count}")),
            other => Err(SemigroupError::TypeMismatch {
                expected: "avg",
                got: other.kind(),
            }),
        }
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        Value::Avg {
            total: rng.next_i64(-SAMPLE_ABS, SAMPLE_ABS),
            count: rng.next_i64(1, 100),
        }
    }
}

/// Tropical numbers under min; the additive part of the min-plus semiring.
pub struct TropicalMin;
pub static TROPICAL_MIN: TropicalMin = TropicalMin;

impl Semigroup for TropicalMin {
    fn name(&self) -> &'static str {
        "tropical-min"
    }
    fn carrier(&self) -> &'static str {
        "integers with +inf under min"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        match (a, b) {
            (Value::Tropical(x), Value::Tropical(y)) => Ok(Value::Tropical((*x).min(*y))),
            _ => Err(SemigroupError::TypeMismatch {
                expected: "tropical",
                got: if matches!(a, Value::Tropical(_)) {
                    b.kind()
                } else {
                    a.kind()
                },
            }),
        }
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        let t = text.trim();
        if t == "inf" {
            return Ok(Value::Tropical(Tropical::Infinity));
        }
        t.parse::<i64>()
            .map(|v| Value::Tropical(Tropical::Finite(v)))
            .map_err(|_| SemigroupError::BadValue {
                kind: "tropical",
                text: text.to_string(),
            })
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        match v {
            Value::Tropical(t) => Ok(t.to_string()),
            other => Err(SemigroupError::TypeMismatch {
                expected: "tropical",
                got: other.kind(),
            }),
        }
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        if rng.next_below(8) == 0 {
            Value::Tropical(Tropical::Infinity)
        } else {
            Value::Tropical(Tropical::Finite(rng.next_i64(-SAMPLE_ABS, SAMPLE_ABS)))
        }
    }
}

/// Directed graphs under overlay (pairwise union).
pub struct GraphOverlay;
pub static GRAPH_OVERLAY: GraphOverlay = GraphOverlay;

impl Semigroup for GraphOverlay {
    fn name(&self) -> &'static str {
        "graph-overlay"
    }
    fn carrier(&self) -> &'static str {
        "directed graphs under overlay"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        match (a, b) {
            (Value::Graph(x), Value::Graph(y)) => Ok(Value::Graph(x.overlay(y))),
            _ => Err(SemigroupError::TypeMismatch {
                expected: "graph",
                got: if matches!(a, Value::Graph(_)) {
                    b.kind()
                } else {
                    a.kind()
                },
            }),
        }
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_graph(text).map(Value::Graph)
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        match v {
            Value::Graph(g) => Ok(g.to_string()),
            other => Err(SemigroupError::TypeMismatch {
                expected: "graph",
                got: other.kind(),
            }),
        }
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        let nv = rng.next_below(5) as u32;
        let mut g = DiGraph::empty();
        for _ in 0..nv {
            g = g.overlay(&DiGraph::vertex(rng.next_below(8) as u32));
        }
        let verts: Vec<u32> = g.vertices().iter().copied().collect();
        if !verts.is_empty() {
            for _ in 0..rng.next_below(5) {
                let u = verts[rng.next_usize(verts.len())];
                let v = verts[rng.next_usize(verts.len())];
                g = g.overlay(&DiGraph::from_parts([u, v], [(u, v)]));
            }
        }
        Value::Graph(g)
    }
}

/// The free commutative semigroup: multisets of variables under
/// multiplicity addition. The universal correctness oracle.
pub struct MultisetOracle;
pub static MULTISET: MultisetOracle = MultisetOracle;

impl Semigroup for MultisetOracle {
    fn name(&self) -> &'static str {
        "multiset"
    }
    fn carrier(&self) -> &'static str {
        "nonempty multisets of variables under multiplicity addition"
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_idempotent(&self) -> bool {
        false
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Multiset(a.as_multiset()?.merge(b.as_multiset()?)))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_multiset(text).map(Value::Multiset)
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        v.as_multiset().map(|m| m.to_string())
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        let len = 1 + rng.next_below(4);
        let mut entries = Vec::new();
        for _ in 0..len {
            entries.push((rng.next_below(16) as u32, 1 + rng.next_below(3)));
        }
        entries.sort_unstable_by_key(|&(v, _)| v);
        entries.dedup_by(|a, b| {
            if a.0 == b.0 {
                b.1 += a.1;
                true
            } else {
                false
            }
        });
        Value::Multiset(Multiset::from_entries(entries).unwrap())
    }
}

/// The free semigroup: words under concatenation. The order oracle.
pub struct WordOracle;
pub static WORD: WordOracle = WordOracle;

impl Semigroup for WordOracle {
    fn name(&self) -> &'static str {
        "word"
    }
    fn carrier(&self) -> &'static str {
        "nonempty words over the variables under concatenation"
    }
    fn is_commutative(&self) -> bool {
        false
    }
    fn is_idempotent(&self) -> bool {
        false
    }
    fn combine(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        Ok(Value::Word(a.as_word()?.concat(b.as_word()?)))
    }
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        parse_word(text).map(Value::Word)
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        v.as_word().map(|w| w.to_string())
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        let len = 1 + rng.next_below(4);
        let letters = (0..len).map(|_| rng.next_below(16) as u32).collect();
        Value::Word(Word::from_letters(letters).unwrap())
    }
}
