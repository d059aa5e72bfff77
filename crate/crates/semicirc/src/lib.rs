//! Circuit synthesis for linear operators over commutative semigroups.
//!
//! Given a 0/1 matrix `A` described by its zero positions, this crate emits
//! an explicit computation DAG whose size is proportional to the number of
//! zeros (plus the dimensions), evaluating `Ax` over any commutative
//! semigroup. Dense matrices (complements of sparse ones) are the target:
//! the naive row-by-row circuit costs one wire per one-entry, while the
//! synthesized circuit costs a constant per zero.
//!
//! The pieces:
//!
//! * [`semigroup`]: evaluation contract and the named instance catalog,
//!   including the free multiset and word oracles used for verification.
//! * [`circuit`]: the DAG representation: ordered-fan-in gates, evaluation,
//!   binary conversion, path counting, wire reversal, text serialization.
//! * [`range`]: reusable range-query gate pools: prefix/suffix chains,
//!   midpoint decomposition, block decomposition, and the all-ranges window.
//! * [`synth`]: the synthesizer: row splitting by zero count, column
//!   permutation (seeded random or greedy deterministic), and the transpose
//!   construction for zero-heavy rows.
//! * [`apps`]: applications: semiring matrix multiplication with a
//!   complement-of-sparse left factor, and overlay/connect graph expressions
//!   for dense graphs.
//!
//! ```
//! use semicirc::semigroup::{find, Value};
//! use semicirc::{synthesize, Matrix01, SynthParams};
//!
//! // 3x4 matrix given by its zeros; row 1 reads every column but 2
//! let a = Matrix01::from_zeros(3, 4, [(0, 0), (1, 2), (2, 3)])?;
//! let (circuit, report) = synthesize(&a, &SynthParams::default())?;
//! assert_eq!(report.wires, circuit.wires());
//!
//! let int_sum = find("int-sum")?;
//! let xs: Vec<Value> = [10, 20, 30, 40].map(Value::Int).into();
//! let outs = circuit.evaluate(int_sum, &xs)?;
//! assert_eq!(outs[1], (1, Value::Int(10 + 20 + 40)));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod apps;
pub mod circuit;
pub mod matrix;
pub mod range;
pub mod rng;
pub mod semigroup;
pub mod synth;
pub mod util;

pub use circuit::{Circuit, CircuitBuilder, CircuitError, Ref};
pub use matrix::{Matrix01, MatrixError};
pub use semigroup::{Semigroup, SemigroupError, Value};
pub use synth::{synthesize, SynthError, SynthMode, SynthParams, SynthReport};
