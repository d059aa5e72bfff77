//! Command-line front end: synthesize, evaluate, verify, benchmark,
//! multiply, and build graph expressions.
//!
//! Exit codes: 0 on success, 1 on verification failure or malformed input,
//! 2 on usage errors. Diagnostics go to standard error.

use clap::{Parser, Subcommand, ValueEnum};
use semicirc::apps::{
    build_dense_graph_expr, eval_graph_expr, find_semiring, matmul_complement_sparse, DenseMatrix,
    GraphExpr,
};
use semicirc::rng::SplitMix64;
use semicirc::semigroup::{find, Value};
use semicirc::{synthesize, Circuit, Matrix01, SynthMode, SynthParams};
use std::error::Error;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "semicirc",
    version,
    about = "Linear-operator circuit synthesis over commutative semigroups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Det,
    Rand,
}

impl From<ModeArg> for SynthMode {
    fn from(m: ModeArg) -> SynthMode {
        match m {
            ModeArg::Det => SynthMode::Deterministic,
            ModeArg::Rand => SynthMode::Randomized,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchModeArg {
    Det,
    Rand,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize a circuit for a 0/1 matrix file.
    Synth {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "det")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append a virtual all-one column instead of rejecting all-zero rows.
        #[arg(long)]
        allow_empty_rows: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a circuit file over a named semigroup instance.
    Eval {
        #[arg(long)]
        circuit: PathBuf,
        /// One carrier value per line, count equal to the circuit's inputs.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        semigroup: String,
    },
    /// Check a circuit against a matrix with the multiset oracle.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Synthesize random instances and emit a CSV of size measurements.
    Bench {
        /// Matrix sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        zeros_per_row: usize,
        #[arg(long, value_enum, default_value = "both")]
        mode: BenchModeArg,
        /// Number of seeded instances per size and mode.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Multiply a 0/1 matrix by a dense semiring matrix.
    Matmul {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        dense: PathBuf,
        /// One of: int-ring, tropical, boolean.
        #[arg(long)]
        semiring: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an overlay/connect expression for a square dense adjacency.
    Graph {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a graph expression file and print its vertices and edges.
    GraphEval {
        #[arg(long)]
        expr: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("semicirc: {e}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, Box<dyn Error>> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn run(cmd: Cmd) -> Result<ExitCode, Box<dyn Error>> {
    match cmd {
        Cmd::Synth {
            matrix,
            mode,
            seed,
            allow_empty_rows,
            out,
        } => {
            let a = Matrix01::from_text(&read(&matrix)?)?;
            let params = SynthParams {
                mode: mode.into(),
                seed,
                allow_empty_rows,
                ..SynthParams::default()
            };
            let started = Instant::now();
            let (circuit, report) = synthesize(&a, &params)?;
            let elapsed = started.elapsed().as_secs_f64() * 1e3;
            let mut text = String::new();
            if report.virtual_column {
                text.push_str(
                    "# inputs include a trailing virtual all-one column; supply a neutral-like value for it\n",
                );
            }
            text.push_str(&circuit.to_text());
            fs::write(&out, text)?;
            eprintln!(
                "synth: {}x{} z={} mode={} wires={} gates={} heavy={} light={} short_total={} fallback={} retries={} virtual={} elapsed_ms={:.2}",
                a.m(),
                a.n(),
                a.z(),
                report.mode.name(),
                report.wires,
                report.gates,
                report.heavy_rows,
                report.light_rows,
                report.short_total,
                report.fallback_count,
                report.retries,
                report.virtual_column,
                elapsed
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval {
            circuit,
            input,
            semigroup,
        } => {
            let c = Circuit::from_text(&read(&circuit)?)?;
            let sg = find(&semigroup)?;
            let mut values: Vec<Value> = Vec::new();
            for (line, body) in meaningful_lines(&read(&input)?) {
                values.push(
                    sg.parse_value(body)
                        .map_err(|e| format!("input line {line}: {e}"))?,
                );
            }
            if values.len() != c.n_inputs() {
                return Err(format!(
                    "input file has {} values, circuit has {} inputs",
                    values.len(),
                    c.n_inputs()
                )
                .into());
            }
            let outs = c.evaluate(sg, &values)?;
            let mut stdout = std::io::stdout().lock();
            for (label, v) in outs {
                writeln!(stdout, "{label} {}", sg.format_value(&v)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { matrix, circuit } => {
            let a = Matrix01::from_text(&read(&matrix)?)?;
            let c = Circuit::from_text(&read(&circuit)?)?;
            match verify(&a, &c)? {
                None => {
                    eprintln!("verify: ok ({} rows, {} inputs)", a.m(), c.n_inputs());
                    Ok(ExitCode::SUCCESS)
                }
                Some((row, column, got, want)) => {
                    println!(
                        "mismatch row {row} column {column} multiplicity {got} (expected {want})"
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Bench {
            n,
            zeros_per_row,
            mode,
            seeds,
            csv,
        } => {
            bench(&n, zeros_per_row, mode, seeds, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Matmul {
            matrix,
            dense,
            semiring,
            out,
        } => {
            let a = Matrix01::from_text(&read(&matrix)?)?;
            let s = find_semiring(&semiring)?;
            let b = DenseMatrix::from_text(&read(&dense)?, s)?;
            let ab = matmul_complement_sparse(&a, &b, s, &SynthParams::default())?;
            fs::write(&out, ab.to_text(s)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Graph { matrix, out } => {
            let a = Matrix01::from_text(&read(&matrix)?)?;
            let (expr, report) = build_dense_graph_expr(&a, &SynthParams::default())?;
            fs::write(&out, expr.to_text())?;
            eprintln!(
                "graph: {} vertices, {} expression nodes, {} isolated rows",
                a.n(),
                report.node_count,
                report.isolated_rows.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::GraphEval { expr } => {
            let e = GraphExpr::from_text(&read(&expr)?)?;
            let g = eval_graph_expr(&e);
            let mut stdout = std::io::stdout().lock();
            let mut line = String::from("V:");
            for v in g.vertices() {
                let _ = write!(line, " {v}");
            }
            writeln!(stdout, "{line}")?;
            let mut line = String::from("E:");
            for (u, v) in g.edges() {
                let _ = write!(line, " {u}->{v}");
            }
            writeln!(stdout, "{line}")?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// `(row, column, got multiplicity, wanted multiplicity)`.
type Mismatch = (usize, usize, u64, u64);

/// Multiset-oracle check. `None` means every row's output equals its
/// support with multiplicity one; otherwise the first offending mismatch
/// is returned. A circuit with one extra input is understood to carry the
/// virtual all-one column.
fn verify(a: &Matrix01, c: &Circuit) -> Result<Option<Mismatch>, Box<dyn Error>> {
    let virtual_column = c.n_inputs() == a.n() + 1;
    if c.n_inputs() != a.n() && !virtual_column {
        return Err(format!(
            "circuit has {} inputs, matrix has {} columns",
            c.n_inputs(),
            a.n()
        )
        .into());
    }
    let outs = c.output_multisets()?;
    if outs.len() != a.m() || outs.iter().enumerate().any(|(i, &(l, _))| l as usize != i) {
        return Err(format!("circuit outputs are not labeled 0..{}", a.m()).into());
    }
    for (label, ms) in outs {
        let row = label as usize;
        for j in 0..c.n_inputs() {
            let want = if j == a.n() {
                // the virtual column is read by every row
                1
            } else {
                u64::from(a.is_one(row, j))
            };
            let got = ms.multiplicity(j as u32);
            if got != want {
                return Ok(Some((row, j, got, want)));
            }
        }
    }
    Ok(None)
}

/// One random n x n instance with exactly `zeros_per_row` distinct zeros
/// per row, derived deterministically from `(n, seed)`.
fn bench_matrix(n: usize, zeros_per_row: usize, seed: u64) -> Matrix01 {
    let mut rng = SplitMix64::new(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut zeros = Vec::with_capacity(n * zeros_per_row);
    let mut cols: Vec<u32> = (0..n as u32).collect();
    for i in 0..n {
        // partial Fisher-Yates: the first k entries become row i's zeros
        for t in 0..zeros_per_row {
            let j = t + rng.next_usize(n - t);
            cols.swap(t, j);
        }
        zeros.extend(cols[..zeros_per_row].iter().map(|&c| (i, c as usize)));
    }
    Matrix01::from_zeros(n, n, zeros).expect("generated zeros are in bounds and distinct")
}

fn bench(
    ns: &[usize],
    zeros_per_row: usize,
    mode: BenchModeArg,
    seeds: u64,
    csv: &Path,
) -> Result<(), Box<dyn Error>> {
    let modes: &[SynthMode] = match mode {
        BenchModeArg::Det => &[SynthMode::Deterministic],
        BenchModeArg::Rand => &[SynthMode::Randomized],
        BenchModeArg::Both => &[SynthMode::Deterministic, SynthMode::Randomized],
    };
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    for &n in &ns {
        if zeros_per_row >= n {
            return Err(format!(
                "zeros-per-row {zeros_per_row} would empty the rows of a {n}-column matrix"
            )
            .into());
        }
    }
    let write_header = !csv.exists() || fs::metadata(csv)?.len() == 0;
    let mut file = fs::OpenOptions::new().create(true).append(true).open(csv)?;
    if write_header {
        writeln!(
            file,
            "n,m,z,mode,wires,gates,short_total,fallback_count,retries,build_millis"
        )?;
    }
    for &n in &ns {
        for seed in 0..seeds {
            let a = bench_matrix(n, zeros_per_row, seed);
            for &m in modes {
                let params = SynthParams {
                    mode: m,
                    seed,
                    ..SynthParams::default()
                };
                let started = Instant::now();
                let (_, report) = synthesize(&a, &params)?;
                let millis = started.elapsed().as_secs_f64() * 1e3;
                writeln!(
                    file,
                    "{},{},{},{},{},{},{},{},{},{:.3}",
                    n,
                    a.m(),
                    a.z(),
                    report.mode.name(),
                    report.wires,
                    report.gates,
                    report.short_total,
                    report.fallback_count,
                    report.retries,
                    millis
                )?;
            }
        }
    }
    Ok(())
}

/// Non-blank lines with `#` comments stripped, 1-based numbering.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if body.is_empty() {
            None
        } else {
            Some((idx + 1, body))
        }
    })
}
