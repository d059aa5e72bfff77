//! The `semicirc v1` circuit text format.
//!
//! ```text
//! semicirc v1
//! inputs <n>
//! gates <g>
//! g<k>: <ref> <ref> ...     # k = 0..g-1 ascending; ref = x<j> | g<k'>, k' < k
//! outputs <m>
//! out <label> g<k>          # labels 0..m-1, each gate out-degree 0
//! ```
//!
//! UTF-8, LF line endings, `#` starts a comment. All indices 0-based.
//! Serialization is canonical: parsing and re-serializing a file reproduces
//! it byte for byte (modulo comments and blank lines).

use super::{Circuit, CircuitError, Ref};
use crate::matrix::meaningful_lines;
use std::fmt::Write as _;

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("semicirc v1\n");
        let _ = writeln!(out, "inputs {}", self.n_inputs());
        let _ = writeln!(out, "gates {}", self.gate_count());
        for (k, ops) in self.gates().enumerate() {
            let _ = write!(out, "g{k}:");
            for &r in ops {
                match r {
                    Ref::Input(j) => {
                        let _ = write!(out, " x{j}");
                    }
                    Ref::Gate(g) => {
                        let _ = write!(out, " g{g}");
                    }
                }
            }
            out.push('\n');
        }
        let _ = writeln!(out, "outputs {}", self.outputs().len());
        for &(label, gate) in self.outputs() {
            let _ = writeln!(out, "out {label} g{gate}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit, CircuitError> {
        let items: Vec<(usize, &str)> = meaningful_lines(text).collect();
        let mut cursor = 0usize;
        let mut last_line = 0usize;
        let mut next = |expect: &str| -> Result<(usize, &str), CircuitError> {
            match items.get(cursor) {
                Some(&(no, body)) => {
                    cursor += 1;
                    last_line = no;
                    Ok((no, body))
                }
                None => Err(CircuitError::Parse {
                    line: last_line + 1,
                    msg: format!("unexpected end of file, expected {expect}"),
                }),
            }
        };

        let (no, header) = next("header")?;
        if header != "semicirc v1" {
            return Err(CircuitError::Parse {
                line: no,
                msg: format!("expected `semicirc v1`, got `{header}`"),
            });
        }
        let (no, line) = next("`inputs <n>`")?;
        let n_inputs = parse_count(line, "inputs").ok_or_else(|| CircuitError::Parse {
            line: no,
            msg: format!("bad inputs line `{line}`"),
        })?;
        let (no, line) = next("`gates <g>`")?;
        let n_gates = parse_count(line, "gates").ok_or_else(|| CircuitError::Parse {
            line: no,
            msg: format!("bad gates line `{line}`"),
        })?;

        let mut gates: Vec<Vec<Ref>> = Vec::with_capacity(n_gates);
        for k in 0..n_gates {
            let (no, line) = next("a gate line")?;
            let (head, rest) = line.split_once(':').ok_or_else(|| CircuitError::Parse {
                line: no,
                msg: format!("bad gate line `{line}`"),
            })?;
            if head.trim() != format!("g{k}") {
                return Err(CircuitError::Parse {
                    line: no,
                    msg: format!("expected gate g{k}, got `{}`", head.trim()),
                });
            }
            let mut ops = Vec::new();
            for token in rest.split_whitespace() {
                let r = parse_ref(token).ok_or_else(|| CircuitError::Parse {
                    line: no,
                    msg: format!("bad operand `{token}`"),
                })?;
                let valid = match r {
                    Ref::Input(j) => (j as usize) < n_inputs,
                    Ref::Gate(g) => (g as usize) < k,
                };
                if !valid {
                    return Err(CircuitError::Parse {
                        line: no,
                        msg: format!(
                            "operand `{token}` references a later gate or is out of range"
                        ),
                    });
                }
                ops.push(r);
            }
            if ops.is_empty() {
                return Err(CircuitError::Parse {
                    line: no,
                    msg: format!("gate g{k} has no operands"),
                });
            }
            gates.push(ops);
        }

        let (no, line) = next("`outputs <m>`")?;
        let n_outputs = parse_count(line, "outputs").ok_or_else(|| CircuitError::Parse {
            line: no,
            msg: format!("bad outputs line `{line}`"),
        })?;
        let mut outputs = Vec::with_capacity(n_outputs);
        for _ in 0..n_outputs {
            let (no, line) = next("an `out <label> g<k>` line")?;
            let mut it = line.split_whitespace();
            let parsed = (|| {
                if it.next() != Some("out") {
                    return None;
                }
                let label: u32 = it.next()?.parse().ok()?;
                let gate = match parse_ref(it.next()?)? {
                    Ref::Gate(g) => g,
                    Ref::Input(_) => return None,
                };
                if it.next().is_some() {
                    return None;
                }
                Some((label, gate))
            })();
            let (label, gate) = parsed.ok_or_else(|| CircuitError::Parse {
                line: no,
                msg: format!("bad output line `{line}`"),
            })?;
            if (label as usize) >= n_outputs {
                return Err(CircuitError::Parse {
                    line: no,
                    msg: format!("output label {label} out of range 0..{n_outputs}"),
                });
            }
            if (gate as usize) >= n_gates {
                return Err(CircuitError::Parse {
                    line: no,
                    msg: format!("output references unknown gate g{gate}"),
                });
            }
            outputs.push((label, gate));
        }
        if let Ok((no, line)) = next("end of file") {
            return Err(CircuitError::Parse {
                line: no,
                msg: format!("trailing content `{line}`"),
            });
        }
        let final_line = items.last().map_or(0, |&(no, _)| no);
        Circuit::from_parts(n_inputs, gates, outputs).map_err(|e| match e {
            CircuitError::Parse { .. } => e,
            other => CircuitError::Parse {
                line: final_line,
                msg: other.to_string(),
            },
        })
    }
}

fn parse_count(line: &str, keyword: &str) -> Option<usize> {
    let mut it = line.split_whitespace();
    if it.next() != Some(keyword) {
        return None;
    }
    let n = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(n)
}

fn parse_ref(token: &str) -> Option<Ref> {
    if let Some(j) = token.strip_prefix('x') {
        return j.parse().ok().map(Ref::Input);
    }
    if let Some(k) = token.strip_prefix('g') {
        return k.parse().ok().map(Ref::Gate);
    }
    None
}
