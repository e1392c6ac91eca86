//! OpenQASM 2.0 text for the `{u3, cz, cx, measure}` subset.
//!
//! Emitted layout, one statement per line:
//!
//! ```text
//! OPENQASM 2.0;
//! include "qelib1.inc";
//! qreg q[4];
//! creg c[4];
//! u3(pi/2,pi/2,-pi/2) q[0];
//! cx q[0],q[1];
//! cz q[0],q[1];
//! measure q[0] -> c[0];
//! ```
//!
//! Angles that are exactly `n·π/d` for `d ∈ {1, 2, 4}` are written
//! symbolically (`pi`, `-pi/2`, `3*pi/4`); anything else is written with 17
//! significant digits, which reads back to the same `f64`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, Gate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QasmError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, name: String },

    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

const HEADER: [&str; 4] = [
    "OPENQASM 2.0;",
    "include \"qelib1.inc\";",
    "qreg q[4];",
    "creg c[4];",
];

const DENOMINATORS: [i64; 3] = [1, 2, 4];
const MAX_NUMERATOR: i64 = 8;

fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    for d in DENOMINATORS {
        let n = (x * d as f64 / PI).round();
        if n == 0.0 || n.abs() > MAX_NUMERATOR as f64 || n as i64 % d == 0 && d > 1 {
            continue;
        }
        if symbolic_value(n as i64, d) == x {
            let sign = if n < 0.0 { "-" } else { "" };
            let num = match n.abs() as i64 {
                1 => "pi".to_string(),
                k => format!("{k}*pi"),
            };
            return if d == 1 { format!("{sign}{num}") } else { format!("{sign}{num}/{d}") };
        }
    }
    format!("{x:.16e}")
}

/// The value a symbolic angle `n·pi/d` parses to.
fn symbolic_value(n: i64, d: i64) -> f64 {
    let magnitude = n.unsigned_abs() as f64 * PI / d as f64;
    if n < 0 {
        -magnitude
    } else {
        magnitude
    }
}

fn parse_angle(text: &str) -> Option<f64> {
    let t = text.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    if body.contains("pi") {
        let (num_part, den) = match body.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim().parse::<i64>().ok()?),
            None => (body, 1),
        };
        let n = match num_part {
            "pi" => 1,
            other => other.strip_suffix("*pi")?.trim().parse::<i64>().ok()?,
        };
        if den <= 0 {
            return None;
        }
        return Some(symbolic_value(if negative { -n } else { n }, den));
    }
    let v: f64 = body.parse().ok()?;
    v.is_finite().then_some(if negative { -v } else { v })
}

/// Renders the circuit in the fixed line format.
pub fn export_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    for line in HEADER {
        out.push_str(line);
        out.push('\n');
    }
    for g in c.gates() {
        match *g {
            Gate::U3 {
                theta,
                phi,
                lambda,
                target,
            } => writeln!(
                out,
                "u3({},{},{}) q[{target}];",
                format_angle(theta),
                format_angle(phi),
                format_angle(lambda)
            ),
            Gate::Cz(a, b) => writeln!(out, "cz q[{a}],q[{b}];"),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Measure { qubit, clbit } => writeln!(out, "measure q[{qubit}] -> c[{clbit}];"),
        }
        .expect("writing to a String");
    }
    out
}

fn parse_register(text: &str, name: char, line: usize) -> Result<usize, QasmError> {
    let err = || QasmError::Syntax {
        line,
        message: format!("expected {name}[<index>], found `{}`", text.trim()),
    };
    let t = text.trim();
    let inner = t
        .strip_prefix(name)
        .and_then(|r| r.trim_start().strip_prefix('['))
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(err)?;
    inner.trim().parse().map_err(|_| err())
}

/// Parses the subset written by [`export_qasm`]. Blank lines and `//`
/// comments are skipped; the four header statements must come first.
pub fn import_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut statements = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split("//").next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    for expected in HEADER {
        match statements.next() {
            Some((_, l)) if normalize(l) == normalize(expected) => {}
            Some((line, l)) => {
                return Err(QasmError::Syntax {
                    line,
                    message: format!("expected `{expected}`, found `{l}`"),
                })
            }
            None => {
                return Err(QasmError::Syntax {
                    line: text.lines().count().max(1),
                    message: format!("expected `{expected}`, found end of input"),
                })
            }
        }
    }

    let mut gates = Vec::new();
    let mut last_line = 0;
    for (line, stmt) in statements {
        last_line = line;
        let body = stmt.strip_suffix(';').ok_or_else(|| QasmError::Syntax {
            line,
            message: "missing `;`".into(),
        })?;
        let name_end = body.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(body.len());
        let (name, rest) = body.split_at(name_end);
        let gate = match name {
            "u3" => {
                let rest = rest.trim_start();
                let close = rest.find(')').ok_or_else(|| QasmError::Syntax {
                    line,
                    message: "u3 needs `(theta,phi,lambda)`".into(),
                })?;
                let args = rest[..close].strip_prefix('(').ok_or_else(|| QasmError::Syntax {
                    line,
                    message: "u3 needs `(theta,phi,lambda)`".into(),
                })?;
                let angles: Vec<f64> = args
                    .split(',')
                    .map(|a| {
                        parse_angle(a).ok_or_else(|| QasmError::Syntax {
                            line,
                            message: format!("bad angle `{}`", a.trim()),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                if angles.len() != 3 {
                    return Err(QasmError::Syntax {
                        line,
                        message: format!("u3 takes 3 angles, found {}", angles.len()),
                    });
                }
                let target = parse_register(&rest[close + 1..], 'q', line)?;
                Gate::u3(angles[0], angles[1], angles[2], target)
            }
            "cz" | "cx" => {
                let (a, b) = rest.split_once(',').ok_or_else(|| QasmError::Syntax {
                    line,
                    message: format!("{name} takes two qubits"),
                })?;
                let (a, b) = (parse_register(a, 'q', line)?, parse_register(b, 'q', line)?);
                if name == "cz" {
                    Gate::Cz(a, b)
                } else {
                    Gate::cnot(a, b)
                }
            }
            "measure" => {
                let (q, c) = rest.split_once("->").ok_or_else(|| QasmError::Syntax {
                    line,
                    message: "measure needs `q[i] -> c[j]`".into(),
                })?;
                Gate::Measure {
                    qubit: parse_register(q, 'q', line)?,
                    clbit: parse_register(c, 'c', line)?,
                }
            }
            "" => {
                return Err(QasmError::Syntax {
                    line,
                    message: format!("unexpected `{stmt}`"),
                })
            }
            other => {
                return Err(QasmError::UnsupportedGate {
                    line,
                    name: other.to_string(),
                })
            }
        };
        gates.push(gate);
    }
    Circuit::new(gates).map_err(|e| QasmError::Invalid {
        line: last_line,
        message: e.to_string(),
    })
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
