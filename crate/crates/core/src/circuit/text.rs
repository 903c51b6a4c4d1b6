// Copyright 2026 The qsprep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Line-oriented text serialization of circuits.
//!
//! The first line describes the layout, every following line one gate:
//!
//! ```text
//! QUBITS <total> MEM <n> U0 <0|1> WORK <w>
//! X <t>
//! CX <c> <t>
//! U1Q <t> <8 floats> [label]
//! CU <c> <t> <8 floats> [label]
//! MCU <k> <c1> ... <ck> <t> <8 floats> [label]
//! RPTOF <c1> <c2> <t> inv<0|1>
//! ```
//!
//! Matrices are row major, each entry as `re im`. Floats are written with 17
//! significant digits so `parse_text(emit_text(c))` reproduces the circuit
//! exactly, including re-emitted text.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{Circuit, CircuitError, Gate, Matrix2, QubitLayout};

fn push_f64(out: &mut String, v: f64) {
    // 1 leading + 16 fractional significant digits round-trips every f64.
    let _ = write!(out, " {v:.16e}");
}

fn push_matrix(out: &mut String, m: &Matrix2) {
    for row in 0..2 {
        for col in 0..2 {
            let e = m.entry(row, col);
            push_f64(out, e.re);
            push_f64(out, e.im);
        }
    }
}

impl Circuit {
    /// Serializes the circuit to the text format above.
    pub fn emit_text(&self) -> String {
        let l = self.layout();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "QUBITS {} MEM {} U0 {} WORK {}",
            l.total_qubits(),
            l.n_memory(),
            u8::from(l.has_u0()),
            l.n_work()
        );
        for gate in self.gates() {
            match gate {
                Gate::X { target } => {
                    let _ = writeln!(out, "X {target}");
                }
                Gate::Cx { control, target } => {
                    let _ = writeln!(out, "CX {control} {target}");
                }
                Gate::U1q { target, matrix, label } => {
                    let _ = write!(out, "U1Q {target}");
                    push_matrix(&mut out, matrix);
                    if let Some(label) = label {
                        let _ = write!(out, " {label}");
                    }
                    out.push('\n');
                }
                Gate::Cu { control, target, matrix, label } => {
                    let _ = write!(out, "CU {control} {target}");
                    push_matrix(&mut out, matrix);
                    if let Some(label) = label {
                        let _ = write!(out, " {label}");
                    }
                    out.push('\n');
                }
                Gate::Mcu { controls, target, matrix, label } => {
                    let _ = write!(out, "MCU {}", controls.len());
                    for c in controls {
                        let _ = write!(out, " {c}");
                    }
                    let _ = write!(out, " {target}");
                    push_matrix(&mut out, matrix);
                    if let Some(label) = label {
                        let _ = write!(out, " {label}");
                    }
                    out.push('\n');
                }
                Gate::RpToffoli { c1, c2, target, inverse } => {
                    let _ = writeln!(out, "RPTOF {c1} {c2} {target} inv{}", u8::from(*inverse));
                }
            }
        }
        out
    }

    /// Parses the text format; the inverse of [`Circuit::emit_text`].
    pub fn parse_text(src: &str) -> Result<Circuit, CircuitError> {
        let mut lines = src.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty input, expected QUBITS header"))?;
        let layout = parse_header(line_no + 1, header)?;
        let mut circuit = Circuit::new(layout);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let gate = parse_gate_line(line_no, line)?;
            circuit
                .append(gate)
                .map_err(|e| parse_err(line_no, &e.to_string()))?;
        }
        Ok(circuit)
    }
}

fn parse_err(line: usize, reason: &str) -> CircuitError {
    CircuitError::Parse { line, reason: reason.to_owned() }
}

fn parse_header(line_no: usize, line: &str) -> Result<QubitLayout, CircuitError> {
    let tok: Vec<&str> = line.split_whitespace().collect();
    if tok.len() != 8 || tok[0] != "QUBITS" || tok[2] != "MEM" || tok[4] != "U0" || tok[6] != "WORK"
    {
        return Err(parse_err(line_no, "expected `QUBITS <n> MEM <n> U0 <0|1> WORK <n>`"));
    }
    let total: usize = parse_num(line_no, tok[1], "qubit count")?;
    let mem: usize = parse_num(line_no, tok[3], "memory count")?;
    let u0: u8 = parse_num(line_no, tok[5], "U0 flag")?;
    let work: usize = parse_num(line_no, tok[7], "work count")?;
    if u0 > 1 {
        return Err(parse_err(line_no, "U0 flag must be 0 or 1"));
    }
    let layout = QubitLayout::new(mem, u0 == 1, work);
    if layout.total_qubits() != total {
        return Err(parse_err(
            line_no,
            &format!(
                "header claims {total} qubits but MEM/U0/WORK imply {}",
                layout.total_qubits()
            ),
        ));
    }
    Ok(layout)
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, CircuitError> {
    tok.parse().map_err(|_| parse_err(line, &format!("invalid {what}: {tok:?}")))
}

fn parse_matrix(line: usize, tok: &[&str]) -> Result<Matrix2, CircuitError> {
    debug_assert_eq!(tok.len(), 8);
    let mut vals = [0.0f64; 8];
    for (i, t) in tok.iter().enumerate() {
        vals[i] = parse_num(line, t, "matrix entry")?;
    }
    Ok(Matrix2::new([
        [Complex64::new(vals[0], vals[1]), Complex64::new(vals[2], vals[3])],
        [Complex64::new(vals[4], vals[5]), Complex64::new(vals[6], vals[7])],
    ]))
}

/// Splits `tok` into an 8-float matrix plus at most one trailing label token.
fn matrix_and_label(
    line: usize,
    tok: &[&str],
) -> Result<(Matrix2, Option<String>), CircuitError> {
    match tok.len() {
        8 => Ok((parse_matrix(line, tok)?, None)),
        9 => Ok((parse_matrix(line, &tok[..8])?, Some(tok[8].to_owned()))),
        n => Err(parse_err(line, &format!("expected 8 matrix entries, found {n} tokens"))),
    }
}

fn parse_gate_line(line_no: usize, line: &str) -> Result<Gate, CircuitError> {
    let tok: Vec<&str> = line.split_whitespace().collect();
    match tok[0] {
        "X" if tok.len() == 2 => {
            Ok(Gate::X { target: parse_num(line_no, tok[1], "target")? })
        }
        "CX" if tok.len() == 3 => Ok(Gate::Cx {
            control: parse_num(line_no, tok[1], "control")?,
            target: parse_num(line_no, tok[2], "target")?,
        }),
        "U1Q" if tok.len() >= 2 => {
            let target = parse_num(line_no, tok[1], "target")?;
            let (matrix, label) = matrix_and_label(line_no, &tok[2..])?;
            Ok(Gate::U1q { target, matrix, label })
        }
        "CU" if tok.len() >= 3 => {
            let control = parse_num(line_no, tok[1], "control")?;
            let target = parse_num(line_no, tok[2], "target")?;
            let (matrix, label) = matrix_and_label(line_no, &tok[3..])?;
            Ok(Gate::Cu { control, target, matrix, label })
        }
        "MCU" if tok.len() >= 2 => {
            let k: usize = parse_num(line_no, tok[1], "control count")?;
            if tok.len() < 3 + k {
                return Err(parse_err(line_no, "MCU line shorter than its control count"));
            }
            let mut controls = Vec::with_capacity(k);
            for t in &tok[2..2 + k] {
                controls.push(parse_num(line_no, t, "control")?);
            }
            let target = parse_num(line_no, tok[2 + k], "target")?;
            let (matrix, label) = matrix_and_label(line_no, &tok[3 + k..])?;
            Ok(Gate::Mcu { controls, target, matrix, label })
        }
        "RPTOF" if tok.len() == 5 => {
            let inverse = match tok[4] {
                "inv0" => false,
                "inv1" => true,
                other => {
                    return Err(parse_err(line_no, &format!("expected inv0 or inv1, got {other:?}")))
                }
            };
            Ok(Gate::RpToffoli {
                c1: parse_num(line_no, tok[1], "control")?,
                c2: parse_num(line_no, tok[2], "control")?,
                target: parse_num(line_no, tok[3], "target")?,
                inverse,
            })
        }
        other => Err(parse_err(line_no, &format!("unknown or malformed gate line: {other:?}"))),
    }
}
