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

//! OpenQASM 2.0 export for fully lowered circuits.
//!
//! Only two primitives are emitted: `cx` and the generic three-parameter
//! rotation `u3(theta,phi,lambda)`. `u3` cannot express a global phase, so the
//! exported program reproduces the source circuit's state up to one overall
//! phase factor.

use std::fmt::Write as _;

use super::{Circuit, CircuitError, Gate, Matrix2};

/// Phases below this magnitude are treated as structural zeros when reading
/// rotation angles off a matrix.
const ANGLE_EPS: f64 = 1e-12;

/// Euler angles `(theta, phi, lambda)` with `M = e^{i alpha} u3(theta, phi, lambda)`
/// for some discarded global phase `alpha`; `M` must be unitary.
pub(crate) fn u3_angles(m: &Matrix2) -> (f64, f64, f64) {
    let m00 = m.entry(0, 0);
    let m01 = m.entry(0, 1);
    let m10 = m.entry(1, 0);
    let m11 = m.entry(1, 1);
    let theta = 2.0 * m10.norm().atan2(m00.norm());
    if m10.norm() <= ANGLE_EPS {
        // diagonal: u3(0, phi, 0) = diag(1, e^{i phi}) up to phase
        (0.0, m11.arg() - m00.arg(), 0.0)
    } else if m00.norm() <= ANGLE_EPS {
        // anti-diagonal: u3(pi, phi, lambda) = [[0, -e^{i lambda}], [e^{i phi}, 0]]
        (std::f64::consts::PI, m10.arg(), (-m01).arg())
    } else {
        let alpha = m00.arg();
        (theta, m10.arg() - alpha, (-m01).arg() - alpha)
    }
}

impl Circuit {
    /// Emits OpenQASM 2.0. Fails with [`CircuitError::NotLowered`] if any gate
    /// other than X, CX, or a single-qubit unitary remains.
    pub fn emit_qasm2(&self) -> Result<String, CircuitError> {
        if let Some(gate) = self.gates().iter().find(|g| !g.is_lowered()) {
            return Err(CircuitError::NotLowered { gate: gate.name() });
        }
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\n");
        out.push_str("include \"qelib1.inc\";\n");
        let _ = writeln!(out, "qreg q[{}];", self.layout().total_qubits());
        for gate in self.gates() {
            match gate {
                Gate::X { target } => {
                    let pi = std::f64::consts::PI;
                    let _ = writeln!(out, "u3({pi:.16e},{:.16e},{pi:.16e}) q[{target}];", 0.0);
                }
                Gate::Cx { control, target } => {
                    let _ = writeln!(out, "cx q[{control}],q[{target}];");
                }
                Gate::U1q { target, matrix, .. } => {
                    let (theta, phi, lambda) = u3_angles(matrix);
                    let _ =
                        writeln!(out, "u3({theta:.16e},{phi:.16e},{lambda:.16e}) q[{target}];");
                }
                _ => unreachable!("checked by is_lowered"),
            }
        }
        Ok(out)
    }
}
