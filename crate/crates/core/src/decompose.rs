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

//! Lowering of controlled rotations to CNOTs and single-qubit gates.
//!
//! A controlled special unitary splits into two CNOTs and three single-qubit
//! gates. A rotation with t >= 2 controls goes through a ladder of
//! relative-phase Toffolis that fold the controls pairwise into work qubits;
//! the ladder is uncomputed with exact adjoints after the central controlled
//! rotation, which cancels the relative phases because they are diagonal
//! where the central gate is diagonal. The ladder costs 6t-4 CNOTs around a
//! controlled rotation and 6t-5 around a plain X.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{Circuit, CircuitError, Gate, Matrix2};
use crate::tol::SPECIAL_DET_TOL;

/// Entrywise tolerance for recognizing a plain X matrix, which lowers to a
/// bare CNOT instead of the special-unitary split.
const X_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LoweringError {
    #[error("lowering a {controls}-controlled rotation needs {needed} work qubits, {available} available")]
    InsufficientAncillas { controls: usize, needed: usize, available: usize },
    #[error("work qubit {qubit} is also an operand of the gate being lowered")]
    OperandClash { qubit: usize },
    #[error("matrix determinant is {defect:.3e} away from 1; only special unitaries and X lower")]
    NonSpecialUnitary { defect: f64 },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Work qubits and output size needed to lower a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoweringPlan {
    /// Work qubits any single gate of the circuit needs at once.
    pub work_needed: usize,
    /// Upper bound on the lowered gate count.
    pub gate_bound: usize,
}

impl LoweringPlan {
    pub fn for_circuit(c: &Circuit) -> Self {
        let mut work_needed = 0usize;
        let mut gate_bound = 0usize;
        for g in c.gates() {
            match g {
                Gate::X { .. } | Gate::Cx { .. } | Gate::U1q { .. } => gate_bound += 1,
                Gate::Cu { .. } => gate_bound += 5,
                Gate::RpToffoli { .. } => gate_bound += 8,
                Gate::Mcu { controls, .. } => {
                    let t = controls.len();
                    work_needed = work_needed.max(t.saturating_sub(1));
                    // 2(t-1) Toffolis of 8 gates each around a 5-gate center
                    gate_bound += 16 * t.saturating_sub(1) + 5;
                }
            }
        }
        Self { work_needed, gate_bound }
    }
}

/// Splits a controlled unitary into `[C, CX, B, CX, A]` single-qubit gates
/// around two CNOTs, with `A B C = I` and `A X B X C = U`. The matrix must be
/// special unitary within [`SPECIAL_DET_TOL`]; a plain X lowers to one CNOT.
/// The label, if any, is carried onto the single-qubit pieces.
pub fn lower_cu(
    control: usize,
    target: usize,
    matrix: &Matrix2,
    label: Option<&str>,
) -> Result<Vec<Gate>, LoweringError> {
    if matrix.is_x(X_TOL) {
        return Ok(vec![Gate::Cx { control, target }]);
    }
    let det = matrix.det();
    let defect = (det - num_complex::Complex64::new(1.0, 0.0)).norm();
    if defect > SPECIAL_DET_TOL {
        return Err(LoweringError::NonSpecialUnitary { defect });
    }
    // Scrub the residual determinant phase before extracting angles.
    let scale = det.sqrt().inv();
    let m00 = matrix.entry(0, 0) * scale;
    let m10 = matrix.entry(1, 0) * scale;

    // U = Rz(alpha) Ry(theta) Rz(beta)
    let theta = 2.0 * m10.norm().atan2(m00.norm());
    let (alpha, beta) = if m10.norm() <= 1e-12 {
        (-2.0 * m00.arg(), 0.0)
    } else if m00.norm() <= 1e-12 {
        (2.0 * m10.arg(), 0.0)
    } else {
        (m10.arg() - m00.arg(), -m00.arg() - m10.arg())
    };

    let a = Matrix2::rz(alpha).mul(&Matrix2::ry(theta / 2.0));
    let b = Matrix2::ry(-theta / 2.0).mul(&Matrix2::rz(-(alpha + beta) / 2.0));
    let c = Matrix2::rz((beta - alpha) / 2.0);
    let lbl = |m: Matrix2| Gate::U1q { target, matrix: m, label: label.map(str::to_owned) };
    Ok(vec![
        lbl(c),
        Gate::Cx { control, target },
        lbl(b),
        Gate::Cx { control, target },
        lbl(a),
    ])
}

/// Expands a relative-phase Toffoli into 3 CNOTs and 5 single-qubit gates.
///
/// The forward gate acts as the identity when `c1` is 0, as `i Z` on the
/// target when `(c1, c2)` is `(1, 0)`, and as `i X` when both controls are 1.
/// The inverse expansion is the literal gate-by-gate adjoint, so a
/// forward/inverse pair cancels exactly.
pub fn lower_rptoffoli(c1: usize, c2: usize, target: usize, inverse: bool) -> Vec<Gate> {
    let ry = |angle: f64| Gate::U1q { target, matrix: Matrix2::ry(angle), label: None };
    if inverse {
        vec![
            ry(FRAC_PI_4),
            Gate::Cx { control: c2, target },
            ry(FRAC_PI_4),
            Gate::Cx { control: c1, target },
            ry(-FRAC_PI_4),
            Gate::Cx { control: c2, target },
            ry(-FRAC_PI_4),
            Gate::U1q { target: c1, matrix: Matrix2::s().adjoint(), label: None },
        ]
    } else {
        vec![
            Gate::U1q { target: c1, matrix: Matrix2::s(), label: None },
            ry(FRAC_PI_4),
            Gate::Cx { control: c2, target },
            ry(FRAC_PI_4),
            Gate::Cx { control: c1, target },
            ry(-FRAC_PI_4),
            Gate::Cx { control: c2, target },
            ry(-FRAC_PI_4),
        ]
    }
}

/// Lowers a multi-controlled rotation to CNOTs, relative-phase Toffolis, and
/// one controlled rotation (or a bare CNOT when the matrix is X). The result
/// still contains `RpToffoli` and `Cu` gates; [`lower_circuit`] expands them.
///
/// `work` supplies the scratch qubits for the control ladder. They must be
/// disjoint from the gate operands and at least `t - 1` of them must exist.
pub fn lower_mcu(
    controls: &[usize],
    target: usize,
    matrix: &Matrix2,
    label: Option<&str>,
    work: &[usize],
) -> Result<Vec<Gate>, LoweringError> {
    let t = controls.len();
    assert!(t >= 1, "multi-controlled gate with no controls");
    if t == 1 {
        return lower_cu(controls[0], target, matrix, label);
    }
    let needed = t - 1;
    if work.len() < needed {
        return Err(LoweringError::InsufficientAncillas {
            controls: t,
            needed,
            available: work.len(),
        });
    }
    let work = &work[..needed];
    for &w in work {
        if controls.contains(&w) || w == target {
            return Err(LoweringError::OperandClash { qubit: w });
        }
    }

    // Fold controls pairwise into the work ladder.
    let mut compute = Vec::with_capacity(needed);
    compute.push(Gate::RpToffoli { c1: controls[0], c2: controls[1], target: work[0], inverse: false });
    for i in 2..t {
        compute.push(Gate::RpToffoli {
            c1: work[i - 2],
            c2: controls[i],
            target: work[i - 1],
            inverse: false,
        });
    }

    let head = work[needed - 1];
    let central = if matrix.is_x(X_TOL) {
        Gate::Cx { control: head, target }
    } else {
        Gate::Cu { control: head, target, matrix: *matrix, label: label.map(str::to_owned) }
    };

    let mut gates = compute.clone();
    gates.push(central);
    // Uncompute with exact adjoints in reverse order; the relative phases
    // cancel because each is diagonal on the qubits the central gate reads.
    for g in compute.into_iter().rev() {
        let Gate::RpToffoli { c1, c2, target, .. } = g else { unreachable!() };
        gates.push(Gate::RpToffoli { c1, c2, target, inverse: true });
    }
    Ok(gates)
}

/// Lowers every gate of `c` to X, CNOT, and single-qubit unitaries, using the
/// layout's work qubits for control ladders. Already-lowered gates pass
/// through unchanged, so the map is idempotent.
pub fn lower_circuit(c: &Circuit) -> Result<Circuit, LoweringError> {
    let mut out = Circuit::new(*c.layout());
    let work_pool: Vec<usize> = c.layout().work_qubits().collect();
    for gate in c.gates() {
        match gate {
            Gate::X { .. } | Gate::Cx { .. } | Gate::U1q { .. } => {
                out.append(gate.clone())?;
            }
            Gate::Cu { control, target, matrix, label } => {
                for g in lower_cu(*control, *target, matrix, label.as_deref())? {
                    out.append(g)?;
                }
            }
            Gate::RpToffoli { c1, c2, target, inverse } => {
                for g in lower_rptoffoli(*c1, *c2, *target, *inverse) {
                    out.append(g)?;
                }
            }
            Gate::Mcu { controls, target, matrix, label } => {
                let work: Vec<usize> = work_pool
                    .iter()
                    .copied()
                    .filter(|w| !controls.contains(w) && w != target)
                    .collect();
                for mid in lower_mcu(controls, *target, matrix, label.as_deref(), &work)? {
                    match mid {
                        Gate::RpToffoli { c1, c2, target, inverse } => {
                            for g in lower_rptoffoli(c1, c2, target, inverse) {
                                out.append(g)?;
                            }
                        }
                        Gate::Cu { control, target, matrix, label } => {
                            for g in lower_cu(control, target, &matrix, label.as_deref())? {
                                out.append(g)?;
                            }
                        }
                        other => out.append(other)?,
                    }
                }
            }
        }
    }
    Ok(out)
}
