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

//! Circuit intermediate representation.
//!
//! A [`Circuit`] is a validated gate list over a fixed [`QubitLayout`]. The
//! register order is the contract every other module relies on: qubit 0 is the
//! rotation ancilla, qubit 1 is the flag ancilla when present, the next
//! `n_memory` qubits hold the address bits (pattern bit 0 on the lowest memory
//! qubit), and the remaining qubits are work ancillas for gate lowering.
//! Basis indices put qubit 0 in the most significant bit.

mod matrix;
mod qasm;
mod text;

pub use matrix::Matrix2;

use std::fmt;
use std::ops::Range;

use crate::tol::UNITARITY_TOL;

/// Register shape of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitLayout {
    n_memory: usize,
    has_u0: bool,
    n_work: usize,
}

impl QubitLayout {
    pub fn new(n_memory: usize, has_u0: bool, n_work: usize) -> Self {
        Self { n_memory, has_u0, n_work }
    }

    pub fn n_memory(&self) -> usize {
        self.n_memory
    }

    pub fn has_u0(&self) -> bool {
        self.has_u0
    }

    pub fn n_work(&self) -> usize {
        self.n_work
    }

    pub fn total_qubits(&self) -> usize {
        1 + usize::from(self.has_u0) + self.n_memory + self.n_work
    }

    /// The ancilla the amplitude rotations act on; always qubit 0.
    pub fn rotation_qubit(&self) -> usize {
        0
    }

    /// The flag ancilla targeted by the address-match flips, when present.
    pub fn flag_qubit(&self) -> Option<usize> {
        self.has_u0.then_some(1)
    }

    /// Memory qubit holding pattern bit `j` (bit 0 is the leftmost character).
    pub fn memory_qubit(&self, j: usize) -> usize {
        debug_assert!(j < self.n_memory);
        1 + usize::from(self.has_u0) + j
    }

    pub fn memory_qubits(&self) -> Range<usize> {
        let start = 1 + usize::from(self.has_u0);
        start..start + self.n_memory
    }

    pub fn work_qubits(&self) -> Range<usize> {
        let start = 1 + usize::from(self.has_u0) + self.n_memory;
        start..start + self.n_work
    }
}

/// One gate over layout qubit indices.
///
/// `U1q`, `Cu`, and `Mcu` carry an arbitrary unitary payload; `RpToffoli` is a
/// Toffoli up to a basis-diagonal phase, cheap to build from CNOTs and exact
/// when applied in forward/inverse pairs (see [`crate::decompose`]).
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X {
        target: usize,
    },
    Cx {
        control: usize,
        target: usize,
    },
    U1q {
        target: usize,
        matrix: Matrix2,
        label: Option<String>,
    },
    Cu {
        control: usize,
        target: usize,
        matrix: Matrix2,
        label: Option<String>,
    },
    Mcu {
        controls: Vec<usize>,
        target: usize,
        matrix: Matrix2,
        label: Option<String>,
    },
    RpToffoli {
        c1: usize,
        c2: usize,
        target: usize,
        inverse: bool,
    },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X { .. } => "X",
            Gate::Cx { .. } => "CX",
            Gate::U1q { .. } => "U1Q",
            Gate::Cu { .. } => "CU",
            Gate::Mcu { .. } => "MCU",
            Gate::RpToffoli { .. } => "RPTOF",
        }
    }

    /// All qubit indices the gate touches, controls first.
    pub fn operands(&self) -> Vec<usize> {
        match self {
            Gate::X { target } | Gate::U1q { target, .. } => vec![*target],
            Gate::Cx { control, target } | Gate::Cu { control, target, .. } => {
                vec![*control, *target]
            }
            Gate::Mcu { controls, target, .. } => {
                let mut ops = controls.clone();
                ops.push(*target);
                ops
            }
            Gate::RpToffoli { c1, c2, target, .. } => vec![*c1, *c2, *target],
        }
    }

    pub fn matrix(&self) -> Option<&Matrix2> {
        match self {
            Gate::U1q { matrix, .. } | Gate::Cu { matrix, .. } | Gate::Mcu { matrix, .. } => {
                Some(matrix)
            }
            _ => None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Gate::U1q { label, .. } | Gate::Cu { label, .. } | Gate::Mcu { label, .. } => {
                label.as_deref()
            }
            _ => None,
        }
    }

    /// True for the gate kinds a fully lowered circuit may contain.
    pub fn is_lowered(&self) -> bool {
        matches!(self, Gate::X { .. } | Gate::Cx { .. } | Gate::U1q { .. })
    }
}

/// Gate tallies by cost class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    /// CNOT gates; the figure of merit everywhere in this crate.
    pub cnot: usize,
    /// Plain X plus arbitrary single-qubit unitaries.
    pub single_qubit: usize,
    /// Multi-qubit gates that still await lowering.
    pub other: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.cnot + self.single_qubit + self.other
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CircuitError {
    #[error("{gate} gate references qubit {operand} but the layout has {total} qubits")]
    OperandOutOfRange { gate: &'static str, operand: usize, total: usize },
    #[error("{gate} gate uses qubit {operand} more than once")]
    DuplicateOperand { gate: &'static str, operand: usize },
    #[error("MCU controls must be non-empty and sorted ascending")]
    BadControls,
    #[error("matrix is not unitary: max|M\u{2020}M - I| = {defect:.3e} exceeds {tol:.0e}")]
    NonUnitaryMatrix { defect: f64, tol: f64 },
    #[error("label {label:?} must be a single non-empty token")]
    BadLabel { label: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("circuit contains un-lowered {gate} gate")]
    NotLowered { gate: &'static str },
}

/// A validated gate sequence over a fixed layout.
///
/// Gates are validated as they are appended; once built, a circuit is
/// read-only and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: QubitLayout,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: QubitLayout) -> Self {
        Self { layout, gates: Vec::new() }
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Validates operands, control ordering, unitarity, and label shape, then
    /// appends the gate.
    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let total = self.layout.total_qubits();
        let name = gate.name();
        let ops = gate.operands();
        for &op in &ops {
            if op >= total {
                return Err(CircuitError::OperandOutOfRange { gate: name, operand: op, total });
            }
        }
        let mut seen = ops.clone();
        seen.sort_unstable();
        for pair in seen.windows(2) {
            if pair[0] == pair[1] {
                return Err(CircuitError::DuplicateOperand { gate: name, operand: pair[0] });
            }
        }
        if let Gate::Mcu { controls, .. } = &gate {
            if controls.is_empty() || controls.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CircuitError::BadControls);
            }
        }
        if let Some(m) = gate.matrix() {
            let defect = m.unitarity_defect();
            if defect > UNITARITY_TOL {
                return Err(CircuitError::NonUnitaryMatrix { defect, tol: UNITARITY_TOL });
            }
        }
        if let Some(label) = gate.label() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(CircuitError::BadLabel { label: label.to_owned() });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate {
                Gate::Cx { .. } => counts.cnot += 1,
                Gate::X { .. } | Gate::U1q { .. } => counts.single_qubit += 1,
                Gate::Cu { .. } | Gate::Mcu { .. } | Gate::RpToffoli { .. } => counts.other += 1,
            }
        }
        counts
    }

    /// True when every gate is X, CX, or a single-qubit unitary.
    pub fn is_lowered(&self) -> bool {
        self.gates.iter().all(Gate::is_lowered)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit_text())
    }
}
