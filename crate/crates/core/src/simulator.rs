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

//! Dense statevector simulation used as the correctness oracle.
//!
//! Qubit 0 is the most significant bit of the basis index, so the ket label
//! read left to right matches the qubit order of the register layout. Every
//! gate of the circuit IR applies natively, including the multi-controlled
//! rotations and the relative-phase Toffoli, which lets abstract and lowered
//! circuits be checked against the same target.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, Matrix2, QubitLayout};
use crate::stateprep::Dataset;
use crate::tol::{DEFAULT_QUBIT_CAP, DUMP_EPS};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SimulatorError {
    #[error("circuit uses {qubits} qubits, above the simulation cap of {cap}")]
    TooManyQubits { qubits: usize, cap: usize },
    #[error("state vectors have different lengths ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
}

/// Dense complex amplitude vector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// The all-zeros computational basis state.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// The computational basis state with the given index.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits < usize::BITS as usize, "qubit count out of range");
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit position of qubit `q` inside a basis index.
    fn pos(&self, q: usize) -> usize {
        debug_assert!(q < self.n_qubits);
        self.n_qubits - 1 - q
    }

    /// Calls `f` with the index pair `(i0, i1)` differing in `target_pos`,
    /// over every basis state whose bits at `ones` positions are all 1.
    /// `fixed` must hold `ones` plus `target_pos` sorted ascending.
    fn for_each_pair(
        &mut self,
        fixed: &[usize],
        ones_mask: usize,
        target_pos: usize,
        mut f: impl FnMut(&mut Vec<Complex64>, usize, usize),
    ) {
        debug_assert!(fixed.windows(2).all(|w| w[0] < w[1]));
        let free = self.n_qubits - fixed.len();
        let target_bit = 1usize << target_pos;
        for i in 0..(1usize << free) {
            let mut idx = i;
            // Insert a zero bit at each fixed position, ascending, then set
            // the control bits. Ascending insertion keeps later positions
            // valid in final-index coordinates.
            for &p in fixed {
                let low = idx & ((1usize << p) - 1);
                idx = ((idx >> p) << (p + 1)) | low;
            }
            idx |= ones_mask;
            f(&mut self.amps, idx, idx | target_bit);
        }
    }

    fn rotate_pairs(&mut self, fixed: &[usize], ones_mask: usize, target_pos: usize, m: &Matrix2) {
        let (m00, m01) = (m.entry(0, 0), m.entry(0, 1));
        let (m10, m11) = (m.entry(1, 0), m.entry(1, 1));
        self.for_each_pair(fixed, ones_mask, target_pos, |amps, i0, i1| {
            let a0 = amps[i0];
            let a1 = amps[i1];
            amps[i0] = m00 * a0 + m01 * a1;
            amps[i1] = m10 * a0 + m11 * a1;
        });
    }

    fn swap_pairs(&mut self, fixed: &[usize], ones_mask: usize, target_pos: usize) {
        self.for_each_pair(fixed, ones_mask, target_pos, |amps, i0, i1| amps.swap(i0, i1));
    }

    /// Applies one gate in place. Operand validity is the circuit's invariant.
    pub fn apply(&mut self, gate: &Gate) {
        match gate {
            Gate::X { target } => {
                let tp = self.pos(*target);
                self.swap_pairs(&[tp], 0, tp);
            }
            Gate::Cx { control, target } => {
                let cp = self.pos(*control);
                let tp = self.pos(*target);
                let mut fixed = [cp, tp];
                fixed.sort_unstable();
                self.swap_pairs(&fixed, 1 << cp, tp);
            }
            Gate::U1q { target, matrix, .. } => {
                let tp = self.pos(*target);
                self.rotate_pairs(&[tp], 0, tp, matrix);
            }
            Gate::Cu { control, target, matrix, .. } => {
                let cp = self.pos(*control);
                let tp = self.pos(*target);
                let mut fixed = [cp, tp];
                fixed.sort_unstable();
                self.rotate_pairs(&fixed, 1 << cp, tp, matrix);
            }
            Gate::Mcu { controls, target, matrix, .. } => {
                let tp = self.pos(*target);
                let mut ones_mask = 0usize;
                let mut fixed: Vec<usize> = Vec::with_capacity(controls.len() + 1);
                for &c in controls {
                    let p = self.pos(c);
                    ones_mask |= 1 << p;
                    fixed.push(p);
                }
                fixed.push(tp);
                fixed.sort_unstable();
                self.rotate_pairs(&fixed, ones_mask, tp, matrix);
            }
            Gate::RpToffoli { c1, c2, target, inverse } => {
                let p1 = self.pos(*c1);
                let p2 = self.pos(*c2);
                let tp = self.pos(*target);
                let phase =
                    if *inverse { Complex64::new(0.0, -1.0) } else { Complex64::new(0.0, 1.0) };
                let mut fixed = [p1, p2, tp];
                fixed.sort_unstable();
                // c1=1, c2=0 block: a target-diagonal phase.
                self.for_each_pair(&fixed, 1 << p1, tp, |amps, i0, i1| {
                    amps[i0] *= phase;
                    amps[i1] *= -phase;
                });
                // c1=1, c2=1 block: a phased swap.
                self.for_each_pair(&fixed, (1 << p1) | (1 << p2), tp, |amps, i0, i1| {
                    let a0 = amps[i0];
                    amps[i0] = amps[i1] * phase;
                    amps[i1] = a0 * phase;
                });
            }
        }
    }

    /// Raw little-endian f64 pairs `(re, im)` for every amplitude.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for a in &self.amps {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    /// One `index re im` line per amplitude above [`DUMP_EPS`].
    pub fn write_nonzero_text<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > DUMP_EPS {
                writeln!(w, "{i} {re:.16e} {im:.16e}", re = a.re, im = a.im)?;
            }
        }
        Ok(())
    }
}

/// Runs `c` from the all-zeros state under the default qubit cap.
pub fn simulate(c: &Circuit) -> Result<Statevector, SimulatorError> {
    simulate_with_cap(c, DEFAULT_QUBIT_CAP)
}

/// Runs `c` from the all-zeros state, refusing circuits wider than `cap`.
pub fn simulate_with_cap(c: &Circuit, cap: usize) -> Result<Statevector, SimulatorError> {
    let qubits = c.layout().total_qubits();
    if qubits > cap {
        return Err(SimulatorError::TooManyQubits { qubits, cap });
    }
    let mut state = Statevector::zero(qubits);
    for gate in c.gates() {
        state.apply(gate);
    }
    Ok(state)
}

/// The ideal memory-register state described by a dataset, as a dense vector
/// over the memory qubits only.
pub fn target_state(d: &Dataset) -> Statevector {
    let mut state = Statevector::zero(d.n());
    state.amps[0] = Complex64::new(0.0, 0.0);
    for e in d.entries() {
        state.amps[e.pattern.basis_index()] = e.amplitude;
    }
    state
}

/// Projects a full-register state onto the subspace where every non-memory
/// qubit is zero. Returns the memory-indexed amplitudes plus the leaked mass,
/// the probability of finding any ancilla or work qubit outside zero.
pub fn extract_memory(state: &Statevector, layout: &QubitLayout) -> (Vec<Complex64>, f64) {
    assert_eq!(state.n_qubits(), layout.total_qubits(), "layout does not match state");
    let n = layout.n_memory();
    let w = layout.n_work();
    let mut memory = Vec::with_capacity(1 << n);
    let mut captured = 0.0f64;
    // Qubit order is ancillas, memory, work, so the wanted indices are the
    // memory index shifted past the work bits with all ancilla bits clear.
    for mem_idx in 0..(1usize << n) {
        let a = state.amps[mem_idx << w];
        captured += a.norm_sqr();
        memory.push(a);
    }
    let leak = (state.norm_sqr() - captured).max(0.0);
    (memory, leak)
}

/// Largest componentwise distance between two amplitude vectors.
pub fn state_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64, SimulatorError> {
    if a.len() != b.len() {
        return Err(SimulatorError::DimensionMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
}
