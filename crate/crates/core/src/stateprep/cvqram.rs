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

//! Baseline sparse state preparation with a two-qubit ancilla.
//!
//! The rotation ancilla u1 carries the remaining mass as in the one-ancilla
//! scheme, but pattern recognition goes through a flag qubit u0: each entry
//! maps its pattern to the all-ones memory configuration along the active
//! branch, flips u0 controlled on all n memory qubits, rotates u1 controlled
//! on u0, unflips u0, and unmaps the memory. Stored branches never reach
//! all-ones (that would make them equal to the current pattern), so entry
//! order does not matter here; the price is two n-controlled flips per entry
//! regardless of pattern weight.

use super::{amplitude_rotation_at, Dataset, GammaTracker, SynthesisError};
use crate::circuit::{Circuit, Gate, Matrix2, QubitLayout};

/// Synthesizes the abstract baseline circuit for `d`. Entries are processed
/// in dataset order.
pub fn cvqram_synthesize(d: &Dataset) -> Result<Circuit, SynthesisError> {
    let n = d.n();
    let layout = QubitLayout::new(n, true, n.saturating_sub(1));
    let u1 = layout.rotation_qubit();
    let u0 = layout.flag_qubit().expect("layout has a flag qubit");
    let memory: Vec<usize> = layout.memory_qubits().collect();
    let mut circuit = Circuit::new(layout);

    circuit.append(Gate::X { target: u1 })?;

    let mut gamma = GammaTracker::new();
    for (k, entry) in d.entries().iter().enumerate() {
        // Map the pattern to all-ones along the active branch: copy one bits,
        // invert zero bits.
        let map_memory = |circuit: &mut Circuit| -> Result<(), SynthesisError> {
            for (j, &q) in memory.iter().enumerate() {
                if entry.pattern.bit(j) {
                    circuit.append(Gate::Cx { control: u1, target: q })?;
                } else {
                    circuit.append(Gate::X { target: q })?;
                }
            }
            Ok(())
        };
        let flag_flip = |circuit: &mut Circuit| -> Result<(), SynthesisError> {
            if n == 1 {
                circuit.append(Gate::Cx { control: memory[0], target: u0 })?;
            } else {
                circuit.append(Gate::Mcu {
                    controls: memory.clone(),
                    target: u0,
                    matrix: Matrix2::x(),
                    label: None,
                })?;
            }
            Ok(())
        };

        map_memory(&mut circuit)?;
        flag_flip(&mut circuit)?;
        let matrix = amplitude_rotation_at(entry.amplitude, gamma.gamma(), k)?;
        circuit.append(Gate::Cu {
            control: u0,
            target: u1,
            matrix,
            label: Some(format!("load{k}")),
        })?;
        gamma.advance(entry.amplitude)?;
        flag_flip(&mut circuit)?;
        // The unmap writes the pattern into the branch split off by the
        // rotation, so it runs after every entry including the last.
        map_memory(&mut circuit)?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn dataset(n: usize, rows: &[(f64, f64, &str)]) -> Dataset {
        Dataset::load(
            n,
            rows.iter().map(|&(re, im, p)| (Complex64::new(re, im), p.to_owned())),
            false,
        )
        .unwrap()
        .dataset
    }

    #[test]
    fn single_entry_structure() {
        let d = dataset(3, &[(1.0, 0.0, "001")]);
        let c = cvqram_synthesize(&d).unwrap();
        // u1, u0, 3 memory, 2 work
        assert_eq!(c.layout().total_qubits(), 7);
        assert_eq!(c.layout().n_work(), 2);
        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        assert_eq!(
            names,
            vec!["X", "X", "X", "CX", "MCU", "CU", "MCU", "X", "X", "CX"]
        );
        // both n-controlled flips target the flag and control on all memory
        for idx in [4, 6] {
            let Gate::Mcu { controls, target, matrix, .. } = &c.gates()[idx] else { panic!() };
            assert_eq!(controls, &vec![2, 3, 4]);
            assert_eq!(*target, 1);
            assert!(matrix.is_x(1e-12));
        }
        let Gate::Cu { control, target, .. } = &c.gates()[5] else { panic!() };
        assert_eq!((*control, *target), (1, 0));
    }

    #[test]
    fn entry_order_is_preserved() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let d = dataset(2, &[(x, 0.0, "11"), (x, 0.0, "00")]);
        let c = cvqram_synthesize(&d).unwrap();
        // first rotation label belongs to the first dataset row
        let labels: Vec<&str> =
            c.gates().iter().filter_map(|g| g.label()).collect();
        assert_eq!(labels, vec!["load0", "load1"]);
        // first entry "11": both memory ops are CX onto qubits 2 and 3
        let names: Vec<&str> = c.gates().iter().take(4).map(|g| g.name()).collect();
        assert_eq!(names, vec!["X", "CX", "CX", "MCU"]);
    }

    #[test]
    fn width_one_uses_plain_cx_for_the_flag() {
        let d = dataset(1, &[(1.0, 0.0, "1")]);
        let c = cvqram_synthesize(&d).unwrap();
        assert_eq!(c.layout().n_work(), 0);
        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        assert_eq!(names, vec!["X", "CX", "CX", "CU", "CX", "CX"]);
    }

    #[test]
    fn op_count_is_two_n_plus_three_per_entry() {
        let half = 0.5f64;
        let d = dataset(
            4,
            &[
                (half, 0.0, "0000"),
                (half, 0.0, "1010"),
                (half, 0.0, "0111"),
                (half, 0.0, "1111"),
            ],
        );
        let c = cvqram_synthesize(&d).unwrap();
        assert_eq!(c.gates().len(), 1 + 4 * (2 * 4 + 3));
    }
}
