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

//! Sparse state preparation with a single processing ancilla.
//!
//! One ancilla starts in |1> and carries the probability mass still waiting to
//! be distributed. Each entry copies its pattern onto the memory register
//! along the active branch, peels its amplitude off with a rotation controlled
//! on the loaded one-positions, and uncopies the pattern from the branch that
//! stays active. The freshly split branch keeps the pattern: that is the
//! stored state.
//!
//! Entries must be processed in nondecreasing Hamming weight order: the
//! rotation controls on the one-positions of the current pattern, and a
//! previously stored pattern of weight at most the current one can only
//! contain those positions by being equal to it, which distinctness rules
//! out. Heavier patterns stored early would retrigger later rotations and
//! corrupt stored amplitudes; `sort: false` exists to demonstrate exactly
//! that failure.

use super::{
    amplitude_rotation_at, order_patterns, pattern_stats, Dataset, GammaTracker, SynthesisError,
};
use crate::circuit::{Circuit, Gate, QubitLayout};

/// Knobs for [`cvoqram_synthesize_with`].
#[derive(Debug, Clone)]
pub struct CvoqramOptions {
    /// Process entries in weight-then-lexicographic order. Disabling this is
    /// only useful to demonstrate that the ordering is load-bearing; the
    /// produced circuit is generally wrong for out-of-order datasets.
    pub sort: bool,
}

impl Default for CvoqramOptions {
    fn default() -> Self {
        Self { sort: true }
    }
}

/// Synthesizes the abstract circuit for `d` with default options.
pub fn cvoqram_synthesize(d: &Dataset) -> Result<Circuit, SynthesisError> {
    cvoqram_synthesize_with(d, &CvoqramOptions::default())
}

pub fn cvoqram_synthesize_with(
    d: &Dataset,
    opts: &CvoqramOptions,
) -> Result<Circuit, SynthesisError> {
    let sorted;
    let data = if opts.sort {
        sorted = order_patterns(d);
        &sorted
    } else {
        d
    };
    let stats = pattern_stats(data);
    let layout = QubitLayout::new(d.n(), false, stats.t_max.saturating_sub(1));
    let u = layout.rotation_qubit();
    let mut circuit = Circuit::new(layout);

    circuit.append(Gate::X { target: u })?;

    let mut gamma = GammaTracker::new();
    let m = data.len();
    for (k, entry) in data.entries().iter().enumerate() {
        let ones: Vec<usize> =
            entry.pattern.one_positions().map(|j| circuit.layout().memory_qubit(j)).collect();

        for &q in &ones {
            circuit.append(Gate::Cx { control: u, target: q })?;
        }

        let matrix = amplitude_rotation_at(entry.amplitude, gamma.gamma(), k)?;
        let label = Some(format!("load{k}"));
        let gate = match ones.len() {
            0 => Gate::U1q { target: u, matrix, label },
            1 => Gate::Cu { control: ones[0], target: u, matrix, label },
            _ => Gate::Mcu { controls: ones.clone(), target: u, matrix, label },
        };
        circuit.append(gate)?;
        gamma.advance(entry.amplitude)?;

        // The active branch is empty after the last entry, so there is
        // nothing left to uncopy.
        if k + 1 < m {
            for &q in ones.iter().rev() {
                circuit.append(Gate::Cx { control: u, target: q })?;
            }
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Matrix2;
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
    fn bell_pair_gate_sequence() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let d = dataset(2, &[(x, 0.0, "00"), (x, 0.0, "11")]);
        let c = cvoqram_synthesize(&d).unwrap();

        // ancilla + 2 memory + 1 work (t_max = 2)
        assert_eq!(c.layout().total_qubits(), 4);
        assert_eq!(c.layout().n_work(), 1);

        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        // X(u); U1q loads "00"; CX CX load "11"; MCU; no trailing uncopy
        assert_eq!(names, vec!["X", "U1Q", "CX", "CX", "MCU"]);

        let Gate::U1q { target, matrix, label } = &c.gates()[1] else { panic!() };
        assert_eq!(*target, 0);
        assert_eq!(label.as_deref(), Some("load0"));
        let expect = Matrix2::new([
            [Complex64::new(x, 0.0), Complex64::new(x, 0.0)],
            [Complex64::new(-x, 0.0), Complex64::new(x, 0.0)],
        ]);
        assert!(matrix.max_diff(&expect) < 1e-15);

        // final rotation is the exact flip
        let Gate::Mcu { controls, target, matrix, label } = &c.gates()[4] else { panic!() };
        assert_eq!(controls, &vec![1, 2]);
        assert_eq!(*target, 0);
        assert_eq!(label.as_deref(), Some("load1"));
        assert_eq!(matrix.entry(0, 0), Complex64::new(0.0, 0.0));
        assert!((matrix.entry(0, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ghz3_gate_sequence() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let d = dataset(3, &[(x, 0.0, "111"), (x, 0.0, "000")]);
        let c = cvoqram_synthesize(&d).unwrap();
        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        // sorted: "000" first even though the input listed it second
        assert_eq!(names, vec!["X", "U1Q", "CX", "CX", "CX", "MCU"]);
        let counts = c.gate_counts();
        assert_eq!(counts.cnot, 3);
        assert_eq!(counts.single_qubit, 2);
        assert_eq!(counts.other, 1);
    }

    #[test]
    fn mirror_is_reversed_and_present_between_entries() {
        let x = 0.5f64.sqrt();
        let d = dataset(3, &[(x, 0.0, "110"), (x, 0.0, "011")]);
        let c = cvoqram_synthesize(&d).unwrap();
        let ops: Vec<(String, Vec<usize>)> =
            c.gates().iter().map(|g| (g.name().to_owned(), g.operands())).collect();
        // memory qubits are 1,2,3; "011" loads first (lex tie-break on equal weight)
        assert_eq!(
            ops,
            vec![
                ("X".to_owned(), vec![0]),
                ("CX".to_owned(), vec![0, 2]),
                ("CX".to_owned(), vec![0, 3]),
                ("MCU".to_owned(), vec![2, 3, 0]),
                ("CX".to_owned(), vec![0, 3]),
                ("CX".to_owned(), vec![0, 2]),
                ("CX".to_owned(), vec![0, 1]),
                ("CX".to_owned(), vec![0, 2]),
                ("MCU".to_owned(), vec![1, 2, 0]),
            ]
        );
    }

    #[test]
    fn gamma_trace_through_superposition_split() {
        // four equal entries: rotations see gamma = 1, 3/4, 1/2, 1/4
        let d = dataset(
            2,
            &[(0.5, 0.0, "00"), (0.5, 0.0, "01"), (0.5, 0.0, "10"), (0.5, 0.0, "11")],
        );
        let c = cvoqram_synthesize(&d).unwrap();
        let rotations: Vec<&Matrix2> = c
            .gates()
            .iter()
            .filter_map(|g| match g {
                Gate::U1q { matrix, .. } | Gate::Cu { matrix, .. } | Gate::Mcu { matrix, .. } => {
                    Some(matrix)
                }
                _ => None,
            })
            .collect();
        assert_eq!(rotations.len(), 4);
        let gammas: [f64; 4] = [1.0, 0.75, 0.5, 0.25];
        for (m, g) in rotations.iter().zip(gammas) {
            let s = 0.5 / g.sqrt();
            assert!((m.entry(0, 1) - Complex64::new(s, 0.0)).norm() < 1e-12);
        }
        // last one is the flip
        assert_eq!(rotations[3].entry(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn no_sort_preserves_input_order() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let d = dataset(2, &[(x, 0.0, "11"), (x, 0.0, "01")]);
        let c = cvoqram_synthesize_with(&d, &CvoqramOptions { sort: false }).unwrap();
        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        // "11" first: loads, MCU, uncopies; then "01": one load and its CU
        assert_eq!(names, vec!["X", "CX", "CX", "MCU", "CX", "CX", "CX", "CU"]);
    }

    #[test]
    fn single_entry_basis_state() {
        let d = dataset(3, &[(1.0, 0.0, "101")]);
        let c = cvoqram_synthesize(&d).unwrap();
        let names: Vec<&str> = c.gates().iter().map(|g| g.name()).collect();
        assert_eq!(names, vec!["X", "CX", "CX", "MCU"]);
        // weight 2 needs one work qubit
        assert_eq!(c.layout().n_work(), 1);
        assert_eq!(c.layout().total_qubits(), 5);
    }
}
