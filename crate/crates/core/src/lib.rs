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

//! Sparse quantum state preparation.
//!
//! Given M nonzero complex amplitudes on n-bit address patterns, this crate
//! synthesizes circuits that prepare the corresponding n-qubit state, lowers
//! them to a CNOT plus single-qubit gate set, predicts and counts CNOT costs,
//! and verifies the result on a dense statevector simulator.
//!
//! The pieces:
//!
//! * [`stateprep`]: dataset ingestion and the two synthesis algorithms, a
//!   one-ancilla scheme whose rotation for an entry is controlled only on the
//!   entry's one bits, and a two-ancilla baseline that recognizes patterns
//!   with full-width controlled flips.
//! * [`circuit`]: the gate IR, its text serialization, and QASM export.
//! * [`decompose`]: lowering of controlled rotations to CNOTs and
//!   single-qubit gates via relative-phase Toffoli ladders.
//! * [`simulator`]: the dense statevector oracle.
//! * [`costmodel`]: closed-form CNOT cost predictions and reference costs of
//!   published preparation methods.
//! * [`datagen`]: seeded random dataset generation.
//! * [`bench`]: the benchmark harness behind the CLI's `bench` subcommand.

#![forbid(unsafe_code)]

pub mod bench;
pub mod circuit;
pub mod costmodel;
pub mod datagen;
pub mod decompose;
pub mod simulator;
pub mod stateprep;
pub mod tol;

use std::fmt;
use std::str::FromStr;

/// Which synthesis algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// One processing ancilla, rotations controlled on pattern one bits.
    Cvoqram,
    /// Two-qubit ancilla baseline with full-width pattern recognition.
    Cvqram,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Cvoqram, Algorithm::Cvqram];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cvoqram => "cvoqram",
            Algorithm::Cvqram => "cvqram",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cvoqram" => Ok(Algorithm::Cvoqram),
            "cvqram" => Ok(Algorithm::Cvqram),
            other => Err(format!("unknown algorithm {other:?}, expected cvoqram or cvqram")),
        }
    }
}
