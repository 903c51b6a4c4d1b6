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

//! Numeric thresholds shared across the crate.
//!
//! Every tolerance the library enforces lives here so the contract is visible
//! in one place and tests can reference the same constants.

/// Largest `max|M†M - I|` a 2x2 matrix may show and still be accepted as a gate.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Largest `|det(M) - 1|` accepted by the two-CNOT controlled-unitary split,
/// which is only exact for determinant-one matrices.
pub const SPECIAL_DET_TOL: f64 = 1e-10;

/// Remaining-mass floor below which the amplitude rotation is ill-conditioned
/// and construction is refused.
pub const GAMMA_FLOOR: f64 = 1e-12;

/// Relative slack allowed when a squared amplitude reaches the remaining mass;
/// within it the rotation is snapped to the exact flip, beyond it is an error.
pub const MASS_SLACK: f64 = 1e-9;

/// Componentwise statevector distance below which verification passes.
pub const STATE_TOL: f64 = 1e-9;

/// Total probability mass tolerated outside the all-zero ancilla subspace.
pub const LEAK_TOL: f64 = 1e-12;

/// Amplitudes at or below this magnitude are omitted from text dumps.
pub const DUMP_EPS: f64 = 1e-12;

/// Default qubit count above which dense simulation is refused.
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Squared-norm deviation from one tolerated when ingesting a dataset.
pub const NORMALIZATION_TOL: f64 = 1e-8;
