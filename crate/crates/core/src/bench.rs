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

//! Benchmark harness: random datasets swept over width, sparsity, and trials,
//! with CNOT counts, analytic predictions, reference costs, and optional
//! simulator verification per cell, emitted as CSV.
//!
//! Each cell derives its own seed from the master seed and the cell
//! coordinates, and both algorithms of a cell run on the identical dataset,
//! so counts are comparable row to row and the whole sweep is reproducible.
//! Only the wall-time column varies between runs.

use std::time::Instant;

use crate::circuit::Circuit;
use crate::costmodel::{cvo_sparse_count, CostError, CostReport, ReferenceTable};
use crate::datagen::{generate_dataset, mix_seed, DatasetParams, GenError};
use crate::decompose::{lower_circuit, LoweringError};
use crate::simulator::{extract_memory, simulate_with_cap, state_distance, target_state};
use crate::stateprep::{cvoqram_synthesize, cvqram_synthesize, pattern_stats, SynthesisError};
use crate::tol::DEFAULT_QUBIT_CAP;
use crate::Algorithm;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    /// Pattern widths to sweep.
    pub ns: Vec<usize>,
    /// log2 of the entry counts to sweep; cell M = 2^s.
    pub s_values: Vec<u32>,
    /// Ones density shared by every cell.
    pub density: f64,
    /// Datasets per cell.
    pub trials: usize,
    pub seed: u64,
    /// Verification is skipped for circuits wider than this; counting always
    /// runs. Defaults to the simulator cap.
    pub sim_cap: usize,
}

impl BenchConfig {
    pub fn new(
        algorithms: Vec<Algorithm>,
        ns: Vec<usize>,
        s_values: Vec<u32>,
        density: f64,
        trials: usize,
        seed: u64,
    ) -> Self {
        Self { algorithms, ns, s_values, density, trials, seed, sim_cap: DEFAULT_QUBIT_CAP }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.algorithms.is_empty() {
            return Err(BenchError::EmptyAlgorithms);
        }
        if self.ns.is_empty() {
            return Err(BenchError::EmptyWidths);
        }
        if self.s_values.is_empty() {
            return Err(BenchError::EmptySparsities);
        }
        for &n in &self.ns {
            if n == 0 || n > 64 {
                return Err(BenchError::BadWidth { n });
            }
            for &s in &self.s_values {
                if s as usize > n {
                    return Err(BenchError::BadCell { n, s });
                }
            }
        }
        if !(self.density > 0.0 && self.density < 1.0) {
            return Err(BenchError::BadDensity { density: self.density });
        }
        if self.trials == 0 {
            return Err(BenchError::ZeroTrials);
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("no algorithms selected")]
    EmptyAlgorithms,
    #[error("no widths selected")]
    EmptyWidths,
    #[error("no sparsity exponents selected")]
    EmptySparsities,
    #[error("width {n} outside the supported range 1..=64")]
    BadWidth { n: usize },
    #[error("cell n={n} s={s} asks for more patterns than 2^n")]
    BadCell { n: usize, s: u32 },
    #[error("ones density {density} outside (0, 1)")]
    BadDensity { density: f64 },
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Lowering(#[from] LoweringError),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// One CSV row: a single (algorithm, dataset) measurement.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub density: f64,
    /// Cell seed; `gen` reproduces the row's dataset from it.
    pub seed: u64,
    pub trial: usize,
    pub cnot: usize,
    pub single_qubit: usize,
    pub predicted_cnot: Option<u128>,
    pub references: ReferenceTable,
    /// Verification `(distance, leak)`; `None` when the circuit is wider
    /// than the configured cap.
    pub sim: Option<(f64, f64)>,
    pub synth_ms: f64,
}

/// Runs the sweep. Rows come out ordered by (algorithm, n, s, trial) with
/// the axes in sorted order regardless of how the config listed them.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    config.validate()?;
    let mut ns = config.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut s_values = config.s_values.clone();
    s_values.sort_unstable();
    s_values.dedup();

    let mut rows = Vec::new();
    for &algorithm in &config.algorithms {
        for &n in &ns {
            for &s in &s_values {
                let m = 1usize << s;
                for trial in 0..config.trials {
                    let seed = mix_seed(
                        config.seed,
                        &[n as u64, m as u64, config.density.to_bits(), trial as u64],
                    );
                    let dataset =
                        generate_dataset(&DatasetParams { n, m, density: config.density, seed })?;

                    let started = Instant::now();
                    let abstract_circuit = match algorithm {
                        Algorithm::Cvoqram => cvoqram_synthesize(&dataset)?,
                        Algorithm::Cvqram => cvqram_synthesize(&dataset)?,
                    };
                    let lowered = lower_circuit(&abstract_circuit)?;
                    let synth_ms = started.elapsed().as_secs_f64() * 1e3;

                    let counts = lowered.gate_counts();
                    let predicted = match algorithm {
                        Algorithm::Cvoqram => Some(cvo_sparse_count(&pattern_stats(&dataset))),
                        Algorithm::Cvqram => None,
                    };
                    // enforces predicted = empirical for the one-ancilla rows
                    let report = CostReport::build(algorithm, n, m, &counts, predicted)?;

                    let sim = verification(&lowered, &dataset, config.sim_cap);
                    rows.push(BenchRow {
                        algorithm,
                        n,
                        m,
                        density: config.density,
                        seed,
                        trial,
                        cnot: counts.cnot,
                        single_qubit: counts.single_qubit,
                        predicted_cnot: report.predicted_cnot,
                        references: report.references,
                        sim,
                        synth_ms,
                    });
                }
            }
        }
    }
    Ok(rows)
}

fn verification(
    lowered: &Circuit,
    dataset: &crate::stateprep::Dataset,
    cap: usize,
) -> Option<(f64, f64)> {
    if lowered.layout().total_qubits() > cap {
        return None;
    }
    let state = simulate_with_cap(lowered, cap).expect("cap was just checked");
    let (memory, leak) = extract_memory(&state, lowered.layout());
    let target = target_state(dataset);
    let distance =
        state_distance(&memory, target.amps()).expect("memory slice matches target dimension");
    Some((distance, leak))
}

pub const CSV_HEADER: &str = "algorithm,n,M,density,seed,trial,cnot,single_qubit,predicted_cnot,\
ref_cvqram,ref_ffqram,ref_sql,ref_mottonen,distance,leak,synth_ms";

/// Renders rows as CSV. The final column is wall time and is the only
/// nondeterministic part of the output.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let predicted = r.predicted_cnot.map(|p| p.to_string()).unwrap_or_default();
        let (distance, leak) = match r.sim {
            Some((d, l)) => (format!("{d:e}"), format!("{l:e}")),
            None => ("skipped".to_owned(), "skipped".to_owned()),
        };
        out.push_str(&format!(
            "{alg},{n},{m},{density},{seed},{trial},{cnot},{single},{predicted},{rc},{rf},{rs},{rm},{distance},{leak},{ms:.3}\n",
            alg = r.algorithm,
            n = r.n,
            m = r.m,
            density = r.density,
            seed = r.seed,
            trial = r.trial,
            cnot = r.cnot,
            single = r.single_qubit,
            predicted = predicted,
            rc = r.references.cvqram,
            rf = r.references.ffqram,
            rs = r.references.sql,
            rm = r.references.mottonen,
            distance = distance,
            leak = leak,
            ms = r.synth_ms,
        ));
    }
    out
}
