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

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use qsprep::bench::{self, BenchConfig};
use qsprep::costmodel::{cvo_sparse_count, CostReport};
use qsprep::datagen::{generate_dataset, DatasetParams};
use qsprep::decompose::lower_circuit;
use qsprep::simulator::{extract_memory, simulate, state_distance, target_state};
use qsprep::stateprep::{
    cvoqram_synthesize_with, cvqram_synthesize, pattern_stats, CvoqramOptions, Dataset,
};
use qsprep::tol::{LEAK_TOL, STATE_TOL};
use qsprep::Algorithm;

type CliError = Box<dyn Error>;

#[derive(Parser)]
#[command(
    name = "qsprep",
    version,
    about = "Sparse quantum state preparation: synthesis, lowering, counting, verification, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random dataset file
    Gen {
        /// Pattern width in bits
        #[arg(long)]
        n: usize,
        /// Number of patterns (M)
        #[arg(long)]
        patterns: usize,
        /// Probability of each pattern bit being 1
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a circuit from a dataset and report gate counts
    Synth {
        /// Dataset JSON path
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "cvoqram", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        /// Lower to CNOTs and single-qubit gates
        #[arg(long)]
        lower: bool,
        /// Also write OPENQASM 2.0 beside the output (requires --lower)
        #[arg(long)]
        qasm: bool,
        /// Circuit text output path
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the cost report for a dataset as JSON
    Count {
        /// Dataset JSON path
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "cvoqram", value_parser = parse_algorithm)]
        algorithm: Algorithm,
    },
    /// Synthesize, lower, simulate, and compare against the dataset
    Verify {
        /// Dataset JSON path
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "cvoqram", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        /// Process entries in file order instead of weight order
        #[arg(long, hide = true)]
        no_sort: bool,
    },
    /// Sweep widths and sparsities over random datasets, emitting CSV
    Bench {
        /// Width or inclusive width range, e.g. 8 or 8..12
        #[arg(long)]
        n: String,
        /// Comma-separated pattern counts, each a power of two
        #[arg(long)]
        patterns: String,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Datasets per (width, count) cell
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated algorithms
        #[arg(long, default_value = "cvoqram,cvqram")]
        algorithm: String,
        /// CSV output path; stdout when omitted
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() {
    // Die silently when the reader closes the pipe instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Gen { n, patterns, density, seed, output } => {
            let dataset = generate_dataset(&DatasetParams { n, m: patterns, density, seed })?;
            let json = dataset.to_json_string();
            match output {
                Some(path) => write_file(&path, &(json + "\n"))?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        Command::Synth { input, algorithm, lower, qasm, output } => {
            if qasm && !lower {
                return Err("--qasm requires --lower".into());
            }
            let dataset = read_dataset(&input)?;
            let circuit = synthesize(algorithm, &dataset, true)?;
            let circuit = if lower { lower_circuit(&circuit)? } else { circuit };
            write_file(&output, &circuit.emit_text())?;
            if qasm {
                let mut qasm_path = output.clone();
                qasm_path.set_extension("qasm");
                write_file(&qasm_path, &circuit.emit_qasm2()?)?;
            }
            let counts = circuit.gate_counts();
            println!("algorithm={algorithm}");
            println!("qubits={}", circuit.layout().total_qubits());
            println!("gates={}", circuit.gates().len());
            println!("cnot={}", counts.cnot);
            println!("single_qubit={}", counts.single_qubit);
            println!("other={}", counts.other);
            if algorithm == Algorithm::Cvoqram {
                println!("predicted_cnot={}", cvo_sparse_count(&pattern_stats(&dataset)));
            }
            Ok(0)
        }
        Command::Count { input, algorithm } => {
            let dataset = read_dataset(&input)?;
            let lowered = lower_circuit(&synthesize(algorithm, &dataset, true)?)?;
            let predicted = match algorithm {
                Algorithm::Cvoqram => Some(cvo_sparse_count(&pattern_stats(&dataset))),
                Algorithm::Cvqram => None,
            };
            let report = CostReport::build(
                algorithm,
                dataset.n(),
                dataset.len(),
                &lowered.gate_counts(),
                predicted,
            )?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Verify { input, algorithm, no_sort } => {
            let dataset = read_dataset(&input)?;
            let lowered = lower_circuit(&synthesize(algorithm, &dataset, !no_sort)?)?;
            let state = simulate(&lowered)?;
            let (memory, leak) = extract_memory(&state, lowered.layout());
            let target = target_state(&dataset);
            let distance = state_distance(&memory, target.amps())?;
            println!("distance={distance:e}");
            println!("leak={leak:e}");
            let pass = distance <= STATE_TOL && leak < LEAK_TOL;
            println!("{}", if pass { "PASS" } else { "FAIL" });
            Ok(if pass { 0 } else { 1 })
        }
        Command::Bench { n, patterns, density, trials, seed, algorithm, csv } => {
            let config = BenchConfig::new(
                parse_algorithms(&algorithm)?,
                parse_width_range(&n)?,
                parse_pattern_counts(&patterns)?,
                density,
                trials,
                seed,
            );
            let rows = bench::run(&config)?;
            let text = bench::to_csv(&rows);
            match csv {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn synthesize(
    algorithm: Algorithm,
    dataset: &Dataset,
    sort: bool,
) -> Result<qsprep::circuit::Circuit, CliError> {
    let circuit = match algorithm {
        Algorithm::Cvoqram => cvoqram_synthesize_with(dataset, &CvoqramOptions { sort })?,
        Algorithm::Cvqram => cvqram_synthesize(dataset)?,
    };
    Ok(circuit)
}

fn read_dataset(path: &Path) -> Result<Dataset, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    let loaded = Dataset::from_json_str(&text, false)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    if loaded.dropped_zero > 0 {
        eprintln!("note: dropped {} zero-amplitude entries", loaded.dropped_zero);
    }
    Ok(loaded.dataset)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| format!("writing {}: {e}", path.display()).into())
}

fn parse_width_range(s: &str) -> Result<Vec<usize>, CliError> {
    let parse_one = |tok: &str| -> Result<usize, CliError> {
        tok.trim().parse().map_err(|_| format!("invalid width {tok:?}").into())
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_one(a)?, parse_one(b)?);
        if a > b {
            return Err(format!("empty width range {s:?}").into());
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![parse_one(s)?])
    }
}

fn parse_pattern_counts(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|tok| {
            let m: usize = tok
                .trim()
                .parse()
                .map_err(|_| CliError::from(format!("invalid pattern count {tok:?}")))?;
            if !m.is_power_of_two() {
                return Err(format!("pattern count {m} is not a power of two").into());
            }
            Ok(m.trailing_zeros())
        })
        .collect()
}

fn parse_algorithms(s: &str) -> Result<Vec<Algorithm>, CliError> {
    s.split(',')
        .map(|tok| tok.trim().parse::<Algorithm>().map_err(CliError::from))
        .collect()
}
