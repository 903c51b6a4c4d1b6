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

//! Test-side oracles shared by the integration suites: a dense full-matrix
//! gate implementation independent of the production simulator, random
//! unitary sources, a tiny QASM interpreter, and comparison helpers.

#![allow(dead_code)]

use num_complex::Complex64;

use qsprep::circuit::{Gate, Matrix2};
use qsprep::datagen::SplitMix64;
use qsprep::stateprep::Dataset;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn dataset(n: usize, rows: &[(f64, f64, &str)]) -> Dataset {
    Dataset::load(n, rows.iter().map(|&(re, im, p)| (c(re, im), p.to_owned())), false)
        .unwrap()
        .dataset
}

/// Bit of basis index `idx` belonging to qubit `q` under the MSB-first
/// convention shared with the production code.
fn qbit(idx: usize, q: usize, n: usize) -> usize {
    (idx >> (n - 1 - q)) & 1
}

fn flip(idx: usize, q: usize, n: usize) -> usize {
    idx ^ (1usize << (n - 1 - q))
}

/// Applies one gate to a dense amplitude vector by first principles: every
/// output index is computed from the gate definition, with no shared code
/// with the production simulator's pair-enumeration kernels.
pub fn apply_reference(gate: &Gate, amps: &[Complex64], n: usize) -> Vec<Complex64> {
    let dim = 1usize << n;
    assert_eq!(amps.len(), dim);
    let mut out = vec![c(0.0, 0.0); dim];
    match gate {
        Gate::X { target } => {
            for (i, &a) in amps.iter().enumerate() {
                out[flip(i, *target, n)] += a;
            }
        }
        Gate::Cx { control, target } => {
            for (i, &a) in amps.iter().enumerate() {
                let j = if qbit(i, *control, n) == 1 { flip(i, *target, n) } else { i };
                out[j] += a;
            }
        }
        Gate::U1q { target, matrix, .. } => single_qubit(matrix, *target, amps, &mut out, n, |_| true),
        Gate::Cu { control, target, matrix, .. } => {
            let control = *control;
            single_qubit(matrix, *target, amps, &mut out, n, |i| qbit(i, control, n) == 1)
        }
        Gate::Mcu { controls, target, matrix, .. } => {
            let controls = controls.clone();
            single_qubit(matrix, *target, amps, &mut out, n, |i| {
                controls.iter().all(|&q| qbit(i, q, n) == 1)
            })
        }
        Gate::RpToffoli { c1, c2, target, inverse } => {
            let ph = if *inverse { c(0.0, -1.0) } else { c(0.0, 1.0) };
            for (i, &a) in amps.iter().enumerate() {
                match (qbit(i, *c1, n), qbit(i, *c2, n)) {
                    (0, _) => out[i] += a,
                    (1, 0) => {
                        // i Z on the target (conjugated when inverse)
                        let sign = if qbit(i, *target, n) == 0 { ph } else { -ph };
                        out[i] += sign * a;
                    }
                    _ => out[flip(i, *target, n)] += ph * a,
                }
            }
        }
    }
    out
}

fn single_qubit(
    m: &Matrix2,
    target: usize,
    amps: &[Complex64],
    out: &mut [Complex64],
    n: usize,
    fires: impl Fn(usize) -> bool,
) {
    for (i, &a) in amps.iter().enumerate() {
        if !fires(i) {
            out[i] += a;
            continue;
        }
        let b = qbit(i, target, n);
        let i0 = if b == 0 { i } else { flip(i, target, n) };
        out[i0] += m.entry(0, b) * a;
        out[flip(i0, target, n)] += m.entry(1, b) * a;
    }
}

pub fn apply_reference_all(gates: &[Gate], start: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut state = start.to_vec();
    for g in gates {
        state = apply_reference(g, &state, n);
    }
    state
}

pub fn basis_vector(n: usize, idx: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[idx] = c(1.0, 0.0);
    v
}

/// `k` distinct qubits drawn from `0..n` by partial Fisher-Yates.
pub fn pick_distinct(rng: &mut SplitMix64, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + (rng.next_u64() as usize) % (n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

fn random_label(rng: &mut SplitMix64) -> Option<String> {
    rng.next_u64().is_multiple_of(3).then(|| format!("load{}", rng.next_u64() % 100))
}

/// Matrix admissible on a controlled gate: special unitary by construction,
/// with an occasional exact X to exercise the CX lowering shortcut.
fn random_controlled_matrix(rng: &mut SplitMix64) -> Matrix2 {
    if rng.next_u64().is_multiple_of(4) {
        Matrix2::x()
    } else {
        random_su2(rng)
    }
}

/// Uniformly picks one gate of any kind with valid operands over `n` qubits.
/// Controlled matrices are det-1 (or X) to match what synthesis emits and
/// what the lowering pass accepts. Requires `n >= 4` so multi-controlled
/// gates have room.
pub fn random_gate(rng: &mut SplitMix64, n: usize) -> Gate {
    assert!(n >= 4);
    match rng.next_u64() % 6 {
        0 => Gate::X { target: pick_distinct(rng, n, 1)[0] },
        1 => {
            let q = pick_distinct(rng, n, 2);
            Gate::Cx { control: q[0], target: q[1] }
        }
        2 => Gate::U1q {
            target: pick_distinct(rng, n, 1)[0],
            matrix: random_u2(rng),
            label: random_label(rng),
        },
        3 => {
            let q = pick_distinct(rng, n, 2);
            Gate::Cu {
                control: q[0],
                target: q[1],
                matrix: random_controlled_matrix(rng),
                label: random_label(rng),
            }
        }
        4 => {
            let t = 2 + (rng.next_u64() as usize) % (n - 2);
            let q = pick_distinct(rng, n, t + 1);
            let mut controls = q[..t].to_vec();
            controls.sort_unstable();
            Gate::Mcu {
                controls,
                target: q[t],
                matrix: random_controlled_matrix(rng),
                label: random_label(rng),
            }
        }
        _ => {
            let q = pick_distinct(rng, n, 3);
            Gate::RpToffoli {
                c1: q[0],
                c2: q[1],
                target: q[2],
                inverse: rng.next_u64().is_multiple_of(2),
            }
        }
    }
}

/// Haar-ish random special unitary: Rz Ry Rz with uniform angles.
pub fn random_su2(rng: &mut SplitMix64) -> Matrix2 {
    let tau = std::f64::consts::TAU;
    let a = rng.next_f64() * tau;
    let b = rng.next_f64() * std::f64::consts::PI;
    let g = rng.next_f64() * tau;
    Matrix2::rz(a).mul(&Matrix2::ry(b)).mul(&Matrix2::rz(g))
}

/// Random unitary with a nontrivial global phase (determinant off 1).
pub fn random_u2(rng: &mut SplitMix64) -> Matrix2 {
    let phase = Complex64::from_polar(1.0, rng.next_f64() * std::f64::consts::TAU);
    let su = random_su2(rng);
    Matrix2::new([
        [su.entry(0, 0) * phase, su.entry(0, 1) * phase],
        [su.entry(1, 0) * phase, su.entry(1, 1) * phase],
    ])
}

/// Largest componentwise deviation after aligning the global phase of `got`
/// to `want` on the largest component of `want`.
pub fn phase_aligned_distance(got: &[Complex64], want: &[Complex64]) -> f64 {
    assert_eq!(got.len(), want.len());
    let k = want
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .expect("nonempty state");
    assert!(want[k].norm() > 1e-12, "reference state is numerically zero");
    let phase = if got[k].norm() > 1e-12 { want[k] / got[k] } else { c(1.0, 0.0) };
    let phase = phase / phase.norm();
    got.iter()
        .zip(want)
        .map(|(g, w)| (g * phase - w).norm())
        .fold(0.0, f64::max)
}

/// Minimal OPENQASM 2.0 interpreter covering exactly the emitted subset:
/// one qreg, `u3` and `cx` statements. Returns the final state from |0...0>,
/// using its own index arithmetic so emitter bugs cannot cancel out.
pub fn simulate_qasm(text: &str) -> Vec<Complex64> {
    let mut n = None;
    let mut state: Vec<Complex64> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let line = line.strip_suffix(';').unwrap_or_else(|| panic!("line {lineno}: missing ;"));
        if let Some(rest) = line.strip_prefix("qreg q[") {
            let width: usize = rest.strip_suffix(']').unwrap().parse().unwrap();
            n = Some(width);
            state = basis_vector(width, 0);
        } else if let Some(rest) = line.strip_prefix("u3(") {
            let n = n.expect("qreg before gates");
            let (params, operand) = rest.split_once(')').unwrap();
            let angles: Vec<f64> = params
                .split(',')
                .map(|tok| parse_qasm_float(tok.trim()))
                .collect();
            let [theta, phi, lambda]: [f64; 3] = angles.try_into().unwrap();
            let q: usize = operand.trim().strip_prefix("q[").unwrap().strip_suffix(']').unwrap().parse().unwrap();
            let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let m = [
                [c(ct, 0.0), -Complex64::from_polar(st, lambda)],
                [Complex64::from_polar(st, phi), Complex64::from_polar(ct, phi + lambda)],
            ];
            let pos = n - 1 - q;
            let mut next = vec![c(0.0, 0.0); state.len()];
            for (i, &a) in state.iter().enumerate() {
                let b = (i >> pos) & 1;
                let i0 = i & !(1usize << pos);
                next[i0] += m[0][b] * a;
                next[i0 | (1 << pos)] += m[1][b] * a;
            }
            state = next;
        } else if let Some(rest) = line.strip_prefix("cx ") {
            let n = n.expect("qreg before gates");
            let (a, b) = rest.split_once(',').unwrap();
            let parse_q = |tok: &str| -> usize {
                tok.trim().strip_prefix("q[").unwrap().strip_suffix(']').unwrap().parse().unwrap()
            };
            let (control, target) = (parse_q(a), parse_q(b));
            let (cp, tp) = (n - 1 - control, n - 1 - target);
            let mut next = vec![c(0.0, 0.0); state.len()];
            for (i, &a) in state.iter().enumerate() {
                let j = if (i >> cp) & 1 == 1 { i ^ (1 << tp) } else { i };
                next[j] += a;
            }
            state = next;
        } else {
            panic!("line {lineno}: unsupported statement {line:?}");
        }
    }
    state
}

fn parse_qasm_float(tok: &str) -> f64 {
    match tok {
        "pi" => std::f64::consts::PI,
        "-pi" => -std::f64::consts::PI,
        other => other.parse().unwrap_or_else(|_| panic!("bad float {other:?}")),
    }
}
