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

//! Seeded random dataset generation.
//!
//! Patterns are drawn as i.i.d. Bernoulli(density) bit strings with whole
//! pattern resampling on duplicates; amplitudes are complex standard normal
//! draws normalized to unit mass. Everything is a pure function of the
//! parameters, so equal seeds give byte-identical datasets. The generator is
//! splittable through [`mix_seed`], which derives independent stream seeds
//! from a master seed and a tuple of context words.

use num_complex::Complex64;

use crate::stateprep::Dataset;

/// SplitMix64 (Steele, Lea, and Flood's 2014 odds-and-evens generator): a
/// 64-bit state advanced by the golden-ratio increment and finished with a
/// variance-maximizing avalanche. Chosen for its one-word state, trivially
/// splittable seeding, and well-studied statistical quality.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform double in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in (0, 1], safe as a logarithm argument.
    fn next_f64_open_zero(&mut self) -> f64 {
        (((self.next_u64() >> 11) | 1) as f64) * (1.0 / (1u64 << 53) as f64)
    }

    /// One standard-normal pair via the Box-Muller transform.
    fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64_open_zero();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let phi = std::f64::consts::TAU * u2;
        (r * phi.cos(), r * phi.sin())
    }
}

/// Derives an independent stream seed from a master seed and context words.
/// Each word is folded into the state through a full SplitMix64 step, so
/// nearby contexts give unrelated streams.
pub fn mix_seed(seed: u64, words: &[u64]) -> u64 {
    let mut acc = SplitMix64::new(seed).next_u64();
    for &w in words {
        acc = SplitMix64::new(acc ^ w).next_u64();
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetParams {
    /// Pattern width in bits.
    pub n: usize,
    /// Number of distinct patterns to draw.
    pub m: usize,
    /// Bernoulli probability of each bit being 1.
    pub density: f64,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GenError {
    #[error("pattern width must be at least 1")]
    ZeroWidth,
    #[error("at least one pattern is required")]
    ZeroPatterns,
    #[error("cannot draw {m} distinct patterns of width {n}")]
    TooManyPatterns { m: usize, n: usize },
    #[error("ones density {density} outside (0, 1)")]
    BadDensity { density: f64 },
    #[error("gave up drawing distinct patterns after {attempts} resamples")]
    ResampleBudget { attempts: usize },
}

const RESAMPLE_BUDGET: usize = 1_000_000;

/// Draws a random dataset. The result is fully determined by `params`.
pub fn generate_dataset(params: &DatasetParams) -> Result<Dataset, GenError> {
    let DatasetParams { n, m, density, seed } = *params;
    if n == 0 {
        return Err(GenError::ZeroWidth);
    }
    if m == 0 {
        return Err(GenError::ZeroPatterns);
    }
    if n < usize::BITS as usize && m > (1usize << n) {
        return Err(GenError::TooManyPatterns { m, n });
    }
    if !(density > 0.0 && density < 1.0) {
        return Err(GenError::BadDensity { density });
    }

    let mut rng = SplitMix64::new(seed);
    let mut patterns: Vec<String> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut attempts = 0usize;
    while patterns.len() < m {
        let mut bits = String::with_capacity(n);
        for _ in 0..n {
            bits.push(if rng.next_f64() < density { '1' } else { '0' });
        }
        if seen.insert(bits.clone()) {
            patterns.push(bits);
        } else {
            attempts += 1;
            if attempts >= RESAMPLE_BUDGET {
                return Err(GenError::ResampleBudget { attempts });
            }
        }
    }

    let mut rows = Vec::with_capacity(m);
    for pattern in patterns {
        let amplitude = loop {
            let (re, im) = rng.next_normal_pair();
            let a = Complex64::new(re, im);
            if a != Complex64::new(0.0, 0.0) {
                break a;
            }
        };
        rows.push((amplitude, pattern));
    }
    let out = Dataset::load(n, rows, true).expect("generated rows are valid by construction");
    debug_assert_eq!(out.dropped_zero, 0);
    Ok(out.dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        // first outputs for seed 1234567, from the published reference code
        let mut rng = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(got, vec![6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn uniform_doubles_are_in_range() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..1000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
            let y = rng.next_f64_open_zero();
            assert!(y > 0.0 && y <= 1.0);
        }
    }

    #[test]
    fn mix_seed_separates_contexts() {
        let a = mix_seed(7, &[1, 2, 3]);
        let b = mix_seed(7, &[1, 2, 4]);
        let c = mix_seed(8, &[1, 2, 3]);
        assert_ne!(a, b);
        assert_ne!(a, c);
        // stable across calls
        assert_eq!(a, mix_seed(7, &[1, 2, 3]));
    }

    #[test]
    fn generation_is_deterministic() {
        let params = DatasetParams { n: 12, m: 16, density: 0.3, seed: 99 };
        let a = generate_dataset(&params).unwrap();
        let b = generate_dataset(&params).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        let c = generate_dataset(&DatasetParams { seed: 100, ..params }).unwrap();
        assert_ne!(a.to_json_string(), c.to_json_string());
    }

    #[test]
    fn full_support_forces_every_pattern() {
        let params = DatasetParams { n: 3, m: 8, density: 0.5, seed: 5 };
        let d = generate_dataset(&params).unwrap();
        assert_eq!(d.len(), 8);
        let mut seen: Vec<usize> =
            d.entries().iter().map(|e| e.pattern.basis_index()).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
        let norm: f64 = d.entries().iter().map(|e| e.amplitude.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parameter_validation() {
        let base = DatasetParams { n: 4, m: 4, density: 0.5, seed: 0 };
        assert_eq!(
            generate_dataset(&DatasetParams { n: 0, ..base }).unwrap_err(),
            GenError::ZeroWidth
        );
        assert_eq!(
            generate_dataset(&DatasetParams { m: 0, ..base }).unwrap_err(),
            GenError::ZeroPatterns
        );
        assert_eq!(
            generate_dataset(&DatasetParams { m: 17, ..base }).unwrap_err(),
            GenError::TooManyPatterns { m: 17, n: 4 }
        );
        assert_eq!(
            generate_dataset(&DatasetParams { density: 0.0, ..base }).unwrap_err(),
            GenError::BadDensity { density: 0.0 }
        );
        assert_eq!(
            generate_dataset(&DatasetParams { density: 1.0, ..base }).unwrap_err(),
            GenError::BadDensity { density: 1.0 }
        );
    }

    #[test]
    fn ones_density_tracks_parameter() {
        // 100 seeds, n=20, M=16: mean ones per pattern is Binomial(n, p)
        // averaged over 1600 samples; check a 3 sigma band.
        let (n, m, p) = (20usize, 16usize, 0.2f64);
        let mut total_ones = 0usize;
        for seed in 0..100u64 {
            let d = generate_dataset(&DatasetParams { n, m, density: p, seed }).unwrap();
            total_ones += d.entries().iter().map(|e| e.pattern.weight()).sum::<usize>();
        }
        let samples = (100 * m * n) as f64;
        let mean = total_ones as f64 / samples;
        let sigma = (p * (1.0 - p) / samples).sqrt();
        assert!((mean - p).abs() < 3.0 * sigma, "mean {mean} vs {p} (sigma {sigma})");
    }
}
