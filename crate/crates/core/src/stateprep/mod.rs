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

//! Datasets and the synthesis building blocks shared by both algorithms.
//!
//! A [`Dataset`] is a list of distinct n-bit address patterns with nonzero
//! complex amplitudes of unit total mass. Synthesis walks the entries while a
//! [`GammaTracker`] accounts for the probability mass still parked on the
//! processing branch; [`amplitude_rotation`] builds the 2x2 unitary that peels
//! off exactly one entry's amplitude.

mod cvoqram;
mod cvqram;

pub use cvoqram::{cvoqram_synthesize, cvoqram_synthesize_with, CvoqramOptions};
pub use cvqram::cvqram_synthesize;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitError, Matrix2};
use crate::tol::{GAMMA_FLOOR, MASS_SLACK, NORMALIZATION_TOL};

/// Fixed-width bit string addressing one basis state of the memory register.
///
/// Bit 0 is the leftmost character of the textual form and lives on the lowest
/// memory qubit, which is the most significant position of the basis index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    bits: Box<[u8]>,
}

impl Pattern {
    /// Parses a string of `0`/`1` characters; `None` on any other character.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return None,
            }
        }
        Some(Self { bits: bits.into_boxed_slice() })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits[j] == 1
    }

    /// Number of one bits.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Indices of the one bits, ascending.
    pub fn one_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b == 1).map(|(j, _)| j)
    }

    /// Basis index of the pattern with bit 0 as the most significant bit.
    /// Only meaningful for widths that fit a `usize` index space.
    pub fn basis_index(&self) -> usize {
        debug_assert!(self.len() < usize::BITS as usize);
        self.bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One amplitude/address pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DataEntry {
    pub amplitude: Complex64,
    pub pattern: Pattern,
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("pattern width must be at least 1")]
    ZeroWidth,
    #[error("entry {index} pattern {pattern:?} has length {got}, expected {expected}")]
    LengthMismatch { index: usize, pattern: String, expected: usize, got: usize },
    #[error("entry {index} pattern {pattern:?} contains characters other than 0/1")]
    InvalidPattern { index: usize, pattern: String },
    #[error("pattern {pattern:?} appears more than once")]
    DuplicatePattern { pattern: String },
    #[error("dataset has no nonzero-amplitude entries")]
    EmptyDataset,
    #[error("squared amplitudes sum to {norm_sqr} rather than 1 (tolerance {tol:.0e})")]
    NotNormalized { norm_sqr: f64, tol: f64 },
    #[error("invalid dataset JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Result of dataset ingestion: the validated dataset plus how many
/// zero-amplitude entries were silently discarded.
#[derive(Debug, Clone)]
pub struct LoadOutcome {
    pub dataset: Dataset,
    pub dropped_zero: usize,
}

#[derive(Serialize, Deserialize)]
struct DatasetDoc {
    n: usize,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    p: String,
    re: f64,
    im: f64,
}

/// Validated sparse description of the target state.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    entries: Vec<DataEntry>,
}

impl Dataset {
    /// Validates raw `(amplitude, pattern)` rows. Zero-amplitude rows are
    /// dropped (their rotation would be the identity); the number of dropped
    /// rows is reported in the outcome. With `renormalize` the amplitudes are
    /// scaled to unit mass, otherwise a squared-norm deviation beyond
    /// [`NORMALIZATION_TOL`] is an error.
    pub fn load<I>(n: usize, rows: I, renormalize: bool) -> Result<LoadOutcome, DatasetError>
    where
        I: IntoIterator<Item = (Complex64, String)>,
    {
        if n == 0 {
            return Err(DatasetError::ZeroWidth);
        }
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        let mut dropped_zero = 0usize;
        for (index, (amplitude, text)) in rows.into_iter().enumerate() {
            if text.len() != n {
                let got = text.chars().count();
                return Err(DatasetError::LengthMismatch { index, pattern: text, expected: n, got });
            }
            let pattern = Pattern::parse(&text)
                .ok_or(DatasetError::InvalidPattern { index, pattern: text.clone() })?;
            if !seen.insert(pattern.clone()) {
                return Err(DatasetError::DuplicatePattern { pattern: text });
            }
            if amplitude == Complex64::new(0.0, 0.0) {
                dropped_zero += 1;
                continue;
            }
            entries.push(DataEntry { amplitude, pattern });
        }
        if entries.is_empty() {
            return Err(DatasetError::EmptyDataset);
        }
        let norm_sqr: f64 = entries.iter().map(|e| e.amplitude.norm_sqr()).sum();
        if renormalize {
            let scale = 1.0 / norm_sqr.sqrt();
            for e in &mut entries {
                e.amplitude *= scale;
            }
        } else if (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(DatasetError::NotNormalized { norm_sqr, tol: NORMALIZATION_TOL });
        }
        Ok(LoadOutcome { dataset: Dataset { n, entries }, dropped_zero })
    }

    pub fn from_json_str(src: &str, renormalize: bool) -> Result<LoadOutcome, DatasetError> {
        let doc: DatasetDoc = serde_json::from_str(src)?;
        Self::load(
            doc.n,
            doc.entries.into_iter().map(|e| (Complex64::new(e.re, e.im), e.p)),
            renormalize,
        )
    }

    pub fn to_json_string(&self) -> String {
        let doc = DatasetDoc {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    p: e.pattern.to_string(),
                    re: e.amplitude.re,
                    im: e.amplitude.im,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("dataset serialization cannot fail")
    }

    /// Pattern width in bits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[DataEntry] {
        &self.entries
    }
}

/// Returns the dataset with entries sorted by ascending Hamming weight,
/// ties broken by lexicographic pattern order. Already-sorted input is
/// returned unchanged; the order is total, so the result is unique.
pub fn order_patterns(d: &Dataset) -> Dataset {
    let mut out = d.clone();
    out.entries.sort_by(|a, b| {
        (a.pattern.weight(), &a.pattern).cmp(&(b.pattern.weight(), &b.pattern))
    });
    out
}

/// Hamming-weight census of a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternStats {
    /// `weight -> entry count`, weights >= 1 only.
    pub weight_counts: BTreeMap<usize, usize>,
    /// Largest weight present, 0 when only the all-zero pattern exists.
    pub t_max: usize,
}

pub fn pattern_stats(d: &Dataset) -> PatternStats {
    let mut weight_counts = BTreeMap::new();
    let mut t_max = 0usize;
    for e in d.entries() {
        let t = e.pattern.weight();
        t_max = t_max.max(t);
        if t >= 1 {
            *weight_counts.entry(t).or_insert(0) += 1;
        }
    }
    PatternStats { weight_counts, t_max }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RotationError {
    #[error("remaining mass {gamma:.3e} at step {step} is at or below the floor {floor:.0e}")]
    GammaUnderflow { gamma: f64, step: usize, floor: f64 },
    #[error(
        "squared amplitude {norm_sqr:.17e} at step {step} exceeds remaining mass {gamma:.17e}"
    )]
    AmplitudeExceedsGamma { norm_sqr: f64, gamma: f64, step: usize },
}

/// Probability mass still on the processing branch.
///
/// Starts at 1; each processed entry subtracts its squared amplitude. For a
/// unit-mass dataset the tracker telescopes to 0 after the final entry.
#[derive(Debug, Clone)]
pub struct GammaTracker {
    gamma: f64,
    step: usize,
}

impl Default for GammaTracker {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaTracker {
    pub fn new() -> Self {
        Self { gamma: 1.0, step: 0 }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Entries consumed so far.
    pub fn step(&self) -> usize {
        self.step
    }

    /// Consumes one entry's amplitude. Small negative excursions from
    /// floating-point cancellation are clamped to zero; a genuine overdraw is
    /// an error.
    pub fn advance(&mut self, amplitude: Complex64) -> Result<(), RotationError> {
        let norm_sqr = amplitude.norm_sqr();
        let next = self.gamma - norm_sqr;
        if next < -MASS_SLACK {
            return Err(RotationError::AmplitudeExceedsGamma {
                norm_sqr,
                gamma: self.gamma,
                step: self.step,
            });
        }
        self.gamma = next.max(0.0);
        self.step += 1;
        Ok(())
    }
}

/// The 2x2 unitary that moves amplitude `x` off a processing branch holding
/// squared mass `gamma`:
///
/// ```text
/// [[ a,          x/sqrt(gamma) ]
///  [ -x*/sqrt(gamma),        a ]]    with a = sqrt((gamma - |x|^2)/gamma)
/// ```
///
/// When `|x|^2` reaches `gamma` (within [`MASS_SLACK`] relative slack) the
/// matrix is snapped to the exact flip `[[0, e^{i arg x}], [-e^{-i arg x}, 0]]`
/// so the final entry empties the branch exactly.
pub fn amplitude_rotation(x: Complex64, gamma: f64) -> Result<Matrix2, RotationError> {
    amplitude_rotation_at(x, gamma, 0)
}

/// [`amplitude_rotation`] with the entry index for error reporting.
pub fn amplitude_rotation_at(
    x: Complex64,
    gamma: f64,
    step: usize,
) -> Result<Matrix2, RotationError> {
    if gamma <= GAMMA_FLOOR {
        return Err(RotationError::GammaUnderflow { gamma, step, floor: GAMMA_FLOOR });
    }
    let s = x / gamma.sqrt();
    let ratio = s.norm_sqr();
    if ratio > 1.0 + MASS_SLACK {
        return Err(RotationError::AmplitudeExceedsGamma {
            norm_sqr: x.norm_sqr(),
            gamma,
            step,
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    if ratio >= 1.0 {
        let phase = s / s.norm();
        return Ok(Matrix2::new([[zero, phase], [-phase.conj(), zero]]));
    }
    let a = Complex64::new((1.0 - ratio).sqrt(), 0.0);
    Ok(Matrix2::new([[a, s], [-s.conj(), a]]))
}

/// Synthesis failures: a rotation could not be built or a gate was rejected
/// by the circuit validator.
#[derive(Debug, thiserror::Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
