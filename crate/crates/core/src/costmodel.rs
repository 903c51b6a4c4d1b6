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

//! Closed-form CNOT cost predictions and reference costs.
//!
//! A weight-t entry of the one-ancilla algorithm lowers to exactly 8t-4
//! CNOTs (2t pattern loads and unloads plus a 6t-4 control ladder), and the
//! final entry skips its unload, so a dataset with weight census mu costs
//! `sum_t mu_t (8t-4) - t_max` CNOTs. All arithmetic is exact u128 with
//! overflow checks; widths up to 64 bits are supported.

use serde::Serialize;

use crate::circuit::GateCounts;
use crate::stateprep::PatternStats;
use crate::Algorithm;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CostError {
    #[error("pattern width {n} outside the supported range 1..=64")]
    BadWidth { n: usize },
    #[error("cost arithmetic overflowed u128")]
    Overflow,
    #[error("predicted {predicted} CNOTs but the lowered circuit has {empirical}")]
    PredictionMismatch { predicted: u128, empirical: u128 },
}

fn checked_sum<I: IntoIterator<Item = u128>>(terms: I) -> Result<u128, CostError> {
    let mut acc: u128 = 0;
    for t in terms {
        acc = acc.checked_add(t).ok_or(CostError::Overflow)?;
    }
    Ok(acc)
}

/// Exact CNOT count of the lowered one-ancilla circuit for a dataset with
/// the given weight census: `sum_t mu_t (8t-4) - t_max`. Zero-weight entries
/// cost no CNOTs and do not appear in the census.
pub fn cvo_sparse_count(stats: &PatternStats) -> u128 {
    let sum: u128 = stats
        .weight_counts
        .iter()
        .map(|(&t, &mu)| (mu as u128) * (8 * t as u128 - 4))
        .sum();
    sum - stats.t_max as u128
}

fn binomial(n: usize, k: usize) -> Result<u128, CostError> {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k {
        // numerator factors arrive in an order that keeps c integral
        c = c
            .checked_mul((n - k + i) as u128)
            .ok_or(CostError::Overflow)?
            / i as u128;
    }
    Ok(c)
}

/// CNOT count for preparing a dense state on n qubits with the one-ancilla
/// algorithm, every pattern present: `sum_{t=1}^{n} C(n,t)(8t-4) - n`.
pub fn cvo_dense_count(n: usize) -> Result<u128, CostError> {
    if n == 0 || n > 64 {
        return Err(CostError::BadWidth { n });
    }
    let total = checked_sum(
        (1..=n).map(|t| binomial(n, t).map(|c| c * (8 * t as u128 - 4))).collect::<Result<
            Vec<_>,
            _,
        >>()?,
    )?;
    Ok(total - n as u128)
}

/// Variant of [`cvo_dense_count`] charging `8t-2` per weight-t pattern.
/// Some cost tabulations use this constant; the constructive lowering in
/// this crate achieves `8t-4`, which [`cvo_dense_count`] reflects. Kept for
/// side-by-side comparison only.
pub fn cvo_dense_count_alternate(n: usize) -> Result<u128, CostError> {
    if n == 0 || n > 64 {
        return Err(CostError::BadWidth { n });
    }
    let total = checked_sum(
        (1..=n).map(|t| binomial(n, t).map(|c| c * (8 * t as u128 - 2))).collect::<Result<
            Vec<_>,
            _,
        >>()?,
    )?;
    Ok(total - n as u128)
}

/// Published closed-form CNOT costs of other preparation methods, evaluated
/// at width n. The `*_bound` fields are strict upper bounds rather than exact
/// counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceTable {
    /// Two-qubit-ancilla baseline: `2^n (8n-2)`.
    pub cvqram: u128,
    /// Flip-flop addressing scheme: `2^n (6n-4)`.
    pub ffqram: u128,
    /// Binary-tree angle scheme: `2^{n+1} - 2n`.
    pub sql: u128,
    /// Uniformly controlled rotations: `2^{n+2} - 4n - 4`.
    pub mottonen: u128,
    /// Unitary gate decomposition, upper bound `23/24 * 2^n`.
    pub ugd_bound: f64,
    /// Isometry-based preparation, upper bound `23/32 * 2^n`.
    pub isometry_bound: f64,
}

pub fn reference_counts(n: usize) -> Result<ReferenceTable, CostError> {
    if n == 0 || n > 64 {
        return Err(CostError::BadWidth { n });
    }
    let pow = 1u128 << n;
    let nn = n as u128;
    Ok(ReferenceTable {
        cvqram: pow.checked_mul(8 * nn - 2).ok_or(CostError::Overflow)?,
        ffqram: pow.checked_mul(6 * nn - 4).ok_or(CostError::Overflow)?,
        sql: 2 * pow - 2 * nn,
        mottonen: 4 * pow - 4 * nn - 4,
        ugd_bound: 23.0 / 24.0 * pow as f64,
        isometry_bound: 23.0 / 32.0 * pow as f64,
    })
}

/// Classical preprocessing cost proxy, `M ceil(log2 M) + n M` steps. Used
/// only for scaling assertions, never for wall-clock claims.
pub fn classical_cost_estimate(n: usize, m: usize) -> u128 {
    let m128 = m as u128;
    let log = if m <= 1 { 0 } else { 128 - (m128 - 1).leading_zeros() };
    m128 * log as u128 + n as u128 * m128
}

/// Reconciliation of an analytic CNOT prediction with a lowered circuit.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub cnot: usize,
    pub single_qubit: usize,
    /// Analytic CNOT count; absent for algorithms without a closed form.
    pub predicted_cnot: Option<u128>,
    pub references: ReferenceTable,
}

impl CostReport {
    /// Builds the report, enforcing that a one-ancilla prediction agrees
    /// with the measured count exactly.
    pub fn build(
        algorithm: Algorithm,
        n: usize,
        m: usize,
        counts: &GateCounts,
        predicted_cnot: Option<u128>,
    ) -> Result<Self, CostError> {
        if algorithm == Algorithm::Cvoqram {
            let predicted = predicted_cnot.expect("one-ancilla synthesis always has a prediction");
            if predicted != counts.cnot as u128 {
                return Err(CostError::PredictionMismatch {
                    predicted,
                    empirical: counts.cnot as u128,
                });
            }
        }
        Ok(Self {
            algorithm: algorithm.name().to_owned(),
            n,
            m,
            cnot: counts.cnot,
            single_qubit: counts.single_qubit,
            predicted_cnot,
            references: reference_counts(n)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn stats(pairs: &[(usize, usize)], t_max: usize) -> PatternStats {
        PatternStats { weight_counts: BTreeMap::from_iter(pairs.iter().copied()), t_max }
    }

    #[test]
    fn sparse_count_examples() {
        assert_eq!(cvo_sparse_count(&stats(&[(1, 1)], 1)), 3);
        assert_eq!(cvo_sparse_count(&stats(&[(2, 1)], 2)), 10);
        assert_eq!(cvo_sparse_count(&stats(&[], 0)), 0);
        // census with a zero-weight entry alongside weighted ones
        assert_eq!(cvo_sparse_count(&stats(&[(1, 2), (3, 1)], 3)), 2 * 4 + 20 - 3);
    }

    #[test]
    fn dense_count_examples_and_closed_form() {
        assert_eq!(cvo_dense_count(1).unwrap(), 3);
        assert_eq!(cvo_dense_count(2).unwrap(), 18);
        assert_eq!(cvo_dense_count(3).unwrap(), 65);
        // independent closed form of the sum: 2^{n+2}(n-1) + 4 - n
        for n in 1..=30usize {
            let closed = (1u128 << (n + 2)) * (n as u128 - 1) + 4 - n as u128;
            assert_eq!(cvo_dense_count(n).unwrap(), closed, "n={n}");
        }
        assert_eq!(cvo_dense_count(0).unwrap_err(), CostError::BadWidth { n: 0 });
        assert_eq!(cvo_dense_count(65).unwrap_err(), CostError::BadWidth { n: 65 });
        assert!(cvo_dense_count(64).is_ok());
    }

    #[test]
    fn alternate_accounting_is_higher() {
        assert_eq!(cvo_dense_count_alternate(3).unwrap(), 79);
        for n in 1..=16 {
            // exactly 2(2^n - 1) more: two extra CNOTs per nonzero-weight pattern
            let d = cvo_dense_count(n).unwrap();
            let a = cvo_dense_count_alternate(n).unwrap();
            assert_eq!(a - d, 2 * ((1u128 << n) - 1), "n={n}");
        }
    }

    #[test]
    fn dense_equals_sparse_over_full_pattern_set() {
        for n in 1..=10usize {
            let mut weight_counts = BTreeMap::new();
            for t in 1..=n {
                weight_counts.insert(t, binomial(n, t).unwrap() as usize);
            }
            let s = cvo_sparse_count(&PatternStats { weight_counts, t_max: n });
            // the full set's final entry has weight n, the sparse law subtracts
            // t_max = n, matching the dense formula's -n term
            assert_eq!(s, cvo_dense_count(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn reference_values_at_width_three() {
        let r = reference_counts(3).unwrap();
        assert_eq!(r.cvqram, 176);
        assert_eq!(r.ffqram, 112);
        assert_eq!(r.sql, 10);
        assert_eq!(r.mottonen, 16);
        assert!((r.ugd_bound - 23.0 / 3.0).abs() < 1e-12);
        assert!((r.isometry_bound - 23.0 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn dense_dominates_references() {
        for n in 2..=16usize {
            let d = cvo_dense_count(n).unwrap();
            let r = reference_counts(n).unwrap();
            assert!(d < r.cvqram, "n={n}");
            assert!(d < r.ffqram, "n={n}");
        }
    }

    #[test]
    fn classical_estimate_examples() {
        assert_eq!(classical_cost_estimate(4, 1), 4);
        assert_eq!(classical_cost_estimate(4, 8), 24 + 32);
        assert_eq!(classical_cost_estimate(3, 5), 5 * 3 + 15);
        // doubling M grows the proxy by less than 2.2x once M >= 16; the
        // ratio is 2(ceil(log2 2M) + n)/(ceil(log2 M) + n), which sits at
        // the 2.2 boundary for small n, so test comfortably inside it
        for m in [16usize, 32, 100, 1000] {
            let a = classical_cost_estimate(8, m) as f64;
            let b = classical_cost_estimate(8, 2 * m) as f64;
            assert!(b / a < 2.2, "m={m}");
        }
    }

    #[test]
    fn report_enforces_prediction() {
        let counts = GateCounts { cnot: 10, single_qubit: 4, other: 0 };
        let ok =
            CostReport::build(Algorithm::Cvoqram, 2, 2, &counts, Some(10)).unwrap();
        assert_eq!(ok.predicted_cnot, Some(10));
        assert_eq!(ok.references.cvqram, 4 * 14);
        let err = CostReport::build(Algorithm::Cvoqram, 2, 2, &counts, Some(11)).unwrap_err();
        assert_eq!(err, CostError::PredictionMismatch { predicted: 11, empirical: 10 });
        // the baseline has no closed form; any measured count passes
        let ok = CostReport::build(Algorithm::Cvqram, 2, 2, &counts, None).unwrap();
        assert_eq!(ok.predicted_cnot, None);

        // u128 reference values serialize as plain JSON integers
        let text = serde_json::to_string(&ok).unwrap();
        assert!(text.contains("\"cvqram\":56"));
    }
}
