/* Copyright 2026 The qsprep Developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 *
 * Generated by cbindgen from the qsprep-capi crate; do not edit by hand.
 */

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Algorithm selector accepted by synthesis entry points.
 */
#define QSP_ALGORITHM_CVOQRAM 0

/**
 * Algorithm selector for the flagged baseline route.
 */
#define QSP_ALGORITHM_CVQRAM 1

/**
 * Status code returned by every fallible function.
 */
typedef enum QspStatus {
  QSP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QSP_STATUS_NULL_ARGUMENT = 1,
  /**
   * A scalar argument was out of range (bad algorithm id, bad UTF-8, ...).
   */
  QSP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Dataset JSON or circuit text was rejected.
   */
  QSP_STATUS_PARSE_FAILED = 3,
  QSP_STATUS_SYNTHESIS_FAILED = 4,
  QSP_STATUS_LOWERING_FAILED = 5,
  QSP_STATUS_SIMULATION_FAILED = 6,
  /**
   * The prepared state missed the dataset beyond tolerance.
   */
  QSP_STATUS_VERIFICATION_FAILED = 7,
  /**
   * A count does not fit the 64-bit out-parameter.
   */
  QSP_STATUS_OVERFLOW = 8,
  /**
   * The caller's buffer is smaller than the required length.
   */
  QSP_STATUS_BUFFER_TOO_SMALL = 9,
  /**
   * An internal invariant failed; the library state is still consistent.
   */
  QSP_STATUS_PANIC = 10,
} QspStatus;

/**
 * Opaque circuit handle.
 */
typedef struct QspCircuit QspCircuit;

/**
 * Opaque validated dataset handle.
 */
typedef struct QspDataset QspDataset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string; never freed.
 */
const char *qsp_version(void);

/**
 * Description of the most recent failure on this thread. Valid until the
 * next failing call on the same thread; never freed by the caller.
 */
const char *qsp_last_error_message(void);

/**
 * Releases a string produced by this library. Accepts null.
 *
 * # Safety
 * `s` must come from a `qsp_*` out-parameter and not be freed twice.
 */
void qsp_string_free(char *s);

/**
 * Parses dataset JSON (`{"n": ..., "entries": [{"p", "re", "im"}, ...]}`).
 * With `renormalize` the amplitudes are rescaled to unit mass; otherwise a
 * squared-norm deviation beyond 1e-8 is rejected.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` must be writable.
 */
enum QspStatus qsp_dataset_parse_json(const char *json, bool renormalize, struct QspDataset **out);

/**
 * Generates a random dataset: `patterns` distinct `n`-bit patterns with the
 * given ones density, deterministic in `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QspStatus qsp_dataset_generate(uintptr_t n,
                                    uintptr_t patterns,
                                    double density,
                                    uint64_t seed,
                                    struct QspDataset **out);

/**
 * Serializes the dataset back to JSON. Release the string with
 * [`qsp_string_free`].
 *
 * # Safety
 * `dataset` must be a live handle; `out` must be writable.
 */
enum QspStatus qsp_dataset_to_json(const struct QspDataset *dataset, char **out);

/**
 * Pattern width in bits; 0 if `dataset` is null.
 *
 * # Safety
 * `dataset` must be a live handle or null.
 */
uintptr_t qsp_dataset_width(const struct QspDataset *dataset);

/**
 * Number of nonzero entries; 0 if `dataset` is null.
 *
 * # Safety
 * `dataset` must be a live handle or null.
 */
uintptr_t qsp_dataset_entry_count(const struct QspDataset *dataset);

/**
 * Releases a dataset handle. Accepts null.
 *
 * # Safety
 * `dataset` must come from this library and not be freed twice.
 */
void qsp_dataset_free(struct QspDataset *dataset);

/**
 * Synthesizes a preparation circuit for the dataset. With `lower` the
 * result contains only CNOT and single-qubit gates.
 *
 * # Safety
 * `dataset` must be a live handle; `out` must be writable.
 */
enum QspStatus qsp_synthesize(const struct QspDataset *dataset,
                              uint32_t algorithm,
                              bool lower,
                              struct QspCircuit **out);

/**
 * Parses the plain-text circuit format produced by
 * [`qsp_circuit_emit_text`].
 *
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be writable.
 */
enum QspStatus qsp_circuit_parse_text(const char *text, struct QspCircuit **out);

/**
 * Emits the plain-text circuit format. Release with [`qsp_string_free`].
 *
 * # Safety
 * `circuit` must be a live handle; `out` must be writable.
 */
enum QspStatus qsp_circuit_emit_text(const struct QspCircuit *circuit, char **out);

/**
 * Emits OPENQASM 2.0; the circuit must be fully lowered. Release with
 * [`qsp_string_free`].
 *
 * # Safety
 * `circuit` must be a live handle; `out` must be writable.
 */
enum QspStatus qsp_circuit_emit_qasm2(const struct QspCircuit *circuit, char **out);

/**
 * Total qubit count (rotation ancilla + flag + memory + work); 0 on null.
 *
 * # Safety
 * `circuit` must be a live handle or null.
 */
uintptr_t qsp_circuit_qubit_count(const struct QspCircuit *circuit);

/**
 * Number of gates; 0 on null.
 *
 * # Safety
 * `circuit` must be a live handle or null.
 */
uintptr_t qsp_circuit_gate_count(const struct QspCircuit *circuit);

/**
 * True when only CNOT and single-qubit gates remain; false on null.
 *
 * # Safety
 * `circuit` must be a live handle or null.
 */
bool qsp_circuit_is_lowered(const struct QspCircuit *circuit);

/**
 * Writes the CNOT / single-qubit / other gate counts.
 *
 * # Safety
 * `circuit` must be a live handle; the three out-pointers must be writable.
 */
enum QspStatus qsp_circuit_counts(const struct QspCircuit *circuit,
                                  uint64_t *out_cnot,
                                  uint64_t *out_single_qubit,
                                  uint64_t *out_other);

/**
 * Releases a circuit handle. Accepts null.
 *
 * # Safety
 * `circuit` must come from this library and not be freed twice.
 */
void qsp_circuit_free(struct QspCircuit *circuit);

/**
 * Closed-form CNOT count for the weighted route on this dataset. Fails with
 * `QSP_STATUS_INVALID_ARGUMENT` for algorithms without a count law and
 * `QSP_STATUS_OVERFLOW` when the count exceeds 64 bits.
 *
 * # Safety
 * `dataset` must be a live handle; `out` must be writable.
 */
enum QspStatus qsp_predicted_cnot_count(const struct QspDataset *dataset,
                                        uint32_t algorithm,
                                        uint64_t *out);

/**
 * Amplitude vector length of a full simulation of this circuit, or 0 when
 * the circuit is wider than the simulator cap (24 qubits) or null.
 *
 * # Safety
 * `circuit` must be a live handle or null.
 */
uintptr_t qsp_circuit_state_len(const struct QspCircuit *circuit);

/**
 * Simulates the circuit from the all-zeros state and writes the final
 * amplitudes as interleaved re/im pairs. `capacity` is the length of
 * `out_interleaved` in doubles and must be at least
 * `2 * qsp_circuit_state_len(circuit)`.
 *
 * # Safety
 * `circuit` must be a live handle; `out_interleaved` must point to at least
 * `capacity` writable doubles.
 */
enum QspStatus qsp_simulate(const struct QspCircuit *circuit,
                            double *out_interleaved,
                            uintptr_t capacity);

/**
 * Synthesizes, lowers, simulates, and compares against the dataset. Writes
 * the memory-block distance and ancilla leak whenever the pipeline reaches
 * simulation, then returns OK exactly when distance <= 1e-9 and
 * leak < 1e-12.
 *
 * # Safety
 * `dataset` must be a live handle; the out-pointers must be writable.
 */
enum QspStatus qsp_verify(const struct QspDataset *dataset,
                          uint32_t algorithm,
                          double *out_distance,
                          double *out_leak);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
