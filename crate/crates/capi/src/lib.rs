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

//! C ABI for the state-preparation toolkit.
//!
//! Conventions shared by every function:
//! - Fallible calls return [`QspStatus`]; `QSP_STATUS_OK` is 0. Out-parameters
//!   are written only on success, except the verification metrics, which are
//!   written whenever they were computed.
//! - Handles (`QspDataset`, `QspCircuit`) are created and released by this
//!   library only; release with the matching `qsp_*_free`. Free functions
//!   accept null.
//! - Strings returned through out-parameters are owned by the caller and are
//!   released with [`qsp_string_free`].
//! - After a non-OK status, [`qsp_last_error_message`] returns a description;
//!   the pointer stays valid until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::catch_unwind;

use qsprep::circuit::Circuit;
use qsprep::costmodel::cvo_sparse_count;
use qsprep::datagen::{generate_dataset, DatasetParams};
use qsprep::decompose::lower_circuit;
use qsprep::simulator::{extract_memory, simulate, state_distance, target_state};
use qsprep::stateprep::{cvoqram_synthesize, cvqram_synthesize, pattern_stats, Dataset};
use qsprep::tol::{DEFAULT_QUBIT_CAP, LEAK_TOL, STATE_TOL};
use qsprep::Algorithm;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QspStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A scalar argument was out of range (bad algorithm id, bad UTF-8, ...).
    InvalidArgument = 2,
    /// Dataset JSON or circuit text was rejected.
    ParseFailed = 3,
    SynthesisFailed = 4,
    LoweringFailed = 5,
    SimulationFailed = 6,
    /// The prepared state missed the dataset beyond tolerance.
    VerificationFailed = 7,
    /// A count does not fit the 64-bit out-parameter.
    Overflow = 8,
    /// The caller's buffer is smaller than the required length.
    BufferTooSmall = 9,
    /// An internal invariant failed; the library state is still consistent.
    Panic = 10,
}

/// Algorithm selector accepted by synthesis entry points.
pub const QSP_ALGORITHM_CVOQRAM: u32 = 0;
/// Algorithm selector for the flagged baseline route.
pub const QSP_ALGORITHM_CVQRAM: u32 = 1;

/// Opaque validated dataset handle.
pub struct QspDataset {
    inner: Dataset,
}

/// Opaque circuit handle.
pub struct QspCircuit {
    inner: Circuit,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: QspStatus, message: impl Into<String>) -> QspStatus {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).expect("nul bytes scrubbed");
    });
    status
}

fn guarded(f: impl FnOnce() -> QspStatus + std::panic::UnwindSafe) -> QspStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(QspStatus::Panic, "internal panic"))
}

fn algorithm_from(raw: u32) -> Result<Algorithm, QspStatus> {
    match raw {
        QSP_ALGORITHM_CVOQRAM => Ok(Algorithm::Cvoqram),
        QSP_ALGORITHM_CVQRAM => Ok(Algorithm::Cvqram),
        other => Err(fail(QspStatus::InvalidArgument, format!("unknown algorithm id {other}"))),
    }
}

fn synthesize(dataset: &Dataset, algorithm: Algorithm) -> Result<Circuit, QspStatus> {
    let result = match algorithm {
        Algorithm::Cvoqram => cvoqram_synthesize(dataset),
        Algorithm::Cvqram => cvqram_synthesize(dataset),
    };
    result.map_err(|e| fail(QspStatus::SynthesisFailed, e.to_string()))
}

/// Hands a heap string to the caller.
fn export_string(text: String, out: *mut *mut c_char) -> QspStatus {
    let owned = CString::new(text.replace('\0', " ")).expect("nul bytes scrubbed");
    unsafe { *out = owned.into_raw() };
    QspStatus::Ok
}

/// Library version as a static nul-terminated string; never freed.
#[no_mangle]
pub extern "C" fn qsp_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Description of the most recent failure on this thread. Valid until the
/// next failing call on the same thread; never freed by the caller.
#[no_mangle]
pub extern "C" fn qsp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string produced by this library. Accepts null.
///
/// # Safety
/// `s` must come from a `qsp_*` out-parameter and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses dataset JSON (`{"n": ..., "entries": [{"p", "re", "im"}, ...]}`).
/// With `renormalize` the amplitudes are rescaled to unit mass; otherwise a
/// squared-norm deviation beyond 1e-8 is rejected.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_parse_json(
    json: *const c_char,
    renormalize: bool,
    out: *mut *mut QspDataset,
) -> QspStatus {
    if json.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "json and out must be non-null");
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(t) => t.to_owned(),
        Err(_) => return fail(QspStatus::InvalidArgument, "json is not valid UTF-8"),
    };
    guarded(move || match Dataset::from_json_str(&text, renormalize) {
        Ok(loaded) => {
            let handle = Box::new(QspDataset { inner: loaded.dataset });
            unsafe { *out = Box::into_raw(handle) };
            QspStatus::Ok
        }
        Err(e) => fail(QspStatus::ParseFailed, e.to_string()),
    })
}

/// Generates a random dataset: `patterns` distinct `n`-bit patterns with the
/// given ones density, deterministic in `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_generate(
    n: usize,
    patterns: usize,
    density: f64,
    seed: u64,
    out: *mut *mut QspDataset,
) -> QspStatus {
    if out.is_null() {
        return fail(QspStatus::NullArgument, "out must be non-null");
    }
    guarded(move || {
        match generate_dataset(&DatasetParams { n, m: patterns, density, seed }) {
            Ok(dataset) => {
                unsafe { *out = Box::into_raw(Box::new(QspDataset { inner: dataset })) };
                QspStatus::Ok
            }
            Err(e) => fail(QspStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Serializes the dataset back to JSON. Release the string with
/// [`qsp_string_free`].
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_to_json(
    dataset: *const QspDataset,
    out: *mut *mut c_char,
) -> QspStatus {
    if dataset.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "dataset and out must be non-null");
    }
    let json = unsafe { &(*dataset).inner }.to_json_string();
    export_string(json, out)
}

/// Pattern width in bits; 0 if `dataset` is null.
///
/// # Safety
/// `dataset` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_width(dataset: *const QspDataset) -> usize {
    if dataset.is_null() {
        return 0;
    }
    unsafe { &(*dataset).inner }.n()
}

/// Number of nonzero entries; 0 if `dataset` is null.
///
/// # Safety
/// `dataset` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_entry_count(dataset: *const QspDataset) -> usize {
    if dataset.is_null() {
        return 0;
    }
    unsafe { &(*dataset).inner }.len()
}

/// Releases a dataset handle. Accepts null.
///
/// # Safety
/// `dataset` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qsp_dataset_free(dataset: *mut QspDataset) {
    if !dataset.is_null() {
        drop(unsafe { Box::from_raw(dataset) });
    }
}

/// Synthesizes a preparation circuit for the dataset. With `lower` the
/// result contains only CNOT and single-qubit gates.
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_synthesize(
    dataset: *const QspDataset,
    algorithm: u32,
    lower: bool,
    out: *mut *mut QspCircuit,
) -> QspStatus {
    if dataset.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "dataset and out must be non-null");
    }
    let dataset = unsafe { &(*dataset).inner };
    guarded(move || {
        let algorithm = match algorithm_from(algorithm) {
            Ok(a) => a,
            Err(status) => return status,
        };
        let circuit = match synthesize(dataset, algorithm) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let circuit = if lower {
            match lower_circuit(&circuit) {
                Ok(c) => c,
                Err(e) => return fail(QspStatus::LoweringFailed, e.to_string()),
            }
        } else {
            circuit
        };
        unsafe { *out = Box::into_raw(Box::new(QspCircuit { inner: circuit })) };
        QspStatus::Ok
    })
}

/// Parses the plain-text circuit format produced by
/// [`qsp_circuit_emit_text`].
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_parse_text(
    text: *const c_char,
    out: *mut *mut QspCircuit,
) -> QspStatus {
    if text.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "text and out must be non-null");
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(t) => t.to_owned(),
        Err(_) => return fail(QspStatus::InvalidArgument, "text is not valid UTF-8"),
    };
    guarded(move || match Circuit::parse_text(&text) {
        Ok(circuit) => {
            unsafe { *out = Box::into_raw(Box::new(QspCircuit { inner: circuit })) };
            QspStatus::Ok
        }
        Err(e) => fail(QspStatus::ParseFailed, e.to_string()),
    })
}

/// Emits the plain-text circuit format. Release with [`qsp_string_free`].
///
/// # Safety
/// `circuit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_emit_text(
    circuit: *const QspCircuit,
    out: *mut *mut c_char,
) -> QspStatus {
    if circuit.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "circuit and out must be non-null");
    }
    export_string(unsafe { &(*circuit).inner }.emit_text(), out)
}

/// Emits OPENQASM 2.0; the circuit must be fully lowered. Release with
/// [`qsp_string_free`].
///
/// # Safety
/// `circuit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_emit_qasm2(
    circuit: *const QspCircuit,
    out: *mut *mut c_char,
) -> QspStatus {
    if circuit.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "circuit and out must be non-null");
    }
    match unsafe { &(*circuit).inner }.emit_qasm2() {
        Ok(text) => export_string(text, out),
        Err(e) => fail(QspStatus::InvalidArgument, e.to_string()),
    }
}

/// Total qubit count (rotation ancilla + flag + memory + work); 0 on null.
///
/// # Safety
/// `circuit` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_qubit_count(circuit: *const QspCircuit) -> usize {
    if circuit.is_null() {
        return 0;
    }
    unsafe { &(*circuit).inner }.layout().total_qubits()
}

/// Number of gates; 0 on null.
///
/// # Safety
/// `circuit` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_gate_count(circuit: *const QspCircuit) -> usize {
    if circuit.is_null() {
        return 0;
    }
    unsafe { &(*circuit).inner }.gates().len()
}

/// True when only CNOT and single-qubit gates remain; false on null.
///
/// # Safety
/// `circuit` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_is_lowered(circuit: *const QspCircuit) -> bool {
    if circuit.is_null() {
        return false;
    }
    unsafe { &(*circuit).inner }.is_lowered()
}

/// Writes the CNOT / single-qubit / other gate counts.
///
/// # Safety
/// `circuit` must be a live handle; the three out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_counts(
    circuit: *const QspCircuit,
    out_cnot: *mut u64,
    out_single_qubit: *mut u64,
    out_other: *mut u64,
) -> QspStatus {
    if circuit.is_null() || out_cnot.is_null() || out_single_qubit.is_null() || out_other.is_null()
    {
        return fail(QspStatus::NullArgument, "circuit and out-pointers must be non-null");
    }
    let counts = unsafe { &(*circuit).inner }.gate_counts();
    unsafe {
        *out_cnot = counts.cnot as u64;
        *out_single_qubit = counts.single_qubit as u64;
        *out_other = counts.other as u64;
    }
    QspStatus::Ok
}

/// Releases a circuit handle. Accepts null.
///
/// # Safety
/// `circuit` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_free(circuit: *mut QspCircuit) {
    if !circuit.is_null() {
        drop(unsafe { Box::from_raw(circuit) });
    }
}

/// Closed-form CNOT count for the weighted route on this dataset. Fails with
/// `QSP_STATUS_INVALID_ARGUMENT` for algorithms without a count law and
/// `QSP_STATUS_OVERFLOW` when the count exceeds 64 bits.
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_predicted_cnot_count(
    dataset: *const QspDataset,
    algorithm: u32,
    out: *mut u64,
) -> QspStatus {
    if dataset.is_null() || out.is_null() {
        return fail(QspStatus::NullArgument, "dataset and out must be non-null");
    }
    let algorithm = match algorithm_from(algorithm) {
        Ok(a) => a,
        Err(status) => return status,
    };
    if algorithm != Algorithm::Cvoqram {
        return fail(
            QspStatus::InvalidArgument,
            format!("no closed-form count law for {algorithm}"),
        );
    }
    let predicted = cvo_sparse_count(&pattern_stats(unsafe { &(*dataset).inner }));
    match u64::try_from(predicted) {
        Ok(value) => {
            unsafe { *out = value };
            QspStatus::Ok
        }
        Err(_) => fail(QspStatus::Overflow, format!("predicted count {predicted} exceeds 64 bits")),
    }
}

/// Amplitude vector length of a full simulation of this circuit, or 0 when
/// the circuit is wider than the simulator cap (24 qubits) or null.
///
/// # Safety
/// `circuit` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qsp_circuit_state_len(circuit: *const QspCircuit) -> usize {
    if circuit.is_null() {
        return 0;
    }
    let qubits = unsafe { &(*circuit).inner }.layout().total_qubits();
    if qubits > DEFAULT_QUBIT_CAP {
        return 0;
    }
    1usize << qubits
}

/// Simulates the circuit from the all-zeros state and writes the final
/// amplitudes as interleaved re/im pairs. `capacity` is the length of
/// `out_interleaved` in doubles and must be at least
/// `2 * qsp_circuit_state_len(circuit)`.
///
/// # Safety
/// `circuit` must be a live handle; `out_interleaved` must point to at least
/// `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qsp_simulate(
    circuit: *const QspCircuit,
    out_interleaved: *mut f64,
    capacity: usize,
) -> QspStatus {
    if circuit.is_null() || out_interleaved.is_null() {
        return fail(QspStatus::NullArgument, "circuit and out must be non-null");
    }
    let len = unsafe { qsp_circuit_state_len(circuit) };
    if len == 0 {
        return fail(QspStatus::SimulationFailed, "circuit exceeds the simulator qubit cap");
    }
    if capacity < 2 * len {
        return fail(
            QspStatus::BufferTooSmall,
            format!("need {} doubles, caller provided {capacity}", 2 * len),
        );
    }
    let circuit = unsafe { &(*circuit).inner };
    guarded(move || match simulate(circuit) {
        Ok(state) => {
            let slice = unsafe { std::slice::from_raw_parts_mut(out_interleaved, 2 * len) };
            for (i, a) in state.amps().iter().enumerate() {
                slice[2 * i] = a.re;
                slice[2 * i + 1] = a.im;
            }
            QspStatus::Ok
        }
        Err(e) => fail(QspStatus::SimulationFailed, e.to_string()),
    })
}

/// Synthesizes, lowers, simulates, and compares against the dataset. Writes
/// the memory-block distance and ancilla leak whenever the pipeline reaches
/// simulation, then returns OK exactly when distance <= 1e-9 and
/// leak < 1e-12.
///
/// # Safety
/// `dataset` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsp_verify(
    dataset: *const QspDataset,
    algorithm: u32,
    out_distance: *mut f64,
    out_leak: *mut f64,
) -> QspStatus {
    if dataset.is_null() || out_distance.is_null() || out_leak.is_null() {
        return fail(QspStatus::NullArgument, "dataset and out-pointers must be non-null");
    }
    let dataset = unsafe { &(*dataset).inner };
    guarded(move || {
        let algorithm = match algorithm_from(algorithm) {
            Ok(a) => a,
            Err(status) => return status,
        };
        let circuit = match synthesize(dataset, algorithm) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let lowered = match lower_circuit(&circuit) {
            Ok(c) => c,
            Err(e) => return fail(QspStatus::LoweringFailed, e.to_string()),
        };
        let state = match simulate(&lowered) {
            Ok(s) => s,
            Err(e) => return fail(QspStatus::SimulationFailed, e.to_string()),
        };
        let (memory, leak) = extract_memory(&state, lowered.layout());
        let distance = state_distance(&memory, target_state(dataset).amps())
            .expect("memory block matches dataset dimension");
        unsafe {
            *out_distance = distance;
            *out_leak = leak;
        }
        if distance <= STATE_TOL && leak < LEAK_TOL {
            QspStatus::Ok
        } else {
            fail(
                QspStatus::VerificationFailed,
                format!("distance {distance:e} (tol 1e-9), leak {leak:e} (tol 1e-12)"),
            )
        }
    })
}
