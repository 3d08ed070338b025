//! C ABI over `qnn-graphlearn`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`QnnStatus`]; on failure [`qnn_last_error_message`] describes the error.
//! Complex data is passed as interleaved `[re, im, re, im, ...]` doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qnn_graphlearn::graph::{dataset_from_json, dataset_to_json, BuiltinDataset, GraphDataset, SupervisionMask};
use qnn_graphlearn::linalg::PureState;
use qnn_graphlearn::qnn::{init_network, network_from_json, network_output, network_to_json, NetworkState, NetworkTopology};
use qnn_graphlearn::training::{train, Hyperparams, TrainingTrace};
use qnn_graphlearn::{Error, Tolerances};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Numerical = 4,
    Serialization = 5,
    Io = 6,
    Panic = 7,
}

/// Network handle.
pub struct QnnNetwork {
    inner: NetworkState,
}

/// Dataset handle.
pub struct QnnDataset {
    inner: GraphDataset,
}

/// Result of [`qnn_train`].
pub struct QnnTrainingTrace {
    inner: TrainingTrace,
}

/// Losses at one step. `l_sv` and `l_usv` are meaningful only when the
/// matching `has_*` flag is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QnnLossRecord {
    pub step_index: usize,
    pub l_sv: f64,
    pub l_graph: f64,
    pub l_combined: f64,
    pub l_usv: f64,
    pub has_l_sv: bool,
    pub has_l_usv: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QnnHyperparams {
    pub epsilon: f64,
    pub eta: f64,
    pub gamma_graph: f64,
    pub rounds: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> QnnStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::NotPowerOfTwo(_) => {
            QnnStatus::DimensionMismatch
        }
        Error::Numerical(_) | Error::NotUnitary { .. } | Error::NotHermitian { .. } => QnnStatus::Numerical,
        Error::Json(_) | Error::Serialization(_) | Error::Csv(_) => QnnStatus::Serialization,
        Error::Io(_) => QnnStatus::Io,
        _ => QnnStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QnnStatus, String)>) -> QnnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QnnStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {message}"));
            QnnStatus::Panic
        }
    }
}

fn lib<T>(r: qnn_graphlearn::Result<T>) -> Result<T, (QnnStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, (QnnStatus, String)> {
    // SAFETY: callers pass either NULL or a pointer obtained from this library.
    unsafe { p.as_ref() }.ok_or_else(|| (QnnStatus::NullPointer, format!("{what} is NULL")))
}

fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], (QnnStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err((QnnStatus::NullPointer, format!("{what} is NULL")));
    }
    // SAFETY: the caller guarantees `p` points to `len` readable elements.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QnnStatus, String)> {
    if p.is_null() {
        return Err((QnnStatus::NullPointer, format!("{what} is NULL")));
    }
    // SAFETY: the caller guarantees a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (QnnStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (QnnStatus, String)> {
    if out.is_null() {
        return Err((QnnStatus::NullPointer, "output pointer is NULL".into()));
    }
    // SAFETY: `out` is non-null and points to writable storage for one pointer.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn write_string(out: *mut *mut c_char, text: String) -> Result<(), (QnnStatus, String)> {
    if out.is_null() {
        return Err((QnnStatus::NullPointer, "output pointer is NULL".into()));
    }
    let c = CString::new(text).map_err(|_| (QnnStatus::Serialization, "string contains NUL".into()))?;
    // SAFETY: `out` is non-null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qnn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qnn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Haar-random network with the given layer widths.
///
/// # Safety
/// `widths` must point to `num_layers` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_network_new(
    widths: *const usize,
    num_layers: usize,
    seed: u64,
    out: *mut *mut QnnNetwork,
) -> QnnStatus {
    guard(|| {
        let widths = slice(widths, num_layers, "widths")?.to_vec();
        let topology = lib(NetworkTopology::new(widths))?;
        let inner = init_network(&topology, &mut ChaCha20Rng::seed_from_u64(seed));
        write_out(out, QnnNetwork { inner })
    })
}

/// # Safety
/// `network` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qnn_network_free(network: *mut QnnNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// # Safety
/// `network` must be a live handle; `out` must be writable. Free the result with [`qnn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qnn_network_to_json(network: *const QnnNetwork, out: *mut *mut c_char) -> QnnStatus {
    guard(|| {
        let net = non_null(network, "network")?;
        write_string(out, lib(network_to_json(&net.inner))?)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_network_from_json(json: *const c_char, out: *mut *mut QnnNetwork) -> QnnStatus {
    guard(|| {
        let inner = lib(network_from_json(c_str(json, "json")?))?;
        write_out(out, QnnNetwork { inner })
    })
}

/// Output density matrix for a pure input state.
///
/// `input` holds `2 * 2^n_in` doubles; `output` receives `2 * 4^n_out` doubles, row-major.
///
/// # Safety
/// Pointers must be valid for the given lengths.
#[no_mangle]
pub unsafe extern "C" fn qnn_network_output(
    network: *const QnnNetwork,
    input: *const f64,
    input_len: usize,
    output: *mut f64,
    output_len: usize,
) -> QnnStatus {
    guard(|| {
        let net = non_null(network, "network")?;
        let amps = slice(input, input_len, "input")?;
        let ket = lib(PureState::from_interleaved_unchecked(amps))?;
        let ket = lib(PureState::new(ket.amplitudes().to_vec(), &Tolerances::default()))?;
        let rho = lib(network_output(&net.inner, &ket.to_density()))?;
        let values = rho.matrix().to_interleaved();
        if output_len != values.len() {
            return Err((
                QnnStatus::DimensionMismatch,
                format!("output buffer holds {output_len} doubles, need {}", values.len()),
            ));
        }
        if output.is_null() {
            return Err((QnnStatus::NullPointer, "output is NULL".into()));
        }
        std::slice::from_raw_parts_mut(output, output_len).copy_from_slice(&values);
        Ok(())
    })
}

/// Builtin example dataset ("clusters" or "line") with seeded random inputs.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_builtin(name: *const c_char, seed: u64, out: *mut *mut QnnDataset) -> QnnStatus {
    guard(|| {
        let which: BuiltinDataset = lib(c_str(name, "name")?.parse())?;
        let mut inner = lib(which.build(&mut ChaCha20Rng::seed_from_u64(seed)))?;
        inner.seed = Some(seed);
        write_out(out, QnnDataset { inner })
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_from_json(json: *const c_char, out: *mut *mut QnnDataset) -> QnnStatus {
    guard(|| {
        let inner = lib(dataset_from_json(c_str(json, "json")?))?;
        write_out(out, QnnDataset { inner })
    })
}

/// # Safety
/// `dataset` must be a live handle; `out` must be writable. Free the result with [`qnn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_to_json(dataset: *const QnnDataset, out: *mut *mut c_char) -> QnnStatus {
    guard(|| {
        let ds = non_null(dataset, "dataset")?;
        write_string(out, lib(dataset_to_json(&ds.inner))?)
    })
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `dataset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_num_vertices(dataset: *const QnnDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.num_vertices())
}

/// Undirected edge count, or 0 for NULL.
///
/// # Safety
/// `dataset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_num_edges(dataset: *const QnnDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.adjacency.num_edges())
}

/// # Safety
/// `dataset` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qnn_dataset_free(dataset: *mut QnnDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Trains a copy of `network`; the input handle is left unchanged.
///
/// # Safety
/// `supervised` must point to `num_supervised` vertex indices; other pointers must be live.
#[no_mangle]
pub unsafe extern "C" fn qnn_train(
    network: *const QnnNetwork,
    dataset: *const QnnDataset,
    supervised: *const usize,
    num_supervised: usize,
    hyper: *const QnnHyperparams,
    out: *mut *mut QnnTrainingTrace,
) -> QnnStatus {
    guard(|| {
        let net = non_null(network, "network")?;
        let ds = non_null(dataset, "dataset")?;
        let h = non_null(hyper, "hyper")?;
        let indices = slice(supervised, num_supervised, "supervised")?.to_vec();
        let mask = lib(SupervisionMask::new(ds.inner.num_vertices(), indices))?;
        let hyper = Hyperparams {
            epsilon: h.epsilon,
            eta: h.eta,
            gamma_graph: h.gamma_graph,
            rounds: h.rounds,
            ..Hyperparams::default()
        };
        let inner = lib(train(&net.inner, &ds.inner, &mask, &hyper))?;
        write_out(out, QnnTrainingTrace { inner })
    })
}

/// Number of loss records (rounds + 1), or 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qnn_trace_len(trace: *const QnnTrainingTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.inner.records.len())
}

/// # Safety
/// `trace` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_trace_record(
    trace: *const QnnTrainingTrace,
    index: usize,
    out: *mut QnnLossRecord,
) -> QnnStatus {
    guard(|| {
        let t = non_null(trace, "trace")?;
        let r = t.inner.records.get(index).ok_or_else(|| {
            (
                QnnStatus::InvalidArgument,
                format!("record {index} out of range for {} records", t.inner.records.len()),
            )
        })?;
        if out.is_null() {
            return Err((QnnStatus::NullPointer, "out is NULL".into()));
        }
        *out = QnnLossRecord {
            step_index: r.step_index,
            l_sv: r.l_sv.unwrap_or(f64::NAN),
            l_graph: r.l_graph,
            l_combined: r.l_combined,
            l_usv: r.l_usv.unwrap_or(f64::NAN),
            has_l_sv: r.l_sv.is_some(),
            has_l_usv: r.l_usv.is_some(),
        };
        Ok(())
    })
}

/// Copy of the trained network as a new handle.
///
/// # Safety
/// `trace` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qnn_trace_final_network(trace: *const QnnTrainingTrace, out: *mut *mut QnnNetwork) -> QnnStatus {
    guard(|| {
        let t = non_null(trace, "trace")?;
        write_out(
            out,
            QnnNetwork {
                inner: t.inner.final_network.clone(),
            },
        )
    })
}

/// # Safety
/// `trace` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qnn_trace_free(trace: *mut QnnTrainingTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}
