//! C ABI for `cogmap`.
//!
//! Maps and influence matrices are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`CogmapStatus`]; on failure [`cogmap_last_error_message`] describes the
//! error for the calling thread. Vertex indices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use cogmap::{
    CognitiveMap, Error, ErrorKind, InfluenceMatrix, InfluenceOptions, LoadOptions, PathBudget,
    SimulationOptions, WeightMode,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CogmapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Validation = 3,
    Numerical = 4,
    NotApplicable = 5,
    Panic = 6,
}

/// Opaque cognitive map.
pub struct CogmapMap {
    inner: CognitiveMap,
}

/// Opaque n x n influence matrix.
pub struct CogmapMatrix {
    inner: InfluenceMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

static VERSION: &CStr =
    match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CogmapStatus {
    match err.kind() {
        ErrorKind::Argument => CogmapStatus::InvalidArgument,
        ErrorKind::Validation => CogmapStatus::Validation,
        ErrorKind::Numerical => CogmapStatus::Numerical,
        ErrorKind::NotApplicable => CogmapStatus::NotApplicable,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CogmapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CogmapStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            CogmapStatus::NullPointer
        }
        Ok(Err(Failure::Lib(err))) => {
            set_error(err.to_string());
            status_of(&err)
        }
        Err(_) => {
            set_error("internal panic".to_owned());
            CogmapStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out_slice<'a, T>(
    p: *mut T,
    len: usize,
    what: &'static str,
) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn check_len(len: usize, n: usize) -> Result<(), Failure> {
    if len < n {
        return Err(
            Error::InvalidArgument(format!("buffer holds {len} values, {n} required")).into(),
        );
    }
    Ok(())
}

fn budget(max_paths: usize) -> PathBudget {
    PathBudget {
        max_paths: if max_paths == 0 {
            PathBudget::DEFAULT_MAX_PATHS
        } else {
            max_paths
        },
        max_len: None,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn cogmap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn cogmap_version() -> *const c_char {
    VERSION.as_ptr()
}

/// Builds a map from `n * n` row-major weights.
///
/// # Safety
/// `weights` must point to `n * n` readable doubles and `out` to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn cogmap_map_from_weights(
    n: usize,
    weights: *const f64,
    out: *mut *mut CogmapMap,
) -> CogmapStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidArgument("n too large".into()))?;
        if len > 0 && weights.is_null() {
            return Err(Failure::Null("weights"));
        }
        let data = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(weights, len)
        };
        let inner = CognitiveMap::from_row_major(n, data)?;
        *out = Box::into_raw(Box::new(CogmapMap { inner }));
        Ok(())
    })
}

/// Loads a map from a CSV or JSON file (JSON when the name ends in `.json`).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cogmap_map_load(
    path: *const c_char,
    out: *mut *mut CogmapMap,
) -> CogmapStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        if path.is_null() {
            return Err(Failure::Null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::InvalidArgument("path is not UTF-8".into()))?;
        let inner = cogmap::map::load_map_file(Path::new(path), LoadOptions::default())?;
        *out = Box::into_raw(Box::new(CogmapMap { inner }));
        Ok(())
    })
}

/// # Safety
/// `map` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cogmap_map_free(map: *mut CogmapMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Number of vertices, 0 for NULL.
///
/// # Safety
/// `map` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cogmap_map_size(map: *const CogmapMap) -> usize {
    map.as_ref().map_or(0, |m| m.inner.n())
}

/// Accumulated influence matrix. `threads` 0 or 1 runs sequentially;
/// `max_paths` 0 selects the default per-pair budget.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cogmap_influence_matrix(
    map: *const CogmapMap,
    threads: usize,
    max_paths: usize,
    out: *mut *mut CogmapMatrix,
) -> CogmapStatus {
    guard(|| {
        let map = deref(map, "map")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let opts = InfluenceOptions {
            budget: budget(max_paths),
            threads: threads.max(1),
        };
        let inner = cogmap::influence_matrix_with(&map.inner, &opts)?;
        *out = Box::into_raw(Box::new(CogmapMatrix { inner }));
        Ok(())
    })
}

/// # Safety
/// `matrix` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cogmap_matrix_free(matrix: *mut CogmapMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// # Safety
/// `matrix` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cogmap_matrix_size(matrix: *const CogmapMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.inner.n())
}

/// # Safety
/// `matrix` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cogmap_matrix_get(
    matrix: *const CogmapMatrix,
    i: usize,
    j: usize,
    out: *mut f64,
) -> CogmapStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let n = m.inner.n();
        if i >= n || j >= n {
            return Err(Error::VertexOutOfRange {
                vertex: i.max(j),
                n,
            }
            .into());
        }
        *out = m.inner.get(i, j);
        Ok(())
    })
}

/// Copies the matrix row-major into `buf`, which must hold `len >= n * n`
/// doubles.
///
/// # Safety
/// `matrix` must be a live handle and `buf` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cogmap_matrix_copy(
    matrix: *const CogmapMatrix,
    buf: *mut f64,
    len: usize,
) -> CogmapStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        let values = m.inner.row_major();
        check_len(len, values.len())?;
        out_slice(buf, len, "buf")?[..values.len()].copy_from_slice(values);
        Ok(())
    })
}

/// Row sums of `|z_ij|` into `scores` and the descending ranking (0-based
/// vertex indices, ties by index) into `ranking`; both hold `len >= n`.
///
/// # Safety
/// `matrix` must be a live handle; `scores` and `ranking` writable for `len`
/// elements.
#[no_mangle]
pub unsafe extern "C" fn cogmap_general_influence(
    matrix: *const CogmapMatrix,
    scores: *mut f64,
    ranking: *mut usize,
    len: usize,
) -> CogmapStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        let report = cogmap::general_influence(&m.inner);
        write_report(&report.scores, &report.ranking, scores, ranking, len)
    })
}

unsafe fn write_report(
    values: &[f64],
    order: &[usize],
    scores: *mut f64,
    ranking: *mut usize,
    len: usize,
) -> Result<(), Failure> {
    check_len(len, values.len())?;
    out_slice(scores, len, "scores")?[..values.len()].copy_from_slice(values);
    out_slice(ranking, len, "ranking")?[..order.len()].copy_from_slice(order);
    Ok(())
}

/// Impulse-stability verdict and spectral radius of the weight matrix.
///
/// # Safety
/// `map` must be a live handle; `stable` and `spectral_radius` writable or
/// NULL.
#[no_mangle]
pub unsafe extern "C" fn cogmap_stability(
    map: *const CogmapMap,
    stable: *mut bool,
    spectral_radius: *mut f64,
) -> CogmapStatus {
    guard(|| {
        let map = deref(map, "map")?;
        let verdict = cogmap::stability_check(&map.inner)?;
        if let Some(s) = stable.as_mut() {
            *s = verdict.stable;
        }
        if let Some(r) = spectral_radius.as_mut() {
            *r = verdict.spectral_radius();
        }
        Ok(())
    })
}

/// Impulse-method scores and ranking. `eps <= 0` and `max_steps == 0`
/// select the defaults. Returns `COGMAP_STATUS_NOT_APPLICABLE` for an
/// unstable map.
///
/// # Safety
/// As for [`cogmap_general_influence`], with `map` a live handle.
#[no_mangle]
pub unsafe extern "C" fn cogmap_impulse_scores(
    map: *const CogmapMap,
    eps: f64,
    max_steps: usize,
    scores: *mut f64,
    ranking: *mut usize,
    len: usize,
) -> CogmapStatus {
    guard(|| {
        let map = deref(map, "map")?;
        let mut opts = SimulationOptions::for_map(&map.inner);
        if eps > 0.0 {
            opts.eps = eps;
        }
        if max_steps > 0 {
            opts.max_steps = max_steps;
        }
        let report = cogmap::impulse_general_influence(&map.inner, opts)?;
        write_report(&report.scores, &report.ranking, scores, ranking, len)
    })
}

/// Kosko total influence `from -> to`. `has_path` is set false (and `total`
/// left untouched) when no path exists.
///
/// # Safety
/// `map` must be a live handle; `total` and `has_path` writable.
#[no_mangle]
pub unsafe extern "C" fn cogmap_kosko_total(
    map: *const CogmapMap,
    from: usize,
    to: usize,
    abs_weights: bool,
    total: *mut f64,
    has_path: *mut bool,
) -> CogmapStatus {
    guard(|| {
        let map = deref(map, "map")?;
        if total.is_null() {
            return Err(Failure::Null("total"));
        }
        if has_path.is_null() {
            return Err(Failure::Null("has_path"));
        }
        let mode = if abs_weights {
            WeightMode::Magnitude
        } else {
            WeightMode::Signed
        };
        let k = cogmap::total_influence(&map.inner, from, to, mode, PathBudget::default())?;
        *has_path = k.total.is_some();
        if let Some(t) = k.total {
            *total = t;
        }
        Ok(())
    })
}

/// Number of simple paths `from -> to`, bounded by `max_paths` (0 for the
/// default).
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cogmap_path_count(
    map: *const CogmapMap,
    from: usize,
    to: usize,
    max_paths: usize,
    out: *mut usize,
) -> CogmapStatus {
    guard(|| {
        let map = deref(map, "map")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = cogmap::enumerate_with_budget(&map.inner, from, to, budget(max_paths))?.count();
        Ok(())
    })
}
