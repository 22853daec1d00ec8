//! C interface to `cnc-core`.
//!
//! Every fallible function returns a [`CncStatus`]. On failure a message is
//! stored for the calling thread and can be read with `cnc_last_error`.
//! Objects are opaque handles: constructors write a new handle through an
//! out-pointer and each handle type has a `*_free` function, which accepts
//! null.
//!
//! Pointer rules shared by all functions: handles must come from this library
//! and not be freed yet, strings are NUL-terminated UTF-8, and array pointers
//! must be valid for the stated number of elements. Null pointers are
//! reported as `NullPointer` rather than dereferenced. Handles
//! are not synchronised; share one across threads only for reading.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use cnc_core::config::RunConfig;
use cnc_core::embed::{embed_sequence, train_embedder, EmbedderParams};
use cnc_core::eval::{dataset_stats, evaluate, hungarian, MetricsReport};
use cnc_core::manifest::load_task;
use cnc_core::procut::localize;
use cnc_core::{segments_to_frame_labels, CncError, FeatureSequence, KeyStepAssignment, Matrix, TaskAnnotation};

/// Result of every fallible call. Codes 2 to 6 match the `cnc` exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CncStatus {
    Ok = 0,
    /// Unknown config key, malformed config line or bad value.
    Config = 2,
    /// Missing or unreadable file.
    Io = 3,
    /// Bad magic, version or record, or truncated data.
    Format = 4,
    /// Non-finite values, annotation violations or mismatched shapes.
    Invalid = 5,
    /// Input outside the operation's domain, or a numeric failure.
    Domain = 6,
    NullPointer = 7,
    InvalidUtf8 = 8,
    /// The output buffer is shorter than the result; the needed length was written.
    BufferTooSmall = 9,
    /// A Rust panic was caught at the boundary.
    Panic = 10,
}

/// Videos with features and, when loaded from a manifest, annotations.
pub struct CncDataset {
    k: usize,
    features: Vec<FeatureSequence>,
    annotation: Option<TaskAnnotation>,
}

/// Trained embedder weights.
pub struct CncParams(EmbedderParams);

/// Per-frame labels for a set of videos; 0 is background.
pub struct CncAssignment(KeyStepAssignment);

/// Evaluation of a predicted assignment against ground truth.
pub struct CncMetrics(MetricsReport);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CncDatasetStats {
    pub foreground_ratio: f64,
    pub missing_keysteps: f64,
    pub repeated_keysteps: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CncMetricsSummary {
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_f1: f64,
    pub mean_iou: f64,
    pub legacy_precision: f64,
    pub legacy_recall: f64,
    pub legacy_f1: f64,
    pub legacy_iou: f64,
    pub mof: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CncStepScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub iou: f64,
}

struct Failure {
    status: CncStatus,
    message: String,
}

impl Failure {
    fn new(status: CncStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<CncError> for Failure {
    fn from(e: CncError) -> Self {
        let status = match e.exit_code() {
            2 => CncStatus::Config,
            3 => CncStatus::Io,
            4 => CncStatus::Format,
            5 => CncStatus::Invalid,
            _ => CncStatus::Domain,
        };
        Failure::new(status, e.to_string())
    }
}

type FfiResult<T = ()> = Result<T, Failure>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> FfiResult) -> CncStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CncStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {what}"));
            CncStatus::Panic
        }
    }
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> FfiResult<&'a T> {
    ptr.as_ref()
        .ok_or_else(|| Failure::new(CncStatus::NullPointer, format!("{what} is null")))
}

unsafe fn handle_mut<'a, T>(ptr: *mut T, what: &str) -> FfiResult<&'a mut T> {
    ptr.as_mut()
        .ok_or_else(|| Failure::new(CncStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> FfiResult<&'a str> {
    if ptr.is_null() {
        return Err(Failure::new(CncStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure::new(CncStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(Failure::new(CncStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> FfiResult {
    if out.is_null() {
        return Err(Failure::new(CncStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> FfiResult {
    put(out, Box::into_raw(Box::new(value)), "output handle pointer")
}

/// Defaults overlaid with optional `key = value` config text.
unsafe fn run_config(config_text: *const c_char) -> FfiResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if !config_text.is_null() {
        cfg.apply_text(text(config_text, "config text")?)?;
    }
    Ok(cfg)
}

unsafe fn free<T>(ptr: *mut T) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Message of the most recent failed call on this thread, or an empty
/// string. The pointer stays valid until the next failure on this thread.
#[no_mangle]
pub extern "C" fn cnc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cnc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Empty dataset for `k` key-steps; fill it with `cnc_dataset_push_video`.
#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_new(k: usize, out: *mut *mut CncDataset) -> CncStatus {
    guard(|| {
        put_handle(
            out,
            CncDataset {
                k,
                features: Vec::new(),
                annotation: None,
            },
        )
    })
}

/// Loads features and annotations through a task manifest.
#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_load_manifest(path: *const c_char, out: *mut *mut CncDataset) -> CncStatus {
    guard(|| {
        let task = load_task(Path::new(text(path, "path")?))?;
        put_handle(
            out,
            CncDataset {
                k: task.manifest.k,
                features: task.features,
                annotation: Some(task.annotation),
            },
        )
    })
}

/// Appends a video from `frames * dim` row-major features.
#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_push_video(
    dataset: *mut CncDataset,
    video_id: *const c_char,
    data: *const f64,
    frames: usize,
    dim: usize,
    fps: f64,
) -> CncStatus {
    guard(|| {
        let ds = handle_mut(dataset, "dataset")?;
        let id = text(video_id, "video id")?;
        if ds.features.iter().any(|f| f.video_id == id) {
            return Err(Failure::new(CncStatus::Invalid, format!("duplicate video id {id:?}")));
        }
        let len = frames
            .checked_mul(dim)
            .ok_or_else(|| Failure::new(CncStatus::Invalid, "frames * dim overflows"))?;
        let values = slice(data, len, "feature data")?.to_vec();
        let seq = FeatureSequence::new(id, Matrix::from_vec(frames, dim, values)?, fps)?;
        ds.features.push(seq);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_video_count(dataset: *const CncDataset, out: *mut usize) -> CncStatus {
    guard(|| put(out, handle(dataset, "dataset")?.features.len(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_k(dataset: *const CncDataset, out: *mut usize) -> CncStatus {
    guard(|| put(out, handle(dataset, "dataset")?.k, "out"))
}

/// Foreground ratio, missing and repeated key-step rates of the annotations.
/// Datasets built with `cnc_dataset_new` have none and fail with `Domain`.
#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_stats(dataset: *const CncDataset, out: *mut CncDatasetStats) -> CncStatus {
    guard(|| {
        let s = dataset_stats(annotation(handle(dataset, "dataset")?)?)?;
        put(
            out,
            CncDatasetStats {
                foreground_ratio: s.foreground_ratio,
                missing_keysteps: s.missing_keysteps,
                repeated_keysteps: s.repeated_keysteps,
            },
            "out",
        )
    })
}

fn annotation(ds: &CncDataset) -> FfiResult<&TaskAnnotation> {
    ds.annotation
        .as_ref()
        .ok_or_else(|| Failure::new(CncStatus::Domain, "dataset has no annotations"))
}

/// Frame labels of the annotated videos.
#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_ground_truth(
    dataset: *const CncDataset,
    out: *mut *mut CncAssignment,
) -> CncStatus {
    guard(|| {
        let ds = handle(dataset, "dataset")?;
        let ann = annotation(ds)?;
        let mut per_video = BTreeMap::new();
        for f in ds.features.iter().filter(|f| ann.per_video.contains_key(&f.video_id)) {
            let labels = segments_to_frame_labels(ann, &f.video_id, f.frame_count(), f.fps)?;
            per_video.insert(f.video_id.clone(), labels);
        }
        put_handle(out, CncAssignment(KeyStepAssignment::new(ds.k, per_video)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_dataset_free(dataset: *mut CncDataset) {
    free(dataset)
}

/// Trains an embedder on the dataset. `config_text` holds optional
/// `key = value` lines over the defaults and may be null.
#[no_mangle]
pub unsafe extern "C" fn cnc_params_train(
    dataset: *const CncDataset,
    config_text: *const c_char,
    out: *mut *mut CncParams,
) -> CncStatus {
    guard(|| {
        let ds = handle(dataset, "dataset")?;
        let cfg = run_config(config_text)?;
        let trained = train_embedder(&ds.features, &cfg.train_config())?;
        put_handle(out, CncParams(trained.params))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_params_load(path: *const c_char, out: *mut *mut CncParams) -> CncStatus {
    guard(|| {
        let params = EmbedderParams::load(Path::new(text(path, "path")?))?;
        put_handle(out, CncParams(params))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_params_save(params: *const CncParams, path: *const c_char) -> CncStatus {
    guard(|| {
        handle(params, "params")?.0.save(Path::new(text(path, "path")?))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_params_free(params: *mut CncParams) {
    free(params)
}

/// Embeds every video and assigns key-step labels. A config `k` of 0 (the
/// default) uses the dataset's K.
#[no_mangle]
pub unsafe extern "C" fn cnc_localize(
    dataset: *const CncDataset,
    params: *const CncParams,
    config_text: *const c_char,
    out: *mut *mut CncAssignment,
) -> CncStatus {
    guard(|| {
        let ds = handle(dataset, "dataset")?;
        let p = &handle(params, "params")?.0;
        let cfg = run_config(config_text)?;
        let embeddings = ds
            .features
            .iter()
            .map(|f| Ok((f.video_id.clone(), embed_sequence(p, f)?)))
            .collect::<FfiResult<BTreeMap<_, _>>>()?;
        put_handle(out, CncAssignment(localize(&embeddings, &cfg.pcm_config(ds.k))?))
    })
}

/// Empty assignment over labels `0..=k`; fill it with `cnc_assignment_push_video`.
#[no_mangle]
pub unsafe extern "C" fn cnc_assignment_new(k: usize, out: *mut *mut CncAssignment) -> CncStatus {
    guard(|| put_handle(out, CncAssignment(KeyStepAssignment::new(k, BTreeMap::new())?)))
}

#[no_mangle]
pub unsafe extern "C" fn cnc_assignment_push_video(
    assignment: *mut CncAssignment,
    video_id: *const c_char,
    labels: *const usize,
    frames: usize,
) -> CncStatus {
    guard(|| {
        let a = handle_mut(assignment, "assignment")?;
        let id = text(video_id, "video id")?;
        if a.0.per_video.contains_key(id) {
            return Err(Failure::new(CncStatus::Invalid, format!("duplicate video id {id:?}")));
        }
        let mut per_video = a.0.per_video.clone();
        per_video.insert(id.to_string(), slice(labels, frames, "labels")?.to_vec());
        a.0 = KeyStepAssignment::new(a.0.k, per_video)?;
        Ok(())
    })
}

fn video_labels<'a>(a: &'a CncAssignment, id: &str) -> FfiResult<&'a [usize]> {
    a.0.labels(id)
        .ok_or_else(|| Failure::new(CncStatus::Domain, format!("no video {id:?} in assignment")))
}

#[no_mangle]
pub unsafe extern "C" fn cnc_assignment_frame_count(
    assignment: *const CncAssignment,
    video_id: *const c_char,
    out: *mut usize,
) -> CncStatus {
    guard(|| {
        let labels = video_labels(handle(assignment, "assignment")?, text(video_id, "video id")?)?;
        put(out, labels.len(), "out")
    })
}

/// Copies a video's labels into `buffer`. The label count is always written
/// to `out_len`; if it exceeds `capacity` nothing is copied and
/// `BufferTooSmall` is returned.
#[no_mangle]
pub unsafe extern "C" fn cnc_assignment_labels(
    assignment: *const CncAssignment,
    video_id: *const c_char,
    buffer: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> CncStatus {
    guard(|| {
        let labels = video_labels(handle(assignment, "assignment")?, text(video_id, "video id")?)?;
        put(out_len, labels.len(), "out_len")?;
        if labels.len() > capacity {
            return Err(Failure::new(
                CncStatus::BufferTooSmall,
                format!("need {} labels, buffer holds {capacity}", labels.len()),
            ));
        }
        if !labels.is_empty() {
            if buffer.is_null() {
                return Err(Failure::new(CncStatus::NullPointer, "buffer is null"));
            }
            std::ptr::copy_nonoverlapping(labels.as_ptr(), buffer, labels.len());
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_assignment_free(assignment: *mut CncAssignment) {
    free(assignment)
}

/// Matches predicted to ground-truth labels and scores the prediction.
#[no_mangle]
pub unsafe extern "C" fn cnc_evaluate(
    prediction: *const CncAssignment,
    ground_truth: *const CncAssignment,
    out: *mut *mut CncMetrics,
) -> CncStatus {
    guard(|| {
        let pred = &handle(prediction, "prediction")?.0;
        let gt = &handle(ground_truth, "ground truth")?.0;
        put_handle(out, CncMetrics(evaluate(pred, gt)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_metrics_summary(metrics: *const CncMetrics, out: *mut CncMetricsSummary) -> CncStatus {
    guard(|| {
        let m = &handle(metrics, "metrics")?.0;
        put(
            out,
            CncMetricsSummary {
                mean_precision: m.mean_precision,
                mean_recall: m.mean_recall,
                mean_f1: m.mean_f1,
                mean_iou: m.mean_iou,
                legacy_precision: m.legacy_precision,
                legacy_recall: m.legacy_recall,
                legacy_f1: m.legacy_f1,
                legacy_iou: m.legacy_iou,
                mof: m.mof,
            },
            "out",
        )
    })
}

/// Scores of ground-truth key-step `label` (1-based).
#[no_mangle]
pub unsafe extern "C" fn cnc_metrics_keystep(
    metrics: *const CncMetrics,
    label: usize,
    out: *mut CncStepScores,
) -> CncStatus {
    guard(|| {
        let m = &handle(metrics, "metrics")?.0;
        let s = m
            .per_keystep
            .get(&label)
            .ok_or_else(|| Failure::new(CncStatus::Domain, format!("no key-step {label}")))?;
        put(
            out,
            CncStepScores {
                precision: s.precision,
                recall: s.recall,
                f1: s.f1,
                iou: s.iou,
            },
            "out",
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn cnc_metrics_free(metrics: *mut CncMetrics) {
    free(metrics)
}

/// Minimum-cost assignment of a row-major `rows * cols` cost matrix.
/// `row_to_col` receives `rows` entries: the matched column, or -1 for a
/// row left on zero padding.
#[no_mangle]
pub unsafe extern "C" fn cnc_hungarian(
    cost: *const f64,
    rows: usize,
    cols: usize,
    row_to_col: *mut isize,
    out_cost: *mut f64,
) -> CncStatus {
    guard(|| {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure::new(CncStatus::Invalid, "rows * cols overflows"))?;
        let flat = slice(cost, len, "cost")?;
        let matrix: Vec<Vec<f64>> = flat.chunks(cols.max(1)).map(<[f64]>::to_vec).collect();
        let result = hungarian(&matrix)?;
        if row_to_col.is_null() {
            return Err(Failure::new(CncStatus::NullPointer, "row_to_col is null"));
        }
        for (i, c) in result.row_to_col.iter().enumerate() {
            row_to_col.add(i).write(c.map_or(-1, |c| c as isize));
        }
        put(out_cost, result.cost, "out_cost")
    })
}
