use std::ffi::{CStr, CString};
use std::ptr;

use cnc_core::synth::{generate, write_task, SynthSpec};
use cnc_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cnc_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn synthetic_manifest(dir: &std::path::Path) -> CString {
    let task = generate(&SynthSpec {
        num_videos: 3,
        frames_per_video: 60,
        ..SynthSpec::default()
    })
    .unwrap();
    c(write_task(&task, dir).unwrap().to_str().unwrap())
}

#[test]
fn full_pipeline_through_handles() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = synthetic_manifest(dir.path());
    unsafe {
        let mut ds = ptr::null_mut();
        assert_eq!(cnc_dataset_load_manifest(manifest.as_ptr(), &mut ds), CncStatus::Ok);
        let (mut n, mut k) = (0, 0);
        assert_eq!(cnc_dataset_video_count(ds, &mut n), CncStatus::Ok);
        assert_eq!(cnc_dataset_k(ds, &mut k), CncStatus::Ok);
        assert_eq!((n, k), (3, 5));

        let config = c("steps = 20\nseed = 3\n");
        let mut params = ptr::null_mut();
        assert_eq!(cnc_params_train(ds, config.as_ptr(), &mut params), CncStatus::Ok);
        let path = c(dir.path().join("p.cncp").to_str().unwrap());
        assert_eq!(cnc_params_save(params, path.as_ptr()), CncStatus::Ok);
        let mut reloaded = ptr::null_mut();
        assert_eq!(cnc_params_load(path.as_ptr(), &mut reloaded), CncStatus::Ok);

        let mut pred = ptr::null_mut();
        let mut again = ptr::null_mut();
        assert_eq!(cnc_localize(ds, params, config.as_ptr(), &mut pred), CncStatus::Ok);
        assert_eq!(cnc_localize(ds, reloaded, config.as_ptr(), &mut again), CncStatus::Ok);

        let id = c("video_000");
        let mut len = 0;
        assert_eq!(cnc_assignment_frame_count(pred, id.as_ptr(), &mut len), CncStatus::Ok);
        assert_eq!(len, 60);
        let mut a = vec![0usize; len];
        let mut b = vec![0usize; len];
        assert_eq!(
            cnc_assignment_labels(pred, id.as_ptr(), a.as_mut_ptr(), len, &mut len),
            CncStatus::Ok
        );
        assert_eq!(
            cnc_assignment_labels(again, id.as_ptr(), b.as_mut_ptr(), len, &mut len),
            CncStatus::Ok
        );
        assert_eq!(a, b);
        assert!(a.iter().all(|&l| l <= 5));

        let mut gt = ptr::null_mut();
        assert_eq!(cnc_dataset_ground_truth(ds, &mut gt), CncStatus::Ok);
        let mut metrics = ptr::null_mut();
        assert_eq!(cnc_evaluate(pred, gt, &mut metrics), CncStatus::Ok);
        let mut summary = CncMetricsSummary::default();
        assert_eq!(cnc_metrics_summary(metrics, &mut summary), CncStatus::Ok);
        for v in [summary.mean_f1, summary.mean_iou, summary.legacy_f1, summary.mof] {
            assert!((0.0..=1.0).contains(&v));
        }

        let mut perfect = ptr::null_mut();
        assert_eq!(cnc_evaluate(gt, gt, &mut perfect), CncStatus::Ok);
        let mut one = CncMetricsSummary::default();
        assert_eq!(cnc_metrics_summary(perfect, &mut one), CncStatus::Ok);
        assert_eq!((one.mean_f1, one.legacy_iou, one.mof), (1.0, 1.0, 1.0));
        let mut step = CncStepScores::default();
        assert_eq!(cnc_metrics_keystep(perfect, 1, &mut step), CncStatus::Ok);
        assert_eq!(step.f1, 1.0);
        assert_eq!(cnc_metrics_keystep(perfect, 9, &mut step), CncStatus::Domain);

        let mut stats = CncDatasetStats::default();
        assert_eq!(cnc_dataset_stats(ds, &mut stats), CncStatus::Ok);
        assert!(stats.foreground_ratio > 0.0 && stats.foreground_ratio <= 1.0);

        cnc_metrics_free(perfect);
        cnc_metrics_free(metrics);
        cnc_assignment_free(gt);
        cnc_assignment_free(again);
        cnc_assignment_free(pred);
        cnc_params_free(reloaded);
        cnc_params_free(params);
        cnc_dataset_free(ds);
    }
}

#[test]
fn pushed_videos_and_labels() {
    unsafe {
        let mut ds = ptr::null_mut();
        assert_eq!(cnc_dataset_new(2, &mut ds), CncStatus::Ok);
        let data: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin()).collect();
        for id in ["a", "b"] {
            let id = c(id);
            assert_eq!(
                cnc_dataset_push_video(ds, id.as_ptr(), data.as_ptr(), 10, 4, 2.0),
                CncStatus::Ok
            );
        }
        let dup = c("a");
        assert_eq!(
            cnc_dataset_push_video(ds, dup.as_ptr(), data.as_ptr(), 10, 4, 2.0),
            CncStatus::Invalid
        );
        let nan = [f64::NAN; 4];
        let id = c("n");
        assert_eq!(
            cnc_dataset_push_video(ds, id.as_ptr(), nan.as_ptr(), 1, 4, 1.0),
            CncStatus::Invalid
        );
        assert!(last_error().contains("value error"), "{}", last_error());

        // No annotations on a pushed dataset.
        let mut stats = CncDatasetStats::default();
        assert_eq!(cnc_dataset_stats(ds, &mut stats), CncStatus::Domain);

        let mut params = ptr::null_mut();
        let cfg = c("steps = 5\nhidden_dim = 6\nembed_dim = 3\nframes_per_step = 0\n");
        assert_eq!(cnc_params_train(ds, cfg.as_ptr(), &mut params), CncStatus::Ok);
        let mut pred = ptr::null_mut();
        assert_eq!(cnc_localize(ds, params, ptr::null(), &mut pred), CncStatus::Ok);

        let mut gt = ptr::null_mut();
        assert_eq!(cnc_assignment_new(2, &mut gt), CncStatus::Ok);
        let labels = [0usize, 1, 1, 1, 0, 2, 2, 2, 0, 0];
        for id in ["a", "b"] {
            let id = c(id);
            assert_eq!(
                cnc_assignment_push_video(gt, id.as_ptr(), labels.as_ptr(), 10),
                CncStatus::Ok
            );
        }
        let bad = [3usize];
        let id = c("c");
        assert_eq!(
            cnc_assignment_push_video(gt, id.as_ptr(), bad.as_ptr(), 1),
            CncStatus::Invalid
        );

        let mut short = [0usize; 4];
        let mut len = 0;
        let a = c("a");
        assert_eq!(
            cnc_assignment_labels(gt, a.as_ptr(), short.as_mut_ptr(), 4, &mut len),
            CncStatus::BufferTooSmall
        );
        assert_eq!(len, 10);
        let missing = c("zzz");
        assert_eq!(
            cnc_assignment_frame_count(gt, missing.as_ptr(), &mut len),
            CncStatus::Domain
        );

        let mut metrics = ptr::null_mut();
        assert_eq!(cnc_evaluate(pred, gt, &mut metrics), CncStatus::Ok);
        cnc_metrics_free(metrics);
        cnc_assignment_free(gt);
        cnc_assignment_free(pred);
        cnc_params_free(params);
        cnc_dataset_free(ds);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let mut ds = ptr::null_mut();
        let missing = c(dir.path().join("absent.txt").to_str().unwrap());
        assert_eq!(cnc_dataset_load_manifest(missing.as_ptr(), &mut ds), CncStatus::Io);
        assert!(ds.is_null());
        assert!(last_error().contains("absent.txt"));

        let garbage = dir.path().join("g.cncp");
        std::fs::write(&garbage, b"NOPE0000000000000000").unwrap();
        let garbage = c(garbage.to_str().unwrap());
        let mut params = ptr::null_mut();
        assert_eq!(cnc_params_load(garbage.as_ptr(), &mut params), CncStatus::Format);

        assert_eq!(cnc_dataset_load_manifest(ptr::null(), &mut ds), CncStatus::NullPointer);
        assert_eq!(cnc_dataset_new(1, ptr::null_mut()), CncStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(
            cnc_dataset_load_manifest(invalid.as_ptr().cast(), &mut ds),
            CncStatus::InvalidUtf8
        );

        let manifest = synthetic_manifest(dir.path());
        assert_eq!(cnc_dataset_load_manifest(manifest.as_ptr(), &mut ds), CncStatus::Ok);
        let bad_cfg = c("no_such_key = 1\n");
        assert_eq!(cnc_params_train(ds, bad_cfg.as_ptr(), &mut params), CncStatus::Config);
        cnc_dataset_free(ds);

        let mut empty = ptr::null_mut();
        assert_eq!(cnc_dataset_new(1, &mut empty), CncStatus::Ok);
        assert_eq!(cnc_params_train(empty, ptr::null(), &mut params), CncStatus::Domain);
        cnc_dataset_free(empty);

        cnc_dataset_free(ptr::null_mut());
        cnc_params_free(ptr::null_mut());
        cnc_assignment_free(ptr::null_mut());
        cnc_metrics_free(ptr::null_mut());
    }
}

#[test]
fn hungarian_through_the_abi() {
    let cost = [4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0];
    let mut rows = [0isize; 3];
    let mut total = 0.0;
    let status = unsafe { cnc_hungarian(cost.as_ptr(), 3, 3, rows.as_mut_ptr(), &mut total) };
    assert_eq!(status, CncStatus::Ok);
    assert_eq!((rows, total), ([1, 0, 2], 5.0));

    let tall = [2.0, -4.0, 1.0];
    let mut rows = [0isize; 3];
    let status = unsafe { cnc_hungarian(tall.as_ptr(), 3, 1, rows.as_mut_ptr(), &mut total) };
    assert_eq!(status, CncStatus::Ok);
    assert_eq!((rows, total), ([-1, 0, -1], -4.0));

    let status = unsafe { cnc_hungarian(cost.as_ptr(), 0, 0, rows.as_mut_ptr(), &mut total) };
    assert_eq!(status, CncStatus::Domain);
}

#[test]
fn last_error_is_per_thread() {
    unsafe {
        assert_eq!(cnc_dataset_new(1, ptr::null_mut()), CncStatus::NullPointer);
    }
    let here = last_error();
    let there = std::thread::spawn(last_error).join().unwrap();
    assert!(!here.is_empty());
    assert_eq!(there, "");
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(cnc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
