#ifndef CNC_H
#define CNC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Codes 2 to 6 match the `cnc` exit codes.
 */
typedef enum CncStatus {
  CNC_STATUS_OK = 0,
  /**
   * Unknown config key, malformed config line or bad value.
   */
  CNC_STATUS_CONFIG = 2,
  /**
   * Missing or unreadable file.
   */
  CNC_STATUS_IO = 3,
  /**
   * Bad magic, version or record, or truncated data.
   */
  CNC_STATUS_FORMAT = 4,
  /**
   * Non-finite values, annotation violations or mismatched shapes.
   */
  CNC_STATUS_INVALID = 5,
  /**
   * Input outside the operation's domain, or a numeric failure.
   */
  CNC_STATUS_DOMAIN = 6,
  CNC_STATUS_NULL_POINTER = 7,
  CNC_STATUS_INVALID_UTF8 = 8,
  /**
   * The output buffer is shorter than the result; the needed length was written.
   */
  CNC_STATUS_BUFFER_TOO_SMALL = 9,
  /**
   * A Rust panic was caught at the boundary.
   */
  CNC_STATUS_PANIC = 10,
} CncStatus;

/**
 * Per-frame labels for a set of videos; 0 is background.
 */
typedef struct CncAssignment CncAssignment;

/**
 * Videos with features and, when loaded from a manifest, annotations.
 */
typedef struct CncDataset CncDataset;

/**
 * Evaluation of a predicted assignment against ground truth.
 */
typedef struct CncMetrics CncMetrics;

/**
 * Trained embedder weights.
 */
typedef struct CncParams CncParams;

typedef struct CncDatasetStats {
  double foreground_ratio;
  double missing_keysteps;
  double repeated_keysteps;
} CncDatasetStats;

typedef struct CncMetricsSummary {
  double mean_precision;
  double mean_recall;
  double mean_f1;
  double mean_iou;
  double legacy_precision;
  double legacy_recall;
  double legacy_f1;
  double legacy_iou;
  double mof;
} CncMetricsSummary;

typedef struct CncStepScores {
  double precision;
  double recall;
  double f1;
  double iou;
} CncStepScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failed call on this thread, or an empty
 * string. The pointer stays valid until the next failure on this thread.
 */
const char *cnc_last_error(void);

/**
 * Library version as a static string.
 */
const char *cnc_version(void);

/**
 * Empty dataset for `k` key-steps; fill it with `cnc_dataset_push_video`.
 */
enum CncStatus cnc_dataset_new(size_t k, struct CncDataset **out);

/**
 * Loads features and annotations through a task manifest.
 */
enum CncStatus cnc_dataset_load_manifest(const char *path, struct CncDataset **out);

/**
 * Appends a video from `frames * dim` row-major features.
 */
enum CncStatus cnc_dataset_push_video(struct CncDataset *dataset,
                                      const char *video_id,
                                      const double *data,
                                      size_t frames,
                                      size_t dim,
                                      double fps);

enum CncStatus cnc_dataset_video_count(const struct CncDataset *dataset, size_t *out);

enum CncStatus cnc_dataset_k(const struct CncDataset *dataset, size_t *out);

/**
 * Foreground ratio, missing and repeated key-step rates of the annotations.
 * Datasets built with `cnc_dataset_new` have none and fail with `Domain`.
 */
enum CncStatus cnc_dataset_stats(const struct CncDataset *dataset, struct CncDatasetStats *out);

/**
 * Frame labels of the annotated videos.
 */
enum CncStatus cnc_dataset_ground_truth(const struct CncDataset *dataset,
                                        struct CncAssignment **out);

void cnc_dataset_free(struct CncDataset *dataset);

/**
 * Trains an embedder on the dataset. `config_text` holds optional
 * `key = value` lines over the defaults and may be null.
 */
enum CncStatus cnc_params_train(const struct CncDataset *dataset,
                                const char *config_text,
                                struct CncParams **out);

enum CncStatus cnc_params_load(const char *path, struct CncParams **out);

enum CncStatus cnc_params_save(const struct CncParams *params, const char *path);

void cnc_params_free(struct CncParams *params);

/**
 * Embeds every video and assigns key-step labels. A config `k` of 0 (the
 * default) uses the dataset's K.
 */
enum CncStatus cnc_localize(const struct CncDataset *dataset,
                            const struct CncParams *params,
                            const char *config_text,
                            struct CncAssignment **out);

/**
 * Empty assignment over labels `0..=k`; fill it with `cnc_assignment_push_video`.
 */
enum CncStatus cnc_assignment_new(size_t k, struct CncAssignment **out);

enum CncStatus cnc_assignment_push_video(struct CncAssignment *assignment,
                                         const char *video_id,
                                         const size_t *labels,
                                         size_t frames);

enum CncStatus cnc_assignment_frame_count(const struct CncAssignment *assignment,
                                          const char *video_id,
                                          size_t *out);

/**
 * Copies a video's labels into `buffer`. The label count is always written
 * to `out_len`; if it exceeds `capacity` nothing is copied and
 * `BufferTooSmall` is returned.
 */
enum CncStatus cnc_assignment_labels(const struct CncAssignment *assignment,
                                     const char *video_id,
                                     size_t *buffer,
                                     size_t capacity,
                                     size_t *out_len);

void cnc_assignment_free(struct CncAssignment *assignment);

/**
 * Matches predicted to ground-truth labels and scores the prediction.
 */
enum CncStatus cnc_evaluate(const struct CncAssignment *prediction,
                            const struct CncAssignment *ground_truth,
                            struct CncMetrics **out);

enum CncStatus cnc_metrics_summary(const struct CncMetrics *metrics, struct CncMetricsSummary *out);

/**
 * Scores of ground-truth key-step `label` (1-based).
 */
enum CncStatus cnc_metrics_keystep(const struct CncMetrics *metrics,
                                   size_t label,
                                   struct CncStepScores *out);

void cnc_metrics_free(struct CncMetrics *metrics);

/**
 * Minimum-cost assignment of a row-major `rows * cols` cost matrix.
 * `row_to_col` receives `rows` entries: the matched column, or -1 for a
 * row left on zero padding.
 */
enum CncStatus cnc_hungarian(const double *cost,
                             size_t rows,
                             size_t cols,
                             ptrdiff_t *row_to_col,
                             double *out_cost);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CNC_H */
