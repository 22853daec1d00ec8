//! Evaluation: Hungarian label matching, per-key-step and legacy framewise
//! scores, MoF, and annotation statistics.

mod hungarian;
mod metrics;
mod stats;

pub use hungarian::{hungarian, Assignment};
pub use metrics::{
    evaluate, legacy_metrics, match_labels, mof, overlap_matrix, per_keystep_metrics, LabelMapping, MetricsReport,
    StepScores,
};
pub use stats::{dataset_stats, DatasetStats};
