//! Runs the full pipeline and the two baselines on one task and scores them.

use std::collections::BTreeMap;

use super::{generate, SynthSpec, SynthTask};
use crate::assignment::KeyStepAssignment;
use crate::embed::{embed_sequence, train_embedder, EmbedderParams, TrainConfig};
use crate::error::Result;
use crate::eval::{evaluate, MetricsReport};
use crate::features::FeatureSequence;
use crate::matrix::Matrix;
use crate::procut::{baseline_cluster_all, baseline_random, localize, PcmConfig};

/// Intermediate and final products of one pipeline run.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub params: EmbedderParams,
    pub embeddings: BTreeMap<String, Matrix>,
    pub cnc: KeyStepAssignment,
    pub cluster_all: KeyStepAssignment,
    pub random: KeyStepAssignment,
}

impl Pipeline {
    pub fn run(features: &[FeatureSequence], train: &TrainConfig, pcm: &PcmConfig) -> Result<Self> {
        let trained = train_embedder(features, train)?;
        Self::with_params(features, trained.params, pcm)
    }

    /// Runs every method on embeddings from already trained parameters.
    pub fn with_params(features: &[FeatureSequence], params: EmbedderParams, pcm: &PcmConfig) -> Result<Self> {
        let embeddings = features
            .iter()
            .map(|f| Ok((f.video_id.clone(), embed_sequence(&params, f)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let cnc = localize(&embeddings, pcm)?;
        let cluster_all = baseline_cluster_all(&embeddings, pcm.k, pcm.kmeans_restarts, pcm.seed)?;
        let counts = features.iter().map(|f| (f.video_id.clone(), f.frame_count())).collect();
        let random = baseline_random(&counts, pcm.k, pcm.seed)?;
        Ok(Pipeline {
            params,
            embeddings,
            cnc,
            cluster_all,
            random,
        })
    }

    /// `(method name, assignment)` in table order.
    pub fn methods(&self) -> [(&'static str, &KeyStepAssignment); 3] {
        [
            ("cnc", &self.cnc),
            ("cluster_all", &self.cluster_all),
            ("random", &self.random),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkRow {
    pub method: String,
    pub report: MetricsReport,
}

#[derive(Debug, Clone)]
pub struct BenchmarkTable {
    pub rows: Vec<BenchmarkRow>,
}

impl BenchmarkTable {
    pub fn from_pipeline(pipeline: &Pipeline, ground_truth: &KeyStepAssignment) -> Result<Self> {
        let rows = pipeline
            .methods()
            .into_iter()
            .map(|(name, pred)| {
                Ok(BenchmarkRow {
                    method: name.to_string(),
                    report: evaluate(pred, ground_truth)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BenchmarkTable { rows })
    }

    pub fn get(&self, method: &str) -> Option<&MetricsReport> {
        self.rows.iter().find(|r| r.method == method).map(|r| &r.report)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("method");
        if let Some(first) = self.rows.first() {
            for (name, _) in first.report.summary() {
                out.push(',');
                out.push_str(name);
            }
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.method);
            for (_, v) in row.report.summary() {
                out.push_str(&format!(",{v:.6}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Generates the task, runs every method and scores it against ground truth.
pub fn run_benchmark(
    spec: &SynthSpec,
    train: &TrainConfig,
    pcm: &PcmConfig,
) -> Result<(SynthTask, Pipeline, BenchmarkTable)> {
    let task = generate(spec)?;
    let pipeline = Pipeline::run(&task.features, train, pcm)?;
    let table = BenchmarkTable::from_pipeline(&pipeline, &task.ground_truth)?;
    Ok((task, pipeline, table))
}
