//! The `cnc` command line: one subcommand per pipeline stage plus `run-all`.
//!
//! Every config key is also a global `--<key> <value>` flag. Commands print
//! the paths they wrote, one per line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgMatches, Command};

use crate::assignment::{load_assignment_dir, save_assignment_dir, KeyStepAssignment};
use crate::config::{RunConfig, KEYS};
use crate::embed::{embed_sequence, loss_trace_csv, train_embedder, EmbedderParams};
use crate::error::Result;
use crate::eval::{dataset_stats, evaluate};
use crate::io::write_atomic;
use crate::manifest::{load_task, LoadedTask};
use crate::order::keystep_order;
use crate::procut::localize;
use crate::segments_to_frame_labels;
use crate::synth::{generate, write_task, BenchmarkTable, Pipeline};

const EXIT_CODES: &str = "\
Exit status:
  0  success
  2  bad command line, malformed config line, unknown key or bad key value
  3  missing or unreadable file
  4  malformed file contents (bad magic, version, record or truncated data)
  5  invalid data (non-finite values, annotation or shape violations)
  6  input outside an operation's domain or numeric failure";

const SUBCOMMANDS: [(&str, &str); 7] = [
    ("synth", "Generate a synthetic task: features, annotations and manifest"),
    ("train", "Train the embedder; writes parameters and the loss trace"),
    ("localize", "Cut and cluster key-steps; writes per-video label CSVs"),
    ("order", "Order discovered key-steps; writes order.csv"),
    (
        "evaluate",
        "Score labels against the manifest annotations; writes metrics.csv",
    ),
    ("stats", "Annotation statistics; writes stats.csv"),
    (
        "run-all",
        "synth, train, localize, order, evaluate, stats and the baseline comparison",
    ),
];

pub fn command() -> Command {
    let mut cmd = Command::new("cnc")
        .about("Procedure learning: correspondence-trained embeddings, graph-cut key-step localisation and per-key-step evaluation")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true)
        .after_help(EXIT_CODES)
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("PATH")
                .global(true)
                .help("Config file of \"key = value\" lines; flags override it"),
        )
        .next_help_heading("Config keys");
    for key in KEYS {
        cmd = cmd.arg(
            Arg::new(key.name)
                .long(key.name)
                .value_name("VALUE")
                .global(true)
                .help(format!("{} [default: {:?}]", key.help, key.default)),
        );
    }
    for (name, about) in SUBCOMMANDS {
        cmd = cmd.subcommand(Command::new(name).about(about).after_help(EXIT_CODES));
    }
    cmd
}

fn config_from(matches: &ArgMatches) -> Result<RunConfig> {
    let overrides: Vec<(String, String)> = KEYS
        .iter()
        .filter_map(|k| {
            matches
                .get_one::<String>(k.name)
                .map(|v| (k.name.to_string(), v.clone()))
        })
        .collect();
    let file = matches.get_one::<String>("config").map(PathBuf::from);
    RunConfig::load(file.as_deref(), &overrides)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let Some((name, sub)) = matches.subcommand() else {
        unreachable!("a subcommand is required");
    };
    match config_from(sub).and_then(|cfg| dispatch(name, &cfg)) {
        Ok(written) => {
            for p in written {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("cnc {name}: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(name: &str, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    match name {
        "synth" => cmd_synth(cfg),
        "train" => cmd_train(cfg),
        "localize" => cmd_localize(cfg),
        "order" => cmd_order(cfg),
        "evaluate" => cmd_evaluate(cfg),
        "stats" => cmd_stats(cfg),
        "run-all" => cmd_run_all(cfg),
        other => unreachable!("unregistered subcommand {other}"),
    }
}

fn video_ids(task: &LoadedTask) -> Vec<&str> {
    task.features.iter().map(|f| f.video_id.as_str()).collect()
}

fn embed_task(task: &LoadedTask, params: &EmbedderParams) -> Result<BTreeMap<String, crate::Matrix>> {
    task.features
        .iter()
        .map(|f| Ok((f.video_id.clone(), embed_sequence(params, f)?)))
        .collect()
}

fn ground_truth(task: &LoadedTask) -> Result<KeyStepAssignment> {
    let per_video = task
        .features
        .iter()
        .map(|f| {
            let labels = segments_to_frame_labels(&task.annotation, &f.video_id, f.frame_count(), f.fps)?;
            Ok((f.video_id.clone(), labels))
        })
        .collect::<Result<_>>()?;
    KeyStepAssignment::new(task.manifest.k, per_video)
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf> {
    write_atomic(&path, text.as_bytes())?;
    Ok(path)
}

fn assignment_paths(dir: &Path, assignment: &KeyStepAssignment) -> Vec<PathBuf> {
    assignment
        .per_video
        .keys()
        .map(|id| dir.join(format!("{id}.csv")))
        .collect()
}

pub fn cmd_synth(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = generate(&cfg.synth_spec())?;
    Ok(vec![write_task(&task, &cfg.out_dir())?])
}

pub fn cmd_train(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = load_task(&cfg.manifest_path())?;
    let trained = train_embedder(&task.features, &cfg.train_config())?;
    let params = cfg.params_path();
    trained.params.save(&params)?;
    let trace = write(
        cfg.out_dir().join("loss_trace.csv"),
        &loss_trace_csv(&trained.loss_trace),
    )?;
    Ok(vec![params, trace])
}

pub fn cmd_localize(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = load_task(&cfg.manifest_path())?;
    let params = EmbedderParams::load(&cfg.params_path())?;
    let assignment = localize(&embed_task(&task, &params)?, &cfg.pcm_config(task.manifest.k))?;
    let dir = cfg.assignment_dir();
    save_assignment_dir(&assignment, &dir)?;
    Ok(assignment_paths(&dir, &assignment))
}

pub fn cmd_order(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = load_task(&cfg.manifest_path())?;
    let assignment = load_assignment_dir(&cfg.assignment_dir(), video_ids(&task), task.manifest.k)?;
    let order = keystep_order(&assignment)?;
    Ok(vec![write(cfg.out_dir().join("order.csv"), &order.to_csv())?])
}

pub fn cmd_evaluate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = load_task(&cfg.manifest_path())?;
    let gt = ground_truth(&task)?;
    let pred = load_assignment_dir(&cfg.assignment_dir(), video_ids(&task), task.manifest.k)?;
    let report = evaluate(&pred, &gt)?;
    Ok(vec![write(cfg.out_dir().join("metrics.csv"), &report.to_csv())?])
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let task = load_task(&cfg.manifest_path())?;
    let stats = dataset_stats(&task.annotation)?;
    Ok(vec![write(cfg.out_dir().join("stats.csv"), &stats.to_csv())?])
}

/// Runs every stage in order, then compares the full pipeline with the
/// baselines on the same trained embedder and writes `benchmark.csv`.
pub fn cmd_run_all(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for stage in [cmd_synth, cmd_train, cmd_localize, cmd_order, cmd_evaluate, cmd_stats] {
        written.extend(stage(cfg)?);
    }
    let task = load_task(&cfg.manifest_path())?;
    let params = EmbedderParams::load(&cfg.params_path())?;
    let pipeline = Pipeline::with_params(&task.features, params, &cfg.pcm_config(task.manifest.k))?;
    let table = BenchmarkTable::from_pipeline(&pipeline, &ground_truth(&task)?)?;
    written.push(write(cfg.out_dir().join("benchmark.csv"), &table.to_csv())?);
    Ok(written)
}
