//! Correspond-and-Cut procedure learning at desk scale.
//!
//! Frame embeddings are trained with a cycle-consistency plus temporal
//! coherence objective ([`embed`]), key-step frames are separated from
//! background by an exact s-t min cut over cross-video correspondence scores
//! and then clustered ([`procut`]), steps are ordered by mean position
//! ([`order`]) and results are scored per key-step ([`eval`]).
//! [`synth`] generates seeded multi-video tasks with planted key-steps, and
//! [`cli`] drives the whole pipeline from a [`config::RunConfig`].

pub mod annotation;
pub mod assignment;
pub mod cli;
pub mod config;
pub mod embed;
pub mod error;
pub mod eval;
pub mod features;
pub mod io;
pub mod manifest;
pub mod matrix;
pub mod order;
pub mod procut;
pub mod synth;

pub use annotation::{load_annotations, segments_to_frame_labels, KeyStepSegment, TaskAnnotation};
pub use assignment::KeyStepAssignment;
pub use error::{CncError, Result};
pub use features::{load_features, save_features, FeatureSequence};
pub use matrix::Matrix;
