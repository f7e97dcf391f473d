//! Benchmark framework for weakly supervised bag classification.
//!
//! Two end-to-end pipelines over bags of images that share a single weak
//! label: attention-based deep multiple instance learning (ABMIL) with
//! within-bag sampling, and conventional single-instance learning (SIL)
//! on propagated weak labels. A synthetic bag-dataset generator
//! (PAP-QMNIST style: digit images upscaled, colorized from fitted channel
//! distributions, and augmented) provides exact instance-level ground
//! truth, so both bag-level accuracy and instance-level AUC can be
//! measured.
//!
//! The crate is organized around six concerns:
//!
//! * [`data`] — the bag/instance data model, on-disk dataset format and
//!   cross-validation fold construction,
//! * [`synth`] — the synthetic dataset generator,
//! * [`model`] — feature extractors, the attention-pooling bag classifier
//!   and the single-instance head, with hand-written backward passes,
//! * [`train`] — standardization, mini-bag sampling, the two training
//!   loops and moving-average checkpoint selection,
//! * [`eval`] — every metric: majority-vote bag prediction, attention
//!   aggregation, instance AUC, SIL bag-fraction thresholds,
//! * [`harness`] — cross-validated experiment orchestration, result
//!   persistence and mosaic export.
//!
//! Everything is deterministic for a fixed seed: named RNG streams are
//! derived from the master seed so that parallel generation and data
//! loading cannot perturb results.

pub mod data;
pub mod error;
pub mod eval;
pub mod harness;
pub mod label;
pub mod model;
pub mod rng;
pub mod synth;
pub mod train;

pub use error::{Error, Result};
pub use label::Label;

// Compile the guide's code blocks as doctests so the book cannot drift
// from the library (`cargo test --doc`).
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            #[allow(unused)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(bags_and_datasets, "../../../book/src/bags-and-datasets.md");
    chapter!(synthetic_data, "../../../book/src/synthetic-data.md");
    chapter!(models, "../../../book/src/models.md");
    chapter!(training, "../../../book/src/training.md");
    chapter!(evaluation, "../../../book/src/evaluation.md");
    chapter!(cli, "../../../book/src/cli.md");
}
