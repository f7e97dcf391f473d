//! Bag/instance data model, the on-disk dataset format, and fold
//! specifications shared by all other modules.
//!
//! A dataset on disk is a directory containing `dataset.toml` (the
//! manifest) plus one subdirectory per bag holding one lossless PNG per
//! instance, named by instance id. The layout is inspectable, diff-able
//! and byte-stable: writing the same dataset twice yields identical files.

mod folds;
mod manifest;
mod store;

pub use folds::{load_folds, make_folds, save_folds, FoldSpec};
pub use manifest::{BagRecord, ChannelStats, DatasetManifest};
pub use store::{load_dataset, write_dataset, Dataset, InstanceRef};
