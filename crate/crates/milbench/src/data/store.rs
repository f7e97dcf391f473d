//! On-disk dataset layout and the in-memory pixel store.
//!
//! ```text
//! <root>/
//!   dataset.toml              # manifest
//!   bags/<bag_id>/<instance_id>.png   # 8-bit RGB, lossless
//! ```

use crate::data::manifest::{ChannelStats, DatasetManifest};
use crate::error::{Error, Result};
use crate::label::Label;
use image::RgbImage;
use std::collections::HashMap;
use std::ops::Range;
use std::path::{Path, PathBuf};

/// Location of one instance inside a [`Dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceRef {
    pub global_index: usize,
    pub bag_index: usize,
    pub index_in_bag: usize,
}

/// A fully loaded dataset: validated manifest plus pixels, indexed for
/// instance-level access. Read-only after construction.
pub struct Dataset {
    manifest: DatasetManifest,
    /// Global instance order: manifest bag order, then position in bag.
    images: Vec<RgbImage>,
    instance_ids: Vec<String>,
    id_index: HashMap<String, usize>,
    bag_ranges: Vec<Range<usize>>,
}

impl Dataset {
    /// Assemble and validate a dataset from a manifest and an
    /// instance-id → image map. Consumes the map.
    pub fn new(manifest: DatasetManifest, mut images: HashMap<String, RgbImage>) -> Result<Self> {
        manifest.validate()?;
        let mut ordered = Vec::with_capacity(manifest.total_instances());
        let mut instance_ids = Vec::with_capacity(manifest.total_instances());
        let mut bag_ranges = Vec::with_capacity(manifest.bags.len());
        for bag in &manifest.bags {
            let start = ordered.len();
            for id in &bag.instance_ids {
                let img = images.remove(id).ok_or_else(|| {
                    Error::Structure(format!("no image supplied for instance {id}"))
                })?;
                check_size(&img, &manifest, id)?;
                ordered.push(img);
                instance_ids.push(id.clone());
            }
            bag_ranges.push(start..ordered.len());
        }
        if let Some(extra) = images.keys().next() {
            return Err(Error::Structure(format!(
                "image supplied for unknown instance {extra}"
            )));
        }
        let id_index = instance_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        Ok(Self {
            manifest,
            images: ordered,
            instance_ids,
            id_index,
            bag_ranges,
        })
    }

    pub fn manifest(&self) -> &DatasetManifest {
        &self.manifest
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, global_index: usize) -> &RgbImage {
        &self.images[global_index]
    }

    pub fn instance_id(&self, global_index: usize) -> &str {
        &self.instance_ids[global_index]
    }

    pub fn lookup(&self, instance_id: &str) -> Option<InstanceRef> {
        let global_index = *self.id_index.get(instance_id)?;
        let bag_index = self
            .bag_ranges
            .iter()
            .position(|r| r.contains(&global_index))?;
        Some(InstanceRef {
            global_index,
            bag_index,
            index_in_bag: global_index - self.bag_ranges[bag_index].start,
        })
    }

    pub fn bag_index(&self, bag_id: &str) -> Option<usize> {
        self.manifest.bags.iter().position(|b| b.bag_id == bag_id)
    }

    /// Global instance index range of one bag.
    pub fn bag_instances(&self, bag_index: usize) -> Range<usize> {
        self.bag_ranges[bag_index].clone()
    }

    pub fn bag_of_instance(&self, global_index: usize) -> usize {
        self.bag_ranges
            .iter()
            .position(|r| r.contains(&global_index))
            .expect("instance index in range")
    }

    /// The weak label an instance inherits from its bag.
    pub fn weak_label(&self, global_index: usize) -> Label {
        self.manifest.bags[self.bag_of_instance(global_index)].label
    }

    pub fn true_label(&self, global_index: usize) -> Option<Label> {
        let bag_index = self.bag_of_instance(global_index);
        let within = global_index - self.bag_ranges[bag_index].start;
        self.manifest.bags[bag_index].true_label(within)
    }
}

fn check_size(img: &RgbImage, manifest: &DatasetManifest, id: &str) -> Result<()> {
    if img.height() as usize != manifest.image_height
        || img.width() as usize != manifest.image_width
    {
        return Err(Error::Format(format!(
            "instance {id}: image is {}x{}, manifest declares {}x{}",
            img.height(),
            img.width(),
            manifest.image_height,
            manifest.image_width
        )));
    }
    Ok(())
}

/// Per-channel mean/std (population) over every pixel of every image, on
/// the x/255 scale. Accumulated in f64, image by image, in the given order.
pub fn compute_channel_stats<'a>(images: impl Iterator<Item = &'a RgbImage>) -> Result<ChannelStats> {
    let mut sum = [0.0f64; 3];
    let mut sumsq = [0.0f64; 3];
    let mut count = 0usize;
    for img in images {
        for px in img.pixels() {
            for c in 0..3 {
                let v = px.0[c] as f64 / 255.0;
                sum[c] += v;
                sumsq[c] += v * v;
            }
        }
        count += (img.width() * img.height()) as usize;
    }
    if count == 0 {
        return Err(Error::Structure("no pixels to compute channel stats".into()));
    }
    let n = count as f64;
    let mut mean = [0.0; 3];
    let mut std = [0.0; 3];
    for c in 0..3 {
        mean[c] = sum[c] / n;
        std[c] = (sumsq[c] / n - mean[c] * mean[c]).max(0.0).sqrt();
    }
    Ok(ChannelStats { mean, std })
}

fn manifest_path(root: &Path) -> PathBuf {
    root.join("dataset.toml")
}

fn image_path(root: &Path, bag_id: &str, instance_id: &str) -> PathBuf {
    root.join("bags").join(bag_id).join(format!("{instance_id}.png"))
}

/// Write a dataset to `root`. The layout is byte-stable: writing the same
/// dataset twice yields identical files.
pub fn write_dataset(dataset: &Dataset, root: &Path) -> Result<()> {
    dataset.manifest.validate()?;
    std::fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    dataset.manifest.save(&manifest_path(root))?;
    for (bag_index, bag) in dataset.manifest.bags.iter().enumerate() {
        let dir = root.join("bags").join(&bag.bag_id);
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        for global in dataset.bag_instances(bag_index) {
            let id = dataset.instance_id(global);
            let path = image_path(root, &bag.bag_id, id);
            dataset
                .image(global)
                .save_with_format(&path, image::ImageFormat::Png)
                .map_err(|e| Error::Image {
                    path: path.clone(),
                    detail: e.to_string(),
                })?;
        }
    }
    Ok(())
}

/// Load and fully validate a dataset from `root`: structural invariants,
/// per-image size checks, synthetic-data label consistency, and channel
/// statistics recomputed from pixels (must match the manifest to within
/// 1e-6 relative error).
pub fn load_dataset(root: &Path) -> Result<Dataset> {
    let manifest = DatasetManifest::load(&manifest_path(root))?;
    manifest.validate()?;
    let mut images = HashMap::with_capacity(manifest.total_instances());
    for bag in &manifest.bags {
        for id in &bag.instance_ids {
            let path = image_path(root, &bag.bag_id, id);
            let img = image::open(&path)
                .map_err(|e| Error::Image {
                    path: path.clone(),
                    detail: e.to_string(),
                })?
                .into_rgb8();
            images.insert(id.clone(), img);
        }
    }
    let dataset = Dataset::new(manifest, images)?;
    let recomputed = compute_channel_stats(dataset.images.iter())?;
    for c in 0..3 {
        for (declared, actual, name) in [
            (dataset.manifest.channel_stats.mean[c], recomputed.mean[c], "mean"),
            (dataset.manifest.channel_stats.std[c], recomputed.std[c], "std"),
        ] {
            let scale = declared.abs().max(actual.abs()).max(1e-12);
            if (declared - actual).abs() / scale > 1e-6 {
                return Err(Error::Format(format!(
                    "channel {c} {name} mismatch: manifest {declared}, pixels {actual}"
                )));
            }
        }
    }
    Ok(dataset)
}
