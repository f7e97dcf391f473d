//! The dataset manifest: ids, labels, image geometry and channel
//! statistics, serialized as structured text.

use crate::error::{Error, Result};
use crate::label::Label;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::Path;

/// Per-channel mean and standard deviation over every pixel of every
/// instance, on the x/255 scale (so a mid-gray dataset has mean ≈ 0.5).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub mean: [f64; 3],
    pub std: [f64; 3],
}

/// One bag: a weak label plus the ordered list of its instances.
/// `true_labels` is parallel to `instance_ids` (present for synthetic
/// data, absent when instance ground truth is unknown).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BagRecord {
    pub bag_id: String,
    pub label: Label,
    pub instance_ids: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub true_labels: Option<Vec<u8>>,
}

impl BagRecord {
    /// True label of the instance at `idx`, when known.
    pub fn true_label(&self, idx: usize) -> Option<Label> {
        self.true_labels
            .as_ref()
            .and_then(|v| v.get(idx))
            .and_then(|&b| Label::from_u8(b))
    }

    pub fn len(&self) -> usize {
        self.instance_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instance_ids.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub dataset_id: String,
    pub image_height: usize,
    pub image_width: usize,
    /// Content hash of the generator configuration; empty for real data.
    pub generator_config_hash: String,
    pub channel_stats: ChannelStats,
    pub bags: Vec<BagRecord>,
}

impl DatasetManifest {
    pub fn image_size(&self) -> (usize, usize) {
        (self.image_height, self.image_width)
    }

    pub fn total_instances(&self) -> usize {
        self.bags.iter().map(|b| b.len()).sum()
    }

    pub fn bag(&self, bag_id: &str) -> Option<&BagRecord> {
        self.bags.iter().find(|b| b.bag_id == bag_id)
    }

    /// Instance totals per class of bag (negative-bag total, positive-bag
    /// total).
    pub fn instances_per_class(&self) -> (usize, usize) {
        let mut neg = 0;
        let mut pos = 0;
        for bag in &self.bags {
            match bag.label {
                Label::Negative => neg += bag.len(),
                Label::Positive => pos += bag.len(),
            }
        }
        (neg, pos)
    }

    /// Structural and consistency validation:
    /// bag ids unique, instance ids globally unique, bags nonempty,
    /// true-label lists parallel, and (when true labels are present) the
    /// bag label equals "contains at least one true-positive instance".
    pub fn validate(&self) -> Result<()> {
        if self.image_height == 0 || self.image_width == 0 {
            return Err(Error::Format("image size must be nonzero".into()));
        }
        let mut bag_ids = HashSet::new();
        let mut instance_ids = HashSet::new();
        for bag in &self.bags {
            if !bag_ids.insert(bag.bag_id.as_str()) {
                return Err(Error::Structure(format!("duplicate bag id {}", bag.bag_id)));
            }
            if bag.is_empty() {
                return Err(Error::Structure(format!("bag {} is empty", bag.bag_id)));
            }
            for id in &bag.instance_ids {
                if !instance_ids.insert(id.as_str()) {
                    return Err(Error::Structure(format!("duplicate instance id {id}")));
                }
            }
            if let Some(tl) = &bag.true_labels {
                if tl.len() != bag.instance_ids.len() {
                    return Err(Error::Structure(format!(
                        "bag {}: {} true labels for {} instances",
                        bag.bag_id,
                        tl.len(),
                        bag.instance_ids.len()
                    )));
                }
                if let Some(bad) = tl.iter().find(|&&v| v > 1) {
                    return Err(Error::Format(format!(
                        "bag {}: invalid true label {bad}",
                        bag.bag_id
                    )));
                }
                let has_key = tl.iter().any(|&v| v == 1);
                if has_key != bag.label.is_positive() {
                    return Err(Error::Consistency(format!(
                        "bag {} labeled {} but contains {} true-positive instances",
                        bag.bag_id,
                        bag.label,
                        tl.iter().filter(|&&v| v == 1).count()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = toml::to_string(self)
            .map_err(|e| Error::Format(format!("manifest serialization: {e}")))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let manifest: DatasetManifest =
            toml::from_str(&text).map_err(|e| Error::Format(format!("manifest parse: {e}")))?;
        Ok(manifest)
    }
}
