//! Per-fold metric reports and the instance-score dump format.

use crate::error::{Error, Result};
use crate::eval::Method;
use crate::label::Label;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Everything measured for one (method, architecture, fold) evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricsReport {
    pub fold_id: usize,
    pub method: Method,
    pub architecture: String,
    /// ABMIL mini-bag size; absent for SIL.
    pub mini_bag_size: Option<usize>,
    pub bag_accuracy: f64,
    /// Present when instance ground truth exists (synthetic data).
    pub instance_auc: Option<f64>,
    /// SIL: fraction of instances predicted positive per test bag.
    /// ABMIL: fraction of mini-bags voting positive per test bag.
    pub per_bag_positive_fraction: BTreeMap<String, f64>,
    /// The aggregated threshold applied at test time (SIL only).
    pub sil_threshold: Option<f64>,
    /// Test instances not covered by any sampled mini-bag; they enter the
    /// AUC with effective score 0 rather than being silently dropped.
    pub uncovered_instances: usize,
}

impl MetricsReport {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64, name: &str| -> Result<()> {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Metric(format!("{name} out of [0,1]: {v}")));
            }
            Ok(())
        };
        unit(self.bag_accuracy, "bag_accuracy")?;
        if let Some(auc) = self.instance_auc {
            unit(auc, "instance_auc")?;
        }
        for (bag, f) in &self.per_bag_positive_fraction {
            unit(*f, &format!("fraction[{bag}]"))?;
        }
        Ok(())
    }

    pub fn save_toml(&self, path: &Path) -> Result<()> {
        let text = toml::to_string_pretty(self)
            .map_err(|e| Error::Format(format!("metrics serialization: {e}")))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load_toml(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Format(format!("metrics parse: {e}")))
    }
}

/// One row of the instance score dump CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceScoreRow {
    pub instance_id: String,
    pub bag_id: String,
    pub method: Method,
    pub score: f64,
    pub effective_score: f64,
    pub majority_predicted_bag_label: u8,
    /// 0, 1, or empty when unknown (real data).
    pub true_label: Option<u8>,
}

impl InstanceScoreRow {
    pub fn new(
        instance_id: &str,
        bag_id: &str,
        method: Method,
        score: f64,
        effective_score: f64,
        bag_label: Label,
        true_label: Option<Label>,
    ) -> Self {
        Self {
            instance_id: instance_id.to_string(),
            bag_id: bag_id.to_string(),
            method,
            score,
            effective_score,
            majority_predicted_bag_label: bag_label.as_u8(),
            true_label: true_label.map(|l| l.as_u8()),
        }
    }
}

/// Write the instance score dump for one fold evaluation.
pub fn write_score_dump(path: &Path, rows: &[InstanceScoreRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| {
        Error::io(path, std::io::Error::new(std::io::ErrorKind::Other, e.to_string()))
    })?;
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Format(format!("score dump row: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::io(path, e))
}

/// Read a score dump back (used by the mosaic exporter and tests).
pub fn read_score_dump(path: &Path) -> Result<Vec<InstanceScoreRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| {
        Error::io(path, std::io::Error::new(std::io::ErrorKind::Other, e.to_string()))
    })?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        rows.push(record.map_err(|e| Error::Format(format!("score dump parse: {e}")))?);
    }
    Ok(rows)
}
