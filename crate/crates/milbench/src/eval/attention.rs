//! Instance scoring from mini-bag attention weights.
//!
//! During test evaluation every instance of a bag is typically covered by
//! several mini-bags. Raw attention weights are min–max normalized within
//! each mini-bag, then aggregated per instance: the instance's majority
//! predicted bag label is the mode of the predictions of the mini-bags
//! containing it (tie → positive), and its score is the mean of the
//! normalized weights coming from mini-bags that voted with that majority.

use crate::eval::{majority_vote_bag_label, normalize_mini_bag_weights};
use crate::label::Label;
use serde::{Deserialize, Serialize};

/// Which pipeline produced a score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Abmil,
    Sil,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Abmil => write!(f, "abmil"),
            Method::Sil => write!(f, "sil"),
        }
    }
}

/// One observation of one instance inside one mini-bag, with the raw
/// (softmax) attention weight. Raw weights within a mini-bag sum to 1.
#[derive(Debug, Clone)]
pub struct AttentionRecord {
    pub instance_id: String,
    pub mini_bag_id: usize,
    pub raw_weight: f64,
    pub mini_bag_predicted_label: Label,
}

/// A per-mini-bag normalized observation, ready for aggregation.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedAttention {
    pub weight: f64,
    pub mini_bag_predicted_label: Label,
}

/// Aggregated instance score in [0, 1].
#[derive(Debug, Clone)]
pub struct InstanceScore {
    pub instance_id: String,
    pub score: f64,
    pub majority_predicted_bag_label: Label,
    pub method: Method,
}

/// Collapse all normalized observations of a single instance into its
/// aggregated score. `records` must be nonempty and carry per-mini-bag
/// normalized weights.
pub fn aggregate_instance_attention(
    instance_id: &str,
    records: &[NormalizedAttention],
) -> InstanceScore {
    assert!(!records.is_empty(), "no attention records for instance");
    let votes: Vec<Label> = records.iter().map(|r| r.mini_bag_predicted_label).collect();
    let majority = majority_vote_bag_label(&votes);
    let (sum, n) = records
        .iter()
        .filter(|r| r.mini_bag_predicted_label == majority)
        .fold((0.0, 0usize), |(s, n), r| (s + r.weight, n + 1));
    InstanceScore {
        instance_id: instance_id.to_string(),
        score: sum / n as f64,
        majority_predicted_bag_label: majority,
        method: Method::Abmil,
    }
}

/// Group raw records by mini-bag, normalize each mini-bag's weights to
/// [0, 1], and return per-instance normalized observations in input order.
pub fn normalize_records(records: &[AttentionRecord]) -> Vec<(String, NormalizedAttention)> {
    let max_mb = records.iter().map(|r| r.mini_bag_id).max().map_or(0, |m| m + 1);
    let mut by_mb: Vec<Vec<usize>> = vec![Vec::new(); max_mb];
    for (i, r) in records.iter().enumerate() {
        by_mb[r.mini_bag_id].push(i);
    }
    let mut out: Vec<Option<(String, NormalizedAttention)>> = vec![None; records.len()];
    for idxs in by_mb.iter().filter(|v| !v.is_empty()) {
        let raw: Vec<f64> = idxs.iter().map(|&i| records[i].raw_weight).collect();
        let norm = normalize_mini_bag_weights(&raw);
        for (&i, w) in idxs.iter().zip(norm) {
            out[i] = Some((
                records[i].instance_id.clone(),
                NormalizedAttention {
                    weight: w,
                    mini_bag_predicted_label: records[i].mini_bag_predicted_label,
                },
            ));
        }
    }
    out.into_iter().map(|o| o.expect("grouped all records")).collect()
}

/// The key-instance detection rule: an instance counts as detected at
/// `threshold` iff its aggregated score exceeds the threshold, its majority
/// predicted bag label is positive, and its true label is positive.
pub fn key_instance_detected(score: &InstanceScore, threshold: f64, true_label: Label) -> bool {
    score.score > threshold
        && score.majority_predicted_bag_label.is_positive()
        && true_label.is_positive()
}

/// Effective scores for instance-level AUC: instances whose majority
/// predicted bag label is negative can never be detected at any threshold,
/// so they receive effective score 0; the rest keep their aggregated score.
pub fn abmil_effective_scores(scores: &[InstanceScore]) -> Vec<f64> {
    scores
        .iter()
        .map(|s| {
            if s.majority_predicted_bag_label.is_positive() {
                s.score
            } else {
                0.0
            }
        })
        .collect()
}
