//! Bag- and instance-level metrics.
//!
//! Everything in this module is a pure function over immutable inputs.
//! Declared tie rules (fixed so results are reproducible):
//!
//! * majority vote over mini-bag predictions: exact tie → positive,
//! * SIL bag decision: positive iff fraction > threshold (strictly),
//! * min–max normalization of a constant weight vector → all 0.5.

mod attention;
mod report;
mod silmetrics;

pub use attention::{
    abmil_effective_scores, aggregate_instance_attention, key_instance_detected,
    normalize_records, AttentionRecord, InstanceScore, Method, NormalizedAttention,
};
pub use report::{read_score_dump, write_score_dump, InstanceScoreRow, MetricsReport};
pub use silmetrics::{
    aggregate_thresholds, compute_fold_threshold, mean_threshold, sil_bag_fraction,
    sil_bag_predict, sil_effective_scores,
};

use crate::error::{Error, Result};
use crate::label::Label;
use std::collections::BTreeMap;

/// Number of test mini-bags drawn per test bag: `ceil(coverage * max_bag_size
/// / mini_bag_size)`, so that with `coverage = 10` each instance of the
/// largest bag is seen by roughly ten mini-bags. The same count is used for
/// every test bag of the fold.
pub fn num_test_mini_bags(max_bag_size: usize, mini_bag_size: usize, coverage: u32) -> usize {
    assert!(max_bag_size > 0 && mini_bag_size > 0 && coverage > 0);
    (coverage as usize * max_bag_size).div_ceil(mini_bag_size)
}

/// Majority-voted label over mini-bag predictions; exact tie → positive.
pub fn majority_vote_bag_label(predictions: &[Label]) -> Label {
    assert!(!predictions.is_empty(), "majority vote over empty list");
    let positives = predictions.iter().filter(|l| l.is_positive()).count();
    Label::from_bool(2 * positives >= predictions.len())
}

/// Min–max normalization of raw attention weights onto [0, 1].
/// A constant vector (max = min), including a singleton, maps to all 0.5.
pub fn normalize_mini_bag_weights(raw: &[f64]) -> Vec<f64> {
    assert!(!raw.is_empty());
    let min = raw.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max > min {
        raw.iter().map(|w| (w - min) / (max - min)).collect()
    } else {
        vec![0.5; raw.len()]
    }
}

/// Area under the ROC curve: the probability that a uniformly random
/// positive outscores a uniformly random negative, ties counting 1/2.
/// Computed by the rank formulation (equals the trapezoidal ROC area).
///
/// Errors when only one class is present.
pub fn compute_auc(scores: &[f64], labels: &[u8]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::Metric(format!(
            "scores/labels length mismatch: {} vs {}",
            scores.len(),
            labels.len()
        )));
    }
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::Metric(
            "AUC undefined: both classes must be present".into(),
        ));
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("NaN score"));

    // Average ranks within tie groups, then the Mann–Whitney identity.
    let mut rank_sum_pos = 0.0_f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        // ranks are 1-based; ties share the mean rank of their block
        let mean_rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            if labels[idx] == 1 {
                rank_sum_pos += mean_rank;
            }
        }
        i = j;
    }
    let n_pos = n_pos as f64;
    let n_neg = n_neg as f64;
    Ok((rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg))
}

/// Fraction of bags whose predicted label matches the truth.
/// Errors when the two maps do not cover the same bag ids.
pub fn bag_accuracy(
    predictions: &BTreeMap<String, Label>,
    truths: &BTreeMap<String, Label>,
) -> Result<f64> {
    if predictions.len() != truths.len()
        || !predictions.keys().all(|k| truths.contains_key(k))
    {
        return Err(Error::Metric("bag id sets differ".into()));
    }
    if predictions.is_empty() {
        return Err(Error::Metric("no bags to score".into()));
    }
    let correct = predictions
        .iter()
        .filter(|(id, pred)| truths[*id] == **pred)
        .count();
    Ok(correct as f64 / predictions.len() as f64)
}
