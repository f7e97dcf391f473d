//! SIL bag-level aggregation: per-bag positive fractions, validation-fold
//! thresholds and their cross-fold average.

use crate::error::{Error, Result};
use crate::label::Label;

/// Fraction of a bag's instances predicted positive.
pub fn sil_bag_fraction(instance_predictions: &[Label]) -> f64 {
    assert!(!instance_predictions.is_empty());
    let positives = instance_predictions.iter().filter(|l| l.is_positive()).count();
    positives as f64 / instance_predictions.len() as f64
}

/// Per-fold decision threshold: the middle value between the mean positive
/// fraction of the fold's positive validation bags and that of its negative
/// validation bags.
pub fn compute_fold_threshold(pos_bag_fractions: &[f64], neg_bag_fractions: &[f64]) -> f64 {
    assert!(!pos_bag_fractions.is_empty() && !neg_bag_fractions.is_empty());
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    (mean(pos_bag_fractions) + mean(neg_bag_fractions)) / 2.0
}

/// Average of the 9 per-fold thresholds. Errors on any other count; use
/// [`mean_threshold`] when evaluating a subset of folds.
pub fn aggregate_thresholds(fold_thresholds: &[f64]) -> Result<f64> {
    if fold_thresholds.len() != 9 {
        return Err(Error::Metric(format!(
            "expected 9 fold thresholds, got {}",
            fold_thresholds.len()
        )));
    }
    Ok(mean_threshold(fold_thresholds))
}

/// Arithmetic mean of per-fold thresholds, for runs covering a fold subset.
pub fn mean_threshold(fold_thresholds: &[f64]) -> f64 {
    assert!(!fold_thresholds.is_empty());
    fold_thresholds.iter().sum::<f64>() / fold_thresholds.len() as f64
}

/// Bag decision from its positive fraction: positive iff strictly above
/// the threshold.
pub fn sil_bag_predict(fraction: f64, threshold: f64) -> Label {
    Label::from_bool(fraction > threshold)
}

/// Effective instance scores for SIL AUC: instances in bags predicted
/// negative get score 0 (they can never be detected), others keep their
/// positive-class probability.
pub fn sil_effective_scores(p_positive: &[f64], instance_bag_prediction: &[Label]) -> Vec<f64> {
    assert_eq!(p_positive.len(), instance_bag_prediction.len());
    p_positive
        .iter()
        .zip(instance_bag_prediction)
        .map(|(&p, bag)| if bag.is_positive() { p } else { 0.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn fraction_examples() {
        use Label::*;
        let mut v = vec![Positive; 20];
        v.extend(vec![Negative; 80]);
        assert_abs_diff_eq!(sil_bag_fraction(&v), 0.2);
        assert_abs_diff_eq!(sil_bag_fraction(&[Negative; 5]), 0.0);
        assert_abs_diff_eq!(sil_bag_fraction(&[Positive; 5]), 1.0);
    }

    #[test]
    fn fold_threshold_examples() {
        assert_abs_diff_eq!(compute_fold_threshold(&[0.30], &[0.10]), 0.20, epsilon = 1e-15);
        assert_abs_diff_eq!(compute_fold_threshold(&[0.25, 0.25], &[0.25]), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            compute_fold_threshold(&[0.4, 0.2], &[0.0, 0.1]),
            0.175,
            epsilon = 1e-15
        );
    }

    #[test]
    fn aggregate_examples() {
        assert_abs_diff_eq!(aggregate_thresholds(&[0.2; 9]).unwrap(), 0.2, epsilon = 1e-15);
        let mixed = [0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.3, 0.3, 0.3];
        assert_abs_diff_eq!(aggregate_thresholds(&mixed).unwrap(), 0.2, epsilon = 1e-15);
        let mut permuted = mixed;
        permuted.reverse();
        assert_abs_diff_eq!(
            aggregate_thresholds(&permuted).unwrap(),
            aggregate_thresholds(&mixed).unwrap(),
            epsilon = 1e-15
        );
        assert!(aggregate_thresholds(&[0.2; 5]).is_err());
    }

    #[test]
    fn bag_predict_boundary_rules() {
        use Label::*;
        assert_eq!(sil_bag_predict(0.25, 0.2), Positive);
        assert_eq!(sil_bag_predict(0.2, 0.2), Negative); // strict inequality
        assert_eq!(sil_bag_predict(0.0, 0.1), Negative);
    }

    #[test]
    fn effective_scores_rule() {
        use Label::*;
        let scores = sil_effective_scores(&[0.99, 0.4], &[Negative, Positive]);
        assert_eq!(scores, vec![0.0, 0.4]);
        let unchanged = sil_effective_scores(&[0.7, 0.4], &[Positive, Positive]);
        assert_eq!(unchanged, vec![0.7, 0.4]);
    }

    proptest! {
        #[test]
        fn threshold_lies_between_class_means(
            pos in proptest::collection::vec(0.0f64..1.0, 1..8),
            neg in proptest::collection::vec(0.0f64..1.0, 1..8),
        ) {
            let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
            let thr = compute_fold_threshold(&pos, &neg);
            let (lo, hi) = if mean(&pos) <= mean(&neg) {
                (mean(&pos), mean(&neg))
            } else {
                (mean(&neg), mean(&pos))
            };
            prop_assert!(thr >= lo - 1e-12 && thr <= hi + 1e-12);
        }
    }
}
