//! Cross-validation folds over 24 bags (12 per class).
//!
//! Nine folds are built from a single seeded permutation per class: each
//! class's 12 ids are cut into 3 test groups of 4; for test rotation
//! r ∈ {0,1,2} and sub-fold s ∈ {0,1,2}, the test set is group r, the
//! validation set is the s-th consecutive pair of the remaining 8 ids and
//! the train set is the other 6. Every bag lands in the test set of
//! exactly 3 folds and every fold is a 12/4/8 split with 6+6 / 2+2 / 4+4
//! class balance.

use crate::error::{Error, Result};
use crate::rng::stream;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub fold_id: usize,
    pub train: Vec<String>,
    pub validation: Vec<String>,
    pub test: Vec<String>,
}

impl FoldSpec {
    /// Disjointness and coverage against the full bag-id set.
    pub fn validate(&self, all_bags: &[String]) -> Result<()> {
        let train: HashSet<_> = self.train.iter().collect();
        let val: HashSet<_> = self.validation.iter().collect();
        let test: HashSet<_> = self.test.iter().collect();
        if train.len() != self.train.len()
            || val.len() != self.validation.len()
            || test.len() != self.test.len()
        {
            return Err(Error::Structure(format!("fold {}: duplicate ids", self.fold_id)));
        }
        if train.intersection(&val).next().is_some()
            || train.intersection(&test).next().is_some()
            || val.intersection(&test).next().is_some()
        {
            return Err(Error::Structure(format!(
                "fold {}: overlapping splits",
                self.fold_id
            )));
        }
        let covered = train.len() + val.len() + test.len();
        if covered != all_bags.len() || !all_bags.iter().all(|b| {
            train.contains(b) || val.contains(b) || test.contains(b)
        }) {
            return Err(Error::Structure(format!(
                "fold {}: splits do not cover the bag set",
                self.fold_id
            )));
        }
        Ok(())
    }
}

/// Build the 9 folds from exactly 12 negative and 12 positive bag ids.
/// Deterministic for a fixed seed.
pub fn make_folds(
    negative_ids: &[String],
    positive_ids: &[String],
    seed: u64,
) -> Result<Vec<FoldSpec>> {
    if negative_ids.len() != 12 || positive_ids.len() != 12 {
        return Err(Error::Config(format!(
            "fold construction needs 12 bags per class, got {} negative / {} positive",
            negative_ids.len(),
            positive_ids.len()
        )));
    }
    let mut neg = negative_ids.to_vec();
    let mut pos = positive_ids.to_vec();
    neg.shuffle(&mut stream(seed, &["folds", "negative"]));
    pos.shuffle(&mut stream(seed, &["folds", "positive"]));

    let mut folds = Vec::with_capacity(9);
    for rotation in 0..3 {
        // the rotation's test group, 4 ids per class
        let test_range = 4 * rotation..4 * (rotation + 1);
        // remaining 8 ids per class keep their permuted order
        let rest = |ids: &[String]| -> Vec<String> {
            ids.iter()
                .enumerate()
                .filter(|(i, _)| !test_range.contains(i))
                .map(|(_, id)| id.clone())
                .collect()
        };
        let rest_neg = rest(&neg);
        let rest_pos = rest(&pos);
        for sub in 0..3 {
            let mut train = Vec::with_capacity(12);
            let mut validation = Vec::with_capacity(4);
            for ids in [&rest_neg, &rest_pos] {
                for (i, id) in ids.iter().enumerate() {
                    if i == 2 * sub || i == 2 * sub + 1 {
                        validation.push(id.clone());
                    } else {
                        train.push(id.clone());
                    }
                }
            }
            let mut test = neg[test_range.clone()].to_vec();
            test.extend_from_slice(&pos[test_range.clone()]);
            folds.push(FoldSpec {
                fold_id: 3 * rotation + sub,
                train,
                validation,
                test,
            });
        }
    }
    Ok(folds)
}

#[derive(Serialize, Deserialize)]
struct FoldFile {
    seed: u64,
    folds: Vec<FoldSpec>,
}

/// Persist folds as structured text.
pub fn save_folds(path: &Path, folds: &[FoldSpec], seed: u64) -> Result<()> {
    let file = FoldFile {
        seed,
        folds: folds.to_vec(),
    };
    let text =
        toml::to_string(&file).map_err(|e| Error::Format(format!("fold serialization: {e}")))?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_folds(path: &Path) -> Result<Vec<FoldSpec>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: FoldFile =
        toml::from_str(&text).map_err(|e| Error::Format(format!("fold parse: {e}")))?;
    Ok(file.folds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn ids(prefix: &str) -> Vec<String> {
        (0..12).map(|i| format!("{prefix}{i:02}")).collect()
    }

    fn class_count<'a>(fold_ids: &'a [String], class_prefix: &str) -> usize {
        fold_ids.iter().filter(|id| id.starts_with(class_prefix)).count()
    }

    #[test]
    fn nine_folds_with_stated_balance() {
        let folds = make_folds(&ids("n"), &ids("p"), 1234).unwrap();
        assert_eq!(folds.len(), 9);
        let all: Vec<String> = ids("n").into_iter().chain(ids("p")).collect();
        for fold in &folds {
            fold.validate(&all).unwrap();
            assert_eq!(fold.train.len(), 12);
            assert_eq!(fold.validation.len(), 4);
            assert_eq!(fold.test.len(), 8);
            assert_eq!(class_count(&fold.train, "n"), 6);
            assert_eq!(class_count(&fold.train, "p"), 6);
            assert_eq!(class_count(&fold.validation, "n"), 2);
            assert_eq!(class_count(&fold.validation, "p"), 2);
            assert_eq!(class_count(&fold.test, "n"), 4);
            assert_eq!(class_count(&fold.test, "p"), 4);
        }
    }

    #[test]
    fn each_bag_tested_exactly_three_times() {
        for seed in [0u64, 7, 99, 12345] {
            let folds = make_folds(&ids("n"), &ids("p"), seed).unwrap();
            let mut counts: HashMap<String, usize> = HashMap::new();
            for fold in &folds {
                for id in &fold.test {
                    *counts.entry(id.clone()).or_default() += 1;
                }
            }
            assert_eq!(counts.len(), 24, "seed {seed}");
            assert!(counts.values().all(|&c| c == 3), "seed {seed}: {counts:?}");
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = make_folds(&ids("n"), &ids("p"), 42).unwrap();
        let b = make_folds(&ids("n"), &ids("p"), 42).unwrap();
        assert_eq!(a, b);
        let c = make_folds(&ids("n"), &ids("p"), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn wrong_class_counts_rejected() {
        let short: Vec<String> = ids("n").into_iter().take(11).collect();
        assert!(make_folds(&short, &ids("p"), 1).is_err());
    }

    #[test]
    fn fold_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("folds.toml");
        let folds = make_folds(&ids("n"), &ids("p"), 5).unwrap();
        save_folds(&path, &folds, 5).unwrap();
        let loaded = load_folds(&path).unwrap();
        assert_eq!(folds, loaded);
    }
}
