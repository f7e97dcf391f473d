//! Binary bag/instance labels, encoded 0 = negative, 1 = positive
//! everywhere (one convention prevents sign bugs in AUC).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }

    /// Numeric encoding used in files and metrics: 0 or 1.
    pub fn as_u8(self) -> u8 {
        match self {
            Label::Negative => 0,
            Label::Positive => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Label::Negative),
            1 => Some(Label::Positive),
            _ => None,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Negative => write!(f, "negative"),
            Label::Positive => write!(f, "positive"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_encoding_is_stable() {
        assert_eq!(Label::Negative.as_u8(), 0);
        assert_eq!(Label::Positive.as_u8(), 1);
        assert_eq!(Label::from_u8(0), Some(Label::Negative));
        assert_eq!(Label::from_u8(1), Some(Label::Positive));
        assert_eq!(Label::from_u8(2), None);
    }
}
