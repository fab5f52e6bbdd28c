use serde::{Deserialize, Serialize};
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Floating-point comparison data attached to numeric reports.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NumericDetail {
    pub value: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_err: Option<f64>,
}

impl NumericDetail {
    /// Relative error is taken against `scale`, or `|reference|` if larger.
    pub fn compare(value: f64, reference: f64, scale: f64, tolerance: f64) -> Self {
        let abs_err = (value - reference).abs();
        let denom = reference.abs().max(scale.abs());
        let rel_err = if denom > 0.0 {
            abs_err / denom
        } else {
            abs_err
        };
        NumericDetail {
            value,
            reference,
            abs_err,
            rel_err,
            tolerance,
            ..Default::default()
        }
    }

    pub fn within(&self) -> bool {
        self.rel_err.is_finite() && self.rel_err < self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub identity: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericDetail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn exact(
        case: impl Into<String>,
        identity: &str,
        pass: bool,
        lhs: impl Display,
        rhs: impl Display,
    ) -> Self {
        VerificationReport {
            case: case.into(),
            identity: identity.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            ms: None,
            numeric: None,
            note: None,
        }
    }

    pub fn numeric(case: impl Into<String>, identity: &str, detail: NumericDetail) -> Self {
        let status = if detail.within() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            case: case.into(),
            identity: identity.to_string(),
            status,
            lhs: format!("{:.15e}", detail.value),
            rhs: format!("{:.15e}", detail.reference),
            ms: None,
            numeric: Some(detail),
            note: None,
        }
    }

    pub fn error(case: impl Into<String>, identity: &str, err: &crate::Error) -> Self {
        let status = match err {
            crate::Error::Inconclusive(_) => Status::Inconclusive,
            _ => Status::Fail,
        };
        VerificationReport {
            case: case.into(),
            identity: identity.to_string(),
            status,
            lhs: String::new(),
            rhs: String::new(),
            ms: None,
            numeric: None,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}
