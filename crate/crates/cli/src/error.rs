//! Machine-readable failure reporting: every computation error is printed
//! to stderr as one JSON object {code, message, context} and maps to exit
//! code 1 (usage errors exit 2 via the argument parser).

use magscatter_core::Error as CoreError;

use crate::output::{json_object, json_str};

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub context: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>, context: impl Into<String>) -> Self {
        CliError { code, message: message.into(), context: context.into() }
    }

    pub fn in_context(mut self, context: impl Into<String>) -> Self {
        self.context = context.into();
        self
    }

    pub fn to_json(&self) -> String {
        json_object(&[
            ("code", json_str(self.code)),
            ("message", json_str(&self.message)),
            ("context", json_str(&self.context)),
        ])
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        let code = match &e {
            CoreError::NonConvergence { .. } => "non_convergence",
            CoreError::DecayTooSlow { .. } => "decay_too_slow",
            CoreError::AnalyticOnlyFamily => "analytic_only_family",
            CoreError::NotOrthogonal { .. } => "not_orthogonal",
            CoreError::CurlNotZero { .. } => "curl_not_zero",
            CoreError::ContourThroughOrigin => "contour_through_origin",
            CoreError::DiagonalEvaluation => "diagonal_evaluation",
            CoreError::OutsideTangencyRange { .. } => "outside_tangency_range",
            CoreError::InvalidConfig(_) => "invalid_config",
        };
        CliError::new(code, e.to_string(), "")
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new("io", e.to_string(), "")
    }
}

pub type CliResult<T> = Result<T, CliError>;
