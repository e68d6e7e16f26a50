//! Error types shared across the engine.
//!
//! Domain rejections carry a stable machine-readable [`Rule`] name so that
//! clients (CLI consumers, LMS integrations) can branch on the violated rule
//! rather than parse prose.

use serde::{Deserialize, Serialize};

/// Stable names for domain validation rules.
///
/// The wire representation (`as_str`) is part of the public interface and
/// must not change once released.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    UnknownContent,
    DuplicateContent,
    ContentNotApproved,
    ContentNotInCourse,
    NotASupplement,
    AlreadyApproved,
    ApproverNotLecturer,
    MissingContent,
    MissingPayload,
    UnexpectedPayload,
    MissingGrade,
    GradeOutOfRange,
    ActorNotStudent,
    AlreadyEnrolled,
    StudentNotEnrolled,
    DimensionMismatch,
    InvalidWeights,
    InvalidResults,
    TestMismatch,
    SemesterAlreadyClosed,
    SemesterNotClosed,
    TimestampRegression,
    SeqMismatch,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::UnknownContent => "unknown_content",
            Rule::DuplicateContent => "duplicate_content",
            Rule::ContentNotApproved => "content_not_approved",
            Rule::ContentNotInCourse => "content_not_in_course",
            Rule::NotASupplement => "not_a_supplement",
            Rule::AlreadyApproved => "already_approved",
            Rule::ApproverNotLecturer => "approver_not_lecturer",
            Rule::MissingContent => "missing_content",
            Rule::MissingPayload => "missing_payload",
            Rule::UnexpectedPayload => "unexpected_payload",
            Rule::MissingGrade => "missing_grade",
            Rule::GradeOutOfRange => "grade_out_of_range",
            Rule::ActorNotStudent => "actor_not_student",
            Rule::AlreadyEnrolled => "already_enrolled",
            Rule::StudentNotEnrolled => "student_not_enrolled",
            Rule::DimensionMismatch => "dimension_mismatch",
            Rule::InvalidWeights => "invalid_weights",
            Rule::InvalidResults => "invalid_results",
            Rule::TestMismatch => "test_mismatch",
            Rule::SemesterAlreadyClosed => "semester_already_closed",
            Rule::SemesterNotClosed => "semester_not_closed",
            Rule::TimestampRegression => "timestamp_regression",
            Rule::SeqMismatch => "seq_mismatch",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A domain rule was violated; `rule` is the stable machine-readable name.
    #[error("rejected ({rule}): {detail}")]
    Rejected { rule: Rule, detail: String },

    /// The caller passed an argument outside the accepted domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A referenced resource does not exist.
    #[error("not found: {0}")]
    NotFound(String),

    /// The event log failed an integrity check (e.g. a sequence gap).
    #[error("corrupt log: {0}")]
    CorruptLog(String),

    /// Input could not be parsed into a record.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn rejected(rule: Rule, detail: impl Into<String>) -> Self {
        Error::Rejected {
            rule,
            detail: detail.into(),
        }
    }

    /// The violated rule, when this error is a domain rejection.
    pub fn rule(&self) -> Option<Rule> {
        match self {
            Error::Rejected { rule, .. } => Some(*rule),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
