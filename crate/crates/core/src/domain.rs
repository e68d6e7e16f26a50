//! Shared domain types: identifiers, catalog items, grades, tests, and skill
//! estimates.
//!
//! All types here are immutable values and freely shareable between threads.
//! Constructors validate their invariants; deserialization goes through the
//! same constructors, so a value that exists is a valid value.

use chrono::{DateTime, SecondsFormat, TimeZone, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Rule};

/// Tolerance for the weight-sum constraint of a test definition.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.trim() == s
}

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Result<Self> {
                let s = s.into();
                if valid_id(&s) {
                    Ok(Self(s))
                } else {
                    Err(Error::InvalidArgument(format!(
                        concat!(stringify!($name), " must be non-empty without surrounding whitespace, got {:?}"),
                        s
                    )))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<String> for $name {
            type Error = String;
            fn try_from(s: String) -> std::result::Result<Self, String> {
                Self::new(s).map_err(|e| e.to_string())
            }
        }

        impl From<$name> for String {
            fn from(v: $name) -> String {
                v.0
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

id_type!(
    /// Opaque course identifier.
    CourseId
);
id_type!(
    /// Opaque student identifier.
    StudentId
);
id_type!(
    /// Opaque content (catalog item) identifier.
    ContentId
);

/// Semester identifier in the form `YYYY-S1` / `YYYY-S2`.
///
/// The format makes the natural chronological order coincide with plain
/// lexicographic order, which is how semesters are compared everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SemesterId(String);

impl SemesterId {
    pub fn new(s: impl Into<String>) -> Result<Self> {
        let s = s.into();
        let bytes = s.as_bytes();
        let ok = bytes.len() == 7
            && bytes[..4].iter().all(|b| b.is_ascii_digit())
            && &bytes[4..6] == b"-S"
            && (bytes[6] == b'1' || bytes[6] == b'2');
        if ok {
            Ok(Self(s))
        } else {
            Err(Error::InvalidArgument(format!(
                "SemesterId must match YYYY-S1 or YYYY-S2, got {s:?}"
            )))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for SemesterId {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        Self::new(s).map_err(|e| e.to_string())
    }
}

impl From<SemesterId> for String {
    fn from(v: SemesterId) -> String {
        v.0
    }
}

impl std::fmt::Display for SemesterId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Prefix marking an actor id as a lecturer; all other actors are students.
pub const LECTURER_PREFIX: &str = "lecturer:";

/// An event actor: either a student id or a lecturer id.
///
/// Lecturers are written with a `lecturer:` prefix (e.g. `lecturer:ana`) so
/// the single `actor` field of the log format stays self-describing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ActorId(String);

impl ActorId {
    pub fn new(s: impl Into<String>) -> Result<Self> {
        let s = s.into();
        if valid_id(&s) && s != LECTURER_PREFIX {
            Ok(Self(s))
        } else {
            Err(Error::InvalidArgument(format!(
                "ActorId must be non-empty without surrounding whitespace, got {s:?}"
            )))
        }
    }

    pub fn is_lecturer(&self) -> bool {
        self.0.starts_with(LECTURER_PREFIX)
    }

    /// Interpret this actor as a student id; fails for lecturers.
    pub fn to_student(&self) -> Result<StudentId> {
        if self.is_lecturer() {
            Err(Error::rejected(
                Rule::ActorNotStudent,
                format!("actor {} is a lecturer", self.0),
            ))
        } else {
            StudentId::new(self.0.clone())
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<StudentId> for ActorId {
    fn from(s: StudentId) -> Self {
        ActorId(s.0)
    }
}

impl TryFrom<String> for ActorId {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        Self::new(s).map_err(|e| e.to_string())
    }
}

impl From<ActorId> for String {
    fn from(v: ActorId) -> String {
        v.0
    }
}

impl std::fmt::Display for ActorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// UTC timestamp with millisecond precision.
///
/// Construction truncates to whole milliseconds so that formatting, parsing
/// and ordering are exact round trips; the wire form is ISO-8601 with a
/// `Z` suffix and exactly three fractional digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Timestamp(DateTime<Utc>);

impl Timestamp {
    pub fn from_millis(ms: i64) -> Self {
        Timestamp(Utc.timestamp_millis_opt(ms).single().expect("timestamp in range"))
    }

    pub fn now() -> Self {
        Self::from_millis(Utc::now().timestamp_millis())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let dt = DateTime::parse_from_rfc3339(s)
            .map_err(|e| Error::Parse(format!("invalid timestamp {s:?}: {e}")))?;
        Ok(Self::from_millis(dt.with_timezone(&Utc).timestamp_millis()))
    }

    pub fn millis(&self) -> i64 {
        self.0.timestamp_millis()
    }
}

impl TryFrom<String> for Timestamp {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        Self::parse(&s).map_err(|e| e.to_string())
    }
}

impl From<Timestamp> for String {
    fn from(t: Timestamp) -> String {
        t.to_string()
    }
}

impl std::fmt::Display for Timestamp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.to_rfc3339_opts(SecondsFormat::Millis, true))
    }
}

/// Kind of catalog content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContentKind {
    /// Informal learning material submitted by anyone; needs lecturer approval.
    Supplement,
    /// Library holding; enters the catalog pre-approved.
    Book,
    /// Library holding; enters the catalog pre-approved.
    Article,
}

impl ContentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ContentKind::Supplement => "supplement",
            ContentKind::Book => "book",
            ContentKind::Article => "article",
        }
    }
}

impl std::str::FromStr for ContentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "supplement" => Ok(ContentKind::Supplement),
            "book" => Ok(ContentKind::Book),
            "article" => Ok(ContentKind::Article),
            other => Err(Error::Parse(format!("unknown content kind {other:?}"))),
        }
    }
}

/// One catalog item: a course supplement or a library book/article.
///
/// Only approved items are eligible for ranking and suggestion; supplements
/// start unapproved and require a lecturer's approve event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContentItem {
    pub id: ContentId,
    pub course: CourseId,
    pub kind: ContentKind,
    pub title: String,
    pub submitter: ActorId,
    pub approved: bool,
    pub keywords: Vec<String>,
}

/// Lowest and highest grade on the fixed 5–10 scale.
pub const GRADE_MIN: u8 = 5;
pub const GRADE_MAX: u8 = 10;
/// Default passing grade; configurable per deployment.
pub const DEFAULT_PASS_THRESHOLD: u8 = 6;

/// One exam outcome for a student in a course semester.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeRecord {
    pub student: StudentId,
    pub course: CourseId,
    pub semester: SemesterId,
    pub grade: u8,
    pub passed: bool,
}

impl GradeRecord {
    /// `passed` is derived: it holds exactly when `grade >= pass_threshold`.
    pub fn new(
        student: StudentId,
        course: CourseId,
        semester: SemesterId,
        grade: u8,
        pass_threshold: u8,
    ) -> Result<Self> {
        if !(GRADE_MIN..=GRADE_MAX).contains(&grade) {
            return Err(Error::rejected(
                Rule::GradeOutOfRange,
                format!("grade {grade} outside [{GRADE_MIN},{GRADE_MAX}]"),
            ));
        }
        Ok(GradeRecord {
            student,
            course,
            semester,
            grade,
            passed: grade >= pass_threshold,
        })
    }
}

/// A weighted test of `n` tasks.
///
/// The stored weights always satisfy `sum(k_i) = n` (within
/// [`WEIGHT_SUM_TOLERANCE`]): raw weights are rescaled at construction, and
/// reconstructing from already-normalized weights leaves them bit-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TestDefinitionRaw")]
pub struct TestDefinition {
    pub id: String,
    pub course: CourseId,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct TestDefinitionRaw {
    id: String,
    course: CourseId,
    weights: Vec<f64>,
}

impl TryFrom<TestDefinitionRaw> for TestDefinition {
    type Error = String;
    fn try_from(raw: TestDefinitionRaw) -> std::result::Result<Self, String> {
        TestDefinition::new(raw.id, raw.course, raw.weights).map_err(|e| e.to_string())
    }
}

impl TestDefinition {
    pub fn new(id: impl Into<String>, course: CourseId, weights: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidArgument("test id must be non-empty".into()));
        }
        if weights.is_empty() {
            return Err(Error::rejected(
                Rule::InvalidWeights,
                "a test needs at least one task",
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::rejected(
                Rule::InvalidWeights,
                "every task weight must be finite and positive",
            ));
        }
        let n = weights.len() as f64;
        let sum: f64 = weights.iter().sum();
        let weights = if (sum - n).abs() <= WEIGHT_SUM_TOLERANCE {
            weights
        } else {
            let scale = n / sum;
            weights.into_iter().map(|w| w * scale).collect()
        };
        Ok(TestDefinition { id, course, weights })
    }

    /// Number of tasks.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Normalized task weights; their sum equals `n` within tolerance.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A student's answer vector for one test: 1 = correct, 0 = incorrect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TestResponseRaw")]
pub struct TestResponse {
    pub test: String,
    pub student: StudentId,
    results: Vec<u8>,
}

#[derive(Deserialize)]
struct TestResponseRaw {
    test: String,
    student: StudentId,
    results: Vec<u8>,
}

impl TryFrom<TestResponseRaw> for TestResponse {
    type Error = String;
    fn try_from(raw: TestResponseRaw) -> std::result::Result<Self, String> {
        TestResponse::new(raw.test, raw.student, raw.results).map_err(|e| e.to_string())
    }
}

impl TestResponse {
    pub fn new(test: impl Into<String>, student: StudentId, results: Vec<u8>) -> Result<Self> {
        if results.is_empty() {
            return Err(Error::rejected(Rule::InvalidResults, "empty results vector"));
        }
        if results.iter().any(|r| *r > 1) {
            return Err(Error::rejected(
                Rule::InvalidResults,
                "results must contain only 0 or 1",
            ));
        }
        Ok(TestResponse {
            test: test.into(),
            student,
            results,
        })
    }

    pub fn results(&self) -> &[u8] {
        &self.results
    }
}

/// Defuzzification method used to turn the fuzzy output subset into a crisp
/// level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefuzzMethod {
    /// Pick the scaled membership with the greatest peak degree and return
    /// its typical (argmax) value. Output is one of {0, 0.5, 1}.
    Maximum,
    /// Center of gravity of the output membership; output lies in [1/3, 2/3].
    Centroid,
}

impl DefuzzMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DefuzzMethod::Maximum => "maximum",
            DefuzzMethod::Centroid => "centroid",
        }
    }
}

impl std::str::FromStr for DefuzzMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximum" => Ok(DefuzzMethod::Maximum),
            "centroid" => Ok(DefuzzMethod::Centroid),
            other => Err(Error::InvalidArgument(format!(
                "unknown defuzzification method {other:?} (expected maximum or centroid)"
            ))),
        }
    }
}

/// A crisp skill level for one student in one course, together with the
/// membership degree and defuzzification method that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillEstimate {
    pub student: StudentId,
    pub course: CourseId,
    pub level: f64,
    pub solved: f64,
    pub method: DefuzzMethod,
    pub at: Timestamp,
}

impl SkillEstimate {
    pub fn new(
        student: StudentId,
        course: CourseId,
        level: f64,
        solved: f64,
        method: DefuzzMethod,
        at: Timestamp,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&level) || !(0.0..=1.0).contains(&solved) {
            return Err(Error::InvalidArgument(format!(
                "level and solved must lie in [0,1], got level={level}, solved={solved}"
            )));
        }
        let method_ok = match method {
            DefuzzMethod::Maximum => level == 0.0 || level == 0.5 || level == 1.0,
            DefuzzMethod::Centroid => {
                (1.0 / 3.0 - 1e-12..=2.0 / 3.0 + 1e-12).contains(&level)
            }
        };
        if !method_ok {
            return Err(Error::InvalidArgument(format!(
                "level {level} outside the range of method {}",
                method.as_str()
            )));
        }
        Ok(SkillEstimate {
            student,
            course,
            level,
            solved,
            method,
            at,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ids_reject_empty_and_padded() {
        assert!(CourseId::new("prog101").is_ok());
        assert!(CourseId::new("").is_err());
        assert!(StudentId::new(" s01").is_err());
        assert!(ContentId::new("it01 ").is_err());
    }

    #[test]
    fn semester_ids_validate_format_and_order() {
        let s1 = SemesterId::new("2024-S1").unwrap();
        let s2 = SemesterId::new("2024-S2").unwrap();
        let s3 = SemesterId::new("2025-S1").unwrap();
        assert!(s1 < s2 && s2 < s3);
        assert!(SemesterId::new("2024-S3").is_err());
        assert!(SemesterId::new("24-S1").is_err());
        assert!(SemesterId::new("2024S1").is_err());
    }

    #[test]
    fn actor_roles_come_from_the_prefix() {
        let lect = ActorId::new("lecturer:ana").unwrap();
        let stud = ActorId::new("s01").unwrap();
        assert!(lect.is_lecturer());
        assert!(!stud.is_lecturer());
        assert!(lect.to_student().is_err());
        assert_eq!(stud.to_student().unwrap().as_str(), "s01");
    }

    #[test]
    fn timestamps_round_trip_at_millisecond_precision() {
        let t = Timestamp::parse("2026-01-15T10:00:00.123Z").unwrap();
        assert_eq!(t.to_string(), "2026-01-15T10:00:00.123Z");
        // Sub-millisecond input is truncated.
        let t = Timestamp::parse("2026-01-15T10:00:00.123999Z").unwrap();
        assert_eq!(t.to_string(), "2026-01-15T10:00:00.123Z");
        let t = Timestamp::from_millis(0);
        assert_eq!(t.to_string(), "1970-01-01T00:00:00.000Z");
    }

    #[test]
    fn grade_record_derives_passed_from_threshold() {
        let g = |grade, thr| {
            GradeRecord::new(
                StudentId::new("s01").unwrap(),
                CourseId::new("c1").unwrap(),
                SemesterId::new("2024-S1").unwrap(),
                grade,
                thr,
            )
        };
        assert!(g(6, 6).unwrap().passed);
        assert!(!g(5, 6).unwrap().passed);
        assert!(!g(7, 8).unwrap().passed);
        assert!(g(4, 6).is_err());
        assert!(g(11, 6).is_err());
    }

    #[test]
    fn test_definition_normalizes_weights() {
        let def = TestDefinition::new(
            "t1",
            CourseId::new("c1").unwrap(),
            vec![2.0, 2.0, 2.0, 2.0],
        )
        .unwrap();
        assert_eq!(def.weights(), &[1.0, 1.0, 1.0, 1.0]);

        // Already satisfying the constraint: kept as-is.
        let def = TestDefinition::new(
            "t1",
            CourseId::new("c1").unwrap(),
            vec![2.0, 0.5, 0.5, 1.0],
        )
        .unwrap();
        assert_eq!(def.weights(), &[2.0, 0.5, 0.5, 1.0]);

        assert!(TestDefinition::new("t1", CourseId::new("c1").unwrap(), vec![]).is_err());
        assert!(
            TestDefinition::new("t1", CourseId::new("c1").unwrap(), vec![1.0, -1.0]).is_err()
        );
        assert!(
            TestDefinition::new("t1", CourseId::new("c1").unwrap(), vec![1.0, 0.0]).is_err()
        );
    }

    #[test]
    fn test_response_accepts_only_binary_results() {
        let s = StudentId::new("s01").unwrap();
        assert!(TestResponse::new("t1", s.clone(), vec![0, 1, 1]).is_ok());
        assert!(TestResponse::new("t1", s.clone(), vec![0, 2]).is_err());
        assert!(TestResponse::new("t1", s, vec![]).is_err());
    }

    #[test]
    fn skill_estimate_checks_method_range() {
        let mk = |level, method| {
            SkillEstimate::new(
                StudentId::new("s01").unwrap(),
                CourseId::new("c1").unwrap(),
                level,
                0.5,
                method,
                Timestamp::from_millis(0),
            )
        };
        assert!(mk(0.5, DefuzzMethod::Maximum).is_ok());
        assert!(mk(0.7, DefuzzMethod::Maximum).is_err());
        assert!(mk(0.5, DefuzzMethod::Centroid).is_ok());
        assert!(mk(0.2, DefuzzMethod::Centroid).is_err());
    }

    proptest! {
        /// Raw weights are rescaled so that their sum equals n, and
        /// re-normalizing the stored weights is a bit-exact no-op.
        #[test]
        fn weight_normalization_is_idempotent(raw in prop::collection::vec(0.01f64..100.0, 1..20)) {
            let course = CourseId::new("c1").unwrap();
            let def = TestDefinition::new("t", course.clone(), raw).unwrap();
            let n = def.n() as f64;
            let sum: f64 = def.weights().iter().sum();
            prop_assert!((sum - n).abs() <= WEIGHT_SUM_TOLERANCE);

            let again = TestDefinition::new("t", course, def.weights().to_vec()).unwrap();
            prop_assert_eq!(def.weights(), again.weights());
        }

        /// passed is a pure function of grade and threshold.
        #[test]
        fn passed_matches_threshold(grade in GRADE_MIN..=GRADE_MAX, thr in GRADE_MIN..=GRADE_MAX) {
            let g = GradeRecord::new(
                StudentId::new("s").unwrap(),
                CourseId::new("c").unwrap(),
                SemesterId::new("2024-S1").unwrap(),
                grade,
                thr,
            ).unwrap();
            prop_assert_eq!(g.passed, grade >= thr);
        }
    }
}
