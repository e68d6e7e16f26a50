//! Fuzzy expert system: turns a weighted test response into a crisp skill
//! level.
//!
//! The pipeline has three stages:
//!
//! 1. **Fuzzification** — [`score_test`] computes the membership degrees
//!    `solved = (sum of weights of correctly answered tasks) / n` and
//!    `mistaken = 1 - solved`.
//! 2. **Inference** — [`infer`] applies PRODUCT-SUM inference to the two
//!    rules *"if t is solved then l is high"* and *"if t is mistaken then l
//!    is low"*, with `high(L) = L` and `low(L) = 1 - L`. Each rule's output
//!    membership is scaled (PRODUCT) by its premise truth and the scaled
//!    outputs are added (SUM), giving the aggregate
//!    `f(L) = solved * L + mistaken * (1 - L)`.
//! 3. **Defuzzification** — [`defuzzify_maximum`] (the default) picks the
//!    scaled membership with the greatest peak degree and returns its argmax
//!    (1 for high, 0 for low, 0.5 on a tie); [`defuzzify_centroid`] returns
//!    the center of gravity, which has the closed form `(solved + 1) / 3`.
//!
//! Because `f` is affine in `L`, the output fuzzy subset is represented
//! exactly by the pair `(solved, mistaken)` — no sampled curve is stored.

use crate::domain::{DefuzzMethod, SkillEstimate, TestDefinition, TestResponse, Timestamp};
use crate::error::{Error, Result, Rule};

/// Tolerance on the complementarity invariant `solved + mistaken = 1`.
pub const COMPLEMENT_TOLERANCE: f64 = 1e-12;

/// The aggregated output fuzzy subset of the level variable, kept in the
/// exact analytic form `f(L) = solved * L + mistaken * (1 - L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyOutput {
    solved: f64,
    mistaken: f64,
}

impl FuzzyOutput {
    pub fn new(solved: f64, mistaken: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&solved) || !(0.0..=1.0).contains(&mistaken) {
            return Err(Error::InvalidArgument(format!(
                "membership degrees must lie in [0,1], got solved={solved}, mistaken={mistaken}"
            )));
        }
        if (solved + mistaken - 1.0).abs() > COMPLEMENT_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "solved + mistaken must equal 1, got {}",
                solved + mistaken
            )));
        }
        Ok(FuzzyOutput { solved, mistaken })
    }

    pub fn solved(&self) -> f64 {
        self.solved
    }

    pub fn mistaken(&self) -> f64 {
        self.mistaken
    }

    /// Evaluate the aggregated output membership `f(L)`.
    pub fn membership(&self, level: f64) -> f64 {
        self.solved * level + self.mistaken * (1.0 - level)
    }
}

/// Fuzzify a test response: the weighted fraction of correctly answered
/// tasks and its complement.
///
/// Returns `(solved, mistaken)` with `solved = (sum of k_i over correct
/// tasks) / n`. The response must have exactly as many entries as the test
/// has tasks.
pub fn score_test(def: &TestDefinition, resp: &TestResponse) -> Result<(f64, f64)> {
    if resp.results().len() != def.n() {
        return Err(Error::rejected(
            Rule::DimensionMismatch,
            format!(
                "test {} has {} tasks but the response has {} results",
                def.id,
                def.n(),
                resp.results().len()
            ),
        ));
    }
    let correct_weight: f64 = def
        .weights()
        .iter()
        .zip(resp.results())
        .filter(|(_, r)| **r == 1)
        .map(|(w, _)| *w)
        .sum();
    let solved = (correct_weight / def.n() as f64).clamp(0.0, 1.0);
    Ok((solved, 1.0 - solved))
}

/// PRODUCT-SUM inference over the two-rule base.
///
/// Rule R1 scales `high(L) = L` by `solved`; rule R2 scales
/// `low(L) = 1 - L` by `mistaken = 1 - solved`; SUM aggregation yields the
/// returned output subset.
pub fn infer(solved: f64) -> Result<FuzzyOutput> {
    if !(0.0..=1.0).contains(&solved) {
        return Err(Error::InvalidArgument(format!(
            "solved must lie in [0,1], got {solved}"
        )));
    }
    FuzzyOutput::new(solved, 1.0 - solved)
}

/// Maximum defuzzification: the typical (argmax) value of the scaled
/// membership with the greatest peak degree.
///
/// `high` peaks at L=1 with degree `solved`; `low` peaks at L=0 with degree
/// `mistaken`. A tie returns the midpoint 0.5.
pub fn defuzzify_maximum(out: &FuzzyOutput) -> f64 {
    match out
        .solved()
        .partial_cmp(&out.mistaken())
        .expect("membership degrees are finite")
    {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Less => 0.0,
        std::cmp::Ordering::Equal => 0.5,
    }
}

/// Centroid defuzzification in closed form.
///
/// For `f(L) = s*L + (1-s)*(1-L)` the center of gravity over [0,1] is
/// `(s + 1) / 3`, so the output always lies in [1/3, 2/3].
pub fn defuzzify_centroid(out: &FuzzyOutput) -> f64 {
    (out.solved() + 1.0) / 3.0
}

/// Full pipeline: fuzzify, infer, defuzzify, and package the result.
pub fn estimate_level(
    def: &TestDefinition,
    resp: &TestResponse,
    method: DefuzzMethod,
    at: Timestamp,
) -> Result<SkillEstimate> {
    let (solved, _) = score_test(def, resp)?;
    let out = infer(solved)?;
    let level = match method {
        DefuzzMethod::Maximum => defuzzify_maximum(&out),
        DefuzzMethod::Centroid => defuzzify_centroid(&out),
    };
    SkillEstimate::new(resp.student.clone(), def.course.clone(), level, solved, method, at)
}
