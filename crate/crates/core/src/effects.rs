//! Disjunction effect and conjunction fallacy from recorded choice frequencies.
//!
//! Both effects are read through the binary prospect set `AX = A(X1 + X2)`,
//! `BX = B(X1 + X2)`: the observed probability of a prospect minus its
//! utility factor (the classical total-probability value) is the attraction
//! factor `q`. Which option is "acting" is fixed by the caller through field
//! order; acting under uncertainty carries the negative attraction.

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, QdtError, Result};
use crate::interference::uncertainty_factor;

/// Expected magnitude of the attraction factor under the quarter law.
pub const QUARTER: f64 = 0.25;

/// Conditional probability `p(A|X_j)` assumed for incompatible feature pairs.
pub const INCOMPATIBLE_CONDITIONAL: f64 = 0.5;

/// Relative statistical error of the published choice frequencies.
pub const STATISTICAL_ERROR: f64 = 0.2;

const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Law of total probability: `Σ_j P(A|X_j) P(X_j)`.
pub fn classical_aggregate(conditionals: &[f64], weights: &[f64]) -> Result<f64> {
    if conditionals.len() != weights.len() {
        return Err(QdtError::validation(format!(
            "{} conditionals but {} weights",
            conditionals.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(QdtError::validation("weights must be nonnegative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(QdtError::validation(format!("weights sum to {total}, not 1")));
    }
    Ok(conditionals.iter().zip(weights).map(|(c, w)| c * w).sum())
}

/// Conditional act probabilities, outcome prior and the act probability
/// observed when the outcome is unknown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisjunctionInput {
    pub p_a_given_x1: f64,
    pub p_a_given_x2: f64,
    pub p_x1: f64,
    pub p_ax_observed: f64,
}

impl DisjunctionInput {
    pub fn new(p_a_given_x1: f64, p_a_given_x2: f64, p_x1: f64, p_ax_observed: f64) -> Result<Self> {
        let input = DisjunctionInput {
            p_a_given_x1,
            p_a_given_x2,
            p_x1,
            p_ax_observed,
        };
        input.validate(None)?;
        Ok(input)
    }

    pub(crate) fn validate(&self, line: Option<usize>) -> Result<()> {
        check_probability(self.p_a_given_x1, "pA_given_X1", line)?;
        check_probability(self.p_a_given_x2, "pA_given_X2", line)?;
        check_probability(self.p_x1, "p_X1", line)?;
        check_probability(self.p_ax_observed, "p_AX", line)?;
        Ok(())
    }

    pub fn p_x2(&self) -> f64 {
        1.0 - self.p_x1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjunctionReport {
    pub input: DisjunctionInput,
    pub p_ax1: f64,
    pub p_ax2: f64,
    pub p_bx1: f64,
    pub p_bx2: f64,
    pub q_ax: f64,
    pub q_bx: f64,
    pub phi_ax: f64,
    pub phi_bx: f64,
    /// Total-probability value of `p(AX)`.
    pub classical_p_ax: f64,
    pub sure_thing_violated: bool,
    /// `|q_AX| − 1/4`.
    pub quarter_law_deviation: f64,
}

impl DisjunctionReport {
    pub fn p_bx_observed(&self) -> f64 {
        1.0 - self.input.p_ax_observed
    }

    /// Recovers the input from the joints and the attraction factor alone.
    pub fn reconstruct_input(&self) -> DisjunctionInput {
        let p_x1 = self.p_ax1 + self.p_bx1;
        let p_x2 = self.p_ax2 + self.p_bx2;
        DisjunctionInput {
            p_a_given_x1: self.p_ax1 / p_x1,
            p_a_given_x2: self.p_ax2 / p_x2,
            p_x1,
            p_ax_observed: self.p_ax1 + self.p_ax2 + self.q_ax,
        }
    }
}

/// Attraction and uncertainty factors of the act/pass prospects.
///
/// A zero joint makes the uncertainty factor undefined; the error then
/// carries `q_AX`.
pub fn analyze_disjunction(input: &DisjunctionInput) -> Result<DisjunctionReport> {
    input.validate(None)?;
    let p_x1 = input.p_x1;
    let p_x2 = input.p_x2();
    let p_b1 = 1.0 - input.p_a_given_x1;
    let p_b2 = 1.0 - input.p_a_given_x2;

    let p_ax1 = input.p_a_given_x1 * p_x1;
    let p_ax2 = input.p_a_given_x2 * p_x2;
    let p_bx1 = p_b1 * p_x1;
    let p_bx2 = p_b2 * p_x2;

    let classical_p_ax = p_ax1 + p_ax2;
    let q_ax = input.p_ax_observed - classical_p_ax;
    let q_bx = -q_ax;

    let phi_ax = uncertainty_factor(q_ax, p_ax1, p_ax2)?;
    let phi_bx = uncertainty_factor(q_bx, p_bx1, p_bx2)?;

    let dominant = input.p_a_given_x1 > p_b1 && input.p_a_given_x2 > p_b2;
    let sure_thing_violated = dominant && input.p_ax_observed < 1.0 - input.p_ax_observed;

    Ok(DisjunctionReport {
        input: *input,
        p_ax1,
        p_ax2,
        p_bx1,
        p_bx2,
        q_ax,
        q_bx,
        phi_ax,
        phi_bx,
        classical_p_ax,
        sure_thing_violated,
        quarter_law_deviation: q_ax.abs() - QUARTER,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjunctionPrediction {
    pub p_ax: f64,
    pub p_bx: f64,
    /// Set when a predicted value falls outside `[0, 1]`; values are not clamped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

/// Quarter-law prediction: the act prospect loses `1/4`, the passive one gains it.
pub fn predict_disjunction(p_a_given_x1: f64, p_a_given_x2: f64, p_x1: f64) -> Result<DisjunctionPrediction> {
    check_probability(p_a_given_x1, "pA_given_X1", None)?;
    check_probability(p_a_given_x2, "pA_given_X2", None)?;
    check_probability(p_x1, "p_X1", None)?;
    let p_x2 = 1.0 - p_x1;
    let f_a = p_a_given_x1 * p_x1 + p_a_given_x2 * p_x2;
    let f_b = (1.0 - p_a_given_x1) * p_x1 + (1.0 - p_a_given_x2) * p_x2;
    let p_ax = f_a - QUARTER;
    let p_bx = f_b + QUARTER;
    let out = |p: f64| !(0.0..=1.0).contains(&p);
    let warning = (out(p_ax) || out(p_bx)).then(|| {
        format!("prediction outside [0, 1]: p(AX) = {p_ax:.3}, p(BX) = {p_bx:.3}")
    });
    Ok(DisjunctionPrediction { p_ax, p_bx, warning })
}

/// A primary feature `A`, a secondary feature `X1`, and the judged
/// probabilities of `A` alone and of the conjunction `A and X1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctionRow {
    pub label_a: String,
    pub label_x1: String,
    pub p_ax: f64,
    pub p_ax1: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_x1: Option<f64>,
}

impl ConjunctionRow {
    pub fn new(label_a: &str, label_x1: &str, p_ax: f64, p_ax1: f64, p_x1: Option<f64>) -> Result<Self> {
        let row = ConjunctionRow {
            label_a: label_a.to_string(),
            label_x1: label_x1.to_string(),
            p_ax,
            p_ax1,
            p_x1,
        };
        row.validate(None)?;
        Ok(row)
    }

    pub(crate) fn validate(&self, line: Option<usize>) -> Result<()> {
        check_probability(self.p_ax, "p_AX", line)?;
        check_probability(self.p_ax1, "p_AX1", line)?;
        if let Some(p) = self.p_x1 {
            check_probability(p, "p_X1", line)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctionReport {
    pub label_a: String,
    pub label_x1: String,
    pub p_ax: f64,
    pub p_ax1: f64,
    /// `p(AX) − 1/2`, valid for incompatible feature pairs.
    pub q_ax: f64,
    /// Conjunction error `p(AX1) − p(AX)`.
    pub epsilon: f64,
    pub fallacy: bool,
    /// Whether `ε` exceeds the relative statistical error of `p(AX)`.
    pub resolved: bool,
    /// `|q_AX| > p(AX2)` with `p(AX2) = (1 − p(X1))/2`; needs `p(X1)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallacy_condition_met: Option<bool>,
}

impl ConjunctionReport {
    /// Fallacy that stands out of the statistical error.
    pub fn significant_fallacy(&self) -> bool {
        self.fallacy && self.resolved
    }
}

pub fn analyze_conjunction(row: &ConjunctionRow) -> Result<ConjunctionReport> {
    row.validate(None)?;
    let q_ax = row.p_ax - INCOMPATIBLE_CONDITIONAL;
    let epsilon = row.p_ax1 - row.p_ax;
    let fallacy_condition_met = row
        .p_x1
        .map(|p_x1| q_ax.abs() > INCOMPATIBLE_CONDITIONAL * (1.0 - p_x1));
    Ok(ConjunctionReport {
        label_a: row.label_a.clone(),
        label_x1: row.label_x1.clone(),
        p_ax: row.p_ax,
        p_ax1: row.p_ax1,
        q_ax,
        epsilon,
        fallacy: epsilon > 0.0,
        resolved: epsilon.abs() > STATISTICAL_ERROR * row.p_ax,
        fallacy_condition_met,
    })
}

/// Probability of staying passive under uncertainty, `p(AX) + 2|q(AX)|`.
pub fn conjunction_to_disjunction(p_ax: f64, q_ax: f64) -> Result<f64> {
    if q_ax > 0.0 {
        return Err(QdtError::SignConvention { q: q_ax });
    }
    Ok(p_ax + 2.0 * q_ax.abs())
}

/// Fallacy condition checked on dataset averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregateCondition {
    pub p_x1: f64,
    pub p_ax2: f64,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjunctionSummary {
    pub rows: usize,
    pub mean_p_ax: f64,
    pub mean_p_ax1: f64,
    pub mean_q_ax: f64,
    /// Population standard deviation of `q_AX`.
    pub std_q_ax: f64,
    /// Mean absolute deviation of `q_AX` from its mean.
    pub mean_abs_dev_q_ax: f64,
    pub mean_epsilon: f64,
    pub fallacy_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub aggregate_condition: Option<AggregateCondition>,
}

pub fn aggregate_rows(reports: &[ConjunctionReport]) -> Result<ConjunctionSummary> {
    if reports.is_empty() {
        return Err(QdtError::EmptyDataset { line: None });
    }
    let n = reports.len() as f64;
    let mean = |f: fn(&ConjunctionReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    let mean_q_ax = mean(|r| r.q_ax);
    let var = reports.iter().map(|r| (r.q_ax - mean_q_ax).powi(2)).sum::<f64>() / n;
    let mad = reports.iter().map(|r| (r.q_ax - mean_q_ax).abs()).sum::<f64>() / n;
    Ok(ConjunctionSummary {
        rows: reports.len(),
        mean_p_ax: mean(|r| r.p_ax),
        mean_p_ax1: mean(|r| r.p_ax1),
        mean_q_ax,
        std_q_ax: var.sqrt(),
        mean_abs_dev_q_ax: mad,
        mean_epsilon: mean(|r| r.epsilon),
        fallacy_rate: reports.iter().filter(|r| r.fallacy).count() as f64 / n,
        aggregate_condition: None,
    })
}

impl ConjunctionSummary {
    /// Checks `|q̄| > p(AX2)` against a dataset-wide `p(X1)`.
    pub fn with_aggregate_p_x1(mut self, p_x1: f64) -> Result<Self> {
        check_probability(p_x1, "p_X1", None)?;
        let p_ax2 = INCOMPATIBLE_CONDITIONAL * (1.0 - p_x1);
        self.aggregate_condition = Some(AggregateCondition {
            p_x1,
            p_ax2,
            met: self.mean_q_ax.abs() > p_ax2,
        });
        Ok(self)
    }
}
