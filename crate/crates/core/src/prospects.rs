//! Strategic states, prospects and prospect probabilities.
//!
//! The prospect operator `|π⟩⟨π|` is never built as a matrix: the
//! probability of a prospect is `|⟨π|ψ_s⟩|²`, computed from one inner
//! product. Prospect states need not be normalized, so the raw
//! probabilities of a prospect set need not sum to one;
//! [`normalize_probabilities`] does that explicitly.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QdtError, Result};
use crate::mindspace::{inner_product, norm, StateVector};

/// Accepted deviation of a strategic state's norm from one.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Relative overlap `|⟨π|ψ⟩| / ‖π‖` at or below which a projection is impossible.
const ZERO_OVERLAP: f64 = 1e-12;

/// Unit-norm state of mind of a decision maker.
#[derive(Debug, Clone)]
pub struct StrategicState(StateVector);

impl StrategicState {
    pub fn new(state: StateVector) -> Result<Self> {
        let n = norm(&state);
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(QdtError::validation(format!(
                "strategic state must have unit norm, got {n}"
            )));
        }
        Ok(StrategicState(state))
    }

    /// Rescales a nonzero state to unit norm.
    pub fn normalized(state: StateVector) -> Result<Self> {
        let n = norm(&state);
        if n == 0.0 {
            return Err(QdtError::validation("cannot normalize the zero vector"));
        }
        Ok(StrategicState(state.scale(Complex64::new(1.0 / n, 0.0))))
    }

    pub fn state(&self) -> &StateVector {
        &self.0
    }

    pub fn into_state(self) -> StateVector {
        self.0
    }
}

/// A labelled prospect with its (generally unnormalized) state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ProspectDoc")]
pub struct Prospect {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    acting: Option<bool>,
    state: StateVector,
}

#[derive(Deserialize)]
struct ProspectDoc {
    label: String,
    #[serde(default)]
    acting: Option<bool>,
    state: StateVector,
}

impl TryFrom<ProspectDoc> for Prospect {
    type Error = QdtError;

    fn try_from(doc: ProspectDoc) -> Result<Self> {
        Prospect::new(doc.label, doc.state, doc.acting)
    }
}

impl Prospect {
    /// `acting` marks the "act" option (`true`) versus "remain passive" (`false`).
    pub fn new<S: Into<String>>(label: S, state: StateVector, acting: Option<bool>) -> Result<Self> {
        let label = label.into();
        if state.is_zero() {
            return Err(QdtError::validation(format!(
                "prospect `{label}` has a zero state"
            )));
        }
        Ok(Prospect {
            label,
            acting,
            state,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn acting(&self) -> Option<bool> {
        self.acting
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }
}

/// Nonempty list of prospects with distinct labels.
#[derive(Debug, Clone)]
pub struct ProspectSet {
    prospects: Vec<Prospect>,
}

impl ProspectSet {
    pub fn new(prospects: Vec<Prospect>) -> Result<Self> {
        if prospects.is_empty() {
            return Err(QdtError::validation("prospect set is empty"));
        }
        let mut seen = HashSet::new();
        for p in &prospects {
            if !seen.insert(p.label.as_str()) {
                return Err(QdtError::validation(format!(
                    "duplicate prospect label `{}`",
                    p.label
                )));
            }
        }
        Ok(ProspectSet { prospects })
    }

    pub fn prospects(&self) -> &[Prospect] {
        &self.prospects
    }

    /// Raw (unnormalized) probabilities, in set order.
    pub fn probabilities(&self, s: &StrategicState) -> Result<Vec<f64>> {
        self.prospects
            .iter()
            .map(|p| prospect_probability(p, s))
            .collect()
    }
}

/// `|⟨π|ψ_s⟩|²`.
pub fn prospect_probability(p: &Prospect, s: &StrategicState) -> Result<f64> {
    Ok(inner_product(&p.state, &s.0)?.norm_sqr())
}

/// Divides each value by the total.
pub fn normalize_probabilities(raw: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = raw.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(QdtError::validation(format!(
            "probabilities must be finite and nonnegative, got {bad}"
        )));
    }
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return Err(QdtError::validation("cannot normalize: probabilities sum to zero"));
    }
    Ok(raw.iter().map(|x| x / total).collect())
}

/// Result of [`optimal_prospect`]: the chosen index and every index tied with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalChoice {
    pub index: usize,
    pub ties: Vec<usize>,
}

impl OptimalChoice {
    pub fn is_tie(&self) -> bool {
        self.ties.len() > 1
    }
}

/// Index of the largest probability; exact ties resolve to the lowest index.
pub fn optimal_prospect(probabilities: &[f64]) -> Result<OptimalChoice> {
    if probabilities.is_empty() {
        return Err(QdtError::validation("no probabilities to choose from"));
    }
    if probabilities.iter().any(|p| p.is_nan()) {
        return Err(QdtError::validation("NaN probability"));
    }
    let best = probabilities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = probabilities
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == best)
        .map(|(i, _)| i)
        .collect();
    Ok(OptimalChoice {
        index: ties[0],
        ties,
    })
}

/// Collapses the strategic state onto the prospect state after the prospect is chosen.
pub fn project_update(s: &StrategicState, p: &Prospect) -> Result<StrategicState> {
    let overlap = inner_product(&p.state, &s.0)?;
    let p_norm_sqr = p.state.norm_sqr();
    if overlap.norm() <= ZERO_OVERLAP * p_norm_sqr.sqrt() {
        return Err(QdtError::ImpossibleOutcome);
    }
    let projected = p.state.scale(overlap / p_norm_sqr);
    StrategicState::normalized(projected)
}

/// Probability of choosing `first` and then, right after, `second`.
pub fn sequence_probability(s: &StrategicState, first: &Prospect, second: &Prospect) -> Result<f64> {
    let p_first = prospect_probability(first, s)?;
    let after = project_update(s, first)?;
    Ok(p_first * prospect_probability(second, &after)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mindspace::{build_mind_basis, MindBasis};
    use std::f64::consts::FRAC_1_SQRT_2;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis() -> Arc<MindBasis> {
        Arc::new(build_mind_basis([("friend", vec!["A", "B"]), ("wealth", vec!["W", "G"])]).unwrap())
    }

    fn uniform() -> StrategicState {
        StrategicState::new(StateVector::from_dense(basis(), &[c(0.5, 0.0); 4]).unwrap()).unwrap()
    }

    fn prospect(label: &str, dense: [Complex64; 4]) -> Prospect {
        Prospect::new(label, StateVector::from_dense(basis(), &dense).unwrap(), None).unwrap()
    }

    fn pi_a() -> Prospect {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let z = c(0.0, 0.0);
        prospect("A(W+G)", [h, h, z, z])
    }

    #[test]
    fn probability_of_state_itself_is_one() {
        let s = uniform();
        let p = Prospect::new("self", s.state().scale(c(0.0, 1.0)), None).unwrap();
        assert!((prospect_probability(&p, &s).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_prospect_has_zero_probability() {
        let s = uniform();
        let p = prospect("o", [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(prospect_probability(&p, &s).unwrap(), 0.0);
    }

    #[test]
    fn composite_prospect_on_uniform_state() {
        // |a_1 c_11 + a_2 c_12|^2 = |2 · 0.5/√2|^2
        assert!((prospect_probability(&pi_a(), &uniform()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn strategic_state_must_be_unit() {
        let s = StateVector::from_dense(basis(), &[c(1.0, 0.0); 4]).unwrap();
        assert!(StrategicState::new(s.clone()).is_err());
        assert!((norm(StrategicState::normalized(s).unwrap().state()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_probabilities(&[0.5, 0.5]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(normalize_probabilities(&[0.3, 0.9]).unwrap(), vec![0.25, 0.75]);
        let n = normalize_probabilities(&[0.36, 0.64]).unwrap();
        assert!((n[0] - 0.36).abs() < 1e-15 && (n[1] - 0.64).abs() < 1e-15);
        assert!(normalize_probabilities(&[0.0, 0.0]).is_err());
        assert!(normalize_probabilities(&[-0.1, 0.5]).is_err());
    }

    #[test]
    fn optimal_choice() {
        assert_eq!(optimal_prospect(&[0.36, 0.64]).unwrap().index, 1);
        let tie = optimal_prospect(&[0.5, 0.5]).unwrap();
        assert_eq!(tie, OptimalChoice { index: 0, ties: vec![0, 1] });
        assert!(tie.is_tie());
        assert_eq!(optimal_prospect(&[0.2]).unwrap().index, 0);
        assert!(optimal_prospect(&[]).is_err());
    }

    #[test]
    fn projection_onto_composite_prospect() {
        let after = project_update(&uniform(), &pi_a()).unwrap();
        let expected = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0];
        for (got, want) in after.state().to_dense().iter().zip(expected) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }
        assert!((prospect_probability(&pi_a(), &after).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_keeps_proportional_state() {
        let s = uniform();
        let p = Prospect::new("s", s.state().scale(c(0.0, 2.0)), None).unwrap();
        let after = project_update(&s, &p).unwrap();
        let overlap = inner_product(s.state(), after.state()).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_on_orthogonal_prospect_fails() {
        let p = prospect("o", [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(project_update(&uniform(), &p), Err(QdtError::ImpossibleOutcome)));
        assert!(sequence_probability(&uniform(), &p, &pi_a()).is_err());
    }

    #[test]
    fn prospect_set_validation() {
        assert!(ProspectSet::new(vec![]).is_err());
        assert!(ProspectSet::new(vec![pi_a(), pi_a()]).is_err());
        let set = ProspectSet::new(vec![pi_a()]).unwrap();
        assert_eq!(set.probabilities(&uniform()).unwrap().len(), 1);
        assert!(Prospect::new("zero", StateVector::zeros(basis()), None).is_err());
    }

    #[test]
    fn prospect_json() {
        let p = Prospect::new("act", pi_a().state().clone(), Some(true)).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.starts_with(r#"{"label":"act","acting":true,"state":{"#));
        let back: Prospect = serde_json::from_str(&text).unwrap();
        assert_eq!(back.label(), "act");
        assert_eq!(back.acting(), Some(true));
        assert_eq!(back.state().to_dense(), p.state().to_dense());
    }
}
