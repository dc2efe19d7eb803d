//! The two-friends illustration: friend `A` or `B` combined with getting
//! rich by hard work (`W`) or as a gangster (`G`), on a uniform strategic
//! state.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::entanglement::{entanglement_report, EntanglementReport, DEFAULT_TOLERANCE};
use crate::error::Result;
use crate::interference::{decompose, InterferenceDecomposition};
use crate::mindspace::{build_mind_basis, MindBasis, StateVector};
use crate::prospects::{
    normalize_probabilities, optimal_prospect, project_update, prospect_probability, sequence_probability,
    OptimalChoice, Prospect, StrategicState,
};

#[derive(Debug, Clone, Serialize)]
pub struct SequencePair {
    pub first: String,
    pub second: String,
    pub forward: f64,
    pub reverse: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FriendsDemo {
    /// Strategic coefficients in basis order `AW, AG, BW, BG`.
    pub strategic: Vec<f64>,
    pub p_a: f64,
    pub p_b: f64,
    pub decomposition_a: InterferenceDecomposition,
    pub decomposition_b: InterferenceDecomposition,
    pub normalized: Vec<f64>,
    pub optimal: OptimalChoice,
    /// Strategic coefficients after choosing `A(W+G)`.
    pub after_choosing_a: Vec<f64>,
    pub repeat_probability: f64,
    pub sequences: Vec<SequencePair>,
    pub prospect_a_entanglement: EntanglementReport,
    pub bell_entanglement: EntanglementReport,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn prospect(basis: &Arc<MindBasis>, label: &str, dense: [f64; 4]) -> Result<Prospect> {
    let coeffs: Vec<Complex64> = dense.iter().map(|&x| c(x)).collect();
    Prospect::new(label, StateVector::from_dense(Arc::clone(basis), &coeffs)?, None)
}

pub fn friends() -> Result<FriendsDemo> {
    let basis = Arc::new(build_mind_basis([
        ("friend", vec!["A", "B"]),
        ("wealth", vec!["W", "G"]),
    ])?);
    let strategic = [0.5; 4];
    let s = StrategicState::new(StateVector::from_dense(
        Arc::clone(&basis),
        &strategic.map(c),
    )?)?;

    let h = FRAC_1_SQRT_2;
    let pi_a = prospect(&basis, "A(W+G)", [h, h, 0.0, 0.0])?;
    let pi_b = prospect(&basis, "B(W+G)", [0.0, 0.0, h, h])?;
    let p_a = prospect_probability(&pi_a, &s)?;
    let p_b = prospect_probability(&pi_b, &s)?;
    let decomposition_a = decompose(&[c(h), c(h)], &[c(0.5), c(0.5)])?;
    let decomposition_b = decompose(&[c(h), c(h)], &[c(0.5), c(0.5)])?;
    let normalized = normalize_probabilities(&[p_a, p_b])?;
    let optimal = optimal_prospect(&normalized)?;

    let after = project_update(&s, &pi_a)?;
    let after_choosing_a = after.state().to_dense().iter().map(|z| z.re).collect();
    let repeat_probability = prospect_probability(&pi_a, &after)?;

    let w_either = prospect(&basis, "(A+B)W", [h, 0.0, h, 0.0])?;
    let w_weighted = prospect(&basis, "(0.8A+0.6B)W", [0.8, 0.0, 0.6, 0.0])?;
    let sequences = [&w_either, &w_weighted]
        .into_iter()
        .map(|second| {
            Ok(SequencePair {
                first: pi_a.label().to_string(),
                second: second.label().to_string(),
                forward: sequence_probability(&s, &pi_a, second)?,
                reverse: sequence_probability(&s, second, &pi_a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let bell = prospect(&basis, "AW+BG", [h, 0.0, 0.0, h])?;
    Ok(FriendsDemo {
        strategic: strategic.to_vec(),
        p_a,
        p_b,
        decomposition_a,
        decomposition_b,
        normalized,
        optimal,
        after_choosing_a,
        repeat_probability,
        sequences,
        prospect_a_entanglement: entanglement_report(pi_a.state(), DEFAULT_TOLERANCE)?,
        bell_entanglement: entanglement_report(bell.state(), DEFAULT_TOLERANCE)?,
    })
}
