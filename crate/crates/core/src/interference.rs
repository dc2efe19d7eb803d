//! Interference decomposition of prospect probabilities and the quarter law.
//!
//! For a prospect `|π_i⟩ = Σ_j a_ij |A_i X_j⟩` and a strategic state with
//! coefficients `c_ij`, the probability splits as `p = f + q`: the utility
//! factor `f = Σ_j |a_ij c_ij|²` and the attraction factor `q = Σ_{j<k} q_jk`
//! with `q_jk = 2 Re(conj(a_ij) c_ij conj(c_ik) a_ik)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QdtError, Result};
use crate::prospects::normalize_probabilities;

/// Slack allowed on `|φ| ≤ 1` before data is declared inconsistent.
pub const PHI_TOLERANCE: f64 = 1e-9;

/// One cross term between modes `j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTerm {
    pub j: usize,
    pub k: usize,
    /// Interference term `q_jk`.
    pub q: f64,
    /// Uncertainty angle in radians.
    pub delta: f64,
    /// Uncertainty factor `cos(delta)`.
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceDecomposition {
    /// Prospect probability.
    pub p: f64,
    /// Utility factor.
    pub f: f64,
    /// Attraction (interference) factor.
    pub q: f64,
    pub pairwise: Vec<PairwiseTerm>,
    /// Joint probabilities `p(A_i X_j)`.
    pub joints: Vec<f64>,
}

/// Splits `|Σ_j conj(a_j) c_j|²` into joint and pairwise interference terms.
pub fn decompose(prospect: &[Complex64], strategic: &[Complex64]) -> Result<InterferenceDecomposition> {
    if prospect.is_empty() {
        return Err(QdtError::validation("decomposition needs at least one coefficient"));
    }
    if prospect.len() != strategic.len() {
        return Err(QdtError::validation(format!(
            "coefficient lists differ in length: {} vs {}",
            prospect.len(),
            strategic.len()
        )));
    }
    if prospect.iter().chain(strategic).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(QdtError::validation("coefficients must be finite"));
    }

    // w_j = conj(a_j) c_j is the overlap contributed by mode j.
    let w: Vec<Complex64> = prospect.iter().zip(strategic).map(|(a, c)| a.conj() * c).collect();
    let p = w.iter().sum::<Complex64>().norm_sqr();
    let joints: Vec<f64> = w.iter().map(Complex64::norm_sqr).collect();
    let f = joints.iter().sum();

    let mut pairwise = Vec::with_capacity(w.len() * (w.len() - 1) / 2);
    for j in 0..w.len() {
        for k in (j + 1)..w.len() {
            let z = w[j] * w[k].conj();
            let delta = z.arg();
            pairwise.push(PairwiseTerm {
                j,
                k,
                q: 2.0 * z.re,
                delta,
                phi: delta.cos(),
            });
        }
    }
    let q = pairwise.iter().map(|t| t.q).sum();
    Ok(InterferenceDecomposition {
        p,
        f,
        q,
        pairwise,
        joints,
    })
}

/// Decomposes every prospect of a set; row `i` holds `a_ij` and `c_ij`.
pub fn decompose_set(prospects: &[Vec<Complex64>], strategic: &[Vec<Complex64>]) -> Result<Vec<InterferenceDecomposition>> {
    if prospects.len() != strategic.len() {
        return Err(QdtError::validation("prospect and strategic rows differ in count"));
    }
    prospects
        .iter()
        .zip(strategic)
        .map(|(a, c)| decompose(a, c))
        .collect()
}

/// Attraction factors `p̃_i − f_i` after normalizing the raw probabilities
/// of a complete prospect set. When the utility factors sum to one these
/// alternate: their sum vanishes.
pub fn normalized_attractions(set: &[InterferenceDecomposition]) -> Result<Vec<f64>> {
    let raw: Vec<f64> = set.iter().map(|d| d.p).collect();
    let normalized = normalize_probabilities(&raw)?;
    Ok(normalized.iter().zip(set).map(|(p, d)| p - d.f).collect())
}

/// `φ = q / (2√(joint1·joint2))`, required to lie in `[-1, 1]`.
pub fn uncertainty_factor(q: f64, joint1: f64, joint2: f64) -> Result<f64> {
    if q == 0.0 {
        return Ok(0.0);
    }
    if joint1 <= 0.0 || joint2 <= 0.0 {
        return Err(QdtError::UndefinedFactor { q });
    }
    let phi = q / (2.0 * (joint1 * joint2).sqrt());
    if phi.abs() > 1.0 + PHI_TOLERANCE || !phi.is_finite() {
        return Err(QdtError::InconsistentData { phi });
    }
    Ok(phi)
}

/// Total interference `Σ q_j` of a prospect set.
pub fn alternation_residual(qs: &[f64]) -> f64 {
    qs.iter().sum()
}

/// Mixture of a point mass at zero and the uniform density on `[0, 1]`,
/// used as the prior on the magnitude of an attraction factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarterLawPrior {
    delta_weight: f64,
    uniform_weight: f64,
}

impl QuarterLawPrior {
    pub fn new(delta_weight: f64, uniform_weight: f64) -> Result<Self> {
        let in_unit = |w: f64| w.is_finite() && (0.0..=1.0).contains(&w);
        if !in_unit(delta_weight) || !in_unit(uniform_weight) {
            return Err(QdtError::validation("prior weights must lie in [0, 1]"));
        }
        if (delta_weight + uniform_weight - 1.0).abs() > 1e-12 {
            return Err(QdtError::validation(format!(
                "prior weights must sum to 1, got {}",
                delta_weight + uniform_weight
            )));
        }
        Ok(QuarterLawPrior {
            delta_weight,
            uniform_weight,
        })
    }

    /// Equal-weight mixture of the two limiting densities.
    pub fn even_mixture() -> Self {
        QuarterLawPrior {
            delta_weight: 0.5,
            uniform_weight: 0.5,
        }
    }

    pub fn delta_weight(&self) -> f64 {
        self.delta_weight
    }

    pub fn uniform_weight(&self) -> f64 {
        self.uniform_weight
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if rng.gen::<f64>() < self.delta_weight {
            0.0
        } else {
            rng.gen::<f64>()
        }
    }
}

impl Default for QuarterLawPrior {
    fn default() -> Self {
        QuarterLawPrior::even_mixture()
    }
}

/// Closed-form mean of the prior: the point mass contributes nothing, the
/// uniform part has mean one half.
pub fn expected_interference_magnitude(prior: &QuarterLawPrior) -> f64 {
    prior.uniform_weight * 0.5
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub samples: u64,
    pub mean: f64,
    pub std_error: f64,
}

/// Welford accumulator; merged with Chan's pairwise update.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64,
        }
    }

    fn summary(self) -> SampleSummary {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        SampleSummary {
            samples: self.n,
            mean: self.mean,
            std_error: (var / self.n as f64).sqrt(),
        }
    }
}

/// Deterministic random stream for a seed.
pub fn seeded_stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monte Carlo estimate of the prior's mean magnitude from `n` draws of `rng`.
pub fn sample_interference_magnitude<R: Rng + ?Sized>(
    rng: &mut R,
    prior: &QuarterLawPrior,
    n: u64,
) -> Result<SampleSummary> {
    if n == 0 {
        return Err(QdtError::validation("sample count must be at least 1"));
    }
    let mut m = Moments::default();
    for _ in 0..n {
        m.push(prior.draw(rng));
    }
    Ok(m.summary())
}

/// Splits `n` draws over `workers` threads. Worker `w` uses stream `w` of the
/// seeded generator; partial results merge in worker order, so the output
/// depends only on `(seed, n, workers)`.
pub fn sample_interference_magnitude_parallel(
    seed: u64,
    prior: &QuarterLawPrior,
    n: u64,
    workers: usize,
) -> Result<SampleSummary> {
    if n == 0 {
        return Err(QdtError::validation("sample count must be at least 1"));
    }
    if workers == 0 {
        return Err(QdtError::validation("worker count must be at least 1"));
    }
    let w = workers as u64;
    let partials: Vec<Moments> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..w)
            .map(|i| {
                let count = n / w + u64::from(i < n % w);
                scope.spawn(move || {
                    let mut rng = seeded_stream(seed);
                    rng.set_stream(i);
                    let mut m = Moments::default();
                    for _ in 0..count {
                        m.push(prior.draw(&mut rng));
                    }
                    m
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
    });
    Ok(partials.into_iter().fold(Moments::default(), Moments::merge).summary())
}

/// `2 φ̄ √(p(A|X1) p(X1) p(A|X2) p(X2))` for a binary prospect set.
pub fn binary_quarter_estimate(expected_phi_magnitude: f64, probs: [f64; 4]) -> f64 {
    2.0 * expected_phi_magnitude * probs.iter().product::<f64>().sqrt()
}
