//! Mode bases, the tensor-product mind space and state vectors over it.
//!
//! A mind space is the tensor product of one mode space per intention. Its
//! orthonormal basis is addressed by multi-indices `(ν_1, ν_2, …)` with
//! `ν_i < M_i`, flattened row-major in the order the intentions were given
//! (the last intention varies fastest).
//!
//! Inner products are conjugate-linear in the first argument:
//! `⟨u|v⟩ = Σ_n conj(u_n)·v_n`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QdtError, Result};

/// A complex coefficient of a state vector.
pub type Amplitude = Complex64;

/// Largest mind-space dimension accepted by [`MindBasis`].
pub const MAX_DIMENSION: usize = 1 << 20;

/// Builds an amplitude, rejecting NaN and infinite components.
pub fn amplitude(re: f64, im: f64) -> Result<Amplitude> {
    if !re.is_finite() || !im.is_finite() {
        return Err(QdtError::validation(format!(
            "amplitude components must be finite, got ({re}, {im})"
        )));
    }
    Ok(Complex64::new(re, im))
}

/// The modes (concrete variants) of a single intention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBasis {
    intention: String,
    modes: Vec<String>,
}

impl ModeBasis {
    pub fn new<S: Into<String>>(intention: S, modes: Vec<String>) -> Result<Self> {
        let intention = intention.into();
        if modes.is_empty() {
            return Err(QdtError::validation(format!(
                "intention `{intention}` has no modes"
            )));
        }
        let mut seen = HashSet::with_capacity(modes.len());
        for m in &modes {
            if !seen.insert(m.as_str()) {
                return Err(QdtError::validation(format!(
                    "duplicate mode label `{m}` in intention `{intention}`"
                )));
            }
        }
        Ok(ModeBasis { intention, modes })
    }

    pub fn intention(&self) -> &str {
        &self.intention
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn dimension(&self) -> usize {
        self.modes.len()
    }
}

/// Tensor-product basis of all intentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MindBasis {
    modes: Vec<ModeBasis>,
    dims: Vec<usize>,
    dimension: usize,
}

impl MindBasis {
    pub fn new(modes: Vec<ModeBasis>) -> Result<Self> {
        if modes.is_empty() {
            return Err(QdtError::validation("mind basis needs at least one intention"));
        }
        let dims: Vec<usize> = modes.iter().map(ModeBasis::dimension).collect();
        let mut dimension = 1usize;
        for &d in &dims {
            dimension = dimension
                .checked_mul(d)
                .filter(|&n| n <= MAX_DIMENSION)
                .ok_or_else(|| {
                    QdtError::validation(format!(
                        "mind-space dimension exceeds the cap of {MAX_DIMENSION}"
                    ))
                })?;
        }
        Ok(MindBasis {
            modes,
            dims,
            dimension,
        })
    }

    pub fn intentions(&self) -> &[ModeBasis] {
        &self.modes
    }

    pub fn intention_count(&self) -> usize {
        self.modes.len()
    }

    /// Mode counts `M_i`, one per intention.
    pub fn mode_counts(&self) -> &[usize] {
        &self.dims
    }

    /// Product of all mode counts.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Flattens a multi-index (row-major, last intention fastest).
    pub fn flat_index(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.dims.len() {
            return Err(QdtError::validation(format!(
                "multi-index has {} entries, basis has {} intentions",
                index.len(),
                self.dims.len()
            )));
        }
        let mut flat = 0usize;
        for (i, (&nu, &m)) in index.iter().zip(&self.dims).enumerate() {
            if nu >= m {
                return Err(QdtError::validation(format!(
                    "mode index {nu} out of range for intention {i} with {m} modes"
                )));
            }
            flat = flat * m + nu;
        }
        Ok(flat)
    }

    /// Inverse of [`flat_index`](Self::flat_index). Panics if `flat` is out of range.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        assert!(flat < self.dimension, "flat index {flat} out of range");
        let mut index = vec![0; self.dims.len()];
        for (slot, &m) in index.iter_mut().zip(&self.dims).rev() {
            *slot = flat % m;
            flat /= m;
        }
        index
    }

    /// Human-readable label of a basis vector, e.g. `|A,W>`.
    pub fn label(&self, index: &[usize]) -> Option<String> {
        let parts: Option<Vec<&str>> = index
            .iter()
            .zip(&self.modes)
            .map(|(&nu, mb)| mb.modes.get(nu).map(String::as_str))
            .collect();
        parts.map(|p| format!("|{}>", p.join(",")))
    }
}

/// Builds a mind basis from `(intention, modes)` pairs.
pub fn build_mind_basis<I, S, M>(specs: I) -> Result<MindBasis>
where
    I: IntoIterator<Item = (S, Vec<M>)>,
    S: Into<String>,
    M: Into<String>,
{
    let modes = specs
        .into_iter()
        .map(|(intention, labels)| {
            ModeBasis::new(intention, labels.into_iter().map(Into::into).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    MindBasis::new(modes)
}

/// A vector in the mind space, stored sparsely (absent entries are zero).
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Arc<MindBasis>,
    amplitudes: BTreeMap<usize, Amplitude>,
}

impl StateVector {
    pub fn zeros(basis: Arc<MindBasis>) -> Self {
        StateVector {
            basis,
            amplitudes: BTreeMap::new(),
        }
    }

    /// Builds a state from `(multi-index, amplitude)` pairs. Repeated indices are rejected.
    pub fn from_entries<I, Ix>(basis: Arc<MindBasis>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ix, Amplitude)>,
        Ix: AsRef<[usize]>,
    {
        let mut amplitudes = BTreeMap::new();
        let mut seen = HashSet::new();
        for (index, amp) in entries {
            let flat = basis.flat_index(index.as_ref())?;
            amplitude(amp.re, amp.im)?;
            if !seen.insert(flat) {
                return Err(QdtError::validation(format!(
                    "multi-index {:?} given more than once",
                    index.as_ref()
                )));
            }
            if amp != Complex64::new(0.0, 0.0) {
                amplitudes.insert(flat, amp);
            }
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// Builds a state from a dense coefficient list in flat basis order.
    pub fn from_dense(basis: Arc<MindBasis>, coeffs: &[Amplitude]) -> Result<Self> {
        if coeffs.len() != basis.dimension() {
            return Err(QdtError::validation(format!(
                "expected {} coefficients, got {}",
                basis.dimension(),
                coeffs.len()
            )));
        }
        let mut amplitudes = BTreeMap::new();
        for (flat, &c) in coeffs.iter().enumerate() {
            amplitude(c.re, c.im)?;
            if c != Complex64::new(0.0, 0.0) {
                amplitudes.insert(flat, c);
            }
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// The unit vector at `index`.
    pub fn basis_vector(basis: Arc<MindBasis>, index: &[usize]) -> Result<Self> {
        let flat = basis.flat_index(index)?;
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(flat, Complex64::new(1.0, 0.0));
        Ok(StateVector { basis, amplitudes })
    }

    pub fn basis(&self) -> &Arc<MindBasis> {
        &self.basis
    }

    pub fn amplitude(&self, index: &[usize]) -> Result<Amplitude> {
        let flat = self.basis.flat_index(index)?;
        Ok(self.amplitude_at(flat))
    }

    pub fn amplitude_at(&self, flat: usize) -> Amplitude {
        self.amplitudes
            .get(&flat)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Nonzero entries in flat order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Amplitude)> + '_ {
        self.amplitudes.iter().map(|(&k, &v)| (k, v))
    }

    pub fn to_dense(&self) -> Vec<Amplitude> {
        let mut dense = vec![Complex64::new(0.0, 0.0); self.basis.dimension()];
        for (k, v) in self.entries() {
            dense[k] = v;
        }
        dense
    }

    pub fn scale(&self, factor: Amplitude) -> StateVector {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&k, &v)| (k, v * factor))
            .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
            .collect();
        StateVector {
            basis: Arc::clone(&self.basis),
            amplitudes,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(Complex64::norm_sqr).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn same_basis(&self, other: &StateVector) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QdtError::Parse {
            line: Some(e.line()),
            field: "state".into(),
            message: e.to_string(),
        })
    }
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner_product(u: &StateVector, v: &StateVector) -> Result<Amplitude> {
    if !u.same_basis(v) {
        return Err(QdtError::BasisMismatch);
    }
    let (small, large, swap) = if u.amplitudes.len() <= v.amplitudes.len() {
        (u, v, false)
    } else {
        (v, u, true)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in small.entries() {
        if let Some(&b) = large.amplitudes.get(&k) {
            acc += if swap { b.conj() * a } else { a.conj() * b };
        }
    }
    Ok(acc)
}

pub fn norm(u: &StateVector) -> f64 {
    u.norm_sqr().sqrt()
}

/// Tensor product of one amplitude list per intention.
pub fn tensor_product_states(
    basis: Arc<MindBasis>,
    factors: &[Vec<Amplitude>],
) -> Result<StateVector> {
    if factors.len() != basis.intention_count() {
        return Err(QdtError::validation(format!(
            "expected {} factors, got {}",
            basis.intention_count(),
            factors.len()
        )));
    }
    for (i, (f, &m)) in factors.iter().zip(basis.mode_counts()).enumerate() {
        if f.len() != m {
            return Err(QdtError::validation(format!(
                "factor {i} has {} amplitudes, intention has {m} modes",
                f.len()
            )));
        }
        for c in f {
            amplitude(c.re, c.im)?;
        }
    }

    // Cartesian product over the nonzero entries of each factor.
    let mut partial: Vec<(usize, Amplitude)> = vec![(0, Complex64::new(1.0, 0.0))];
    for (f, &m) in factors.iter().zip(basis.mode_counts()) {
        let nonzero: Vec<(usize, Amplitude)> = f
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .collect();
        partial = partial
            .iter()
            .flat_map(|&(flat, amp)| nonzero.iter().map(move |&(nu, c)| (flat * m + nu, amp * c)))
            .collect();
    }
    let amplitudes = partial
        .into_iter()
        .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
        .collect();
    Ok(StateVector { basis, amplitudes })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModeDoc {
    intention: String,
    modes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AmplitudeDoc {
    index: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StateDoc {
    basis: Vec<ModeDoc>,
    amplitudes: Vec<AmplitudeDoc>,
}

impl From<&StateVector> for StateDoc {
    fn from(s: &StateVector) -> Self {
        StateDoc {
            basis: s
                .basis
                .intentions()
                .iter()
                .map(|m| ModeDoc {
                    intention: m.intention.clone(),
                    modes: m.modes.clone(),
                })
                .collect(),
            amplitudes: s
                .entries()
                .map(|(k, c)| AmplitudeDoc {
                    index: s.basis.multi_index(k),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<StateDoc> for StateVector {
    type Error = QdtError;

    fn try_from(doc: StateDoc) -> Result<Self> {
        let basis = Arc::new(build_mind_basis(
            doc.basis.into_iter().map(|m| (m.intention, m.modes)),
        )?);
        let entries = doc
            .amplitudes
            .into_iter()
            .map(|a| amplitude(a.re, a.im).map(|c| (a.index, c)))
            .collect::<Result<Vec<_>>>()?;
        StateVector::from_entries(basis, entries)
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = StateDoc::deserialize(deserializer)?;
        StateVector::try_from(doc).map_err(serde::de::Error::custom)
    }
}
