//! Entangled versus disentangled prospect states.
//!
//! A state is disentangled when it factors into a tensor product of
//! per-intention states. Reshaping the coefficients along a cut of the
//! intentions gives a matrix whose rank (the Schmidt rank) is one exactly
//! when the state factors across that cut.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{QdtError, Result};
use crate::linalg::CMatrix;
use crate::mindspace::StateVector;

/// Relative singular-value cutoff used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A split of the intentions into two nonempty groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
}

impl Bipartition {
    pub fn new<I: IntoIterator<Item = usize>>(intention_count: usize, left: I) -> Result<Self> {
        let left: BTreeSet<usize> = left.into_iter().collect();
        if let Some(&bad) = left.iter().find(|&&i| i >= intention_count) {
            return Err(QdtError::validation(format!(
                "intention {bad} out of range for {intention_count} intentions"
            )));
        }
        let right: BTreeSet<usize> = (0..intention_count).filter(|i| !left.contains(i)).collect();
        if left.is_empty() || right.is_empty() {
            return Err(QdtError::validation("both sides of a bipartition must be nonempty"));
        }
        Ok(Bipartition { left, right })
    }

    /// Intention `i` against all the others.
    pub fn single(intention_count: usize, i: usize) -> Result<Self> {
        Bipartition::new(intention_count, [i])
    }

    pub fn left(&self) -> &BTreeSet<usize> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<usize> {
        &self.right
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementVerdict {
    pub entangled: bool,
    pub schmidt_rank: usize,
    pub singular_values: Vec<f64>,
    pub tolerance_used: f64,
}

/// Reshapes the state's coefficients into a `(Π_left M_i) × (Π_right M_i)` matrix.
pub fn coefficient_matrix(state: &StateVector, cut: &Bipartition) -> Result<CMatrix> {
    let basis = state.basis();
    let n = basis.intention_count();
    if cut.left.iter().chain(&cut.right).any(|&i| i >= n) || cut.left.len() + cut.right.len() != n {
        return Err(QdtError::validation("bipartition does not match the state's intentions"));
    }
    let dims = basis.mode_counts();
    let rows: usize = cut.left.iter().map(|&i| dims[i]).product();
    let cols: usize = cut.right.iter().map(|&i| dims[i]).product();

    let fold = |side: &BTreeSet<usize>, index: &[usize]| {
        side.iter().fold(0usize, |acc, &i| acc * dims[i] + index[i])
    };

    let mut m = CMatrix::zeros(rows, cols);
    for (flat, amp) in state.entries() {
        let index = basis.multi_index(flat);
        m.set(fold(&cut.left, &index), fold(&cut.right, &index), amp);
    }
    Ok(m)
}

/// Counts singular values above `tol` times the largest one.
pub fn schmidt_rank(state: &StateVector, cut: &Bipartition, tol: f64) -> Result<EntanglementVerdict> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QdtError::validation(format!("tolerance must be positive, got {tol}")));
    }
    if state.is_zero() {
        return Err(QdtError::validation("entanglement is undefined for the zero state"));
    }
    let singular_values = coefficient_matrix(state, cut)?.singular_values();
    let cutoff = tol * singular_values[0];
    let rank = singular_values.iter().filter(|&&s| s > cutoff).count();
    Ok(EntanglementVerdict {
        entangled: rank >= 2,
        schmidt_rank: rank,
        singular_values,
        tolerance_used: tol,
    })
}

/// Verdict for one single-intention cut.
#[derive(Debug, Clone, Serialize)]
pub struct CutVerdict {
    pub intention: String,
    pub verdict: EntanglementVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    pub entangled: bool,
    pub cuts: Vec<CutVerdict>,
}

/// Checks every single-intention-versus-rest cut.
pub fn entanglement_report(state: &StateVector, tol: f64) -> Result<EntanglementReport> {
    let basis = state.basis();
    let n = basis.intention_count();
    if n < 2 {
        return Err(QdtError::validation(
            "entanglement needs at least two intentions",
        ));
    }
    // With two intentions both single cuts are the same split.
    let cut_count = if n == 2 { 1 } else { n };
    let cuts = (0..cut_count)
        .map(|i| {
            let cut = Bipartition::single(n, i)?;
            Ok(CutVerdict {
                intention: basis.intentions()[i].intention().to_string(),
                verdict: schmidt_rank(state, &cut, tol)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntanglementReport {
        entangled: cuts.iter().any(|c| c.verdict.entangled),
        cuts,
    })
}

/// True when some single-intention cut has Schmidt rank of at least two.
pub fn is_entangled(state: &StateVector, tol: f64) -> Result<bool> {
    Ok(entanglement_report(state, tol)?.entangled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mindspace::{build_mind_basis, tensor_product_states, MindBasis};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn marry_rich() -> Arc<MindBasis> {
        Arc::new(build_mind_basis([("marry", vec!["A", "B"]), ("rich", vec!["W", "G"])]).unwrap())
    }

    fn state(entries: &[([usize; 2], Complex64)]) -> StateVector {
        StateVector::from_entries(marry_rich(), entries.iter().map(|(i, a)| (i.to_vec(), *a))).unwrap()
    }

    #[test]
    fn coefficient_matrix_layout() {
        let s = state(&[
            ([0, 0], c(0.1, 0.0)),
            ([0, 1], c(0.2, 0.0)),
            ([1, 0], c(0.3, 0.0)),
            ([1, 1], c(0.4, 0.0)),
        ]);
        let m = coefficient_matrix(&s, &Bipartition::single(2, 0).unwrap()).unwrap();
        assert_eq!(m.as_slice(), &[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0), c(0.4, 0.0)]);
        let mt = coefficient_matrix(&s, &Bipartition::single(2, 1).unwrap()).unwrap();
        assert_eq!(mt.as_slice(), &[c(0.1, 0.0), c(0.3, 0.0), c(0.2, 0.0), c(0.4, 0.0)]);
    }

    #[test]
    fn product_state_gives_outer_product() {
        let a = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let b = vec![c(1.0, 1.0), c(0.5, 0.0)];
        let s = tensor_product_states(marry_rich(), &[a.clone(), b.clone()]).unwrap();
        let m = coefficient_matrix(&s, &Bipartition::single(2, 0).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m.get(i, j), a[i] * b[j]);
            }
        }
    }

    #[test]
    fn basis_vector_single_entry() {
        let s = StateVector::basis_vector(marry_rich(), &[1, 0]).unwrap();
        let m = coefficient_matrix(&s, &Bipartition::single(2, 0).unwrap()).unwrap();
        let nonzero: Vec<_> = m.as_slice().iter().filter(|z| z.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(m.get(1, 0), c(1.0, 0.0));
    }

    #[test]
    fn bell_and_epr_states_are_entangled() {
        let cut = Bipartition::single(2, 0).unwrap();
        let bell = state(&[([0, 0], c(0.6, 0.0)), ([1, 1], c(0.0, 0.8))]);
        let v = schmidt_rank(&bell, &cut, DEFAULT_TOLERANCE).unwrap();
        assert!(v.entangled);
        assert_eq!(v.schmidt_rank, 2);
        assert!((v.singular_values[0] - 0.8).abs() < 1e-14);
        assert!((v.singular_values[1] - 0.6).abs() < 1e-14);

        let epr = state(&[([0, 1], c(0.3, 0.4)), ([1, 0], c(-0.5, 0.0))]);
        let v = schmidt_rank(&epr, &cut, DEFAULT_TOLERANCE).unwrap();
        assert!(v.entangled);
        assert_eq!(v.schmidt_rank, 2);
    }

    #[test]
    fn same_first_mode_is_disentangled() {
        let s = state(&[([0, 0], c(0.6, 0.0)), ([0, 1], c(0.0, 0.8))]);
        let v = schmidt_rank(&s, &Bipartition::single(2, 0).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert!(!v.entangled);
        assert_eq!(v.schmidt_rank, 1);
        assert!(!is_entangled(&s, DEFAULT_TOLERANCE).unwrap());
    }

    #[test]
    fn determinant_example() {
        let s = state(&[([0, 0], c(0.6, 0.0)), ([1, 1], c(0.8, 0.0))]);
        assert!(is_entangled(&s, DEFAULT_TOLERANCE).unwrap());
    }

    #[test]
    fn ghz_state_every_cut() {
        let basis = Arc::new(
            build_mind_basis([("a", vec!["0", "1"]), ("b", vec!["0", "1"]), ("c", vec!["0", "1"])]).unwrap(),
        );
        let h = c(FRAC_1_SQRT_2, 0.0);
        let s = StateVector::from_entries(basis, [(vec![0, 0, 0], h), (vec![1, 1, 1], h)]).unwrap();
        let report = entanglement_report(&s, DEFAULT_TOLERANCE).unwrap();
        assert!(report.entangled);
        assert_eq!(report.cuts.len(), 3);
        for cut in &report.cuts {
            assert_eq!(cut.verdict.schmidt_rank, 2);
            // 2x4 reshape with two orthogonal rows of norm 1/√2
            assert!((cut.verdict.singular_values[0] - FRAC_1_SQRT_2).abs() < 1e-14);
            assert!((cut.verdict.singular_values[1] - FRAC_1_SQRT_2).abs() < 1e-14);
        }
    }

    #[test]
    fn errors() {
        let one = Arc::new(build_mind_basis([("a", vec!["x", "y"])]).unwrap());
        let s = StateVector::basis_vector(one, &[0]).unwrap();
        assert!(is_entangled(&s, DEFAULT_TOLERANCE).is_err());

        let zero = StateVector::zeros(marry_rich());
        let cut = Bipartition::single(2, 0).unwrap();
        assert!(schmidt_rank(&zero, &cut, DEFAULT_TOLERANCE).is_err());

        let s = StateVector::basis_vector(marry_rich(), &[0, 0]).unwrap();
        assert!(schmidt_rank(&s, &cut, 0.0).is_err());
        assert!(Bipartition::new(2, [0, 1]).is_err());
        assert!(Bipartition::new(2, Vec::<usize>::new()).is_err());
        assert!(Bipartition::new(2, [5]).is_err());
        let three = Bipartition::single(3, 0).unwrap();
        assert!(coefficient_matrix(&s, &three).is_err());
    }
}
