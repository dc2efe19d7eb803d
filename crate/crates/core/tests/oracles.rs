mod common;

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use common::{c, dense_inner, dense_norm_sqr, gaussian_rank, singular_values_2xn};
use qdt_core::entanglement::entanglement_report;
use qdt_core::{
    build_mind_basis, coefficient_matrix, decompose, project_update, prospect_probability, schmidt_rank,
    sequence_probability, Bipartition, Complex64, MindBasis, Prospect, StateVector, StrategicState,
};

fn friends_basis() -> Arc<MindBasis> {
    Arc::new(build_mind_basis([("friend", vec!["A", "B"]), ("wealth", vec!["W", "G"])]).unwrap())
}

fn real(xs: &[f64]) -> Vec<Complex64> {
    xs.iter().map(|&x| c(x, 0.0)).collect()
}

fn prospect(basis: &Arc<MindBasis>, dense: &[Complex64]) -> Prospect {
    Prospect::new("p", StateVector::from_dense(Arc::clone(basis), dense).unwrap(), None).unwrap()
}

/// Probability of `first` then `second` computed with plain vectors.
fn dense_sequence(s: &[Complex64], first: &[Complex64], second: &[Complex64]) -> f64 {
    let o1 = dense_inner(first, s);
    let p1 = o1.norm_sqr();
    let collapsed: Vec<Complex64> = first.iter().map(|a| a * o1 / dense_norm_sqr(first)).collect();
    let n = dense_norm_sqr(&collapsed).sqrt();
    let collapsed: Vec<Complex64> = collapsed.iter().map(|z| z / n).collect();
    p1 * dense_inner(second, &collapsed).norm_sqr()
}

#[test]
fn sequence_orders_against_dense_arithmetic() {
    let basis = friends_basis();
    let h = FRAC_1_SQRT_2;
    let s_dense = real(&[0.5; 4]);
    let first = real(&[h, h, 0.0, 0.0]);
    let either = real(&[h, 0.0, h, 0.0]);
    let weighted = real(&[0.8, 0.0, 0.6, 0.0]);

    // Hand values: p(first) = 0.5; collapse to (h, h, 0, 0);
    // second' overlap 0.8h, squared 0.32; reverse p(second') = 0.49, collapse
    // to (0.8, 0, 0.6, 0), overlap with first 0.8h, squared 0.32.
    assert!((dense_sequence(&s_dense, &first, &either) - 0.125).abs() < 1e-15);
    assert!((dense_sequence(&s_dense, &either, &first) - 0.125).abs() < 1e-15);
    assert!((dense_sequence(&s_dense, &first, &weighted) - 0.16).abs() < 1e-15);
    assert!((dense_sequence(&s_dense, &weighted, &first) - 0.1568).abs() < 1e-15);

    let s = StrategicState::new(StateVector::from_dense(Arc::clone(&basis), &s_dense).unwrap()).unwrap();
    let (pf, pe, pw) = (prospect(&basis, &first), prospect(&basis, &either), prospect(&basis, &weighted));
    let cases = [(&pf, &pe, &first, &either), (&pe, &pf, &either, &first), (&pf, &pw, &first, &weighted), (&pw, &pf, &weighted, &first)];
    for (a, b, da, db) in cases {
        let got = sequence_probability(&s, a, b).unwrap();
        assert!((got - dense_sequence(&s_dense, da, db)).abs() < 1e-14);
    }
    let forward = sequence_probability(&s, &pf, &pw).unwrap();
    let reverse = sequence_probability(&s, &pw, &pf).unwrap();
    assert!((forward - reverse - 0.0032).abs() < 1e-12);
}

#[test]
fn projection_against_hand_result() {
    let basis = friends_basis();
    let s = StrategicState::new(StateVector::from_dense(Arc::clone(&basis), &real(&[0.5; 4])).unwrap()).unwrap();
    let pa = prospect(&basis, &real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0]));
    let after = project_update(&s, &pa).unwrap().state().to_dense();
    let expected = real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0]);
    for (g, e) in after.iter().zip(&expected) {
        assert!((g - e).norm() < 1e-15);
    }
    assert!((prospect_probability(&pa, &s).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn complex_projection_against_dense_arithmetic() {
    let basis = friends_basis();
    let s_dense = vec![c(0.1, 0.3), c(-0.4, 0.2), c(0.5, -0.1), c(0.2, 0.6)];
    let norm = dense_norm_sqr(&s_dense).sqrt();
    let s_dense: Vec<Complex64> = s_dense.iter().map(|z| z / norm).collect();
    let p_dense = vec![c(0.3, -0.2), c(0.0, 1.1), c(-0.7, 0.0), c(0.2, 0.2)];
    let s = StrategicState::new(StateVector::from_dense(Arc::clone(&basis), &s_dense).unwrap()).unwrap();
    let p = prospect(&basis, &p_dense);
    let overlap = dense_inner(&p_dense, &s_dense);
    assert!((prospect_probability(&p, &s).unwrap() - overlap.norm_sqr()).abs() < 1e-15);

    let after = project_update(&s, &p).unwrap().state().to_dense();
    let raw: Vec<Complex64> = p_dense.iter().map(|a| a * overlap / dense_norm_sqr(&p_dense)).collect();
    let n = dense_norm_sqr(&raw).sqrt();
    for (g, r) in after.iter().zip(&raw) {
        assert!((g - r / n).norm() < 1e-14);
    }
}

#[test]
fn ghz_cuts_against_gram_singular_values() {
    let basis = Arc::new(
        build_mind_basis([("a", vec!["0", "1"]), ("b", vec!["0", "1"]), ("c", vec!["0", "1"])]).unwrap(),
    );
    let mut dense = vec![c(0.0, 0.0); 8];
    dense[0] = c(FRAC_1_SQRT_2, 0.0);
    dense[7] = c(FRAC_1_SQRT_2, 0.0);
    let state = StateVector::from_dense(Arc::clone(&basis), &dense).unwrap();

    let report = entanglement_report(&state, 1e-9).unwrap();
    assert!(report.entangled);
    assert_eq!(report.cuts.len(), 3);
    for i in 0..3 {
        let cut = Bipartition::single(3, i).unwrap();
        let m = coefficient_matrix(&state, &cut).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 4));
        let oracle = singular_values_2xn(4, m.as_slice());
        let verdict = schmidt_rank(&state, &cut, 1e-9).unwrap();
        assert_eq!(verdict.schmidt_rank, 2);
        for (got, want) in verdict.singular_values.iter().zip(oracle) {
            assert!((got - want).abs() < 1e-12);
            assert!((got - FRAC_1_SQRT_2).abs() < 1e-12);
        }
        assert_eq!(gaussian_rank(2, 4, m.as_slice(), 1e-9), 2);
    }
}

#[test]
fn coefficient_matrix_matches_manual_reshape() {
    let basis = Arc::new(build_mind_basis([("x", vec!["0", "1"]), ("y", vec!["0", "1", "2"]), ("z", vec!["0", "1"])]).unwrap());
    let dense: Vec<Complex64> = (0..12).map(|k| c(k as f64, -(k as f64) / 2.0)).collect();
    let state = StateVector::from_dense(Arc::clone(&basis), &dense).unwrap();
    // Left = {y}: rows indexed by y, columns by (x, z) with z fastest.
    let m = coefficient_matrix(&state, &Bipartition::new(3, [1]).unwrap()).unwrap();
    assert_eq!((m.rows(), m.cols()), (3, 4));
    for y in 0..3 {
        for x in 0..2 {
            for z in 0..2 {
                assert_eq!(m.get(y, x * 2 + z), dense[x * 6 + y * 2 + z]);
            }
        }
    }
}

#[test]
fn decomposition_against_hand_arithmetic() {
    let h = FRAC_1_SQRT_2;
    let d = decompose(&[c(h, 0.0), c(h, 0.0)], &[c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
    assert!((d.p - 0.5).abs() < 1e-15);
    assert!((d.f - 0.25).abs() < 1e-15);
    assert!((d.q - 0.25).abs() < 1e-15);
    assert!((d.pairwise[0].phi - 1.0).abs() < 1e-15);

    // conj(1)·0.8 + conj(i)·0.6 = 0.8 − 0.6i
    let d = decompose(&[c(1.0, 0.0), c(0.0, 1.0)], &[c(0.8, 0.0), c(0.6, 0.0)]).unwrap();
    assert!((d.p - 1.0).abs() < 1e-15);
    assert!((d.f - 1.0).abs() < 1e-15);
    assert!(d.q.abs() < 1e-15);
    assert!(d.pairwise[0].phi.abs() < 1e-15);
}
