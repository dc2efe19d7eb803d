//! Independent dense arithmetic used as test oracles.

#![allow(dead_code)]

use qdt_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Σ conj(u_i) v_i` over plain slices.
pub fn dense_inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn dense_norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum()
}

/// Rank by Gaussian elimination with partial pivoting. Pivots at or below
/// `tol` times the largest entry magnitude count as zero.
pub fn gaussian_rank(rows: usize, cols: usize, data: &[Complex64], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = (0..rows).map(|r| data[r * cols..(r + 1) * cols].to_vec()).collect();
    let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let cutoff = tol * scale;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (pivot, mag) = (rank..rows)
            .map(|r| (r, m[r][col].norm()))
            .fold((rank, -1.0), |best, x| if x.1 > best.1 { x } else { best });
        if mag <= cutoff {
            continue;
        }
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Singular values of a 2×n matrix from the eigenvalues of the 2×2 Gram matrix.
pub fn singular_values_2xn(cols: usize, data: &[Complex64]) -> [f64; 2] {
    let (r0, r1) = data.split_at(cols);
    let a = dense_norm_sqr(r0);
    let d = dense_norm_sqr(r1);
    let b = dense_inner(r1, r0).norm_sqr();
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b).sqrt();
    [(mean + disc).sqrt(), (mean - disc).max(0.0).sqrt()]
}

pub fn det2(m: &[Complex64]) -> Complex64 {
    m[0] * m[3] - m[1] * m[2]
}
