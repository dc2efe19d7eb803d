//! Small dense complex matrices and their singular values.

use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Panics unless `data.len() == rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Complex64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let mut t = CMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).conj());
            }
        }
        t
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.cols > self.rows {
            return self.conj_transpose().singular_values();
        }
        jacobi_singular_values(self)
    }
}

const MAX_SWEEPS: usize = 60;

/// One-sided (Hestenes) Jacobi: rotate column pairs until all columns are
/// mutually orthogonal; the column norms are then the singular values.
fn jacobi_singular_values(m: &CMatrix) -> Vec<f64> {
    let (rows, cols) = (m.rows, m.cols);
    // column-major working copy
    let mut a: Vec<Vec<Complex64>> = (0..cols)
        .map(|c| (0..rows).map(|r| m.get(r, c)).collect())
        .collect();

    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: f64 = a[p].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = a[q].iter().map(Complex64::norm_sqr).sum();
                let gamma: Complex64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;

                // Removing the phase of gamma from column q leaves singular values intact
                // and reduces the pair to a real symmetric 2x2 problem.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;

                let (left, right) = a.split_at_mut(q);
                let (col_p, col_q) = (&mut left[p], &mut right[0]);
                for (x, y) in col_p.iter_mut().zip(col_q.iter_mut()) {
                    let yq = *y * phase.conj();
                    let xp = *x;
                    *x = xp * cs - yq * sn;
                    *y = xp * sn + yq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}
