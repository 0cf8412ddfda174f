use crate::error::{Error, Result};
use num_complex::Complex64;

/// Pivots smaller than this (relative to the largest row entry) are singular.
pub const PIVOT_TOL: f64 = 1e-12;

/// Solve `A x = b` by LU with partial pivoting. `a` is row-major.
pub fn solve_linear_dense(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::invalid(format!("matrix must be {n}x{n} to match the right-hand side")));
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut x = b.to_vec();
    let scale: Vec<f64> = m.iter().map(|row| row.iter().fold(0.0f64, |s, v| s.max(v.abs()))).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap_or(k);
        let reference = scale.iter().cloned().fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
        if m[p][k].abs() <= PIVOT_TOL * reference {
            return Err(Error::Singular { index: k });
        }
        m.swap(k, p);
        x.swap(k, p);
        for i in k + 1..n {
            let factor = m[i][k] / m[k][k];
            if factor == 0.0 {
                continue;
            }
            for j in k..n {
                m[i][j] -= factor * m[k][j];
            }
            x[i] -= factor * x[k];
        }
    }
    for k in (0..n).rev() {
        let tail: f64 = (k + 1..n).map(|j| m[k][j] * x[j]).sum();
        x[k] = (x[k] - tail) / m[k][k];
    }
    Ok(x)
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// Eigen-decomposition of a real 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eig2 {
    pub values: [Complex64; 2],
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: [[Complex64; 2]; 2],
}

impl Eig2 {
    pub fn is_real(&self) -> bool {
        self.values[0].im == 0.0 && self.values[1].im == 0.0
    }
}

/// Roots of `λ² − tr λ + det`, computed without cancellation, plus
/// eigenvectors.
pub fn eig2(a: [[f64; 2]; 2]) -> Eig2 {
    let tr = a[0][0] + a[1][1];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let half = 0.5 * tr;
    // discriminant via the off-diagonal form avoids tr² − 4det cancellation
    let dd = 0.5 * (a[0][0] - a[1][1]);
    let disc = dd * dd + a[0][1] * a[1][0];
    let values = if disc >= 0.0 {
        let root = disc.sqrt();
        let big = if half >= 0.0 { half + root } else { half - root };
        let small = if big != 0.0 { det / big } else { half - root };
        let (l1, l2) = if big >= small { (big, small) } else { (small, big) };
        [Complex64::new(l1, 0.0), Complex64::new(l2, 0.0)]
    } else {
        let im = (-disc).sqrt();
        [Complex64::new(half, im), Complex64::new(half, -im)]
    };
    let vectors = [eigvec(a, values[0]), eigvec(a, values[1])];
    Eig2 { values, vectors }
}

fn eigvec(a: [[f64; 2]; 2], lam: Complex64) -> [Complex64; 2] {
    // pick the better-conditioned row of (A − λI) v = 0
    let r0 = [Complex64::new(a[0][0], 0.0) - lam, Complex64::new(a[0][1], 0.0)];
    let r1 = [Complex64::new(a[1][0], 0.0), Complex64::new(a[1][1], 0.0) - lam];
    let n0 = r0[0].norm() + r0[1].norm();
    let n1 = r1[0].norm() + r1[1].norm();
    let v = if n0 == 0.0 && n1 == 0.0 {
        // A = λI: any vector will do
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else if n0 >= n1 {
        [r0[1], -r0[0]]
    } else {
        [-r1[1], r1[0]]
    };
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / norm, v[1] / norm]
}
