use super::eig::MAX_SWEEPS;
use super::jacobi::Rotation;
use super::matrix::{inner, norm, Complex, ComplexMatrix};
use crate::error::{Error, Result};

/// Singular values at or below `RANK_TOL · s_max` are dropped.
pub const RANK_TOL: f64 = 1e-12;

/// Per-pair orthogonality threshold of the one-sided sweep, relative to the
/// product of the two column norms.
const ORTH_TOL: f64 = 1e-15;

/// Thin singular value decomposition `A = left·diag(singulars)·right†`
/// restricted to the numerical rank.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `m × r`, orthonormal columns. `None` when the rank is zero.
    pub left: Option<ComplexMatrix>,
    /// Descending, strictly positive.
    pub singulars: Vec<f64>,
    /// `n × r`, orthonormal columns. `None` when the rank is zero.
    pub right: Option<ComplexMatrix>,
    pub rank: usize,
    rows: usize,
    cols: usize,
}

impl SvdResult {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn largest(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }

    pub fn left_vector(&self, k: usize) -> Vec<Complex> {
        self.left.as_ref().expect("rank > 0").column(k)
    }

    pub fn right_vector(&self, k: usize) -> Vec<Complex> {
        self.right.as_ref().expect("rank > 0").column(k)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        match (&self.left, &self.right) {
            (Some(u), Some(v)) => {
                let s = ComplexMatrix::diag_real(&self.singulars).expect("rank > 0");
                &(u * &s) * &v.adjoint()
            }
            _ => ComplexMatrix::zeros(self.rows, self.cols).expect("valid shape"),
        }
    }
}

/// One-sided (Hestenes) Jacobi SVD with cyclic pair order.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if a.rows() < a.cols() {
        // sweep over the shorter side
        let t = svd(&a.adjoint())?;
        return Ok(SvdResult {
            left: t.right,
            singulars: t.singulars,
            right: t.left,
            rank: t.rank,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let (m, n) = a.shape();
    let mut cols = a.columns();
    let mut v = ComplexMatrix::identity(n)?.columns();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha = inner(&cols[p], &cols[p]).re;
                let beta = inner(&cols[q], &cols[q]).re;
                let gamma = inner(&cols[q], &cols[p]);
                let g = gamma.norm();
                if g == 0.0 || g <= ORTH_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(alpha, beta, gamma);
                let (lo, hi) = cols.split_at_mut(q);
                rot.apply_columns(&mut lo[p], &mut hi[0]);
                let (lo, hi) = v.split_at_mut(q);
                rot.apply_columns(&mut lo[p], &mut hi[0]);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { routine: "svd", sweeps: MAX_SWEEPS });
    }

    let norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s_max = norms[order[0]];
    let kept: Vec<usize> = order.into_iter().filter(|&i| s_max > 0.0 && norms[i] > RANK_TOL * s_max).collect();
    let rank = kept.len();
    if rank == 0 {
        return Ok(SvdResult { left: None, singulars: vec![], right: None, rank: 0, rows: m, cols: n });
    }
    let singulars: Vec<f64> = kept.iter().map(|&i| norms[i]).collect();
    let left_cols: Vec<Vec<Complex>> = kept.iter().map(|&i| cols[i].iter().map(|z| z / norms[i]).collect()).collect();
    let right_cols: Vec<Vec<Complex>> = kept.iter().map(|&i| v[i].clone()).collect();
    Ok(SvdResult {
        left: Some(ComplexMatrix::from_columns(&left_cols)?),
        singulars,
        right: Some(ComplexMatrix::from_columns(&right_cols)?),
        rank,
        rows: m,
        cols: n,
    })
}

/// Polar decomposition `A = W·|A|`, `|A| = (A†A)^{1/2}`.
#[derive(Debug, Clone)]
pub struct Polar {
    /// Partial isometry, `m × n`.
    pub w: ComplexMatrix,
    /// Positive semidefinite, `n × n`.
    pub abs: ComplexMatrix,
}

/// Left polar decomposition assembled from the SVD: `W = U·V†`,
/// `|A| = V·diag(s)·V†`.
pub fn polar(a: &ComplexMatrix) -> Result<Polar> {
    let f = svd(a)?;
    let (m, n) = a.shape();
    match (&f.left, &f.right) {
        (Some(u), Some(v)) => {
            let s = ComplexMatrix::diag_real(&f.singulars)?;
            Ok(Polar { w: u * &v.adjoint(), abs: &(v * &s) * &v.adjoint() })
        }
        _ => Ok(Polar { w: ComplexMatrix::zeros(m, n)?, abs: ComplexMatrix::zeros(n, n)? }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig::{hermitian_eig, is_psd};

    #[test]
    fn diagonal_singulars() {
        let f = svd(&ComplexMatrix::diag_real(&[3.0, 4.0]).unwrap()).unwrap();
        assert_eq!(f.singulars, vec![4.0, 3.0]);
        assert_eq!(f.rank, 2);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let f = svd(&ComplexMatrix::zeros(3, 2).unwrap()).unwrap();
        assert_eq!(f.rank, 0);
        assert!(f.singulars.is_empty());
        assert_eq!(f.reconstruct(), ComplexMatrix::zeros(3, 2).unwrap());
    }

    #[test]
    fn unit_dyad_singular_matches_gram_spectrum() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let x = [Complex::new(h, 0.0), Complex::new(0.0, h)];
        let z = [Complex::new(0.6, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, -0.8)];
        let a = ComplexMatrix::from_fn(3, 2, |i, j| z[i] * x[j]).unwrap();
        // oracle: largest eigenvalue of a†a
        let gram = &a.adjoint() * &a;
        let oracle = hermitian_eig(&gram).unwrap().values[0].sqrt();
        let f = svd(&a).unwrap();
        assert_eq!(f.rank, 1);
        assert!((f.singulars[0] - 1.0).abs() < 1e-14);
        assert!((f.singulars[0] - oracle).abs() < 1e-14);
    }

    #[test]
    fn wide_matrix_reconstructs() {
        let a = ComplexMatrix::from_rows(&[
            [Complex::new(1.0, 2.0), Complex::new(0.0, 1.0), Complex::new(-1.0, 0.0), Complex::new(0.5, 0.5)],
            [Complex::new(0.3, 0.0), Complex::new(2.0, -1.0), Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        ]);
        let f = svd(&a).unwrap();
        assert_eq!(f.shape(), (2, 4));
        assert!(f.reconstruct().distance(&a) < 1e-13 * a.frobenius_norm());
        assert!(f.left.as_ref().unwrap().unitarity_residual() < 1e-13);
        assert!(f.right.as_ref().unwrap().unitarity_residual() < 1e-13);
    }

    #[test]
    fn polar_of_unitary() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_rows(&[
            [Complex::new(h, 0.0), Complex::new(0.0, h)],
            [Complex::new(0.0, h), Complex::new(h, 0.0)],
        ]);
        let p = polar(&u).unwrap();
        assert!(p.w.distance(&u) < 1e-14);
        assert!(p.abs.distance(&ComplexMatrix::identity(2).unwrap()) < 1e-14);
    }

    #[test]
    fn polar_of_psd_matrix() {
        let a = ComplexMatrix::from_real_rows(&[[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        let p = polar(&a).unwrap();
        assert!(p.abs.distance(&a) < 1e-14);
        let proj = ComplexMatrix::diag_real(&[1.0, 1.0, 0.0]).unwrap();
        assert!(p.w.distance(&proj) < 1e-14);
    }

    #[test]
    fn polar_matches_closed_form() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, -2.0], [1.0, 0.0]]);
        let p = polar(&a).unwrap();
        assert!(p.abs.distance(&ComplexMatrix::diag_real(&[1.0, 2.0]).unwrap()) < 1e-14);
        assert!(p.w.distance(&ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]])) < 1e-14);
        assert!((&p.w * &p.abs).distance(&a) < 1e-14);
        assert!(is_psd(&p.abs, 1e-9).unwrap());
    }
}
