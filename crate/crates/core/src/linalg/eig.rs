use super::jacobi::Rotation;
use super::matrix::{Complex, ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Sweep budget shared by the Jacobi solvers.
pub const MAX_SWEEPS: usize = 60;

/// Hermitian input tolerance: `‖A − A†‖_F ≤ HERMITIAN_TOL·(1 + ‖A‖_F)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Spectral decomposition `A = V·diag(values)·V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::diag_real(&self.values).expect("nonempty spectrum");
        &(&self.vectors * &d) * &self.vectors.adjoint()
    }
}

/// Cyclic complex Jacobi eigensolver.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    let residual = a.hermitian_residual()?;
    if residual > HERMITIAN_TOL * (1.0 + a.frobenius_norm()) {
        return Err(Error::NotHermitian { residual });
    }
    hermitian_eig_unchecked(a)
}

/// Eigendecomposition of the Hermitian part `(A + A†)/2`; `a` must be square.
pub(crate) fn hermitian_eig_unchecked(a: &ComplexMatrix) -> Result<HermitianEig> {
    let n = a.rows();
    let sym = (a + &a.adjoint()).scale_real(0.5);
    // column-major working copies
    let mut cols = sym.columns();
    let mut v = ComplexMatrix::identity(n)?.columns();
    let scale = sym.frobenius_norm();

    let mut converged = n == 1 || scale == 0.0;
    let mut sweep = 0;
    while !converged && sweep < MAX_SWEEPS {
        sweep += 1;
        let off: f64 = (0..n)
            .flat_map(|j| (0..n).filter(move |&i| i != j).map(move |i| (i, j)))
            .map(|(i, j)| cols[j][i].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let gamma = cols[q][p];
                let g = gamma.norm();
                let (alpha, beta) = (cols[p][p].re, cols[q][q].re);
                if g == 0.0 || g <= 1e-18 * (alpha.abs() + beta.abs()) {
                    continue;
                }
                let rot = Rotation::annihilating(alpha, beta, gamma);
                // A ← A·J
                let (lo, hi) = cols.split_at_mut(q);
                rot.apply_columns(&mut lo[p], &mut hi[0]);
                // A ← J†·A, rows p and q
                for col in cols.iter_mut() {
                    let (xp, xq) = (col[p], col[q]);
                    col[p] = xp * rot.c - rot.s_phase * xq;
                    col[q] = rot.s_phase.conj() * xp + xq * rot.c;
                }
                cols[q][p] = ZERO;
                cols[p][q] = ZERO;
                cols[p][p] = Complex::new(cols[p][p].re, 0.0);
                cols[q][q] = Complex::new(cols[q][q].re, 0.0);
                let (lo, hi) = v.split_at_mut(q);
                rot.apply_columns(&mut lo[p], &mut hi[0]);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { routine: "hermitian_eig", sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep Jacobi output order
    order.sort_by(|&i, &j| cols[j][j].re.total_cmp(&cols[i][i].re));
    let values = order.iter().map(|&i| cols[i][i].re).collect();
    let vectors = ComplexMatrix::from_columns(&order.iter().map(|&i| v[i].clone()).collect::<Vec<_>>())?;
    Ok(HermitianEig { values, vectors })
}

/// Positive semidefiniteness test: Hermitian within `tol·(1+‖A‖_F)` and
/// smallest eigenvalue at least `−tol·(1+‖A‖_F)`.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    let scale = 1.0 + a.frobenius_norm();
    if a.hermitian_residual()? > tol * scale {
        return Ok(false);
    }
    let eig = hermitian_eig_unchecked(a)?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    Ok(min >= -tol * scale)
}
