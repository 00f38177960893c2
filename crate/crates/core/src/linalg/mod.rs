//! Dense complex matrices and the spectral factorizations built on them.

mod eig;
mod jacobi;
mod matrix;
mod svd;

pub(crate) use eig::hermitian_eig_unchecked;
pub use eig::{hermitian_eig, is_psd, HermitianEig, HERMITIAN_TOL, MAX_SWEEPS};
pub use matrix::{inner, norm, vec_distance, Complex, ComplexMatrix, I, ONE, ZERO};
pub use svd::{polar, svd, Polar, SvdResult, RANK_TOL};

use crate::error::Result;

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn trace(a: &ComplexMatrix) -> Result<Complex> {
    a.trace()
}
