//! Operator, Hilbert-Schmidt and nuclear norms, the trace-duality maximizer
//! and the nuclear bound for products.

use serde::{Deserialize, Serialize};

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{inner, svd, Complex, ComplexMatrix};
use crate::sampling::{gaussian_matrix, seeded};

/// Unit-norm tolerance for state vectors.
pub const UNIT_TOL: f64 = 1e-10;

/// The three norms of a matrix from a single SVD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    /// Largest singular value.
    pub operator: f64,
    /// `σ₂ = (Σ s_i²)^{1/2}`.
    pub hs: f64,
    /// `Σ s_i`.
    pub nuclear: f64,
    pub singulars: Vec<f64>,
}

pub fn norm_report(a: &ComplexMatrix) -> Result<NormReport> {
    let f = svd(a)?;
    Ok(NormReport {
        operator: f.largest(),
        hs: f.singulars.iter().map(|s| s * s).sum::<f64>().sqrt(),
        nuclear: f.singulars.iter().sum(),
        singulars: f.singulars,
    })
}

/// Hilbert-Schmidt norm `√tr(A†A)`, i.e. the Frobenius norm.
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

/// `(Σ_i ‖A·u_i‖²)^{1/2}` over the columns of `basis`; equals [`hs_norm`]
/// for every orthonormal basis.
pub fn hs_norm_in_basis(a: &ComplexMatrix, basis: &ComplexMatrix) -> Result<f64> {
    let images = a.matmul(basis)?;
    Ok(images.frobenius_norm())
}

/// Trace norm, the sum of singular values.
pub fn nuclear_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.singulars.iter().sum())
}

pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.largest())
}

/// Closed-form solution of `max{|tr(A·B)| : ‖B‖_F ≤ 1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceDuality {
    /// `‖A‖_F`.
    pub value: f64,
    /// `A†/‖A‖_F`.
    pub maximizer: ComplexMatrix,
}

impl TraceDuality {
    /// Largest `|tr(A·B′)|` over `count` random competitors with `‖B′‖_F = 1`.
    pub fn best_competitor(&self, a: &ComplexMatrix, seed: u64, count: usize) -> f64 {
        let mut rng = seeded(seed);
        let (m, n) = a.shape();
        (0..count)
            .map(|_| {
                let b = gaussian_matrix(&mut rng, n, m);
                let b = b.scale_real(1.0 / b.frobenius_norm());
                pairing(a, &b).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `tr(A·B)` without forming the product.
pub fn pairing(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex {
    debug_assert_eq!((a.rows(), a.cols()), (b.cols(), b.rows()));
    let mut acc = Complex::new(0.0, 0.0);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            acc += a.get(i, k) * b.get(k, i);
        }
    }
    acc
}

pub fn trace_duality_max(a: &ComplexMatrix) -> Result<TraceDuality> {
    let value = a.frobenius_norm();
    if value == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(TraceDuality { value, maximizer: a.adjoint().scale_real(1.0 / value) })
}

/// `(𝐍(S·T), σ₂(S)·σ₂(T))`; the first never exceeds the second.
pub fn composition_nuclear_bound(s: &ComplexMatrix, t: &ComplexMatrix) -> Result<(f64, f64)> {
    let st = s.matmul(t)?;
    Ok((nuclear_norm(&st)?, hs_norm(s) * hs_norm(t)))
}

/// `⟨A·x, x⟩` for a unit vector `x`, the value of the vector state at `A`.
pub fn vector_state(a: &ComplexMatrix, x: &Ket) -> Result<Complex> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.cols() != x.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix on C^{}", a.rows(), a.cols(), x.dim())));
    }
    let norm = x.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    let ax = a.apply(x.coords())?;
    Ok(inner(&ax, x.coords()))
}

/// Rank-one projection `x·x†` onto a unit vector.
pub fn vector_density(x: &Ket) -> ComplexMatrix {
    let c = x.coords();
    ComplexMatrix::from_fn(c.len(), c.len(), |i, j| c[i] * c[j].conj()).expect("nonempty ket")
}
