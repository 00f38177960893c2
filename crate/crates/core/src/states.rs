//! Density operators, Schmidt decomposition of bipartite vectors, and
//! reconstruction of a density operator from a measure on projections.

use serde::{Deserialize, Serialize};

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig_unchecked, svd, Complex, ComplexMatrix, ZERO};
use crate::norms::{vector_density, UNIT_TOL};
use crate::tensor::TensorElement;

/// Hermiticity, positivity and trace tolerance of [`DensityOperator`].
pub const DENSITY_TOL: f64 = 1e-10;

/// Hermitian positive semidefinite matrix of unit trace with its spectral
/// decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityOperator {
    pub dim: usize,
    pub matrix: ComplexMatrix,
    /// Eigenvalues, descending.
    pub spectrum: Vec<f64>,
    /// Unitary, columns matching `spectrum`.
    pub eigvecs: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let herm = matrix.hermitian_residual()?;
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian, ‖D − D†‖_F = {herm:e}")));
        }
        let tr = matrix.trace()?;
        if (tr - Complex::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let eig = hermitian_eig_unchecked(&matrix)?;
        if let Some(bad) = eig.values.iter().find(|&&l| !(-DENSITY_TOL..=1.0 + DENSITY_TOL).contains(&l)) {
            return Err(Error::InvalidDensity(format!("eigenvalue {bad:e} outside [0, 1]")));
        }
        Ok(Self { dim: matrix.rows(), matrix, spectrum: eig.values, eigvecs: eig.vectors })
    }

    /// `tr(P·D)`.
    pub fn expectation(&self, p: &ComplexMatrix) -> Result<f64> {
        Ok(p.matmul(&self.matrix)?.trace()?.re)
    }

    pub fn purity(&self) -> f64 {
        self.spectrum.iter().map(|l| l * l).sum()
    }
}

/// `z = Σ_k coeffs_k · left_k ⊗ right_k` with orthonormal families.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchmidtForm {
    /// Descending and positive; their squares are the `s_n`.
    pub coeffs: Vec<f64>,
    /// Orthonormal family in the left factor `C^n`.
    pub left: Vec<Ket>,
    /// Orthonormal family in the right factor `C^m`.
    pub right: Vec<Ket>,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// The `s_n = coeffs_n²`; they sum to `‖z‖²`.
    pub fn weights(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c * c).collect()
    }

    pub fn reconstruct(&self) -> TensorElement {
        let n = self.left[0].dim();
        let m = self.right[0].dim();
        let terms = self
            .coeffs
            .iter()
            .zip(self.left.iter().zip(&self.right))
            .map(|(&c, (u, v))| (u.scale(Complex::new(c, 0.0)), v.clone()))
            .collect();
        TensorElement::new(n, m, terms).expect("families share dimensions")
    }
}

/// Schmidt decomposition read off the SVD `Σ y_k x_kᵀ = U·S·V†`:
/// `z = Σ s_k · conj(v_k) ⊗ u_k`.
pub fn schmidt(z: &TensorElement) -> Result<SchmidtForm> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroElement);
    }
    let f = svd(z.matrix_rep())?;
    if f.rank == 0 {
        return Err(Error::ZeroElement);
    }
    let (u, v) = (f.left.as_ref().expect("rank > 0"), f.right.as_ref().expect("rank > 0"));
    let left =
        (0..f.rank).map(|k| Ket::new(v.column(k).iter().map(|c| c.conj()).collect())).collect::<Result<Vec<_>>>()?;
    let right = (0..f.rank).map(|k| Ket::new(u.column(k))).collect::<Result<Vec<_>>>()?;
    Ok(SchmidtForm { coeffs: f.singulars, left, right })
}

/// Schmidt rank above `tol` relative to the leading coefficient exceeds one.
pub fn is_entangled(z: &TensorElement, tol: f64) -> Result<bool> {
    let s = schmidt(z)?;
    let lead = s.coeffs[0];
    Ok(s.coeffs.iter().filter(|&&c| c > tol * lead).count() > 1)
}

/// `Σ p_n·x_n·x_n†` for unit vectors `x_n` and probability weights `p_n`.
pub fn density_from_mixture(weights: &[f64], vectors: &[Ket]) -> Result<DensityOperator> {
    if weights.len() != vectors.len() || weights.is_empty() {
        return Err(Error::WeightsNotNormalized(format!("{} weights for {} vectors", weights.len(), vectors.len())));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::WeightsNotNormalized(format!("negative or non-finite weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightsNotNormalized(format!("weights sum to {total}")));
    }
    let dim = vectors[0].dim();
    let mut acc = ComplexMatrix::zeros(dim, dim)?;
    for (&p, x) in weights.iter().zip(vectors) {
        if x.dim() != dim {
            return Err(Error::DimensionMismatch(format!("mixture of C^{dim} and C^{} vectors", x.dim())));
        }
        let norm = x.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm });
        }
        acc = &acc + &vector_density(x).scale_real(p);
    }
    DensityOperator::new(acc)
}

/// Source of measure values on orthogonal projections.
pub trait Measure {
    fn measure(&self, projection: &ComplexMatrix) -> Result<f64>;
}

impl<F: Fn(&ComplexMatrix) -> f64> Measure for F {
    fn measure(&self, projection: &ComplexMatrix) -> Result<f64> {
        Ok(self(projection))
    }
}

/// One tabulated measure value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureSample {
    pub projection: ComplexMatrix,
    pub value: f64,
}

/// A measure given as a table of `(projection, value)` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureTable {
    pub dim: usize,
    pub samples: Vec<MeasureSample>,
}

/// Two projections are the same table key when they agree to this
/// Frobenius distance.
const TABLE_MATCH_TOL: f64 = 1e-9;

impl MeasureTable {
    /// Tabulates `measure` on the reconstruction probes plus `extra`.
    pub fn tabulate(measure: &impl Measure, dim: usize, extra: &[ComplexMatrix]) -> Result<Self> {
        let samples = gleason_probes(dim)?
            .into_iter()
            .map(|p| p.matrix)
            .chain(extra.iter().cloned())
            .map(|p| Ok(MeasureSample { value: measure.measure(&p)?, projection: p }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, samples })
    }

    fn lookup(&self, p: &ComplexMatrix) -> Option<f64> {
        self.samples
            .iter()
            .find(|s| s.projection.shape() == p.shape() && s.projection.distance(p) <= TABLE_MATCH_TOL)
            .map(|s| s.value)
    }
}

impl Measure for MeasureTable {
    fn measure(&self, projection: &ComplexMatrix) -> Result<f64> {
        self.lookup(projection)
            .ok_or_else(|| Error::InvalidInput("measure table has no entry for a required probe projection".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProbeKind {
    Diagonal(usize),
    Real(usize, usize),
    Imag(usize, usize),
}

#[derive(Debug, Clone)]
struct Probe {
    kind: ProbeKind,
    matrix: ComplexMatrix,
}

/// The `n²` rank-one probes: `e_i`, `(e_i + e_j)/√2` and `(e_i + i·e_j)/√2`.
fn gleason_probes(dim: usize) -> Result<Vec<Probe>> {
    let half = Complex::new(0.5, 0.0);
    let mut probes = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let m = ComplexMatrix::from_fn(dim, dim, |r, c| if r == i && c == i { Complex::new(1.0, 0.0) } else { ZERO })?;
        probes.push(Probe { kind: ProbeKind::Diagonal(i), matrix: m });
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let re =
                ComplexMatrix::from_fn(
                    dim,
                    dim,
                    |r, c| {
                        if (r == i || r == j) && (c == i || c == j) {
                            half
                        } else {
                            ZERO
                        }
                    },
                )?;
            let im = ComplexMatrix::from_fn(dim, dim, |r, c| match (r, c) {
                _ if r == c && (r == i || r == j) => half,
                _ if r == i && c == j => Complex::new(0.0, -0.5),
                _ if r == j && c == i => Complex::new(0.0, 0.5),
                _ => ZERO,
            })?;
            probes.push(Probe { kind: ProbeKind::Real(i, j), matrix: re });
            probes.push(Probe { kind: ProbeKind::Imag(i, j), matrix: im });
        }
    }
    Ok(probes)
}

/// Fixed held-out projections used when the caller supplies none: the
/// uniform superposition, a Fourier vector, a rank-two coordinate projection
/// and the identity.
fn default_holdout(dim: usize) -> Result<Vec<ComplexMatrix>> {
    let n = dim as f64;
    let uniform: Vec<Complex> = (0..dim).map(|_| Complex::new(1.0 / n.sqrt(), 0.0)).collect();
    let w = 2.0 * std::f64::consts::PI / n;
    let fourier: Vec<Complex> = (0..dim).map(|k| Complex::from_polar(1.0 / n.sqrt(), w * k as f64)).collect();
    let mut rank_two = vec![0.0; dim];
    rank_two[0] = 1.0;
    rank_two[dim - 1] = 1.0;
    Ok(vec![
        vector_density(&Ket::new(uniform)?),
        vector_density(&Ket::new(fourier)?),
        ComplexMatrix::diag_real(&rank_two)?,
        ComplexMatrix::identity(dim)?,
    ])
}

/// Tolerance for the measure agreeing with `tr(P·D)` on held-out
/// projections.
pub const HOLDOUT_TOL: f64 = 1e-8;

/// Density operator recovered from a measure, with residuals of the fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GleasonReconstruction {
    pub density: DensityOperator,
    pub probe_count: usize,
    /// `max |tr(P·D) − μ(P)|` over the probes.
    pub probe_residual: f64,
    pub holdout_count: usize,
    /// `max |tr(P·D) − μ(P)|` over the held-out projections.
    pub holdout_residual: f64,
}

/// Reconstructs `D` with `μ(P) = tr(P·D)` from rank-one probes, checking
/// the result on a default held-out family.
pub fn gleason_reconstruct(measure: &impl Measure, dim: usize) -> Result<GleasonReconstruction> {
    if dim < 3 {
        return Err(Error::DimensionTooSmall(dim));
    }
    gleason_reconstruct_with_holdout(measure, dim, &default_holdout(dim)?)
}

pub fn gleason_reconstruct_with_holdout(
    measure: &impl Measure,
    dim: usize,
    holdout: &[ComplexMatrix],
) -> Result<GleasonReconstruction> {
    if dim < 3 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let probes = gleason_probes(dim)?;
    let mut values = Vec::with_capacity(probes.len());
    for p in &probes {
        let v = measure.measure(&p.matrix)?;
        if !v.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&v) {
            return Err(Error::InconsistentMeasure(format!("measure value {v} outside [0, 1]")));
        }
        values.push(v);
    }

    let mut diag = vec![0.0; dim];
    for (p, &v) in probes.iter().zip(&values) {
        if let ProbeKind::Diagonal(i) = p.kind {
            diag[i] = v;
        }
    }
    let mut data = vec![ZERO; dim * dim];
    for i in 0..dim {
        data[i * dim + i] = Complex::new(diag[i], 0.0);
    }
    for (p, &v) in probes.iter().zip(&values) {
        match p.kind {
            ProbeKind::Diagonal(_) => {}
            ProbeKind::Real(i, j) => {
                let re = v - 0.5 * (diag[i] + diag[j]);
                data[i * dim + j].re = re;
                data[j * dim + i].re = re;
            }
            ProbeKind::Imag(i, j) => {
                let im = 0.5 * (diag[i] + diag[j]) - v;
                data[i * dim + j].im = im;
                data[j * dim + i].im = -im;
            }
        }
    }
    let matrix = ComplexMatrix::new(dim, dim, data)?;
    let density = DensityOperator::new(matrix)
        .map_err(|e| Error::InconsistentMeasure(format!("reconstruction is not a density operator: {e}")))?;

    let mut probe_residual: f64 = 0.0;
    for (p, &v) in probes.iter().zip(&values) {
        probe_residual = probe_residual.max((density.expectation(&p.matrix)? - v).abs());
    }
    let mut holdout_residual: f64 = 0.0;
    for p in holdout {
        if p.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!("held-out projection {:?} in dimension {dim}", p.shape())));
        }
        let r = (density.expectation(p)? - measure.measure(p)?).abs();
        holdout_residual = holdout_residual.max(r);
    }
    if holdout_residual > HOLDOUT_TOL {
        return Err(Error::InconsistentMeasure(format!("held-out projection disagrees by {holdout_residual:e}")));
    }
    Ok(GleasonReconstruction {
        density,
        probe_count: probes.len(),
        probe_residual,
        holdout_count: holdout.len(),
        holdout_residual,
    })
}

/// Reconstruction from a table: probes are looked up, every other sample is
/// held out.
pub fn gleason_from_table(table: &MeasureTable) -> Result<GleasonReconstruction> {
    if table.dim < 3 {
        return Err(Error::DimensionTooSmall(table.dim));
    }
    let probes = gleason_probes(table.dim)?;
    let holdout: Vec<ComplexMatrix> = table
        .samples
        .iter()
        .filter(|s| {
            !probes.iter().any(|p| {
                p.matrix.shape() == s.projection.shape() && p.matrix.distance(&s.projection) <= TABLE_MATCH_TOL
            })
        })
        .map(|s| s.projection.clone())
        .collect();
    gleason_reconstruct_with_holdout(table, table.dim, &holdout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;
    use crate::norms::{hs_norm, nuclear_norm};
    use crate::sampling::{density_matrix, gaussian_matrix, projection, rank_one_projection, seeded, unit_vector};
    use crate::tensor::dyad;

    fn phi_plus() -> TensorElement {
        let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let e1 = Ket::basis(2, 0).unwrap();
        let e2 = Ket::basis(2, 1).unwrap();
        TensorElement::new(2, 2, vec![(e1.scale(h), e1), (e2.scale(h), e2)]).unwrap()
    }

    fn oracle(d: &ComplexMatrix) -> impl Fn(&ComplexMatrix) -> f64 + '_ {
        move |p: &ComplexMatrix| (p * d).trace().unwrap().re
    }

    #[test]
    fn density_validation() {
        assert!(DensityOperator::new(ComplexMatrix::diag_real(&[0.5, 0.5]).unwrap()).is_ok());
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::diag_real(&[0.5, 0.6]).unwrap()),
            Err(Error::InvalidDensity(_))
        ));
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::diag_real(&[1.5, -0.5]).unwrap()),
            Err(Error::InvalidDensity(_))
        ));
        let skew = ComplexMatrix::from_real_rows(&[[0.5, 1.0], [-1.0, 0.5]]);
        assert!(matches!(DensityOperator::new(skew), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn product_state_has_rank_one() {
        let mut rng = seeded(40);
        let x = Ket::new(unit_vector(&mut rng, 3)).unwrap();
        let y = Ket::new(unit_vector(&mut rng, 2)).unwrap();
        let s = schmidt(&dyad(&x, &y)).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.coeffs[0] - 1.0).abs() < 1e-14);
        assert!(!is_entangled(&dyad(&Ket::basis(2, 0).unwrap(), &Ket::basis(2, 1).unwrap()), 1e-12).unwrap());
    }

    #[test]
    fn bell_state_coefficients() {
        let s = schmidt(&phi_plus()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.rank(), 2);
        assert!(s.coeffs.iter().all(|c| (c - h).abs() < 1e-12));
        assert!((s.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(is_entangled(&phi_plus(), 1e-12).unwrap());
    }

    #[test]
    fn nearly_product_state_is_still_entangled() {
        let e1 = Ket::basis(2, 0).unwrap();
        let e2 = Ket::basis(2, 1).unwrap();
        let r = (0.999f64.powi(2) + 0.001f64.powi(2)).sqrt();
        let z = TensorElement::new(
            2,
            2,
            vec![(e1.scale(Complex::new(0.999 / r, 0.0)), e1), (e2.scale(Complex::new(0.001 / r, 0.0)), e2)],
        )
        .unwrap();
        assert!(is_entangled(&z, 1e-12).unwrap());
        assert!(!is_entangled(&z, 1e-2).unwrap());
    }

    #[test]
    fn random_state_reconstruction() {
        let mut rng = seeded(41);
        let z = TensorElement::from_matrix(&gaussian_matrix(&mut rng, 3, 4));
        let s = schmidt(&z).unwrap();
        assert!(s.reconstruct().matrix_rep().distance(z.matrix_rep()) < 1e-9);
        assert!((s.weights().iter().sum::<f64>() - z.norm().powi(2)).abs() < 1e-9);
        for fam in [&s.left, &s.right] {
            for (a, u) in fam.iter().enumerate() {
                for (b, v) in fam.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((inner(u.coords(), v.coords()) - Complex::new(want, 0.0)).norm() < 1e-9);
                }
            }
        }
        let swapped = schmidt(&z.swap()).unwrap();
        for (a, b) in s.coeffs.iter().zip(&swapped.coeffs) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_element_is_rejected() {
        let z = TensorElement::from_matrix(&ComplexMatrix::zeros(2, 2).unwrap());
        assert!(matches!(schmidt(&z), Err(Error::ZeroElement)));
        assert!(matches!(is_entangled(&z, 1e-12), Err(Error::ZeroElement)));
    }

    #[test]
    fn mixtures() {
        let e: Vec<Ket> = (0..3).map(|i| Ket::basis(3, i).unwrap()).collect();
        let pure = density_from_mixture(&[1.0], &e[..1]).unwrap();
        assert_eq!(pure.matrix, ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]).unwrap());

        let w = [0.5, 1.0 / 3.0, 1.0 / 6.0];
        let d = density_from_mixture(&w, &e).unwrap();
        assert!(d.matrix.distance(&ComplexMatrix::diag_real(&w).unwrap()) < 1e-15);
        for (got, want) in d.spectrum.iter().zip(w) {
            assert!((got - want).abs() < 1e-15);
        }

        let mut rng = seeded(42);
        for _ in 0..20 {
            let vs: Vec<Ket> = (0..4).map(|_| Ket::new(unit_vector(&mut rng, 3)).unwrap()).collect();
            let d = density_from_mixture(&[0.1, 0.2, 0.3, 0.4], &vs).unwrap();
            assert!((nuclear_norm(&d.matrix).unwrap() - 1.0).abs() < 1e-10);
            assert!(hs_norm(&d.matrix) <= 1.0 + 1e-10);
        }

        assert!(matches!(density_from_mixture(&[0.5, 0.4], &e[..2]), Err(Error::WeightsNotNormalized(_))));
        assert!(matches!(density_from_mixture(&[1.5, -0.5], &e[..2]), Err(Error::WeightsNotNormalized(_))));
        let long = e[0].scale(Complex::new(2.0, 0.0));
        assert!(matches!(density_from_mixture(&[1.0], &[long]), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn gleason_diagonal_and_pure() {
        let d = ComplexMatrix::diag_real(&[0.5, 1.0 / 3.0, 1.0 / 6.0]).unwrap();
        let g = gleason_reconstruct(&oracle(&d), 3).unwrap();
        assert!(g.density.matrix.distance(&d) < 1e-10);
        assert_eq!(g.probe_count, 9);

        let pure = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]).unwrap();
        let g = gleason_reconstruct(&oracle(&pure), 3).unwrap();
        assert!(g.density.matrix.distance(&pure) < 1e-12);
    }

    #[test]
    fn gleason_random_state_with_holdout() {
        let mut rng = seeded(43);
        let d = density_matrix(&mut rng, 4);
        let holdout: Vec<ComplexMatrix> = (0..50).map(|_| rank_one_projection(&unit_vector(&mut rng, 4))).collect();
        let g = gleason_reconstruct_with_holdout(&oracle(&d), 4, &holdout).unwrap();
        assert!(g.holdout_residual <= 1e-9);
        assert!(g.density.matrix.distance(&d) < 1e-10);

        // additivity on orthogonal pieces of a random projection
        let p = projection(&mut rng, 4, 2);
        let q = &ComplexMatrix::identity(4).unwrap() - &p;
        let mu = |m: &ComplexMatrix| g.density.expectation(m).unwrap();
        assert!((mu(&p) + mu(&q) - mu(&(&p + &q))).abs() < 1e-9);
    }

    #[test]
    fn gleason_rejects_small_dims_and_bad_measures() {
        let d = ComplexMatrix::diag_real(&[0.5, 0.5]).unwrap();
        assert!(matches!(gleason_reconstruct(&oracle(&d), 2), Err(Error::DimensionTooSmall(2))));

        // a "measure" that is not of the form tr(PD): constant 1/2 on rank-one projections
        let half = |p: &ComplexMatrix| p.trace().unwrap().re * 0.5;
        assert!(matches!(gleason_reconstruct(&half, 3), Err(Error::InconsistentMeasure(_))));

        let out_of_range = |_: &ComplexMatrix| 2.0;
        assert!(matches!(gleason_reconstruct(&out_of_range, 3), Err(Error::InconsistentMeasure(_))));
    }

    #[test]
    fn gleason_from_a_table() {
        let mut rng = seeded(44);
        let d = density_matrix(&mut rng, 3);
        let extra: Vec<ComplexMatrix> = (0..5).map(|_| rank_one_projection(&unit_vector(&mut rng, 3))).collect();
        let table = MeasureTable::tabulate(&oracle(&d), 3, &extra).unwrap();
        let g = gleason_from_table(&table).unwrap();
        assert_eq!(g.holdout_count, 5);
        assert!(g.density.matrix.distance(&d) < 1e-10);

        let json = serde_json::to_string(&table).unwrap();
        let back: MeasureTable = serde_json::from_str(&json).unwrap();
        assert!(gleason_from_table(&back).is_ok());

        let mut missing = table.clone();
        missing.samples.remove(0);
        assert!(matches!(gleason_from_table(&missing), Err(Error::InvalidInput(_))));
    }
}
