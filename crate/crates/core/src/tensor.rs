//! Kronecker products, `vec`, commutation matrices and the identification of
//! `C^n ⊗ C^m` with `m × n` matrices through transpose dyads.
//!
//! A tensor element `Σ x_k ⊗ y_k` with `x_k ∈ C^n`, `y_k ∈ C^m` is represented
//! by the matrix `Σ y_k·x_kᵀ`. No conjugation enters anywhere in this module,
//! so every map here is linear; `vec` of the representative is the Kronecker
//! vector `Σ x_k ⊗ y_k`.

use serde::{Deserialize, Serialize};

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, ZERO};

/// Block Kronecker product `[x_ij · y]`.
pub fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (xr, xc) = x.shape();
    let (yr, yc) = y.shape();
    ComplexMatrix::from_fn(xr * yr, xc * yc, |i, j| x.get(i / yr, j / yc) * y.get(i % yr, j % yc))
        .expect("product of valid shapes")
}

/// Kronecker product of two kets, `(x_1 yᵀ | … | x_n yᵀ)ᵀ`.
pub fn kron_ket(x: &Ket, y: &Ket) -> Ket {
    let coords = x.coords().iter().flat_map(|a| y.coords().iter().map(move |b| a * b)).collect();
    Ket::new(coords).expect("finite coordinates")
}

/// Column stacking.
pub fn vec(a: &ComplexMatrix) -> Ket {
    Ket::new(a.transpose().into_data()).expect("finite coordinates")
}

/// Inverse of [`vec`] for a `rows × cols` target.
pub fn unvec(v: &Ket, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    if v.dim() != rows * cols {
        return Err(Error::DimensionMismatch(format!("cannot reshape {} entries to {rows}x{cols}", v.dim())));
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| v.coords()[j * rows + i])
}

/// Left fold of [`kron`]. Other parenthesizations give the same array up to
/// floating-point rounding of the entry products.
pub fn nfold_kron(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyFactorList)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| kron(&acc, f)))
}

/// Ket version of [`nfold_kron`].
pub fn nfold_kron_kets(factors: &[Ket]) -> Result<Ket> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyFactorList)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| kron_ket(&acc, f)))
}

/// Permutation matrix `K_{m,n}` with `K·(y ⊗ x) = x ⊗ y` for `x ∈ C^n`,
/// `y ∈ C^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutationMatrix {
    pub m: usize,
    pub n: usize,
    pub matrix: ComplexMatrix,
}

pub fn commutation_matrix(m: usize, n: usize) -> Result<CommutationMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidDimension(format!("commutation matrix K_{{{m},{n}}}")));
    }
    let size = m * n;
    let mut data = vec![ZERO; size * size];
    // (y ⊗ x)[i·n + j] = y_i x_j lands at (x ⊗ y)[j·m + i]
    for i in 0..m {
        for j in 0..n {
            data[(j * m + i) * size + i * n + j] = Complex::new(1.0, 0.0);
        }
    }
    Ok(CommutationMatrix { m, n, matrix: ComplexMatrix::new(size, size, data)? })
}

/// Element of `C^n ⊗ C^m` kept both as a term list and as its matrix
/// representative `Σ y_k·x_kᵀ` (`m × n`).
///
/// Equality compares representatives only: two term lists with the same
/// representative are the same element.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TensorJson", into = "TensorJson")]
pub struct TensorElement {
    left_dim: usize,
    right_dim: usize,
    terms: Vec<(Ket, Ket)>,
    matrix_rep: ComplexMatrix,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix_rep == other.matrix_rep
    }
}

fn rep_of(left_dim: usize, right_dim: usize, terms: &[(Ket, Ket)]) -> Result<ComplexMatrix> {
    let mut data = vec![ZERO; right_dim * left_dim];
    for (x, y) in terms {
        if x.dim() != left_dim || y.dim() != right_dim {
            return Err(Error::DimensionMismatch(format!(
                "term of shape ({}, {}) in C^{left_dim} ⊗ C^{right_dim}",
                x.dim(),
                y.dim()
            )));
        }
        for (i, yi) in y.coords().iter().enumerate() {
            for (j, xj) in x.coords().iter().enumerate() {
                data[i * left_dim + j] += yi * xj;
            }
        }
    }
    ComplexMatrix::new(right_dim, left_dim, data)
}

impl TensorElement {
    pub fn new(left_dim: usize, right_dim: usize, terms: Vec<(Ket, Ket)>) -> Result<Self> {
        let matrix_rep = rep_of(left_dim, right_dim, &terms)?;
        Ok(Self { left_dim, right_dim, terms, matrix_rep })
    }

    /// The element whose representative is `rep` (`m × n`), written as
    /// `Σ_j e_j ⊗ rep[:, j]`.
    pub fn from_matrix(rep: &ComplexMatrix) -> Self {
        let (m, n) = rep.shape();
        let terms =
            (0..n).map(|j| (Ket::basis(n, j).expect("in range"), Ket::new(rep.column(j)).expect("finite"))).collect();
        Self { left_dim: n, right_dim: m, terms, matrix_rep: rep.clone() }
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn terms(&self) -> &[(Ket, Ket)] {
        &self.terms
    }

    pub fn matrix_rep(&self) -> &ComplexMatrix {
        &self.matrix_rep
    }

    /// Hilbert-Schmidt norm of the representative.
    pub fn norm(&self) -> f64 {
        self.matrix_rep.frobenius_norm()
    }

    pub fn scale(&self, s: Complex) -> TensorElement {
        let terms = self.terms.iter().map(|(x, y)| (x.scale(s), y.clone())).collect();
        Self { terms, matrix_rep: self.matrix_rep.scale(s), ..*self }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if (self.left_dim, self.right_dim) != (other.left_dim, other.right_dim) {
            return Err(Error::DimensionMismatch("tensor elements over different spaces".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.left_dim, self.right_dim, terms)
    }

    /// The flipped element `Σ y_k ⊗ x_k` in `C^m ⊗ C^n`; its representative
    /// is the transpose.
    pub fn swap(&self) -> TensorElement {
        let terms = self.terms.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        Self { left_dim: self.right_dim, right_dim: self.left_dim, terms, matrix_rep: self.matrix_rep.transpose() }
    }

    /// Components in `(C^m)^n`: the `j`-th one is column `j` of the
    /// representative, `Σ_k (x_k)_j·y_k`.
    pub fn components(&self) -> Vec<Vec<Complex>> {
        self.matrix_rep.columns()
    }

    /// Largest deviation between the cached representative and a fresh
    /// recomputation from the terms.
    pub fn representation_drift(&self) -> f64 {
        rep_of(self.left_dim, self.right_dim, &self.terms)
            .map(|r| r.distance(&self.matrix_rep))
            .unwrap_or(f64::INFINITY)
    }
}

/// Single-term element `x ⊗ z` with representative `z·xᵀ`.
pub fn dyad(x: &Ket, z: &Ket) -> TensorElement {
    TensorElement::new(x.dim(), z.dim(), vec![(x.clone(), z.clone())]).expect("dimensions taken from the terms")
}

/// Hilbert-Schmidt pairing `tr(B†A)` of the representatives, linear in `z1`.
pub fn tensor_inner(z1: &TensorElement, z2: &TensorElement) -> Result<Complex> {
    if (z1.left_dim, z1.right_dim) != (z2.left_dim, z2.right_dim) {
        return Err(Error::DimensionMismatch(format!(
            "C^{} ⊗ C^{} against C^{} ⊗ C^{}",
            z1.left_dim, z1.right_dim, z2.left_dim, z2.right_dim
        )));
    }
    Ok(z1.matrix_rep.data().iter().zip(z2.matrix_rep.data()).map(|(a, b)| a * b.conj()).sum())
}

/// Kronecker vector `Σ x_k ⊗ y_k`, equal to `vec` of the representative.
pub fn to_kron_vector(z: &TensorElement) -> Ket {
    vec(&z.matrix_rep)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<[f64; 2]>,
    y: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    left_dim: usize,
    right_dim: usize,
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix_rep: Option<ComplexMatrix>,
}

fn ket_from_pairs(v: &[[f64; 2]]) -> Result<Ket> {
    Ket::new(v.iter().map(|&[re, im]| Complex::new(re, im)).collect())
}

fn pairs_of(k: &Ket) -> Vec<[f64; 2]> {
    k.coords().iter().map(|z| [z.re, z.im]).collect()
}

/// Tolerance for a stored representative against the recomputed one.
const STORED_REP_TOL: f64 = 1e-12;

impl TryFrom<TensorJson> for TensorElement {
    type Error = Error;

    fn try_from(j: TensorJson) -> Result<Self> {
        if j.terms.is_empty() {
            return Err(Error::InvalidInput("tensor element needs at least one term".into()));
        }
        let terms =
            j.terms.iter().map(|t| Ok((ket_from_pairs(&t.x)?, ket_from_pairs(&t.y)?))).collect::<Result<Vec<_>>>()?;
        let z = TensorElement::new(j.left_dim, j.right_dim, terms)?;
        if let Some(stored) = j.matrix_rep {
            if stored.shape() != z.matrix_rep.shape() {
                return Err(Error::InvalidInput("stored matrix_rep has the wrong shape".into()));
            }
            let drift = stored.distance(&z.matrix_rep);
            if drift > STORED_REP_TOL * (1.0 + z.norm()) {
                return Err(Error::InvalidInput(format!("stored matrix_rep differs from the terms by {drift:e}")));
            }
        }
        Ok(z)
    }
}

impl From<TensorElement> for TensorJson {
    fn from(z: TensorElement) -> Self {
        TensorJson {
            left_dim: z.left_dim,
            right_dim: z.right_dim,
            terms: z.terms.iter().map(|(x, y)| TermJson { x: pairs_of(x), y: pairs_of(y) }).collect(),
            matrix_rep: Some(z.matrix_rep),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;
    use crate::sampling::{gaussian_matrix, gaussian_vector, seeded};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn col(v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(v.len(), 1, v).unwrap()
    }

    #[test]
    fn kron_of_basis_vectors() {
        let e2 = ComplexMatrix::basis_vector(2, 1).unwrap();
        let e1 = ComplexMatrix::basis_vector(3, 0).unwrap();
        assert_eq!(kron(&e2, &e1), ComplexMatrix::basis_vector(6, 3).unwrap());
    }

    #[test]
    fn kron_small_examples() {
        assert_eq!(kron(&col(&[1.0, 2.0]), &col(&[3.0, 4.0])), col(&[3.0, 4.0, 6.0, 8.0]));
        let i2 = ComplexMatrix::identity(2).unwrap();
        let i3 = ComplexMatrix::identity(3).unwrap();
        assert_eq!(kron(&i2, &i3), ComplexMatrix::identity(6).unwrap());
    }

    #[test]
    fn mixed_product_rule() {
        let mut rng = seeded(2);
        for (p, q) in [(2, 3), (3, 2), (2, 2)] {
            let a = gaussian_matrix(&mut rng, p, p);
            let b = gaussian_matrix(&mut rng, q, q);
            let cm = gaussian_matrix(&mut rng, p, p);
            let d = gaussian_matrix(&mut rng, q, q);
            let lhs = &kron(&a, &b) * &kron(&cm, &d);
            let rhs = kron(&(&a * &cm), &(&b * &d));
            assert!(lhs.distance(&rhs) <= 1e-12 * (1.0 + lhs.frobenius_norm()));
        }
    }

    #[test]
    fn vec_examples() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 3.0], [2.0, 4.0]]);
        assert_eq!(vec(&a), Ket::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap());
        assert_eq!(vec(&ComplexMatrix::zeros(2, 3).unwrap()).norm(), 0.0);
        let y = Ket::from_real(&[0.0, 1.0]).unwrap();
        let x = Ket::from_real(&[1.0, 0.0]).unwrap();
        let v = to_kron_vector(&dyad(&x, &y));
        assert_eq!(v, Ket::from_real(&[0.0, 1.0, 0.0, 0.0]).unwrap());
        assert_eq!(v, kron_ket(&x, &y));
        let back = unvec(&v, 2, 2).unwrap();
        assert_eq!(back, ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]));
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(commutation_matrix(1, 4).unwrap().matrix, ComplexMatrix::identity(4).unwrap());
        let k = commutation_matrix(2, 2).unwrap();
        let y_x = col(&[3.0, 6.0, 4.0, 8.0]);
        assert_eq!(&k.matrix * &y_x, col(&[3.0, 4.0, 6.0, 8.0]));
        assert!(matches!(commutation_matrix(0, 3), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn dyad_examples() {
        let x = Ket::from_real(&[1.0, 0.0]).unwrap();
        let z = Ket::from_real(&[0.0, 1.0]).unwrap();
        let d = dyad(&x, &z);
        assert_eq!(d.matrix_rep(), &ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]));
        assert_eq!(dyad(&Ket::from_real(&[0.0, 0.0]).unwrap(), &z).norm(), 0.0);

        let mut rng = seeded(4);
        let x = Ket::new(gaussian_vector(&mut rng, 3)).unwrap();
        let z = Ket::new(gaussian_vector(&mut rng, 2)).unwrap();
        let (l, m) = (c(0.0, 1.0), c(2.0, 0.0));
        let lhs = dyad(&x.scale(l), &z.scale(m));
        let rhs = dyad(&x, &z).matrix_rep().scale(l * m);
        assert!(lhs.matrix_rep().distance(&rhs) < 1e-12);
        assert!((dyad(&x, &z).norm() - x.norm() * z.norm()).abs() < 1e-12);
    }

    #[test]
    fn tensor_inner_examples() {
        let e1 = Ket::basis(2, 0).unwrap();
        let e2 = Ket::basis(2, 1).unwrap();
        assert_eq!(tensor_inner(&dyad(&e1, &e1), &dyad(&e1, &e1)).unwrap(), c(1.0, 0.0));
        assert_eq!(tensor_inner(&dyad(&e1, &e1), &dyad(&e2, &e2)).unwrap(), c(0.0, 0.0));
        let wrong = dyad(&Ket::basis(3, 0).unwrap(), &e1);
        assert!(matches!(tensor_inner(&wrong, &dyad(&e1, &e1)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tensor_inner_factorizes_on_dyads() {
        let mut rng = seeded(6);
        for n in 1..=8 {
            let m = 9 - n;
            let (x1, x2) = (gaussian_vector(&mut rng, n), gaussian_vector(&mut rng, n));
            let (z1, z2) = (gaussian_vector(&mut rng, m), gaussian_vector(&mut rng, m));
            let d1 = dyad(&Ket::new(x1.clone()).unwrap(), &Ket::new(z1.clone()).unwrap());
            let d2 = dyad(&Ket::new(x2.clone()).unwrap(), &Ket::new(z2.clone()).unwrap());
            // oracle: explicit double sum Σ_ij (z1_i x1_j) conj(z2_i x2_j)
            let mut oracle = c(0.0, 0.0);
            for i in 0..m {
                for j in 0..n {
                    oracle += z1[i] * x1[j] * (z2[i] * x2[j]).conj();
                }
            }
            let got = tensor_inner(&d1, &d2).unwrap();
            assert!((got - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));
            assert!((got - inner(&x1, &x2) * inner(&z1, &z2)).norm() <= 1e-10 * (1.0 + oracle.norm()));
        }
    }

    #[test]
    fn key_representation_against_double_sum() {
        let mut rng = seeded(10);
        for (m, n) in [(2, 3), (4, 4), (5, 2)] {
            let r = gaussian_matrix(&mut rng, m, n);
            let x = gaussian_vector(&mut rng, n);
            let z = gaussian_vector(&mut rng, m);
            let d = dyad(&Ket::new(x.clone()).unwrap(), &Ket::new(z.clone()).unwrap());
            let lhs = tensor_inner(&TensorElement::from_matrix(&r), &d).unwrap();
            let mut oracle = c(0.0, 0.0);
            for (i, zi) in z.iter().enumerate() {
                for (j, xj) in x.iter().enumerate() {
                    oracle += zi.conj() * r.get(i, j) * xj.conj();
                }
            }
            assert!((lhs - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));
        }
    }

    #[test]
    fn phi_plus_kron_vector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e1 = Ket::basis(2, 0).unwrap();
        let e2 = Ket::basis(2, 1).unwrap();
        let phi = TensorElement::new(2, 2, vec![(e1.scale(c(h, 0.0)), e1.clone()), (e2.scale(c(h, 0.0)), e2.clone())])
            .unwrap();
        assert_eq!(to_kron_vector(&phi), Ket::from_real(&[h, 0.0, 0.0, h]).unwrap());
    }

    #[test]
    fn components_carry_the_norm() {
        let mut rng = seeded(12);
        let z = TensorElement::from_matrix(&gaussian_matrix(&mut rng, 3, 4));
        let total: f64 = z.components().iter().map(|c| crate::linalg::norm(c).powi(2)).sum();
        assert!((total - z.norm().powi(2)).abs() < 1e-10);
        assert_eq!(z.swap().matrix_rep(), &z.matrix_rep().transpose());
        assert!(z.representation_drift() < 1e-12);
    }

    #[test]
    fn nfold_examples() {
        let e1 = ComplexMatrix::basis_vector(2, 0).unwrap();
        let e2 = ComplexMatrix::basis_vector(2, 1).unwrap();
        let v = nfold_kron(&[e1.clone(), e2.clone(), e2.clone()]).unwrap();
        assert_eq!(v, ComplexMatrix::basis_vector(8, 3).unwrap());
        assert_eq!(nfold_kron(std::slice::from_ref(&e1)).unwrap(), e1);
        assert_eq!(nfold_kron(&[]), Err(Error::EmptyFactorList));
        assert_eq!(nfold_kron_kets(&[]), Err(Error::EmptyFactorList));

        // Gaussian-integer entries multiply without rounding, so both
        // parenthesizations must agree bit for bit
        let mut rng = seeded(13);
        let mut int_matrix = || {
            let g = gaussian_matrix(&mut rng, 2, 2);
            ComplexMatrix::from_fn(2, 2, |i, j| {
                let z = g.get(i, j) * 4.0;
                c(z.re.round(), z.im.round())
            })
            .unwrap()
        };
        let (a, b, cm) = (int_matrix(), int_matrix(), int_matrix());
        assert_eq!(kron(&kron(&a, &b), &cm), kron(&a, &kron(&b, &cm)));
        assert_eq!(nfold_kron(&[a.clone(), b.clone(), cm.clone()]).unwrap(), kron(&a, &kron(&b, &cm)));

        // general floating-point entries agree to rounding
        let (a, b, cm) =
            (gaussian_matrix(&mut rng, 2, 2), gaussian_matrix(&mut rng, 2, 2), gaussian_matrix(&mut rng, 2, 2));
        let (l, r) = (kron(&kron(&a, &b), &cm), kron(&a, &kron(&b, &cm)));
        assert!(l.distance(&r) <= 1e-15 * l.frobenius_norm());
    }

    #[test]
    fn json_recomputes_representative() {
        let x = Ket::from_real(&[1.0, 2.0]).unwrap();
        let y = Ket::new(vec![c(0.0, 1.0), c(1.0, 0.0), c(0.5, -0.5)]).unwrap();
        let z = dyad(&x, &y);
        let s = serde_json::to_string(&z).unwrap();
        let back: TensorElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);

        let tampered = r#"{"left_dim":1,"right_dim":1,"terms":[{"x":[[1.0,0.0]],"y":[[2.0,0.0]]}],
            "matrix_rep":{"rows":1,"cols":1,"data":[[3.0,0.0]]}}"#;
        assert!(serde_json::from_str::<TensorElement>(tampered).is_err());
        let no_rep = r#"{"left_dim":1,"right_dim":1,"terms":[{"x":[[1.0,0.0]],"y":[[2.0,0.0]]}]}"#;
        let z: TensorElement = serde_json::from_str(no_rep).unwrap();
        assert_eq!(z.matrix_rep().get(0, 0), c(2.0, 0.0));
        let bad_dims = r#"{"left_dim":2,"right_dim":1,"terms":[{"x":[[1.0,0.0]],"y":[[2.0,0.0]]}]}"#;
        assert!(serde_json::from_str::<TensorElement>(bad_dims).is_err());
    }
}
