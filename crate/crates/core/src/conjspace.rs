//! Kets in `C^n` and in its conjugate space, basis-dependent conjugations,
//! and the linear Riesz map onto functionals of the conjugate space.
//!
//! The conjugate space reuses the coordinate array of the original space.
//! Only the space tag differs, and that tag changes two things: scalars act
//! through their conjugates, and the inner product is the conjugate of the
//! plain one. Mixing tags in an inner product is rejected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, norm, Complex, ComplexMatrix};

/// Unitarity tolerance for basis matrices, `‖B†B − I‖_F`.
pub const BASIS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Plain,
    Conjugate,
}

impl Space {
    fn name(self) -> &'static str {
        match self {
            Space::Plain => "plain",
            Space::Conjugate => "conjugate",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinate vector tagged with the space it lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KetJson", into = "KetJson")]
pub struct Ket {
    coords: Vec<Complex>,
    space: Space,
}

#[derive(Serialize, Deserialize)]
struct KetJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
    #[serde(default = "plain")]
    space: Space,
}

fn plain() -> Space {
    Space::Plain
}

impl TryFrom<KetJson> for Ket {
    type Error = Error;

    fn try_from(j: KetJson) -> Result<Self> {
        if j.cols != 1 {
            return Err(Error::InvalidInput(format!("a ket is a single column, got {} columns", j.cols)));
        }
        let m = ComplexMatrix::new(j.rows, 1, j.data.iter().map(|&[re, im]| Complex::new(re, im)).collect())?;
        Ok(Ket { coords: m.into_data(), space: j.space })
    }
}

impl From<Ket> for KetJson {
    fn from(k: Ket) -> Self {
        KetJson { rows: k.coords.len(), cols: 1, data: k.coords.iter().map(|z| [z.re, z.im]).collect(), space: k.space }
    }
}

impl Ket {
    pub fn new(coords: Vec<Complex>) -> Result<Self> {
        Self::tagged(coords, Space::Plain)
    }

    pub fn tagged(coords: Vec<Complex>, space: Space) -> Result<Self> {
        // reuse the matrix validation (nonempty, finite)
        let m = ComplexMatrix::new(coords.len(), 1, coords)?;
        Ok(Ket { coords: m.into_data(), space })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// `e_index` of the standard basis of `C^dim`, 0-based.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        Ok(Ket { coords: ComplexMatrix::basis_vector(dim, index)?.into_data(), space: Space::Plain })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex] {
        &self.coords
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    /// Scalar multiplication in the ket's own space. In the conjugate space
    /// `λ·x` has coordinates `conj(λ)·x`.
    pub fn scale(&self, lambda: Complex) -> Ket {
        let s = match self.space {
            Space::Plain => lambda,
            Space::Conjugate => lambda.conj(),
        };
        Ket { coords: self.coords.iter().map(|z| z * s).collect(), space: self.space }
    }

    pub fn add(&self, other: &Ket) -> Result<Ket> {
        self.same_space(other)?;
        Ok(Ket { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(), space: self.space })
    }

    /// Inner product in the ket's space, linear in `self`.
    pub fn inner(&self, other: &Ket) -> Result<Complex> {
        self.same_space(other)?;
        let plain = inner(&self.coords, &other.coords);
        Ok(match self.space {
            Space::Plain => plain,
            Space::Conjugate => plain.conj(),
        })
    }

    /// Column matrix with the same coordinates.
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::column_vector(&self.coords).expect("ket is nonempty")
    }

    fn same_space(&self, other: &Ket) -> Result<()> {
        if self.space != other.space {
            return Err(Error::WrongSpaceTag { expected: self.space.name(), found: other.space.name() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("kets of dimension {} and {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    fn expect_space(&self, space: Space) -> Result<()> {
        if self.space != space {
            return Err(Error::WrongSpaceTag { expected: space.name(), found: self.space.name() });
        }
        Ok(())
    }
}

/// Linear functional given by a coefficient row, acting on kets of `domain`.
///
/// On the plain space `f(k) = Σ c_i k_i`. On the conjugate space the
/// coordinates are read back through conjugation, `f(k) = Σ c_i conj(k_i)`,
/// which is what makes `f` linear for the conjugate scalar action.
#[derive(Debug, Clone, PartialEq)]
pub struct Bra {
    coeffs: Vec<Complex>,
    domain: Space,
}

impl Bra {
    pub fn new(coeffs: Vec<Complex>, domain: Space) -> Result<Self> {
        let m = ComplexMatrix::new(1, coeffs.len(), coeffs)?;
        Ok(Bra { coeffs: m.into_data(), domain })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn domain(&self) -> Space {
        self.domain
    }

    /// Functional norm, equal to the Euclidean norm of the coefficient row.
    pub fn norm(&self) -> f64 {
        norm(&self.coeffs)
    }

    pub fn apply(&self, k: &Ket) -> Result<Complex> {
        k.expect_space(self.domain)?;
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "bra of dimension {} on ket of dimension {}",
                self.dim(),
                k.dim()
            )));
        }
        Ok(match self.domain {
            Space::Plain => self.coeffs.iter().zip(k.coords()).map(|(c, z)| c * z).sum(),
            Space::Conjugate => self.coeffs.iter().zip(k.coords()).map(|(c, z)| c * z.conj()).sum(),
        })
    }
}

/// The canonical map into the conjugate space: same coordinates, new tag.
pub fn to_conjugate(x: &Ket) -> Result<Ket> {
    x.expect_space(Space::Plain)?;
    Ok(Ket { coords: x.coords.clone(), space: Space::Conjugate })
}

/// Inverse of [`to_conjugate`].
pub fn from_conjugate(x: &Ket) -> Result<Ket> {
    x.expect_space(Space::Conjugate)?;
    Ok(Ket { coords: x.coords.clone(), space: Space::Plain })
}

fn check_basis(x: &Ket, basis: &ComplexMatrix) -> Result<Vec<Vec<Complex>>> {
    x.expect_space(Space::Plain)?;
    if !basis.is_square() || basis.rows() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis {}x{} for a ket of dimension {}",
            basis.rows(),
            basis.cols(),
            x.dim()
        )));
    }
    let residual = basis.unitarity_residual();
    if residual > BASIS_TOL {
        return Err(Error::NotUnitaryBasis { residual });
    }
    Ok(basis.columns())
}

/// `Σ_i f(⟨x, e_i⟩)·e_i` over the basis columns.
fn expand(x: &Ket, columns: &[Vec<Complex>], f: impl Fn(Complex) -> Complex) -> Ket {
    let mut out = vec![Complex::new(0.0, 0.0); x.dim()];
    for e in columns {
        let c = f(inner(&x.coords, e));
        for (o, ei) in out.iter_mut().zip(e) {
            *o += c * ei;
        }
    }
    Ket { coords: out, space: Space::Plain }
}

/// Real and imaginary parts of `x` relative to an orthonormal basis:
/// `Re_B(x) = Σ Re⟨x, e_i⟩ e_i`, `Im_B(x) = Σ Im⟨x, e_i⟩ e_i`.
pub fn re_im_parts(x: &Ket, basis: &ComplexMatrix) -> Result<(Ket, Ket)> {
    let cols = check_basis(x, basis)?;
    let re = expand(x, &cols, |c| Complex::new(c.re, 0.0));
    let im = expand(x, &cols, |c| Complex::new(c.im, 0.0));
    Ok((re, im))
}

/// The basis-dependent conjugate `x*_B = Re_B(x) − i·Im_B(x)`.
pub fn star_element(x: &Ket, basis: &ComplexMatrix) -> Result<Ket> {
    let cols = check_basis(x, basis)?;
    Ok(expand(x, &cols, |c| c.conj()))
}

/// The conjugate-linear involution `J_B` on `C^n`; coincides with
/// [`star_element`].
pub fn semilinear_conjugation(x: &Ket, basis: &ComplexMatrix) -> Result<Ket> {
    star_element(x, basis)
}

/// Linear isometry `x ↦ Φx` from `C^n` onto the dual of its conjugate space,
/// with `Φx(to_conjugate(y)) = ⟨x, y⟩`.
pub fn riesz_map(x: &Ket) -> Result<Bra> {
    x.expect_space(Space::Plain)?;
    Ok(Bra { coeffs: x.coords.clone(), domain: Space::Conjugate })
}

/// Coefficient extraction, inverse of [`riesz_map`].
pub fn riesz_inverse(f: &Bra) -> Result<Ket> {
    if f.domain != Space::Conjugate {
        return Err(Error::WrongSpaceTag { expected: "conjugate", found: f.domain.name() });
    }
    Ok(Ket { coords: f.coeffs.clone(), space: Space::Plain })
}

/// The Dirac bra `⟨y| = ⟨·, y⟩` on the plain space. Conjugate-linear in `y`,
/// in contrast with [`riesz_map`].
pub fn dirac_bra(y: &Ket) -> Result<Bra> {
    y.expect_space(Space::Plain)?;
    Ok(Bra { coeffs: y.coords.iter().map(|z| z.conj()).collect(), domain: Space::Plain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gaussian_vector, seeded, unitary};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn fourier(n: usize) -> ComplexMatrix {
        let w = 2.0 * std::f64::consts::PI / n as f64;
        ComplexMatrix::from_fn(n, n, |j, k| Complex::from_polar(1.0 / (n as f64).sqrt(), w * (j * k) as f64)).unwrap()
    }

    #[test]
    fn conjugate_inner_product_is_conjugated() {
        let x = Ket::new(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let y = Ket::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(x.inner(&y).unwrap(), c(0.0, 1.0));
        let (jx, jy) = (to_conjugate(&x).unwrap(), to_conjugate(&y).unwrap());
        assert_eq!(jx.inner(&jy).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn tag_round_trip_and_norms() {
        let x = Ket::from_real(&[1.0, 0.0]).unwrap();
        let jx = to_conjugate(&x).unwrap();
        assert_eq!(jx.space(), Space::Conjugate);
        assert_eq!(jx.coords(), x.coords());
        assert_eq!(jx.norm(), x.norm());
        assert_eq!(from_conjugate(&jx).unwrap(), x);
        assert!(matches!(to_conjugate(&jx), Err(Error::WrongSpaceTag { .. })));
    }

    #[test]
    fn mixing_tags_is_rejected() {
        let x = Ket::from_real(&[1.0, 2.0]).unwrap();
        let jx = to_conjugate(&x).unwrap();
        assert!(matches!(x.inner(&jx), Err(Error::WrongSpaceTag { .. })));
        assert!(matches!(x.add(&jx), Err(Error::WrongSpaceTag { .. })));
    }

    #[test]
    fn conjugate_space_scales_by_conjugate() {
        let x = Ket::from_real(&[1.0, 2.0]).unwrap();
        let jx = to_conjugate(&x).unwrap().scale(c(0.0, 1.0));
        assert_eq!(jx.coords(), &[c(0.0, -1.0), c(0.0, -2.0)]);
    }

    #[test]
    fn star_element_standard_basis_is_entrywise_conjugation() {
        let x = Ket::new(vec![c(1.0, 1.0), c(2.0, 0.0)]).unwrap();
        let id = ComplexMatrix::identity(2).unwrap();
        assert_eq!(star_element(&x, &id).unwrap().coords(), &[c(1.0, -1.0), c(2.0, 0.0)]);
        assert_eq!(semilinear_conjugation(&x, &id).unwrap(), star_element(&x, &id).unwrap());
    }

    #[test]
    fn star_element_fixes_real_coordinate_vectors() {
        let u = unitary(&mut seeded(5), 3);
        let cols = u.columns();
        // x = 2 e_1 − 0.5 e_3 in the basis u
        let coords: Vec<Complex> = (0..3).map(|k| cols[0][k] * 2.0 - cols[2][k] * 0.5).collect();
        let x = Ket::new(coords).unwrap();
        let s = star_element(&x, &u).unwrap();
        assert!(crate::linalg::vec_distance(s.coords(), x.coords()) < 1e-14);
    }

    #[test]
    fn star_element_depends_on_basis() {
        let x = Ket::new(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        // the real 2-point DFT would reproduce entrywise conjugation; rotate it by phases
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = ComplexMatrix::from_rows(&[[c(h, 0.0), c(0.0, h)], [c(0.0, h), c(h, 0.0)]]);
        let got = star_element(&x, &f).unwrap();
        // oracle: explicit Σ_i conj(⟨x, e_i⟩) e_i
        let cols = f.columns();
        let mut oracle = vec![c(0.0, 0.0); 2];
        for e in &cols {
            let coef: Complex = x.coords().iter().zip(e).map(|(a, b)| a * b.conj()).sum();
            for k in 0..2 {
                oracle[k] += coef.conj() * e[k];
            }
        }
        assert!(crate::linalg::vec_distance(got.coords(), &oracle) < 1e-15);
        assert!(crate::linalg::vec_distance(got.coords(), &[c(0.0, 0.0), c(1.0, 0.0)]) < 1e-15);
        let entrywise = [c(0.0, -1.0), c(0.0, 0.0)];
        assert!(crate::linalg::vec_distance(got.coords(), &entrywise) > 0.1);
        assert!((got.norm() - x.norm()).abs() < 1e-14);

        let f3 = fourier(3);
        // F·Fᵀ = F² reverses indices mod 3, so e_2 is sent to e_3
        let z = Ket::new(vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let s3 = star_element(&z, &f3).unwrap();
        assert!(crate::linalg::vec_distance(s3.coords(), &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]) < 1e-14);
    }

    #[test]
    fn re_im_examples() {
        let x = Ket::new(vec![c(1.0, 2.0), c(3.0, 0.0)]).unwrap();
        let (re, im) = re_im_parts(&x, &ComplexMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(re.coords(), &[c(1.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(im.coords(), &[c(2.0, 0.0), c(0.0, 0.0)]);

        let e1 = Ket::basis(3, 0).unwrap();
        let (re, im) = re_im_parts(&e1, &ComplexMatrix::identity(3).unwrap()).unwrap();
        assert_eq!(re, e1);
        assert_eq!(im.norm(), 0.0);
    }

    #[test]
    fn re_im_identities_in_random_bases() {
        let mut rng = seeded(21);
        for n in 1..=8 {
            let b = unitary(&mut rng, n);
            let x = Ket::new(gaussian_vector(&mut rng, n)).unwrap();
            let (re, im) = re_im_parts(&x, &b).unwrap();
            let recombined = re.add(&im.scale(c(0.0, 1.0))).unwrap();
            assert!(crate::linalg::vec_distance(recombined.coords(), x.coords()) < 1e-12);
            // Im_B(x) = −Re_B(ix)
            let (re_ix, _) = re_im_parts(&x.scale(c(0.0, 1.0)), &b).unwrap();
            assert!(crate::linalg::vec_distance(im.coords(), re_ix.scale(c(-1.0, 0.0)).coords()) < 1e-12);
            assert!(re.norm() <= x.norm() + 1e-12 && im.norm() <= x.norm() + 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary_basis() {
        let x = Ket::from_real(&[1.0, 0.0]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(star_element(&x, &b), Err(Error::NotUnitaryBasis { .. })));
        assert!(matches!(re_im_parts(&x, &b), Err(Error::NotUnitaryBasis { .. })));
        let wrong = ComplexMatrix::identity(3).unwrap();
        assert!(matches!(star_element(&x, &wrong), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn riesz_self_pairing_and_inverse() {
        let x = Ket::new(vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let phi = riesz_map(&x).unwrap();
        assert_eq!(phi.apply(&to_conjugate(&x).unwrap()).unwrap(), c(1.0, 0.0));
        assert_eq!(riesz_inverse(&phi).unwrap(), x);
        // the functional only accepts conjugate-space kets
        assert!(matches!(phi.apply(&x), Err(Error::WrongSpaceTag { .. })));
    }

    #[test]
    fn riesz_is_linear_while_dirac_bra_is_not() {
        let mut rng = seeded(8);
        let x = Ket::new(gaussian_vector(&mut rng, 4)).unwrap();
        let y = Ket::new(gaussian_vector(&mut rng, 4)).unwrap();
        let i = c(0.0, 1.0);
        let jy = to_conjugate(&y).unwrap();
        let lhs = riesz_map(&x.scale(i)).unwrap().apply(&jy).unwrap();
        let rhs = i * riesz_map(&x).unwrap().apply(&jy).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);

        let d_lhs = dirac_bra(&x.scale(i)).unwrap().apply(&y).unwrap();
        let d_rhs = i.conj() * dirac_bra(&x).unwrap().apply(&y).unwrap();
        assert!((d_lhs - d_rhs).norm() < 1e-12);
        assert!((d_lhs - i * dirac_bra(&x).unwrap().apply(&y).unwrap()).norm() > 1e-3);
    }

    #[test]
    fn ket_json_carries_space_tag() {
        let x = to_conjugate(&Ket::new(vec![c(1.0, -1.0), c(0.0, 2.0)]).unwrap()).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":1,"data":[[1.0,-1.0],[0.0,2.0]],"space":"conjugate"}"#);
        assert_eq!(serde_json::from_str::<Ket>(&s).unwrap(), x);
        let bad = r#"{"rows":1,"cols":2,"data":[[1.0,0.0],[0.0,0.0]],"space":"plain"}"#;
        assert!(serde_json::from_str::<Ket>(bad).is_err());
    }
}
