//! Seeded random generators for vectors, matrices, unitaries and states.
//!
//! All randomized checks in the crate draw from [`seeded`] so a seed fully
//! determines every sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{inner, norm, Complex, ComplexMatrix};

pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian entry with independent standard normal parts.
pub fn gaussian(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Uniformly distributed point on the unit sphere of `C^n`.
pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex> {
    loop {
        let v = gaussian_vector(rng, n);
        let r = norm(&v);
        if r > 1e-8 {
            return v.into_iter().map(|z| z / r).collect();
        }
    }
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng)).expect("positive shape")
}

/// Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut basis: Vec<Vec<Complex>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut v = gaussian_vector(rng, n);
        // two passes keep the family orthonormal to working precision
        for _ in 0..2 {
            for b in &basis {
                let c = inner(&v, b);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let r = norm(&v);
        if r > 1e-6 {
            basis.push(v.into_iter().map(|z| z / r).collect());
        }
    }
    ComplexMatrix::from_columns(&basis).expect("square basis")
}

pub fn hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Full-rank density matrix `G·G† / tr(G·G†)`.
pub fn density_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let p = &g * &g.adjoint();
    let t = p.trace().expect("square").re;
    p.scale_real(1.0 / t)
}

/// Rank-one orthogonal projection onto the span of `v` (need not be unit).
pub fn rank_one_projection(v: &[Complex]) -> ComplexMatrix {
    let r = norm(v);
    let u: Vec<Complex> = v.iter().map(|z| z / r).collect();
    ComplexMatrix::from_fn(u.len(), u.len(), |i, j| u[i] * u[j].conj()).expect("nonempty vector")
}

/// Orthogonal projection onto a random `rank`-dimensional subspace of `C^n`.
pub fn projection(rng: &mut impl Rng, n: usize, rank: usize) -> ComplexMatrix {
    let u = unitary(rng, n);
    let cols = u.leading_columns(rank.clamp(1, n)).expect("rank within range");
    &cols * &cols.adjoint()
}
