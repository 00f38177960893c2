//! Complex Jacobi rotations shared by the Hermitian eigensolver and the
//! one-sided SVD.
//!
//! Given a 2×2 Hermitian Gram block `[[α, γ], [conj γ, β]]` the rotation
//!
//! ```text
//! J = [[ c,            s·e^{iφ} ],
//!      [ −s·e^{−iφ},   c        ]],   φ = arg γ
//! ```
//!
//! zeroes the off-diagonal entry of `J† G J`. Columns are updated as
//! `[x_p, x_q] ← [x_p, x_q]·J`.

use super::matrix::Complex;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rotation {
    pub c: f64,
    /// `s·e^{iφ}`
    pub s_phase: Complex,
}

impl Rotation {
    /// Rotation annihilating `γ` for diagonal entries `α`, `β`. Caller
    /// guarantees `γ ≠ 0`.
    pub fn annihilating(alpha: f64, beta: f64, gamma: Complex) -> Self {
        let g = gamma.norm();
        let phase = gamma / g;
        let zeta = (beta - alpha) / (2.0 * g);
        let t = if zeta.abs() > 1e150 {
            0.5 / zeta
        } else {
            let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
            sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        Rotation { c, s_phase: phase * (t * c) }
    }

    /// `(x_p, x_q) ← (c·x_p − conj(sφ)·x_q, sφ·x_p + c·x_q)` elementwise.
    #[inline]
    pub fn apply_columns(&self, xp: &mut [Complex], xq: &mut [Complex]) {
        let sc = self.s_phase.conj();
        for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
            let (u, v) = (*a, *b);
            *a = u * self.c - sc * v;
            *b = self.s_phase * u + v * self.c;
        }
    }
}
