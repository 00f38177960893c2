//! Three-qubit teleportation: the gates, the unitary `T ∈ U(8)`, the branch
//! corrections and a Gram-matrix certificate against cloning.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{inner, norm, vec_distance, Complex, ComplexMatrix};
use crate::norms::UNIT_TOL;
use crate::tensor::{kron, kron_ket};

/// Unitarity tolerance for gates.
pub const GATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Gate {
    pub name: String,
    pub matrix: ComplexMatrix,
    /// Number of qubits acted on.
    pub arity: usize,
}

impl Gate {
    fn new(name: &str, matrix: ComplexMatrix) -> Gate {
        let arity = matrix.rows().trailing_zeros() as usize;
        debug_assert_eq!(1 << arity, matrix.rows());
        debug_assert!(matrix.unitarity_residual() <= GATE_TOL, "{name} is not unitary");
        Gate { name: name.to_string(), matrix, arity }
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.matrix.unitarity_residual()
    }
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]])
}

pub fn sigma_y() -> ComplexMatrix {
    let i = Complex::new(0.0, 1.0);
    let o = Complex::new(0.0, 0.0);
    ComplexMatrix::from_rows(&[[o, -i], [i, o]])
}

pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

/// `I₂ ⊕ σ_x`, control on the first qubit.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::identity(2).expect("2x2").direct_sum(&sigma_x())
}

/// The four branch corrections `T₁ = I, T₂ = σ_x, T₃ = σ_z, T₄ = σ_xσ_z`.
pub fn pauli_corrections() -> [ComplexMatrix; 4] {
    [ComplexMatrix::identity(2).expect("2x2"), sigma_x(), sigma_z(), &sigma_x() * &sigma_z()]
}

/// Keys `T1`..`T4`, `H1`, `NOT`, `CNOT`.
pub fn standard_gates() -> BTreeMap<String, Gate> {
    let [t1, t2, t3, t4] = pauli_corrections();
    [("T1", t1), ("T2", t2), ("T3", t3), ("T4", t4), ("H1", hadamard()), ("NOT", sigma_x()), ("CNOT", cnot())]
        .into_iter()
        .map(|(k, m)| (k.to_string(), Gate::new(k, m)))
        .collect()
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> Ket {
    Ket::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).expect("length 4")
}

const T_PATTERN: [[f64; 8]; 8] = [
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0],
];

/// The explicit teleportation unitary, entries `0, ±1/√2`.
pub fn teleport_matrix() -> Gate {
    let rows = T_PATTERN.map(|r| r.map(|v| v * FRAC_1_SQRT_2));
    Gate::new("T", ComplexMatrix::from_real_rows(&rows))
}

/// `(H₁ ⊗ I₄)(CNOT ⊗ I₂)`.
pub fn teleport_factorization() -> ComplexMatrix {
    let id4 = ComplexMatrix::identity(4).expect("4x4");
    let id2 = ComplexMatrix::identity(2).expect("2x2");
    &kron(&hadamard(), &id4) * &kron(&cnot(), &id2)
}

/// Largest entrywise difference between `t` and the factorization.
pub fn factorization_residual(t: &ComplexMatrix) -> f64 {
    t.try_sub(&teleport_factorization()).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TeleportOutcome {
    /// 1-based branch index, the two classical bits.
    pub branch: usize,
    pub post_state: Ket,
    pub corrected: Ket,
    pub probability: f64,
}

/// Full pipeline output for one input state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Teleportation {
    pub w: Ket,
    pub branches: Vec<TeleportOutcome>,
}

impl Teleportation {
    /// Largest `‖corrected_i − ξ‖`.
    pub fn correction_residual(&self, xi: &Ket) -> f64 {
        self.branches.iter().map(|b| vec_distance(b.corrected.coords(), xi.coords())).fold(0.0, f64::max)
    }

    /// `‖w − ½ Σ e_i ⊗ T_i ξ‖`.
    pub fn equation_residual(&self, xi: &Ket) -> Result<f64> {
        let rhs = teleportation_rhs(xi)?;
        Ok(vec_distance(self.w.coords(), &rhs))
    }
}

fn require_qubit(xi: &Ket) -> Result<()> {
    if xi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("qubit state must lie in C^2, got C^{}", xi.dim())));
    }
    let r = xi.norm();
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm: r });
    }
    Ok(())
}

/// `½ Σ_i e_i^(4) ⊗ T_i ξ`.
pub fn teleportation_rhs(xi: &Ket) -> Result<Vec<Complex>> {
    require_qubit(xi)?;
    let mut out = Vec::with_capacity(8);
    for t in pauli_corrections() {
        out.extend(t.apply(xi.coords())?.into_iter().map(|z| z * 0.5));
    }
    Ok(out)
}

/// Runs `w = T(ξ ⊗ φ⁺)` and undoes each branch with `T_i⁻¹`.
pub fn teleport(xi: &Ket) -> Result<Teleportation> {
    teleport_with(&teleport_matrix().matrix, xi)
}

/// [`teleport`] with a caller-supplied `8×8` unitary in place of `T`.
pub fn teleport_with(t: &ComplexMatrix, xi: &Ket) -> Result<Teleportation> {
    require_qubit(xi)?;
    if t.shape() != (8, 8) {
        return Err(Error::DimensionMismatch(format!(
            "teleportation unitary must be 8x8, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let input = kron_ket(xi, &bell_phi_plus());
    let w = t.apply(input.coords())?;
    let corrections = pauli_corrections();
    let mut branches = Vec::with_capacity(4);
    for (i, ti) in corrections.iter().enumerate() {
        let block = &w[2 * i..2 * i + 2];
        let probability = block.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let post: Vec<Complex> = block.iter().map(|z| z * 2.0).collect();
        // every T_i is real orthogonal, so its inverse is its transpose
        let corrected = ti.transpose().apply(&post)?;
        branches.push(TeleportOutcome {
            branch: i + 1,
            post_state: Ket::new(post)?,
            corrected: Ket::new(corrected)?,
            probability,
        });
    }
    Ok(Teleportation { w: Ket::new(w)?, branches })
}

/// `1 − |⟨a, b⟩|` for unit vectors; zero iff they agree up to a phase.
pub fn phase_insensitive_distance(a: &Ket, b: &Ket) -> f64 {
    (1.0 - inner(a.coords(), b.coords()).norm()).max(0.0)
}

/// Gram matrices before and after a would-be cloner.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CloningCertificate {
    /// Gram of `{x⊗e, y⊗e}`.
    pub gram_in: ComplexMatrix,
    /// Gram of `{x⊗x, y⊗y}`.
    pub gram_out: ComplexMatrix,
    /// `‖gram_in − gram_out‖_F`.
    pub gap: f64,
}

fn gram(a: &Ket, b: &Ket) -> ComplexMatrix {
    let v = [a.coords(), b.coords()];
    ComplexMatrix::from_fn(2, 2, |i, j| inner(v[i], v[j])).expect("2x2")
}

/// A positive gap rules out any unitary `U` with `U(x⊗e) = x⊗x` and
/// `U(y⊗e) = y⊗y`, since unitaries preserve Gram matrices.
pub fn no_cloning_certificate(x: &Ket, y: &Ket, e: &Ket) -> Result<CloningCertificate> {
    for k in [x, y, e] {
        let r = norm(k.coords());
        if (r - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm: r });
        }
    }
    if x.dim() != y.dim() || x.dim() != e.dim() {
        return Err(Error::DimensionMismatch("x, y and e must share a dimension".into()));
    }
    let gram_in = gram(&kron_ket(x, e), &kron_ket(y, e));
    let gram_out = gram(&kron_ket(x, x), &kron_ket(y, y));
    let gap = gram_in.distance(&gram_out);
    Ok(CloningCertificate { gram_in, gram_out, gap })
}
