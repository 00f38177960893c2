//! Deterministic self-check suite covering every identity the library
//! realizes, reported as JSON.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::conjspace::{re_im_parts, riesz_map, semilinear_conjugation, Ket};
use crate::error::Result;
use crate::linalg::{inner, norm, vec_distance, Complex, ComplexMatrix};
use crate::norms::{composition_nuclear_bound, hs_norm, nuclear_norm, operator_norm, trace_duality_max};
use crate::psum::{pi1_lower_bound, pi2_certify};
use crate::sampling::{
    density_matrix, gaussian, gaussian_matrix, gaussian_vector, projection, seeded, unit_vector, unitary, SampleRng,
};
use crate::states::{gleason_reconstruct_with_holdout, is_entangled, schmidt};
use crate::teleport::{bell_phi_plus, factorization_residual, teleport_matrix, teleport_with};
use crate::tensor::{commutation_matrix, dyad, kron, kron_ket, to_kron_vector, unvec, TensorElement};

/// Default search budget for the `π₁` entries.
pub const DEFAULT_PI1_BUDGET: usize = 200;

/// Residual reported when a case errors out instead of producing a number.
const ERROR_RESIDUAL: f64 = f64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Multiplies every tolerance.
    pub tol_factor: f64,
    pub pi1_budget: usize,
    /// Flip the sign of one nonzero entry of `T` before running the teleport cases.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, tol_factor: 1.0, pi1_budget: DEFAULT_PI1_BUDGET, inject_fault: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Vec<CaseResult>,
    pub summary: Summary,
    pub version: String,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.suite.iter().find(|c| c.id == id)
    }
}

/// JSON schema the serialized report conforms to.
pub const REPORT_SCHEMA: &str = include_str!("../schema/verify-report.schema.json");

struct Ctx {
    t: ComplexMatrix,
    pi1_budget: usize,
}

type Case = fn(&Ctx, &mut SampleRng) -> Result<f64>;

/// `(id, base tolerance, check)` in report order.
const CASES: &[(&str, f64, Case)] = &[
    ("teleport.unitarity", 1e-14, teleport_unitarity),
    ("teleport.factorization", 0.0, teleport_factorization),
    ("teleport.equation", 1e-12, teleport_equation),
    ("teleport.correction", 1e-10, teleport_correction),
    ("teleport.branch-probability", 1e-12, teleport_probability),
    ("teleport.bell-entangled", 1e-12, bell_entangled),
    ("norms.projection-nuclear", 1e-12, projection_nuclear),
    ("norms.projection-hs", 1e-12, projection_hs),
    ("schmidt.bell", 1e-12, schmidt_bell),
    ("schmidt.reconstruction", 1e-9, schmidt_reconstruction),
    ("schmidt.weight-sum", 1e-9, schmidt_weight_sum),
    ("psum.pi2-equals-hs", 1e-10, pi2_equals_hs),
    ("psum.pi1-operator-floor", 1e-9, pi1_floor),
    ("psum.pi1-identity-bracket", 1e-6, pi1_identity_bracket),
    ("duality.value", 1e-12, duality_value),
    ("duality.dominates", 1e-12, duality_dominates),
    ("composition.nuclear-bound", 1e-10, composition_bound),
    ("gleason.reconstruction", 1e-9, gleason_recovery),
    ("gleason.holdout", 1e-8, gleason_holdout),
    ("cloning.gap-formula", 1e-10, cloning_formula),
    ("cloning.gap-positive", 0.0, cloning_positive),
    ("cloning.controls", 1e-12, cloning_controls),
    ("kron.basis-vectors", 0.0, kron_basis),
    ("kron.commutation-swap", 0.0, commutation_swap),
    ("kron.commutation-unitary", 0.0, commutation_unitary),
    ("kron.vec-dyad", 1e-12, vec_dyad),
    ("conjspace.norm-identity", 1e-10, conj_norm_identity),
    ("conjspace.involution", 1e-10, conj_involution),
    ("conjspace.riesz-linearity", 1e-10, riesz_linearity),
    ("conjspace.riesz-isometry", 1e-10, riesz_isometry),
];

/// Case identifiers in report order.
pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.0).collect()
}

/// Runs every case with its own seed `seed + index`; the report depends only
/// on the options.
pub fn verify_suite(options: &VerifyOptions) -> VerifyReport {
    let mut t = teleport_matrix().matrix;
    if options.inject_fault {
        let v = t.get(1, 7);
        t = t.with_entry(1, 7, -v).expect("entry in range");
    }
    let ctx = Ctx { t, pi1_budget: options.pi1_budget.max(1) };
    let suite: Vec<CaseResult> = CASES
        .iter()
        .enumerate()
        .map(|(k, &(id, tol, case))| {
            let seed = options.seed.wrapping_add(k as u64);
            let mut rng = seeded(seed);
            let residual = match case(&ctx, &mut rng) {
                Ok(r) if r.is_finite() => r,
                _ => ERROR_RESIDUAL,
            };
            let tolerance = tol * options.tol_factor;
            CaseResult { id: id.to_string(), passed: residual <= tolerance, residual, tolerance, seed }
        })
        .collect();
    let passed = suite.iter().filter(|c| c.passed).count();
    VerifyReport {
        summary: Summary { total: suite.len(), passed, failed: suite.len() - passed },
        suite,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0, |acc, r| Ok(f64::max(acc, r?)))
}

fn random_qubit(rng: &mut SampleRng) -> Result<Ket> {
    Ket::new(unit_vector(rng, 2))
}

fn teleport_unitarity(ctx: &Ctx, _: &mut SampleRng) -> Result<f64> {
    Ok(ctx.t.unitarity_residual())
}

fn teleport_factorization(ctx: &Ctx, _: &mut SampleRng) -> Result<f64> {
    Ok(factorization_residual(&ctx.t))
}

const TELEPORT_SAMPLES: usize = 1000;

fn teleport_equation(ctx: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..TELEPORT_SAMPLES).map(|_| {
        let xi = random_qubit(rng)?;
        teleport_with(&ctx.t, &xi)?.equation_residual(&xi)
    }))
}

fn teleport_correction(ctx: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..TELEPORT_SAMPLES).map(|_| {
        let xi = random_qubit(rng)?;
        Ok(teleport_with(&ctx.t, &xi)?.correction_residual(&xi))
    }))
}

fn teleport_probability(ctx: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..TELEPORT_SAMPLES).map(|_| {
        let xi = random_qubit(rng)?;
        let r = teleport_with(&ctx.t, &xi)?;
        let total: f64 = r.branches.iter().map(|b| b.probability).sum();
        let each = r.branches.iter().map(|b| (b.probability - 0.25).abs()).fold(0.0, f64::max);
        Ok(each.max((total - 1.0).abs()))
    }))
}

fn bell_entangled(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    let phi = TensorElement::from_matrix(&unvec(&bell_phi_plus(), 2, 2)?);
    if !is_entangled(&phi, 1e-12)? {
        return Ok(1.0);
    }
    Ok((schmidt(&phi)?.coeffs[1] - FRAC_1_SQRT_2).abs())
}

/// `P = Σ_{i≤2} e_i ⊗ e_i` in dimensions 2 through 8.
fn rank_two_projections() -> Result<Vec<ComplexMatrix>> {
    (2..=8)
        .map(|n| {
            let e = |i| Ket::basis(n, i);
            let p = dyad(&e(0)?, &e(0)?).add(&dyad(&e(1)?, &e(1)?))?;
            Ok(p.matrix_rep().clone())
        })
        .collect()
}

fn projection_nuclear(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    max_over(rank_two_projections()?.iter().map(|p| Ok((nuclear_norm(p)? - 2.0).abs())))
}

fn projection_hs(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    max_over(rank_two_projections()?.iter().map(|p| {
        let pp = &p.adjoint() * p;
        Ok((hs_norm(p) - SQRT_2).abs().max((hs_norm(&pp) - SQRT_2).abs()))
    }))
}

fn schmidt_bell(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    let phi = TensorElement::from_matrix(&unvec(&bell_phi_plus(), 2, 2)?);
    let s = schmidt(&phi)?;
    if s.coeffs.len() != 2 {
        return Ok(1.0);
    }
    let coeff = s.coeffs.iter().map(|c| (c - FRAC_1_SQRT_2).abs()).fold(0.0, f64::max);
    Ok(coeff.max((s.weights().iter().sum::<f64>() - 1.0).abs()))
}

fn random_bipartite(rng: &mut SampleRng) -> TensorElement {
    let (n, m) = (rng.random_range(1..=8), rng.random_range(1..=8));
    TensorElement::from_matrix(&gaussian_matrix(rng, m, n))
}

const SCHMIDT_SAMPLES: usize = 200;

fn schmidt_reconstruction(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..SCHMIDT_SAMPLES).map(|_| {
        let z = random_bipartite(rng);
        let back = schmidt(&z)?.reconstruct();
        Ok(z.matrix_rep().distance(back.matrix_rep()))
    }))
}

fn schmidt_weight_sum(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..SCHMIDT_SAMPLES).map(|_| {
        let z = random_bipartite(rng);
        let total: f64 = schmidt(&z)?.weights().iter().sum();
        Ok((total - z.norm().powi(2)).abs())
    }))
}

fn random_shape(rng: &mut SampleRng, max_rows: usize, max_cols: usize) -> (usize, usize) {
    (rng.random_range(1..=max_rows), rng.random_range(1..=max_cols))
}

fn pi2_equals_hs(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..100).map(|_| {
        let (m, n) = random_shape(rng, 8, 8);
        let t = gaussian_matrix(rng, m, n);
        Ok((pi2_certify(&t)?.lower_bound - hs_norm(&t)).abs())
    }))
}

fn pi1_floor(ctx: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    let t = gaussian_matrix(rng, 3, 3);
    let seed = rng.random();
    let e = pi1_lower_bound(&t, ctx.pi1_budget, seed)?;
    Ok((operator_norm(&t)? - e.lower_bound).max(0.0))
}

/// `π₁(Id_{C²}) = 3/2`; any certified lower bound lies in `[1, 3/2]`.
fn pi1_identity_bracket(ctx: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    let seed = rng.random();
    let v = pi1_lower_bound(&ComplexMatrix::identity(2)?, ctx.pi1_budget, seed)?.lower_bound;
    Ok((1.0 - v).max(v - 1.5).max(0.0))
}

fn duality_value(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..100).map(|_| {
        let (m, n) = random_shape(rng, 8, 6);
        let a = gaussian_matrix(rng, m, n);
        let d = trace_duality_max(&a)?;
        let attained = crate::norms::pairing(&a, &d.maximizer).norm();
        Ok((d.value - a.frobenius_norm()).abs().max((attained - d.value).abs()))
    }))
}

fn duality_dominates(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..100).map(|_| {
        let (m, n) = random_shape(rng, 8, 6);
        let a = gaussian_matrix(rng, m, n);
        let d = trace_duality_max(&a)?;
        Ok((d.best_competitor(&a, rng.random(), 100) - d.value).max(0.0))
    }))
}

fn composition_bound(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..1000).map(|_| {
        let (m, k) = random_shape(rng, 8, 8);
        let n = rng.random_range(1..=8);
        let s = gaussian_matrix(rng, m, k);
        let t = gaussian_matrix(rng, k, n);
        let (nuc, bound) = composition_nuclear_bound(&s, &t)?;
        Ok((nuc - bound).max(0.0))
    }))
}

const GLEASON_STATES: usize = 20;
const GLEASON_HOLDOUT: usize = 50;

/// Runs the reconstruction for every dimension and state and returns the
/// worst `(‖D̂ − D‖_F, holdout residual)`.
fn gleason_runs(rng: &mut SampleRng) -> Result<(f64, f64)> {
    let (mut recovery, mut holdout) = (0.0f64, 0.0f64);
    for dim in 3..=6 {
        for _ in 0..GLEASON_STATES {
            let d = density_matrix(rng, dim);
            let held: Vec<ComplexMatrix> = (0..GLEASON_HOLDOUT)
                .map(|_| {
                    let rank = rng.random_range(1..dim);
                    projection(rng, dim, rank)
                })
                .collect();
            let measure = |p: &ComplexMatrix| crate::norms::pairing(p, &d).re;
            let r = gleason_reconstruct_with_holdout(&measure, dim, &held)?;
            recovery = recovery.max(r.density.matrix.distance(&d));
            holdout = holdout.max(r.holdout_residual);
        }
    }
    Ok((recovery, holdout))
}

fn gleason_recovery(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    Ok(gleason_runs(rng)?.0)
}

fn gleason_holdout(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    Ok(gleason_runs(rng)?.1)
}

/// Unit pair with `0 < |⟨x, y⟩| < 1` plus an ancilla.
fn cloning_triple(rng: &mut SampleRng) -> Result<(Ket, Ket, Ket)> {
    let n = rng.random_range(2..=4);
    loop {
        let x = unit_vector(rng, n);
        let y = unit_vector(rng, n);
        let c = inner(&x, &y).norm();
        if c > 1e-3 && c < 1.0 - 1e-3 {
            return Ok((Ket::new(x)?, Ket::new(y)?, Ket::new(unit_vector(rng, n))?));
        }
    }
}

const CLONING_SAMPLES: usize = 100;

fn cloning_formula(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CLONING_SAMPLES).map(|_| {
        let (x, y, e) = cloning_triple(rng)?;
        let c = inner(x.coords(), y.coords());
        let expected = SQRT_2 * (c - c * c).norm();
        Ok((crate::teleport::no_cloning_certificate(&x, &y, &e)?.gap - expected).abs())
    }))
}

fn cloning_positive(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    let mut smallest = f64::INFINITY;
    for _ in 0..CLONING_SAMPLES {
        let (x, y, e) = cloning_triple(rng)?;
        smallest = smallest.min(crate::teleport::no_cloning_certificate(&x, &y, &e)?.gap);
    }
    Ok((1e-12 - smallest).max(0.0))
}

fn cloning_controls(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CLONING_SAMPLES).map(|_| {
        let n = rng.random_range(2..=4);
        let u = unitary(rng, n);
        let x = Ket::new(u.column(0))?;
        let y = Ket::new(u.column(1))?;
        let e = Ket::new(unit_vector(rng, n))?;
        let orth = crate::teleport::no_cloning_certificate(&x, &y, &e)?.gap;
        let par = crate::teleport::no_cloning_certificate(&x, &x, &e)?.gap;
        Ok(orth.max(par))
    }))
}

fn kron_basis(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=6 {
        for m in 1..=6 {
            for j in 0..n {
                for i in 0..m {
                    let k = kron_ket(&Ket::basis(n, j)?, &Ket::basis(m, i)?);
                    worst = worst.max(vec_distance(k.coords(), Ket::basis(n * m, j * m + i)?.coords()));
                }
            }
        }
    }
    Ok(worst)
}

fn commutation_swap(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 1..=5 {
        for n in 1..=5 {
            let k = commutation_matrix(m, n)?;
            let x = gaussian_vector(rng, n);
            let y = gaussian_vector(rng, m);
            let yx = kron(&ComplexMatrix::column_vector(&y)?, &ComplexMatrix::column_vector(&x)?);
            let xy = kron(&ComplexMatrix::column_vector(&x)?, &ComplexMatrix::column_vector(&y)?);
            worst = worst.max(k.matrix.matmul(&yx)?.distance(&xy));
            let a = gaussian_matrix(rng, 2, 3);
            let b = gaussian_matrix(rng, m, n);
            // K_{2,m}(A ⊗ B)K_{n,3} = B ⊗ A
            let lhs =
                commutation_matrix(2, m)?.matrix.matmul(&kron(&a, &b))?.matmul(&commutation_matrix(n, 3)?.matrix)?;
            worst = worst.max(lhs.distance(&kron(&b, &a)));
        }
    }
    Ok(worst)
}

fn commutation_unitary(_: &Ctx, _: &mut SampleRng) -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 1..=5 {
        for n in 1..=5 {
            let k = commutation_matrix(m, n)?.matrix;
            let id = ComplexMatrix::identity(m * n)?;
            worst = worst.max((&k.adjoint() * &k).distance(&id));
            worst = worst.max(k.adjoint().distance(&commutation_matrix(n, m)?.matrix));
        }
    }
    Ok(worst)
}

fn vec_dyad(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..200).map(|_| {
        let (n, m) = random_shape(rng, 6, 6);
        let x = Ket::new(gaussian_vector(rng, n))?;
        let z = Ket::new(gaussian_vector(rng, m))?;
        let lhs = to_kron_vector(&dyad(&x, &z));
        Ok(vec_distance(lhs.coords(), kron_ket(&x, &z).coords()))
    }))
}

fn random_vector_and_basis(rng: &mut SampleRng) -> Result<(Ket, ComplexMatrix)> {
    let n = rng.random_range(1..=16);
    Ok((Ket::new(gaussian_vector(rng, n))?, unitary(rng, n)))
}

const CONJ_SAMPLES: usize = 100;

fn conj_norm_identity(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CONJ_SAMPLES).map(|_| {
        let (x, b) = random_vector_and_basis(rng)?;
        let (re, im) = re_im_parts(&x, &b)?;
        Ok((x.norm().powi(2) - re.norm().powi(2) - im.norm().powi(2)).abs())
    }))
}

fn conj_involution(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CONJ_SAMPLES).map(|_| {
        let (x, b) = random_vector_and_basis(rng)?;
        let twice = semilinear_conjugation(&semilinear_conjugation(&x, &b)?, &b)?;
        Ok(vec_distance(twice.coords(), x.coords()))
    }))
}

fn riesz_linearity(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CONJ_SAMPLES).map(|_| {
        let n = rng.random_range(1..=16);
        let x = Ket::new(gaussian_vector(rng, n))?;
        let y = Ket::new(gaussian_vector(rng, n))?;
        let (a, b): (Complex, Complex) = (gaussian(rng), gaussian(rng));
        let combo = riesz_map(&x.scale(a).add(&y.scale(b))?)?;
        let (fx, fy) = (riesz_map(&x)?, riesz_map(&y)?);
        let expected: Vec<Complex> = fx.coeffs().iter().zip(fy.coeffs()).map(|(p, q)| a * p + b * q).collect();
        Ok(vec_distance(combo.coeffs(), &expected))
    }))
}

fn riesz_isometry(_: &Ctx, rng: &mut SampleRng) -> Result<f64> {
    max_over((0..CONJ_SAMPLES).map(|_| {
        let n = rng.random_range(1..=16);
        let x = Ket::new(gaussian_vector(rng, n))?;
        Ok((riesz_map(&x)?.norm() - norm(x.coords())).abs())
    }))
}
