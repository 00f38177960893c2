//! Estimates of absolutely `p`-summing norms for `p ∈ {1, 2}`.
//!
//! For a family `x_1, …, x_k` the ratio
//!
//! ```text
//! (Σ ‖T x_i‖^p)^{1/p} / sup_{‖a‖=1} (Σ |⟨x_i, a⟩|^p)^{1/p}
//! ```
//!
//! never exceeds `π_p(T)`, so every family yields a lower bound. For `p = 2`
//! the standard basis attains `σ₂(T) = π₂(T)`. For `p = 1` the denominator
//! is a nonconvex maximization over the unit sphere and is estimated by
//! multi-start ascent.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{inner, norm, svd, Complex, ComplexMatrix};
use crate::sampling::{gaussian_vector, seeded, unit_vector, SampleRng};

/// Number of ascent starts for the `p = 1` denominator.
pub const ASCENT_STARTS: usize = 32;
/// Gradient steps per start.
pub const ASCENT_STEPS: usize = 200;
/// Initial step length on the sphere; halved after every rejected step.
pub const ASCENT_STEP: f64 = 0.1;
/// Internal seed for the random ascent starts, so that re-evaluating a
/// family always gives the same number.
const DENOMINATOR_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummingEstimate {
    pub p: f64,
    pub lower_bound: f64,
    pub witness_family: Vec<Ket>,
    pub iterations: usize,
    /// True when the lower bound is known to equal `π_p` (the `p = 2` case).
    pub exact: bool,
}

impl SummingEstimate {
    /// `1/lower_bound`, an upper bound for any quantity bounded below by
    /// `1/π_p`; `None` for a zero estimate.
    pub fn reciprocal_bound(&self) -> Option<f64> {
        (self.lower_bound > 0.0).then(|| 1.0 / self.lower_bound)
    }
}

fn check_family(t: &ComplexMatrix, family: &[Ket], p: f64) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if p != 1.0 && p != 2.0 {
        return Err(Error::UnsupportedP(p));
    }
    if let Some(x) = family.iter().find(|x| x.dim() != t.cols()) {
        return Err(Error::DimensionMismatch(format!("family vector in C^{} for a map on C^{}", x.dim(), t.cols())));
    }
    Ok(())
}

/// The family ratio for `p ∈ {1, 2}`. A family of zero vectors has ratio 0.
pub fn family_ratio(t: &ComplexMatrix, family: &[Ket], p: f64) -> Result<f64> {
    check_family(t, family, p)?;
    let images: Vec<f64> = family.iter().map(|x| t.apply(x.coords()).map(|y| norm(&y))).collect::<Result<_>>()?;
    let vectors: Vec<&[Complex]> = family.iter().map(|x| x.coords()).collect();
    let (numerator, denominator) = if p == 2.0 {
        (images.iter().map(|s| s * s).sum::<f64>().sqrt(), weak_l2(&vectors)?)
    } else {
        (images.iter().sum::<f64>(), weak_l1(&vectors)?.value)
    };
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok(numerator / denominator)
}

/// `sup_a (Σ|⟨x_i, a⟩|²)^{1/2}`, the operator norm of the matrix with rows
/// `conj(x_i)ᵀ`.
fn weak_l2(family: &[&[Complex]]) -> Result<f64> {
    let rows = conj_rows(family)?;
    Ok(svd(&rows)?.largest())
}

fn conj_rows(family: &[&[Complex]]) -> Result<ComplexMatrix> {
    let n = family[0].len();
    ComplexMatrix::from_fn(family.len(), n, |i, k| family[i][k].conj())
}

/// Estimate of `sup_a Σ|⟨x_i, a⟩|` with the certified bracket it was
/// clamped to.
#[derive(Debug, Clone, Copy)]
pub struct WeakL1 {
    pub value: f64,
    /// `max(max_i ‖x_i‖, ‖X‖_op)`; every unit `a` attaining these is feasible.
    pub certified_lower: f64,
    /// `min(Σ ‖x_i‖, √k·‖X‖_op)` by Cauchy-Schwarz.
    pub certified_upper: f64,
}

fn l1_objective(family: &[&[Complex]], a: &[Complex]) -> f64 {
    family.iter().map(|x| inner(x, a).norm()).sum()
}

/// Ascent direction `Σ conj(phase(⟨x_i, a⟩))·x_i`.
fn l1_gradient(family: &[&[Complex]], a: &[Complex]) -> Vec<Complex> {
    let mut g = vec![Complex::new(0.0, 0.0); a.len()];
    for x in family {
        let c = inner(x, a);
        let r = c.norm();
        if r == 0.0 {
            continue;
        }
        let w = c.conj() / r;
        for (gi, xi) in g.iter_mut().zip(x.iter()) {
            *gi += w * xi;
        }
    }
    g
}

fn normalized(v: Vec<Complex>) -> Option<Vec<Complex>> {
    let r = norm(&v);
    (r > 0.0 && r.is_finite()).then(|| v.into_iter().map(|z| z / r).collect())
}

/// Projected gradient ascent on the unit sphere from `a`, then fixed-point
/// polishing `a ← g(a)/‖g(a)‖`, which never decreases the objective.
fn ascend(family: &[&[Complex]], mut a: Vec<Complex>) -> f64 {
    let mut f = l1_objective(family, &a);
    let mut step = ASCENT_STEP;
    for _ in 0..ASCENT_STEPS {
        if step < 1e-14 {
            break;
        }
        let g = l1_gradient(family, &a);
        let radial = inner(&g, &a).re;
        let tangent: Vec<Complex> = g.iter().zip(&a).map(|(gi, ai)| gi - ai * radial).collect();
        let tnorm = norm(&tangent);
        if tnorm <= 1e-15 * (1.0 + norm(&g)) {
            break;
        }
        let trial: Vec<Complex> = a.iter().zip(&tangent).map(|(ai, ti)| ai + ti * (step / tnorm)).collect();
        let Some(trial) = normalized(trial) else { break };
        let ft = l1_objective(family, &trial);
        if ft > f {
            a = trial;
            f = ft;
        } else {
            step *= 0.5;
        }
    }
    for _ in 0..100 {
        let Some(next) = normalized(l1_gradient(family, &a)) else { break };
        let fnext = l1_objective(family, &next);
        if fnext <= f * (1.0 + 1e-15) {
            f = f.max(fnext);
            break;
        }
        a = next;
        f = fnext;
    }
    f
}

/// `sup_{‖a‖=1} Σ_i |⟨x_i, a⟩|`. Exact for one vector or one dimension;
/// otherwise the best of [`ASCENT_STARTS`] deterministic ascents.
pub fn weak_l1(family: &[&[Complex]]) -> Result<WeakL1> {
    let n = family[0].len();
    let norms: Vec<f64> = family.iter().map(|x| norm(x)).collect();
    let sum_norms: f64 = norms.iter().sum();
    let max_norm = norms.iter().copied().fold(0.0, f64::max);
    if n == 1 || family.len() == 1 || sum_norms == 0.0 {
        // |⟨x_i, a⟩| = ‖x_i‖·|a| for scalars, and a single term is maximized at x/‖x‖
        return Ok(WeakL1 { value: sum_norms, certified_lower: sum_norms, certified_upper: sum_norms });
    }
    let rows = conj_rows(family)?;
    let f = svd(&rows)?;
    let op = f.largest();
    let certified_lower = max_norm.max(op);
    let certified_upper = sum_norms.min((family.len() as f64).sqrt() * op);

    let mut starts: Vec<Vec<Complex>> = Vec::with_capacity(ASCENT_STARTS);
    if f.rank > 0 {
        starts.push(f.right_vector(0));
    }
    for x in family {
        if starts.len() >= ASCENT_STARTS {
            break;
        }
        if let Some(u) = normalized(x.to_vec()) {
            starts.push(u);
        }
    }
    let mut rng: SampleRng = seeded(DENOMINATOR_SEED);
    while starts.len() < ASCENT_STARTS {
        starts.push(unit_vector(&mut rng, n));
    }
    let best = starts.into_iter().map(|a| ascend(family, a)).fold(0.0, f64::max);
    Ok(WeakL1 { value: best.clamp(certified_lower, certified_upper), certified_lower, certified_upper })
}

/// `π₂(T) = σ₂(T)`, attained by the standard basis.
pub fn pi2_certify(t: &ComplexMatrix) -> Result<SummingEstimate> {
    let n = t.cols();
    let family = (0..n).map(|i| Ket::basis(n, i)).collect::<Result<Vec<_>>>()?;
    let lower_bound = family_ratio(t, &family, 2.0)?;
    Ok(SummingEstimate { p: 2.0, lower_bound, witness_family: family, iterations: 1, exact: true })
}

/// Best `p = 1` family ratio found by random search with local moves.
///
/// Starts from the single top right singular vector (ratio `‖T‖`), then for
/// each of `budget` iterations evaluates either a fresh random family of
/// size `1..=2n` or a perturbation of the current best. The random stream
/// consumed by iteration `k` depends only on the seed and earlier
/// iterations, so the result is nondecreasing in `budget`.
pub fn pi1_lower_bound(t: &ComplexMatrix, budget: usize, seed: u64) -> Result<SummingEstimate> {
    let n = t.cols();
    let f = svd(t)?;
    let start = if f.rank > 0 { Ket::new(f.right_vector(0))? } else { Ket::basis(n, 0)? };
    let mut best_family = vec![start];
    let mut best = family_ratio(t, &best_family, 1.0)?;

    let mut rng = seeded(seed);
    let max_size = 2 * n;
    for _ in 0..budget {
        let candidate = if rng.random_bool(0.5) {
            let size = rng.random_range(1..=max_size);
            random_family(&mut rng, n, size)?
        } else {
            let sigma = [0.3, 0.1, 0.03, 0.01][rng.random_range(0..4)];
            perturb(&mut rng, &best_family, sigma)?
        };
        let r = family_ratio(t, &candidate, 1.0)?;
        if r > best {
            best = r;
            best_family = candidate;
        }
    }
    Ok(SummingEstimate { p: 1.0, lower_bound: best, witness_family: best_family, iterations: budget, exact: false })
}

fn random_family(rng: &mut SampleRng, n: usize, size: usize) -> Result<Vec<Ket>> {
    (0..size).map(|_| Ket::new(unit_vector(rng, n))).collect()
}

fn perturb(rng: &mut SampleRng, family: &[Ket], sigma: f64) -> Result<Vec<Ket>> {
    family
        .iter()
        .map(|x| {
            let noise = gaussian_vector(rng, x.dim());
            let moved: Vec<Complex> = x.coords().iter().zip(noise).map(|(a, e)| a + e * sigma).collect();
            let r = norm(&moved);
            Ket::new(moved.into_iter().map(|z| z / r).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{hs_norm, operator_norm};
    use crate::sampling::gaussian_matrix;

    fn basis(n: usize) -> Vec<Ket> {
        (0..n).map(|i| Ket::basis(n, i).unwrap()).collect()
    }

    #[test]
    fn identity_on_one_vector() {
        let id = ComplexMatrix::identity(3).unwrap();
        assert_eq!(family_ratio(&id, &basis(3)[..1], 1.0).unwrap(), 1.0);
        assert_eq!(family_ratio(&id, &basis(3)[..1], 2.0).unwrap(), 1.0);
    }

    #[test]
    fn orthonormal_family_gives_hs_norm() {
        let mut rng = seeded(50);
        let t = gaussian_matrix(&mut rng, 4, 3);
        assert!((family_ratio(&t, &basis(3), 2.0).unwrap() - hs_norm(&t)).abs() < 1e-12);
        let d = ComplexMatrix::diag_real(&[1.0, 2.0]).unwrap();
        assert!((family_ratio(&d, &basis(2), 2.0).unwrap() - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn errors() {
        let id = ComplexMatrix::identity(2).unwrap();
        assert_eq!(family_ratio(&id, &[], 1.0), Err(Error::EmptyFamily));
        assert_eq!(family_ratio(&id, &basis(2), 3.0), Err(Error::UnsupportedP(3.0)));
        assert!(matches!(family_ratio(&id, &basis(3), 1.0), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pi2_examples() {
        let e = pi2_certify(&ComplexMatrix::diag_real(&[3.0, 4.0]).unwrap()).unwrap();
        assert!((e.lower_bound - 5.0).abs() < 1e-14);
        assert!(e.exact);
        assert_eq!(pi2_certify(&ComplexMatrix::zeros(2, 2).unwrap()).unwrap().lower_bound, 0.0);
    }

    #[test]
    fn pi1_of_scalars_is_one() {
        let e = pi1_lower_bound(&ComplexMatrix::identity(1).unwrap(), 50, 3).unwrap();
        assert_eq!(e.lower_bound, 1.0);
    }

    #[test]
    fn pi1_dominates_operator_norm() {
        let mut rng = seeded(51);
        let t = gaussian_matrix(&mut rng, 3, 3);
        let e = pi1_lower_bound(&t, 20, 1).unwrap();
        assert!(e.lower_bound >= operator_norm(&t).unwrap() - 1e-9);
        let again = family_ratio(&t, &e.witness_family, 1.0).unwrap();
        assert!((again - e.lower_bound).abs() < 1e-9);
    }

    #[test]
    fn weak_l1_stays_in_certified_bracket() {
        let mut rng = seeded(52);
        for k in 2..6 {
            let fam: Vec<Vec<Complex>> = (0..k).map(|_| gaussian_vector(&mut rng, 3)).collect();
            let refs: Vec<&[Complex]> = fam.iter().map(Vec::as_slice).collect();
            let w = weak_l1(&refs).unwrap();
            assert!(w.certified_lower <= w.value + 1e-12 && w.value <= w.certified_upper + 1e-12);
        }
    }
}
