//! Absolutely summing norms: π₂ exactly, π₁ from below.

use hilbertkit::psum::{family_ratio, pi1_lower_bound, pi2_certify};
use hilbertkit::{ComplexMatrix, Ket};

fn main() -> hilbertkit::Result<()> {
    let t = ComplexMatrix::diag_real(&[3.0, 4.0])?;
    let e = pi2_certify(&t)?;
    println!("π₂(diag(3,4)) = {} (exact: {})", e.lower_bound, e.exact);

    let id = ComplexMatrix::identity(2)?;
    for budget in [10, 100, 1000] {
        let est = pi1_lower_bound(&id, budget, 7)?;
        println!(
            "π₁(Id on C²) ≥ {:.6} after {budget} iterations, witness of {} vectors",
            est.lower_bound,
            est.witness_family.len()
        );
    }

    let family = vec![Ket::from_real(&[1.0, 0.0])?, Ket::from_real(&[0.0, 1.0])?];
    println!("orthonormal pair, p = 1: ratio {:.6}", family_ratio(&id, &family, 1.0)?);
    println!("orthonormal pair, p = 2: ratio {:.6}", family_ratio(&id, &family, 2.0)?);
    Ok(())
}
