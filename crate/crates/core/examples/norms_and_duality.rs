//! Operator, Hilbert-Schmidt and nuclear norms; trace duality; the nuclear
//! bound for products.

use hilbertkit::norms::{composition_nuclear_bound, norm_report, pairing, trace_duality_max};
use hilbertkit::sampling::{gaussian_matrix, seeded};
use hilbertkit::ComplexMatrix;

fn main() -> hilbertkit::Result<()> {
    let p = ComplexMatrix::diag_real(&[1.0, 1.0, 0.0, 0.0])?;
    let r = norm_report(&p)?;
    println!("rank-2 projection: operator {}, hs {:.6}, nuclear {}", r.operator, r.hs, r.nuclear);
    println!("σ₂(P) = {:.6} < σ₂(P)² = {:.6}", r.hs, r.hs * r.hs);

    let mut rng = seeded(11);
    let a = gaussian_matrix(&mut rng, 4, 3);
    let d = trace_duality_max(&a)?;
    println!("max |tr(A·B)| over ‖B‖_F ≤ 1 is {:.6}, attained: {:.6}", d.value, pairing(&a, &d.maximizer).norm());
    println!("best of 1000 random competitors: {:.6}", d.best_competitor(&a, 12, 1000));

    let s = gaussian_matrix(&mut rng, 3, 5);
    let t = gaussian_matrix(&mut rng, 5, 4);
    let (n, bound) = composition_nuclear_bound(&s, &t)?;
    println!("𝐍(S·T) = {n:.4} ≤ σ₂(S)·σ₂(T) = {bound:.4}");
    Ok(())
}
