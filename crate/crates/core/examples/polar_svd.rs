//! Singular values and the polar decomposition.

use hilbertkit::linalg::{hermitian_eig, polar, svd};
use hilbertkit::ComplexMatrix;

fn main() -> hilbertkit::Result<()> {
    let a = ComplexMatrix::from_real_rows(&[[0.0, -2.0], [1.0, 0.0]]);
    let f = svd(&a)?;
    println!("singular values {:?}, rank {}", f.singulars, f.rank);

    let p = polar(&a)?;
    println!("|A| = {:?}", p.abs);
    println!("W   = {:?}", p.w);
    println!("‖W·|A| − A‖_F = {:e}", (&p.w * &p.abs).distance(&a));

    let h = &a.adjoint() * &a;
    let e = hermitian_eig(&h)?;
    println!("eigenvalues of A†A: {:?}", e.values);
    Ok(())
}
