//! Kronecker products, column stacking and the commutation matrix.

use hilbertkit::tensor::{commutation_matrix, dyad, kron_ket, to_kron_vector, unvec, vec};
use hilbertkit::{ComplexMatrix, Ket};

fn main() -> hilbertkit::Result<()> {
    let e2 = Ket::basis(3, 1)?;
    let e1 = Ket::basis(2, 0)?;
    let k = kron_ket(&e2, &e1);
    let hot = k.coords().iter().position(|z| z.re == 1.0).unwrap();
    println!("e_2 ⊗ e_1 in C^3 ⊗ C^2 is standard basis vector {} of C^6", hot + 1);

    let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]);
    let v = vec(&a);
    let stacked: Vec<f64> = v.coords().iter().map(|z| z.re).collect();
    println!("vec of [[1,2,3],[4,5,6]] = {stacked:?}");
    assert_eq!(unvec(&v, 2, 3)?, a);

    let x = Ket::from_real(&[1.0, -1.0])?;
    let z = Ket::from_real(&[2.0, 0.0, 1.0])?;
    let d = dyad(&x, &z);
    println!("dyad x ⊗ z has representative z·xᵀ = {:?}", d.matrix_rep());
    assert_eq!(to_kron_vector(&d), kron_ket(&x, &z));

    let kmn = commutation_matrix(3, 2)?;
    let swapped = kmn.matrix.apply(kron_ket(&z, &x).coords())?;
    println!("K_{{3,2}}·(z ⊗ x) == x ⊗ z: {}", swapped == kron_ket(&x, &z).coords());
    Ok(())
}
