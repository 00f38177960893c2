//! Schmidt decomposition and an entanglement test for bipartite vectors.

use hilbertkit::states::{is_entangled, schmidt};
use hilbertkit::tensor::{dyad, unvec};
use hilbertkit::{Ket, TensorElement};

fn main() -> hilbertkit::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi = Ket::from_real(&[s, 0.0, 0.0, s])?;
    let bell = TensorElement::from_matrix(&unvec(&phi, 2, 2)?);
    let f = schmidt(&bell)?;
    println!("Bell state: coefficients {:?}, weights {:?}", f.coeffs, f.weights());
    println!("entangled: {}", is_entangled(&bell, 1e-12)?);

    let product = dyad(&Ket::from_real(&[0.6, 0.8])?, &Ket::from_real(&[1.0, 0.0, 0.0])?);
    let g = schmidt(&product)?;
    println!("product state: Schmidt rank {}, entangled: {}", g.rank(), is_entangled(&product, 1e-12)?);

    let half_bell = bell.matrix_rep().scale_real(0.5);
    let z = TensorElement::from_matrix(&half_bell)
        .add(&TensorElement::from_matrix(&dyad(&Ket::basis(2, 0)?, &Ket::basis(2, 1)?).matrix_rep().scale_real(0.5)))?;
    let h = schmidt(&z)?;
    println!(
        "generic state: coefficients {:?}, Σ weights {:.6} = ‖z‖² {:.6}",
        h.coeffs,
        h.weights().iter().sum::<f64>(),
        z.norm().powi(2)
    );
    Ok(())
}
