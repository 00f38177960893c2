//! Gram matrices certify that no unitary clones two non-orthogonal states.

use hilbertkit::teleport::no_cloning_certificate;
use hilbertkit::Ket;

fn main() -> hilbertkit::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = Ket::from_real(&[1.0, 0.0, 0.0])?;
    let y = Ket::from_real(&[s, s, 0.0])?;
    let e = Ket::from_real(&[0.0, 0.0, 1.0])?;
    let c = no_cloning_certificate(&x, &y, &e)?;
    println!("gram before: {:?}", c.gram_in);
    println!("gram after:  {:?}", c.gram_out);
    println!("gap {:.4}: no unitary maps x⊗e ↦ x⊗x and y⊗e ↦ y⊗y", c.gap);

    let orth = no_cloning_certificate(&x, &Ket::from_real(&[0.0, 1.0, 0.0])?, &e)?;
    println!("orthogonal pair gap {}", orth.gap);
    Ok(())
}
