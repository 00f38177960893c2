//! The conjugate space, basis-relative real and imaginary parts, and the two
//! flavours of Riesz map.

use hilbertkit::conjspace::{dirac_bra, re_im_parts, riesz_map, semilinear_conjugation, to_conjugate};
use hilbertkit::sampling::{gaussian_vector, seeded, unitary};
use hilbertkit::{Complex, Ket};

fn main() -> hilbertkit::Result<()> {
    let mut rng = seeded(3);
    let x = Ket::new(gaussian_vector(&mut rng, 4))?;
    let y = Ket::new(gaussian_vector(&mut rng, 4))?;
    let basis = unitary(&mut rng, 4);

    let (re, im) = re_im_parts(&x, &basis)?;
    println!("‖x‖² = {:.12}", x.norm().powi(2));
    println!("‖Re x‖² + ‖Im x‖² = {:.12}", re.norm().powi(2) + im.norm().powi(2));

    let j = semilinear_conjugation(&x, &basis)?;
    let jj = semilinear_conjugation(&j, &basis)?;
    println!("J(J(x)) returns x: {}", hilbertkit::linalg::vec_distance(jj.coords(), x.coords()) < 1e-12);

    let i = Complex::new(0.0, 1.0);
    let xc = to_conjugate(&x)?;
    println!("i·x in the conjugate space has coordinates -i·x: {}", xc.scale(i).coords()[0] == x.coords()[0] * -i);

    let linear = riesz_map(&x)?;
    let semilinear = dirac_bra(&x)?;
    println!("riesz(x) on conj(y)  = {:.6}", linear.apply(&to_conjugate(&y)?)?);
    println!("⟨y, x⟩ via Dirac bra = {:.6}", semilinear.apply(&y)?);
    println!("⟨x, y⟩               = {:.6}", x.inner(&y)?);
    Ok(())
}
