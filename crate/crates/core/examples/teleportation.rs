//! Teleporting a qubit with the explicit three-qubit unitary.

use hilbertkit::teleport::{factorization_residual, standard_gates, teleport, teleport_matrix};
use hilbertkit::{Complex, Ket};

fn main() -> hilbertkit::Result<()> {
    for (name, gate) in standard_gates() {
        println!("{name:>4}: {} qubit(s), unitarity residual {:e}", gate.arity, gate.unitarity_residual());
    }
    let t = teleport_matrix();
    println!(
        "T: unitarity residual {:e}, factorization residual {:e}",
        t.unitarity_residual(),
        factorization_residual(&t.matrix)
    );

    let xi = Ket::new(vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)])?;
    let run = teleport(&xi)?;
    for b in &run.branches {
        let c = b.corrected.coords();
        println!("branch {}: probability {:.3}, corrected ({:.3}, {:.3})", b.branch, b.probability, c[0], c[1]);
    }
    println!("equation residual {:e}", run.equation_residual(&xi)?);
    Ok(())
}
