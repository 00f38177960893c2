//! Recovering a density operator from the probabilities it assigns to
//! projections.

use hilbertkit::norms::pairing;
use hilbertkit::sampling::{density_matrix, projection, seeded};
use hilbertkit::states::{gleason_from_table, gleason_reconstruct, MeasureTable};
use hilbertkit::ComplexMatrix;

fn main() -> hilbertkit::Result<()> {
    let mut rng = seeded(21);
    let d = density_matrix(&mut rng, 4);
    let measure = |p: &ComplexMatrix| pairing(p, &d).re;

    let rec = gleason_reconstruct(&measure, 4)?;
    println!("{} rank-one probes, recovery error {:e}", rec.probe_count, rec.density.matrix.distance(&d));
    println!("spectrum {:?}, purity {:.6}", rec.density.spectrum, rec.density.purity());

    let extra: Vec<ComplexMatrix> = (0..10).map(|k| projection(&mut rng, 4, 1 + k % 3)).collect();
    let table = MeasureTable::tabulate(&measure, 4, &extra)?;
    let from_table = gleason_from_table(&table)?;
    println!(
        "from a table of {} samples: {} held out, residual {:e}",
        table.samples.len(),
        from_table.holdout_count,
        from_table.holdout_residual
    );
    Ok(())
}
