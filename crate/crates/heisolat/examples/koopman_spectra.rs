//! Koopman spectra: the spectral decomposition of a transitive system on a
//! single Heisenberg nilmanifold, an honest orbit-counting check of the
//! multiplicity law, and the spectrum of a non-degenerate odometer.

use heisolat::catalog;
use heisolat::lattice::Lattice;
use heisolat::spectra::{odometer_spectrum, orbit_count_oracle, transitive_spectrum};

fn main() {
    // A transitive system: finitely many one-dimensional classes per dual
    // character and |gamma| * k copies of each infinite-dimensional class.
    let gamma = Lattice::canonical(3).expect("valid parameter");
    let report = transitive_spectrum(&gamma).expect("spectrum");
    println!("transitive system for the canonical lattice with k = 3:");
    println!("  one-dim classes:  {}", report.one_dim.describe());
    println!("  inf-dim classes:  {} minus 0", report.inf_dim.describe());
    println!("  multiplicity law: {:?}", report.multiplicity_law);

    // Cross-check the linear coefficient by enumerating orbits directly.
    for n in [1i64, 2, 5, -3] {
        let count = orbit_count_oracle(3, n).expect("oracle");
        println!("  orbits at frequency {n}: {count} (expected {})", 3 * n.unsigned_abs());
    }

    // A free odometer with a certified tail: every class appears with
    // infinite multiplicity and the statement is exact, not depth-bounded.
    let tower = catalog::dyadic_tail_tower();
    let report = odometer_spectrum(&tower).expect("spectrum");
    println!("\ndyadic-tail odometer:");
    println!("  one-dim classes:  {}", report.one_dim.describe());
    println!("  inf-dim classes:  {} minus 0", report.inf_dim.describe());
    println!("  multiplicity law: {:?}", report.multiplicity_law);
    println!("  exact: {}", report.is_exact());
    println!(
        "  per-level linear coefficients: {:?}",
        report.level_coefficients
    );

    // An eventually constant tower degenerates to a single transitive system.
    let constant = catalog::constant_tower();
    let report = odometer_spectrum(&constant).expect("spectrum");
    println!("\nconstant tower: {:?}", report.multiplicity_law);
    for note in &report.notes {
        println!("  note: {note}");
    }
}
