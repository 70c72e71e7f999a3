//! Ergodic self-joinings of transitive Heisenberg systems: the measurable
//! choice cocycle, the plane-offset classification into finitely many
//! off-diagonal graphs versus the aperiodic case, and the Koopman spectrum
//! of an aperiodic joining.

use heisolat::joining::{
    alpha_cocycle, classify_selfjoining_tower, classify_selfjoining_transitive,
    joining_koopman_spectrum, skew_action, JoiningClass, TorusPoint,
};
use heisolat::catalog;
use heisolat::heis::GroupElement;
use heisolat::scalar::Scalar;

fn main() {
    // The skew action on the base torus: the cocycle identity makes it a
    // genuine group action.
    let k = 2;
    let y = TorusPoint::new(Scalar::ratio(1, 3), Scalar::ratio(1, 4), Scalar::zero(), k)
        .expect("valid point");
    let g = GroupElement::new(Scalar::ratio(1, 2), Scalar::one(), Scalar::zero());
    println!("alpha(g, y) = {}", alpha_cocycle(&g, &y, k));
    let moved = skew_action(&g, &y, k);
    println!("g . y = ({}, {}, {})", moved.y1, moved.y2, moved.z);

    // Rational offsets give a periodic joining: finitely many graphs, the
    // count determined by a gcd with the central gauge.
    for (d1, d2) in [((1, 2), (2, 3)), ((1, 5), (0, 1)), ((0, 1), (0, 1))] {
        let d = [Scalar::ratio(d1.0, d1.1), Scalar::ratio(d2.0, d2.1)];
        match classify_selfjoining_transitive(&d, 1).expect("classification") {
            JoiningClass::Periodic { q, offset } => {
                println!("d = ({}/{}, {}/{}): {q} graphs, offset step {offset}",
                    d1.0, d1.1, d2.0, d2.1)
            }
            JoiningClass::AperiodicFull => println!("aperiodic"),
        }
    }

    // An irrational offset is aperiodic.
    let d = [Scalar::quad_ratio(0, 1, 1, 1, 2), Scalar::ratio(1, 3)];
    println!(
        "d = (sqrt(2), 1/3): {:?}",
        classify_selfjoining_transitive(&d, 1).expect("classification")
    );

    // Joinings of an odometer: one offset per level, classified levelwise.
    let tower = catalog::factorial_tower(3).expect("tower");
    let ds = [
        [Scalar::ratio(1, 2), Scalar::zero()],
        [Scalar::ratio(1, 2), Scalar::zero()],
        [Scalar::ratio(1, 2), Scalar::zero()],
    ];
    let report = classify_selfjoining_tower(&tower, &ds).expect("classification");
    println!("\nfactorial tower joining: {:?}", report.limit);
    println!("note: {}", report.note);

    // The Koopman spectrum of an aperiodic joining is not the spectrum of
    // any Heisenberg odometer.
    let spec = joining_koopman_spectrum(&d, 1).expect("spectrum");
    println!("\naperiodic joining spectrum:");
    println!("  certificate: {}", spec.certificate);
    println!("  note: {}", spec.note);
}
