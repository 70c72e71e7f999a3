//! Products of two odometers: tensor products of irreducible classes, and
//! the ergodicity / discrete-spectrum analysis.  A product of a rational
//! tower with a quadratic-unit tower gives an ergodic system with pure
//! discrete spectrum that is itself never an odometer.

use heisolat::catalog;
use heisolat::heis::Irrep;
use heisolat::lattice::Lattice;
use heisolat::matrix::Mat2;
use heisolat::scalar::Scalar;
use heisolat::spectra::{product_analysis, tensor_product};
use heisolat::tower::Tower;

fn main() {
    // Tensor products of irreducible classes.
    let chi = Irrep::one_dim(Scalar::ratio(1, 2), Scalar::ratio(1, 3));
    let pi = Irrep::inf_dim(Scalar::ratio(1, 4)).expect("nonzero frequency");
    let pi_neg = Irrep::inf_dim(Scalar::ratio(-1, 4)).expect("nonzero frequency");
    println!("chi (x) chi     = {}", tensor_product(&chi, &chi));
    println!("pi  (x) chi     = {}", tensor_product(&pi, &chi));
    println!("pi  (x) pi      = {}", tensor_product(&pi, &pi));
    println!("pi  (x) pi^-    = {}", tensor_product(&pi, &pi_neg));

    // Two rational towers: frequency groups overlap, the product is not
    // ergodic.
    let plain = catalog::scaled_tower(4).expect("tower");
    let factorial = catalog::factorial_tower(4).expect("tower");
    let report = product_analysis(&plain, &factorial, 4).expect("analysis");
    println!("\nscaled x factorial:\n{report}");

    // Scale one factor by the quadratic unit 1 + sqrt(2): the central gauge
    // becomes the irrational (1 + sqrt(2))^2, the frequency groups meet only
    // at zero, and the product is ergodic with pure discrete spectrum.
    let u = Scalar::quad_ratio(1, 1, 1, 1, 2);
    let unit_lattice = Lattice::new(
        Mat2::diagonal(u.clone(), u.clone()),
        Scalar::zero(),
        Scalar::zero(),
        &u * &u,
    )
    .expect("valid lattice");
    let unit_tower = Tower::constant(unit_lattice);
    let integer_tower = catalog::constant_tower();
    let report = product_analysis(&integer_tower, &unit_tower, 4).expect("analysis");
    println!("integer x quadratic-unit:\n{report}");
}
