//! Exact arithmetic in the real Heisenberg group: the group law, the
//! commutator pairing, lattices with their canonical normal forms, and a
//! conjugacy test that exhibits an explicit conjugating element.

use heisolat::heis::GroupElement;
use heisolat::lattice::Lattice;
use heisolat::matrix::Mat2;
use heisolat::scalar::Scalar;

fn main() {
    // The group law twists the center: a(1) and b(1) do not commute.
    let a = GroupElement::a(Scalar::one());
    let b = GroupElement::b(Scalar::one());
    println!("a(1) * b(1)      = {}", a.multiply(&b));
    println!("b(1) * a(1)      = {}", b.multiply(&a));
    println!("[a(1), b(1)]     = {}", a.commutator(&b));
    println!("central? {}", a.commutator(&b).is_central());

    // The standard integer lattice and a sheared sublattice.
    let gamma = Lattice::h3z();
    let sheared = Lattice::new(
        Mat2::diagonal(Scalar::from_int(1), Scalar::from_int(6)),
        Scalar::ratio(1, 2),
        Scalar::zero(),
        Scalar::from_int(3),
    )
    .expect("valid lattice");
    println!("\nsheared lattice: k = {}, xi = {}", sheared.k(), sheared.xi());
    println!("generators: {}, {}", sheared.generator(0), sheared.generator(1));

    // Every lattice is automorphic to a canonical representative
    // determined by a single positive integer.
    let (k, theta) = sheared.normal_form();
    println!("canonical parameter: {k}");
    println!("reached by the automorphism {theta}");
    let canonical = Lattice::canonical(2).expect("valid parameter");
    assert!(sheared.automorphism_image(&theta).equal(&canonical));

    // Conjugacy is finer than automorphism: the test returns a witness.
    let h = GroupElement::new(Scalar::ratio(1, 3), Scalar::ratio(1, 4), Scalar::zero());
    let moved = gamma.conjugate_by(&h);
    match gamma.conjugacy_test(&moved) {
        Some(w) => println!("\nconjugator found: {w}"),
        None => println!("\nnot conjugate"),
    }
    println!(
        "h3z conjugate to sheared? {}",
        gamma.conjugacy_test(&sheared).is_some()
    );
}
