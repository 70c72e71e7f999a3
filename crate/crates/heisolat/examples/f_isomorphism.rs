//! Two towers whose levels are pairwise conjugate have equal limit
//! invariants, hence unitarily equivalent Koopman representations — without
//! being the same tower.  The comparison produces a certificate; the
//! levelwise conjugators are exhibited separately.

use heisolat::catalog;
use heisolat::spectra::{f_isomorphic, transitive_isospectral};
use heisolat::tower::Compare;

fn main() {
    let depth = 5;
    let plain = catalog::scaled_tower(depth).expect("tower");
    let twisted = catalog::scaled_twisted_tower(depth).expect("tower");

    // Levelwise the two towers are conjugate (hence isospectral) but not
    // equal as lattices.
    for j in 1..=depth {
        let a = plain.level(j).expect("level");
        let b = twisted.level(j).expect("level");
        let conjugator = a.conjugacy_test(&b);
        println!(
            "level {j}: equal = {}, isospectral = {}, conjugator = {}",
            a.equal(&b),
            transitive_isospectral(&a, &b),
            conjugator
                .map(|h| h.to_string())
                .unwrap_or_else(|| "none".to_string()),
        );
    }

    match f_isomorphic(&plain, &twisted, depth).expect("comparison") {
        Compare::Equal { certificate, exact } => {
            println!("\nf-isomorphic (exact: {exact})");
            println!("certificate: {certificate}");
        }
        Compare::NotEqual { witness } => println!("\nnot f-isomorphic: {witness}"),
        Compare::UnknownAtDepth { depth, note } => {
            println!("\nundecided through depth {depth}: {note}")
        }
    }

    // Two prefix-only towers with different deepest levels stay undecided:
    // without a tail rule either chain could still catch up.
    let factorial = catalog::factorial_tower(depth).expect("tower");
    match f_isomorphic(&plain, &factorial, depth).expect("comparison") {
        Compare::UnknownAtDepth { depth, note } => {
            println!("\nscaled vs factorial: undecided through depth {depth} ({note})")
        }
        other => println!("\nscaled vs factorial: unexpected {other:?}"),
    }

    // Tail-certified towers separate exactly: the dyadic tail accumulates
    // central frequencies a constant tower never reaches.
    let dyadic = catalog::dyadic_tail_tower();
    let constant = catalog::constant_tower();
    match f_isomorphic(&dyadic, &constant, depth).expect("comparison") {
        Compare::NotEqual { witness } => println!("dyadic vs constant: {witness}"),
        other => println!("dyadic vs constant: unexpected {other:?}"),
    }
}
