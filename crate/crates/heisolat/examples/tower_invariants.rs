//! Towers of nested lattices and their limit invariants: the increasing
//! union of dual plane lattices, the central frequency group, degeneracy,
//! and freeness of the associated odometer.

use heisolat::catalog;

fn main() {
    for name in ["factorial", "line-persistent", "primorial", "dyadic-tail"] {
        let tower = catalog::by_name(name, 6).expect("catalog tower");
        let (plane, line) = tower.invariant_groups().expect("invariants");
        println!("== {name} ==");
        println!("  plane group: {}", plane.describe());
        println!("  line group:  {}", line.describe());
        println!(
            "  covolume group (tau of the plane group): {}",
            plane.tau().expect("tau").describe()
        );
        println!("  non-degenerate: {}", tower.is_non_degenerate());
        println!("  free: {}", tower.is_free().expect("freeness"));
        let center = tower.center_intersection().expect("center");
        match center.generator {
            Some(g) => println!("  center intersection generated by c({g})"),
            None => println!("  center intersection trivial"),
        }
        println!();
    }

    // The line-persistent family keeps the plane direction (1, 0) in every
    // level while the central gauge blows up.
    let tower = catalog::line_persistent_tower(5).expect("tower");
    let a1 = heisolat::heis::GroupElement::a(heisolat::scalar::Scalar::one());
    println!(
        "a(1) in every level of line-persistent: {}",
        tower.is_in_all_levels(&a1).expect("membership")
    );
}
