//! Finite quotients of the integer Heisenberg group by normal lattices:
//! conjugacy classes, irreducible representation dimensions, the dual data
//! of a whole tower, and a search showing a twisted tower has no level
//! inside a given candidate factor.

use heisolat::catalog;
use heisolat::lattice::Lattice;
use heisolat::quotient::{
    dual_tower_report, factor_level_search, heisenberg_mod, FactorSearch, FiniteQuotient,
};

fn main() {
    // The mod-p quotients have order p^3, p^2 + p - 1 classes, and
    // dimensions {1^(p^2), p^(p-1)}.
    for p in [2u64, 3, 5] {
        let q = FiniteQuotient::build(&heisenberg_mod(p).expect("lattice")).expect("quotient");
        let data = q.class_data();
        println!(
            "mod {p}: order {}, {} classes, center {}, abelianization {}",
            q.order(),
            data.classes,
            data.center_order,
            data.abelianization_order
        );
        println!("  irrep dimensions: {:?}", q.irrep_dimensions());
    }

    // Dual data of the scaled tower: conjugate levels produce identical
    // dual invariants, so the twisted variant is indistinguishable here.
    let depth = 3;
    let plain = catalog::scaled_tower(depth).expect("tower");
    let twisted = catalog::scaled_twisted_tower(depth).expect("tower");
    let dual_plain = dual_tower_report(&plain, depth).expect("dual");
    let dual_twisted = dual_tower_report(&twisted, depth).expect("dual");
    println!("\nscaled dual tower:");
    for (j, level) in dual_plain.levels.iter().enumerate() {
        println!(
            "  level {}: order {}, {} classes",
            j + 1,
            level.order,
            level.classes
        );
    }
    println!(
        "twisted dual identical: {}",
        dual_plain.same_as(&dual_twisted)
    );

    // Yet no level of the twisted tower sits inside the plain level-two
    // lattice: the search reports per-level witnesses.
    let sigma = plain.level(2).expect("level");
    let twisted_deep = catalog::scaled_twisted_tower(6).expect("tower");
    match factor_level_search(&twisted_deep, &sigma, 6).expect("search") {
        FactorSearch::Found { level } => println!("\nfound at level {level}"),
        FactorSearch::NotFound { depth, witnesses } => {
            println!("\nno level through depth {depth}; witnesses:");
            for (j, w) in witnesses {
                println!("  level {j}: {w}");
            }
        }
    }

    // Containment of conjugates: the largest sublattice whose conjugates
    // all stay inside the ambient lattice.
    let ambient = Lattice::h3z();
    let inner = heisenberg_mod(2).expect("lattice");
    let core = Lattice::conjugate_intersection(&ambient, &inner).expect("intersection");
    println!(
        "\nconjugate intersection of mod-2 inside h3z: k = {}, xi = {}",
        core.k(),
        core.xi()
    );
}
