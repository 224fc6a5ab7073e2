//! The rank-divisibility modulus each group imposes at a prime, computed
//! from the faithful Galois orbits and cross-checked against the closed
//! forms, plus the faithful-character existence predicate.
//!
//! ```text
//! cargo run --release -p galclass --example rank_constraints
//! ```

use galclass::group::{FamilySpec, Group};
use galclass::rank::{
    closed_form_modulus, corollary18_modulus, has_faithful_irreducible, prop19_cor20_modulus,
    rank_modulus, RankOutcome,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rank constraints (group, p, modulus, orbit shapes):");
    for (spec, p) in [
        (FamilySpec::Alt4, 7u64),
        (FamilySpec::Dihedral(5), 3),
        (FamilySpec::GeneralizedQuaternion(2), 3),
        (FamilySpec::Cyclic(5), 11),
        (FamilySpec::Cyclic(5), 2),
        (FamilySpec::Group16_08, 7),
    ] {
        let g = Group::from_family(&spec)?;
        let outcome = rank_modulus(&g, p)?;
        println!("  {}", outcome.render());
        if let RankOutcome::Constraint(c) = &outcome {
            let closed = closed_form_modulus(&spec, p)?;
            assert_eq!(c.modulus, closed.modulus);
            println!("    note: {}", c.hypothesis_note);
        }
    }

    // a group with no faithful irreducible: the Klein four group, whose
    // center is not cyclic
    let v4 = Group::from_family(&FamilySpec::KleinFour)?;
    println!("  {}", rank_modulus(&v4, 3)?.render());
    assert!(!has_faithful_irreducible(&v4, 3)?);

    // the dihedral p = 2 closed form carries the conjectural-case flag
    for n in [5u32, 7] {
        let m = closed_form_modulus(&FamilySpec::Dihedral(n), 2)?;
        println!(
            "D{n} at p = 2: modulus {}{}",
            m.modulus,
            if m.p2_conjectural { " (conjectural case)" } else { " (proved case)" }
        );
    }

    // the odd-degree (non-normal) constraint and the order-16 specialization
    for p in [3u64, 19, 2] {
        let c = corollary18_modulus(5, p)?;
        println!(
            "odd degree 5, p = {p}: f = {} sign {:+} valid {}",
            c.f, c.sign, c.valid
        );
    }
    for p in [3u64, 5, 13] {
        println!("order-16 specialization at p = {p}: {}", prop19_cor20_modulus(p)?);
    }
    Ok(())
}
