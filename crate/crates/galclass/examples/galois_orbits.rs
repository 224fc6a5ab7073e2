//! Frobenius orbits of table rows and their recombination into
//! F_p-irreducible characters, mirroring how x^n - 1 factors over F_p.
//!
//! ```text
//! cargo run --release -p galclass --example galois_orbits
//! ```

use galclass::character::{character_table_family, fp_irreducibles, galois_orbits};
use galclass::group::FamilySpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // C5 at p = 2: the four nontrivial characters form a single orbit of
    // size 4 = ord_5(2), mirroring x^5 - 1 = (x+1)(x^4+x^3+x^2+x+1) over F_2
    let t = character_table_family(&FamilySpec::Cyclic(5), 2)?;
    let orbits = galois_orbits(&t)?;
    println!("C5 at p = 2:");
    for o in &orbits {
        println!(
            "  orbit {:?}: size {}, member degree {}, faithful {}",
            o.members, o.r, o.degree, o.faithful
        );
    }
    let irr = fp_irreducibles(&t)?;
    for e in &irr {
        println!(
            "  F_2-irreducible of degree {} (faithful {}), values {:?}",
            e.degree, e.faithful, e.values
        );
    }

    // D5 at p = 3: the two faithful degree-2 rows are Frobenius conjugate,
    // giving one faithful F_3-irreducible of degree 4
    let t = character_table_family(&FamilySpec::Dihedral(5), 3)?;
    println!("\nD5 at p = 3:");
    for o in galois_orbits(&t)? {
        println!(
            "  orbit {:?}: size {}, degree {}, faithful {}",
            o.members, o.r, o.degree, o.faithful
        );
    }
    for e in fp_irreducibles(&t)? {
        println!("  F_3-irreducible of degree {} (faithful {})", e.degree, e.faithful);
    }

    // at a prime where every value lies in F_p, all orbits are singletons
    let t = character_table_family(&FamilySpec::Cyclic(6), 7)?;
    let orbits = galois_orbits(&t)?;
    assert!(orbits.iter().all(|o| o.r == 1));
    println!("\nC6 at p = 7: all {} orbits are singletons", orbits.len());
    Ok(())
}
