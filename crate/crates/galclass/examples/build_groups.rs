//! Construct the named group families as validated Cayley tables and read
//! off their structure: conjugacy classes, center, commutator subgroup,
//! exponent, normal subgroups, abelianization.
//!
//! ```text
//! cargo run --release -p galclass --example build_groups
//! ```

use galclass::group::{FamilySpec, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let specs = [
        FamilySpec::Cyclic(12),
        FamilySpec::Dihedral(5),
        FamilySpec::GeneralizedQuaternion(2),
        FamilySpec::KleinFour,
        FamilySpec::Alt4,
        FamilySpec::Group16_08,
        FamilySpec::DirectProduct(
            Box::new(FamilySpec::Cyclic(2)),
            Box::new(FamilySpec::GeneralizedQuaternion(2)),
        ),
    ];
    for spec in &specs {
        let g = Group::from_family(spec)?;
        let classes = g.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        let analysis = g.subgroup_analysis()?;
        println!("{}", g.name());
        println!("  order {}, exponent {}", g.order(), g.exponent());
        println!("  {} conjugacy classes, sizes {:?}", classes.len(), sizes);
        println!(
            "  center order {} (cyclic: {}), commutator order {}",
            analysis.center.order(),
            analysis.center.is_cyclic(&g),
            analysis.commutator.order()
        );
        println!(
            "  {} normal subgroups, abelianization {:?}",
            analysis.normal_subgroups.len(),
            analysis.abelianization
        );
    }

    // a raw Cayley table goes through the same validation path
    let c3 = Group::validate_cayley(vec![
        vec![0, 1, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
    ])?;
    println!("validated a raw 3x3 table: order {}", c3.order());
    // and the text serialization round-trips
    let text = Group::from_family(&FamilySpec::Dihedral(4))?.to_text();
    let back = Group::from_text(&text)?;
    println!("D4 serialization round-trip: order {}", back.order());
    Ok(())
}
