//! Character tables over the splitting field, by the closed family formulas
//! and by the general central-idempotent method, printed in the
//! byte-reproducible table format.
//!
//! ```text
//! cargo run --release -p galclass --example character_tables
//! ```

use galclass::character::{character_table_family, character_table_general, character_kernel};
use galclass::group::FamilySpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the printed A4 table at p = 7: degrees 1, 1, 1, 3 and the faithful
    // degree-3 row (3, -1, 0, 0)
    let a4 = character_table_family(&FamilySpec::Alt4, 7)?;
    println!("{}", a4.render());

    // the quaternion group at p = 3: four linear characters and one
    // faithful degree-2 character whose values stay in F_3
    let h8 = character_table_family(&FamilySpec::GeneralizedQuaternion(2), 3)?;
    println!("{}", h8.render());
    for (i, row) in h8.rows().iter().enumerate() {
        let (kernel, faithful) = character_kernel(&h8, i);
        println!(
            "row {i}: degree {}, kernel order {}, faithful {}",
            row.degree,
            kernel.order(),
            faithful
        );
    }
    println!();

    // the general method reads only the Cayley table and reproduces the
    // closed-form table exactly
    let gen = character_table_general(h8.group(), 3)?;
    assert_eq!(gen.rows(), h8.rows());
    println!("general method agrees with the family formulas on H8 at p = 3");

    // the order-16 group with two conjugate faithful degree-2 characters
    let g16 = character_table_family(&FamilySpec::Group16_08, 5)?;
    println!("\n{}", g16.render());
    Ok(())
}
