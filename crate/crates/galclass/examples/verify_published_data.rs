//! Check the shipped class-group datasets against the rank constraints:
//! the quintic dihedral table row by row, the quaternion relative class
//! numbers, and the polynomial-discriminant cross-check of the family.
//!
//! ```text
//! cargo run --release -p galclass --example verify_published_data
//! ```

use galclass::verify::{
    check_record, kondo_polynomial, kondo_table_check, parse_records, poly_discriminant,
};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table1 = parse_records(&std::fs::read_to_string(data("table1.csv"))?)?;
    println!("quintic dihedral table ({} rows):", table1.len());
    for rec in &table1 {
        let report = check_record(rec)?;
        print!("{}", report.render_tsv());
        assert!(report.passed());
    }

    let louboutin = parse_records(&std::fs::read_to_string(data("louboutin.csv"))?)?;
    println!("\nquaternion relative class numbers ({} rows):", louboutin.len());
    for rec in &louboutin {
        let report = check_record(rec)?;
        print!("{}", report.render_tsv());
        assert!(report.passed());
    }

    // the defining polynomials: field discriminants divide the polynomial
    // discriminants across the whole family slice
    println!("\npolynomial discriminants for the a = 1 subfamily:");
    let f0 = kondo_polynomial(1, 0);
    println!("  b = 0 polynomial (ascending): {f0:?}");
    println!("  disc = {}", poly_discriminant(&f0)?);
    let report = kondo_table_check(&table1, 0..=19)?;
    for row in &report.rows {
        println!(
            "  b = {:2}: disc(K) {} divides disc(f) ({})",
            row.b, row.field_disc, row.disc_divides
        );
        assert!(row.disc_divides);
    }
    println!("all {} rows pass", report.rows.len());
    Ok(())
}
