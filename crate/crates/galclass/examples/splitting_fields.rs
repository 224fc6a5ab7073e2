//! Build the splitting field E = F_p(zeta_n), exercise its arithmetic, and
//! inspect the Frobenius orbit of the canonical root of unity.
//!
//! ```text
//! cargo run --release -p galclass --example splitting_fields
//! ```

use galclass::field::{build_splitting_field, frobenius_map, mult_order, pm_order};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, n) in [(2u64, 5u64), (3, 8), (7, 3), (5, 12), (13, 30)] {
        let f = mult_order(p, n)?;
        let pm = pm_order(p, n)?;
        let spec = build_splitting_field(p, n)?;
        println!(
            "F_{p}(zeta_{n}): degree {} (ord = {f}, pm-order = {} sign {:+})",
            spec.degree(),
            pm.f,
            pm.sign
        );
        println!("  line: {}", spec.to_line());
        // zeta has exact order n and its Frobenius orbit walks the primitive powers
        let zeta = spec.zeta().clone();
        assert_eq!(spec.element_order_dividing(&zeta, n), Some(n));
        let mut x = zeta.clone();
        let mut orbit = Vec::new();
        loop {
            orbit.push(x.clone());
            x = frobenius_map(&x, &spec);
            if x == zeta {
                break;
            }
        }
        println!("  frobenius orbit of zeta has length {}", orbit.len());
        assert_eq!(orbit.len(), spec.degree());
        // x^n - 1 splits: the n powers of zeta are distinct roots
        let mut roots: Vec<_> = (0..n).map(|k| spec.pow(&zeta, k as u128)).collect();
        roots.sort();
        roots.dedup();
        assert_eq!(roots.len() as u64, n);
        println!("  x^{n} - 1 has {} distinct roots in E", roots.len());
    }
    Ok(())
}
