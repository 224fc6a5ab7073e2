//! Exhaustive scans over small module configurations: each scan enumerates
//! every action within its bounds and reports the extremal value with a
//! serialized witness.
//!
//! ```text
//! cargo run --release -p galclass --example exhaustive_scans
//! ```

use galclass::gmodule::scan::{cyclic_scan, ScanBounds, ScanKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // prime-order cyclic actions annihilated by the full norm: the largest
    // surviving module is Z/p
    for p in [3u64, 5] {
        let rep = cyclic_scan(
            ScanKind::Prop15,
            &ScanBounds {
                p,
                max_exponent: 4,
            },
        )?;
        print!("{}", rep.render());
        assert_eq!(rep.extremal, p);
        println!();
    }

    // order-4 actions with 1 + sigma^2 annihilating: stable cyclic
    // subgroups top out at order 2
    let rep = cyclic_scan(ScanKind::Prop16, &ScanBounds::default())?;
    print!("{}", rep.render());
    assert_eq!(rep.extremal, 2);
    println!();

    // feasible exponent pairs under the same annihilation never separate
    // by more than one
    let rep = cyclic_scan(ScanKind::Cor17, &ScanBounds::default())?;
    print!("{}", rep.render());
    assert_eq!(rep.extremal, 1);
    Ok(())
}
