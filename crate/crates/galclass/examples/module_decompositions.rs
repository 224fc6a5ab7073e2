//! Finite abelian p-groups with a validated group action: norm splittings,
//! the Klein-four decomposition into eigen-images, Maschke complements,
//! the cyclic annihilation bound, and the dihedral span argument.
//!
//! ```text
//! cargo run --release -p galclass --example module_decompositions
//! ```

use galclass::gmodule::scan::random_v4_module;
use galclass::gmodule::{
    dihedral_span_check, grun_check, maschke_complement, norm_split, substructure, v4_decompose,
    AbelianPGroup, GModule, RingElement,
};
use galclass::group::{FamilySpec, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Z/5 with C2 acting by negation: the norm 1 + sigma is the zero map
    let c2 = Group::from_family(&FamilySpec::Cyclic(2))?;
    let base = AbelianPGroup::new(5, vec![1])?;
    let m = GModule::make_module(base, c2.clone(), &[(1, vec![-1])])?;
    let norm = RingElement::one_plus(m.group(), 1);
    let split = norm_split(&m, &norm, 2)?;
    println!(
        "negation on Z/5: kernel {:?}, image {:?}, order check {}",
        split.kernel, split.image, split.order_check
    );

    // kernel/image structure of multiplication by p on Z/p^2
    let base = AbelianPGroup::new(5, vec![2])?;
    let s = substructure(&base, &vec![5])?;
    println!("x -> 5x on Z/25: kernel {:?}, image {:?}", s.kernel, s.image);

    // a seeded random Klein-four module decomposes into its three
    // eigen-images
    let m = random_v4_module(7, 3, 42)?;
    let rep = v4_decompose(&m)?;
    println!(
        "random V4 module over p=7 (seed 42): components {:?} {:?} {:?}, pass {}",
        rep.components[0], rep.components[1], rep.components[2], rep.pass
    );

    // Maschke: C2 swaps the coordinates of F_3^2; the diagonal's stable
    // complement is the antidiagonal
    let base = AbelianPGroup::new(3, vec![1, 1])?;
    let swap = GModule::make_module(base, c2.clone(), &[(1, vec![0, 1, 1, 0])])?;
    let complement = maschke_complement(&swap, &[vec![1, 1]])?;
    println!("complement of the diagonal under the swap action: {complement:?}");

    // the annihilation bound for a cyclic module: H8 acts on Z/5 through
    // its abelianization, so the commutator acts trivially
    let h8 = Group::from_family(&FamilySpec::GeneralizedQuaternion(2))?;
    let base = AbelianPGroup::new(5, vec![1])?;
    let m = GModule::make_module(base, h8, &[(1, vec![-1]), (4, vec![-1])])?;
    let g = grun_check(&m)?;
    println!(
        "H8 on Z/5: commutator order {}, norm image exponent {}, bound {} annihilates {}",
        g.commutator_order, g.norm_image_exponent, g.bound, g.annihilates
    );

    // the dihedral span argument on the standard 2-dimensional D3-module
    let d3 = Group::from_family(&FamilySpec::Dihedral(3))?;
    let base = AbelianPGroup::new(7, vec![1, 1])?;
    let m = GModule::make_module(base, d3, &[(1, vec![0, -1, 1, -1]), (3, vec![1, -1, 0, -1])])?;
    let rep = dihedral_span_check(&m, &[vec![1, 0]])?;
    println!(
        "D3 on (Z/7)^2: A {:?}, span {:?}, intersection trivial {}, pass {}",
        rep.a_factors, rep.span_factors, rep.intersection_trivial, rep.pass
    );
    Ok(())
}
