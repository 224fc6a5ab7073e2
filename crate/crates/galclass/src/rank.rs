//! Rank-divisibility constraints on the p-part of a relative class group.
//!
//! When a group acts faithfully on `C = Cl_p(L/F) / Cl_p(L/F)^p`, the
//! module `C` over the mod-p group algebra is a sum of faithful-containing
//! constituents whose degrees are controlled by the faithful Galois orbits:
//! a uniform orbit shape `(d, r)` forces `rank ≡ 0 (mod r·d)`. This module
//! computes that modulus from character tables, its closed forms for the
//! named families, and the faithful-representation existence predicate.

use crate::character::{
    character_table_family, character_table_general, fp_irreducibles, galois_orbits,
};
use crate::field::{gcd, mult_order, pm_order};
use crate::group::{FamilySpec, Group};
use crate::{Error, Result};

/// The divisibility constraint derived from the faithful Galois orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankConstraint {
    pub group: String,
    pub p: u64,
    /// (degree d, orbit size r) per faithful orbit, sorted.
    pub faithful_orbits: Vec<(usize, usize)>,
    /// All faithful orbits share one (d, r) shape.
    pub uniform: bool,
    pub modulus: u64,
    /// Restates the hypotheses under which the constraint applies.
    pub hypothesis_note: String,
}

/// Outcome of [`rank_modulus`]: either a constraint or the definite absence
/// of a faithful irreducible character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankOutcome {
    Constraint(RankConstraint),
    /// No faithful irreducible exists over the splitting field; for an
    /// ℓ-group this is exactly the non-cyclic-center case.
    NoFaithfulCharacter { group: String, p: u64 },
}

impl RankOutcome {
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RankOutcome::Constraint(c) => Some(c.modulus),
            RankOutcome::NoFaithfulCharacter { .. } => None,
        }
    }

    /// One-line report: `group p modulus uniform faithful_orbit_list`.
    pub fn render(&self) -> String {
        match self {
            RankOutcome::Constraint(c) => {
                let orbits: Vec<String> = c
                    .faithful_orbits
                    .iter()
                    .map(|(d, r)| format!("{d}:{r}"))
                    .collect();
                format!(
                    "{} {} {} {} {}",
                    c.group,
                    c.p,
                    c.modulus,
                    if c.uniform { "uniform" } else { "mixed" },
                    orbits.join(",")
                )
            }
            RankOutcome::NoFaithfulCharacter { group, p } => {
                format!("{group} {p} - nofaithful -")
            }
        }
    }
}

fn hypothesis_note(p: u64) -> String {
    format!(
        "applies when {p} does not divide the group order and the {p}-part of \
         the relative class group of every proper normal subextension is trivial"
    )
}

/// Combine faithful orbit shapes into the reported modulus. Uniform orbits
/// give `r*d`; mixed shapes fall back to the gcd of the `r*d` values, which
/// is the conservative conclusion.
fn combine_faithful(faithful: &[(usize, usize)]) -> (u64, bool) {
    debug_assert!(!faithful.is_empty());
    let uniform = faithful.iter().all(|s| s == &faithful[0]);
    let modulus = faithful
        .iter()
        .map(|&(d, r)| (d * r) as u64)
        .fold(0, gcd);
    (modulus, uniform)
}

fn table_for(g: &Group, p: u64) -> Result<crate::character::CharacterTable> {
    match g.family() {
        Some(spec) => character_table_family(spec, p),
        None => character_table_general(g, p),
    }
}

/// Rank-divisibility modulus of a group at p, from the faithful orbits of
/// its character table.
pub fn rank_modulus(g: &Group, p: u64) -> Result<RankOutcome> {
    let table = table_for(g, p)?;
    let orbits = galois_orbits(&table)?;
    let irr = fp_irreducibles(&table)?;
    let mut faithful: Vec<(usize, usize)> = orbits
        .iter()
        .filter(|o| o.faithful)
        .map(|o| (o.degree, o.r))
        .collect();
    faithful.sort_unstable();
    if faithful.is_empty() {
        return Ok(RankOutcome::NoFaithfulCharacter {
            group: g.name(),
            p,
        });
    }
    let (modulus, uniform) = combine_faithful(&faithful);
    // the modulus divides every faithful F_p-irreducible degree
    for e in irr.iter().filter(|e| e.faithful) {
        debug_assert_eq!(e.degree as u64 % modulus, 0);
    }
    Ok(RankOutcome::Constraint(RankConstraint {
        group: g.name(),
        p,
        faithful_orbits: faithful,
        uniform,
        modulus,
        hypothesis_note: hypothesis_note(p),
    }))
}

/// Closed-form modulus with the validity caveat for the conjectural
/// dihedral p = 2 case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormModulus {
    pub modulus: u64,
    /// Set when p = 2 on a dihedral family and 2^f ≡ +1 (mod n): in that
    /// case the divisibility is conjectural, since only the 2^f ≡ -1 case
    /// follows from the cyclic subgroup's action.
    pub p2_conjectural: bool,
}

/// Table of closed forms:
/// C_n -> f with p^f ≡ 1 (mod n); D_n -> 2f with p^f ≡ ±1 (mod n);
/// H_{4n} -> 2f with p^f ≡ ±1 (mod 2n); 16.08 -> 2f with p^f ≡ 1 (mod 4);
/// A_4 -> 3.
pub fn closed_form_modulus(spec: &FamilySpec, p: u64) -> Result<ClosedFormModulus> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let plain = |m: u64| ClosedFormModulus {
        modulus: m,
        p2_conjectural: false,
    };
    match spec {
        FamilySpec::Cyclic(n) => Ok(plain(mult_order(p, *n as u64)?)),
        FamilySpec::Dihedral(n) => {
            let pm = pm_order(p, *n as u64)?;
            if p == 2 {
                // proved only when the sign -1 is attained
                Ok(ClosedFormModulus {
                    modulus: 2 * pm.f,
                    p2_conjectural: pm.sign != -1,
                })
            } else {
                if 2 * *n as u64 % p == 0 {
                    return Err(Error::PrimeDividesOrder(p, 2 * *n as usize));
                }
                Ok(plain(2 * pm.f))
            }
        }
        FamilySpec::GeneralizedQuaternion(n) => {
            if p == 2 {
                return Err(Error::PrimeDividesOrder(p, 4 * *n as usize));
            }
            Ok(plain(2 * pm_order(p, 2 * *n as u64)?.f))
        }
        FamilySpec::Group16_08 => {
            if p == 2 {
                return Err(Error::PrimeDividesOrder(p, 16));
            }
            Ok(plain(2 * mult_order(p, 4)?))
        }
        FamilySpec::Alt4 => {
            if 12 % p == 0 {
                return Err(Error::PrimeDividesOrder(p, 12));
            }
            Ok(plain(3))
        }
        other => Err(Error::UnsupportedFamily(other.to_string())),
    }
}

/// Rank modulus for the non-normal odd-degree setting: f with
/// p^f ≡ ±1 (mod n), valid for p ∤ 2n, and for p = 2 exactly when the
/// sign -1 is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddDegreeModulus {
    pub f: u64,
    pub sign: i8,
    pub valid: bool,
}

pub fn corollary18_modulus(n: u64, p: u64) -> Result<OddDegreeModulus> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::ParamOutOfRange(format!(
            "odd degree n >= 3 required, got {n}"
        )));
    }
    let pm = pm_order(p, n)?;
    let valid = if p == 2 { pm.sign == -1 } else { p % 2 == 1 };
    Ok(OddDegreeModulus {
        f: pm.f,
        sign: pm.sign,
        valid,
    })
}

/// The order-16 specialization: 2 when p ≡ 1 (mod 4), 4 when p ≡ 3 (mod 4).
/// Cross-checked against both oracle routes for 16.08.
pub fn prop19_cor20_modulus(p: u64) -> Result<u64> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PrimeDividesOrder(2, 16));
    }
    let m = if p % 4 == 1 { 2 } else { 4 };
    debug_assert_eq!(
        m,
        closed_form_modulus(&FamilySpec::Group16_08, p)?.modulus
    );
    Ok(m)
}

/// True iff some E-irreducible character of `g` is faithful. For groups of
/// prime-power order this is cross-checked against cyclicity of the center.
pub fn has_faithful_irreducible(g: &Group, p: u64) -> Result<bool> {
    let table = table_for(g, p)?;
    let any = (0..table.rows().len())
        .any(|i| crate::character::character_kernel(&table, i).1);
    if is_prime_power(g.order()) {
        debug_assert_eq!(
            any,
            g.center().is_cyclic(g),
            "faithful irreducible iff cyclic center, for prime-power order"
        );
    }
    Ok(any)
}

pub(crate) fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            return n == 1;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus_of(spec: &FamilySpec, p: u64) -> u64 {
        let g = Group::from_family(spec).unwrap();
        rank_modulus(&g, p).unwrap().modulus().unwrap()
    }

    #[test]
    fn alt4_at_7_gives_three() {
        let g = Group::from_family(&FamilySpec::Alt4).unwrap();
        let out = rank_modulus(&g, 7).unwrap();
        match out {
            RankOutcome::Constraint(c) => {
                assert_eq!(c.modulus, 3);
                assert!(c.uniform);
                assert_eq!(c.faithful_orbits, vec![(3, 1)]);
            }
            _ => panic!("expected a constraint"),
        }
    }

    #[test]
    fn dihedral5_at_3_gives_four() {
        assert_eq!(modulus_of(&FamilySpec::Dihedral(5), 3), 4);
        assert_eq!(
            closed_form_modulus(&FamilySpec::Dihedral(5), 3)
                .unwrap()
                .modulus,
            4
        );
    }

    #[test]
    fn h8_at_3_gives_two() {
        assert_eq!(modulus_of(&FamilySpec::GeneralizedQuaternion(2), 3), 2);
    }

    #[test]
    fn cyclic5_at_11_gives_one() {
        assert_eq!(modulus_of(&FamilySpec::Cyclic(5), 11), 1);
        assert_eq!(
            closed_form_modulus(&FamilySpec::Cyclic(5), 11)
                .unwrap()
                .modulus,
            1
        );
    }

    #[test]
    fn group16_08_at_7_gives_four() {
        assert_eq!(modulus_of(&FamilySpec::Group16_08, 7), 4);
        assert_eq!(prop19_cor20_modulus(7).unwrap(), 4);
        assert_eq!(prop19_cor20_modulus(5).unwrap(), 2);
        assert_eq!(prop19_cor20_modulus(3).unwrap(), 4);
        assert_eq!(prop19_cor20_modulus(13).unwrap(), 2);
        assert!(prop19_cor20_modulus(2).is_err());
    }

    #[test]
    fn dihedral_p2_caveat_flag() {
        let m = closed_form_modulus(&FamilySpec::Dihedral(5), 2).unwrap();
        assert_eq!(m.modulus, 4); // 2^2 = 4 ≡ -1 (mod 5)
        assert!(!m.p2_conjectural); // sign -1 attained: proved case
        let m7 = closed_form_modulus(&FamilySpec::Dihedral(7), 2).unwrap();
        assert_eq!(m7.modulus, 6); // ord: 2^3 = 8 ≡ 1 (mod 7)
        assert!(m7.p2_conjectural); // sign +1: open case, flagged
    }

    #[test]
    fn corollary18_examples() {
        let a = corollary18_modulus(5, 3).unwrap();
        assert_eq!((a.f, a.valid), (2, true));
        let b = corollary18_modulus(5, 19).unwrap();
        assert_eq!((b.f, b.valid), (1, true));
        let c = corollary18_modulus(5, 2).unwrap();
        assert_eq!((c.f, c.sign, c.valid), (2, -1, true));
        assert!(corollary18_modulus(4, 3).is_err());
        assert!(corollary18_modulus(5, 5).is_err()); // p | n
    }

    #[test]
    fn klein_four_has_no_faithful() {
        let g = Group::from_family(&FamilySpec::KleinFour).unwrap();
        assert!(!has_faithful_irreducible(&g, 3).unwrap());
        assert!(matches!(
            rank_modulus(&g, 3).unwrap(),
            RankOutcome::NoFaithfulCharacter { .. }
        ));
    }

    #[test]
    fn cyclic8_and_h8_have_faithful() {
        let c8 = Group::from_family(&FamilySpec::Cyclic(8)).unwrap();
        assert!(has_faithful_irreducible(&c8, 3).unwrap());
        let h8 = Group::from_family(&FamilySpec::GeneralizedQuaternion(2)).unwrap();
        assert!(has_faithful_irreducible(&h8, 5).unwrap());
    }

    #[test]
    fn combine_handles_mixed_shapes() {
        // synthetic: faithful orbits of degrees 2*1 and 3*2 -> gcd 2, mixed
        let (m, uniform) = combine_faithful(&[(2, 1), (3, 2)]);
        assert_eq!(m, 2);
        assert!(!uniform);
        let (m, uniform) = combine_faithful(&[(2, 2), (2, 2)]);
        assert_eq!(m, 4);
        assert!(uniform);
    }

    #[test]
    fn unsupported_family_is_rejected() {
        assert!(matches!(
            closed_form_modulus(&FamilySpec::KleinFour, 3),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn untagged_tables_go_through_the_general_method() {
        // strip the family tag by serializing without it
        let d5 = Group::from_family(&FamilySpec::Dihedral(5)).unwrap();
        let rows: Vec<Vec<usize>> = (0..d5.order())
            .map(|i| (0..d5.order()).map(|j| d5.mul(i, j)).collect())
            .collect();
        let raw = Group::validate_cayley(rows).unwrap();
        assert!(raw.family().is_none());
        assert_eq!(rank_modulus(&raw, 3).unwrap().modulus(), Some(4));
    }

    #[test]
    fn modulus_depends_only_on_residue_class() {
        // pairs of primes congruent mod exp(G) give the same modulus
        for (spec, pair, exp) in [
            (FamilySpec::Cyclic(5), (11u64, 31u64), 5u64),
            (FamilySpec::Dihedral(5), (3, 13), 10),
            (FamilySpec::GeneralizedQuaternion(3), (5, 17), 12),
        ] {
            assert_eq!(pair.0 % exp, pair.1 % exp);
            assert_eq!(
                modulus_of(&spec, pair.0),
                modulus_of(&spec, pair.1),
                "{spec}"
            );
        }
    }
}
