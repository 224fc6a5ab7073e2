//! Character tables over the splitting field `E = F_p(zeta_exp(G))`,
//! Frobenius (Galois) conjugacy orbits, kernels/faithfulness, and the
//! recombination of orbits into `F_p`-irreducible characters.
//!
//! Named families get closed-form tables; [`character_table_general`] builds
//! the same table for an arbitrary Cayley table from the primitive central
//! idempotents of the group algebra, and the two routes are cross-checked in
//! the test suite. The integer degree of each character is carried alongside
//! its mod-p values: at small p the residue at the identity class does not
//! determine the degree.

pub mod brute;
pub mod general;

pub use brute::{brute_force_reps, Representation};
pub use general::character_table_general;

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::{build_splitting_field, FieldElement, FieldSpec};
use crate::group::{FamilySpec, Group, Subgroup};
use crate::{Error, Result};

/// One E-irreducible character: its integer degree and one value per
/// conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCharacter {
    pub degree: usize,
    pub values: Vec<FieldElement>,
}

/// A full character table over the canonical splitting field.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Group,
    field: FieldSpec,
    classes: Vec<Vec<usize>>,
    class_map: Vec<usize>,
    rows: Vec<SplitCharacter>,
}

/// A Frobenius orbit of table rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisOrbit {
    /// Row indices, ascending.
    pub members: Vec<usize>,
    /// Orbit size, equal to the degree of the value field over F_p.
    pub r: usize,
    /// Common integer degree of the members.
    pub degree: usize,
    pub faithful: bool,
}

/// An `F_p`-irreducible character: the orbit sum of a Galois orbit. All its
/// values lie in the prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpIrreducible {
    /// One value per conjugacy class, as prime-field residues.
    pub values: Vec<u64>,
    /// Integer degree `r * d`.
    pub degree: usize,
    pub faithful: bool,
}

impl CharacterTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn rows(&self) -> &[SplitCharacter] {
        &self.rows
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_map[element]
    }

    pub fn value(&self, row: usize, element: usize) -> &FieldElement {
        &self.rows[row].values[self.class_map[element]]
    }

    /// Identity-class index (always 0 by the class ordering).
    pub fn identity_class(&self) -> usize {
        self.class_map[self.group.identity()]
    }

    /// Byte-reproducible printout: header `group p E-degree`, then one row
    /// per character: integer degree, faithful flag, values as coefficient
    /// tuples.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.group.name(),
            self.field.p(),
            self.field.degree()
        );
        for i in 0..self.rows.len() {
            let (_, faithful) = character_kernel(self, i);
            let row = &self.rows[i];
            let vals: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(
                "{} {} {}\n",
                row.degree,
                if faithful { '+' } else { '-' },
                vals.join(" ")
            ));
        }
        out
    }

    /// Assemble from per-element value vectors, checking class constancy,
    /// row count, degree bookkeeping and the identity-class residue.
    pub(crate) fn from_element_rows(
        group: Group,
        field: FieldSpec,
        rows: Vec<(usize, Vec<FieldElement>)>,
    ) -> Result<CharacterTable> {
        let classes = group.conjugacy_classes();
        let class_map = group.class_map(&classes);
        let h = classes.len();
        if rows.len() != h {
            return Err(Error::DegenerateEigenbasis(format!(
                "{} rows for {} classes",
                rows.len(),
                h
            )));
        }
        let mut sum_sq = 0usize;
        let mut collapsed = Vec::with_capacity(h);
        for (degree, per_element) in rows {
            assert_eq!(per_element.len(), group.order());
            let mut values = Vec::with_capacity(h);
            for class in &classes {
                let v = &per_element[class[0]];
                for &x in class {
                    assert_eq!(
                        per_element[x], *v,
                        "character not constant on a conjugacy class"
                    );
                }
                values.push(v.clone());
            }
            assert!(degree * degree <= group.order(), "degree bound violated");
            assert_eq!(
                values[class_map[group.identity()]],
                field.from_int(degree as u64),
                "identity value must be the degree mod p"
            );
            sum_sq += degree * degree;
            collapsed.push(SplitCharacter { degree, values });
        }
        if sum_sq != group.order() {
            return Err(Error::DegenerateEigenbasis(format!(
                "sum of squared degrees {} != group order {}",
                sum_sq,
                group.order()
            )));
        }
        collapsed.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.values.cmp(&b.values)));
        Ok(CharacterTable {
            group,
            field,
            classes,
            class_map,
            rows: collapsed,
        })
    }
}

/// Kernel of a table row: the elements whose value equals the value at the
/// identity class. Returns the verified-normal subgroup and whether the
/// character is faithful.
pub fn character_kernel(table: &CharacterTable, row: usize) -> (Subgroup, bool) {
    let chi = &table.rows[row];
    let id_value = &chi.values[table.identity_class()];
    let members: Vec<usize> = (0..table.group.order())
        .filter(|&x| chi.values[table.class_map[x]] == *id_value)
        .collect();
    let sub = table
        .group
        .subgroup(members)
        .expect("character kernel must be a subgroup");
    assert!(sub.is_normal(&table.group), "character kernel must be normal");
    let faithful = sub.order() == 1;
    (sub, faithful)
}

/// Partition the rows of a table into orbits under the value-wise Frobenius
/// permutation. Each orbit's size is checked against the independently
/// computed degree of the field generated by a member's values.
pub fn galois_orbits(table: &CharacterTable) -> Result<Vec<GaloisOrbit>> {
    let field = &table.field;
    let n = table.rows.len();
    let mut image = vec![usize::MAX; n];
    for (i, row) in table.rows.iter().enumerate() {
        let mapped: Vec<FieldElement> = row.values.iter().map(|v| field.frobenius(v)).collect();
        let target = table
            .rows
            .iter()
            .position(|r| r.degree == row.degree && r.values == mapped)
            .ok_or(Error::OrbitClosure(i))?;
        image[i] = target;
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = start;
        loop {
            members.push(cur);
            seen[cur] = true;
            cur = image[cur];
            if cur == start {
                break;
            }
            assert!(!seen[cur], "Frobenius action is not a permutation");
        }
        members.sort_unstable();
        let r = members.len();
        // orbit size must equal the value-field degree, computed independently
        let value_field_degree = table.rows[members[0]]
            .values
            .iter()
            .map(|v| field.subfield_degree(v))
            .fold(1usize, lcm);
        assert_eq!(
            r, value_field_degree,
            "orbit size must equal the degree of the field of values"
        );
        let degree = table.rows[members[0]].degree;
        let flags: Vec<bool> = members
            .iter()
            .map(|&i| character_kernel(table, i).1)
            .collect();
        assert!(
            flags.iter().all(|&f| f == flags[0]),
            "faithfulness must be constant on a Galois orbit"
        );
        for &i in &members {
            assert_eq!(table.rows[i].degree, degree, "orbit degrees must agree");
        }
        orbits.push(GaloisOrbit {
            members,
            r,
            degree,
            faithful: flags[0],
        });
    }
    orbits.sort_by_key(|o| o.members[0]);
    Ok(orbits)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Sum each Galois orbit into an `F_p`-irreducible character of degree
/// `orbit size * member degree`.
pub fn fp_irreducibles(table: &CharacterTable) -> Result<Vec<FpIrreducible>> {
    let orbits = galois_orbits(table)?;
    let field = &table.field;
    let h = table.classes.len();
    let mut out = Vec::with_capacity(orbits.len());
    for (oi, orbit) in orbits.iter().enumerate() {
        let mut values = Vec::with_capacity(h);
        for k in 0..h {
            let mut acc = field.zero();
            for &row in &orbit.members {
                acc = field.add(&acc, &table.rows[row].values[k]);
            }
            if !acc.is_prime_field() {
                return Err(Error::OrbitSumNotPrimeField(oi));
            }
            values.push(acc.coeffs()[0]);
        }
        out.push(FpIrreducible {
            values,
            degree: orbit.r * orbit.degree,
            faithful: orbit.faithful,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// closed-form family tables
// ---------------------------------------------------------------------------

static FAMILY_CACHE: OnceLock<Mutex<HashMap<(String, u64), Arc<CharacterTable>>>> =
    OnceLock::new();
static GENERAL_CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<CharacterTable>>>> = OnceLock::new();

pub(crate) fn table_hash(g: &Group) -> u64 {
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    g.order().hash(&mut hasher);
    for i in 0..g.order() {
        for j in 0..g.order() {
            g.mul(i, j).hash(&mut hasher);
        }
    }
    hasher.finish()
}

pub(crate) fn general_cache_get(key: (u64, u64)) -> Option<CharacterTable> {
    let cache = GENERAL_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    cache.lock().unwrap().get(&key).map(|t| (**t).clone())
}

pub(crate) fn general_cache_put(key: (u64, u64), table: &CharacterTable) {
    let cache = GENERAL_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    cache.lock().unwrap().insert(key, Arc::new(table.clone()));
}

/// Closed-form character table of a named family over `F_p(zeta_exp(G))`.
pub fn character_table_family(spec: &FamilySpec, p: u64) -> Result<CharacterTable> {
    let key = (spec.to_string(), p);
    let cache = FAMILY_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok((**t).clone());
    }
    let group = Group::from_family(spec)?;
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if group.order() as u64 % p == 0 {
        return Err(Error::PrimeDividesOrder(p, group.order()));
    }
    let exponent = group.exponent() as u64;
    let field = build_splitting_field(p, exponent)?;
    let rows = family_element_rows(spec, &group, &field)?;
    let table = CharacterTable::from_element_rows(group, field, rows)?;
    cache.lock().unwrap().insert(key, Arc::new(table.clone()));
    Ok(table)
}

/// `zeta_k` inside the table field: requires `k | root order`.
fn nth_root(field: &FieldSpec, k: u64) -> FieldElement {
    assert!(k >= 1 && field.root_order() % k == 0, "k must divide exp(G)");
    field.pow(field.zeta(), (field.root_order() / k) as u128)
}

fn zeta_pow(field: &FieldSpec, zeta_k: &FieldElement, e: i64, k: u64) -> FieldElement {
    let e = e.rem_euclid(k as i64) as u128;
    field.pow(zeta_k, e)
}

/// Per-element value vectors for each irreducible character of the family.
fn family_element_rows(
    spec: &FamilySpec,
    group: &Group,
    field: &FieldSpec,
) -> Result<Vec<(usize, Vec<FieldElement>)>> {
    match spec {
        FamilySpec::Cyclic(n) => Ok(cyclic_rows(*n as u64, group, field)),
        FamilySpec::Dihedral(n) => Ok(dihedral_rows(*n as u64, group, field)),
        FamilySpec::GeneralizedQuaternion(n) => Ok(quaternion_rows(*n as u64, group, field)),
        FamilySpec::KleinFour => {
            // structurally C2 x C2 with the same Cayley table
            let c2 = FamilySpec::Cyclic(2);
            let prod = FamilySpec::DirectProduct(Box::new(c2.clone()), Box::new(c2));
            family_element_rows(&prod, group, field)
        }
        FamilySpec::Alt4 => Ok(alt4_rows(group, field)),
        FamilySpec::Group16_08 => group_16_08_rows(group, field),
        FamilySpec::DirectProduct(a, b) => {
            let ga = Group::from_family(a)?;
            let gb = Group::from_family(b)?;
            let ra = family_element_rows(a, &ga, field)?;
            let rb = family_element_rows(b, &gb, field)?;
            let nb = gb.order();
            let mut rows = Vec::with_capacity(ra.len() * rb.len());
            for (da, va) in &ra {
                for (db, vb) in &rb {
                    let mut vals = Vec::with_capacity(group.order());
                    for x in 0..group.order() {
                        vals.push(field.mul(&va[x / nb], &vb[x % nb]));
                    }
                    rows.push((da * db, vals));
                }
            }
            Ok(rows)
        }
    }
}

/// chi_j(a^k) = zeta_n^{jk}.
fn cyclic_rows(n: u64, group: &Group, field: &FieldSpec) -> Vec<(usize, Vec<FieldElement>)> {
    let zeta = nth_root(field, n);
    (0..n)
        .map(|j| {
            let values = (0..group.order())
                .map(|k| zeta_pow(field, &zeta, (j * k as u64) as i64, n))
                .collect();
            (1, values)
        })
        .collect()
}

/// Linear characters of D_n (two for odd n, four for even), plus
/// psi_j(a^k) = zeta_n^{jk} + zeta_n^{-jk} vanishing on reflections.
fn dihedral_rows(n: u64, group: &Group, field: &FieldSpec) -> Vec<(usize, Vec<FieldElement>)> {
    let nn = n as usize;
    let zeta = nth_root(field, n);
    let one = field.one();
    let minus_one = field.neg(&one);
    let decode = |idx: usize| crate::group::dihedral_decode(idx, nn);
    let mut rows: Vec<(usize, Vec<FieldElement>)> = Vec::new();

    // trivial and reflection-sign characters
    rows.push((1, vec![one.clone(); group.order()]));
    rows.push((
        1,
        (0..group.order())
            .map(|i| {
                let (_, e) = decode(i);
                if e == 0 {
                    one.clone()
                } else {
                    minus_one.clone()
                }
            })
            .collect(),
    ));
    if n % 2 == 0 {
        for b_sign in [1i64, -1] {
            rows.push((
                1,
                (0..group.order())
                    .map(|i| {
                        let (k, e) = decode(i);
                        let mut v = if k % 2 == 0 { one.clone() } else { minus_one.clone() };
                        if e == 1 && b_sign < 0 {
                            v = field.neg(&v);
                        }
                        v
                    })
                    .collect(),
            ));
        }
    }
    let jmax = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    for j in 1..=jmax {
        rows.push((
            2,
            (0..group.order())
                .map(|i| {
                    let (k, e) = decode(i);
                    if e == 1 {
                        field.zero()
                    } else {
                        let jk = (j * k as u64) as i64;
                        field.add(
                            &zeta_pow(field, &zeta, jk, n),
                            &zeta_pow(field, &zeta, -jk, n),
                        )
                    }
                })
                .collect(),
        ));
    }
    rows
}

/// Linear characters of H_{4n} via its abelianization ((2,2) for even n,
/// C_4 for odd n) and psi_j(a^k) = zeta_{2n}^{jk} + zeta_{2n}^{-jk},
/// vanishing on the b-cosets.
fn quaternion_rows(n: u64, group: &Group, field: &FieldSpec) -> Vec<(usize, Vec<FieldElement>)> {
    let nn = n as usize;
    let two_n = 2 * n;
    let zeta = nth_root(field, two_n);
    let one = field.one();
    let minus_one = field.neg(&one);
    let decode = |idx: usize| crate::group::quaternion_decode(idx, nn);
    let mut rows: Vec<(usize, Vec<FieldElement>)> = Vec::new();

    if n % 2 == 0 {
        for a_sign in [1i64, -1] {
            for b_sign in [1i64, -1] {
                rows.push((
                    1,
                    (0..group.order())
                        .map(|i| {
                            let (k, e) = decode(i);
                            let mut s = 1i64;
                            if a_sign < 0 && k % 2 == 1 {
                                s = -s;
                            }
                            if b_sign < 0 && e == 1 {
                                s = -s;
                            }
                            if s > 0 {
                                one.clone()
                            } else {
                                minus_one.clone()
                            }
                        })
                        .collect(),
                ));
            }
        }
    } else {
        // abelianization C4 generated by the image of b, with a = b^2
        let i_root = nth_root(field, 4);
        for t in 0..4u64 {
            rows.push((
                1,
                (0..group.order())
                    .map(|idx| {
                        let (k, e) = decode(idx);
                        let exp = (t * (2 * k as u64 + e as u64)) as i64;
                        zeta_pow(field, &i_root, exp, 4)
                    })
                    .collect(),
            ));
        }
    }
    for j in 1..n {
        rows.push((
            2,
            (0..group.order())
                .map(|idx| {
                    let (k, e) = decode(idx);
                    if e == 1 {
                        field.zero()
                    } else {
                        let jk = (j * k as u64) as i64;
                        field.add(
                            &zeta_pow(field, &zeta, jk, two_n),
                            &zeta_pow(field, &zeta, -jk, two_n),
                        )
                    }
                })
                .collect(),
        ));
    }
    rows
}

/// The A_4 table: three linear characters lifted from A_4/V_4 and the
/// degree-3 character (3, -1, 0, 0).
fn alt4_rows(group: &Group, field: &FieldSpec) -> Vec<(usize, Vec<FieldElement>)> {
    let rho = nth_root(field, 3);
    let one = field.one();
    let mut rows: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for t in 0..3u64 {
        rows.push((
            1,
            (0..group.order())
                .map(|idx| {
                    let block = (idx / 4) as u64;
                    zeta_pow(field, &rho, (t * block) as i64, 3)
                })
                .collect(),
        ));
    }
    rows.push((
        3,
        (0..group.order())
            .map(|idx| {
                if idx == 0 {
                    field.from_int(3)
                } else if idx < 4 {
                    field.neg(&one)
                } else {
                    field.zero()
                }
            })
            .collect(),
    ));
    rows
}

/// 16.08: eight linear characters read off sign-exponent vectors over a
/// Burnside generating set, and the two conjugate faithful degree-2
/// characters from the explicit matrix model (quaternion units and
/// i * identity over E).
fn group_16_08_rows(
    group: &Group,
    field: &FieldSpec,
) -> Result<Vec<(usize, Vec<FieldElement>)>> {
    let gens = group.generating_set();
    if gens.len() != 3 {
        return Err(Error::DegenerateEigenbasis(format!(
            "expected a rank-3 generating set for 16.08, found {}",
            gens.len()
        )));
    }
    // BFS assignment of exponent vectors in F_2^3; a conflict would mean the
    // generator images fail to be a basis of the abelianization
    let n = group.order();
    let mut vec_of: Vec<Option<u8>> = vec![None; n];
    vec_of[group.identity()] = Some(0);
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        let vx = vec_of[x].unwrap();
        for (gi, &s) in gens.iter().enumerate() {
            let y = group.mul(x, s);
            let vy = vx ^ (1 << gi);
            match vec_of[y] {
                None => {
                    vec_of[y] = Some(vy);
                    frontier.push(y);
                }
                Some(existing) => {
                    if existing != vy {
                        return Err(Error::DegenerateEigenbasis(
                            "generating set is not independent modulo squares".into(),
                        ));
                    }
                }
            }
        }
    }
    let one = field.one();
    let minus_one = field.neg(&one);
    let mut rows: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for eps in 0..8u8 {
        rows.push((
            1,
            (0..n)
                .map(|x| {
                    let v = vec_of[x].expect("generators reach every element");
                    if (v & eps).count_ones() % 2 == 0 {
                        one.clone()
                    } else {
                        minus_one.clone()
                    }
                })
                .collect(),
        ));
    }
    // matrix model through the central-product construction
    let (model, reps) = crate::group::group16_08_with_reps()?;
    assert_eq!(model.order(), n);
    for i in 0..n {
        for j in 0..n {
            assert_eq!(model.mul(i, j), group.mul(i, j), "construction mismatch");
        }
    }
    let i_root = nth_root(field, 4);
    for conj in [1u64, 3] {
        // psi uses i, psi' uses i^3 = -i
        let iu = field.pow(&i_root, conj as u128);
        rows.push((
            2,
            (0..n)
                .map(|x| {
                    let rep = reps[x];
                    let (q, c) = (rep / 4, rep % 4);
                    let (k, e) = crate::group::quaternion_decode(q, 2);
                    if e == 1 {
                        field.zero()
                    } else {
                        // trace of diag(i^k, (-i)^k) times i^c
                        let t = field.add(
                            &field.pow(&iu, k as u128),
                            &field.pow(&field.neg(&iu), k as u128),
                        );
                        field.mul(&t, &field.pow(&iu, c as u128))
                    }
                })
                .collect(),
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alt4_at_7_matches_printed_table() {
        let t = character_table_family(&FamilySpec::Alt4, 7).unwrap();
        let degrees: Vec<usize> = t.rows().iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 1, 3]);
        // the degree-3 row reads (3, -1, 0, 0) in F_7
        let row3 = &t.rows()[3];
        let f = t.field();
        assert_eq!(
            row3.values,
            vec![f.from_int(3), f.from_int(6), f.zero(), f.zero()]
        );
        // and it is the only faithful row
        let faithful: Vec<bool> = (0..4).map(|i| character_kernel(&t, i).1).collect();
        assert_eq!(faithful, vec![false, false, false, true]);
    }

    #[test]
    fn trivial_group_has_single_trivial_character() {
        let t = character_table_family(&FamilySpec::Cyclic(1), 5).unwrap();
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.rows()[0].degree, 1);
        let (k, faithful) = character_kernel(&t, 0);
        assert_eq!(k.order(), 1);
        assert!(faithful);
    }

    #[test]
    fn cyclic_faithful_iff_unit_index() {
        let t = character_table_family(&FamilySpec::Cyclic(12), 7).unwrap();
        // recover j for each row from the value at the class of a^1
        let f = t.field();
        let zeta = nth_root(f, 12);
        for (i, row) in t.rows().iter().enumerate() {
            let v = &row.values[t.class_of(1)];
            let j = (0..12u64)
                .find(|&j| *v == f.pow(&zeta, j as u128))
                .expect("value is a power of zeta");
            let (_, faithful) = character_kernel(&t, i);
            assert_eq!(faithful, crate::field::gcd(j, 12) == 1, "j = {j}");
        }
    }

    #[test]
    fn rejects_p_dividing_order() {
        assert!(matches!(
            character_table_family(&FamilySpec::Alt4, 3),
            Err(Error::PrimeDividesOrder(3, 12))
        ));
    }

    #[test]
    fn c5_at_2_has_one_big_orbit() {
        let t = character_table_family(&FamilySpec::Cyclic(5), 2).unwrap();
        let orbits = galois_orbits(&t).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.r).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4]);
        let irr = fp_irreducibles(&t).unwrap();
        let mut degs: Vec<usize> = irr.iter().map(|e| e.degree).collect();
        degs.sort_unstable();
        // mirrors x^5 - 1 = (x + 1)(x^4 + x^3 + x^2 + x + 1) over F_2
        assert_eq!(degs, vec![1, 4]);
    }

    #[test]
    fn d5_at_3_faithful_rows_form_one_orbit_of_size_two() {
        let t = character_table_family(&FamilySpec::Dihedral(5), 3).unwrap();
        let orbits = galois_orbits(&t).unwrap();
        let faithful: Vec<&GaloisOrbit> = orbits.iter().filter(|o| o.faithful).collect();
        assert_eq!(faithful.len(), 1);
        assert_eq!(faithful[0].r, 2);
        assert_eq!(faithful[0].degree, 2);
    }

    #[test]
    fn prime_field_values_mean_singleton_orbits() {
        // D4 at p = 7: all character values are 0, ±1, ±2
        let t = character_table_family(&FamilySpec::Dihedral(4), 7).unwrap();
        let orbits = galois_orbits(&t).unwrap();
        assert!(orbits.iter().all(|o| o.r == 1));
    }

    #[test]
    fn alt4_faithful_fp_irreducible_has_degree_three() {
        for p in [5u64, 7, 11, 13] {
            let t = character_table_family(&FamilySpec::Alt4, p).unwrap();
            let irr = fp_irreducibles(&t).unwrap();
            let faithful: Vec<&FpIrreducible> = irr.iter().filter(|e| e.faithful).collect();
            assert_eq!(faithful.len(), 1, "p = {p}");
            assert_eq!(faithful[0].degree, 3, "p = {p}");
        }
    }

    #[test]
    fn group_16_08_table_shape() {
        let t = character_table_family(&FamilySpec::Group16_08, 5).unwrap();
        let mut degrees: Vec<usize> = t.rows().iter().map(|r| r.degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
        // both degree-2 rows are faithful; at p = 5 their values already lie
        // in the prime field since 5 ≡ 1 (mod 4)
        for (i, row) in t.rows().iter().enumerate() {
            let (_, faithful) = character_kernel(&t, i);
            assert_eq!(faithful, row.degree == 2);
            if row.degree == 2 {
                assert!(row.values.iter().all(|v| v.is_prime_field()));
            }
        }
        let orbits = galois_orbits(&t).unwrap();
        assert!(orbits.iter().all(|o| o.r == 1));
    }

    #[test]
    fn group_16_08_at_7_degree2_values_generate_f49() {
        let t = character_table_family(&FamilySpec::Group16_08, 7).unwrap();
        let orbits = galois_orbits(&t).unwrap();
        let faithful: Vec<&GaloisOrbit> = orbits.iter().filter(|o| o.faithful).collect();
        // 7 ≡ 3 (mod 4): psi and psi' are Frobenius conjugate, one orbit
        assert_eq!(faithful.len(), 1);
        assert_eq!(faithful[0].r, 2);
        assert_eq!(faithful[0].degree, 2);
    }

    #[test]
    fn render_is_deterministic() {
        let a = character_table_family(&FamilySpec::Dihedral(5), 3)
            .unwrap()
            .render();
        let b = character_table_family(&FamilySpec::Dihedral(5), 3)
            .unwrap()
            .render();
        assert_eq!(a, b);
        // exp(D5) = 10 and ord_10(3) = 4
        assert!(a.starts_with("D5 3 4\n"));
    }

    #[test]
    fn klein_four_tensor_table() {
        let t = character_table_family(&FamilySpec::KleinFour, 3).unwrap();
        assert_eq!(t.rows().len(), 4);
        assert!(t.rows().iter().all(|r| r.degree == 1));
        // no faithful character: the center is not cyclic
        assert!((0..4).all(|i| !character_kernel(&t, i).1));
    }
}
