//! Finite groups as validated Cayley tables.
//!
//! Groups are extensional: a table of element indices whose Latin-square,
//! identity, inverse and associativity properties are verified on
//! construction (exhaustively up to order 64, by deterministic sampling
//! above). Named families carry a [`FamilySpec`] tag so the character
//! machinery can use closed formulas; equality of elements is by index and
//! labels are display plumbing only.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Order bound for exhaustive checks and subgroup enumeration.
pub const EXHAUSTIVE_BOUND: usize = 64;

/// Named group families with their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// C_n, order n, n >= 1
    Cyclic(u32),
    /// D_n, order 2n, n >= 3
    Dihedral(u32),
    /// H_{4n} = <a, b : a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}>, order 4n, n >= 2
    GeneralizedQuaternion(u32),
    /// C_2 x C_2
    KleinFour,
    /// A_4, order 12
    Alt4,
    /// The order-16 group 16.08, realized as the central product
    /// (Q_8 x C_4) / <(-1, c^2)>
    Group16_08,
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Cyclic(n) => *n as usize,
            FamilySpec::Dihedral(n) => 2 * *n as usize,
            FamilySpec::GeneralizedQuaternion(n) => 4 * *n as usize,
            FamilySpec::KleinFour => 4,
            FamilySpec::Alt4 => 12,
            FamilySpec::Group16_08 => 16,
            FamilySpec::DirectProduct(a, b) => a.order() * b.order(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Cyclic(n) if *n < 1 => {
                Err(Error::ParamOutOfRange("Cyclic(n) needs n >= 1".into()))
            }
            FamilySpec::Dihedral(n) if *n < 3 => {
                Err(Error::ParamOutOfRange("Dihedral(n) needs n >= 3".into()))
            }
            FamilySpec::GeneralizedQuaternion(n) if *n < 2 => Err(Error::ParamOutOfRange(
                "GeneralizedQuaternion(n) needs n >= 2".into(),
            )),
            FamilySpec::DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Shorthand used by the CLI: `C12`, `D5`, `H8`, `V4`, `A4`, `G16_8`,
    /// and `x`-joined direct products such as `C2xH8`.
    pub fn parse_shorthand(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        if let Some((left, right)) = split_product(s) {
            let a = FamilySpec::parse_shorthand(left)?;
            let b = FamilySpec::parse_shorthand(right)?;
            return Ok(FamilySpec::DirectProduct(Box::new(a), Box::new(b)));
        }
        let spec = match s {
            "V4" => FamilySpec::KleinFour,
            "A4" => FamilySpec::Alt4,
            "G16_8" | "G16.8" | "16.08" => FamilySpec::Group16_08,
            _ => {
                let (head, num) = s.split_at(1);
                let n: u32 = num
                    .parse()
                    .map_err(|_| Error::ParamOutOfRange(format!("bad family shorthand {s:?}")))?;
                match head {
                    "C" => FamilySpec::Cyclic(n),
                    "D" => FamilySpec::Dihedral(n),
                    "H" => {
                        if n % 4 != 0 {
                            return Err(Error::ParamOutOfRange(format!(
                                "H{n}: generalized quaternion order must be divisible by 4"
                            )));
                        }
                        FamilySpec::GeneralizedQuaternion(n / 4)
                    }
                    _ => {
                        return Err(Error::ParamOutOfRange(format!(
                            "unknown family shorthand {s:?}"
                        )))
                    }
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn split_product(s: &str) -> Option<(&str, &str)> {
    // split at a top-level 'x' that separates two family tokens
    for (i, ch) in s.char_indices() {
        if ch == 'x' && i > 0 && i + 1 < s.len() {
            return Some((&s[..i], &s[i + 1..]));
        }
    }
    None
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "C{n}"),
            FamilySpec::Dihedral(n) => write!(f, "D{n}"),
            FamilySpec::GeneralizedQuaternion(n) => write!(f, "H{}", 4 * n),
            FamilySpec::KleinFour => write!(f, "V4"),
            FamilySpec::Alt4 => write!(f, "A4"),
            FamilySpec::Group16_08 => write!(f, "G16_8"),
            FamilySpec::DirectProduct(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// A finite group given by its Cayley table. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    family: Option<FamilySpec>,
}

/// A subgroup as a sorted member list; operations take the parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self, g: &Group) -> bool {
        for &h in &self.members {
            for x in 0..g.order {
                let conj = g.mul(g.mul(x, h), g.inv(x));
                if !self.contains(conj) {
                    return false;
                }
            }
        }
        true
    }

    /// Decidable by element-order scan.
    pub fn is_cyclic(&self, g: &Group) -> bool {
        self.members
            .iter()
            .any(|&x| g.element_order(x) == self.members.len())
    }
}

/// Results of [`Group::subgroup_analysis`].
#[derive(Debug, Clone)]
pub struct SubgroupAnalysis {
    pub center: Subgroup,
    pub commutator: Subgroup,
    pub exponent: usize,
    pub normal_subgroups: Vec<Subgroup>,
    /// Invariant factors of G / G', largest first.
    pub abelianization: Vec<u64>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self) -> String {
        match &self.family {
            Some(spec) => spec.to_string(),
            None => format!("G{}", self.order),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |acc, x| lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    // -- construction --------------------------------------------------

    /// Build a named family as a validated group.
    pub fn from_family(spec: &FamilySpec) -> Result<Group> {
        spec.validate()?;
        let g = match spec {
            FamilySpec::Cyclic(n) => build_cyclic(*n as usize),
            FamilySpec::Dihedral(n) => build_dihedral(*n as usize),
            FamilySpec::GeneralizedQuaternion(n) => build_quaternion(*n as usize),
            FamilySpec::KleinFour => {
                let c2 = FamilySpec::Cyclic(2);
                let mut g = Group::from_family(&FamilySpec::DirectProduct(
                    Box::new(c2.clone()),
                    Box::new(c2),
                ))?;
                g.labels = vec!["1".into(), "y".into(), "x".into(), "xy".into()];
                g
            }
            FamilySpec::Alt4 => build_alt4(),
            FamilySpec::Group16_08 => build_group_16_08()?,
            FamilySpec::DirectProduct(a, b) => {
                let ga = Group::from_family(a)?;
                let gb = Group::from_family(b)?;
                direct_product(&ga, &gb)
            }
        };
        let mut g = Group::validate_cayley_with(
            g.table_rows(),
            Some(g.labels.clone()),
            Some(spec.clone()),
        )?;
        g.family = Some(spec.clone());
        Ok(g)
    }

    fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    /// Validate a raw index matrix into a group. Latin-square, identity,
    /// inverse and associativity failures are reported distinctly.
    pub fn validate_cayley(table: Vec<Vec<usize>>) -> Result<Group> {
        Group::validate_cayley_with(table, None, None)
    }

    fn validate_cayley_with(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        family: Option<FamilySpec>,
    ) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotLatinSquare("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatinSquare(format!(
                    "row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            flat.extend_from_slice(row);
        }
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(Error::NotLatinSquare(format!(
                "entry {bad} outside 0..{n}"
            )));
        }
        // Latin square: every row and column is a permutation
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let v = flat[i * n + j];
                if seen[v] {
                    return Err(Error::NotLatinSquare(format!(
                        "row {i} repeats entry {v}"
                    )));
                }
                seen[v] = true;
            }
            let mut seen = vec![false; n];
            for j in 0..n {
                let v = flat[j * n + i];
                if seen[v] {
                    return Err(Error::NotLatinSquare(format!(
                        "column {i} repeats entry {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        // two-sided identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or(Error::NoIdentity)?;
        // associativity: exhaustive up to the bound, seeded sampling above
        if n <= EXHAUSTIVE_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b];
                    for c in 0..n {
                        if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                            return Err(Error::NonAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e3779b97f4a7c15;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize % n
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                let ab = flat[a * n + b];
                if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                    return Err(Error::NonAssociative(a, b, c));
                }
            }
        }
        // two-sided inverses
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let r = (0..n).find(|&b| flat[a * n + b] == identity && flat[b * n + a] == identity);
            inverses[a] = r.ok_or(Error::NoInverse(a))?;
        }
        let labels =
            labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect::<Vec<_>>());
        if labels.len() != n {
            return Err(Error::NotLatinSquare("label count mismatch".into()));
        }
        Ok(Group {
            order: n,
            table: flat,
            identity,
            inverses,
            labels,
            family,
        })
    }

    // -- structure ------------------------------------------------------

    /// Conjugacy classes: identity class first, the rest sorted by their
    /// minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class = BTreeSet::new();
            for g in 0..self.order {
                class.insert(self.conjugate(g, x));
            }
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        classes.sort_by_key(|c| (c[0] != self.identity, c[0]));
        classes
    }

    /// Index of the conjugacy class (in [`Self::conjugacy_classes`] order)
    /// containing each element.
    pub fn class_map(&self, classes: &[Vec<usize>]) -> Vec<usize> {
        let mut map = vec![0; self.order];
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                map[x] = k;
            }
        }
        map
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup { members }
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut gens = BTreeSet::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(
                    self.mul(self.mul(a, b), self.inv(a)),
                    self.inv(b),
                );
                gens.insert(c);
            }
        }
        self.subgroup_closure(gens.into_iter().collect())
    }

    /// Closure of a generating set into a subgroup.
    pub fn subgroup_closure(&self, gens: Vec<usize>) -> Subgroup {
        let mut members = BTreeSet::new();
        members.insert(self.identity);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if members.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        Subgroup {
            members: members.into_iter().collect(),
        }
    }

    /// Construct a subgroup after checking identity/closure/inverses.
    pub fn subgroup(&self, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup { members };
        if !s.contains(self.identity) {
            return Err(Error::NoIdentity);
        }
        for &a in &s.members {
            if !s.contains(self.inv(a)) {
                return Err(Error::NoInverse(a));
            }
            for &b in &s.members {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotLatinSquare(format!(
                        "subgroup not closed at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(s)
    }

    /// All subgroups, enumerated by breadth-first closure growth.
    /// Errors above [`EXHAUSTIVE_BOUND`].
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order > EXHAUSTIVE_BOUND {
            return Err(Error::BoundExceeded(format!(
                "subgroup enumeration capped at order {EXHAUSTIVE_BOUND}, group has {}",
                self.order
            )));
        }
        let trivial = Subgroup {
            members: vec![self.identity],
        };
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(trivial.members.clone());
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            for x in 0..self.order {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.members.clone();
                gens.push(x);
                let k = self.subgroup_closure(gens);
                if all.insert(k.members.clone()) {
                    queue.push(k);
                }
            }
        }
        Ok(all
            .into_iter()
            .map(|members| Subgroup { members })
            .collect())
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self
            .all_subgroups()?
            .into_iter()
            .filter(|s| s.is_normal(self))
            .collect())
    }

    /// Center, commutator subgroup, exponent, normal subgroups and the
    /// invariant factors of the abelianization, in one report.
    pub fn subgroup_analysis(&self) -> Result<SubgroupAnalysis> {
        let commutator = self.commutator_subgroup();
        let quotient = self.quotient(&commutator)?;
        Ok(SubgroupAnalysis {
            center: self.center(),
            commutator,
            exponent: self.exponent(),
            normal_subgroups: self.normal_subgroups()?,
            abelianization: quotient.abelian_invariants(),
        })
    }

    /// Quotient by a normal subgroup; labels record coset representatives.
    pub fn quotient(&self, n: &Subgroup) -> Result<Group> {
        if !n.is_normal(self) {
            return Err(Error::NotNormal);
        }
        // cosets keyed and ordered by their minimal element
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &h in &n.members {
                coset_of[self.mul(x, h)] = idx;
            }
        }
        let q = reps.len();
        let mut table = vec![vec![0usize; q]; q];
        for i in 0..q {
            for j in 0..q {
                table[i][j] = coset_of[self.mul(reps[i], reps[j])];
            }
        }
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        Group::validate_cayley_with(table, Some(labels), None)
    }

    /// Like [`Self::quotient`] but also returns the representative element
    /// of each coset. Used by constructions that need to decode cosets.
    pub fn quotient_with_reps(&self, n: &Subgroup) -> Result<(Group, Vec<usize>)> {
        if !n.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &h in &n.members {
                coset_of[self.mul(x, h)] = idx;
            }
        }
        let g = self.quotient(n)?;
        Ok((g, reps))
    }

    /// Invariant factors (largest first, divisibility chain) of an abelian
    /// group, derived from the element-order profile one prime at a time.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        assert!(self.is_abelian(), "abelian_invariants needs an abelian group");
        if self.order == 1 {
            return vec![1];
        }
        let orders: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        let mut per_prime: Vec<Vec<u64>> = Vec::new();
        let mut n = self.order as u64;
        let mut primes = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        for &p in &primes {
            // s_k = log_p #{x : x^{p^k} = e}; the increments s_k - s_{k-1}
            // count cyclic factors of exponent >= k
            let mut counts = Vec::new();
            let mut prev_s = 0u32;
            let mut pk = p;
            loop {
                let count = orders
                    .iter()
                    .filter(|&&o| pk % (o as u64) == 0)
                    .count() as u64;
                let mut s = 0u32;
                let mut c = count;
                while c > 1 {
                    assert_eq!(c % p, 0, "order count not a power of p");
                    c /= p;
                    s += 1;
                }
                if s == prev_s {
                    break;
                }
                counts.push(s - prev_s);
                prev_s = s;
                pk = pk.saturating_mul(p);
            }
            // counts[k-1] = #{i : e_i >= k}; conjugate partition gives e_i
            let mut exps = Vec::new();
            if let Some(&max_factors) = counts.first() {
                for i in 0..max_factors {
                    let e = counts.iter().filter(|&&c| c > i).count() as u32;
                    exps.push(e);
                }
            }
            per_prime.push(exps.iter().map(|&e| {
                let mut v = 1u64;
                for _ in 0..e {
                    v *= p;
                }
                v
            }).collect());
        }
        let rank = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = Vec::new();
        for i in 0..rank {
            let mut f = 1u64;
            for pp in &per_prime {
                f *= pp.get(i).copied().unwrap_or(1);
            }
            factors.push(f);
        }
        factors
    }

    /// Greedy irredundant generating set: scan elements in index order and
    /// keep those that enlarge the running closure.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = Subgroup {
            members: vec![self.identity],
        };
        for x in 0..self.order {
            if have.contains(x) {
                continue;
            }
            gens.push(x);
            let mut g = gens.clone();
            g.sort_unstable();
            have = self.subgroup_closure(g);
            if have.order() == self.order {
                break;
            }
        }
        gens
    }

    // -- serialization ----------------------------------------------------

    /// Text format: the order on the first line, an optional
    /// `# family: ...` comment, then the table rows of space-separated
    /// indices. The parser accepts comment lines anywhere.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.order));
        if let Some(f) = &self.family {
            out.push_str(&format!("# family: {f}\n"));
        }
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.mul(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Group> {
        let mut family = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut order: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(f) = rest.strip_prefix("family:") {
                    family = FamilySpec::parse_shorthand(f.trim()).ok();
                }
                continue;
            }
            if order.is_none() {
                order = Some(line.parse::<usize>().map_err(|e| {
                    Error::Parse(lineno + 1, format!("bad order line: {e}"))
                })?);
                continue;
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(lineno + 1, format!("bad index {t:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        let order = order.ok_or_else(|| Error::Parse(0, "missing order line".into()))?;
        if rows.len() != order {
            return Err(Error::Parse(
                0,
                format!("expected {order} rows, found {}", rows.len()),
            ));
        }
        let mut g = Group::validate_cayley(rows)?;
        g.family = family;
        Ok(g)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// family constructions
// ---------------------------------------------------------------------------

fn raw_group(order: usize, table: Vec<Vec<usize>>, labels: Vec<String>) -> Group {
    let mut flat = Vec::with_capacity(order * order);
    for row in &table {
        flat.extend_from_slice(row);
    }
    let inverses = vec![0; order];
    Group {
        order,
        table: flat,
        identity: 0,
        inverses,
        labels,
        family: None,
    }
}

fn build_cyclic(n: usize) -> Group {
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let labels = (0..n)
        .map(|k| if k == 0 { "1".into() } else { format!("a{k}") })
        .collect();
    raw_group(n, table, labels)
}

/// Dihedral element encoding: `k` for a^k, `n + k` for a^k b, with
/// b a = a^{-1} b.
pub(crate) fn dihedral_index(k: usize, e: usize, n: usize) -> usize {
    e * n + (k % n)
}

pub(crate) fn dihedral_decode(idx: usize, n: usize) -> (usize, usize) {
    (idx % n, idx / n)
}

fn build_dihedral(n: usize) -> Group {
    let order = 2 * n;
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..order {
        let (k1, e1) = dihedral_decode(i, n);
        for j in 0..order {
            let (k2, e2) = dihedral_decode(j, n);
            // a^k1 b^e1 * a^k2 b^e2 = a^{k1 + (-1)^{e1} k2} b^{e1+e2}
            let k = if e1 == 0 {
                (k1 + k2) % n
            } else {
                (k1 + n - k2 % n) % n
            };
            table[i][j] = dihedral_index(k, (e1 + e2) % 2, n);
        }
    }
    let labels = (0..order)
        .map(|i| {
            let (k, e) = dihedral_decode(i, n);
            match (k, e) {
                (0, 0) => "1".into(),
                (k, 0) => format!("a{k}"),
                (0, _) => "b".into(),
                (k, _) => format!("a{k}b"),
            }
        })
        .collect();
    raw_group(order, table, labels)
}

/// Quaternion element encoding: `k` for a^k (k < 2n), `2n + k` for a^k b.
pub(crate) fn quaternion_decode(idx: usize, n: usize) -> (usize, usize) {
    (idx % (2 * n), idx / (2 * n))
}

fn build_quaternion(n: usize) -> Group {
    let two_n = 2 * n;
    let order = 4 * n;
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..order {
        let (k1, e1) = quaternion_decode(i, n);
        for j in 0..order {
            let (k2, e2) = quaternion_decode(j, n);
            // b a^k = a^{-k} b and b^2 = a^n
            let mut k = if e1 == 0 {
                (k1 + k2) % two_n
            } else {
                (k1 + two_n - k2 % two_n) % two_n
            };
            let mut e = e1 + e2;
            if e == 2 {
                e = 0;
                k = (k + n) % two_n;
            }
            table[i][j] = e * two_n + k;
        }
    }
    let labels = (0..order)
        .map(|i| {
            let (k, e) = quaternion_decode(i, n);
            match (k, e) {
                (0, 0) => "1".into(),
                (k, 0) => format!("a{k}"),
                (0, _) => "b".into(),
                (k, _) => format!("a{k}b"),
            }
        })
        .collect();
    raw_group(order, table, labels)
}

/// A_4 enumerated V_4-first: indices 0..3 are the double transpositions
/// (with the identity), and blocks of four follow the cosets of V_4, so the
/// conjugacy classes come out in the order used for its character table.
fn build_alt4() -> Group {
    type Perm = [usize; 4];
    fn compose(a: &Perm, b: &Perm) -> Perm {
        // (a * b)(x) = a(b(x))
        [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
    }
    let v4: [Perm; 4] = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ];
    let t: Perm = [1, 2, 0, 3]; // the 3-cycle (0 1 2)
    let t2 = compose(&t, &t);
    let mut elems: Vec<Perm> = Vec::with_capacity(12);
    for lead in [[0, 1, 2, 3], t, t2] {
        for v in &v4 {
            elems.push(compose(&lead, v));
        }
    }
    let index_of = |p: &Perm| elems.iter().position(|q| q == p).unwrap();
    let mut table = vec![vec![0usize; 12]; 12];
    for i in 0..12 {
        for j in 0..12 {
            table[i][j] = index_of(&compose(&elems[i], &elems[j]));
        }
    }
    let labels = elems
        .iter()
        .map(|p| format!("{}{}{}{}", p[0], p[1], p[2], p[3]))
        .collect();
    raw_group(12, table, labels)
}

/// 16.08 as the central product (Q_8 x C_4) / <(-1, c^2)>.
fn build_group_16_08() -> Result<Group> {
    Ok(group16_08_with_reps()?.0)
}

/// The 16.08 quotient together with one product-element representative per
/// coset (index `q8_index * 4 + c4_index`), for consumers that evaluate the
/// explicit 2-dimensional matrix model.
pub(crate) fn group16_08_with_reps() -> Result<(Group, Vec<usize>)> {
    let q8 = Group::from_family(&FamilySpec::GeneralizedQuaternion(2))?;
    let c4 = Group::from_family(&FamilySpec::Cyclic(4))?;
    let prod = direct_product(&q8, &c4);
    let prod = Group::validate_cayley_with(prod.table_rows(), Some(prod.labels.clone()), None)?;
    // (-1, c^2) = (a^2, c^2): index 2*4 + 2
    let z = prod.subgroup_closure(vec![2 * 4 + 2]);
    debug_assert_eq!(z.order(), 2);
    prod.quotient_with_reps(&z)
}

pub(crate) fn direct_product(a: &Group, b: &Group) -> Group {
    let na = a.order;
    let nb = b.order;
    let order = na * nb;
    let mut table = vec![vec![0usize; order]; order];
    for i1 in 0..na {
        for i2 in 0..nb {
            let i = i1 * nb + i2;
            for j1 in 0..na {
                for j2 in 0..nb {
                    let j = j1 * nb + j2;
                    table[i][j] = a.mul(i1, j1) * nb + b.mul(i2, j2);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|i| format!("({},{})", a.labels[i / nb], b.labels[i % nb]))
        .collect();
    raw_group(order, table, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = Group::from_family(&FamilySpec::Cyclic(1)).unwrap();
        assert_eq!(g.order(), 1);
        let t = Group::validate_cayley(vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn family_orders_match_declaration() {
        for (spec, expect) in [
            (FamilySpec::Cyclic(7), 7),
            (FamilySpec::Dihedral(5), 10),
            (FamilySpec::GeneralizedQuaternion(2), 8),
            (FamilySpec::GeneralizedQuaternion(5), 20),
            (FamilySpec::KleinFour, 4),
            (FamilySpec::Alt4, 12),
            (FamilySpec::Group16_08, 16),
        ] {
            let g = Group::from_family(&spec).unwrap();
            assert_eq!(g.order(), expect, "order of {spec}");
            assert_eq!(spec.order(), expect);
        }
    }

    #[test]
    fn bad_family_parameters() {
        assert!(Group::from_family(&FamilySpec::Dihedral(2)).is_err());
        assert!(Group::from_family(&FamilySpec::GeneralizedQuaternion(1)).is_err());
        assert!(Group::from_family(&FamilySpec::Cyclic(0)).is_err());
    }

    #[test]
    fn validate_cayley_rejects_each_failure_distinctly() {
        // repeated row entry
        let r = Group::validate_cayley(vec![vec![0, 0], vec![1, 0]]);
        assert!(matches!(r, Err(Error::NotLatinSquare(_))));
        // valid C2
        let c2 = Group::validate_cayley(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        // Latin square with no identity: each row a shifted permutation
        let r = Group::validate_cayley(vec![
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
        ]);
        assert!(matches!(r, Err(Error::NoIdentity)));
        // Latin square with identity but not associative (order 5 loop)
        let r = Group::validate_cayley(vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ]);
        assert!(matches!(r, Err(Error::NonAssociative(_, _, _))));
    }

    /// Independent conjugation oracle on the permutation model of A_4.
    #[test]
    fn alt4_classes_match_permutation_oracle() {
        let g = Group::from_family(&FamilySpec::Alt4).unwrap();
        let classes = g.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 4, 4]);

        // oracle: conjugate one-line permutations directly
        type Perm = [usize; 4];
        fn compose(a: &Perm, b: &Perm) -> Perm {
            [a[b[0]], a[b[1]], a[b[2]], a[b[3]]]
        }
        fn invert(a: &Perm) -> Perm {
            let mut r = [0; 4];
            for i in 0..4 {
                r[a[i]] = i;
            }
            r
        }
        let parse = |l: &str| -> Perm {
            let b: Vec<usize> = l.bytes().map(|c| (c - b'0') as usize).collect();
            [b[0], b[1], b[2], b[3]]
        };
        let elems: Vec<Perm> = g.labels().iter().map(|l| parse(l)).collect();
        let mut oracle_classes: Vec<BTreeSet<usize>> = Vec::new();
        let mut seen = vec![false; 12];
        for i in 0..12 {
            if seen[i] {
                continue;
            }
            let mut class = BTreeSet::new();
            for p in &elems {
                let conj = compose(&compose(p, &elems[i]), &invert(p));
                let idx = elems.iter().position(|q| *q == conj).unwrap();
                class.insert(idx);
                seen[idx] = true;
            }
            oracle_classes.push(class);
        }
        let mut oracle: Vec<Vec<usize>> =
            oracle_classes.into_iter().map(|c| c.into_iter().collect()).collect();
        oracle.sort_by_key(|c| (c[0] != g.identity(), c[0]));
        assert_eq!(classes, oracle);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        for spec in [FamilySpec::Cyclic(6), FamilySpec::KleinFour] {
            let g = Group::from_family(&spec).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.len(), g.order());
            assert!(classes.iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn dihedral5_has_four_classes() {
        let g = Group::from_family(&FamilySpec::Dihedral(5)).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn klein_four_analysis() {
        let g = Group::from_family(&FamilySpec::KleinFour).unwrap();
        let a = g.subgroup_analysis().unwrap();
        assert_eq!(a.center.order(), 4);
        assert_eq!(a.commutator.order(), 1);
        assert_eq!(a.exponent, 2);
        assert_eq!(a.abelianization, vec![2, 2]);
        // subgroups of V4: 1, three C2, V4
        assert_eq!(a.normal_subgroups.len(), 5);
    }

    #[test]
    fn quaternion8_analysis() {
        let g = Group::from_family(&FamilySpec::GeneralizedQuaternion(2)).unwrap();
        let a = g.subgroup_analysis().unwrap();
        assert_eq!(a.center.order(), 2);
        assert_eq!(a.commutator.order(), 2);
        assert_eq!(a.exponent, 4);
        assert!(a.center.is_cyclic(&g));
    }

    #[test]
    fn group_16_08_analysis() {
        let g = Group::from_family(&FamilySpec::Group16_08).unwrap();
        assert_eq!(g.order(), 16);
        let a = g.subgroup_analysis().unwrap();
        assert_eq!(a.commutator.order(), 2);
        assert_eq!(a.center.order(), 4);
        assert!(a.center.is_cyclic(&g));
        assert_eq!(g.conjugacy_classes().len(), 10);
        // abelianization of order 8, type (2, 2, 2)
        assert_eq!(a.abelianization, vec![2, 2, 2]);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn quotient_edges() {
        let g = Group::from_family(&FamilySpec::GeneralizedQuaternion(2)).unwrap();
        let trivial = g.subgroup(vec![g.identity()]).unwrap();
        let whole = g.subgroup((0..g.order()).collect()).unwrap();
        assert_eq!(g.quotient(&trivial).unwrap().order(), 8);
        assert_eq!(g.quotient(&whole).unwrap().order(), 1);
        // H8 / Z(H8) is Klein four
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = Group::from_family(&FamilySpec::Dihedral(3)).unwrap();
        // a reflection generates a non-normal C2
        let s = g.subgroup_closure(vec![dihedral_index(0, 1, 3)]);
        assert_eq!(s.order(), 2);
        assert!(!s.is_normal(&g));
        assert!(matches!(g.quotient(&s), Err(Error::NotNormal)));
    }

    #[test]
    fn commutator_quotient_is_abelian_across_corpus() {
        for spec in [
            FamilySpec::Dihedral(4),
            FamilySpec::GeneralizedQuaternion(3),
            FamilySpec::Alt4,
            FamilySpec::Group16_08,
        ] {
            let g = Group::from_family(&spec).unwrap();
            let q = g.quotient(&g.commutator_subgroup()).unwrap();
            assert!(q.is_abelian(), "{spec} abelianization");
        }
    }

    #[test]
    fn serialization_round_trip() {
        let g = Group::from_family(&FamilySpec::Dihedral(4)).unwrap();
        let text = g.to_text();
        let back = Group::from_text(&text).unwrap();
        assert_eq!(g.order(), back.order());
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(g.mul(i, j), back.mul(i, j));
            }
        }
        assert_eq!(back.family(), Some(&FamilySpec::Dihedral(4)));
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!(
            FamilySpec::parse_shorthand("C12").unwrap(),
            FamilySpec::Cyclic(12)
        );
        assert_eq!(
            FamilySpec::parse_shorthand("H8").unwrap(),
            FamilySpec::GeneralizedQuaternion(2)
        );
        assert_eq!(
            FamilySpec::parse_shorthand("V4").unwrap(),
            FamilySpec::KleinFour
        );
        let p = FamilySpec::parse_shorthand("C2xH8").unwrap();
        assert_eq!(p.order(), 16);
        assert!(FamilySpec::parse_shorthand("Q7").is_err());
        assert!(FamilySpec::parse_shorthand("D2").is_err());
    }

    #[test]
    fn generating_sets_are_small_and_generate() {
        for spec in [
            FamilySpec::Cyclic(12),
            FamilySpec::Dihedral(5),
            FamilySpec::GeneralizedQuaternion(2),
            FamilySpec::Group16_08,
            FamilySpec::Alt4,
        ] {
            let g = Group::from_family(&spec).unwrap();
            let gens = g.generating_set();
            assert!(g.subgroup_closure(gens.clone()).order() == g.order());
            assert!(gens.len() <= 3, "{spec} needed {} generators", gens.len());
        }
    }
}
