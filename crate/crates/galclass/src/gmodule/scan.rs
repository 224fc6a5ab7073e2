//! Exhaustive scans over small module configurations and the seeded random
//! instance generators used by the decomposition checks.
//!
//! The scans enumerate every action within their stated bounds and report
//! the extremal value together with a serialized witness; the generators
//! build valid modules by construction (eigencomponent blocks conjugated by
//! random elementary automorphisms) so the downstream checks re-verify
//! everything from scratch.

use crate::group::{FamilySpec, Group};
use crate::{Error, Result};

use super::{
    apply_matrix, mod_inverse, reduce_matrix, AbelianPGroup, GModule, Matrix,
};

/// Deterministic 64-bit generator (SplitMix64). Seeds are part of every
/// report so runs are reproducible across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

/// Which exhaustive scan to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Cyclic prime-order actions annihilated by the full norm: the largest
    /// surviving cyclic module has order p.
    Prop15,
    /// Order-4 cyclic actions with `1 + sigma^2` annihilating: every stable
    /// cyclic subgroup has order at most 2.
    Prop16,
    /// Feasible exponent pairs under the same annihilation: alpha - beta
    /// never exceeds 1.
    Cor17,
}

impl std::str::FromStr for ScanKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<ScanKind> {
        match s {
            "prop15" => Ok(ScanKind::Prop15),
            "prop16" => Ok(ScanKind::Prop16),
            "cor17" => Ok(ScanKind::Cor17),
            other => Err(Error::ParamOutOfRange(format!("unknown scan kind {other:?}"))),
        }
    }
}

/// Bounds for [`cyclic_scan`]; the defaults match the acceptance runs.
#[derive(Debug, Clone, Copy)]
pub struct ScanBounds {
    /// Prime for the prime-order scan (Prop15 only), at most 5.
    pub p: u64,
    /// Exponent cap per cyclic factor, at most 4.
    pub max_exponent: u32,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds {
            p: 3,
            max_exponent: 4,
        }
    }
}

/// Scan output: one line per configuration class and the extremal witness.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub lines: Vec<String>,
    pub extremal: u64,
    pub witness: String,
}

impl ScanReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("EXTREMAL {} WITNESS {}\n", self.extremal, self.witness));
        out
    }
}

pub fn cyclic_scan(kind: ScanKind, bounds: &ScanBounds) -> Result<ScanReport> {
    if bounds.p > 5 || bounds.max_exponent > 4 {
        return Err(Error::BoundExceeded(
            "scan bounds capped at p <= 5, exponents <= 4".into(),
        ));
    }
    match kind {
        ScanKind::Prop15 => prop15_scan(bounds),
        ScanKind::Prop16 => prop16_scan(bounds),
        ScanKind::Cor17 => cor17_scan(bounds),
    }
}

fn pow_u64(b: u64, e: u32) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * b)
}

/// All C_p-actions on Z/p^e annihilated by `1 + sigma + ... + sigma^{p-1}`:
/// enumerate units u with u^p = 1 and norm sum zero, track the largest
/// module order that admits one.
fn prop15_scan(bounds: &ScanBounds) -> Result<ScanReport> {
    let p = bounds.p;
    if !crate::field::is_prime(p) || p == 2 {
        return Err(Error::ParamOutOfRange("Prop15 scan needs an odd prime".into()));
    }
    let mut lines = Vec::new();
    let mut extremal = 0u64;
    let mut witness = String::from("none");
    for e in 1..=bounds.max_exponent {
        let modulus = pow_u64(p, e);
        let mut valid = 0usize;
        for u in 1..modulus {
            if crate::field::gcd(u, p) != 1 {
                continue;
            }
            // u^p mod modulus
            let mut acc = 1u64;
            for _ in 0..p {
                acc = acc * u % modulus;
            }
            if acc != 1 {
                continue;
            }
            // norm sum 1 + u + ... + u^{p-1}
            let mut s = 0u64;
            let mut t = 1u64;
            for _ in 0..p {
                s = (s + t) % modulus;
                t = t * u % modulus;
            }
            if s == 0 {
                valid += 1;
                if modulus > extremal {
                    extremal = modulus;
                    witness = format!("p={p} exponents=[{e}] sigma=[{u}]");
                }
            }
        }
        lines.push(format!("prop15 p={p} e={e} order={modulus} valid_actions={valid}"));
    }
    Ok(ScanReport {
        kind: ScanKind::Prop15,
        lines,
        extremal,
        witness,
    })
}

/// Enumerate well-defined automorphisms M of (Z/2^a) ⊕ (Z/2^b) (or the
/// cyclic case b = 0) with `M^2 = -I`, then measure every sigma-stable
/// cyclic subgroup.
fn prop16_scan(bounds: &ScanBounds) -> Result<ScanReport> {
    let amax = bounds.max_exponent;
    let mut lines = Vec::new();
    let mut extremal = 0u64;
    let mut witness = String::from("none");
    for a in 1..=amax {
        for b in 0..=a {
            let (count, best) = scan_two_power_actions(a, b, |base, m| {
                // largest sigma-stable cyclic subgroup order
                stable_cyclic_max(base, m)
            })?;
            let best_val = best.as_ref().map_or(0, |(v, _)| *v);
            if let Some((val, mat)) = &best {
                if *val > extremal {
                    extremal = *val;
                    let exps = if b == 0 { vec![a] } else { vec![a, b] };
                    witness = format!("p=2 exponents={exps:?} sigma={mat:?}");
                }
            }
            lines.push(format!(
                "prop16 a={a} b={b} valid_actions={count} max_stable_cyclic={best_val}"
            ));
        }
    }
    Ok(ScanReport {
        kind: ScanKind::Prop16,
        lines,
        extremal,
        witness,
    })
}

/// Feasibility of `M^2 = -I` per exponent pair (alpha, beta): the extremal
/// observable is alpha - beta over feasible pairs.
fn cor17_scan(bounds: &ScanBounds) -> Result<ScanReport> {
    let amax = bounds.max_exponent;
    let mut lines = Vec::new();
    let mut extremal = 0u64;
    let mut witness = String::from("none");
    for a in 1..=amax {
        for b in 0..=a {
            let (count, best) = scan_two_power_actions(a, b, |_, _| 1u64)?;
            let feasible = count > 0;
            if feasible {
                let gap = (a - b) as u64;
                if gap > extremal {
                    extremal = gap;
                    let exps = if b == 0 { vec![a] } else { vec![a, b] };
                    witness = format!(
                        "p=2 exponents={exps:?} sigma={:?}",
                        best.expect("feasible pair has a witness").1
                    );
                }
            }
            lines.push(format!(
                "cor17 alpha={a} beta={b} feasible={feasible} gap={}",
                a - b
            ));
        }
    }
    Ok(ScanReport {
        kind: ScanKind::Cor17,
        lines,
        extremal,
        witness,
    })
}

/// Enumerate all well-defined automorphisms `M` with `M^2 ≡ -I` on
/// Z/2^a (b = 0) or Z/2^a ⊕ Z/2^b, scoring each with `f`; returns the count
/// and the best (score, matrix).
fn scan_two_power_actions(
    a: u32,
    b: u32,
    f: impl Fn(&AbelianPGroup, &Matrix) -> u64,
) -> Result<(usize, Option<(u64, Matrix)>)> {
    let mut count = 0usize;
    let mut best: Option<(u64, Matrix)> = None;
    if b == 0 {
        let base = AbelianPGroup::new(2, vec![a])?;
        let modulus = pow_u64(2, a);
        for u in (1..modulus).step_by(2) {
            if (u * u + 1) % modulus != 0 {
                continue;
            }
            count += 1;
            let m = vec![u as i64];
            let score = f(&base, &m);
            if best.as_ref().map_or(true, |(s, _)| score > *s) {
                best = Some((score, m));
            }
        }
        return Ok((count, best));
    }
    let base = AbelianPGroup::new(2, vec![a, b])?;
    let ma = pow_u64(2, a);
    let mb = pow_u64(2, b);
    let step = pow_u64(2, a - b); // divisibility for the (0,1) entry
    let minus_one = [
        (ma as i64 - 1).rem_euclid(ma as i64),
        0,
        0,
        (mb as i64 - 1).rem_euclid(mb as i64),
    ];
    for m00 in 0..ma {
        for s01 in 0..mb {
            let m01 = s01 * step;
            for m10 in 0..mb {
                for m11 in 0..mb {
                    let m: Matrix = vec![m00 as i64, m01 as i64, m10 as i64, m11 as i64];
                    // automorphism: odd determinant
                    let det = (m[0] * m[3] - m[1] * m[2]).rem_euclid(2);
                    if det == 0 {
                        continue;
                    }
                    let sq = super::compose(&base, &m, &m);
                    if sq[0] != minus_one[0]
                        || sq[1] != minus_one[1].rem_euclid(ma as i64)
                        || sq[2] != minus_one[2]
                        || sq[3] != minus_one[3]
                    {
                        continue;
                    }
                    count += 1;
                    let score = f(&base, &m);
                    if best.as_ref().map_or(true, |(s, _)| score > *s) {
                        best = Some((score, m));
                    }
                }
            }
        }
    }
    Ok((count, best))
}

/// Largest order of a cyclic subgroup `<g>` with `M g ∈ <g>`.
fn stable_cyclic_max(base: &AbelianPGroup, m: &Matrix) -> u64 {
    let moduli = base.moduli();
    let t = base.rank();
    let mut best = 0u64;
    let mut coords = vec![0u64; t];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == t {
                return best;
            }
            coords[i] += 1;
            if coords[i] == moduli[i] {
                coords[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        let g: Vec<i64> = coords.iter().map(|&c| c as i64).collect();
        let ord = element_order(base, &g);
        if ord <= best {
            continue;
        }
        let img = apply_matrix(base, m, &g);
        if in_cyclic_span(base, &g, &img, ord) {
            best = ord;
        }
    }
}

fn element_order(base: &AbelianPGroup, v: &[i64]) -> u64 {
    let moduli = base.moduli();
    let mut ord = 1u64;
    for (x, &m) in v.iter().zip(&moduli) {
        let m = m as i64;
        let x = x.rem_euclid(m);
        let o = (m / num_integer::gcd(x, m)) as u64;
        ord = num_integer::lcm(ord, o);
    }
    ord
}

fn in_cyclic_span(base: &AbelianPGroup, g: &[i64], v: &[i64], ord: u64) -> bool {
    let moduli = base.moduli();
    let mut acc = vec![0i64; g.len()];
    for _ in 0..ord {
        for (i, (a, &gg)) in acc.iter_mut().zip(g).enumerate() {
            *a = (*a + gg).rem_euclid(moduli[i] as i64);
        }
        if acc == v {
            return true;
        }
    }
    v.iter().all(|&x| x == 0)
}

// ---------------------------------------------------------------------------
// seeded random instances
// ---------------------------------------------------------------------------

/// Elementary automorphisms of the base: transvections with the required
/// divisibility, unit scalings, and swaps of equal-exponent coordinates.
/// Returns (T, T^{-1}) as reduced matrices.
fn random_automorphism_pair(
    base: &AbelianPGroup,
    rng: &mut SplitMix64,
    steps: usize,
) -> (Matrix, Matrix) {
    let t = base.rank();
    let p = base.p();
    let exps = base.exponents();
    let moduli = base.moduli();
    let mut fwd: Vec<(Matrix, Matrix)> = Vec::new();
    for _ in 0..steps {
        match rng.below(3) {
            0 if t > 1 => {
                // transvection: x_i += c x_j
                let i = rng.below(t as u64) as usize;
                let mut j = rng.below(t as u64) as usize;
                if i == j {
                    j = (j + 1) % t;
                }
                let need = if exps[i] > exps[j] {
                    pow_u64(p, exps[i] - exps[j])
                } else {
                    1
                };
                let c = ((1 + rng.below(p - 1).max(0)) * need) as i64;
                let mut m = super::identity_matrix(base);
                let mut inv = super::identity_matrix(base);
                m[i * t + j] = c.rem_euclid(moduli[i] as i64);
                inv[i * t + j] = (-c).rem_euclid(moduli[i] as i64);
                fwd.push((m, inv));
            }
            1 => {
                // scale a coordinate by a unit
                let i = rng.below(t as u64) as usize;
                let m_i = moduli[i];
                let mut u = 1 + rng.below(m_i - 1);
                while crate::field::gcd(u, p) != 1 {
                    u = 1 + rng.below(m_i - 1);
                }
                let mut m = super::identity_matrix(base);
                let mut inv = super::identity_matrix(base);
                m[i * t + i] = u as i64;
                inv[i * t + i] = mod_inverse(u as i64, m_i as i64).expect("unit");
                fwd.push((m, inv));
            }
            _ if t > 1 => {
                // swap equal-exponent coordinates
                let i = rng.below(t as u64) as usize;
                let j = rng.below(t as u64) as usize;
                if i != j && exps[i] == exps[j] {
                    let mut m = super::identity_matrix(base);
                    m[i * t + i] = 0;
                    m[j * t + j] = 0;
                    m[i * t + j] = 1;
                    m[j * t + i] = 1;
                    fwd.push((m.clone(), m));
                }
            }
            _ => {}
        }
    }
    let mut tmat = super::identity_matrix(base);
    let mut tinv = super::identity_matrix(base);
    for (m, _) in &fwd {
        tmat = super::compose(base, &tmat, m);
    }
    for (_, inv) in fwd.iter().rev() {
        tinv = super::compose(base, &tinv, inv);
    }
    debug_assert_eq!(
        super::compose(base, &tmat, &tinv),
        super::identity_matrix(base)
    );
    (tmat, tinv)
}

/// A random Klein-four module annihilated by the full norm: eigencomponent
/// sign patterns per cyclic factor, disguised by a random automorphism.
pub fn random_v4_module(p: u64, max_exponent: u32, seed: u64) -> Result<GModule> {
    assert!(p % 2 == 1, "p must be odd");
    let mut rng = SplitMix64::new(seed);
    let rank = 1 + rng.below(3) as usize;
    let mut exps: Vec<u32> = (0..rank)
        .map(|_| 1 + rng.below(max_exponent as u64) as u32)
        .collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let base = AbelianPGroup::new(p, exps)?;
    // valid sign patterns: at least one -1 so (1+s0)(1+s1) = 0
    let patterns: [(i64, i64); 3] = [(-1, 1), (1, -1), (-1, -1)];
    let t = base.rank();
    let mut d0 = vec![0i64; t * t];
    let mut d1 = vec![0i64; t * t];
    for i in 0..t {
        let &(s0, s1) = rng.pick(&patterns);
        d0[i * t + i] = s0;
        d1[i * t + i] = s1;
    }
    let (tm, tinv) = random_automorphism_pair(&base, &mut rng, 12);
    let conj = |m: &Matrix| -> Matrix {
        super::compose(&base, &super::compose(&base, &tm, m), &tinv)
    };
    let m0 = conj(&reduce_matrix(&base, &d0));
    let m1 = conj(&reduce_matrix(&base, &d1));
    let v4 = Group::from_family(&FamilySpec::KleinFour)?;
    GModule::make_module(base, v4, &[(1, m0), (2, m1)])
}

/// A random elementary-abelian module with a regular-representation action
/// (conjugated) plus a G-stable subspace spanned by the orbit of random
/// vectors. The groups and primes are drawn from a small coprime pool.
pub fn random_maschke_instance(seed: u64) -> Result<(GModule, Vec<Vec<i64>>)> {
    let mut rng = SplitMix64::new(seed);
    let pool: [(FamilySpec, [u64; 3]); 5] = [
        (FamilySpec::Cyclic(2), [3, 5, 7]),
        (FamilySpec::Cyclic(3), [5, 7, 13]),
        (FamilySpec::Cyclic(4), [3, 5, 7]),
        (FamilySpec::KleinFour, [3, 5, 7]),
        (FamilySpec::Dihedral(3), [5, 7, 13]),
    ];
    let (spec, primes) = rng.pick(&pool);
    let p = *rng.pick(primes);
    let group = Group::from_family(spec)?;
    let n = group.order();
    let base = AbelianPGroup::new(p, vec![1; n])?;
    // regular representation: column h of action(g) has a 1 at row g*h
    let mut gens: Vec<(usize, Matrix)> = Vec::new();
    let (tm, tinv) = random_automorphism_pair(&base, &mut rng, 10);
    for s in group.generating_set() {
        let mut m = vec![0i64; n * n];
        for h in 0..n {
            m[group.mul(s, h) * n + h] = 1;
        }
        let disguised = super::compose(&base, &super::compose(&base, &tm, &m), &tinv);
        gens.push((s, disguised));
    }
    let module = GModule::make_module(base, group, &gens)?;
    // G-stable subspace: span of the orbit of a few random vectors
    let k = rng.below(3) as usize;
    let mut sub: Vec<Vec<i64>> = Vec::new();
    for _ in 0..k {
        let v: Vec<i64> = (0..n).map(|_| rng.below(p) as i64).collect();
        for g in 0..module.group().order() {
            sub.push(apply_matrix(module.base(), module.action(g), &v));
        }
    }
    Ok((module, sub))
}

/// A random dihedral module over p = 19 built from 2-dimensional rotation
/// blocks (exponent up to `emax`), with the tau-fixed generators returned
/// alongside. The rotation is the companion matrix of x^2 - cx + 1 where c
/// solves c^2 + c - 1 = 0, lifted p-adically by Newton steps.
pub fn random_dihedral_instance(
    n: u32,
    p: u64,
    emax: u32,
    seed: u64,
) -> Result<(GModule, Vec<Vec<i64>>)> {
    if n != 5 || p != 19 {
        return Err(Error::ParamOutOfRange(
            "the dihedral generator ships the (n, p) = (5, 19) model".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let blocks = 1 + rng.below(3) as usize;
    let mut exps: Vec<u32> = (0..blocks)
        .map(|_| 1 + rng.below(emax as u64) as u32)
        .collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    // module exponents: each block contributes (e, e)
    let mut all_exps = Vec::new();
    for &e in &exps {
        all_exps.push(e);
        all_exps.push(e);
    }
    all_exps.sort_unstable_by(|a, b| b.cmp(a));
    let base = AbelianPGroup::new(p, all_exps.clone())?;
    let t = base.rank();
    // c with c^2 + c - 1 ≡ 0 (mod p^emax), lifted from c = 4 mod 19
    let target = pow_u64(p, *exps.iter().max().unwrap());
    let c = newton_lift_root(4, p, target);
    // assemble block-diagonal sigma and tau; blocks sorted by exponent
    // descending matches all_exps ordering
    let mut sigma = vec![0i64; t * t];
    let mut tau = vec![0i64; t * t];
    let mut offset = 0usize;
    for &e in &exps {
        let m = pow_u64(p, e) as i64;
        let cc = (c % pow_u64(p, e)) as i64;
        // sigma block: [[0, -1], [1, c]], tau block: [[1, c], [0, -1]]
        let (r0, r1) = (offset, offset + 1);
        sigma[r0 * t + r1] = (-1i64).rem_euclid(m);
        sigma[r1 * t + r0] = 1;
        sigma[r1 * t + r1] = cc;
        tau[r0 * t + r0] = 1;
        tau[r0 * t + r1] = cc;
        tau[r1 * t + r1] = (-1i64).rem_euclid(m);
        offset += 2;
    }
    let (tm, tinv) = random_automorphism_pair(&base, &mut rng, 8);
    let conj = |m: &Matrix| -> Matrix {
        super::compose(&base, &super::compose(&base, &tm, m), &tinv)
    };
    let sigma = conj(&reduce_matrix(&base, &sigma));
    let tau = conj(&reduce_matrix(&base, &tau));
    let d5 = Group::from_family(&FamilySpec::Dihedral(n))?;
    let module = GModule::make_module(base, d5, &[(1, sigma), (n as usize, tau)])?;
    // tau-fixed generators: the first coordinate of each block, disguised
    let mut a_gens = Vec::new();
    let mut offset = 0usize;
    for _ in &exps {
        let mut v = vec![0i64; t];
        v[offset] = 1;
        a_gens.push(apply_matrix(module.base(), &tm, &v));
        offset += 2;
    }
    Ok((module, a_gens))
}

/// A random cyclic-group norm-split scenario: a C_k module (k in {2, 3})
/// assembled from trivial blocks and norm-free blocks, disguised by a
/// random automorphism. Returns the module, the full norm element, the
/// degree k, and the expected (kernel order, image order) for the
/// independent order bookkeeping.
pub fn random_norm_split_instance(
    seed: u64,
) -> Result<(GModule, super::RingElement, u64, (u64, u64))> {
    let mut rng = SplitMix64::new(seed);
    let k = if rng.below(2) == 0 { 2u64 } else { 3 };
    let primes: [u64; 3] = [5, 7, 13];
    let p = *rng.pick(&primes);
    let emax = 2u32;
    // trivial blocks contribute to the image, norm-free blocks to the kernel
    let trivial_blocks = rng.below(3) as usize;
    let free_blocks = rng.below(3) as usize;
    let block_dim = if k == 2 { 1 } else { 2 };
    let mut block_exps: Vec<u32> = (0..trivial_blocks + free_blocks)
        .map(|_| 1 + rng.below(emax as u64) as u32)
        .collect();
    block_exps.sort_unstable_by(|a, b| b.cmp(a));
    if block_exps.is_empty() {
        block_exps.push(1);
    }
    // assign roles after sorting so exponents stay non-increasing per slot
    let mut roles: Vec<bool> = Vec::new(); // true = trivial block
    for _ in 0..block_exps.len() {
        roles.push(rng.below(2) == 0);
    }
    let mut exps = Vec::new();
    for (&e, &trivial) in block_exps.iter().zip(&roles) {
        let dim = if trivial { 1 } else { block_dim };
        for _ in 0..dim {
            exps.push(e);
        }
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let base = AbelianPGroup::new(p, exps)?;
    let t = base.rank();
    // sigma: identity on trivial blocks; -1 (k = 2) or the order-3
    // companion [[0, -1], [1, -1]] (k = 3) on norm-free blocks. Blocks are
    // laid out in the sorted exponent order.
    let mut sigma = vec![0i64; t * t];
    let mut offset = 0usize;
    let mut expected_kernel: u64 = 1;
    let mut expected_image: u64 = 1;
    let mut slots: Vec<(u32, bool)> = block_exps.iter().copied().zip(roles.iter().copied()).collect();
    slots.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    for &(e, trivial) in &slots {
        let modulus = pow_u64(p, e);
        if trivial {
            sigma[offset * t + offset] = 1;
            expected_image *= modulus;
            offset += 1;
        } else if k == 2 {
            sigma[offset * t + offset] = (modulus as i64) - 1;
            expected_kernel *= modulus;
            offset += 1;
        } else {
            let (r0, r1) = (offset, offset + 1);
            sigma[r0 * t + r1] = (modulus as i64) - 1;
            sigma[r1 * t + r0] = 1;
            sigma[r1 * t + r1] = (modulus as i64) - 1;
            expected_kernel *= modulus * modulus;
            offset += 2;
        }
    }
    let (tm, tinv) = random_automorphism_pair(&base, &mut rng, 10);
    let sigma = super::compose(&base, &super::compose(&base, &tm, &sigma), &tinv);
    let group = Group::from_family(&FamilySpec::Cyclic(k as u32))?;
    let module = GModule::make_module(base, group, &[(1, sigma)])?;
    let norm = super::RingElement::norm_of(module.group(), &(0..k as usize).collect::<Vec<_>>());
    Ok((module, norm, k, (expected_kernel, expected_image)))
}

/// Exhaustively enumerate the actions of a group on a cyclic module
/// (homomorphisms into the unit group) by scanning all generator images,
/// and run the annihilation check on each valid one. Returns the number of
/// valid actions and how many passed.
pub fn grun_enumeration(
    spec: &FamilySpec,
    p: u64,
    exponent: u32,
) -> Result<(usize, usize)> {
    let group = Group::from_family(spec)?;
    let base = AbelianPGroup::new(p, vec![exponent])?;
    let modulus = base.max_modulus();
    let gens = group.generating_set();
    let units: Vec<i64> = (1..modulus)
        .filter(|&u| crate::field::gcd(u, p) == 1)
        .map(|u| u as i64)
        .collect();
    let mut valid = 0usize;
    let mut passed = 0usize;
    let mut assignment = vec![0usize; gens.len()];
    loop {
        let images: Vec<(usize, super::Matrix)> = gens
            .iter()
            .zip(&assignment)
            .map(|(&g, &idx)| (g, vec![units[idx]]))
            .collect();
        if let Ok(module) = GModule::make_module(base.clone(), group.clone(), &images) {
            valid += 1;
            let report = super::grun_check(&module)?;
            if report.commutator_acts_trivially && report.annihilates {
                passed += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return Ok((valid, passed));
            }
            assignment[i] += 1;
            if assignment[i] == units.len() {
                assignment[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Newton lift of a simple root of x^2 + x - 1 from mod p to mod `target`.
fn newton_lift_root(root: u64, p: u64, target: u64) -> u64 {
    let mut c = root as i128;
    let mut modulus = p as i128;
    let target = target as i128;
    while modulus < target {
        modulus = (modulus * modulus).min(target);
        let f = (c * c + c - 1).rem_euclid(modulus);
        let fp = (2 * c + 1).rem_euclid(modulus);
        let inv = mod_inverse(fp as i64, modulus as i64).expect("simple root") as i128;
        c = (c - f * inv).rem_euclid(modulus);
    }
    assert_eq!((c * c + c - 1).rem_euclid(target), 0);
    c as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodule::{dihedral_span_check, maschke_complement, v4_decompose};

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn prop15_extremal_is_p() {
        let rep = cyclic_scan(ScanKind::Prop15, &ScanBounds::default()).unwrap();
        assert_eq!(rep.extremal, 3);
        let rep = cyclic_scan(
            ScanKind::Prop15,
            &ScanBounds {
                p: 5,
                max_exponent: 3,
            },
        )
        .unwrap();
        assert_eq!(rep.extremal, 5);
    }

    #[test]
    fn prop16_extremal_is_two() {
        let rep = cyclic_scan(ScanKind::Prop16, &ScanBounds::default()).unwrap();
        assert_eq!(rep.extremal, 2);
        assert!(rep.render().contains("EXTREMAL 2 WITNESS"));
    }

    #[test]
    fn cor17_extremal_gap_is_one() {
        let rep = cyclic_scan(ScanKind::Cor17, &ScanBounds::default()).unwrap();
        assert_eq!(rep.extremal, 1);
    }

    #[test]
    fn scan_bounds_are_enforced() {
        let r = cyclic_scan(
            ScanKind::Prop15,
            &ScanBounds {
                p: 7,
                max_exponent: 4,
            },
        );
        assert!(matches!(r, Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn random_v4_modules_pass_decomposition() {
        for seed in 0..25 {
            for &p in &[3u64, 5, 7] {
                let m = random_v4_module(p, 3, seed * 31 + p).unwrap();
                let rep = v4_decompose(&m).unwrap();
                assert!(rep.pass, "seed {seed} p {p}: {rep:?}");
            }
        }
    }

    #[test]
    fn random_maschke_instances_split() {
        for seed in 0..20 {
            let (m, sub) = random_maschke_instance(seed).unwrap();
            let comp = maschke_complement(&m, &sub).unwrap();
            let _ = comp;
        }
    }

    #[test]
    fn random_dihedral_instances_pass() {
        for seed in 0..10 {
            let (m, a_gens) = random_dihedral_instance(5, 19, 2, seed).unwrap();
            let rep = dihedral_span_check(&m, &a_gens).unwrap();
            assert!(rep.pass, "seed {seed}: {rep:?}");
        }
    }

    #[test]
    fn random_norm_split_scenarios_verify() {
        use crate::gmodule::norm_split;
        use crate::gmodule::snf::factors_order;
        for seed in 0..30 {
            let (m, norm, degree, (ker, im)) = random_norm_split_instance(seed).unwrap();
            let rep = norm_split(&m, &norm, degree).unwrap();
            assert!(rep.order_check, "seed {seed}");
            assert_eq!(
                factors_order(&rep.kernel),
                num_bigint::BigInt::from(ker),
                "seed {seed} kernel order"
            );
            assert_eq!(
                factors_order(&rep.image),
                num_bigint::BigInt::from(im),
                "seed {seed} image order"
            );
        }
    }

    #[test]
    fn grun_enumerations_are_exhaustive_and_clean() {
        // H8 into Aut(Z/5): homs factor through the (2,2) abelianization
        let (valid, passed) =
            grun_enumeration(&FamilySpec::GeneralizedQuaternion(2), 5, 1).unwrap();
        assert_eq!(valid, 4);
        assert_eq!(passed, 4);
        // A4 into Aut(Z/7): homs factor through the C3 abelianization
        let (valid, passed) = grun_enumeration(&FamilySpec::Alt4, 7, 1).unwrap();
        assert_eq!(valid, 3);
        assert_eq!(passed, 3);
    }
}
