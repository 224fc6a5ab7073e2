//! Arithmetic in `F_p` and in the splitting field `E = F_p(zeta_n)`.
//!
//! A [`FieldSpec`] pins down one concrete model of `F_{p^m}` with
//! `m = mult_order(p, n)`: the modulus polynomial is the first monic
//! irreducible of degree `m` in coefficient order, and `zeta` is the
//! smallest element of multiplicative order exactly `n`. Both choices are
//! deterministic, so everything downstream (character tables, orbit data)
//! is byte-reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::{Error, Result};

/// Largest characteristic accepted by [`build_splitting_field`].
pub const MAX_PRIME: u64 = 10_000;
/// Largest root order accepted by [`build_splitting_field`].
pub const MAX_ROOT_ORDER: u64 = 1_000;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `f >= 1` with `p^f ≡ 1 (mod n)`.
pub fn mult_order(p: u64, n: u64) -> Result<u64> {
    if n == 0 || gcd(p, n) != 1 {
        return Err(Error::NotCoprime(p, n));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut f = 1;
    let mut acc = p % n;
    while acc != 1 {
        acc = acc * (p % n) % n;
        f += 1;
    }
    Ok(f)
}

/// Result of [`pm_order`]: the exponent and which sign was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PmOrder {
    pub f: u64,
    /// `+1` or `-1`. When both signs hold simultaneously (`n <= 2`), `+1`.
    pub sign: i8,
}

/// Smallest `f >= 1` with `p^f ≡ ±1 (mod n)`, together with the sign.
pub fn pm_order(p: u64, n: u64) -> Result<PmOrder> {
    if n == 0 || gcd(p, n) != 1 {
        return Err(Error::NotCoprime(p, n));
    }
    if n <= 2 {
        return Ok(PmOrder { f: 1, sign: 1 });
    }
    let mut f = 1;
    let mut acc = p % n;
    loop {
        if acc == 1 {
            return Ok(PmOrder { f, sign: 1 });
        }
        if acc == n - 1 {
            return Ok(PmOrder { f, sign: -1 });
        }
        acc = acc * (p % n) % n;
        f += 1;
    }
}

// ---------------------------------------------------------------------------
// polynomials over F_p (ascending coefficients, used for the modulus sieve)
// ---------------------------------------------------------------------------

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    (t.rem_euclid(p as i128)) as u64
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_deg(v: &[u64]) -> usize {
    let mut d = v.len();
    while d > 1 && v[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

fn poly_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic `f`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = poly_deg(f);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while poly_deg(&r) >= df && !poly_is_zero(&r) {
        let dr = poly_deg(&r);
        let lead = r[dr];
        if lead != 0 {
            let shift = dr - df;
            for k in 0..=df {
                let sub = lead * f[k] % p;
                r[k + shift] = (r[k + shift] + p - sub) % p;
            }
        }
        poly_trim(&mut r);
        if poly_deg(&r) < df {
            break;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let lead = y[poly_deg(&y)];
        let inv = fp_inv(lead, p);
        let monic: Vec<u64> = y.iter().map(|&c| c * inv % p).collect();
        let r = poly_rem(&x, &monic, p);
        x = monic;
        y = r;
    }
    x
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// Distinct-degree ladder: true iff monic `f` of degree `m >= 1` is
/// irreducible over `F_p`.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = poly_deg(f);
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut t = x.clone();
    for _k in 1..=m / 2 {
        t = poly_powmod(&t, p, f, p);
        // t - x
        let mut diff = t.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if poly_deg(&g) > 0 {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree `m` over `F_p`, scanning the non-leading
/// coefficient vector `(c_0, .., c_{m-1})` in counting order.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut c = vec![0u64; m];
    loop {
        let mut f = c.clone();
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return f;
        }
        // increment little-endian with carry
        let mut i = 0;
        loop {
            if i == m {
                unreachable!("no irreducible of degree {m} over F_{p}");
            }
            c[i] += 1;
            if c[i] == p {
                c[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// field elements
// ---------------------------------------------------------------------------

/// An element of `F_{p^m}`: residue coefficients `(c_0, .., c_{m-1})` with
/// respect to the modulus polynomial, reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True iff the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// Compare by numeric value `sum c_i p^i` without forming the number:
    /// most significant coefficient first.
    pub fn value_cmp(&self, other: &FieldElement) -> std::cmp::Ordering {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The splitting field `E = F_p(zeta_n)` with its canonical modulus and
/// canonical primitive n-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// monic, ascending, length `m + 1`
    modulus: Vec<u64>,
    zeta: FieldElement,
    n: u64,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zeta(&self) -> &FieldElement {
        &self.zeta
    }

    pub fn root_order(&self) -> u64 {
        self.n
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = k % self.p;
        FieldElement { coeffs }
    }

    /// Embed a signed integer (character degrees, structure constants).
    pub fn from_i64(&self, k: i64) -> FieldElement {
        let r = k.rem_euclid(self.p as i64) as u64;
        self.from_int(r)
    }

    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> FieldElement {
        assert_eq!(coeffs.len(), self.m);
        FieldElement {
            coeffs: coeffs.into_iter().map(|c| c % self.p).collect(),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m, 0);
        FieldElement { coeffs: r }
    }

    pub fn scale(&self, a: &FieldElement, k: u64) -> FieldElement {
        let k = k % self.p;
        let coeffs = a.coeffs.iter().map(|&x| x * k % self.p).collect();
        FieldElement { coeffs }
    }

    /// Multiplicative inverse of a nonzero element via extended Euclid in
    /// `F_p[x]`.
    pub fn inv(&self, a: &FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), {
            let mut v = a.coeffs.clone();
            poly_trim(&mut v);
            v
        });
        let (mut t0, mut t1) = (vec![0u64], vec![1u64]);
        while !poly_is_zero(&r1) && poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1, p);
            let qt1 = poly_mul(&q, &t1, p);
            let nt = poly_sub(&t0, &qt1, p);
            t0 = t1;
            t1 = nt;
            r0 = r1;
            r1 = r;
        }
        assert!(!poly_is_zero(&r1), "not invertible: gcd has positive degree");
        let lead_inv = fp_inv(r1[0], p);
        let mut out: Vec<u64> = t1.iter().map(|&c| c * lead_inv % p).collect();
        let mut red = poly_rem(&out, &self.modulus, p);
        red.resize(self.m, 0);
        out = red;
        FieldElement { coeffs: out }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// `x^p`, the generator of `Gal(E / F_p)`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u128)
    }

    /// Power with base-p digit exponent `sum d_k p^k` (digits ascending);
    /// avoids forming huge integers.
    fn pow_base_p_digits(&self, a: &FieldElement, digits: &[u64]) -> FieldElement {
        let mut acc = self.one();
        let mut frob_pow = a.clone(); // a^(p^k)
        for (k, &d) in digits.iter().enumerate() {
            if d > 0 {
                acc = self.mul(&acc, &self.pow(&frob_pow, d as u128));
            }
            if k + 1 < digits.len() {
                frob_pow = self.frobenius(&frob_pow);
            }
        }
        acc
    }

    /// Multiplicative order of a nonzero element, for orders dividing `bound`.
    /// Scans divisors of `bound`, so keep `bound` modest (root orders here).
    pub fn element_order_dividing(&self, a: &FieldElement, bound: u64) -> Option<u64> {
        let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if self.pow(a, d as u128) == self.one() {
                return Some(d);
            }
        }
        None
    }

    /// Smallest `t >= 1` with `a^(p^t) = a`: the degree of `F_p(a)`.
    pub fn subfield_degree(&self, a: &FieldElement) -> usize {
        let mut t = 1;
        let mut x = self.frobenius(a);
        while x != *a {
            x = self.frobenius(&x);
            t += 1;
            assert!(t <= self.m, "subfield degree exceeded field degree");
        }
        t
    }

    /// Enumerate elements in value order starting from zero, advancing with
    /// little-endian carries. Returns `None` after the last element.
    pub fn next_element(&self, a: &FieldElement) -> Option<FieldElement> {
        let mut c = a.coeffs.clone();
        for slot in c.iter_mut() {
            *slot += 1;
            if *slot == self.p {
                *slot = 0;
            } else {
                return Some(FieldElement { coeffs: c });
            }
        }
        None
    }

    /// One-line serialization: `p m modulus-coeffs zeta-coeffs n`.
    pub fn to_line(&self) -> String {
        let mut parts: Vec<String> = vec![self.p.to_string(), self.m.to_string()];
        parts.extend(self.modulus.iter().map(|c| c.to_string()));
        parts.extend(self.zeta.coeffs.iter().map(|c| c.to_string()));
        parts.push(self.n.to_string());
        parts.join(" ")
    }

    pub fn from_line(line: &str) -> Result<FieldSpec> {
        let toks: Vec<u64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| Error::Parse(1, format!("bad field token {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if toks.len() < 2 {
            return Err(Error::Parse(1, "field line too short".into()));
        }
        let p = toks[0];
        let m = toks[1] as usize;
        if toks.len() != 2 + (m + 1) + m + 1 {
            return Err(Error::Parse(1, "field line has wrong token count".into()));
        }
        let modulus = toks[2..2 + m + 1].to_vec();
        let zeta = FieldElement {
            coeffs: toks[2 + m + 1..2 + m + 1 + m].to_vec(),
        };
        let n = toks[2 + 2 * m + 1];
        let rebuilt = build_splitting_field(p, n)?;
        if rebuilt.modulus != modulus || rebuilt.zeta != zeta {
            return Err(Error::Parse(
                1,
                "field line disagrees with the canonical construction".into(),
            ));
        }
        Ok(rebuilt)
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder by a (not necessarily monic) nonzero divisor.
fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = poly_deg(b);
    let lead_inv = fp_inv(b[db], p);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut q = vec![0u64; a.len()];
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let c = r[dr] * lead_inv % p;
        let shift = dr - db;
        q[shift] = (q[shift] + c) % p;
        for k in 0..=db {
            let sub = c * b[k] % p;
            r[k + shift] = (r[k + shift] + p - sub) % p;
        }
        poly_trim(&mut r);
        if poly_deg(&r) < db {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// Base-p digits (ascending) of `(p^m - 1) / n`; requires `n | p^m - 1`.
fn exponent_digits(p: u64, m: usize, n: u64) -> Vec<u64> {
    // long division over most-significant digits; all digits of p^m - 1 are p-1
    let mut quot_rev = Vec::with_capacity(m);
    let mut rem: u64 = 0;
    for _ in 0..m {
        let cur = rem * p + (p - 1);
        quot_rev.push(cur / n);
        rem = cur % n;
    }
    assert_eq!(rem, 0, "n does not divide p^m - 1");
    quot_rev.reverse();
    quot_rev
}

static FIELD_CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<FieldSpec>>>> = OnceLock::new();

/// Construct (or fetch from the process cache) `E = F_p(zeta_n)`.
pub fn build_splitting_field(p: u64, n: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME || n > MAX_ROOT_ORDER || n == 0 {
        return Err(Error::BoundExceeded(format!(
            "field parameters p={p}, n={n} outside p <= {MAX_PRIME}, 1 <= n <= {MAX_ROOT_ORDER}"
        )));
    }
    if gcd(p, n) != 1 {
        return Err(Error::NotCoprime(p, n));
    }
    let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(spec) = cache.lock().unwrap().get(&(p, n)) {
        return Ok((**spec).clone());
    }

    let m = mult_order(p, n)? as usize;
    let modulus = smallest_irreducible(p, m);
    let mut spec = FieldSpec {
        p,
        m,
        modulus,
        zeta: FieldElement {
            coeffs: vec![0; m],
        },
        n,
    };
    spec.zeta = find_canonical_zeta(&spec)?;

    cache
        .lock()
        .unwrap()
        .insert((p, n), Arc::new(spec.clone()));
    Ok(spec)
}

/// Smallest element (value order) of multiplicative order exactly `n`.
fn find_canonical_zeta(spec: &FieldSpec) -> Result<FieldElement> {
    let n = spec.n;
    if n == 1 {
        return Ok(spec.one());
    }
    let digits = exponent_digits(spec.p, spec.m, n);
    let primes = prime_factors(n);
    // find one element of order exactly n
    let mut z = spec.one();
    let w = loop {
        z = spec
            .next_element(&z)
            .ok_or_else(|| Error::BoundExceeded("no element of the requested order".into()))?;
        if z.is_zero() {
            continue;
        }
        let cand = spec.pow_base_p_digits(&z, &digits);
        if cand.is_zero() || cand == spec.one() {
            continue;
        }
        let full = primes
            .iter()
            .all(|&q| spec.pow(&cand, (n / q) as u128) != spec.one());
        if full {
            break cand;
        }
    };
    // the set {w^j : gcd(j, n) = 1} is every element of order n; take the min
    let mut best: Option<FieldElement> = None;
    let mut pw = spec.one();
    for j in 1..n {
        pw = spec.mul(&pw, &w);
        if gcd(j, n) != 1 {
            continue;
        }
        match &best {
            None => best = Some(pw.clone()),
            Some(b) => {
                if pw.value_cmp(b) == std::cmp::Ordering::Less {
                    best = Some(pw.clone());
                }
            }
        }
    }
    Ok(best.expect("n > 1 has at least one unit exponent"))
}

/// The Galois conjugation `x -> x^p` as a standalone operation.
pub fn frobenius_map(x: &FieldElement, spec: &FieldSpec) -> FieldElement {
    spec.frobenius(x)
}
