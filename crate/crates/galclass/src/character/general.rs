//! Character tables from the Cayley table alone: split the center of the
//! group algebra `E[G]` into its one-dimensional components, normalize the
//! resulting common eigenvectors into primitive central idempotents, and
//! read off each character's values. The integer degree is recovered as the
//! square root of the rank of the idempotent acting on the regular module.

use crate::character::{general_cache_get, general_cache_put, table_hash, CharacterTable};
use crate::field::{build_splitting_field, FieldElement, FieldSpec};
use crate::group::Group;
use crate::{Error, Result};

/// Order cap: the eigenvector split is exhaustive, so keep it small.
pub const GENERAL_ORDER_BOUND: usize = 64;

/// Character table of an arbitrary validated group over `F_p(zeta_exp(G))`.
pub fn character_table_general(g: &Group, p: u64) -> Result<CharacterTable> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if g.order() as u64 % p == 0 {
        return Err(Error::PrimeDividesOrder(p, g.order()));
    }
    if g.order() > GENERAL_ORDER_BOUND {
        return Err(Error::BoundExceeded(format!(
            "general character table capped at order {GENERAL_ORDER_BOUND}"
        )));
    }
    let key = (table_hash(g), p);
    if let Some(t) = general_cache_get(key) {
        return Ok(t);
    }

    let field = build_splitting_field(p, g.exponent() as u64)?;
    let order_bits = (field.degree() as u32) * (64 - (p - 1).leading_zeros());
    if order_bits >= 120 {
        return Err(Error::BoundExceeded(
            "splitting field too large for eigenvalue search".into(),
        ));
    }

    let classes = g.conjugacy_classes();
    let h = classes.len();
    let class_map = g.class_map(&classes);

    // structure constants: K_i K_j = sum_k a[i][j][k] K_k, computed as
    // a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j} for the class reps z_k
    let mut a = vec![vec![vec![0u64; h]; h]; h];
    for i in 0..h {
        for (k, class_k) in classes.iter().enumerate() {
            let zk = class_k[0];
            for &x in &classes[i] {
                let y = g.mul(g.inv(x), zk);
                a[i][class_map[y]][k] += 1;
            }
        }
    }

    // multiplication-by-K_i matrices over E in the class-sum basis
    let ms: Vec<EMat> = (0..h)
        .map(|i| {
            let mut m = EMat::zero(&field, h, h);
            for j in 0..h {
                for k in 0..h {
                    *m.at_mut(k, j) = field.from_int(a[i][j][k] % p);
                }
            }
            m
        })
        .collect();

    // split the center into common eigenspaces
    let mut spaces: Vec<EMat> = vec![EMat::identity(&field, h)];
    for mi in &ms {
        let mut next = Vec::new();
        for s in spaces {
            if s.cols == 1 {
                next.push(s);
                continue;
            }
            let restricted = restrict(&field, mi, &s)?;
            let mut charpoly = hessenberg_charpoly(&field, &restricted);
            normalize_monic(&field, &mut charpoly);
            let roots = roots_in_field(&field, &charpoly)?;
            let mut covered = 0;
            for lambda in &roots {
                let mut shifted = restricted.clone();
                for d in 0..shifted.cols {
                    let v = field.sub(shifted.at(d, d), lambda);
                    *shifted.at_mut(d, d) = v;
                }
                let kernel = kernel_basis(&field, &shifted);
                if kernel.cols == 0 {
                    continue;
                }
                covered += kernel.cols;
                next.push(mat_mul(&field, &s, &kernel));
            }
            if covered != s.cols {
                return Err(Error::DegenerateEigenbasis(format!(
                    "eigenspaces cover {covered} of {} dimensions",
                    s.cols
                )));
            }
        }
        spaces = next;
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
    }
    if spaces.len() != h || spaces.iter().any(|s| s.cols != 1) {
        return Err(Error::DegenerateEigenbasis(format!(
            "center split into {} one-dimensional pieces, expected {h}",
            spaces.len()
        )));
    }

    // normalize each eigenvector into an idempotent: v*v = c v, e = v / c
    let mut rows = Vec::with_capacity(h);
    for s in &spaces {
        let v: Vec<FieldElement> = (0..h).map(|k| s.at(k, 0).clone()).collect();
        let mut w = vec![field.zero(); h];
        for i in 0..h {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..h {
                if v[j].is_zero() {
                    continue;
                }
                let vij = field.mul(&v[i], &v[j]);
                for k in 0..h {
                    if a[i][j][k] % p != 0 {
                        let t = field.mul(&vij, &field.from_int(a[i][j][k] % p));
                        w[k] = field.add(&w[k], &t);
                    }
                }
            }
        }
        let pivot = (0..h)
            .find(|&k| !v[k].is_zero())
            .expect("eigenvector is nonzero");
        let c = field.mul(&w[pivot], &field.inv(&v[pivot]));
        if c.is_zero() {
            return Err(Error::DegenerateEigenbasis(
                "eigenvector squares to zero".into(),
            ));
        }
        for k in 0..h {
            let lhs = field.mul(&c, &v[k]);
            if lhs != w[k] {
                return Err(Error::DegenerateEigenbasis(
                    "eigenvector does not span an ideal".into(),
                ));
            }
        }
        let cinv = field.inv(&c);
        let e: Vec<FieldElement> = v.iter().map(|x| field.mul(x, &cinv)).collect();

        // integer degree: 1 for abelian groups (irreducibles over a
        // splitting field are linear); otherwise the square root of the
        // rank of the idempotent acting on the regular module
        let n = g.order();
        let d = if g.is_abelian() {
            1
        } else {
            let mut reg = EMat::zero(&field, n, n);
            for x in 0..n {
                for hh in 0..n {
                    let row = g.mul(hh, x);
                    let v = field.add(reg.at(row, x), &e[class_map[hh]]);
                    *reg.at_mut(row, x) = v;
                }
            }
            let rank = rank(&field, reg);
            (1..=n).find(|&d| d * d == rank).ok_or_else(|| {
                Error::DegenerateEigenbasis(format!("idempotent rank {rank} is not a square"))
            })?
        };

        // chi(x) = (#G / d) * coeff(x^{-1})
        let factor = field.mul(
            &field.from_int(n as u64 % p),
            &field.inv(&field.from_int(d as u64 % p)),
        );
        let per_element: Vec<FieldElement> = (0..n)
            .map(|x| field.mul(&factor, &e[class_map[g.inv(x)]]))
            .collect();
        rows.push((d, per_element));
    }

    let table = CharacterTable::from_element_rows(g.clone(), field, rows)?;
    general_cache_put(key, &table);
    Ok(table)
}

// ---------------------------------------------------------------------------
// dense matrices over E
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub(crate) struct EMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<FieldElement>,
}

impl EMat {
    fn zero(field: &FieldSpec, rows: usize, cols: usize) -> EMat {
        EMat {
            rows,
            cols,
            a: vec![field.zero(); rows * cols],
        }
    }

    fn identity(field: &FieldSpec, n: usize) -> EMat {
        let mut m = EMat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.a[r * self.cols + c]
    }

    #[inline]
    fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElement {
        &mut self.a[r * self.cols + c]
    }
}

fn mat_mul(field: &FieldSpec, x: &EMat, y: &EMat) -> EMat {
    assert_eq!(x.cols, y.rows);
    let mut out = EMat::zero(field, x.rows, y.cols);
    for i in 0..x.rows {
        for k in 0..x.cols {
            if x.at(i, k).is_zero() {
                continue;
            }
            for j in 0..y.cols {
                if y.at(k, j).is_zero() {
                    continue;
                }
                let t = field.mul(x.at(i, k), y.at(k, j));
                let v = field.add(out.at(i, j), &t);
                *out.at_mut(i, j) = v;
            }
        }
    }
    out
}

/// Row-reduce in place; returns pivot columns.
fn rref(field: &FieldSpec, m: &mut EMat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p_row) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        for c in 0..m.cols {
            let tmp = m.at(p_row, c).clone();
            *m.at_mut(p_row, c) = m.at(row, c).clone();
            *m.at_mut(row, c) = tmp;
        }
        let inv = field.inv(m.at(row, col));
        for c in col..m.cols {
            let v = field.mul(m.at(row, c), &inv);
            *m.at_mut(row, c) = v;
        }
        for r in 0..m.rows {
            if r != row && !m.at(r, col).is_zero() {
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let t = field.mul(&f, m.at(row, c));
                    let v = field.sub(m.at(r, c), &t);
                    *m.at_mut(r, c) = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn rank(field: &FieldSpec, mut m: EMat) -> usize {
    rref(field, &mut m).len()
}

/// Basis of the right kernel, as columns.
fn kernel_basis(field: &FieldSpec, m: &EMat) -> EMat {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = EMat::zero(field, m.cols, free.len());
    for (fi, &fc) in free.iter().enumerate() {
        *out.at_mut(fc, fi) = field.one();
        for (pr, &pc) in pivots.iter().enumerate() {
            *out.at_mut(pc, fi) = field.neg(work.at(pr, fc));
        }
    }
    out
}

/// Matrix of the action of `m` on the column space of `basis` (which must be
/// invariant): solve `m * basis = basis * out`.
fn restrict(field: &FieldSpec, m: &EMat, basis: &EMat) -> Result<EMat> {
    let image = mat_mul(field, m, basis);
    let rows = basis.rows;
    let s = basis.cols;
    let mut aug = EMat::zero(field, rows, s + image.cols);
    for r in 0..rows {
        for c in 0..s {
            *aug.at_mut(r, c) = basis.at(r, c).clone();
        }
        for c in 0..image.cols {
            *aug.at_mut(r, s + c) = image.at(r, c).clone();
        }
    }
    let pivots = rref(field, &mut aug);
    if pivots.len() != s || pivots.iter().any(|&p| p >= s) {
        return Err(Error::DegenerateEigenbasis(
            "subspace basis lost rank or is not invariant".into(),
        ));
    }
    let mut out = EMat::zero(field, s, image.cols);
    for (r, _) in pivots.iter().enumerate() {
        for c in 0..image.cols {
            *out.at_mut(r, c) = aug.at(r, s + c).clone();
        }
    }
    // confirm invariance: basis * out == image
    let back = mat_mul(field, basis, &out);
    for r in 0..rows {
        for c in 0..image.cols {
            if back.at(r, c) != image.at(r, c) {
                return Err(Error::DegenerateEigenbasis(
                    "subspace is not invariant under the class-sum action".into(),
                ));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// characteristic polynomial and root finding over E
// ---------------------------------------------------------------------------

/// Characteristic polynomial (ascending coefficients, monic) via similarity
/// reduction to upper Hessenberg form and the standard recurrence.
pub(crate) fn hessenberg_charpoly(field: &FieldSpec, m: &EMat) -> Vec<FieldElement> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(pivot) = (j + 1..n).find(|&r| !h.at(r, j).is_zero()) else {
            continue;
        };
        if pivot != j + 1 {
            for c in 0..n {
                let tmp = h.at(pivot, c).clone();
                *h.at_mut(pivot, c) = h.at(j + 1, c).clone();
                *h.at_mut(j + 1, c) = tmp;
            }
            for r in 0..n {
                let tmp = h.at(r, pivot).clone();
                *h.at_mut(r, pivot) = h.at(r, j + 1).clone();
                *h.at_mut(r, j + 1) = tmp;
            }
        }
        let inv = field.inv(h.at(j + 1, j));
        for i in j + 2..n {
            if h.at(i, j).is_zero() {
                continue;
            }
            let f = field.mul(h.at(i, j), &inv);
            for c in 0..n {
                let t = field.mul(&f, h.at(j + 1, c));
                let v = field.sub(h.at(i, c), &t);
                *h.at_mut(i, c) = v;
            }
            for r in 0..n {
                let t = field.mul(&f, h.at(r, i));
                let v = field.add(h.at(r, j + 1), &t);
                *h.at_mut(r, j + 1) = v;
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_i h_ik (prod_{j=i..k-1} h_{j+1,j}) p_{i-1}
    let mut polys: Vec<Vec<FieldElement>> = vec![vec![field.one()]];
    for k in 1..=n {
        let mut pk = poly_mul_linear(field, &polys[k - 1], h.at(k - 1, k - 1));
        let mut subdiag = field.one();
        for i in (1..k).rev() {
            subdiag = field.mul(&subdiag, h.at(i, i - 1));
            if subdiag.is_zero() {
                break;
            }
            if h.at(i - 1, k - 1).is_zero() {
                continue;
            }
            let coeff = field.mul(h.at(i - 1, k - 1), &subdiag);
            for (t, c) in polys[i - 1].iter().enumerate() {
                let sub = field.mul(&coeff, c);
                pk[t] = field.sub(&pk[t], &sub);
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// `(x - a) * p`.
fn poly_mul_linear(
    field: &FieldSpec,
    p: &[FieldElement],
    a: &FieldElement,
) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] = field.add(&out[i + 1], c);
        let t = field.mul(a, c);
        out[i] = field.sub(&out[i], &t);
    }
    out
}

pub(crate) fn epoly_trim(poly: &mut Vec<FieldElement>) {
    while poly.len() > 1 && poly.last().unwrap().is_zero() {
        poly.pop();
    }
}

fn epoly_deg(p: &[FieldElement]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn epoly_is_zero(p: &[FieldElement]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn normalize_monic(field: &FieldSpec, p: &mut Vec<FieldElement>) {
    epoly_trim(p);
    let d = epoly_deg(p);
    if p[d].is_zero() {
        return;
    }
    let inv = field.inv(&p[d]);
    for c in p.iter_mut() {
        *c = field.mul(c, &inv);
    }
}

fn epoly_mul(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if epoly_is_zero(a) || epoly_is_zero(b) {
        return vec![field.zero()];
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let t = field.mul(ca, cb);
            out[i + j] = field.add(&out[i + j], &t);
        }
    }
    epoly_trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
fn epoly_rem(field: &FieldSpec, a: &[FieldElement], f: &[FieldElement]) -> Vec<FieldElement> {
    let df = epoly_deg(f);
    let mut r = a.to_vec();
    epoly_trim(&mut r);
    while !epoly_is_zero(&r) && epoly_deg(&r) >= df {
        let dr = epoly_deg(&r);
        let lead = r[dr].clone();
        if !lead.is_zero() {
            let shift = dr - df;
            for k in 0..=df {
                let t = field.mul(&lead, &f[k]);
                r[k + shift] = field.sub(&r[k + shift], &t);
            }
        }
        epoly_trim(&mut r);
        if epoly_deg(&r) < df {
            break;
        }
    }
    epoly_trim(&mut r);
    r
}

fn epoly_gcd(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    epoly_trim(&mut x);
    epoly_trim(&mut y);
    while !epoly_is_zero(&y) {
        let mut m = y.clone();
        normalize_monic(field, &mut m);
        let r = epoly_rem(field, &x, &m);
        x = m;
        y = r;
    }
    normalize_monic(field, &mut x);
    x
}

fn epoly_powmod(
    field: &FieldSpec,
    base: &[FieldElement],
    mut e: u128,
    f: &[FieldElement],
) -> Vec<FieldElement> {
    let mut acc = vec![field.one()];
    let mut b = epoly_rem(field, base, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = epoly_rem(field, &epoly_mul(field, &acc, &b), f);
        }
        b = epoly_rem(field, &epoly_mul(field, &b, &b), f);
        e >>= 1;
    }
    acc
}

/// All roots in E of a monic polynomial. Zero and the n-th roots of unity
/// are probed first (they cover every eigenvalue arising from abelian class
/// sums); whatever survives deflation goes through the generic
/// gcd-with-`x^q - x` route and a deterministic sweep of splitting shifts.
pub(crate) fn roots_in_field(field: &FieldSpec, f: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let p = field.p();
    let m = field.degree() as u32;
    let q: u128 = (p as u128)
        .checked_pow(m)
        .ok_or_else(|| Error::BoundExceeded("field size exceeds u128".into()))?;
    let mut work = f.to_vec();
    normalize_monic(field, &mut work);
    let mut roots = Vec::new();

    let mut candidates = vec![field.zero()];
    let mut zp = field.one();
    for _ in 0..field.root_order() {
        candidates.push(zp.clone());
        zp = field.mul(&zp, field.zeta());
    }
    for z in candidates {
        while epoly_deg(&work) > 0 && epoly_eval(field, &work, &z).is_zero() {
            work = epoly_deflate(field, &work, &z);
            if !roots.contains(&z) {
                roots.push(z.clone());
            }
        }
    }
    if epoly_deg(&work) > 0 {
        let x = vec![field.zero(), field.one()];
        let xq = epoly_powmod(field, &x, q, &work);
        let mut diff = xq;
        if diff.len() < 2 {
            diff.resize(2, field.zero());
        }
        diff[1] = field.sub(&diff[1], &field.one());
        epoly_trim(&mut diff);
        let linear_part = epoly_gcd(field, &work, &diff);
        split_linear_product(field, linear_part, q, &mut roots)?;
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn epoly_eval(field: &FieldSpec, f: &[FieldElement], z: &FieldElement) -> FieldElement {
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = field.add(&field.mul(&acc, z), c);
    }
    acc
}

/// Exact division by `x - z` (synthetic division); `z` must be a root.
fn epoly_deflate(field: &FieldSpec, f: &[FieldElement], z: &FieldElement) -> Vec<FieldElement> {
    let d = epoly_deg(f);
    let mut out = vec![field.zero(); d];
    let mut carry = field.zero();
    for i in (0..d).rev() {
        carry = field.add(&f[i + 1], &field.mul(&carry, z));
        out[i] = carry.clone();
    }
    debug_assert!(
        field
            .add(&f[0], &field.mul(&carry, z))
            .is_zero(),
        "deflation requires a root"
    );
    out
}

fn split_linear_product(
    field: &FieldSpec,
    g: Vec<FieldElement>,
    q: u128,
    out: &mut Vec<FieldElement>,
) -> Result<()> {
    let d = epoly_deg(&g);
    if d == 0 {
        return Ok(());
    }
    if d == 1 {
        // monic x + c: root is -c
        out.push(field.neg(&g[0]));
        return Ok(());
    }
    let mut delta = field.zero();
    loop {
        let splitter = if field.p() == 2 {
            // additive splitting: the F_2-trace polynomial of delta * x
            let t = q.trailing_zeros() as usize; // q = 2^t
            let mut term = epoly_rem(field, &[field.zero(), delta.clone()], &g);
            let mut acc = term.clone();
            for _ in 1..t {
                term = epoly_rem(field, &epoly_mul(field, &term, &term), &g);
                for (i, c) in term.iter().enumerate() {
                    if i < acc.len() {
                        acc[i] = field.add(&acc[i], c);
                    } else {
                        acc.push(c.clone());
                    }
                }
            }
            epoly_trim(&mut acc);
            acc
        } else {
            // multiplicative splitting: (x + delta)^((q-1)/2) - 1
            let base = vec![delta.clone(), field.one()];
            let mut powed = epoly_powmod(field, &base, (q - 1) / 2, &g);
            powed[0] = field.sub(&powed[0], &field.one());
            epoly_trim(&mut powed);
            powed
        };
        if !epoly_is_zero(&splitter) {
            let h = epoly_gcd(field, &g, &splitter);
            let dh = epoly_deg(&h);
            if dh > 0 && dh < d {
                let (quot, rem) = epoly_divmod(field, &g, &h);
                assert!(epoly_is_zero(&rem), "split factor must divide");
                split_linear_product(field, h, q, out)?;
                split_linear_product(field, quot, q, out)?;
                return Ok(());
            }
        }
        delta = field
            .next_element(&delta)
            .ok_or_else(|| Error::DegenerateEigenbasis("splitting sweep exhausted E".into()))?;
    }
}

fn epoly_divmod(
    field: &FieldSpec,
    a: &[FieldElement],
    f: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    // f monic
    let df = epoly_deg(f);
    let mut r = a.to_vec();
    epoly_trim(&mut r);
    let mut q = vec![field.zero(); a.len()];
    while !epoly_is_zero(&r) && epoly_deg(&r) >= df {
        let dr = epoly_deg(&r);
        let lead = r[dr].clone();
        let shift = dr - df;
        q[shift] = field.add(&q[shift], &lead);
        for k in 0..=df {
            let t = field.mul(&lead, &f[k]);
            r[k + shift] = field.sub(&r[k + shift], &t);
        }
        epoly_trim(&mut r);
        if epoly_deg(&r) < df {
            break;
        }
    }
    epoly_trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{character_table_family, fp_irreducibles, galois_orbits};
    use crate::group::FamilySpec;

    fn companion(field: &FieldSpec, poly: &[u64]) -> EMat {
        // poly monic ascending over the prime field, degree n
        let n = poly.len() - 1;
        let mut m = EMat::zero(field, n, n);
        for i in 1..n {
            *m.at_mut(i, i - 1) = field.one();
        }
        for i in 0..n {
            *m.at_mut(i, n - 1) = field.neg(&field.from_int(poly[i]));
        }
        m
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        let field = build_splitting_field(7, 6).unwrap();
        // x^3 + 2x + 1
        let poly = [1u64, 2, 0, 1];
        let m = companion(&field, &poly);
        let cp = hessenberg_charpoly(&field, &m);
        let expect: Vec<FieldElement> = poly.iter().map(|&c| field.from_int(c)).collect();
        assert_eq!(cp, expect);
    }

    #[test]
    fn charpoly_of_diagonal() {
        let field = build_splitting_field(5, 4).unwrap();
        let mut m = EMat::zero(&field, 3, 3);
        for (i, d) in [1u64, 2, 3].iter().enumerate() {
            *m.at_mut(i, i) = field.from_int(*d);
        }
        let cp = hessenberg_charpoly(&field, &m);
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6 ≡ x^3 + 4x^2 + x + 4 (mod 5)
        let expect: Vec<FieldElement> =
            [4u64, 1, 4, 1].iter().map(|&c| field.from_int(c)).collect();
        assert_eq!(cp, expect);
        let roots = roots_in_field(&field, &cp).unwrap();
        let mut want = vec![field.from_int(1), field.from_int(2), field.from_int(3)];
        want.sort();
        assert_eq!(roots, want);
    }

    #[test]
    fn roots_in_extension_field() {
        // x^2 + 1 over F_3(zeta_8): roots are the two primitive 4th roots
        let field = build_splitting_field(3, 8).unwrap();
        let f = vec![field.one(), field.zero(), field.one()];
        let roots = roots_in_field(&field, &f).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(field.mul(r, r), field.neg(&field.one()));
        }
    }

    #[test]
    fn roots_char_two() {
        // x^2 + x + 1 splits over F_4 = F_2(zeta_3)
        let field = build_splitting_field(2, 3).unwrap();
        let f = vec![field.one(), field.one(), field.one()];
        let roots = roots_in_field(&field, &f).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let v = field.add(&field.add(&field.mul(r, r), r), &field.one());
            assert!(v.is_zero());
        }
    }

    #[test]
    fn h8_at_3_degrees() {
        let g = Group::from_family(&FamilySpec::GeneralizedQuaternion(2)).unwrap();
        let t = character_table_general(&g, 3).unwrap();
        let degrees: Vec<usize> = t.rows().iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn d3_at_7_degrees() {
        let g = Group::from_family(&FamilySpec::Dihedral(3)).unwrap();
        let t = character_table_general(&g, 7).unwrap();
        let degrees: Vec<usize> = t.rows().iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn trivial_group_general() {
        let g = Group::from_family(&FamilySpec::Cyclic(1)).unwrap();
        let t = character_table_general(&g, 5).unwrap();
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.rows()[0].degree, 1);
    }

    #[test]
    fn relabeled_tables_give_the_same_invariants() {
        // scramble element indices (moving the identity) and check that the
        // degree multiset and orbit shapes are unchanged
        let d5 = Group::from_family(&FamilySpec::Dihedral(5)).unwrap();
        let n = d5.order();
        let perm: Vec<usize> = (0..n).map(|i| (3 * i + 7) % n).collect();
        let mut rows = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[perm[i]][perm[j]] = perm[d5.mul(i, j)];
            }
        }
        let relabeled = Group::validate_cayley(rows).unwrap();
        assert_ne!(relabeled.identity(), 0);
        let reference = character_table_general(&d5, 3).unwrap();
        let scrambled = character_table_general(&relabeled, 3).unwrap();
        let degrees = |t: &CharacterTable| {
            let mut d: Vec<usize> = t.rows().iter().map(|r| r.degree).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(degrees(&reference), degrees(&scrambled));
        let shapes = |t: &CharacterTable| {
            let mut s: Vec<(usize, usize, bool)> = galois_orbits(t)
                .unwrap()
                .iter()
                .map(|o| (o.degree, o.r, o.faithful))
                .collect();
            s.sort_unstable();
            s
        };
        assert_eq!(shapes(&reference), shapes(&scrambled));
    }

    #[test]
    fn general_equals_family_on_small_sample() {
        for (spec, p) in [
            (FamilySpec::Cyclic(5), 2u64),
            (FamilySpec::Cyclic(6), 5),
            (FamilySpec::Dihedral(4), 3),
            (FamilySpec::Dihedral(5), 3),
            (FamilySpec::GeneralizedQuaternion(2), 5),
            (FamilySpec::Alt4, 7),
            (FamilySpec::Group16_08, 3),
            (FamilySpec::KleinFour, 7),
        ] {
            let fam = character_table_family(&spec, p).unwrap();
            let gen = character_table_general(fam.group(), p).unwrap();
            assert_eq!(fam.rows(), gen.rows(), "{spec} at p = {p}");
            assert_eq!(
                galois_orbits(&fam).unwrap(),
                galois_orbits(&gen).unwrap(),
                "{spec} at p = {p}"
            );
            assert_eq!(
                fp_irreducibles(&fam).unwrap(),
                fp_irreducibles(&gen).unwrap(),
                "{spec} at p = {p}"
            );
        }
    }
}
