//! Finite abelian p-groups carrying a validated group action, as explicit
//! objects: apply group-ring elements, compute kernels/images/structure via
//! Smith normal form, build Maschke complements, and machine-check the
//! norm-splitting, Klein-four decomposition, annihilation-bound and
//! dihedral-span arguments used on relative class groups.
//!
//! Elements of `⊕ Z/p^{e_i}` are integer column vectors reduced per row;
//! endomorphisms are integer matrices whose column `j` is the image of the
//! j-th generator, so well-definedness is the divisibility condition
//! `p^{e_i - e_j} | entry_{ij}` for `e_i > e_j`.

pub mod scan;
pub mod snf;

use num_bigint::BigInt;
use num_traits::One;

use crate::group::Group;
use crate::{Error, Result};
use snf::{
    factors_order, intersection_generators, preimage_kernel, span_invariant_factors, IntMat,
};

/// A finite abelian p-group `⊕ Z/p^{e_i}` with non-increasing exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPGroup {
    p: u64,
    exponents: Vec<u32>,
}

impl AbelianPGroup {
    /// An empty exponent list is the trivial module.
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<AbelianPGroup> {
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if exponents.iter().any(|&e| e == 0) {
            return Err(Error::ParamOutOfRange(
                "exponents must be positive".into(),
            ));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ParamOutOfRange(
                "exponents must be non-increasing".into(),
            ));
        }
        for &e in &exponents {
            let mut v: u64 = 1;
            for _ in 0..e {
                v = v
                    .checked_mul(p)
                    .ok_or_else(|| Error::BoundExceeded("modulus p^e exceeds u64".into()))?;
            }
            if v > (1 << 31) {
                return Err(Error::BoundExceeded(
                    "modulus p^e exceeds the supported range".into(),
                ));
            }
        }
        Ok(AbelianPGroup { p, exponents })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponents.len() == 1
    }

    /// The largest cyclic-factor modulus, or p itself for the trivial
    /// module (where any unit datum works).
    pub fn max_modulus(&self) -> u64 {
        self.moduli().first().copied().unwrap_or(self.p)
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .map(|&e| (0..e).fold(1u64, |acc, _| acc * self.p))
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.moduli()
            .iter()
            .fold(BigInt::one(), |acc, &m| acc * BigInt::from(m))
    }

    /// Invariant factors in report form (largest first).
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.moduli()
    }
}

/// An endomorphism matrix: row-major `rank x rank` integers, canonically
/// reduced (the entry in row i lives mod p^{e_i}).
pub type Matrix = Vec<i64>;

fn mat_at(m: &Matrix, t: usize, i: usize, j: usize) -> i64 {
    m[i * t + j]
}

/// Reduce a raw integer matrix per row.
pub fn reduce_matrix(base: &AbelianPGroup, m: &[i64]) -> Matrix {
    let t = base.rank();
    let moduli = base.moduli();
    let mut out = vec![0i64; t * t];
    for i in 0..t {
        for j in 0..t {
            out[i * t + j] = m[i * t + j].rem_euclid(moduli[i] as i64);
        }
    }
    out
}

pub fn identity_matrix(base: &AbelianPGroup) -> Matrix {
    let t = base.rank();
    let mut m = vec![0i64; t * t];
    for i in 0..t {
        m[i * t + i] = 1;
    }
    m
}

pub fn zero_matrix(base: &AbelianPGroup) -> Matrix {
    vec![0i64; base.rank() * base.rank()]
}

/// Matrix product reduced per row.
pub fn compose(base: &AbelianPGroup, a: &Matrix, b: &Matrix) -> Matrix {
    let t = base.rank();
    let moduli = base.moduli();
    let mut out = vec![0i64; t * t];
    for i in 0..t {
        let m = moduli[i] as i128;
        for j in 0..t {
            let mut acc: i128 = 0;
            for k in 0..t {
                acc += mat_at(a, t, i, k) as i128 * mat_at(b, t, k, j) as i128;
            }
            out[i * t + j] = acc.rem_euclid(m) as i64;
        }
    }
    out
}

pub fn mat_add(base: &AbelianPGroup, a: &Matrix, b: &Matrix) -> Matrix {
    let t = base.rank();
    let moduli = base.moduli();
    let mut out = vec![0i64; t * t];
    for i in 0..t {
        let m = moduli[i] as i64;
        for j in 0..t {
            out[i * t + j] = (mat_at(a, t, i, j) + mat_at(b, t, i, j)).rem_euclid(m);
        }
    }
    out
}

pub fn mat_scale(base: &AbelianPGroup, c: i64, a: &Matrix) -> Matrix {
    let t = base.rank();
    let moduli = base.moduli();
    let mut out = vec![0i64; t * t];
    for i in 0..t {
        let m = moduli[i] as i128;
        for j in 0..t {
            out[i * t + j] = ((c as i128 * mat_at(a, t, i, j) as i128).rem_euclid(m)) as i64;
        }
    }
    out
}

/// Apply an endomorphism to an element (column vector, reduced per row).
pub fn apply_matrix(base: &AbelianPGroup, m: &Matrix, v: &[i64]) -> Vec<i64> {
    let t = base.rank();
    let moduli = base.moduli();
    (0..t)
        .map(|i| {
            let mut acc: i128 = 0;
            for k in 0..t {
                acc += mat_at(m, t, i, k) as i128 * v[k] as i128;
            }
            acc.rem_euclid(moduli[i] as i128) as i64
        })
        .collect()
}

fn reduce_vector(base: &AbelianPGroup, v: &[i64]) -> Vec<i64> {
    v.iter()
        .zip(base.moduli())
        .map(|(&x, m)| x.rem_euclid(m as i64))
        .collect()
}

/// Well-definedness: `p^{e_i - e_j} | entry_{ij}` whenever `e_i > e_j`.
fn check_endomorphism(base: &AbelianPGroup, m: &Matrix) -> Result<()> {
    let t = base.rank();
    let exps = base.exponents();
    for i in 0..t {
        for j in 0..t {
            if exps[i] > exps[j] {
                let need = (0..exps[i] - exps[j]).fold(1i64, |acc, _| acc * base.p() as i64);
                if mat_at(m, t, i, j) % need != 0 {
                    return Err(Error::NotEndomorphism(format!(
                        "entry ({i}, {j}) = {} must be divisible by {need}",
                        mat_at(m, t, i, j)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Invertibility: the induced map on A/pA must be invertible, i.e. the
/// matrix mod p has nonzero determinant.
fn check_automorphism(base: &AbelianPGroup, m: &Matrix) -> Result<()> {
    let t = base.rank();
    let p = base.p() as i64;
    let mut work: Vec<i64> = m.iter().map(|&x| x.rem_euclid(p)).collect();
    let mut row = 0;
    for col in 0..t {
        let Some(pivot) = (row..t).find(|&r| work[r * t + col] != 0) else {
            return Err(Error::NotAutomorphism(format!(
                "matrix is singular mod {p} at column {col}"
            )));
        };
        if pivot != row {
            for c in 0..t {
                work.swap(pivot * t + c, row * t + c);
            }
        }
        let inv = mod_inverse(work[row * t + col], p).expect("pivot is a unit");
        for c in 0..t {
            work[row * t + c] = work[row * t + c] * inv % p;
        }
        for r in 0..t {
            if r != row && work[r * t + col] != 0 {
                let f = work[r * t + col];
                for c in 0..t {
                    work[r * t + c] = (work[r * t + c] - f * work[row * t + c]).rem_euclid(p);
                }
            }
        }
        row += 1;
    }
    Ok(())
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m, a.rem_euclid(m));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m))
}

/// A module with a validated action: one automorphism per group element,
/// multiplicative against the Cayley table.
#[derive(Debug, Clone)]
pub struct GModule {
    base: AbelianPGroup,
    group: Group,
    action: Vec<Matrix>,
}

/// A formal integer combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub coeffs: Vec<i64>,
}

impl RingElement {
    pub fn zero(group: &Group) -> RingElement {
        RingElement {
            coeffs: vec![0; group.order()],
        }
    }

    pub fn identity(group: &Group) -> RingElement {
        let mut r = RingElement::zero(group);
        r.coeffs[group.identity()] = 1;
        r
    }

    /// `1 + g`.
    pub fn one_plus(group: &Group, g: usize) -> RingElement {
        let mut r = RingElement::identity(group);
        r.coeffs[g] += 1;
        r
    }

    /// The norm element of a member list: `sum_{g in members} g`.
    pub fn norm_of(group: &Group, members: &[usize]) -> RingElement {
        let mut r = RingElement::zero(group);
        for &g in members {
            r.coeffs[g] += 1;
        }
        r
    }
}

impl GModule {
    pub fn base(&self) -> &AbelianPGroup {
        &self.base
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    /// The trivial action of any group.
    pub fn trivial(base: AbelianPGroup, group: Group) -> GModule {
        let id = identity_matrix(&base);
        let action = vec![id; group.order()];
        GModule {
            base,
            group,
            action,
        }
    }

    /// Extend generator images along the Cayley table and verify every
    /// module invariant: well-definedness, invertibility, and
    /// multiplicativity on all pairs.
    pub fn make_module(
        base: AbelianPGroup,
        group: Group,
        generators: &[(usize, Matrix)],
    ) -> Result<GModule> {
        let n = group.order();
        let mut action: Vec<Option<Matrix>> = vec![None; n];
        action[group.identity()] = Some(identity_matrix(&base));
        let mut gen_pairs: Vec<(usize, Matrix)> = Vec::new();
        for (g, m) in generators {
            let reduced = reduce_matrix(&base, m);
            check_endomorphism(&base, &reduced)?;
            check_automorphism(&base, &reduced)?;
            if *g == group.identity() {
                if reduced != identity_matrix(&base) {
                    return Err(Error::ActionRelationViolation(*g, *g));
                }
                continue;
            }
            match &action[*g] {
                None => action[*g] = Some(reduced.clone()),
                Some(existing) if *existing != reduced => {
                    return Err(Error::ActionRelationViolation(*g, *g));
                }
                _ => {}
            }
            gen_pairs.push((*g, reduced));
        }
        let mut reached = vec![group.identity()];
        reached.extend(gen_pairs.iter().map(|(g, _)| *g));
        reached.dedup();
        let mut head = 0;
        while head < reached.len() {
            let x = reached[head];
            head += 1;
            let mx = action[x].clone().expect("reached elements have images");
            for (s, ms) in &gen_pairs {
                let y = group.mul(x, *s);
                let my = compose(&base, &mx, ms);
                match &action[y] {
                    None => {
                        action[y] = Some(my);
                        reached.push(y);
                    }
                    Some(existing) => {
                        if *existing != my {
                            return Err(Error::ActionRelationViolation(x, *s));
                        }
                    }
                }
            }
        }
        if action.iter().any(|a| a.is_none()) {
            return Err(Error::HypothesisViolated(
                "the given elements do not generate the group".into(),
            ));
        }
        let action: Vec<Matrix> = action.into_iter().map(|a| a.unwrap()).collect();
        let module = GModule {
            base,
            group,
            action,
        };
        module.verify()?;
        Ok(module)
    }

    /// Full invariant check: used after construction and available to scans.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order();
        for g in 0..n {
            check_endomorphism(&self.base, &self.action[g])?;
            check_automorphism(&self.base, &self.action[g])?;
        }
        if self.action[self.group.identity()] != identity_matrix(&self.base) {
            return Err(Error::ActionRelationViolation(
                self.group.identity(),
                self.group.identity(),
            ));
        }
        for g in 0..n {
            for h in 0..n {
                let lhs = &self.action[self.group.mul(g, h)];
                let rhs = compose(&self.base, &self.action[g], &self.action[h]);
                if *lhs != rhs {
                    return Err(Error::ActionRelationViolation(g, h));
                }
            }
        }
        Ok(())
    }

    /// The endomorphism `sum coeff_g * action(g)`, reduced per row.
    pub fn apply_ring_element(&self, r: &RingElement) -> Matrix {
        assert_eq!(r.coeffs.len(), self.group.order());
        let mut acc = zero_matrix(&self.base);
        for (g, &c) in r.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            acc = mat_add(&self.base, &acc, &mat_scale(&self.base, c, &self.action[g]));
        }
        acc
    }

    /// Serialize for scan witnesses.
    pub fn render(&self) -> String {
        let mats: Vec<String> = self
            .action
            .iter()
            .map(|m| {
                let entries: Vec<String> = m.iter().map(|e| e.to_string()).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!(
            "p={} exponents={:?} order={} action={}",
            self.base.p(),
            self.base.exponents(),
            self.base.order(),
            mats.join(" ")
        )
    }
}

/// Invariant factors of the kernel and image of an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substructure {
    pub kernel: Vec<u64>,
    pub image: Vec<u64>,
}

fn matrix_as_intmat(base: &AbelianPGroup, m: &Matrix) -> IntMat {
    let t = base.rank();
    let rows: Vec<Vec<i64>> = (0..t)
        .map(|i| (0..t).map(|j| mat_at(m, t, i, j)).collect())
        .collect();
    IntMat::from_rows_i64(&rows)
}

/// Kernel and image structure via Smith normal form of the relation
/// lattices; checks `#kernel * #image = #base`.
pub fn substructure(base: &AbelianPGroup, endo: &Matrix) -> Result<Substructure> {
    let moduli = base.moduli();
    let m = matrix_as_intmat(base, endo);
    let image = span_invariant_factors(&moduli, &m)?;
    let kernel_gens = preimage_kernel(&m, &moduli);
    let kernel = span_invariant_factors(&moduli, &kernel_gens)?;
    let total = factors_order(&kernel) * factors_order(&image);
    if total != base.order() {
        return Err(Error::HypothesisViolated(format!(
            "#kernel * #image = {total} differs from #base = {}",
            base.order()
        )));
    }
    Ok(Substructure { kernel, image })
}

/// A G-stable complement of a stable subspace of an elementary abelian
/// module, via the averaging projector. Returns a basis of the complement.
pub fn maschke_complement(m: &GModule, sub: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let base = m.base();
    let p = base.p() as i64;
    if base.exponents().iter().any(|&e| e != 1) {
        return Err(Error::ParamOutOfRange(
            "Maschke complement needs an elementary abelian module".into(),
        ));
    }
    let n = m.group().order();
    if n as u64 % base.p() == 0 {
        return Err(Error::PrimeDividesOrder(base.p(), n));
    }
    let t = base.rank();

    let basis = fp_echelon(sub, t, p);
    let s = basis.len();
    for g in 0..n {
        for b in &basis {
            let image = apply_matrix(base, m.action(g), b);
            if !fp_in_span(&basis, &image, t, p) {
                return Err(Error::NotStable);
            }
        }
    }
    // complete to a full basis with standard vectors, sub first
    let mut ordered = basis.clone();
    for i in 0..t {
        if ordered.len() == t {
            break;
        }
        let mut e = vec![0i64; t];
        e[i] = 1;
        let mut trial = ordered.clone();
        trial.push(e);
        if fp_echelon(&trial, t, p).len() > ordered.len() {
            ordered = trial;
        }
    }
    assert_eq!(ordered.len(), t, "basis completion failed");
    // pi_0: projector onto sub along the remaining basis vectors
    let pmat = transpose_cols(&ordered, t);
    let pinv = fp_invert(&pmat, t, p).expect("completed basis is invertible");
    let mut diag = vec![0i64; t * t];
    for i in 0..s {
        diag[i * t + i] = 1;
    }
    let pi0 = fp_matmul(&fp_matmul(&pmat, &diag, t, p), &pinv, t, p);
    // average: (1/#G) sum_g action(g) pi0 action(g^{-1})
    let inv_n = mod_inverse(n as i64, p).expect("p does not divide #G");
    let mut acc = vec![0i64; t * t];
    for g in 0..n {
        let mg = m.action(g);
        let mg_inv = m.action(m.group().inv(g));
        let term = fp_matmul(&fp_matmul(mg, &pi0, t, p), mg_inv, t, p);
        for k in 0..t * t {
            acc[k] = (acc[k] + term[k]).rem_euclid(p);
        }
    }
    let pi: Vec<i64> = acc.iter().map(|&x| x * inv_n % p).collect();

    let pi2 = fp_matmul(&pi, &pi, t, p);
    assert_eq!(pi2, pi, "averaging projector must be idempotent");
    for b in &basis {
        assert_eq!(
            apply_matrix(base, &pi, b),
            reduce_vector(base, b),
            "projector must fix the subspace"
        );
    }
    for g in 0..n {
        let left = fp_matmul(m.action(g), &pi, t, p);
        let right = fp_matmul(&pi, m.action(g), t, p);
        assert_eq!(left, right, "projector must be equivariant");
    }
    let complement = fp_kernel(&pi, t, p);
    assert_eq!(complement.len() + s, t, "dimension bookkeeping failed");
    let mut union = basis.clone();
    union.extend(complement.iter().cloned());
    assert_eq!(
        fp_echelon(&union, t, p).len(),
        t,
        "sum must be the whole space"
    );
    Ok(complement)
}

// -- F_p linear algebra helpers (row vectors) --------------------------------

/// Fully reduced row echelon form (every pivot column is zero in the other
/// rows), sorted by pivot column.
fn fp_echelon(vecs: &[Vec<i64>], t: usize, p: i64) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<i64>> = vecs
        .iter()
        .map(|v| v.iter().map(|&x| x.rem_euclid(p)).collect())
        .collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut r in rows {
        for (row, &pc) in out.iter().zip(&pivots) {
            if r[pc] != 0 {
                let f = r[pc];
                for c in 0..t {
                    r[c] = (r[c] - f * row[c]).rem_euclid(p);
                }
            }
        }
        if let Some(pc) = (0..t).find(|&c| r[c] != 0) {
            let inv = mod_inverse(r[pc], p).unwrap();
            for c in 0..t {
                r[c] = r[c] * inv % p;
            }
            // back-substitute into the existing rows
            for row in out.iter_mut() {
                if row[pc] != 0 {
                    let f = row[pc];
                    for c in 0..t {
                        row[c] = (row[c] - f * r[c]).rem_euclid(p);
                    }
                }
            }
            out.push(r);
            pivots.push(pc);
        }
    }
    let mut idx: Vec<usize> = (0..out.len()).collect();
    idx.sort_by_key(|&i| pivots[i]);
    idx.into_iter().map(|i| out[i].clone()).collect()
}

fn fp_in_span(basis: &[Vec<i64>], v: &[i64], t: usize, p: i64) -> bool {
    let mut r: Vec<i64> = v.iter().map(|&x| x.rem_euclid(p)).collect();
    for row in basis {
        let pc = (0..t).find(|&c| row[c] != 0).unwrap();
        if r[pc] != 0 {
            let f = r[pc];
            for c in 0..t {
                r[c] = (r[c] - f * row[c]).rem_euclid(p);
            }
        }
    }
    r.iter().all(|&x| x == 0)
}

fn transpose_cols(cols: &[Vec<i64>], t: usize) -> Vec<i64> {
    let mut m = vec![0i64; t * t];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..t {
            m[i * t + j] = col[i];
        }
    }
    m
}

fn fp_matmul(a: &[i64], b: &[i64], t: usize, p: i64) -> Vec<i64> {
    let mut out = vec![0i64; t * t];
    for i in 0..t {
        for k in 0..t {
            let aik = a[i * t + k].rem_euclid(p);
            if aik == 0 {
                continue;
            }
            for j in 0..t {
                out[i * t + j] = (out[i * t + j] + aik * b[k * t + j]) % p;
            }
        }
    }
    for x in out.iter_mut() {
        *x = x.rem_euclid(p);
    }
    out
}

fn fp_invert(m: &[i64], t: usize, p: i64) -> Option<Vec<i64>> {
    let mut work: Vec<i64> = m.iter().map(|&x| x.rem_euclid(p)).collect();
    let mut inv = vec![0i64; t * t];
    for i in 0..t {
        inv[i * t + i] = 1;
    }
    for col in 0..t {
        let pivot = (col..t).find(|&r| work[r * t + col] != 0)?;
        if pivot != col {
            for c in 0..t {
                work.swap(pivot * t + c, col * t + c);
                inv.swap(pivot * t + c, col * t + c);
            }
        }
        let f = mod_inverse(work[col * t + col], p)?;
        for c in 0..t {
            work[col * t + c] = work[col * t + c] * f % p;
            inv[col * t + c] = inv[col * t + c] * f % p;
        }
        for r in 0..t {
            if r != col && work[r * t + col] != 0 {
                let f = work[r * t + col];
                for c in 0..t {
                    work[r * t + c] = (work[r * t + c] - f * work[col * t + c]).rem_euclid(p);
                    inv[r * t + c] = (inv[r * t + c] - f * inv[col * t + c]).rem_euclid(p);
                }
            }
        }
    }
    Some(inv)
}

fn fp_kernel(m: &[i64], t: usize, p: i64) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<i64>> = (0..t).map(|i| m[i * t..(i + 1) * t].to_vec()).collect();
    let ech = fp_echelon(&rows, t, p);
    let pivots: Vec<usize> = ech
        .iter()
        .map(|r| (0..t).find(|&c| r[c] != 0).unwrap())
        .collect();
    let mut out = Vec::new();
    for free in (0..t).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0i64; t];
        v[free] = 1;
        for (row, &pc) in ech.iter().zip(&pivots) {
            v[pc] = (-row[free]).rem_euclid(p);
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// the decomposition and annihilation checks
// ---------------------------------------------------------------------------

/// Report of [`norm_split`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormSplitReport {
    pub kernel: Vec<u64>,
    pub image: Vec<u64>,
    /// `#kernel * #image == #base` and the union of generators spans.
    pub order_check: bool,
}

/// Split the module along a norm-like element: requires `N ∘ N = degree · N`
/// (the transfer-then-norm identity) with `gcd(degree, p) = 1`, builds the
/// idempotent `degree^{-1} N`, and verifies `base ≅ ker(N) ⊕ im(N)`.
pub fn norm_split(m: &GModule, norm: &RingElement, degree: u64) -> Result<NormSplitReport> {
    let base = m.base();
    if degree == 0 || crate::field::gcd(degree, base.p()) != 1 {
        return Err(Error::NotCoprime(degree, base.p()));
    }
    let n_mat = m.apply_ring_element(norm);
    let nn = compose(base, &n_mat, &n_mat);
    let scaled = mat_scale(base, degree as i64, &n_mat);
    if nn != scaled {
        return Err(Error::HypothesisViolated(
            "norm squared is not degree times the norm on this module".into(),
        ));
    }
    let max_modulus = base.max_modulus() as i64;
    let u = mod_inverse(degree as i64, max_modulus).ok_or(Error::NotCoprime(degree, base.p()))?;
    let idem = mat_scale(base, u, &n_mat);
    let idem2 = compose(base, &idem, &idem);
    assert_eq!(idem2, idem, "scaled norm must be idempotent");

    let s = substructure(base, &idem)?;
    // union of image generators and complement-projector generators spans
    let moduli = base.moduli();
    let image_gens = matrix_as_intmat(base, &idem);
    let complement = {
        let mut c = identity_matrix(base);
        let t = base.rank();
        for i in 0..t {
            for j in 0..t {
                c[i * t + j] =
                    (c[i * t + j] - mat_at(&idem, t, i, j)).rem_euclid(moduli[i] as i64);
            }
        }
        matrix_as_intmat(base, &c)
    };
    let union = image_gens.hcat(&complement);
    let span = span_invariant_factors(&moduli, &union)?;
    let order_check = factors_order(&s.kernel) * factors_order(&s.image) == base.order()
        && factors_order(&span) == base.order();
    Ok(NormSplitReport {
        kernel: s.kernel,
        image: s.image,
        order_check,
    })
}

/// Report of [`v4_decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V4Report {
    /// Invariant factors of the three eigen-images `im((1 + sigma_i)/2)`.
    pub components: [Vec<u64>; 3],
    pub injective: bool,
    pub order_match: bool,
    pub pass: bool,
}

/// Decompose a Klein-four module annihilated by its full norm into the
/// three images `im(1 + sigma_i)`, and verify that `c -> (d^{1+sigma_i})_i`
/// with `d = c/2` is an isomorphism onto the product.
pub fn v4_decompose(m: &GModule) -> Result<V4Report> {
    let base = m.base();
    let group = m.group();
    if base.p() == 2 {
        return Err(Error::ParamOutOfRange("p must be odd".into()));
    }
    if group.order() != 4 || group.exponent() != 2 {
        return Err(Error::HypothesisViolated(
            "the acting group is not a Klein four group".into(),
        ));
    }
    let all: Vec<usize> = (0..4).collect();
    let full_norm = RingElement::norm_of(group, &all);
    if m.apply_ring_element(&full_norm) != zero_matrix(base) {
        return Err(Error::HypothesisViolated(
            "the full norm does not annihilate the module".into(),
        ));
    }
    let sigmas: Vec<usize> = (0..4).filter(|&g| g != group.identity()).collect();
    let max_modulus = base.max_modulus() as i64;
    let half = mod_inverse(2, max_modulus).expect("p odd");
    let moduli = base.moduli();
    let t = base.rank();

    let maps: Vec<Matrix> = sigmas
        .iter()
        .map(|&s| {
            let one_plus = m.apply_ring_element(&RingElement::one_plus(group, s));
            mat_scale(base, half, &one_plus)
        })
        .collect();
    let mut components: Vec<Vec<u64>> = Vec::new();
    for map in &maps {
        components.push(span_invariant_factors(&moduli, &matrix_as_intmat(base, map))?);
    }
    // injectivity of the stacked map into the product of the images
    let stacked = maps
        .iter()
        .map(|map| matrix_as_intmat(base, map))
        .reduce(|a, b| a.vcat(&b))
        .expect("three maps");
    let mut target_moduli = Vec::with_capacity(3 * t);
    for _ in 0..3 {
        target_moduli.extend_from_slice(&moduli);
    }
    let kernel_gens = preimage_kernel(&stacked, &target_moduli);
    let kernel = span_invariant_factors(&moduli, &kernel_gens)?;
    let injective = kernel.is_empty();
    let product_order = components
        .iter()
        .fold(BigInt::one(), |acc, c| acc * factors_order(c));
    let order_match = product_order == base.order();
    let pass = injective && order_match;
    Ok(V4Report {
        components: [
            components[0].clone(),
            components[1].clone(),
            components[2].clone(),
        ],
        injective,
        order_match,
        pass,
    })
}

/// Report of [`grun_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrunReport {
    pub commutator_order: usize,
    pub commutator_acts_trivially: bool,
    /// Exponent of the image of the norm over the commutator subgroup.
    pub norm_image_exponent: u64,
    /// `#commutator * exponent`, the annihilation bound.
    pub bound: u128,
    pub annihilates: bool,
}

/// For a cyclic module: the commutator subgroup acts trivially (the
/// automorphism group of a cyclic group is abelian), and
/// `#Γ' * e` annihilates the module, where `e` is the exponent of the image
/// of the commutator norm.
pub fn grun_check(m: &GModule) -> Result<GrunReport> {
    let base = m.base();
    if !base.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let modulus = base.moduli()[0];
    let commutator = m.group().commutator_subgroup();
    let trivially = commutator
        .members()
        .iter()
        .all(|&g| *m.action(g) == identity_matrix(base));
    let msize = commutator.order() as u64;
    let s: i128 = commutator
        .members()
        .iter()
        .map(|&g| m.action(g)[0] as i128)
        .sum();
    let s = s.rem_euclid(modulus as i128) as u64;
    // the image of multiplication by s is cyclic of order modulus / gcd
    let exponent = modulus / crate::field::gcd(modulus, s);
    let bound = msize as u128 * exponent as u128;
    let annihilates = bound % modulus as u128 == 0;
    Ok(GrunReport {
        commutator_order: commutator.order(),
        commutator_acts_trivially: trivially,
        norm_image_exponent: exponent,
        bound,
        annihilates,
    })
}

/// Report of [`dihedral_span_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanReport {
    pub a_factors: Vec<u64>,
    pub a_sigma_factors: Vec<u64>,
    pub span_factors: Vec<u64>,
    pub intersection_trivial: bool,
    pub sigma_fixed_trivial: bool,
    pub chain_ok: bool,
    pub rank_doubles: bool,
    pub pass: bool,
}

/// For a dihedral module (odd rotation order n, p ∤ 2n) whose rotation norm
/// vanishes, and a subgroup A fixed elementwise by the reflection:
/// `A ∩ A^σ = 0` and the span of A and A^σ has twice the p-rank of A,
/// replaying the chain `a = a^τ = ... = a^{σ^{-2}}` on generators.
pub fn dihedral_span_check(m: &GModule, a_gens: &[Vec<i64>]) -> Result<SpanReport> {
    let base = m.base();
    let group = m.group();
    let Some(crate::group::FamilySpec::Dihedral(n)) = group.family().cloned() else {
        return Err(Error::HypothesisViolated(
            "the acting group must be a dihedral family group".into(),
        ));
    };
    let n = n as usize;
    if n % 2 == 0 {
        return Err(Error::ParamOutOfRange("rotation order must be odd".into()));
    }
    if base.p() == 2 || (n as u64) % base.p() == 0 {
        return Err(Error::NotCoprime(base.p(), 2 * n as u64));
    }
    let rotation_norm = RingElement::norm_of(group, &(0..n).collect::<Vec<_>>());
    if m.apply_ring_element(&rotation_norm) != zero_matrix(base) {
        return Err(Error::HypothesisViolated(
            "the rotation norm does not annihilate the module".into(),
        ));
    }
    let sigma = 1; // the rotation a
    let tau = n; // the reflection b
    let m_sigma = m.action(sigma);
    let m_tau = m.action(tau);
    let m_sigma_inv = m.action(group.inv(sigma));

    for v in a_gens {
        if apply_matrix(base, m_tau, v) != reduce_vector(base, v) {
            return Err(Error::HypothesisViolated(
                "A is not fixed elementwise by the reflection".into(),
            ));
        }
    }
    let moduli = base.moduli();
    let t = base.rank();
    let a_mat = IntMat::from_cols_i64(a_gens, t);
    let a_sigma_cols: Vec<Vec<i64>> = a_gens
        .iter()
        .map(|v| apply_matrix(base, m_sigma, v))
        .collect();
    let a_sigma_mat = IntMat::from_cols_i64(&a_sigma_cols, t);

    let a_factors = span_invariant_factors(&moduli, &a_mat)?;
    let a_sigma_factors = span_invariant_factors(&moduli, &a_sigma_mat)?;
    let span_factors = span_invariant_factors(&moduli, &a_mat.hcat(&a_sigma_mat))?;

    let inter = intersection_generators(&moduli, &a_mat, &a_sigma_mat);
    let intersection_trivial = span_invariant_factors(&moduli, &inter)?.is_empty();

    // chain replay: tau(sigma v) = sigma^{-1} v for tau-fixed v
    let chain_ok = a_gens.iter().all(|v| {
        let left = apply_matrix(base, m_tau, &apply_matrix(base, m_sigma, v));
        let right = apply_matrix(base, m_sigma_inv, v);
        left == right
    });

    // sigma-fixed vectors of A vanish (n a = 0 and p ∤ n force a = 0)
    let mut shifted = m_sigma.clone();
    for i in 0..t {
        shifted[i * t + i] = (shifted[i * t + i] - 1).rem_euclid(moduli[i] as i64);
    }
    let fixed_gens = preimage_kernel(&matrix_as_intmat(base, &shifted), &moduli);
    let fixed_meet_a = intersection_generators(&moduli, &a_mat, &fixed_gens);
    let sigma_fixed_trivial = span_invariant_factors(&moduli, &fixed_meet_a)?.is_empty();

    let rank_doubles = span_factors.len() == 2 * a_factors.len();
    let pass = intersection_trivial && sigma_fixed_trivial && chain_ok && rank_doubles;
    Ok(SpanReport {
        a_factors,
        a_sigma_factors,
        span_factors,
        intersection_trivial,
        sigma_fixed_trivial,
        chain_ok,
        rank_doubles,
        pass,
    })
}
