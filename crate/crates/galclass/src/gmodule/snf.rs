//! Smith normal form over the integers, with unimodular transforms that are
//! re-verified on every call, and the lattice computations built on it:
//! integer kernels, spans inside a finite abelian p-group, intersections.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    /// Columns are generators; build from a list of column vectors.
    pub fn from_cols_i64(cols: &[Vec<i64>], rows: usize) -> IntMat {
        let mut m = IntMat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.a[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.a[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += t;
                }
            }
        }
        out
    }

    /// Glue `other` to the right.
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *out.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    /// Stack `other` below.
    pub fn vcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut out = IntMat::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                *out.at_mut(self.rows + i, j) = other.at(i, j).clone();
            }
        }
        out
    }

    pub fn diagonal(entries: &[u64]) -> IntMat {
        let n = entries.len();
        let mut m = IntMat::zero(n, n);
        for (i, &d) in entries.iter().enumerate() {
            *m.at_mut(i, i) = BigInt::from(d);
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m.at(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    let tmp = m.at(swap, c).clone();
                    *m.at_mut(swap, c) = m.at(k, c).clone();
                    *m.at_mut(k, c) = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    *m.at_mut(i, j) = v;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }
}

/// `u * m * v = d` with unimodular `u`, `v` and a diagonal divisibility
/// chain on `d`.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    /// Nonnegative diagonal entries, d_1 | d_2 | ...
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

/// Compute the Smith normal form and re-verify the factorization before
/// returning it.
pub fn smith_normal_form(m: &IntMat) -> SmithNormalForm {
    let snf = smith_inner(m);
    assert!(verify_snf(m, &snf), "Smith normal form self-check failed");
    snf
}

fn smith_inner(m: &IntMat) -> SmithNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest nonzero absolute value in the trailing submatrix,
        // re-selected after every elimination round to keep entries tame
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d.at(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.at(i, j).abs() < d.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);
        // one round of rounded-division elimination on row and column t;
        // any nonzero remainder is strictly smaller than the pivot, so
        // re-selecting the pivot makes progress
        let mut changed = false;
        for i in t + 1..rows {
            if d.at(i, t).is_zero() {
                continue;
            }
            let q = div_round(d.at(i, t), d.at(t, t));
            if !q.is_zero() {
                row_sub(&mut d, &mut u, i, t, &q);
            }
            if !d.at(i, t).is_zero() {
                changed = true;
            }
        }
        for j in t + 1..cols {
            if d.at(t, j).is_zero() {
                continue;
            }
            let q = div_round(d.at(t, j), d.at(t, t));
            if !q.is_zero() {
                col_sub(&mut d, &mut v, j, t, &q);
            }
            if !d.at(t, j).is_zero() {
                changed = true;
            }
        }
        if changed {
            continue;
        }
        // pivot must divide the remaining submatrix for the chain property:
        // fold an offending row into row t and redo this pivot position
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(d.at(i, j) % d.at(t, t)).is_zero() {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut d, &mut u, t, i, &minus_one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    // normalize signs
    for i in 0..t {
        if d.at(i, i).is_negative() {
            for j in 0..cols {
                let neg = -d.at(i, j).clone();
                *d.at_mut(i, j) = neg;
            }
            for j in 0..rows {
                let neg = -u.at(i, j).clone();
                *u.at_mut(i, j) = neg;
            }
        }
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| d.at(i, i).clone()).collect();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    SmithNormalForm { u, d, v, diag, rank }
}

/// Independent re-verification: `u m v = d`, unit determinants, diagonal
/// shape and successive divisibility.
pub fn verify_snf(m: &IntMat, snf: &SmithNormalForm) -> bool {
    let prod = snf.u.mul(m).mul(&snf.v);
    if prod != snf.d {
        return false;
    }
    for i in 0..snf.d.rows {
        for j in 0..snf.d.cols {
            if i != j && !snf.d.at(i, j).is_zero() {
                return false;
            }
        }
    }
    for w in snf.diag.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return false;
        }
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return false;
        }
    }
    let du = snf.u.det();
    let dv = snf.v.det();
    du.abs().is_one() && dv.abs().is_one()
}

fn swap_rows(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let tmp = d.at(a, j).clone();
        *d.at_mut(a, j) = d.at(b, j).clone();
        *d.at_mut(b, j) = tmp;
    }
    for j in 0..u.cols {
        let tmp = u.at(a, j).clone();
        *u.at_mut(a, j) = u.at(b, j).clone();
        *u.at_mut(b, j) = tmp;
    }
}

fn swap_cols(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let tmp = d.at(i, a).clone();
        *d.at_mut(i, a) = d.at(i, b).clone();
        *d.at_mut(i, b) = tmp;
    }
    for i in 0..v.rows {
        let tmp = v.at(i, a).clone();
        *v.at_mut(i, a) = v.at(i, b).clone();
        *v.at_mut(i, b) = tmp;
    }
}

/// row a -= q * row b (and mirror into u)
fn row_sub(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize, q: &BigInt) {
    for j in 0..d.cols {
        let t = q * d.at(b, j);
        *d.at_mut(a, j) -= t;
    }
    for j in 0..u.cols {
        let t = q * u.at(b, j);
        *u.at_mut(a, j) -= t;
    }
}

/// col a -= q * col b (and mirror into v)
fn col_sub(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize, q: &BigInt) {
    for i in 0..d.rows {
        let t = q * d.at(i, b);
        *d.at_mut(i, a) -= t;
    }
    for i in 0..v.rows {
        let t = q * v.at(i, b);
        *v.at_mut(i, a) -= t;
    }
}

/// Round-to-nearest division, which keeps Euclid steps shrinking.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(r.clone() * &two) > &b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

/// Basis (columns) of the integer kernel of `m`.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let n = m.cols;
    let r = snf.rank;
    let mut out = IntMat::zero(n, n - r);
    for (c, j) in (r..n).enumerate() {
        for i in 0..n {
            *out.at_mut(i, c) = snf.v.at(i, j).clone();
        }
    }
    out
}

/// Generators (columns in Z^t) of the lattice `{x : m x ≡ 0 (mod target)}`,
/// where `target` gives one modulus per row of `m`.
pub fn preimage_kernel(m: &IntMat, target: &[u64]) -> IntMat {
    assert_eq!(m.rows, target.len());
    let d = IntMat::diagonal(target);
    let aug = m.hcat(&d);
    let ker = integer_kernel(&aug);
    // keep the first `m.cols` coordinates
    let mut out = IntMat::zero(m.cols, ker.cols);
    for j in 0..ker.cols {
        for i in 0..m.cols {
            *out.at_mut(i, j) = ker.at(i, j).clone();
        }
    }
    out
}

/// Invariant factors (largest first, trivial factors dropped) of the
/// subgroup of ⊕ Z/moduli generated by the columns of `gens`.
pub fn span_invariant_factors(moduli: &[u64], gens: &IntMat) -> Result<Vec<u64>> {
    assert_eq!(gens.rows, moduli.len());
    if gens.cols == 0 {
        return Ok(Vec::new());
    }
    // relation lattice K = {x in Z^k : gens * x ≡ 0 (mod moduli)}
    let k = preimage_kernel(gens, moduli);
    let snf = smith_normal_form(&k);
    if snf.rank != gens.cols {
        return Err(Error::HypothesisViolated(
            "span has a free part; the quotient is not finite".into(),
        ));
    }
    let mut factors = Vec::new();
    for d in &snf.diag {
        if d.is_zero() {
            return Err(Error::HypothesisViolated(
                "zero invariant factor in a finite quotient".into(),
            ));
        }
        if !d.is_one() {
            let v: u64 = d.to_string().parse().map_err(|_| {
                Error::BoundExceeded("invariant factor exceeds u64".into())
            })?;
            factors.push(v);
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(factors)
}

/// Generators of the intersection of the subgroups spanned by `a` and `b`
/// inside ⊕ Z/moduli.
pub fn intersection_generators(moduli: &[u64], a: &IntMat, b: &IntMat) -> IntMat {
    let t = moduli.len();
    assert_eq!(a.rows, t);
    assert_eq!(b.rows, t);
    // solve a x - b y + diag(moduli) z = 0
    let mut neg_b = b.clone();
    for i in 0..neg_b.rows {
        for j in 0..neg_b.cols {
            let v = -neg_b.at(i, j).clone();
            *neg_b.at_mut(i, j) = v;
        }
    }
    let aug = a.hcat(&neg_b).hcat(&IntMat::diagonal(moduli));
    let ker = integer_kernel(&aug);
    // intersection vectors are a * x for the x-part of each kernel column
    let mut xs = IntMat::zero(a.cols, ker.cols);
    for j in 0..ker.cols {
        for i in 0..a.cols {
            *xs.at_mut(i, j) = ker.at(i, j).clone();
        }
    }
    a.mul(&xs)
}

/// Product of invariant factors as the subgroup order.
pub fn factors_order(factors: &[u64]) -> BigInt {
    factors
        .iter()
        .fold(BigInt::one(), |acc, &f| acc * BigInt::from(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_small_matrix() {
        // det = 624, gcd of entries 2, gcd of 2x2 minors 4:
        // invariant factors 2 | 2 | 156
        let m = IntMat::from_rows_i64(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, 4, 16],
        ]);
        let snf = smith_normal_form(&m);
        assert!(verify_snf(&m, &snf));
        let diag: Vec<i64> = snf
            .diag
            .iter()
            .map(|d| d.to_string().parse().unwrap())
            .collect();
        assert_eq!(diag, vec![2, 2, 156]);
    }

    #[test]
    fn snf_handles_zero_and_rectangular() {
        let z = IntMat::zero(2, 3);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.rank, 0);
        let m = IntMat::from_rows_i64(&[vec![0, 3, 0], vec![0, 0, 0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.diag[0], BigInt::from(3));
    }

    #[test]
    fn kernel_of_projection() {
        // x + y + z = 0 has a rank-2 kernel
        let m = IntMat::from_rows_i64(&[vec![1, 1, 1]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols, 2);
        for j in 0..2 {
            let s = k.at(0, j) + k.at(1, j) + k.at(2, j);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_structure_in_z4_z2() {
        let moduli = [4u64, 2];
        // the whole group
        let gens = IntMat::from_cols_i64(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(span_invariant_factors(&moduli, &gens).unwrap(), vec![4, 2]);
        // the diagonal embedding of Z/2: (2, 1)
        let gens = IntMat::from_cols_i64(&[vec![2, 1]], 2);
        assert_eq!(span_invariant_factors(&moduli, &gens).unwrap(), vec![2]);
        // trivial
        let gens = IntMat::from_cols_i64(&[vec![0, 0]], 2);
        assert_eq!(span_invariant_factors(&moduli, &gens).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn intersection_in_z9() {
        let moduli = [9u64];
        let a = IntMat::from_cols_i64(&[vec![3]], 1); // subgroup of order 3
        let b = IntMat::from_cols_i64(&[vec![1]], 1); // whole group
        let inter = intersection_generators(&moduli, &a, &b);
        let f = span_invariant_factors(&moduli, &inter).unwrap();
        assert_eq!(f, vec![3]);
        // two different order-3 subgroups of (Z/3)^2 meet trivially
        let moduli = [3u64, 3];
        let a = IntMat::from_cols_i64(&[vec![1, 0]], 2);
        let b = IntMat::from_cols_i64(&[vec![0, 1]], 2);
        let inter = intersection_generators(&moduli, &a, &b);
        let f = span_invariant_factors(&moduli, &inter).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMat::from_rows_i64(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.det(), BigInt::from(-2));
        let m = IntMat::from_rows_i64(&[
            vec![2, 0, 1],
            vec![1, 1, 0],
            vec![0, 3, 1],
        ]);
        assert_eq!(m.det(), BigInt::from(5));
    }
}
