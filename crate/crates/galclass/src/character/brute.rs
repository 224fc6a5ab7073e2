//! Exhaustive enumeration of irreducible matrix representations over `F_p`
//! in dimension at most 2, up to equivalence. This is the oracle the
//! character-table pipeline is checked against: it never looks at character
//! theory, only at generator images in `GL_d(F_p)` and the Cayley table.

use crate::group::Group;
use crate::{Error, Result};

/// Search-space cap: `#GL_d(F_p) ^ #generators`.
pub const SEARCH_BOUND: u128 = 100_000_000;

/// An irreducible representation found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    /// Image of every group element, row-major `dim x dim` over F_p.
    pub elements: Vec<Vec<u64>>,
    /// Trace at each conjugacy class (class order of the parent group).
    pub class_traces: Vec<u64>,
    pub faithful: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Mat {
    n: usize,
    a: [u64; 4],
}

impl Mat {
    fn identity(n: usize) -> Mat {
        let mut a = [0; 4];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    fn mul(&self, other: &Mat, p: u64) -> Mat {
        let n = self.n;
        let mut out = [0u64; 4];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = (acc + self.a[i * n + k] * other.a[k * n + j]) % p;
                }
                out[i * n + j] = acc;
            }
        }
        Mat { n, a: out }
    }

    fn det(&self, p: u64) -> u64 {
        match self.n {
            1 => self.a[0] % p,
            2 => {
                let ad = self.a[0] * self.a[3] % p;
                let bc = self.a[1] * self.a[2] % p;
                (ad + p - bc) % p
            }
            _ => unreachable!(),
        }
    }

    fn trace(&self, p: u64) -> u64 {
        let mut t = 0;
        for i in 0..self.n {
            t = (t + self.a[i * self.n + i]) % p;
        }
        t
    }

    /// Image of the projective point `v` (a line through `v`).
    fn apply(&self, v: [u64; 2], p: u64) -> [u64; 2] {
        [
            (self.a[0] * v[0] + self.a[1] * v[1]) % p,
            (self.a[2] * v[0] + self.a[3] * v[1]) % p,
        ]
    }
}

fn all_invertible(p: u64, d: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    match d {
        1 => {
            for x in 1..p {
                out.push(Mat { n: 1, a: [x, 0, 0, 0] });
            }
        }
        2 => {
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for dd in 0..p {
                            let m = Mat { n: 2, a: [a, b, c, dd] };
                            if m.det(p) != 0 {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

fn mat_order_divides(m: &Mat, k: usize, p: u64) -> bool {
    let mut acc = Mat::identity(m.n);
    for _ in 0..k {
        acc = acc.mul(m, p);
    }
    acc == Mat::identity(m.n)
}

/// True iff some line of `F_p^2` is stable under every matrix in `mats`.
fn has_common_stable_line(mats: &[Mat], p: u64) -> bool {
    let mut lines: Vec<[u64; 2]> = (0..p).map(|t| [1, t]).collect();
    lines.push([0, 1]);
    'line: for v in lines {
        for m in mats {
            let w = m.apply(v, p);
            // w must be proportional to v
            let cross = (w[0] * v[1] % p + p - w[1] * v[0] % p) % p;
            if cross != 0 {
                continue 'line;
            }
        }
        return true;
    }
    false
}

/// Exhaustive list of the equivalence classes of irreducible d-dimensional
/// representations of `g` over `F_p` (d <= 2). Equivalence is decided by a
/// simultaneous-conjugacy search over `GL_d(F_p)`.
pub fn brute_force_reps(g: &Group, p: u64, d: usize) -> Result<Vec<Representation>> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if g.order() as u64 % p == 0 {
        return Err(Error::PrimeDividesOrder(p, g.order()));
    }
    if d == 0 || d > 2 {
        return Err(Error::BoundExceeded(format!(
            "brute-force enumeration supports d <= 2, got {d}"
        )));
    }
    let gens = g.generating_set();
    if gens.is_empty() {
        // trivial group: only the identity image, irreducible iff d = 1
        if d != 1 {
            return Ok(Vec::new());
        }
        return Ok(vec![Representation {
            dim: 1,
            elements: vec![vec![1]],
            class_traces: vec![1],
            faithful: true,
        }]);
    }
    let gl = all_invertible(p, d);
    let space = (gl.len() as u128).checked_pow(gens.len() as u32);
    match space {
        Some(s) if s <= SEARCH_BOUND => {}
        _ => {
            return Err(Error::BoundExceeded(format!(
                "search space {}^{} exceeds {SEARCH_BOUND}",
                gl.len(),
                gens.len()
            )))
        }
    }

    // candidate images per generator, filtered by element order
    let candidate_lists: Vec<Vec<Mat>> = gens
        .iter()
        .map(|&s| {
            let ord = g.element_order(s);
            gl.iter()
                .copied()
                .filter(|m| mat_order_divides(m, ord, p))
                .collect()
        })
        .collect();

    let classes = g.conjugacy_classes();
    let identity = g.identity();
    let n = g.order();

    // BFS decomposition of each element as (previous element, generator)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut bfs_order = vec![identity];
    let mut seen = vec![false; n];
    seen[identity] = true;
    let mut head = 0;
    while head < bfs_order.len() {
        let x = bfs_order[head];
        head += 1;
        for (gi, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, gi));
                bfs_order.push(y);
            }
        }
    }
    assert!(seen.iter().all(|&b| b), "generators must generate");

    let mut found: Vec<(Vec<Mat>, Vec<Mat>)> = Vec::new(); // (gen images, all images)
    let mut assignment = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<Mat> = assignment
            .iter()
            .enumerate()
            .map(|(i, &ci)| candidate_lists[i][ci])
            .collect();

        if let Some(full) = extend_to_homomorphism(g, &gens, &images, &parent, &bfs_order, p) {
            let irreducible = match d {
                1 => true,
                _ => !has_common_stable_line(&full, p),
            };
            if irreducible {
                let equivalent = found
                    .iter()
                    .any(|(kept, _)| are_conjugate(kept, &images, &gl, p));
                if !equivalent {
                    found.push((images.clone(), full));
                }
            }
        }

        // advance the mixed-radix assignment
        let mut i = 0;
        loop {
            if i == assignment.len() {
                break 'outer;
            }
            assignment[i] += 1;
            if assignment[i] == candidate_lists[i].len() {
                assignment[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if candidate_lists.iter().any(|l| l.is_empty()) {
            break;
        }
    }

    let mut reps: Vec<Representation> = found
        .into_iter()
        .map(|(_, full)| {
            let identity_mat = Mat::identity(d);
            let faithful = full
                .iter()
                .enumerate()
                .all(|(x, m)| x == identity || *m != identity_mat);
            let class_traces = classes.iter().map(|c| full[c[0]].trace(p)).collect();
            Representation {
                dim: d,
                elements: full.iter().map(|m| m.a[..d * d].to_vec()).collect(),
                class_traces,
                faithful,
            }
        })
        .collect();
    reps.sort_by(|a, b| a.class_traces.cmp(&b.class_traces).then_with(|| {
        a.elements.cmp(&b.elements)
    }));
    Ok(reps)
}

/// Extend generator images along the BFS tree, then verify the homomorphism
/// property on every (element, generator) pair.
fn extend_to_homomorphism(
    g: &Group,
    gens: &[usize],
    images: &[Mat],
    parent: &[Option<(usize, usize)>],
    bfs_order: &[usize],
    p: u64,
) -> Option<Vec<Mat>> {
    let n = g.order();
    let d = images[0].n;
    let mut full = vec![Mat::identity(d); n];
    for &x in bfs_order {
        if let Some((prev, gi)) = parent[x] {
            full[x] = full[prev].mul(&images[gi], p);
        }
    }
    for x in 0..n {
        for (gi, &s) in gens.iter().enumerate() {
            if full[g.mul(x, s)] != full[x].mul(&images[gi], p) {
                return None;
            }
        }
    }
    Some(full)
}

fn are_conjugate(a: &[Mat], b: &[Mat], gl: &[Mat], p: u64) -> bool {
    gl.iter().any(|t| {
        a.iter()
            .zip(b)
            .all(|(ai, bi)| t.mul(ai, p) == bi.mul(t, p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FamilySpec;

    #[test]
    fn c2_dimension_one_at_3() {
        let g = Group::from_family(&FamilySpec::Cyclic(2)).unwrap();
        let reps = brute_force_reps(&g, 3, 1).unwrap();
        assert_eq!(reps.len(), 2);
        let traces: Vec<Vec<u64>> = reps.iter().map(|r| r.class_traces.clone()).collect();
        assert!(traces.contains(&vec![1, 1])); // trivial
        assert!(traces.contains(&vec![1, 2])); // sign: -1 ≡ 2 (mod 3)
    }

    #[test]
    fn h8_at_3_has_unique_faithful_2dim_class() {
        let g = Group::from_family(&FamilySpec::GeneralizedQuaternion(2)).unwrap();
        let reps = brute_force_reps(&g, 3, 2).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].faithful);
    }

    #[test]
    fn klein_four_has_no_irreducible_2dim() {
        let g = Group::from_family(&FamilySpec::KleinFour).unwrap();
        let reps = brute_force_reps(&g, 3, 2).unwrap();
        assert!(reps.is_empty());
    }

    #[test]
    fn c4_at_7_has_one_2dim_class() {
        let g = Group::from_family(&FamilySpec::Cyclic(4)).unwrap();
        let reps = brute_force_reps(&g, 7, 2).unwrap();
        // 7 ≡ 3 (mod 4): x^2 + 1 is irreducible over F_7
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].class_traces[0], 2);
    }

    #[test]
    fn rejects_p_dividing_order() {
        let g = Group::from_family(&FamilySpec::Cyclic(4)).unwrap();
        assert!(brute_force_reps(&g, 2, 1).is_err());
    }
}
