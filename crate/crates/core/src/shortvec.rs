//! Complete enumeration of vectors of a prescribed norm in a negative
//! definite lattice, or in a rational coset of one.
//!
//! The search is Fincke–Pohst style over an exact rational Cholesky-type
//! decomposition: every bound is an exact rational and integer ranges are
//! obtained by explicit stepping, never by floating point rounding. This
//! makes emptiness results proofs.

use crate::lattice::{orthogonal_complement, Lattice, PolarizedLattice};
use crate::mat::{IntMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A short-vector query against a negative definite Gram matrix.
#[derive(Clone, Debug)]
pub struct NormQuery {
    pub gram: IntMatrix,
    /// Target value of `v . v` (negative, e.g. -2, -4, -6, -36).
    pub target_norm: BigInt,
    /// When present, enumerate `x + shift` for integer `x` (all vectors);
    /// when absent, enumerate integer vectors up to global sign.
    pub coset_shift: Option<Vec<Rational>>,
    /// Keep only vectors congruent to the residue modulo `m` (componentwise).
    pub congruence: Option<(BigInt, Vec<BigInt>)>,
}

/// Decomposition `Q(y) = sum_i d_i (y_i + sum_{j>i} u_ij y_j)^2` of a
/// positive definite rational quadratic form.
struct Cholesky {
    n: usize,
    d: Vec<Rational>,
    u: Vec<Vec<Rational>>,
}

fn cholesky(pos_def: &[Vec<Rational>]) -> Result<Cholesky, String> {
    let n = pos_def.len();
    let mut a = pos_def.to_vec();
    let mut d = vec![Rational::zero(); n];
    let mut u = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        if !a[i][i].is_positive() {
            return Err("matrix is not positive definite".into());
        }
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            u[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in j..n {
                let sub = &d[i] * &u[i][j] * &u[i][k];
                a[j][k] -= sub;
                if j != k {
                    a[k][j] = a[j][k].clone();
                }
            }
        }
    }
    Ok(Cholesky { n, d, u })
}

fn descend(
    ch: &Cholesky,
    shift: &[Rational],
    level: usize,
    budget: &Rational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    // inner offset s = shift[level] + sum_{j > level} u[level][j] * y_j
    let mut s = shift[level].clone();
    for j in level + 1..ch.n {
        if ch.u[level][j].is_zero() {
            continue;
        }
        let yj = Rational::from(x[j].clone()) + &shift[j];
        s += &ch.u[level][j] * yj;
    }
    let rho = budget / &ch.d[level];
    let within = |xi: &BigInt| -> bool {
        let t = Rational::from(xi.clone()) + &s;
        &t * &t <= rho
    };
    let center = (-&s).floor().to_integer();
    let mut handle = |xi: &BigInt, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>| {
        let t = Rational::from(xi.clone()) + &s;
        let used = &ch.d[level] * &t * &t;
        x[level] = xi.clone();
        if level == 0 {
            if &used == budget {
                out.push(x.clone());
            }
        } else {
            descend(ch, shift, level - 1, &(budget - used), x, out);
        }
    };
    let mut xi = center.clone();
    while within(&xi) {
        handle(&xi, x, out);
        xi -= 1;
    }
    let mut xi = &center + 1;
    while within(&xi) {
        handle(&xi, x, out);
        xi += 1;
    }
}

/// All rational solutions `y = x + shift`, `x` integral, of `y^T A y = c`
/// for positive definite `A` (given via its Cholesky data). Exact.
fn enumerate(ch: &Cholesky, shift: &[Rational], c: &Rational) -> Vec<Vec<BigInt>> {
    let n = ch.n;
    if c.is_negative() {
        return Vec::new();
    }
    if n == 0 {
        return if c.is_zero() { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(ch, shift, n - 1, c, &mut x, &mut out);
    out
}

fn gram_to_posdef(gram: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = gram.rows;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from(-gram[(i, j)].clone()))
                .collect()
        })
        .collect()
}

/// Complete, duplicate-free enumeration of all `v` with `v . v` equal to
/// the target norm, for a negative definite Gram matrix.
///
/// Without a coset shift, one vector of each `±` pair is returned (the one
/// whose first nonzero coordinate is positive); with a shift, all vectors.
/// Output is sorted lexicographically. Indefinite input is rejected.
pub fn vectors_of_norm(q: &NormQuery) -> Result<Vec<Vec<BigInt>>, String> {
    if q.gram.rows == 0 {
        return Ok(Vec::new());
    }
    let a = gram_to_posdef(&q.gram);
    let ch = cholesky(&a).map_err(|_| "Gram matrix is not negative definite".to_string())?;
    let c = Rational::from(-q.target_norm.clone());
    if c.is_negative() {
        return Err("target norm must be negative for a definite lattice".into());
    }
    let zero_shift = vec![Rational::zero(); q.gram.rows];
    let shift = q.coset_shift.as_deref().unwrap_or(&zero_shift);
    let mut found = enumerate(&ch, shift, &c);
    if q.coset_shift.is_none() {
        found.retain(|v| match v.iter().find(|x| !x.is_zero()) {
            Some(first) => first.is_positive(),
            None => true,
        });
    }
    if let Some((m, residue)) = &q.congruence {
        found.retain(|v| {
            v.iter()
                .zip(residue)
                .all(|(x, r)| ((x - r) % m).is_zero())
        });
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Vectors of the given norm in the coset `center + span(basis rows)` of a
/// sublattice of `ambient`, where the basis rows span a negative definite
/// sublattice. Returns ambient coordinate vectors (all of them, both signs).
pub fn coset_vectors_of_norm(
    ambient: &Lattice,
    center: &[BigInt],
    basis: &IntMatrix,
    target: &BigInt,
) -> Result<Vec<Vec<BigInt>>, String> {
    let k = basis.rows;
    if k == 0 {
        let n: BigInt = ambient.dot(center, center);
        return Ok(if &n == target {
            vec![center.to_vec()]
        } else {
            Vec::new()
        });
    }
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..basis.cols)
                .map(|j| Rational::from(basis[(i, j)].clone()))
                .collect()
        })
        .collect();
    let sub_gram = ambient.gram_in_basis(&rows)?;
    let a = gram_to_posdef(&sub_gram);
    let ch = cholesky(&a).map_err(|_| "sublattice is not negative definite".to_string())?;
    // (center + x.B)^2 = target:
    // x^T G x + 2 c^T x + center^2 = target with G = sub_gram, c_i = center . k_i.
    // In positive form A = -G and b = -c: x^T A x + 2 b^T x = center^2 - target;
    // completing the square with t = A^{-1} b:
    // (x + t)^T A (x + t) = center^2 - target + b^T t
    let center_r: Vec<Rational> = center.iter().map(|x| Rational::from(x.clone())).collect();
    let b: Vec<Rational> = (0..k)
        .map(|i| -ambient.dot_rational(&center_r, &rows[i]))
        .collect();
    let t = solve_posdef(&a, &b);
    let mut c0 = ambient.dot_rational(&center_r, &center_r) - Rational::from(target.clone());
    for i in 0..k {
        c0 += &b[i] * &t[i];
    }
    let sols = enumerate(&ch, &t, &c0);
    let mut out = Vec::new();
    for x in sols {
        let mut v = center.to_vec();
        for (i, xi) in x.iter().enumerate() {
            for j in 0..basis.cols {
                v[j] += xi * &basis[(i, j)];
            }
        }
        debug_assert_eq!(ambient.dot(&v, &v), *target);
        out.push(v);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn solve_posdef(a: &[Vec<Rational>], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .expect("positive definite matrix is invertible");
        m.swap(k, piv);
        rhs.swap(k, piv);
        let p = m[k][k].clone();
        for j in 0..n {
            m[k][j] /= p.clone();
        }
        rhs[k] /= p;
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in 0..n {
                    let s = &f * &m[k][j];
                    m[i][j] -= s;
                }
                let s = &f * &rhs[k];
                rhs[i] -= s;
            }
        }
    }
    rhs
}

/// All vectors `v` in `h^perp` with `v . v = -r`, one of each `±` pair, in
/// ambient coordinates. Requires the complement of `h` negative definite.
pub fn h_perp_vectors(s: &PolarizedLattice, r: i64) -> Result<Vec<Vec<BigInt>>, String> {
    let sub = row_matrix(&s.h);
    let (comp, basis) = orthogonal_complement(&s.lattice, &sub);
    let q = NormQuery {
        gram: comp.gram.clone(),
        target_norm: BigInt::from(-r),
        coset_shift: None,
        congruence: None,
    };
    let sols = vectors_of_norm(&q)?;
    let mut out = Vec::new();
    for x in sols {
        let mut v = vec![BigInt::zero(); s.rank()];
        for (i, xi) in x.iter().enumerate() {
            for j in 0..basis.cols {
                v[j] += xi * &basis[(i, j)];
            }
        }
        out.push(v);
    }
    out.sort();
    Ok(out)
}

fn row_matrix(v: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zero(1, v.len());
    for (j, x) in v.iter().enumerate() {
        m[(0, j)] = x.clone();
    }
    m
}

/// All lines of a polarized hyperbolic lattice: vectors `a` with
/// `a . a = -2` and `a . h = 1`.
///
/// Implemented as a coset query: writing `a = a0 + w` with `a0` a fixed
/// solution of `a . h = 1` and `w` in the saturated orthogonal complement
/// of `h`, the solutions are the norm -2 vectors of the coset `a0 + h^perp`
/// (equivalently, `4a - h` runs over the norm -36 vectors of `h^perp`
/// congruent to `-h mod 4`).
pub fn lines_of_polarized(s: &PolarizedLattice) -> Result<Vec<Vec<BigInt>>, String> {
    let (p, _, z) = s.lattice.signature();
    if p != 1 || z != 0 {
        return Err("polarized lattice must be hyperbolic and nondegenerate".into());
    }
    let gh = s.lattice.gram.mul_vec(&s.h);
    let a0 = match solve_dot_one(&gh) {
        Some(a0) => a0,
        None => return Ok(Vec::new()),
    };
    let sub = row_matrix(&s.h);
    let (_, basis) = orthogonal_complement(&s.lattice, &sub);
    coset_vectors_of_norm(&s.lattice, &a0, &basis, &BigInt::from(-2))
}

/// Solve `sum_i x_i c_i = 1` over the integers.
fn solve_dot_one(c: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut m = IntMatrix::zero(c.len(), 1);
    for (j, x) in c.iter().enumerate() {
        m[(j, 0)] = x.clone();
    }
    crate::mat::solve_left_integer(&m, std::slice::from_ref(&BigInt::one()))
        .map(|x| x.to_vec())
}

/// The maximal pencil of a line `l`: all lines meeting `l` (product 1),
/// filtered from a complete line list.
pub fn pencil_members<'a>(
    lines: &'a [Vec<BigInt>],
    s: &PolarizedLattice,
    l: &[BigInt],
) -> Vec<&'a Vec<BigInt>> {
    lines
        .iter()
        .filter(|a| s.lattice.dot(a, l) == BigInt::one())
        .collect()
}

#[cfg(test)]
pub mod test_oracle {
    use super::*;
    use crate::mat::rat;

    /// Naive bounded brute force: the completeness oracle at low rank.
    pub fn brute_force_norm(gram: &IntMatrix, target: i64) -> Vec<Vec<BigInt>> {
        let n = gram.rows;
        let l = Lattice::new(gram.clone());
        let neg = {
            let mut m = gram.clone();
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = -m[(i, j)].clone();
                }
            }
            m
        };
        let inv = crate::mat::rational_inverse(&neg).expect("definite");
        let mut bounds = Vec::new();
        for i in 0..n {
            let b2 = &inv[i][i] * rat(target.abs(), 1);
            let mut b = 0i64;
            while rat((b + 1) * (b + 1), 1) <= b2 {
                b += 1;
            }
            bounds.push(b);
        }
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        fn rec(
            l: &Lattice,
            bounds: &[i64],
            x: &mut Vec<i64>,
            i: usize,
            target: i64,
            out: &mut Vec<Vec<BigInt>>,
        ) {
            if i == x.len() {
                let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
                if l.dot(&v, &v) == BigInt::from(target) {
                    match v.iter().find(|c| !c.is_zero()) {
                        Some(f) if f.is_positive() => out.push(v),
                        None => {}
                        _ => {}
                    }
                }
                return;
            }
            for c in -bounds[i]..=bounds[i] {
                x[i] = c;
                rec(l, bounds, x, i + 1, target, out);
            }
        }
        rec(&l, &bounds, &mut x, 0, target, &mut out);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::test_oracle::brute_force_norm;
    use super::*;
    use crate::lattice::{e8_minus, rank_one, Lattice, PolarizedLattice};
    use crate::mat::rat;

    #[test]
    fn a1_single_class() {
        let q = NormQuery {
            gram: IntMatrix::from_i64(&[&[-2]]),
            target_norm: BigInt::from(-2),
            coset_shift: None,
            congruence: None,
        };
        let v = vectors_of_norm(&q).unwrap();
        assert_eq!(v, vec![vec![BigInt::one()]]);
    }

    #[test]
    fn e8_has_120_root_classes() {
        let q = NormQuery {
            gram: e8_minus().gram,
            target_norm: BigInt::from(-2),
            coset_shift: None,
            congruence: None,
        };
        let v = vectors_of_norm(&q).unwrap();
        assert_eq!(v.len(), 120);
    }

    #[test]
    fn two_e8_has_240_root_classes() {
        let l = e8_minus().direct_sum(&e8_minus());
        let q = NormQuery {
            gram: l.gram,
            target_norm: BigInt::from(-2),
            coset_shift: None,
            congruence: None,
        };
        assert_eq!(vectors_of_norm(&q).unwrap().len(), 240);
    }

    #[test]
    fn indefinite_rejected() {
        let q = NormQuery {
            gram: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            target_norm: BigInt::from(-2),
            coset_shift: None,
            congruence: None,
        };
        assert!(vectors_of_norm(&q).is_err());
    }

    #[test]
    fn completeness_vs_brute_force() {
        let gram = IntMatrix::from_i64(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]);
        for r in [2i64, 4, 6] {
            let q = NormQuery {
                gram: gram.clone(),
                target_norm: BigInt::from(-r),
                coset_shift: None,
                congruence: None,
            };
            let fast = vectors_of_norm(&q).unwrap();
            let slow = brute_force_norm(&gram, -r);
            assert_eq!(fast, slow, "norm -{r}");
        }
    }

    #[test]
    fn coset_has_no_spurious_solutions() {
        // -2 (x + 1/2)^2 = -2 has no integer solutions
        let q = NormQuery {
            gram: IntMatrix::from_i64(&[&[-2]]),
            target_norm: BigInt::from(-2),
            coset_shift: Some(vec![rat(1, 2)]),
            congruence: None,
        };
        assert!(vectors_of_norm(&q).unwrap().is_empty());
        // -2 (x + 1/2)^2 = -1/2 would: handled through coset_vectors_of_norm
    }

    #[test]
    fn lines_of_single_line_span() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[4, 1], &[1, -2]]));
        let p = PolarizedLattice::new(l, vec![BigInt::one(), BigInt::zero()]);
        let lines = lines_of_polarized(&p).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0], vec![BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn no_lines_when_h_dot_unsolvable() {
        let l = rank_one(4);
        let p = PolarizedLattice::new(l, vec![BigInt::one()]);
        assert!(lines_of_polarized(&p).unwrap().is_empty());
    }
}
