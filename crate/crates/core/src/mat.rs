//! Exact integer matrices and the normal forms underlying all lattice
//! computations: Smith normal form with transforms, fraction-free
//! determinants, saturated kernels, and exact signatures of symmetric
//! rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar: always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Floor of a rational as a `BigInt` (exact, no float).
pub fn rational_floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Ceiling of a rational as a `BigInt` (exact, no float).
pub fn rational_ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a square in `Q`.
pub fn rational_sqrt_exact(x: &Rational) -> Option<Rational> {
    let n = bigint_sqrt_exact(x.numer())?;
    let d = bigint_sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

/// Dense integer matrix with exact `BigInt` entries, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zero(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = IntMatrix::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += f * row[b]
    fn add_row(&mut self, a: usize, b: usize, f: &BigInt) {
        for j in 0..self.cols {
            let add = f * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += f * col[b]
    fn add_col(&mut self, a: usize, b: usize, f: &BigInt) {
        for i in 0..self.rows {
            let add = f * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }

    /// Repo-wide text format: first line `R C`, then R lines of C integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<IntMatrix, String> {
        let mut tokens = text.split_whitespace();
        let r: usize = tokens
            .next()
            .ok_or("missing row count")?
            .parse()
            .map_err(|e| format!("bad row count: {e}"))?;
        let c: usize = tokens
            .next()
            .ok_or("missing column count")?
            .parse()
            .map_err(|e| format!("bad column count: {e}"))?;
        let mut m = IntMatrix::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                let t = tokens
                    .next()
                    .ok_or_else(|| format!("missing entry ({i},{j})"))?;
                m[(i, j)] = t
                    .parse()
                    .map_err(|e| format!("bad entry ({i},{j}): {e}"))?;
            }
        }
        Ok(m)
    }
}

/// Smith normal form data: `U * A * V = D` with `U`, `V` unimodular and
/// `D` diagonal with a nonnegative divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithData {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithData {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with deterministic pivoting: among nonzero entries the
/// pivot is the one of smallest absolute value, ties broken by lowest
/// (row, col) index. Returns `U, V` with `U * A * V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithData {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    let mut t = 0usize;
    while t < n {
        // deterministic pivot: smallest nonzero |entry| in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        let cur = d[(i, j)].abs();
                        let best = d[(pi, pj)].abs();
                        if cur < best {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // clear row and column t by Euclidean steps
        loop {
            let mut dirty = false;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(i, t)], &d[(t, t)]);
                if !q.is_zero() {
                    let nq = -q;
                    d.add_row(i, t, &nq);
                    u.add_row(i, t, &nq);
                }
                if !d[(i, t)].is_zero() {
                    // remainder smaller than pivot: swap up and restart
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(t, j)], &d[(t, t)]);
                if !q.is_zero() {
                    let nq = -q;
                    d.add_col(j, t, &nq);
                    v.add_col(j, t, &nq);
                }
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // enforce divisibility: pivot must divide the whole trailing block
        let mut redo = false;
        'scan: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        t += 1;
    }

    // sign normalization: diagonal nonnegative
    for i in 0..n {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    // sort the chain is unnecessary: divisibility was enforced in order
    debug_assert!(smith_chain_ok(&d));
    SmithData { d, u, v }
}

fn smith_chain_ok(d: &IntMatrix) -> bool {
    let n = d.rows.min(d.cols);
    for i in 0..d.rows {
        for j in 0..d.cols {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    for i in 1..n {
        let prev = &d[(i - 1, i - 1)];
        let cur = &d[(i, i)];
        if prev.is_zero() && !cur.is_zero() {
            return false;
        }
        if !prev.is_zero() && !(cur % prev).is_zero() {
            return false;
        }
    }
    true
}

/// Rounded division used in the Euclidean steps (minimizes the remainder).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * BigInt::from(2);
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Returns an error message for non-square input.
pub fn exact_determinant(a: &IntMatrix) -> Result<BigInt, String> {
    if !a.is_square() {
        return Err(format!("determinant of non-square {}x{}", a.rows, a.cols));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            // find a row to swap in
            let mut found = None;
            for i in k + 1..n {
                if !m[(i, k)].is_zero() {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                let _ = r;
                m[(i, j)] = q;
            }
        }
        for i in k + 1..n {
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Basis of the left integer kernel of `A`: rows `K` with `K * A = 0`,
/// saturated (the quotient `Z^rows / span K` is torsion free).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    // rows r.. of U satisfy (U A) row = 0; U unimodular makes them saturated
    let mut k = IntMatrix::zero(a.rows - r, a.rows);
    for i in r..a.rows {
        for j in 0..a.rows {
            k[(i - r, j)] = s.u[(i, j)].clone();
        }
    }
    k
}

/// Inverse of an invertible integer matrix over the rationals.
pub fn rational_inverse(a: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows;
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from(a[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        inv.swap(k, piv);
        let p = m[k][k].clone();
        for j in 0..n {
            m[k][j] /= p.clone();
            inv[k][j] /= p.clone();
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in 0..n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Exact signature of a symmetric matrix of rationals: `(positive, negative,
/// zero)` inertia indices, computed by symmetric Gaussian elimination over Q.
/// Zero diagonals with a nonzero off-diagonal partner are handled by the
/// congruence `e_i -> e_i + e_j`, which preserves the signature.
pub fn rational_signature(g: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = g.len();
    let mut m = g.to_vec();
    for r in &m {
        assert_eq!(r.len(), n, "signature of non-square matrix");
    }
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut zero = 0usize;
    let mut live: Vec<usize> = (0..n).collect();
    while let Some(&_first) = live.first() {
        // prefer a nonzero diagonal among live indices
        let diag = live.iter().copied().find(|&i| !m[i][i].is_zero());
        let i = match diag {
            Some(i) => i,
            None => {
                // all live diagonals zero: find off-diagonal pair
                let mut pair = None;
                'outer: for (a, &i) in live.iter().enumerate() {
                    for &j in live.iter().skip(a + 1) {
                        if !m[i][j].is_zero() {
                            pair = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match pair {
                    None => {
                        zero += live.len();
                        break;
                    }
                    Some((i, j)) => {
                        // e_i += e_j makes m[i][i] = 2 m[i][j] != 0
                        for k in 0..n {
                            let t = m[j][k].clone();
                            m[i][k] += t;
                        }
                        for k in 0..n {
                            let t = m[k][j].clone();
                            m[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let d = m[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        live.retain(|&k| k != i);
        // clear row/column i against remaining live indices
        for &j in &live {
            if m[i][j].is_zero() {
                continue;
            }
            let f = &m[i][j] / &d;
            for k in 0..n {
                let t = &f * &m[i][k];
                m[j][k] -= t;
            }
            for k in 0..n {
                let t = &f * &m[k][i];
                m[k][j] -= t;
            }
        }
    }
    (pos, neg, zero)
}

/// Exact signature of a symmetric integer matrix.
pub fn signature(a: &IntMatrix) -> (usize, usize, usize) {
    let g: Vec<Vec<Rational>> = (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| Rational::from(a[(i, j)].clone()))
                .collect()
        })
        .collect();
    rational_signature(&g)
}

/// Row-style Hermite reduction of a rational matrix: returns a basis (rows)
/// of the subgroup of `Q^cols` generated by the input rows. Used to build
/// finite index extensions, where generators are rational vectors.
pub fn rational_row_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    // common denominator
    let mut denom = BigInt::one();
    for r in rows {
        for x in r {
            denom = denom.lcm(x.denom());
        }
    }
    let mut m = IntMatrix::zero(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let v = x * Rational::from(denom.clone());
            debug_assert!(v.is_integer());
            m[(i, j)] = v.to_integer();
        }
    }
    // Hermite via Smith machinery: U * M has echelon-generating rows; easier:
    // use column-style elimination keeping row transforms unimodular.
    let h = hermite_row_reduce(&m);
    let mut out = Vec::new();
    for i in 0..h.rows {
        if (0..cols).all(|j| h[(i, j)].is_zero()) {
            continue;
        }
        out.push(
            (0..cols)
                .map(|j| Rational::new(h[(i, j)].clone(), denom.clone()))
                .collect(),
        );
    }
    out
}

/// Integer row Hermite-style reduction (not full HNF normalization, but
/// unimodular row operations producing echelon rows spanning the same
/// row lattice, zero rows last).
pub fn hermite_row_reduce(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let mut row = 0usize;
    for col in 0..m.cols {
        if row >= m.rows {
            break;
        }
        loop {
            // pick row with smallest nonzero |entry| in this column at/below `row`
            let mut best: Option<usize> = None;
            for i in row..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        if m[(i, col)].abs() < m[(b, col)].abs() {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(b) = best else { break };
            m.swap_rows(row, b);
            let mut done = true;
            for i in row + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let q = div_round(&m[(i, col)], &m[(row, col)]);
                let nq = -q;
                m.add_row(i, row, &nq);
                if !m[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < m.rows && !m[(row, col)].is_zero() {
            if m[(row, col)].is_negative() {
                m.negate_row(row);
            }
            // reduce entries above the pivot to canonicalize
            for i in 0..row {
                let q = m[(i, col)].div_floor(&m[(row, col)]);
                if !q.is_zero() {
                    let nq = -q;
                    m.add_row(i, row, &nq);
                }
            }
            row += 1;
        }
    }
    m
}

/// Solve `x * A = b` over the integers for a row vector `x`, if possible.
/// `A` is `m x n`, `b` length `n`, `x` length `m`.
pub fn solve_left_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    // x A = b  <=>  A^T x^T = b^T
    let at = a.transpose();
    solve_integer(&at, b)
}

/// Solve `A x = b` over the integers, if possible (any one solution).
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let s = smith_normal_form(a);
    // U A V = D => A = U^-1 D V^-1; A x = b <=> D (V^-1 x) = U b
    let ub = s.u.mul_vec(b);
    let n = a.cols;
    let r = a.rows.min(a.cols);
    let mut y = vec![BigInt::zero(); n];
    for i in 0..a.rows {
        if i < r && !s.d[(i, i)].is_zero() {
            let (q, rem) = ub[i].div_rem(&s.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8_gram() -> IntMatrix {
        // negative definite E8: diag -2, Dynkin adjacency +1
        // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
        let mut g = IntMatrix::zero(8, 8);
        for i in 0..8 {
            g[(i, i)] = BigInt::from(-2);
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (a, b) in edges {
            g[(a, b)] = BigInt::one();
            g[(b, a)] = BigInt::one();
        }
        g
    }

    #[test]
    fn smith_already_diagonal() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn smith_2x2_hand_oracle() {
        // [[4,1],[1,-2]]: gcd of entries 1, det -9 => invariant factors 1, 9
        let a = IntMatrix::from_i64(&[&[4, 1], &[1, -2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(9)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(exact_determinant(&s.u).unwrap().abs(), BigInt::one());
        assert_eq!(exact_determinant(&s.v).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn smith_e8_unimodular() {
        let g = e8_gram();
        assert_eq!(exact_determinant(&g).unwrap(), BigInt::one());
        let s = smith_normal_form(&g);
        assert_eq!(s.d, IntMatrix::identity(8));
    }

    #[test]
    fn det_identity_and_hyperbolic() {
        assert_eq!(
            exact_determinant(&IntMatrix::identity(5)).unwrap(),
            BigInt::one()
        );
        let u = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(exact_determinant(&u).unwrap(), BigInt::from(-1));
        assert!(exact_determinant(&IntMatrix::zero(2, 3)).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(k.rows, 0);

        // bilinear row [2,4] as a 1x2 matrix acting on the right:
        // x * A = 0 for A = [[2],[4]] means 2x + 4y = 0, kernel (2,-1)
        let a = IntMatrix::from_i64(&[&[2], &[4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows, 1);
        let prod = k.mul(&a);
        assert!(prod[(0, 0)].is_zero());
        // saturation: invariant factors of k are 1
        let s = smith_normal_form(&k);
        assert_eq!(s.diagonal(), vec![BigInt::one()]);

        // affine A2 cycle of three (-2)-vectors: kernel (1,1,1)
        let g = IntMatrix::from_i64(&[&[-2, 1, 1], &[1, -2, 1], &[1, 1, -2]]);
        let k = kernel_basis(&g);
        assert_eq!(k.rows, 1);
        assert!(k.mul(&g).row(0).iter().all(|x| x.is_zero()));
        assert_eq!(k[(0, 0)], k[(0, 1)]);
        assert_eq!(k[(0, 1)], k[(0, 2)]);
    }

    #[test]
    fn signature_examples() {
        let u = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&u), (1, 1, 0));
        let g = e8_gram();
        assert_eq!(signature(&g), (0, 8, 0));
        let z = IntMatrix::zero(3, 3);
        assert_eq!(signature(&z), (0, 0, 3));
        let h = IntMatrix::from_i64(&[&[4, 1], &[1, -2]]);
        assert_eq!(signature(&h), (1, 1, 0));
    }

    #[test]
    fn det_multiplicative() {
        let a = IntMatrix::from_i64(&[&[3, -1, 2], &[0, 4, 1], &[5, 2, -2]]);
        let b = IntMatrix::from_i64(&[&[1, 1, 0], &[2, -3, 1], &[0, 1, 4]]);
        let da = exact_determinant(&a).unwrap();
        let db = exact_determinant(&b).unwrap();
        let dab = exact_determinant(&a.mul(&b)).unwrap();
        assert_eq!(dab, da * db);
    }

    #[test]
    fn matrix_text_roundtrip() {
        let a = IntMatrix::from_i64(&[&[4, 1], &[1, -2]]);
        let b = IntMatrix::from_text(&a.to_text()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn solve_integer_works() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        let b = vec![BigInt::from(5), BigInt::from(3)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let b2 = vec![BigInt::from(1), BigInt::from(1)];
        assert!(solve_integer(&a, &b2).is_none());
    }
}
