//! Integral lattices: symmetric Gram matrices with exact integer entries,
//! their discriminant groups, finite index extensions classified by
//! isotropic pivot subgroups, and orthogonal complements.

use crate::discform::DiscriminantForm;
use crate::mat::{
    exact_determinant, kernel_basis, rational_inverse, rational_row_basis, signature, IntMatrix,
    Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finitely generated free abelian group with a symmetric bilinear form,
/// presented by its Gram matrix in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub gram: IntMatrix,
    pub labels: Option<Vec<String>>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Self {
        assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
        Lattice { gram, labels: None }
    }

    pub fn with_labels(gram: IntMatrix, labels: Vec<String>) -> Self {
        assert_eq!(gram.rows, labels.len());
        let mut l = Lattice::new(gram);
        l.labels = Some(labels);
        l
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn det(&self) -> BigInt {
        exact_determinant(&self.gram).expect("Gram is square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Inertia indices `(sigma_+, sigma_-, sigma_0)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.gram)
    }

    pub fn is_hyperbolic(&self) -> bool {
        let (p, _, z) = self.signature();
        p == 1 && z == 0
    }

    /// Bilinear form on integer coordinate vectors.
    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Bilinear form extended to rational coordinate vectors.
    pub fn dot_rational(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &y[j] * Rational::from(self.gram[(i, j)].clone());
            }
        }
        acc
    }

    /// Direct orthogonal sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.rank();
        let m = other.rank();
        let mut g = IntMatrix::zero(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        Lattice::new(g)
    }

    /// Gram matrix in a new basis given by rational rows (must produce an
    /// integral symmetric matrix; callers use this for sublattices and
    /// finite index extensions).
    pub fn gram_in_basis(&self, rows: &[Vec<Rational>]) -> Result<IntMatrix, String> {
        let k = rows.len();
        let mut g = IntMatrix::zero(k, k);
        for i in 0..k {
            for j in 0..=i {
                let v = self.dot_rational(&rows[i], &rows[j]);
                if !v.is_integer() {
                    return Err(format!("non-integral product at ({i},{j}): {v}"));
                }
                g[(i, j)] = v.to_integer();
                g[(j, i)] = g[(i, j)].clone();
            }
        }
        Ok(g)
    }

    /// The discriminant group `S^dual / S` with its torsion bilinear form
    /// (mod Z) and, when `S` is even, its quadratic refinement (mod 2Z).
    ///
    /// Rejects degenerate or odd lattices.
    pub fn discriminant_form(&self) -> Result<DiscriminantForm, String> {
        if !self.is_nondegenerate() {
            return Err("degenerate lattice has no discriminant form".into());
        }
        if !self.is_even() {
            return Err("odd lattice: quadratic refinement undefined".into());
        }
        let s = crate::mat::smith_normal_form(&self.gram);
        // U G V = D. The dual is generated by columns of V scaled by 1/d_i:
        // x in S^dual iff G x integral iff D (V^{-1} x) integral.
        // Generators are reduced mod Z^n (same class, small entries).
        let n = self.rank();
        let mut gens: Vec<Vec<Rational>> = Vec::new();
        let mut orders: Vec<BigInt> = Vec::new();
        for i in 0..n {
            let d = s.d[(i, i)].clone();
            if d.is_one() {
                continue;
            }
            let mut g = Vec::with_capacity(n);
            for r in 0..n {
                let x = Rational::new(s.v[(r, i)].clone(), d.clone());
                g.push(&x - x.floor());
            }
            gens.push(g);
            orders.push(d);
        }
        Ok(DiscriminantForm::from_lattice_generators(
            self, &orders, &gens,
        ))
    }
}

/// A lattice with a distinguished polarization vector `h`, `h^2 = 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedLattice {
    pub lattice: Lattice,
    pub h: Vec<BigInt>,
}

impl PolarizedLattice {
    pub fn new(lattice: Lattice, h: Vec<BigInt>) -> Self {
        assert_eq!(h.len(), lattice.rank());
        assert_eq!(lattice.dot(&h, &h), BigInt::from(4), "h^2 must be 4");
        PolarizedLattice { lattice, h }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.lattice.gram
    }
}

/// Result of a finite index extension `M` of a lattice `L`: the new Gram, a
/// basis of `M` written in `L`-coordinates, and the index `[M : L]`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub lattice: Lattice,
    /// Rows: basis of the extension in the coordinates of the original basis.
    pub basis_in_old: Vec<Vec<Rational>>,
    pub index: BigInt,
}

impl ExtensionData {
    /// Express a vector of the old lattice in the new basis (always integral).
    pub fn old_vector_in_new(&self, v: &[BigInt]) -> Vec<BigInt> {
        let vr: Vec<Rational> = v.iter().map(|x| Rational::from(x.clone())).collect();
        self.rational_in_new(&vr)
            .expect("old lattice vector must lie in the extension")
    }

    /// Express a rational vector (old coordinates) in the new basis if it
    /// lies in the extension.
    pub fn rational_in_new(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        // solve x * B = v over Z where B rows are basis_in_old
        let n = v.len();
        let k = self.basis_in_old.len();
        // scale to integers
        let mut denom = BigInt::one();
        for row in &self.basis_in_old {
            for x in row {
                denom = denom.lcm(x.denom());
            }
        }
        for x in v {
            denom = denom.lcm(x.denom());
        }
        let mut b = IntMatrix::zero(k, n);
        for (i, row) in self.basis_in_old.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                b[(i, j)] = (x * Rational::from(denom.clone())).to_integer();
            }
        }
        let target: Vec<BigInt> = v
            .iter()
            .map(|x| (x * Rational::from(denom.clone())).to_integer())
            .collect();
        crate::mat::solve_left_integer(&b, &target)
    }
}

/// Kernel of the bilinear form as a saturated sublattice (rows in basis
/// coordinates).
pub fn lattice_kernel(l: &Lattice) -> IntMatrix {
    kernel_basis(&l.gram)
}

/// Quotient of a possibly degenerate lattice by its kernel: returns the
/// nondegenerate quotient Gram and the projection data (rows of a section
/// basis in old coordinates).
pub fn quotient_by_kernel(l: &Lattice) -> (Lattice, IntMatrix) {
    let k = lattice_kernel(l);
    if k.rows == 0 {
        return (l.clone(), IntMatrix::identity(l.rank()));
    }
    // complete k to a basis of Z^n: SNF of k gives U k V = [I 0];
    // rows of V^{-1} form a basis whose first k.rows rows span ker.
    let s = crate::mat::smith_normal_form(&k);
    debug_assert!(s.diagonal().iter().all(|d| d.is_one()));
    let vinv = rational_inverse(&s.v).expect("V unimodular");
    let n = l.rank();
    let mut section = IntMatrix::zero(n - k.rows, n);
    for i in k.rows..n {
        for j in 0..n {
            debug_assert!(vinv[i][j].is_integer());
            section[(i - k.rows, j)] = vinv[i][j].to_integer();
        }
    }
    let rows: Vec<Vec<Rational>> = (0..section.rows)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from(section[(i, j)].clone()))
                .collect()
        })
        .collect();
    let gram = l.gram_in_basis(&rows).expect("integral");
    (Lattice::new(gram), section)
}

/// Saturated orthogonal complement of the span of `sub` (rows) inside
/// `ambient`: `{x : x . s = 0 for all rows s}` with its induced Gram.
/// Returns the complement lattice and its basis rows in ambient coordinates.
pub fn orthogonal_complement(ambient: &Lattice, sub: &IntMatrix) -> (Lattice, IntMatrix) {
    assert_eq!(sub.cols, ambient.rank());
    // x . s = 0 for all rows s <=> x * (G * sub^T) = 0
    let m = ambient.gram.mul(&sub.transpose());
    let k = kernel_basis(&m);
    let rows: Vec<Vec<Rational>> = (0..k.rows)
        .map(|i| {
            (0..k.cols)
                .map(|j| Rational::from(k[(i, j)].clone()))
                .collect()
        })
        .collect();
    let gram = ambient.gram_in_basis(&rows).expect("integral");
    (Lattice::new(gram), k)
}

/// Finite index extension of `l` by the subgroup of `discr l` generated by
/// the given dual vectors (rational vectors in basis coordinates of `l`).
///
/// For an even result the subgroup must be isotropic: all pairwise products
/// integral and all squares even integers. Non-isotropic input is rejected.
pub fn finite_index_extension(l: &Lattice, gens: &[Vec<Rational>]) -> Result<ExtensionData, String> {
    let n = l.rank();
    for (gi, g) in gens.iter().enumerate() {
        if g.len() != n {
            return Err(format!("generator {gi} has wrong length"));
        }
        // must lie in the dual: products with basis vectors integral
        for b in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[b] = Rational::one();
            if !l.dot_rational(g, &e).is_integer() {
                return Err(format!("generator {gi} is not in the dual lattice"));
            }
        }
    }
    // isotropy of the generated subgroup: q(g) = g.g in 2Z, b(g,g') in Z
    for (i, g) in gens.iter().enumerate() {
        let sq = l.dot_rational(g, g);
        if !sq.is_integer() || sq.to_integer().is_odd() {
            return Err(format!("generator {i} is not isotropic (square {sq})"));
        }
        for (j, g2) in gens.iter().enumerate().skip(i + 1) {
            let pr = l.dot_rational(g, g2);
            if !pr.is_integer() {
                return Err(format!("generators {i},{j} not orthogonal mod Z ({pr})"));
            }
        }
    }
    // build basis of L + <gens>
    let mut rows: Vec<Vec<Rational>> = (0..n)
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
    rows.extend_from_slice(gens);
    let basis = rational_row_basis(&rows);
    if basis.len() != n {
        return Err("extension basis has wrong rank".into());
    }
    let gram = l.gram_in_basis(&basis)?;
    let new = Lattice::new(gram);
    let det_old = l.det();
    let det_new = new.det();
    let idx2 = &det_old / &det_new;
    let index = crate::mat::bigint_sqrt_exact(&idx2.abs())
        .ok_or_else(|| format!("index^2 = {idx2} is not a perfect square"))?;
    Ok(ExtensionData {
        lattice: new,
        basis_in_old: basis,
        index,
    })
}

/// Whether the sublattice spanned by `rows` (in `ambient` coordinates) is
/// primitive, i.e. the quotient is torsion free.
pub fn is_primitive_sublattice(rows: &[Vec<BigInt>], ambient_rank: usize) -> bool {
    let mut m = IntMatrix::zero(rows.len(), ambient_rank);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    let s = crate::mat::smith_normal_form(&m);
    s.diagonal().iter().all(|d| d.is_one() || d.is_zero()) && s.rank() == rows.len()
}

/// The hyperbolic plane `U`.
pub fn hyperbolic_plane() -> Lattice {
    Lattice::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]))
}

/// `U(2)`: hyperbolic plane with the form doubled.
pub fn hyperbolic_plane_twice() -> Lattice {
    Lattice::new(IntMatrix::from_i64(&[&[0, 2], &[2, 0]]))
}

/// Rank one lattice `[s]`.
pub fn rank_one(s: i64) -> Lattice {
    Lattice::new(IntMatrix::from_i64(&[&[s]]))
}

/// Negative definite `E8` root lattice Gram (Dynkin chain 0..6, node 7 on 4).
pub fn e8_minus() -> Lattice {
    let mut g = IntMatrix::zero(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(-2);
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        g[(a, b)] = BigInt::one();
        g[(b, a)] = BigInt::one();
    }
    Lattice::new(g)
}

/// Lattice file format: IntMatrix text plus optional `h <indices>` line.
pub fn lattice_file_to_polarized(text: &str) -> Result<(Lattice, Option<Vec<BigInt>>), String> {
    let mut h = None;
    let mut matrix_text = String::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("h ") {
            let coords: Result<Vec<BigInt>, _> = rest
                .split_whitespace()
                .map(|x| x.parse::<BigInt>().map_err(|e| format!("bad h entry: {e}")))
                .collect();
            h = Some(coords?);
        } else if !t.is_empty() && !t.starts_with('#') {
            matrix_text.push_str(t);
            matrix_text.push('\n');
        }
    }
    let gram = IntMatrix::from_text(&matrix_text)?;
    if !gram.is_symmetric() {
        return Err("Gram matrix is not symmetric".into());
    }
    Ok((Lattice::new(gram), h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::rat;

    #[test]
    fn hyperbolic_plane_basics() {
        let u = hyperbolic_plane();
        assert_eq!(u.det(), BigInt::from(-1));
        assert!(u.is_even());
        assert_eq!(u.signature(), (1, 1, 0));
        let d = u.discriminant_form().unwrap();
        assert_eq!(d.order(), BigInt::one());
    }

    #[test]
    fn a1_discriminant() {
        let a1 = rank_one(-2);
        let d = a1.discriminant_form().unwrap();
        assert_eq!(d.order(), BigInt::from(2));
        assert_eq!(d.invariant_factors, vec![2]);
        // q on the generator is -1/2 mod 2Z, canonically 3/2
        assert_eq!(d.q_of_gen(0), rat(3, 2));
    }

    #[test]
    fn odd_lattice_rejected() {
        let l = rank_one(3);
        assert!(l.discriminant_form().is_err());
        let z = Lattice::new(IntMatrix::zero(2, 2));
        assert!(z.discriminant_form().is_err());
    }

    #[test]
    fn complement_examples() {
        // span(h) + A1: complement of h is A1
        let g = IntMatrix::from_i64(&[&[4, 0], &[0, -2]]);
        let l = Lattice::new(g);
        let sub = IntMatrix::from_i64(&[&[1, 0]]);
        let (c, basis) = orthogonal_complement(&l, &sub);
        assert_eq!(c.rank(), 1);
        assert_eq!(c.gram[(0, 0)], BigInt::from(-2));
        assert_eq!(basis.rows, 1);

        // complement of u in U is the isotropic line spanned by u
        let u = hyperbolic_plane();
        let sub = IntMatrix::from_i64(&[&[1, 0]]);
        let (c, _) = orthogonal_complement(&u, &sub);
        assert_eq!(c.rank(), 1);
        assert!(c.gram[(0, 0)].is_zero());
    }

    #[test]
    fn trivial_extension() {
        let l = e8_minus();
        let e = finite_index_extension(&l, &[]).unwrap();
        assert_eq!(e.index, BigInt::one());
        assert_eq!(e.lattice.det(), l.det());
    }

    #[test]
    fn extension_rejects_non_isotropic() {
        // A1 = [-2]: dual generator r/2 has square -1/2, not isotropic
        let a1 = rank_one(-2);
        let gen = vec![rat(1, 2)];
        assert!(finite_index_extension(&a1, &[gen]).is_err());
    }

    #[test]
    fn u2_extension_to_u() {
        // U(2) extended by the isotropic dual class v/2 gives U
        let l = hyperbolic_plane_twice();
        let gen = vec![Rational::zero(), rat(1, 2)];
        let e = finite_index_extension(&l, &[gen]).unwrap();
        assert_eq!(e.index, BigInt::from(2));
        assert_eq!(e.lattice.det(), BigInt::from(-1));
    }

    #[test]
    fn primitivity_check() {
        assert!(is_primitive_sublattice(
            &[vec![BigInt::from(1), BigInt::from(0)]],
            2
        ));
        assert!(!is_primitive_sublattice(
            &[vec![BigInt::from(2), BigInt::from(0)]],
            2
        ));
    }
}
