//! The minimal pencil lattices `P_{p,q}` and their arithmetic: determinant
//! law, distinguished discriminant classes, geometric pivots, and the
//! admissibility of pencil types.
//!
//! Basis order: `h, l, m_{1,+}, m_{1,-}, ..., m_{p,+}, m_{p,-}, n_1, ..., n_q`.
//! The third line of the i-th 3-fiber is `m_{i,0} = h - l - m_{i,+} - m_{i,-}`.

use crate::lattice::{finite_index_extension, ExtensionData, Lattice, PolarizedLattice};
use crate::mat::{IntMatrix, Rational};
use crate::nikulin::{geometric_realization_search, no_forbidden_vectors};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The minimal configuration spanned by a pencil of type `(p, q)`.
#[derive(Clone, Debug)]
pub struct PencilLattice {
    pub p: usize,
    pub q: usize,
    pub polarized: PolarizedLattice,
}

/// A named finite index extension of `P_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilPivot {
    /// `beta = sum mu_i` (order 3, requires `p = 6`).
    Beta,
    /// `omega` (order 3, requires `p + q = 1 mod 3`).
    Omega,
    /// The order-3 class of a ten-fiber section (requires `p + q = 10`).
    LStar,
    /// `sum_{k in support} 3 nu_k` for an 8-element support.
    TwoTorsion(Vec<usize>),
    /// Two octets with 4 common indices (requires `q = 12`).
    TwoTorsionPair(Vec<usize>, Vec<usize>),
}

impl PencilLattice {
    pub fn rank(&self) -> usize {
        2 + 2 * self.p + self.q
    }

    pub fn idx_h(&self) -> usize {
        0
    }

    pub fn idx_l(&self) -> usize {
        1
    }

    /// Index of `m_{i,+1}` (`sign = 0`) or `m_{i,-1}` (`sign = 1`).
    pub fn idx_m(&self, i: usize, sign: usize) -> usize {
        assert!(i < self.p && sign < 2);
        2 + 2 * i + sign
    }

    pub fn idx_n(&self, k: usize) -> usize {
        assert!(k < self.q);
        2 + 2 * self.p + k
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        v[i] = Rational::one();
        v
    }

    /// `lambda = (l - h) / 3`.
    pub fn lambda(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        v[self.idx_h()] = crate::mat::rat(-1, 3);
        v[self.idx_l()] = crate::mat::rat(1, 3);
        v
    }

    /// `mu_i = (m_{i,+} - m_{i,-}) / 3`.
    pub fn mu(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        v[self.idx_m(i, 0)] = crate::mat::rat(1, 3);
        v[self.idx_m(i, 1)] = crate::mat::rat(-1, 3);
        v
    }

    /// `nu_k = -(lambda + n_k) / 2`.
    pub fn nu(&self, k: usize) -> Vec<Rational> {
        let mut v = self.lambda();
        v[self.idx_n(k)] += Rational::one();
        v.iter().map(|x| x * crate::mat::rat(-1, 2)).collect()
    }

    /// `omega = (l + sum_i (m_{i,+} + m_{i,-}) - sum_k n_k) / 3`
    /// (an order-3 class when `p + q = 1 mod 3`).
    pub fn omega(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        let third = crate::mat::rat(1, 3);
        v[self.idx_l()] = third.clone();
        for i in 0..self.p {
            v[self.idx_m(i, 0)] = third.clone();
            v[self.idx_m(i, 1)] = third.clone();
        }
        for k in 0..self.q {
            v[self.idx_n(k)] = -third.clone();
        }
        v
    }

    /// `beta = sum_i mu_i`, the unique geometric pivot class for `p = 6`.
    pub fn beta(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        for i in 0..self.p {
            for (a, b) in v.iter_mut().zip(self.mu(i)) {
                *a += b;
            }
        }
        v
    }

    /// The ten-fiber section class `omega + (p - 4) lambda` for `p + q = 10`.
    pub fn l_star(&self) -> Vec<Rational> {
        let mut v = self.omega();
        let f = crate::mat::rat(self.p as i64 - 4, 1);
        for (a, b) in v.iter_mut().zip(self.lambda()) {
            *a += &f * &b;
        }
        v
    }

    /// `sum_{k in support} 3 nu_k`.
    pub fn two_torsion(&self, support: &[usize]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        for &k in support {
            for (a, b) in v.iter_mut().zip(self.nu(k)) {
                *a += crate::mat::rat(3, 1) * b;
            }
        }
        v
    }

    /// Dual vectors generating a named pivot.
    pub fn pivot_generators(&self, pivot: &PencilPivot) -> Result<Vec<Vec<Rational>>, String> {
        match pivot {
            PencilPivot::Beta => {
                if self.p != 6 {
                    return Err("beta pivot requires p = 6".into());
                }
                Ok(vec![self.beta()])
            }
            PencilPivot::Omega => {
                if (self.p + self.q) % 3 != 1 {
                    return Err("omega pivot requires p + q = 1 mod 3".into());
                }
                Ok(vec![self.omega()])
            }
            PencilPivot::LStar => {
                if self.p + self.q != 10 {
                    return Err("ten-fiber section pivot requires p + q = 10".into());
                }
                Ok(vec![self.l_star()])
            }
            PencilPivot::TwoTorsion(support) => {
                if support.len() != 8 {
                    return Err("2-torsion pivot support must have 8 elements".into());
                }
                Ok(vec![self.two_torsion(support)])
            }
            PencilPivot::TwoTorsionPair(s1, s2) => {
                if self.q != 12 {
                    return Err("(Z2)^2 pivot requires q = 12".into());
                }
                let common = s1.iter().filter(|k| s2.contains(k)).count();
                if s1.len() != 8 || s2.len() != 8 || common != 4 {
                    return Err("octets must each have 8 elements sharing 4".into());
                }
                Ok(vec![self.two_torsion(s1), self.two_torsion(s2)])
            }
        }
    }

    /// Finite index extension by a named pivot. The pivot must be isotropic
    /// and the extension free of forbidden vectors; otherwise rejected.
    pub fn extend_by_pivot(
        &self,
        pivot: &PencilPivot,
    ) -> Result<(PolarizedLattice, ExtensionData), String> {
        let gens = self.pivot_generators(pivot)?;
        let ext = finite_index_extension(&self.polarized.lattice, &gens)?;
        let h = ext.old_vector_in_new(&self.polarized.h);
        let sp = PolarizedLattice::new(ext.lattice.clone(), h);
        if !no_forbidden_vectors(&sp)? {
            return Err("pivot produces a forbidden vector".into());
        }
        Ok((sp, ext))
    }
}

/// Construct `P_{p,q}`: the hyperbolic lattice freely generated by `h`, the
/// axis `l`, two lines per 3-fiber and one line per 1-fiber.
pub fn build_pencil_lattice(p: usize, q: usize) -> PencilLattice {
    let rank = 2 + 2 * p + q;
    let mut g = IntMatrix::zero(rank, rank);
    let idx_h = 0usize;
    let idx_l = 1usize;
    let idx_m = |i: usize, s: usize| 2 + 2 * i + s;
    let idx_n = |k: usize| 2 + 2 * p + k;

    g[(idx_h, idx_h)] = BigInt::from(4);
    g[(idx_l, idx_l)] = BigInt::from(-2);
    g[(idx_h, idx_l)] = BigInt::one();
    g[(idx_l, idx_h)] = BigInt::one();
    for i in 0..p {
        for s in 0..2 {
            let a = idx_m(i, s);
            g[(a, a)] = BigInt::from(-2);
            g[(idx_h, a)] = BigInt::one();
            g[(a, idx_h)] = BigInt::one();
            g[(idx_l, a)] = BigInt::one();
            g[(a, idx_l)] = BigInt::one();
        }
        let (a, b) = (idx_m(i, 0), idx_m(i, 1));
        g[(a, b)] = BigInt::one();
        g[(b, a)] = BigInt::one();
    }
    for k in 0..q {
        let a = idx_n(k);
        g[(a, a)] = BigInt::from(-2);
        g[(idx_h, a)] = BigInt::one();
        g[(a, idx_h)] = BigInt::one();
        g[(idx_l, a)] = BigInt::one();
        g[(a, idx_l)] = BigInt::one();
    }
    let mut labels = vec!["h".to_string(), "l".to_string()];
    for i in 0..p {
        labels.push(format!("m{}+", i + 1));
        labels.push(format!("m{}-", i + 1));
    }
    for k in 0..q {
        labels.push(format!("n{}", k + 1));
    }
    let lattice = Lattice::with_labels(g, labels);
    let mut h = vec![BigInt::zero(); rank];
    h[0] = BigInt::one();
    PencilLattice {
        p,
        q,
        polarized: PolarizedLattice::new(lattice, h),
    }
}

/// Canonical pattern of a pivot class under the evident symmetries of
/// `P_{p,q}` (swapping the two recorded lines in a fiber, permuting
/// 3-fibers, permuting 1-fibers) and scalar multiples: used to deduplicate
/// pivot candidates up to isometry before searching.
fn pivot_pattern(pl: &PencilLattice, v: &[Rational], order: i64) -> Vec<String> {
    let frac = |x: &Rational| -> Rational { x - x.floor() };
    let mut best: Option<Vec<String>> = None;
    for mult in 1..order {
        if num_integer::Integer::gcd(&mult, &order) != 1 {
            continue;
        }
        let mr = Rational::from(BigInt::from(mult));
        let w: Vec<Rational> = v.iter().map(|x| frac(&(x * &mr))).collect();
        let mut fibers: Vec<(String, String)> = (0..pl.p)
            .map(|i| {
                let a = w[pl.idx_m(i, 0)].to_string();
                let b = w[pl.idx_m(i, 1)].to_string();
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        fibers.sort();
        let mut ns: Vec<String> = (0..pl.q).map(|k| w[pl.idx_n(k)].to_string()).collect();
        ns.sort();
        let mut key = vec![w[0].to_string(), w[1].to_string()];
        key.extend(fibers.into_iter().map(|(a, b)| format!("{a}|{b}")));
        key.extend(ns);
        match &best {
            Some(b) if *b <= key => {}
            _ => best = Some(key),
        }
    }
    best.unwrap()
}

/// Isotropic prime-order pivot candidates of `P_{p,q}` up to the evident
/// symmetries, as dual vectors.
pub fn isotropic_pivot_reps(pl: &PencilLattice) -> Result<Vec<(i64, Vec<Rational>)>, String> {
    let d = pl.polarized.lattice.discriminant_form()?;
    let mut primes: Vec<i64> = Vec::new();
    for &f in &d.invariant_factors {
        for p in [2i64, 3] {
            if f % p == 0 && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for p in primes {
        for el in d.isotropic_subgroup_candidates(p) {
            let v = d.element_vector(&el);
            let key = pivot_pattern(pl, &v, p);
            if seen.insert((p, key)) {
                out.push((p, v));
            }
        }
    }
    Ok(out)
}

/// Verdict for one pencil type.
#[derive(Clone, Debug)]
pub struct TypeVerdict {
    pub p: usize,
    pub q: usize,
    /// Within the Euler inequalities `3p + 2q <= 24`, `3p + q <= 20`.
    pub within_bounds: bool,
    /// Whether some valid finite index extension admits a primitive
    /// embedding (exhaustive pivot search).
    pub admissible: bool,
}

/// Search for a geometric realization of `P_{p,q}`: try the lattice itself,
/// then every isotropic pivot rep (recursively extended), with forbidden
/// vector checks at each step.
pub fn pencil_realizable(pl: &PencilLattice) -> Result<bool, String> {
    if !no_forbidden_vectors(&pl.polarized)? {
        return Ok(false);
    }
    if crate::nikulin::nikulin_embeds(&pl.polarized.lattice)? {
        return Ok(true);
    }
    for (_p, gen) in isotropic_pivot_reps(pl)? {
        let ext = match finite_index_extension(&pl.polarized.lattice, &[gen]) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let h = ext.old_vector_in_new(&pl.polarized.h);
        let sp = PolarizedLattice::new(ext.lattice.clone(), h);
        if !no_forbidden_vectors(&sp)? {
            continue;
        }
        if geometric_realization_search(&sp, &|_| true)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The admissibility table: every `(p, q)` within the Euler inequalities,
/// plus the border types just outside them, each with an exhaustive
/// pivot-search verdict.
pub fn admissible_pencil_types() -> Vec<TypeVerdict> {
    let mut types: Vec<(usize, usize)> = Vec::new();
    for p in 0..=8usize {
        for q in 0..=13usize {
            if 3 * p + 2 * q <= 24 && 3 * p + q <= 20 {
                types.push((p, q));
            }
        }
    }
    for border in [(7, 0), (5, 4), (3, 8), (1, 11), (0, 13)] {
        types.push(border);
    }
    types.sort();
    types.dedup();
    types
        .into_iter()
        .map(|(p, q)| {
            let within = 3 * p + 2 * q <= 24 && 3 * p + q <= 20;
            let pl = build_pencil_lattice(p, q);
            let admissible = pencil_realizable(&pl).expect("pencil lattice is even hyperbolic");
            TypeVerdict {
                p,
                q,
                within_bounds: within,
                admissible,
            }
        })
        .collect()
}

/// A geometric pivot class of `P_{p,q}`: a maximal valid finite index
/// extension reachable by prime steps that admits a primitive embedding.
#[derive(Clone, Debug)]
pub struct GeometricPivot {
    /// Invariant factors of the pivot group (e.g. `[3]`, `[2]`, `[2, 2]`).
    pub group: Vec<i64>,
    pub index: BigInt,
    pub det: BigInt,
}

/// Classify the geometric pivots of `P_{p,q}` up to the evident symmetries:
/// all valid extension chains whose result is geometrically realizable,
/// reported by pivot group, maximal ones only.
pub fn geometric_pivots(p: usize, q: usize) -> Result<Vec<GeometricPivot>, String> {
    let pl = build_pencil_lattice(p, q);
    let base_det = pl.polarized.lattice.det();
    // breadth-first over valid extensions, tracking index
    let mut results: Vec<GeometricPivot> = Vec::new();
    let mut frontier: Vec<(PolarizedLattice, Vec<i64>)> = vec![(pl.polarized.clone(), vec![])];
    let mut seen_dets: std::collections::HashSet<(BigInt, Vec<i64>)> = Default::default();
    let reps = isotropic_pivot_reps(&pl)?;
    // first level uses orbit reps; deeper levels use all candidates
    let mut first = true;
    while let Some((cur, steps)) = frontier.pop() {
        let d = cur.lattice.discriminant_form()?;
        let candidates: Vec<(i64, Vec<Rational>)> = if first {
            reps.clone()
        } else {
            let mut v = Vec::new();
            for pr in [2i64, 3] {
                if (&d.order() % BigInt::from(pr)).is_zero() {
                    for el in d.isotropic_subgroup_candidates(pr) {
                        v.push((pr, d.element_vector(&el)));
                    }
                }
            }
            v
        };
        first = false;
        let mut extended = false;
        for (pr, gen) in candidates {
            let ext = match finite_index_extension(&cur.lattice, &[gen]) {
                Ok(e) => e,
                Err(_) => continue,
            };
            let h = ext.old_vector_in_new(&cur.h);
            let sp = PolarizedLattice::new(ext.lattice.clone(), h);
            if !no_forbidden_vectors(&sp)? {
                continue;
            }
            let mut st = steps.clone();
            st.push(pr);
            st.sort();
            let key = (sp.lattice.det(), st.clone());
            extended = true;
            if seen_dets.insert(key) {
                frontier.push((sp, st));
            }
        }
        if !steps.is_empty() && !extended {
            // maximal chain: geometric iff it embeds
            if crate::nikulin::nikulin_embeds(&cur.lattice)? {
                let idx2 = &base_det / &cur.lattice.det();
                let index = crate::mat::bigint_sqrt_exact(&idx2).expect("square index");
                results.push(GeometricPivot {
                    group: steps,
                    index,
                    det: cur.lattice.det(),
                });
            }
        } else if !steps.is_empty() && crate::nikulin::nikulin_embeds(&cur.lattice)? {
            // non-maximal but embeddable chains are still recorded
            let idx2 = &base_det / &cur.lattice.det();
            let index = crate::mat::bigint_sqrt_exact(&idx2).expect("square index");
            results.push(GeometricPivot {
                group: steps,
                index,
                det: cur.lattice.det(),
            });
        }
    }
    // keep one entry per pivot group
    results.sort_by(|a, b| (a.group.clone(), a.det.clone()).cmp(&(b.group.clone(), b.det.clone())));
    results.dedup_by(|a, b| a.group == b.group && a.det == b.det);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn expected_det(p: usize, q: usize) -> BigInt {
        // -3^{p+2} * (-2)^q
        let mut d = -BigInt::from(3).pow(p as u32 + 2);
        for _ in 0..q {
            d *= BigInt::from(-2);
        }
        d
    }

    #[test]
    fn determinant_law() {
        for p in 0..=7usize {
            for q in 0..=12usize {
                if 3 * p + 2 * q > 24 {
                    continue;
                }
                let pl = build_pencil_lattice(p, q);
                assert_eq!(
                    pl.polarized.lattice.det(),
                    expected_det(p, q),
                    "det P_{{{p},{q}}}"
                );
            }
        }
    }

    #[test]
    fn p00_gram() {
        let pl = build_pencil_lattice(0, 0);
        assert_eq!(
            pl.polarized.lattice.gram,
            IntMatrix::from_i64(&[&[4, 1], &[1, -2]])
        );
        assert_eq!(pl.polarized.lattice.det(), BigInt::from(-9));
    }

    #[test]
    fn pencil_lattices_are_hyperbolic_and_even() {
        for (p, q) in [(0, 0), (2, 3), (6, 0), (4, 6)] {
            let pl = build_pencil_lattice(p, q);
            assert!(pl.polarized.lattice.is_even());
            assert!(pl.polarized.lattice.is_hyperbolic(), "({p},{q})");
        }
    }

    #[test]
    fn named_classes_have_paper_squares() {
        let pl = build_pencil_lattice(6, 0);
        let l = &pl.polarized.lattice;
        // lambda^2 = 0, lambda . h = -1
        let lam = pl.lambda();
        assert!(l.dot_rational(&lam, &lam).is_zero());
        let h: Vec<Rational> = (0..pl.rank())
            .map(|i| {
                if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        assert_eq!(l.dot_rational(&lam, &h), crate::mat::rat(-1, 1));
        // mu_i^2 = -2/3
        let mu = pl.mu(0);
        assert_eq!(l.dot_rational(&mu, &mu), crate::mat::rat(-2, 3));
        assert!(l.dot_rational(&mu, &h).is_zero());
        // beta = sum mu_i is isotropic mod 2Z: beta^2 = 6 * (-2/3) = -4
        let beta = pl.beta();
        assert_eq!(l.dot_rational(&beta, &beta), crate::mat::rat(-4, 1));

        let pl = build_pencil_lattice(0, 1);
        let nu = pl.nu(0);
        assert_eq!(
            pl.polarized.lattice.dot_rational(&nu, &nu),
            crate::mat::rat(-1, 2)
        );
    }

    #[test]
    fn beta_extension_of_p60() {
        let pl = build_pencil_lattice(6, 0);
        let (sp, ext) = pl.extend_by_pivot(&PencilPivot::Beta).unwrap();
        assert_eq!(ext.index, BigInt::from(3));
        assert_eq!(sp.lattice.det(), BigInt::from(-729));
        assert!(crate::nikulin::nikulin_embeds(&sp.lattice).unwrap());
    }

    #[test]
    fn omega_is_a_section_for_46() {
        let pl = build_pencil_lattice(4, 6);
        let om = pl.omega();
        let l = &pl.polarized.lattice;
        assert_eq!(l.dot_rational(&om, &om), crate::mat::rat(-2, 1));
        let h: Vec<Rational> = (0..pl.rank())
            .map(|i| {
                if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        assert_eq!(l.dot_rational(&om, &h), Rational::one());
        let (sp, ext) = pl.extend_by_pivot(&PencilPivot::Omega).unwrap();
        assert_eq!(ext.index, BigInt::from(3));
        // det scales by index^2
        assert_eq!(
            sp.lattice.det() * BigInt::from(9),
            pl.polarized.lattice.det()
        );
    }

    #[test]
    fn p70_is_rejected() {
        let pl = build_pencil_lattice(7, 0);
        assert!(!pencil_realizable(&pl).unwrap());
    }

    #[test]
    fn p62_is_admissible() {
        let pl = build_pencil_lattice(6, 2);
        assert!(pencil_realizable(&pl).unwrap());
    }

    #[test]
    fn p60_primitive_and_imprimitive_both_embed() {
        // rank 14 with l(discr) = 7 stays under the rank bound, so the bare
        // lattice embeds primitively (primitive (6,0) pairs exist); the
        // index-3 extension is the imprimitive geometric realization.
        let pl = build_pencil_lattice(6, 0);
        let d = pl.polarized.lattice.discriminant_form().unwrap();
        assert_eq!(d.ell(), 7);
        assert!(crate::nikulin::nikulin_embeds(&pl.polarized.lattice).unwrap());
        assert!(pencil_realizable(&pl).unwrap());
    }

    #[test]
    fn geometric_pivots_of_46_and_53() {
        let piv = geometric_pivots(4, 6).unwrap();
        assert_eq!(piv.len(), 1);
        assert_eq!(piv[0].group, vec![3]);

        // every pencil of type (5, *) is primitive: no nontrivial pivot
        let piv = geometric_pivots(5, 3).unwrap();
        assert!(piv.is_empty());
    }

    #[test]
    fn det_sign_alternates_with_q() {
        let pl = build_pencil_lattice(4, 6);
        assert_eq!(pl.polarized.lattice.det(), expected_det(4, 6));
        assert_eq!(expected_det(4, 6), BigInt::from(-46656));
        assert!(expected_det(4, 5).is_positive());
    }
}
