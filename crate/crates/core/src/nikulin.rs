//! Primitive-embedding tests into the even unimodular lattice of signature
//! (3, 19), totally reflexive realizability, and rank-2 genus candidates
//! (transcendental lattices of rank-20 configurations).

use crate::discform::{DetClass, DiscriminantForm};
use crate::lattice::{
    finite_index_extension, is_primitive_sublattice, rank_one, Lattice,
    PolarizedLattice,
};
use crate::mat::IntMatrix;
use crate::shortvec::h_perp_vectors;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ambient rank and negative signature of the reference even unimodular
/// lattice (2E8 + 3U).
pub const AMBIENT_RANK: usize = 22;
pub const AMBIENT_SIG_PLUS: usize = 3;
pub const AMBIENT_SIG_MINUS: usize = 19;

/// The reference lattice itself, mostly for tests.
pub fn ambient_lattice() -> Lattice {
    let e8 = crate::lattice::e8_minus();
    let u = crate::lattice::hyperbolic_plane();
    e8.direct_sum(&e8).direct_sum(&u).direct_sum(&u).direct_sum(&u)
}

/// Decide whether a nondegenerate even lattice admits a primitive extension
/// to the even unimodular lattice of signature (3, 19).
///
/// The three conditions tested, all exactly:
/// 1. `sigma_+ <= 3`, `sigma_- <= 19`, `rank + l(S) <= 22`;
/// 2. at every odd prime `p` with `rank + l_p = 22`, the square class of
///    `(-1)^{sigma_+ - 1} |S|` must equal `det_p`;
/// 3. at `p = 2`: either `rank + l_2 < 22`, or the 2-part is odd, or
///    `|S| = ±det_2` modulo unit squares.
pub fn nikulin_embeds(l: &Lattice) -> Result<bool, String> {
    if !l.is_even() {
        return Err("embedding test requires an even lattice".into());
    }
    let (sp, sm, sz) = l.signature();
    if sz > 0 {
        return Err("embedding test requires a nondegenerate lattice".into());
    }
    let d = l.discriminant_form()?;
    Ok(nikulin_conditions(sp, sm, &d))
}

/// The embedding conditions, given the signature and discriminant form.
pub fn nikulin_conditions(sigma_plus: usize, sigma_minus: usize, d: &DiscriminantForm) -> bool {
    let rank = sigma_plus + sigma_minus;
    if sigma_plus > AMBIENT_SIG_PLUS || sigma_minus > AMBIENT_SIG_MINUS {
        return false;
    }
    if rank + d.ell() > AMBIENT_RANK {
        return false;
    }
    let order = d.order();
    let inv = d.primary_invariants();
    for pd in &inv.primary {
        let p = pd.p;
        if p == 2 {
            if rank + pd.ell_p < AMBIENT_RANK {
                continue;
            }
            match pd.det_class {
                None => continue, // odd 2-part branch
                Some(DetClass::Two { mod8 }) => {
                    let u = unit_part_mod8(&order);
                    if u != mod8 && u != (8 - mod8) % 8 {
                        return false;
                    }
                }
                Some(_) => unreachable!(),
            }
        } else {
            if rank + pd.ell_p < AMBIENT_RANK {
                continue;
            }
            let mut lhs = order.clone();
            if sigma_plus % 2 == 0 {
                // (-1)^{sigma_+ - 1} = -1 for even sigma_+
                lhs = -lhs;
            }
            let lhs_sq = unit_part_is_square(&lhs, p);
            match pd.det_class {
                Some(DetClass::OddPrime { square }) => {
                    if lhs_sq != square {
                        return false;
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    true
}

fn unit_part_mod8(n: &BigInt) -> i64 {
    let mut u = n.abs();
    let two = BigInt::from(2);
    while (&u % &two).is_zero() {
        u /= &two;
    }
    if n.is_negative() {
        u = -u;
    }
    u.mod_floor(&BigInt::from(8)).to_i64().unwrap()
}

fn unit_part_is_square(n: &BigInt, p: i64) -> bool {
    let pb = BigInt::from(p);
    let mut u = n.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
    }
    let e = (&pb - BigInt::one()) / BigInt::from(2);
    u.mod_floor(&pb).modpow(&e, &pb).is_one()
}

/// Whether a polarized lattice is free of the two kinds of vectors excluded
/// from quartic Picard lattices: `e^2 = -2, e.h = 0` and `e^2 = 0, e.h = 2`.
/// The second kind is detected through norm -4 vectors `v = 2e - h` of
/// `h^perp` with `v + h` divisible by 2.
pub fn no_forbidden_vectors(s: &PolarizedLattice) -> Result<bool, String> {
    let v2 = h_perp_vectors(s, 2)?;
    if !v2.is_empty() {
        return Ok(false);
    }
    let two = BigInt::from(2);
    for v in h_perp_vectors(s, 4)? {
        let plus_even = v
            .iter()
            .zip(&s.h)
            .all(|(x, h)| ((x + h) % &two).is_zero());
        let minus_even = v
            .iter()
            .zip(&s.h)
            .all(|(x, h)| ((h - x) % &two).is_zero());
        if plus_even || minus_even {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One accepted step of a finite index extension chain.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    pub prime: i64,
    pub pivot: Vec<i64>,
    pub lattice: PolarizedLattice,
}

/// Recursive search for a geometric realization: starting from `s`, look
/// for a chain of prime-order isotropic extensions, each staying free of
/// forbidden vectors and passing `extra`, until the embedding criterion
/// holds. Returns the successful chain (possibly empty) or `None`.
pub fn geometric_realization_search(
    s: &PolarizedLattice,
    extra: &dyn Fn(&PolarizedLattice) -> bool,
) -> Result<Option<Vec<ExtensionStep>>, String> {
    if nikulin_embeds(&s.lattice)? {
        return Ok(Some(Vec::new()));
    }
    let d = s.lattice.discriminant_form()?;
    let mut primes: Vec<i64> = Vec::new();
    for &f in &d.invariant_factors {
        let mut dd = f;
        let mut p = 2;
        while dd > 1 {
            if dd % p == 0 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                while dd % p == 0 {
                    dd /= p;
                }
            }
            p += 1;
        }
    }
    primes.sort();
    for p in primes {
        for pivot in d.isotropic_subgroup_candidates(p) {
            let gen = d.element_vector(&pivot);
            let ext = match finite_index_extension(&s.lattice, &[gen]) {
                Ok(e) => e,
                Err(_) => continue,
            };
            let h_new = ext.old_vector_in_new(&s.h);
            let sp = PolarizedLattice::new(ext.lattice.clone(), h_new);
            if !no_forbidden_vectors(&sp)? {
                continue;
            }
            if !extra(&sp) {
                continue;
            }
            if let Some(mut chain) = geometric_realization_search(&sp, extra)? {
                let step = ExtensionStep {
                    prime: p,
                    pivot: pivot.clone(),
                    lattice: sp,
                };
                let mut full = vec![step];
                full.append(&mut chain);
                return Ok(Some(full));
            }
        }
    }
    Ok(None)
}

/// Totally reflexive test: whether the polarized lattice can sit inside the
/// anti-invariant eigenlattice of a geometric involution. Criterion: the
/// orthogonal complement in the ambient lattice must contain `[2]` or
/// `U(2)`; equivalently, `S + [2]` or `S + U(2)` (or a finite index
/// extension keeping `S` primitive) embeds primitively.
pub fn totally_reflexive_test(s: &PolarizedLattice) -> Result<bool, String> {
    if !s.lattice.is_even() || !s.lattice.is_hyperbolic() {
        return Err("test requires an even hyperbolic lattice".into());
    }
    let summands = [rank_one(2), crate::lattice::hyperbolic_plane_twice()];
    for r in &summands {
        let m0 = s.lattice.direct_sum(r);
        // basis vectors of s inside m0 (first rank(s) coordinates)
        let s_rows: Vec<Vec<BigInt>> = (0..s.rank())
            .map(|i| {
                (0..m0.rank())
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        if reflexive_search(&m0, &s_rows)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn reflexive_search(m: &Lattice, s_rows: &[Vec<BigInt>]) -> Result<bool, String> {
    if nikulin_embeds(m)? {
        return Ok(true);
    }
    let d = m.discriminant_form()?;
    let mut primes: Vec<i64> = Vec::new();
    for &f in &d.invariant_factors {
        let mut dd = f;
        let mut p = 2;
        while dd > 1 {
            if dd % p == 0 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                while dd % p == 0 {
                    dd /= p;
                }
            }
            p += 1;
        }
    }
    primes.sort();
    for p in primes {
        for pivot in d.isotropic_subgroup_candidates(p) {
            let gen = d.element_vector(&pivot);
            let ext = match finite_index_extension(m, &[gen]) {
                Ok(e) => e,
                Err(_) => continue,
            };
            // the distinguished sublattice must stay primitive
            let new_rows: Vec<Vec<BigInt>> = s_rows
                .iter()
                .map(|r| ext.old_vector_in_new(r))
                .collect();
            if !is_primitive_sublattice(&new_rows, ext.lattice.rank()) {
                continue;
            }
            if reflexive_search(&ext.lattice, &new_rows)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A reduced positive definite even binary form `[a, b, c]`,
/// `0 <= 2b <= a <= c`, Gram `[[a, b], [b, c]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryForm {
    pub fn det(&self) -> i64 {
        self.a * self.c - self.b * self.b
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(IntMatrix::from_i64(&[&[self.a, self.b], &[self.b, self.c]]))
    }

    /// Smallest nonzero value represented (for a reduced form this is `a`).
    pub fn minimum(&self) -> i64 {
        self.a
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// All reduced positive definite even binary forms of the given determinant.
pub fn reduced_even_forms(det: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let mut a = 2i64;
    while a * a <= 3 * det + 3 {
        // reduced: b <= a/2, c >= a, ac - b^2 = det
        for b in 0..=(a / 2) {
            let num = det + b * b;
            if num % a != 0 {
                continue;
            }
            let c = num / a;
            if c < a || c % 2 != 0 {
                continue;
            }
            out.push(BinaryForm { a, b, c });
        }
        a += 2;
    }
    out.sort();
    out
}

/// All reduced positive definite even binary forms whose discriminant form
/// is anti-isomorphic to the given one (the genus of the transcendental
/// lattice of a rank-20 configuration with that discriminant).
pub fn genus_candidates(d: &DiscriminantForm) -> Vec<BinaryForm> {
    let det = match d.order().to_i64() {
        Some(v) => v,
        None => return Vec::new(),
    };
    reduced_even_forms(det)
        .into_iter()
        .filter(|f| {
            let fd = f
                .lattice()
                .discriminant_form()
                .expect("binary form lattice is even and nondegenerate");
            crate::discform::forms_isomorphic(&fd, d, true).is_some()
        })
        .collect()
}

/// Genus candidates for the orthogonal complement of a rank-20 hyperbolic
/// even polarized lattice inside the ambient lattice. An empty result means
/// no primitive embedding is consistent with the genus.
pub fn transcendental_candidates(s: &PolarizedLattice) -> Result<Vec<BinaryForm>, String> {
    if s.rank() != 20 {
        return Err("transcendental candidates require rank 20".into());
    }
    if !s.lattice.is_hyperbolic() {
        return Err("lattice must be hyperbolic".into());
    }
    let d = s.lattice.discriminant_form()?;
    Ok(genus_candidates(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discform::parse_form;
    use crate::lattice::hyperbolic_plane;

    #[test]
    fn ambient_is_unimodular() {
        let l = ambient_lattice();
        assert_eq!(l.det().abs(), BigInt::one());
        assert_eq!(l.signature(), (3, 19, 0));
    }

    #[test]
    fn u_embeds() {
        assert!(nikulin_embeds(&hyperbolic_plane()).unwrap());
    }

    #[test]
    fn two_e8_plus_u_embeds() {
        let l = crate::lattice::e8_minus()
            .direct_sum(&crate::lattice::e8_minus())
            .direct_sum(&hyperbolic_plane());
        assert_eq!(l.signature(), (1, 17, 0));
        assert!(nikulin_embeds(&l).unwrap());
    }

    #[test]
    fn rank_bound_enforced() {
        // 3U + 2E8 + A1: rank 23 > 22
        let l = ambient_lattice().direct_sum(&rank_one(-2));
        assert!(!nikulin_embeds(&l).unwrap());
    }

    #[test]
    fn table_genus_candidates() {
        // discr <6/5> + <10/11>, det 55 -> [4,1,14]
        let d = parse_form("<6/5>+<10/11>").unwrap();
        let c = genus_candidates(&d);
        assert_eq!(c, vec![BinaryForm { a: 4, b: 1, c: 14 }]);

        // discr V4 + <4/3>, det 48 -> [8,4,8]
        let d = parse_form("V4+<4/3>").unwrap();
        let c = genus_candidates(&d);
        assert_eq!(c, vec![BinaryForm { a: 8, b: 4, c: 8 }]);

        // discr <3/2> + <63/32>, det 64 -> [2,0,32]
        let d = parse_form("<3/2>+<63/32>").unwrap();
        let c = genus_candidates(&d);
        assert_eq!(c, vec![BinaryForm { a: 2, b: 0, c: 32 }]);
    }

    #[test]
    fn reduced_forms_det48() {
        let forms = reduced_even_forms(48);
        // includes [4,0,12], [8,4,8], [2,0,24], [4,2,13]? c must be even;
        // check a few memberships and reducedness
        assert!(forms.contains(&BinaryForm { a: 8, b: 4, c: 8 }));
        assert!(forms.contains(&BinaryForm { a: 2, b: 0, c: 24 }));
        for f in &forms {
            assert_eq!(f.det(), 48);
            assert!(0 <= f.b && 2 * f.b <= f.a && f.a <= f.c);
            assert!(f.a % 2 == 0 && f.c % 2 == 0);
        }
    }
}
