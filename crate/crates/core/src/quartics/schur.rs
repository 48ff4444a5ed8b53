//! The symmetric quartic `z0 (z0^3 - z1^3) = z2 (z2^3 - z3^3)` with 64
//! lines, over `Q(zeta_12)` (which houses `i`, `sqrt(3)`, and the primitive
//! cube roots of unity).

use crate::nf::{NFElement, NumberField};
use crate::quartics::line::ProjLine;
use crate::quartics::semilinear::{close_group, SemilinearMap};
use crate::quartics::surface::{line_on_surface, QuarticSurface};

pub const FIELD: NumberField = NumberField::Cyclotomic(12);

/// `sqrt(3) = zeta + zeta^-1` (verified square in tests).
pub fn sqrt3() -> NFElement {
    FIELD.generator().add(&FIELD.generator_pow(11))
}

/// `i = zeta^3`.
pub fn imag_unit() -> NFElement {
    FIELD.generator_pow(3)
}

/// Primitive cube root of unity `zeta^4`.
pub fn cube_root() -> NFElement {
    FIELD.generator_pow(4)
}

/// The quartic `z0^4 - z0 z1^3 - z2^4 + z2 z3^3 = 0`.
pub fn schur_surface() -> QuarticSurface {
    let f = FIELD;
    let mut s = QuarticSurface::new(f);
    s.set([4, 0, 0, 0], f.one());
    s.set([1, 3, 0, 0], f.from_i64(-1));
    s.set([0, 0, 4, 0], f.from_i64(-1));
    s.set([0, 0, 1, 3], f.one());
    s
}

/// The four roots `0, 1, (-1 ± i sqrt3)/2` of `u (u^3 - 1)`.
pub fn k_values() -> [NFElement; 4] {
    [
        FIELD.zero(),
        FIELD.one(),
        cube_root(),
        cube_root().mul(&cube_root()),
    ]
}

/// The sixteen lines `z0 = k_r z1, z2 = k_s z3` (the roots `k` of
/// `u (u^3 - 1)` cut the binary form on each coordinate pair).
pub fn sixteen_lines() -> Vec<ProjLine> {
    let f = FIELD;
    let ks = k_values();
    let mut out = Vec::new();
    for kr in &ks {
        for ks_ in &ks {
            let a = vec![kr.clone(), f.one(), f.zero(), f.zero()];
            let b = vec![f.zero(), f.zero(), ks_.clone(), f.one()];
            out.push(ProjLine::from_points(&a, &b).expect("independent"));
        }
    }
    out
}

/// The diagonal line `z0 = z2, z1 = z3`.
pub fn diagonal_line() -> ProjLine {
    let f = FIELD;
    ProjLine::from_points(
        &[f.one(), f.zero(), f.one(), f.zero()],
        &[f.zero(), f.one(), f.zero(), f.one()],
    )
    .expect("independent")
}

/// The 2x2 generators of the binary symmetry group of `u(u^3 - v^3)`:
/// `(1/sqrt3) [[1, -1], [-2, -1]]` and `diag(1, epsilon)`.
fn binary_generators() -> Vec<Vec<Vec<NFElement>>> {
    let f = FIELD;
    let s3_inv = sqrt3().inverse();
    let m1 = vec![
        vec![s3_inv.clone(), s3_inv.neg()],
        vec![s3_inv.scale(&crate::mat::rat(-2, 1)), s3_inv.neg()],
    ];
    let m2 = vec![
        vec![f.one(), f.zero()],
        vec![f.zero(), cube_root()],
    ];
    vec![m1, m2]
}

fn block(a: &[Vec<NFElement>], b: &[Vec<NFElement>]) -> SemilinearMap {
    let f = FIELD;
    let mut m = vec![vec![f.zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][j].clone();
            m[2 + i][2 + j] = b[i][j].clone();
        }
    }
    SemilinearMap::linear(m)
}

fn identity2() -> Vec<Vec<NFElement>> {
    let f = FIELD;
    vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]
}

/// The coordinate swap `(z0, z1) <-> (z2, z3)`.
pub fn swap_map() -> SemilinearMap {
    let f = FIELD;
    let mut m = vec![vec![f.zero(); 4]; 4];
    m[0][2] = f.one();
    m[1][3] = f.one();
    m[2][0] = f.one();
    m[3][1] = f.one();
    SemilinearMap::linear(m)
}

/// Generators of the block symmetry group (acting separately on the two
/// coordinate pairs).
pub fn block_group_generators() -> Vec<SemilinearMap> {
    let bins = binary_generators();
    let id = identity2();
    vec![
        block(&bins[0], &id),
        block(&bins[1], &id),
        block(&id, &bins[0]),
        block(&id, &bins[1]),
    ]
}

/// Generators of the full projective symmetry group (order 1152).
pub fn full_group_generators() -> Vec<SemilinearMap> {
    let mut v = block_group_generators();
    v.push(swap_map());
    v
}

/// All 64 lines: the sixteen explicit ones plus the orbit of the diagonal
/// line under the block symmetry group. Each line is verified to lie on the
/// surface; an orbit of unexpected size or duplicates is a hard failure.
pub fn schur_lines() -> Result<Vec<ProjLine>, String> {
    let x = schur_surface();
    let mut lines = sixteen_lines();
    for l in &lines {
        if !line_on_surface(l, &x)? {
            return Err("explicit line not on the surface".into());
        }
    }
    // orbit of the diagonal under the block group, by breadth-first closure
    let gens = block_group_generators();
    let mut seen: std::collections::HashSet<ProjLine> = Default::default();
    let l0 = diagonal_line();
    seen.insert(l0.clone());
    let mut frontier = vec![l0];
    while let Some(l) = frontier.pop() {
        for g in &gens {
            let img = g.apply_line(&l);
            if seen.insert(img.clone()) {
                frontier.push(img);
            }
        }
        if seen.len() > 48 {
            return Err(format!("diagonal orbit exceeded 48 lines"));
        }
    }
    if seen.len() != 48 {
        return Err(format!("diagonal orbit has {} lines, expected 48", seen.len()));
    }
    for l in &seen {
        if !line_on_surface(l, &x)? {
            return Err("orbit line not on the surface".into());
        }
        if lines.contains(l) {
            return Err("orbit line duplicates an explicit line".into());
        }
    }
    let mut orbit: Vec<ProjLine> = seen.into_iter().collect();
    orbit.sort_by_key(|l| format!("{l:?}"));
    lines.extend(orbit);
    if lines.len() != 64 {
        return Err(format!("expected 64 lines, got {}", lines.len()));
    }
    Ok(lines)
}

/// Order of the full projective symmetry group (closure of the generators).
pub fn full_group_order() -> Result<usize, String> {
    Ok(close_group(&full_group_generators(), 4000)?.len())
}

/// The four real structures considered on the surface, as antilinear maps.
pub fn real_structures() -> Vec<SemilinearMap> {
    let f = FIELD;
    let i = imag_unit();
    let id = SemilinearMap::identity(f, 4).matrix;
    // z -> conj z
    let s1 = SemilinearMap::antilinear(id.clone());
    // z -> (conj z0, conj z1, i conj z2, i conj z3)
    let mut m = id.clone();
    m[2][2] = i.clone();
    m[3][3] = i.clone();
    let s2 = SemilinearMap::antilinear(m);
    // z -> (conj z2, conj z3, conj z0, conj z1)
    let s3 = SemilinearMap::antilinear(swap_map().matrix);
    // z -> (conj z2, conj z3, -conj z0, -conj z1)
    let mut m = swap_map().matrix;
    m[2][0] = f.from_i64(-1);
    m[3][1] = f.from_i64(-1);
    let s4 = SemilinearMap::antilinear(m);
    vec![s1, s2, s3, s4]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_squares_to_three() {
        assert_eq!(sqrt3().mul(&sqrt3()), FIELD.from_i64(3));
    }

    #[test]
    fn k_values_are_roots() {
        // each k satisfies k(k^3 - 1) = 0
        for k in k_values() {
            let v = k.mul(&k.pow(3).sub(&FIELD.one()));
            assert!(v.is_zero());
        }
    }

    #[test]
    fn binary_group_has_order_48() {
        // the 2x2 group acting on one coordinate pair: 48 literal matrices,
        // i.e. 12 projective classes times the center of order 4
        let bins = binary_generators();
        let id = identity2();
        let g = close_group(&[block(&bins[0], &id), block(&bins[1], &id)], 200).unwrap();
        // projectively, scalars act trivially on the block, so the closure
        // of one-sided blocks has order 48 (kernel i*id identified)
        assert_eq!(g.len(), 48);
    }

    #[test]
    fn generators_preserve_surface() {
        let x = schur_surface();
        for g in full_group_generators() {
            assert!(g.preserves_surface(&x));
        }
    }
}
