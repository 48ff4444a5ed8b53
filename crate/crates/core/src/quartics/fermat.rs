//! The Fermat quartic `z0^4 + z1^4 + z2^4 + z3^4 = 0` over `Q(zeta_8)` and
//! its 48 standard lines (3 d^2 for d = 4).

use crate::nf::{NFElement, NumberField};
use crate::quartics::line::ProjLine;
use crate::quartics::surface::{line_on_surface, QuarticSurface};

pub const FIELD: NumberField = NumberField::Cyclotomic(8);

pub fn fermat_surface() -> QuarticSurface {
    let f = FIELD;
    let mut s = QuarticSurface::new(f);
    s.set([4, 0, 0, 0], f.one());
    s.set([0, 4, 0, 0], f.one());
    s.set([0, 0, 4, 0], f.one());
    s.set([0, 0, 0, 4], f.one());
    s
}

/// The fourth roots of -1: odd powers of `zeta_8`.
fn fourth_roots_of_minus_one() -> [NFElement; 4] {
    [
        FIELD.generator_pow(1),
        FIELD.generator_pow(3),
        FIELD.generator_pow(5),
        FIELD.generator_pow(7),
    ]
}

/// The 48 lines: for each of the three pairings of the coordinates into two
/// pairs, sixteen lines twisting the pairs by fourth roots of -1.
pub fn fermat_lines() -> Result<Vec<ProjLine>, String> {
    let f = FIELD;
    let x = fermat_surface();
    let roots = fourth_roots_of_minus_one();
    let mut out = Vec::new();
    for (pairing, make) in [
        // (z0 z1)(z2 z3): z1 = a z0, z3 = b z2
        (0, &(|a: &NFElement, b: &NFElement| {
            ProjLine::from_points(
                &[f.one(), a.clone(), f.zero(), f.zero()],
                &[f.zero(), f.zero(), f.one(), b.clone()],
            )
        }) as &dyn Fn(&NFElement, &NFElement) -> Result<ProjLine, String>),
        // (z0 z2)(z1 z3): z2 = a z0, z3 = b z1
        (1, &|a: &NFElement, b: &NFElement| {
            ProjLine::from_points(
                &[f.one(), f.zero(), a.clone(), f.zero()],
                &[f.zero(), f.one(), f.zero(), b.clone()],
            )
        }),
        // (z0 z3)(z1 z2): z3 = a z0, z2 = b z1
        (2, &|a: &NFElement, b: &NFElement| {
            ProjLine::from_points(
                &[f.one(), f.zero(), f.zero(), a.clone()],
                &[f.zero(), f.one(), b.clone(), f.zero()],
            )
        }),
    ] {
        let _ = pairing;
        for a in &roots {
            for b in &roots {
                let l = make(a, b)?;
                if !line_on_surface(&l, &x)? {
                    return Err("constructed line not on the Fermat quartic".into());
                }
                out.push(l);
            }
        }
    }
    out.sort_by_key(|l| format!("{l:?}"));
    out.dedup();
    if out.len() != 48 {
        return Err(format!("expected 48 lines, got {}", out.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_eight_lines() {
        let lines = fermat_lines().unwrap();
        assert_eq!(lines.len(), 48);
    }
}
