//! Lines in projective 3-space over a number field, as rank-2 row spans in
//! reduced row echelon form (the canonical representative used for
//! deduplication and set comparison).

use crate::nf::{NFElement, NumberField};

/// A projective line: two spanning points of `P^3`, kept in reduced row
/// echelon form over the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine {
    pub field: NumberField,
    /// 2 x 4, RREF: leading ones in increasing pivot columns, pivots
    /// cleared in the other row.
    pub rows: [Vec<NFElement>; 2],
}

impl ProjLine {
    /// Build from two spanning points; fails if the span has rank < 2.
    pub fn from_points(a: &[NFElement], b: &[NFElement]) -> Result<ProjLine, String> {
        assert_eq!(a.len(), 4);
        assert_eq!(b.len(), 4);
        let field = a[0].field;
        let mut m = vec![a.to_vec(), b.to_vec()];
        // RREF on a 2x4 over the field
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..4 {
            if row >= 2 {
                break;
            }
            let piv = (row..2).find(|&r| !m[r][col].is_zero());
            let Some(piv) = piv else { continue };
            m.swap(row, piv);
            let inv = m[row][col].inverse();
            m[row] = m[row].iter().map(|x| x.mul(&inv)).collect();
            for r in 0..2 {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    m[r] = m[r]
                        .iter()
                        .zip(&m[row])
                        .map(|(x, y)| x.sub(&y.mul(&f)))
                        .collect();
                }
            }
            pivots.push(col);
            row += 1;
        }
        if row < 2 {
            return Err("spanning points are proportional (rank < 2)".into());
        }
        let [r0, r1] = [m[0].clone(), m[1].clone()];
        Ok(ProjLine {
            field,
            rows: [r0, r1],
        })
    }

    /// Line `{z0 = u z1, z2 = v z3}` through `[u : 1 : 0 : 0]` and
    /// `[0 : 0 : v : 1]`.
    pub fn from_uv(u: &NFElement, v: &NFElement) -> ProjLine {
        let f = u.field;
        let p = vec![u.clone(), f.one(), f.zero(), f.zero()];
        let q = vec![f.zero(), f.zero(), v.clone(), f.one()];
        ProjLine::from_points(&p, &q).expect("uv points are independent")
    }

    /// A generic point `s * rows[0] + t * rows[1]` with rational s, t.
    pub fn point(&self, s: i64, t: i64) -> Vec<NFElement> {
        let f = self.field;
        let sr = f.from_i64(s);
        let tr = f.from_i64(t);
        self.rows[0]
            .iter()
            .zip(&self.rows[1])
            .map(|(a, b)| a.mul(&sr).add(&b.mul(&tr)))
            .collect()
    }

    /// Apply an invertible matrix (rows act on column coordinate vectors:
    /// `z -> M z`), returning the image line in canonical form.
    pub fn transform(&self, m: &[Vec<NFElement>]) -> ProjLine {
        let img = |p: &Vec<NFElement>| -> Vec<NFElement> {
            (0..4)
                .map(|i| {
                    let mut acc = self.field.zero();
                    for (j, x) in p.iter().enumerate() {
                        acc = acc.add(&m[i][j].mul(x));
                    }
                    acc
                })
                .collect()
        };
        ProjLine::from_points(&img(&self.rows[0]), &img(&self.rows[1]))
            .expect("invertible transform preserves rank")
    }

    /// Apply the field automorphism coordinatewise (canonical form is
    /// preserved up to re-reduction).
    pub fn conjugate(&self) -> ProjLine {
        let c = |p: &Vec<NFElement>| -> Vec<NFElement> {
            p.iter().map(|x| x.conjugate()).collect()
        };
        ProjLine::from_points(&c(&self.rows[0]), &c(&self.rows[1]))
            .expect("conjugation preserves rank")
    }
}

/// Whether two distinct lines intersect: the stacked 4x4 determinant of
/// their spanning points vanishes. Identical lines are rejected.
pub fn lines_meet(l1: &ProjLine, l2: &ProjLine) -> Result<bool, String> {
    if l1 == l2 {
        return Err("lines_meet requires distinct lines".into());
    }
    let rows = [
        l1.rows[0].clone(),
        l1.rows[1].clone(),
        l2.rows[0].clone(),
        l2.rows[1].clone(),
    ];
    Ok(det4(&rows).is_zero())
}

/// Exact 4x4 determinant over the field by fraction-free expansion.
pub fn det4(rows: &[Vec<NFElement>; 4]) -> NFElement {
    let f = rows[0][0].field;
    // Laplace expansion along the first row using 3x3 minors
    let minor3 = |r: [usize; 3], c: [usize; 3]| -> NFElement {
        let m = |i: usize, j: usize| &rows[r[i]][c[j]];
        let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
        let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
        let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
        t1.sub(&t2).add(&t3)
    };
    let mut acc = f.zero();
    let cols = [
        ([1usize, 2, 3], 1i64),
        ([0, 2, 3], -1),
        ([0, 1, 3], 1),
        ([0, 1, 2], -1),
    ];
    for (k, (c, sign)) in cols.iter().enumerate() {
        if rows[0][k].is_zero() {
            continue;
        }
        let m = minor3([1, 2, 3], *c);
        let term = rows[0][k].mul(&m);
        acc = if *sign > 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    #[test]
    fn canonical_form_identifies_spans() {
        let f = NumberField::Sqrt(2);
        let a = vec![f.one(), f.from_i64(2), f.zero(), f.one()];
        let b = vec![f.zero(), f.one(), f.one(), f.zero()];
        let l1 = ProjLine::from_points(&a, &b).unwrap();
        // same span, different generators
        let a2: Vec<NFElement> = a.iter().zip(&b).map(|(x, y)| x.add(&y.mul(&f.from_i64(3)))).collect();
        let b2: Vec<NFElement> = a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect();
        let l2 = ProjLine::from_points(&a2, &b2).unwrap();
        assert_eq!(l1, l2);
        // degenerate span rejected
        assert!(ProjLine::from_points(&a, &a).is_err());
    }

    #[test]
    fn meet_and_skew() {
        let f = NumberField::Rationals;
        // z-axis-ish lines
        let m1 = ProjLine::from_points(
            &[f.zero(), f.zero(), f.one(), f.zero()],
            &[f.zero(), f.zero(), f.zero(), f.one()],
        )
        .unwrap();
        let m2 = ProjLine::from_points(
            &[f.one(), f.zero(), f.zero(), f.zero()],
            &[f.zero(), f.one(), f.zero(), f.zero()],
        )
        .unwrap();
        assert!(!lines_meet(&m1, &m2).unwrap());
        let l = ProjLine::from_uv(&f.from_i64(2), &f.from_i64(5));
        assert!(lines_meet(&l, &m1).unwrap());
        assert!(lines_meet(&l, &m2).unwrap());
        assert!(lines_meet(&l, &l).is_err());
    }
}
