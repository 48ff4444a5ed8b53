//! Quartic forms in four variables over a number field, with exact line
//! containment and linear substitution.

use crate::nf::{NFElement, NumberField};
use crate::quartics::line::ProjLine;
use crate::quartics::poly::PolyNF;
use std::collections::BTreeMap;

/// A degree-4 form in `z0..z3`: monomial exponents (summing to 4) mapped to
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSurface {
    pub field: NumberField,
    pub coeffs: BTreeMap<[u8; 4], NFElement>,
}

impl QuarticSurface {
    pub fn new(field: NumberField) -> Self {
        QuarticSurface {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, exps: [u8; 4], c: NFElement) {
        assert_eq!(exps.iter().map(|&e| e as u32).sum::<u32>(), 4);
        if c.is_zero() {
            self.coeffs.remove(&exps);
        } else {
            self.coeffs.insert(exps, c);
        }
    }

    pub fn add_term(&mut self, exps: [u8; 4], c: NFElement) {
        let cur = self
            .coeffs
            .get(&exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero());
        self.set(exps, cur.add(&c));
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, p: &[NFElement]) -> NFElement {
        let mut acc = self.field.zero();
        for (exps, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&p[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute `z_i = s a_i + t b_i` and return the five coefficients of
    /// the resulting binary quartic in `(s, t)`, ordered by the power of `s`.
    pub fn restrict_to_span(&self, a: &[NFElement], b: &[NFElement]) -> [NFElement; 5] {
        let zero = self.field.zero();
        let mut out = [zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero];
        for (exps, c) in &self.coeffs {
            // product over i of (s a_i + t b_i)^{e_i}, tracked by s-degree
            let mut form = vec![self.field.one()]; // degree-0 binary form
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    // multiply by (s a_i + t b_i)
                    let mut next = vec![self.field.zero(); form.len() + 1];
                    for (k, f) in form.iter().enumerate() {
                        // t-part
                        next[k] = next[k].add(&f.mul(&b[i]));
                        // s-part
                        next[k + 1] = next[k + 1].add(&f.mul(&a[i]));
                    }
                    form = next;
                }
            }
            debug_assert_eq!(form.len(), 5);
            for (k, f) in form.into_iter().enumerate() {
                out[k] = out[k].add(&f.mul(c));
            }
        }
        out
    }

    /// Substitute `z_i = s a_i(x) + t b_i(x)` for polynomial point families
    /// and return the five `(s, t)`-coefficients as polynomials in `x`.
    pub fn restrict_to_poly_span(&self, a: &[PolyNF], b: &[PolyNF]) -> [PolyNF; 5] {
        let zero = PolyNF::zero(self.field);
        let mut out = [
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero,
        ];
        for (exps, c) in &self.coeffs {
            let mut form = vec![PolyNF::constant(self.field.one())];
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![PolyNF::zero(self.field); form.len() + 1];
                    for (k, f) in form.iter().enumerate() {
                        next[k] = next[k].add(&f.mul(&b[i]));
                        next[k + 1] = next[k + 1].add(&f.mul(&a[i]));
                    }
                    form = next;
                }
            }
            for (k, f) in form.into_iter().enumerate() {
                out[k] = out[k].add(&f.scale(c));
            }
        }
        out
    }

    /// Linear substitution `z -> M z`: the form `F(M z)`.
    pub fn substitute_linear(&self, m: &[Vec<NFElement>]) -> QuarticSurface {
        // each z_i becomes the linear form sum_j m[i][j] z_j
        let mut out = QuarticSurface::new(self.field);
        for (exps, c) in &self.coeffs {
            // expand the product of linear forms
            let mut terms: BTreeMap<[u8; 4], NFElement> = BTreeMap::new();
            terms.insert([0, 0, 0, 0], c.clone());
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let mut next: BTreeMap<[u8; 4], NFElement> = BTreeMap::new();
                    for (t_exp, t_c) in &terms {
                        for j in 0..4 {
                            if m[i][j].is_zero() {
                                continue;
                            }
                            let mut e2 = *t_exp;
                            e2[j] += 1;
                            let add = t_c.mul(&m[i][j]);
                            next.entry(e2)
                                .and_modify(|x| *x = x.add(&add))
                                .or_insert(add);
                        }
                    }
                    terms = next;
                }
            }
            for (e2, c2) in terms {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Conjugate all coefficients by the field automorphism.
    pub fn conjugate_coeffs(&self) -> QuarticSurface {
        let mut out = QuarticSurface::new(self.field);
        for (e, c) in &self.coeffs {
            out.set(*e, c.conjugate());
        }
        out
    }

    /// Whether `other = lambda * self` for a nonzero field scalar.
    pub fn proportional_to(&self, other: &QuarticSurface) -> bool {
        if self.coeffs.keys().ne(other.coeffs.keys()) {
            return false;
        }
        let Some((e0, c0)) = self.coeffs.iter().next() else {
            return other.is_zero();
        };
        let lambda = other.coeffs[e0].div(c0);
        self.coeffs
            .iter()
            .all(|(e, c)| other.coeffs[e] == c.mul(&lambda))
    }
}

/// Whether the line lies on the surface: all five coefficients of the
/// restricted binary quartic vanish. Fields must match.
pub fn line_on_surface(l: &ProjLine, x: &QuarticSurface) -> Result<bool, String> {
    if l.field != x.field {
        return Err(format!(
            "field mismatch: line over {}, surface over {}",
            l.field.tag(),
            x.field.tag()
        ));
    }
    let c = x.restrict_to_span(&l.rows[0], &l.rows[1]);
    Ok(c.iter().all(|v| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    fn fermat_like(field: NumberField) -> QuarticSurface {
        let mut s = QuarticSurface::new(field);
        s.set([4, 0, 0, 0], field.one());
        s.set([0, 4, 0, 0], field.one());
        s.set([0, 0, 4, 0], field.one());
        s.set([0, 0, 0, 4], field.one());
        s
    }

    #[test]
    fn fermat_line_containment() {
        let f = NumberField::Cyclotomic(8);
        let x = fermat_like(f);
        let alpha = f.generator(); // zeta8, alpha^4 = -1
        // line z1 = alpha z0, z3 = alpha z2
        let l = ProjLine::from_points(
            &[f.one(), alpha.clone(), f.zero(), f.zero()],
            &[f.zero(), f.zero(), f.one(), alpha.clone()],
        )
        .unwrap();
        assert!(line_on_surface(&l, &x).unwrap());
        // generic line not contained
        let l2 = ProjLine::from_points(
            &[f.one(), f.zero(), f.zero(), f.zero()],
            &[f.zero(), f.zero(), f.one(), f.zero()],
        )
        .unwrap();
        assert!(!line_on_surface(&l2, &x).unwrap());
    }

    #[test]
    fn substitution_preserves_containment() {
        let f = NumberField::Cyclotomic(8);
        let x = fermat_like(f);
        // swap z0 <-> z2
        let m: Vec<Vec<NFElement>> = vec![
            vec![f.zero(), f.zero(), f.one(), f.zero()],
            vec![f.zero(), f.one(), f.zero(), f.zero()],
            vec![f.one(), f.zero(), f.zero(), f.zero()],
            vec![f.zero(), f.zero(), f.zero(), f.one()],
        ];
        let y = x.substitute_linear(&m);
        assert!(y.proportional_to(&x));
    }
}
