//! Small polynomial helpers over a number field: dense univariate
//! polynomials (for ruling computations on quadrics) and binary forms with
//! polynomial coefficients.

use crate::nf::{NFElement, NumberField};

/// Dense univariate polynomial over a number field, coefficients low to
/// high. Always carries at least one coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyNF {
    pub field: NumberField,
    pub coeffs: Vec<NFElement>,
}

impl PolyNF {
    pub fn zero(field: NumberField) -> Self {
        PolyNF {
            field,
            coeffs: vec![field.zero()],
        }
    }

    pub fn constant(c: NFElement) -> Self {
        PolyNF {
            field: c.field,
            coeffs: vec![c],
        }
    }

    /// `a + b x`.
    pub fn linear(a: NFElement, b: NFElement) -> Self {
        assert_eq!(a.field, b.field);
        PolyNF {
            field: a.field,
            coeffs: vec![a, b],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &PolyNF) -> PolyNF {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        PolyNF {
            field: self.field,
            coeffs: out,
        }
        .trim()
    }

    pub fn mul(&self, other: &PolyNF) -> PolyNF {
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        PolyNF {
            field: self.field,
            coeffs: out,
        }
        .trim()
    }

    pub fn scale(&self, c: &NFElement) -> PolyNF {
        PolyNF {
            field: self.field,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
        .trim()
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn divrem(&self, other: &PolyNF) -> (PolyNF, PolyNF) {
        let db = other.degree().expect("division by zero polynomial");
        let lead_inv = other.coeffs[db].inverse();
        let mut rem = self.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len()];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let f = rem.coeffs[dr].mul(&lead_inv);
            quo[dr - db] = f.clone();
            for k in 0..=db {
                let sub = f.mul(&other.coeffs[k]);
                rem.coeffs[dr - db + k] = rem.coeffs[dr - db + k].sub(&sub);
            }
            rem = rem.trim();
            if rem.degree().map(|d| d >= dr).unwrap_or(false) {
                panic!("no progress in polynomial division");
            }
        }
        (
            PolyNF {
                field: self.field,
                coeffs: quo,
            }
            .trim(),
            rem,
        )
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &PolyNF) -> PolyNF {
        let mut a = self.clone().trim();
        let mut b = other.clone().trim();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = a.coeffs[d].inverse();
            a = a.scale(&inv);
        }
        a
    }

    /// Roots inside the quadratic field of definition, for degree <= 2.
    /// Returns `None` when a needed square root does not exist in the field.
    pub fn roots_in_field(&self) -> Option<Vec<NFElement>> {
        match self.degree() {
            None | Some(0) => Some(vec![]),
            Some(1) => {
                // a + b x = 0
                let r = self.coeffs[0].neg().div(&self.coeffs[1]);
                Some(vec![r])
            }
            Some(2) => {
                let a = &self.coeffs[2];
                let b = &self.coeffs[1];
                let c = &self.coeffs[0];
                let disc = b.mul(b).sub(&a.mul(c).scale(&crate::mat::rat(4, 1)));
                let sq = disc.sqrt_in_field()?;
                let two_a_inv = a.scale(&crate::mat::rat(2, 1)).inverse();
                let r1 = b.neg().add(&sq).mul(&two_a_inv);
                let r2 = b.neg().sub(&sq).mul(&two_a_inv);
                Some(vec![r1, r2])
            }
            Some(d) => panic!("roots_in_field only handles degree <= 2, got {d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    #[test]
    fn gcd_of_shared_factor() {
        let f = NumberField::Sqrt(2);
        let x = PolyNF::linear(f.zero(), f.one());
        let s = PolyNF::linear(f.generator().neg(), f.one()); // x - sqrt2
        let a = x.mul(&s); // x^2 - sqrt2 x
        let b = s.mul(&PolyNF::linear(f.one(), f.one())); // (x + 1)(x - sqrt2)
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
        // monic: x - sqrt2
        assert_eq!(g.coeffs[1], f.one());
        assert_eq!(g.coeffs[0], f.generator().neg());
    }

    #[test]
    fn quadratic_roots() {
        let f = NumberField::Sqrt(2);
        // (x - sqrt2)(x + 2 sqrt2) = x^2 + sqrt2 x - 4
        let p = PolyNF {
            field: f,
            coeffs: vec![f.from_i64(-4), f.generator(), f.one()],
        };
        let roots = p.roots_in_field().unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(p.eval(r).is_zero());
        }
        // irreducible: x^2 - 3
        let p = PolyNF {
            field: f,
            coeffs: vec![f.from_i64(-3), f.zero(), f.one()],
        };
        assert!(p.roots_in_field().is_none());
    }
}
