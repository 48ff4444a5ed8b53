//! Exact arithmetic in a fixed, closed list of number fields: `Q`,
//! real/imaginary quadratic fields `Q(√d)`, and the cyclotomic fields
//! `Q(ζ8)`, `Q(ζ12)`.
//!
//! Elements are coordinate vectors over the power basis of the generator;
//! equality is exact coordinate equality. There is deliberately no general
//! number-field tower machinery here: the explicit surfaces need exactly
//! these fields.

use crate::mat::{rational_sqrt_exact, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// One of the supported fields. `Sqrt(d)` requires `d` squarefree, `d != 0, 1`;
/// `Cyclotomic(n)` supports `n = 8` (minimal polynomial `x^4 + 1`) and
/// `n = 12` (`x^4 - x^2 + 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NumberField {
    Rationals,
    Sqrt(i64),
    Cyclotomic(u32),
}

impl NumberField {
    pub fn degree(&self) -> usize {
        match self {
            NumberField::Rationals => 1,
            NumberField::Sqrt(_) => 2,
            NumberField::Cyclotomic(_) => 4,
        }
    }

    /// Monic minimal polynomial of the generator, coefficients low to high,
    /// excluding the leading 1. Fixed table, not computed.
    pub fn minimal_polynomial_tail(&self) -> Vec<Rational> {
        match self {
            NumberField::Rationals => vec![],
            NumberField::Sqrt(d) => vec![Rational::from(BigInt::from(-*d)), Rational::zero()],
            NumberField::Cyclotomic(8) => vec![
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
            NumberField::Cyclotomic(12) => vec![
                Rational::one(),
                Rational::zero(),
                -Rational::one(),
                Rational::zero(),
            ],
            NumberField::Cyclotomic(n) => panic!("unsupported cyclotomic order {n}"),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            NumberField::Rationals => "rationals".into(),
            NumberField::Sqrt(d) => format!("sqrt{d}"),
            NumberField::Cyclotomic(n) => format!("cyclotomic{n}"),
        }
    }

    pub fn from_tag(tag: &str) -> Result<NumberField, String> {
        if tag == "rationals" {
            return Ok(NumberField::Rationals);
        }
        if let Some(d) = tag.strip_prefix("sqrt") {
            let d: i64 = d.parse().map_err(|e| format!("bad sqrt tag: {e}"))?;
            return Ok(NumberField::Sqrt(d));
        }
        if let Some(n) = tag.strip_prefix("cyclotomic") {
            let n: u32 = n.parse().map_err(|e| format!("bad cyclotomic tag: {e}"))?;
            if n != 8 && n != 12 {
                return Err(format!("unsupported cyclotomic order {n}"));
            }
            return Ok(NumberField::Cyclotomic(n));
        }
        Err(format!("unknown field tag `{tag}`"))
    }

    pub fn zero(&self) -> NFElement {
        NFElement {
            field: *self,
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> NFElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> NFElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = r;
        NFElement {
            field: *self,
            coords,
        }
    }

    pub fn from_i64(&self, n: i64) -> NFElement {
        self.from_rational(Rational::from(BigInt::from(n)))
    }

    /// The power-basis generator: `√d` or `ζ_n` (or 1 over `Q` itself,
    /// where the power basis is trivial).
    pub fn generator(&self) -> NFElement {
        if self.degree() == 1 {
            return self.one();
        }
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[1] = Rational::one();
        NFElement {
            field: *self,
            coords,
        }
    }

    /// Generator raised to the k-th power, reduced.
    pub fn generator_pow(&self, k: usize) -> NFElement {
        self.generator().pow(k as u64)
    }
}

/// An element of a fixed number field, as exact rational coordinates in the
/// power basis `1, g, g^2, ...` of the generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NFElement {
    pub field: NumberField,
    pub coords: Vec<Rational>,
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub enum NfOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: rejects field mismatch and division by zero.
pub fn nf_arith(a: &NFElement, b: &NFElement, op: NfOp) -> Result<NFElement, String> {
    if a.field != b.field {
        return Err(format!(
            "field mismatch: {} vs {}",
            a.field.tag(),
            b.field.tag()
        ));
    }
    match op {
        NfOp::Add => Ok(a.add(b)),
        NfOp::Sub => Ok(a.sub(b)),
        NfOp::Mul => Ok(a.mul(b)),
        NfOp::Div => {
            if b.is_zero() {
                return Err("division by zero".into());
            }
            Ok(a.div(b))
        }
    }
}

/// Field automorphism selector for `nf_automorphism`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldAut {
    Identity,
    Conjugate,
}

/// The automorphism induced by complex conjugation under the standard
/// embedding: identity on real quadratic fields, `√d -> -√d` for `d < 0`,
/// `ζ -> ζ^{-1}` on the cyclotomic fields.
pub fn nf_automorphism(a: &NFElement, which: FieldAut) -> NFElement {
    match which {
        FieldAut::Identity => a.clone(),
        FieldAut::Conjugate => a.conjugate(),
    }
}

impl NFElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn assert_same(&self, other: &NFElement) {
        assert_eq!(self.field, other.field, "number field mismatch");
    }

    pub fn add(&self, other: &NFElement) -> NFElement {
        self.assert_same(other);
        NFElement {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &NFElement) -> NFElement {
        self.assert_same(other);
        NFElement {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> NFElement {
        NFElement {
            field: self.field,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> NFElement {
        NFElement {
            field: self.field,
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, other: &NFElement) -> NFElement {
        self.assert_same(other);
        let deg = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * deg.max(1) - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // reduce modulo the minimal polynomial: g^deg = -(tail)
        let tail = self.field.minimal_polynomial_tail();
        for k in (deg..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (t, coef) in tail.iter().enumerate() {
                if !coef.is_zero() {
                    let sub = &c * coef;
                    prod[k - deg + t] -= sub;
                }
            }
        }
        prod.truncate(deg);
        NFElement {
            field: self.field,
            coords: prod,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// the coordinate polynomial and the minimal polynomial.
    pub fn inverse(&self) -> NFElement {
        assert!(!self.is_zero(), "inverse of zero");
        let deg = self.field.degree();
        if deg == 1 {
            return self.field.from_rational(self.coords[0].recip());
        }
        let mut m: Vec<Rational> = self.field.minimal_polynomial_tail();
        m.push(Rational::one());
        let a: Vec<Rational> = self.coords.clone();
        let (g, u, _v) = poly_xgcd(&a, &m);
        assert_eq!(poly_deg(&g), Some(0), "element not invertible mod minpoly");
        let ginv = g[0].recip();
        let mut inv: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        while inv.len() > deg {
            let c = inv.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let k = inv.len();
            for (t, coef) in self.field.minimal_polynomial_tail().iter().enumerate() {
                let sub = &c * coef;
                inv[k - deg + t] -= sub;
            }
        }
        inv.resize(deg, Rational::zero());
        NFElement {
            field: self.field,
            coords: inv,
        }
    }

    pub fn div(&self, other: &NFElement) -> NFElement {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, mut e: u64) -> NFElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation under the standard embedding. Involutive ring
    /// automorphism.
    pub fn conjugate(&self) -> NFElement {
        match self.field {
            NumberField::Rationals => self.clone(),
            NumberField::Sqrt(d) => {
                if d > 0 {
                    self.clone()
                } else {
                    let mut c = self.coords.clone();
                    c[1] = -&c[1];
                    NFElement {
                        field: self.field,
                        coords: c,
                    }
                }
            }
            NumberField::Cyclotomic(n) => {
                let mut acc = self.field.zero();
                for (k, c) in self.coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let p = self
                        .field
                        .generator_pow((k * (n as usize - 1)) % n as usize);
                    acc = acc.add(&p.scale(c));
                }
                acc
            }
        }
    }

    /// Exact square root inside a quadratic field or `Q`, when one exists.
    pub fn sqrt_in_field(&self) -> Option<NFElement> {
        match self.field {
            NumberField::Rationals => {
                let r = rational_sqrt_exact(&self.coords[0])?;
                Some(self.field.from_rational(r))
            }
            NumberField::Sqrt(d) => {
                let a = self.coords[0].clone();
                let b = self.coords[1].clone();
                let drat = Rational::from(BigInt::from(d));
                // want (c + e*g)^2 = a + b*g: c^2 + d e^2 = a, 2ce = b
                if b.is_zero() {
                    if let Some(c) = rational_sqrt_exact(&a) {
                        let mut out = self.field.zero();
                        out.coords[0] = c;
                        return Some(out);
                    }
                    let q = &a / &drat;
                    if let Some(e) = rational_sqrt_exact(&q) {
                        let mut out = self.field.zero();
                        out.coords[1] = e;
                        return Some(out);
                    }
                    return None;
                }
                // norm must be a rational square: a^2 - d b^2 = t^2
                let t2 = &a * &a - &drat * &b * &b;
                let t = rational_sqrt_exact(&t2)?;
                let two = Rational::from(BigInt::from(2));
                for tt in [t.clone(), -t] {
                    let c2 = (&a + &tt) / &two;
                    if let Some(c) = rational_sqrt_exact(&c2) {
                        if c.is_zero() {
                            continue;
                        }
                        let e = &b / (&two * &c);
                        let mut out = self.field.zero();
                        out.coords[0] = c;
                        out.coords[1] = e;
                        debug_assert_eq!(out.mul(&out), *self);
                        return Some(out);
                    }
                }
                None
            }
            NumberField::Cyclotomic(_) => {
                unimplemented!("square roots are only needed in quadratic fields")
            }
        }
    }

    pub fn to_text(&self) -> String {
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("{}:{}", self.field.tag(), coords.join(","))
    }

    pub fn from_text(s: &str) -> Result<NFElement, String> {
        let (tag, rest) = s.split_once(':').ok_or("missing `:` in element")?;
        let field = NumberField::from_tag(tag.trim())?;
        let coords: Result<Vec<Rational>, String> = rest
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect();
        let coords = coords?;
        if coords.len() != field.degree() {
            return Err(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            ));
        }
        Ok(NFElement { field, coords })
    }
}

pub fn parse_rational(t: &str) -> Result<Rational, String> {
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = t.trim().parse().map_err(|e| format!("bad integer: {e}"))?;
        Ok(Rational::from(n))
    }
}

fn poly_deg(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

fn poly_divrem_q(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quo = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let f = &rem[dr] / &b[db];
        quo[dr - db] = f.clone();
        for k in 0..=db {
            let sub = &f * &b[k];
            rem[dr - db + k] -= sub;
        }
    }
    (poly_trim(quo), poly_trim(rem))
}

/// Extended gcd of rational polynomials: returns `(g, u, v)` with
/// `u*a + v*b = g`.
fn poly_xgcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divrem_q(&r0, &r1);
        let new_s = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        let new_t = poly_sub_q(&t0, &poly_mul_q(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::rat;

    #[test]
    fn sqrt2_squares_to_two() {
        let f = NumberField::Sqrt(2);
        let s = f.generator();
        assert_eq!(s.mul(&s), f.from_i64(2));
    }

    #[test]
    fn zeta12_sixth_power_is_minus_one() {
        let f = NumberField::Cyclotomic(12);
        let z = f.generator();
        assert_eq!(z.pow(6), f.from_i64(-1));
        assert_eq!(z.pow(12), f.one());
    }

    #[test]
    fn norm_of_minus_one_plus_sqrt2() {
        let f = NumberField::Sqrt(2);
        let s = f.generator();
        let a = f.from_i64(-1).add(&s);
        let b = f.from_i64(-1).sub(&s);
        assert_eq!(a.mul(&b), f.from_i64(-1));
    }

    #[test]
    fn conjugation_examples() {
        let f = NumberField::Sqrt(2);
        let s = f.generator();
        assert_eq!(nf_automorphism(&s, FieldAut::Conjugate), s);

        let c = NumberField::Cyclotomic(12);
        let z = c.generator();
        assert_eq!(z.conjugate(), c.generator_pow(11));
        // i = zeta12^3, conj(i) = -i
        let i = c.generator_pow(3);
        assert_eq!(i.conjugate(), i.neg());
        // involutive
        assert_eq!(z.conjugate().conjugate(), z);
    }

    #[test]
    fn division_and_inverse() {
        let f = NumberField::Cyclotomic(12);
        let z = f.generator();
        let a = z.pow(5).add(&f.from_i64(3)).sub(&z.pow(2));
        let inv = a.inverse();
        assert!(a.mul(&inv).is_one());
        let q = nf_arith(&a, &a, NfOp::Div).unwrap();
        assert!(q.is_one());
        assert!(nf_arith(&a, &f.zero(), NfOp::Div).is_err());
        let g = NumberField::Sqrt(2).generator();
        assert!(nf_arith(&a, &g, NfOp::Add).is_err());
    }

    #[test]
    fn sqrt3_inside_q_zeta12() {
        // sqrt3 = zeta12 + zeta12^-1
        let f = NumberField::Cyclotomic(12);
        let s3 = f.generator().add(&f.generator_pow(11));
        assert_eq!(s3.mul(&s3), f.from_i64(3));
    }

    #[test]
    fn sqrt_in_quadratic_field() {
        let f = NumberField::Sqrt(2);
        let s = f.generator();
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let x = f.from_i64(3).add(&s.scale(&rat(2, 1)));
        let r = x.sqrt_in_field().unwrap();
        assert_eq!(r.mul(&r), x);
        let r2 = f.from_i64(2).sqrt_in_field().unwrap();
        assert_eq!(r2.mul(&r2), f.from_i64(2));
        assert!(f.from_i64(3).sqrt_in_field().is_none());
    }

    #[test]
    fn element_text_roundtrip() {
        let f = NumberField::Cyclotomic(8);
        let x = f
            .generator_pow(3)
            .scale(&rat(-7, 3))
            .add(&f.from_rational(rat(1, 2)));
        let y = NFElement::from_text(&x.to_text()).unwrap();
        assert_eq!(x, y);
    }
}
