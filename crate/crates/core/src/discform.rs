//! Finite quadratic forms: finite abelian groups carrying a symmetric
//! bilinear form with values in `Q/Z` and a quadratic refinement with values
//! in `Q/2Z`. These arise as discriminant groups of even lattices.
//!
//! Groups here are small (orders up to a few tens of thousands), so
//! isomorphism testing is an exhaustive generator-image search and subgroup
//! computations may enumerate elements. Correctness over speed: none of
//! these calls are hot.

use crate::lattice::Lattice;
use crate::mat::{smith_normal_form, IntMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Element of a finite quadratic form: residues modulo the invariant factors.
pub type FqElement = Vec<i64>;

/// A finite abelian group with `Q/Z` bilinear form and `Q/2Z` quadratic
/// refinement, presented by generators `e_i` of order `invariant_factors[i]`.
///
/// All form values are stored over a common denominator `den`:
/// `b(e_i, e_j) = b_num[i][j] / den` (mod 1, canonical in `[0,1)`) and
/// `q(e_i) = q_num[i] / den` (mod 2, canonical in `[0,2)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub invariant_factors: Vec<i64>,
    pub den: i64,
    b_num: Vec<Vec<i64>>,
    q_num: Vec<i64>,
    /// Generators as rational vectors in the coordinates of the source
    /// lattice, when the form came from one.
    pub gen_vectors: Option<Vec<Vec<Rational>>>,
}

fn modi(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

impl DiscriminantForm {
    /// The trivial form.
    pub fn trivial() -> Self {
        DiscriminantForm {
            invariant_factors: vec![],
            den: 1,
            b_num: vec![],
            q_num: vec![],
            gen_vectors: None,
        }
    }

    /// Build from explicit generator data. `orders[i]` is the order of the
    /// i-th generator; `b` and `q` are exact rational values.
    pub fn from_values(
        orders: &[i64],
        b: &[Vec<Rational>],
        q: &[Rational],
        gen_vectors: Option<Vec<Vec<Rational>>>,
    ) -> Self {
        let ell = orders.len();
        let mut den: i64 = 1;
        for &d in orders {
            assert!(d > 1);
            den = den.lcm(&d);
        }
        let denb = BigInt::from(den);
        let to_num = |x: &Rational, modulus: i64| -> i64 {
            let scaled = x * Rational::from(denb.clone());
            assert!(scaled.is_integer(), "form value {x} not over denominator {den}");
            let v = scaled.to_integer();
            let m = BigInt::from(modulus) * &denb;
            let r = v.mod_floor(&m);
            r.to_i64().expect("form numerator fits i64")
        };
        let b_num: Vec<Vec<i64>> = (0..ell)
            .map(|i| (0..ell).map(|j| to_num(&b[i][j], 1)).collect())
            .collect();
        let q_num: Vec<i64> = (0..ell).map(|i| to_num(&q[i], 2)).collect();
        // consistency: q(e_i) = b(e_i, e_i) mod 1
        for i in 0..ell {
            assert_eq!(modi(q_num[i], den), b_num[i][i], "q and b disagree mod Z");
        }
        DiscriminantForm {
            invariant_factors: orders.to_vec(),
            den,
            b_num,
            q_num,
            gen_vectors,
        }
    }

    /// Discriminant form of an even lattice from dual generators: `gens[i]`
    /// is a rational vector of order `orders[i]` in `discr`.
    pub fn from_lattice_generators(
        l: &Lattice,
        orders: &[BigInt],
        gens: &[Vec<Rational>],
    ) -> Self {
        let ell = orders.len();
        let ords: Vec<i64> = orders
            .iter()
            .map(|o| o.to_i64().expect("invariant factor fits i64"))
            .collect();
        let mut b = vec![vec![Rational::zero(); ell]; ell];
        let mut q = vec![Rational::zero(); ell];
        for i in 0..ell {
            for j in 0..ell {
                b[i][j] = l.dot_rational(&gens[i], &gens[j]);
            }
            q[i] = l.dot_rational(&gens[i], &gens[i]);
        }
        Self::from_values(&ords, &b, &q, Some(gens.to_vec()))
    }

    pub fn ell(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }

    pub fn zero_el(&self) -> FqElement {
        vec![0; self.ell()]
    }

    pub fn is_zero_el(&self, x: &FqElement) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn add_el(&self, x: &FqElement, y: &FqElement) -> FqElement {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), &d)| modi(a + b, d))
            .collect()
    }

    pub fn neg_el(&self, x: &FqElement) -> FqElement {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, &d)| modi(-a, d))
            .collect()
    }

    pub fn scale_el(&self, k: i64, x: &FqElement) -> FqElement {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, &d)| modi(((a % d) as i128 * (k.rem_euclid(d)) as i128 % d as i128) as i64, d))
            .collect()
    }

    pub fn el_order(&self, x: &FqElement) -> i64 {
        let mut o: i64 = 1;
        for (a, &d) in x.iter().zip(&self.invariant_factors) {
            if *a != 0 {
                let g = a.gcd(&d);
                o = o.lcm(&(d / g));
            }
        }
        o
    }

    /// `b(x, y)` as numerator over `den`, canonical in `[0, den)`.
    pub fn b_num_of(&self, x: &FqElement, y: &FqElement) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..self.ell() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.ell() {
                if y[j] == 0 {
                    continue;
                }
                acc += x[i] as i128 * y[j] as i128 % (self.den as i128) * self.b_num[i][j] as i128;
                acc %= self.den as i128;
            }
        }
        modi(acc as i64, self.den)
    }

    /// `q(x)` as numerator over `den`, canonical in `[0, 2*den)`.
    pub fn q_num_of(&self, x: &FqElement) -> i64 {
        let m = 2 * self.den as i128;
        let mut acc: i128 = 0;
        for i in 0..self.ell() {
            if x[i] == 0 {
                continue;
            }
            acc += (x[i] as i128 * x[i] as i128 % m) * (self.q_num[i] as i128) % m;
            acc %= m;
            for j in i + 1..self.ell() {
                if x[j] == 0 {
                    continue;
                }
                acc += 2 * (x[i] as i128 * x[j] as i128 % m) * (self.b_num[i][j] as i128) % m;
                acc %= m;
            }
        }
        modi(acc as i64, 2 * self.den)
    }

    pub fn b_of(&self, x: &FqElement, y: &FqElement) -> Rational {
        Rational::new(BigInt::from(self.b_num_of(x, y)), BigInt::from(self.den))
    }

    pub fn q_of(&self, x: &FqElement) -> Rational {
        Rational::new(BigInt::from(self.q_num_of(x)), BigInt::from(self.den))
    }

    pub fn q_of_gen(&self, i: usize) -> Rational {
        Rational::new(BigInt::from(self.q_num[i]), BigInt::from(self.den))
    }

    pub fn b_of_gens(&self, i: usize, j: usize) -> Rational {
        Rational::new(BigInt::from(self.b_num[i][j]), BigInt::from(self.den))
    }

    /// All elements (use with care; intended for small groups).
    pub fn elements(&self) -> Vec<FqElement> {
        let mut out = vec![self.zero_el()];
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for c in 0..d {
                    let mut e2 = e.clone();
                    e2[i] = c;
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// Elements `x` with `n x = 0`.
    pub fn elements_of_order_dividing(&self, n: i64) -> Vec<FqElement> {
        let mut out = vec![self.zero_el()];
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            // solutions of n*c = 0 mod d: c multiples of d/gcd(n,d)
            let g = n.gcd(&d);
            let step = d / g;
            let mut next = Vec::with_capacity(out.len() * g as usize);
            for e in &out {
                for k in 0..g {
                    let mut e2 = e.clone();
                    e2[i] = modi(k * step, d);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// The rational dual vector representing an element (requires
    /// `gen_vectors`).
    pub fn element_vector(&self, x: &FqElement) -> Vec<Rational> {
        let gens = self
            .gen_vectors
            .as_ref()
            .expect("form has no attached lattice generators");
        let n = gens.first().map(|g| g.len()).unwrap_or(0);
        let mut v = vec![Rational::zero(); n];
        for (c, g) in x.iter().zip(gens) {
            if *c == 0 {
                continue;
            }
            let cr = Rational::from(BigInt::from(*c));
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += &cr * gi;
            }
        }
        v
    }

    /// Direct orthogonal sum.
    pub fn direct_sum(&self, other: &DiscriminantForm) -> DiscriminantForm {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        let ell = orders.len();
        let (n1, d1, d2) = (self.ell(), self.den, other.den);
        let mut b = vec![vec![Rational::zero(); ell]; ell];
        let mut q = vec![Rational::zero(); ell];
        for i in 0..ell {
            for j in 0..ell {
                if i < n1 && j < n1 {
                    b[i][j] = Rational::new(BigInt::from(self.b_num[i][j]), BigInt::from(d1));
                } else if i >= n1 && j >= n1 {
                    b[i][j] = Rational::new(
                        BigInt::from(other.b_num[i - n1][j - n1]),
                        BigInt::from(d2),
                    );
                }
            }
            q[i] = if i < n1 {
                Rational::new(BigInt::from(self.q_num[i]), BigInt::from(d1))
            } else {
                Rational::new(BigInt::from(other.q_num[i - n1]), BigInt::from(d2))
            };
        }
        DiscriminantForm::from_values(&orders, &b, &q, None).normalized()
    }

    /// The same group with the negated form.
    pub fn negated(&self) -> DiscriminantForm {
        let ell = self.ell();
        let b: Vec<Vec<Rational>> = (0..ell)
            .map(|i| {
                (0..ell)
                    .map(|j| -Rational::new(BigInt::from(self.b_num[i][j]), BigInt::from(self.den)))
                    .collect()
            })
            .collect();
        let q: Vec<Rational> = (0..ell)
            .map(|i| -Rational::new(BigInt::from(self.q_num[i]), BigInt::from(self.den)))
            .collect();
        DiscriminantForm::from_values(&self.invariant_factors, &b, &q, None)
    }

    /// Re-present the form on an invariant-factor basis (d_1 | d_2 | ...).
    pub fn normalized(&self) -> DiscriminantForm {
        let gens: Vec<FqElement> = (0..self.ell())
            .map(|i| {
                let mut e = self.zero_el();
                e[i] = 1;
                e
            })
            .collect();
        self.subquotient_form(&gens, &[])
    }

    /// The form induced on `H / K` for subgroups `K <= H` given by
    /// generators, assuming `b` vanishes on `K x H` and `q` vanishes on `K`
    /// (callers arrange this; it holds for isotropic pivots inside their
    /// orthogonal complements). Result is in invariant-factor form.
    pub fn subquotient_form(&self, h_gens: &[FqElement], k_gens: &[FqElement]) -> DiscriminantForm {
        let k = h_gens.len();
        if k == 0 {
            return DiscriminantForm::trivial();
        }
        let ell = self.ell();
        // relation lattice of h_gens inside the ambient group:
        // c in Z^k with sum c_j h_j = 0 mod invariant factors
        // kernel (left) of the (k + ell) x ell matrix [H; diag(d)]
        let mut m = IntMatrix::zero(k + ell, ell);
        for (j, g) in h_gens.iter().enumerate() {
            for i in 0..ell {
                m[(j, i)] = BigInt::from(g[i]);
            }
        }
        for i in 0..ell {
            m[(k + i, i)] = BigInt::from(self.invariant_factors[i]);
        }
        let ker = crate::mat::kernel_basis(&m);
        // relations: first k coordinates of each kernel row
        let mut rel_rows: Vec<Vec<BigInt>> = (0..ker.rows)
            .map(|r| (0..k).map(|j| ker[(r, j)].clone()).collect())
            .collect();
        // K generators expressed in h_gens: solve sum c_j h_j = kappa
        for kp in k_gens {
            let mut target: Vec<BigInt> = kp.iter().map(|&x| BigInt::from(x)).collect();
            target.extend(vec![BigInt::zero(); 0]);
            // solve over Z with the diag relations: [H; diag(d)]^T c' = kappa
            let mt = m.transpose();
            let sol = crate::mat::solve_integer(&mt, &target)
                .expect("K generator must lie in H");
            rel_rows.push(sol[..k].to_vec());
        }
        let mut rel = IntMatrix::zero(rel_rows.len(), k);
        for (i, r) in rel_rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                rel[(i, j)] = x.clone();
            }
        }
        // quotient Z^k / rowspan(rel): SNF U rel V = D; quotient generators
        // are images of the columns of V with orders D_ii
        let s = smith_normal_form(&rel);
        let mut new_gens: Vec<FqElement> = Vec::new();
        let mut new_orders: Vec<i64> = Vec::new();
        for i in 0..k {
            let d = if i < s.d.rows.min(s.d.cols) {
                s.d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d.is_one() {
                continue;
            }
            assert!(
                !d.is_zero(),
                "subquotient of a finite group must be finite"
            );
            let di = d.to_i64().expect("order fits i64");
            // generator: sum_j V[j][i] h_j
            let mut g = self.zero_el();
            for j in 0..k {
                let c = s.v[(j, i)].mod_floor(&BigInt::from(self.order_bound()));
                let c = c.to_i64().expect("coefficient fits");
                g = self.add_el(&g, &self.scale_el(c, &h_gens[j]));
            }
            new_gens.push(g);
            new_orders.push(di);
        }
        // values on the new generators
        let nl = new_gens.len();
        let mut b = vec![vec![Rational::zero(); nl]; nl];
        let mut q = vec![Rational::zero(); nl];
        for i in 0..nl {
            for j in 0..nl {
                b[i][j] = self.b_of(&new_gens[i], &new_gens[j]);
            }
            q[i] = self.q_of(&new_gens[i]);
        }
        let gen_vectors = self.gen_vectors.as_ref().map(|_| {
            new_gens
                .iter()
                .map(|g| self.element_vector(g))
                .collect::<Vec<_>>()
        });
        DiscriminantForm::from_values(&new_orders, &b, &q, gen_vectors)
    }

    fn order_bound(&self) -> i64 {
        self.invariant_factors.iter().product::<i64>().max(1)
    }

    /// Orthogonal subgroup `gens^perp` as a generator list (computed by
    /// element enumeration; groups in scope are small).
    pub fn orthogonal_subgroup(&self, gens: &[FqElement]) -> Vec<FqElement> {
        self.elements()
            .into_iter()
            .filter(|x| gens.iter().all(|g| self.b_num_of(x, g) == 0))
            .collect()
    }

    /// All cyclic order-p isotropic subgroups: one generator each, deduped
    /// (for each subgroup the lexicographically smallest generator).
    pub fn isotropic_subgroup_candidates(&self, p: i64) -> Vec<FqElement> {
        let mut seen: std::collections::HashSet<FqElement> = Default::default();
        let mut out = Vec::new();
        for x in self.elements_of_order_dividing(p) {
            if self.is_zero_el(&x) || self.el_order(&x) != p {
                continue;
            }
            if self.q_num_of(&x) != 0 {
                continue;
            }
            // canonical generator of <x>
            let mut best = x.clone();
            for k in 2..p {
                if k.gcd(&p) == 1 {
                    let y = self.scale_el(k, &x);
                    if y < best {
                        best = y;
                    }
                }
            }
            if seen.insert(best.clone()) {
                out.push(best);
            }
        }
        out.sort();
        out
    }

    /// Printed form `d_1,...,d_l ; q_1,...,q_l ; b_ij (upper triangle)`.
    pub fn to_text(&self) -> String {
        if self.ell() == 0 {
            return "trivial".into();
        }
        let ds: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        let qs: Vec<String> = (0..self.ell())
            .map(|i| format!("{}", self.q_of_gen(i)))
            .collect();
        let mut bs = Vec::new();
        for i in 0..self.ell() {
            for j in i + 1..self.ell() {
                bs.push(format!("{}", self.b_of_gens(i, j)));
            }
        }
        if bs.is_empty() {
            format!("{} ; {}", ds.join(","), qs.join(","))
        } else {
            format!("{} ; {} ; {}", ds.join(","), qs.join(","), bs.join(","))
        }
    }
}

/// The cyclic form `<m/n>` on `Z/n`: `q(g) = m/n mod 2Z`.
pub fn cyclic_form(m: i64, n: i64) -> DiscriminantForm {
    assert!(n > 1, "cyclic form needs order > 1");
    assert_eq!(m.gcd(&n), 1, "<m/n> needs gcd(m,n) = 1");
    assert!(
        (m * n) % 2 == 0,
        "<m/n> needs one of m, n even (q well defined mod 2Z)"
    );
    let q = vec![Rational::new(BigInt::from(m), BigInt::from(n))];
    let b = vec![vec![q[0].clone()]];
    DiscriminantForm::from_values(&[n], &b, &q, None)
}

/// `U_{2^k}`: the hyperbolic form on `(Z/2^k)^2`.
pub fn u_form(two_k: i64) -> DiscriminantForm {
    assert!(two_k >= 2 && two_k.count_ones() == 1);
    let half = Rational::new(BigInt::one(), BigInt::from(two_k));
    let b = vec![
        vec![Rational::zero(), half.clone()],
        vec![half, Rational::zero()],
    ];
    let q = vec![Rational::zero(), Rational::zero()];
    DiscriminantForm::from_values(&[two_k, two_k], &b, &q, None)
}

/// `V_{2^k}`: the other indecomposable rank-2 form on `(Z/2^k)^2`.
pub fn v_form(two_k: i64) -> DiscriminantForm {
    assert!(two_k >= 2 && two_k.count_ones() == 1);
    let off = Rational::new(BigInt::one(), BigInt::from(two_k));
    let diag = Rational::new(BigInt::from(2), BigInt::from(two_k));
    let b = vec![
        vec![diag.clone(), off.clone()],
        vec![off, diag.clone()],
    ];
    let q = vec![diag.clone(), diag];
    DiscriminantForm::from_values(&[two_k, two_k], &b, &q, None)
}

/// Parse a direct sum expression like `V4+<4/3>` or `<3/2>+<63/32>` or `U2`.
pub fn parse_form(text: &str) -> Result<DiscriminantForm, String> {
    let mut acc = DiscriminantForm::trivial();
    for term in text.split('+') {
        let t = term.trim();
        if t.is_empty() {
            continue;
        }
        let f = if let Some(rest) = t.strip_prefix('<') {
            let inner = rest.strip_suffix('>').ok_or("missing `>`")?;
            let (m, n) = inner.split_once('/').ok_or("cyclic form needs m/n")?;
            let m: i64 = m.trim().parse().map_err(|e| format!("bad m: {e}"))?;
            let n: i64 = n.trim().parse().map_err(|e| format!("bad n: {e}"))?;
            cyclic_form(m, n)
        } else if let Some(rest) = t.strip_prefix('U').or_else(|| t.strip_prefix('u')) {
            let k: i64 = rest.trim().parse().map_err(|e| format!("bad U order: {e}"))?;
            u_form(k)
        } else if let Some(rest) = t.strip_prefix('V').or_else(|| t.strip_prefix('v')) {
            let k: i64 = rest.trim().parse().map_err(|e| format!("bad V order: {e}"))?;
            v_form(k)
        } else {
            return Err(format!("unrecognized form term `{t}`"));
        };
        acc = acc.direct_sum(&f);
    }
    Ok(acc.normalized())
}

/// Square class data for `det_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetClass {
    /// Odd prime: is the unit a square mod p?
    OddPrime { square: bool },
    /// p = 2: unit class mod 8 (1, 3, 5, or 7).
    Two { mod8: i64 },
}

/// Per-prime invariants of a finite quadratic form.
#[derive(Clone, Debug)]
pub struct PrimaryData {
    pub p: i64,
    pub ell_p: usize,
    /// `None` exactly when `p = 2` and the 2-part is odd.
    pub det_class: Option<DetClass>,
    /// Whether the 2-part is even (no order-2 element with `q = ±1/2`);
    /// only meaningful at `p = 2`.
    pub even_at_2: Option<bool>,
}

/// The per-prime isomorphism-class invariants of a form.
#[derive(Clone, Debug)]
pub struct FqIsoClass {
    pub order: BigInt,
    pub primary: Vec<PrimaryData>,
}

impl DiscriminantForm {
    /// The p-primary part, re-presented on its own generators.
    pub fn p_part(&self, p: i64) -> DiscriminantForm {
        let mut gens = Vec::new();
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            let mut pk = 1i64;
            let mut dd = d;
            while dd % p == 0 {
                dd /= p;
                pk *= p;
            }
            if pk == 1 {
                continue;
            }
            let mut e = self.zero_el();
            e[i] = modi(d / pk, d);
            gens.push(e);
        }
        self.subquotient_form(&gens, &[])
    }

    /// Whether the 2-part is even: no element of order 2 has `q = ±1/2`.
    pub fn is_even_at_2(&self) -> bool {
        for x in self.elements_of_order_dividing(2) {
            let qn = self.q_num_of(&x);
            // q = 1/2 or 3/2 mod 2Z?
            if 2 * qn == self.den || 2 * qn == 3 * self.den {
                return false;
            }
        }
        true
    }

    /// Determinant of the Gram-analog matrix of the p-part times the p-part
    /// order: a p-adic unit well defined modulo unit squares.
    pub fn det_p(&self, p: i64) -> Option<DetClass> {
        let part = self.p_part(p);
        if p == 2 && !part.is_even_at_2() {
            return None;
        }
        let ell = part.ell();
        // epsilon matrix: diagonal q (mod 2Z reps), off-diagonal b (mod Z reps)
        let mut m = vec![vec![Rational::zero(); ell]; ell];
        for i in 0..ell {
            for j in 0..ell {
                m[i][j] = if i == j {
                    part.q_of_gen(i)
                } else {
                    part.b_of_gens(i, j)
                };
            }
        }
        let det = rational_det(&m);
        let unit = det * Rational::from(part.order());
        // unit must have zero p-adic valuation
        let (num, den) = (unit.numer().clone(), unit.denom().clone());
        assert!(
            !num.is_zero(),
            "degenerate discriminant form at p = {p}"
        );
        let pb = BigInt::from(p);
        assert!(
            !(&num % &pb).is_zero() && !(&den % &pb).is_zero(),
            "det_p is not a p-adic unit (got {unit})"
        );
        Some(square_class(&num, &den, p))
    }

    /// Full per-prime invariant package.
    pub fn primary_invariants(&self) -> FqIsoClass {
        let order = self.order();
        let mut primes: Vec<i64> = Vec::new();
        for &d in &self.invariant_factors {
            let mut dd = d;
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
        let primary = primes
            .iter()
            .map(|&p| {
                let part = self.p_part(p);
                PrimaryData {
                    p,
                    ell_p: part.ell(),
                    det_class: self.det_p(p),
                    even_at_2: if p == 2 {
                        Some(part.is_even_at_2())
                    } else {
                        None
                    },
                }
            })
            .collect();
        FqIsoClass { order, primary }
    }

    pub fn ell_p(&self, p: i64) -> usize {
        self.invariant_factors
            .iter()
            .filter(|&&d| d % p == 0)
            .count()
    }
}

fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero());
        let Some(piv) = piv else {
            return Rational::zero();
        };
        if piv != k {
            a.swap(k, piv);
            det = -det;
        }
        let p = a[k][k].clone();
        det *= p.clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// Square class of the unit `num/den` in `Z_p^*` modulo squares.
fn square_class(num: &BigInt, den: &BigInt, p: i64) -> DetClass {
    let pb = BigInt::from(p);
    if p == 2 {
        let m = BigInt::from(8);
        let n8 = num.mod_floor(&m);
        let d8 = den.mod_floor(&m);
        // inverse of odd d mod 8 is d itself (d^2 = 1 mod 8)
        let u = (n8 * d8).mod_floor(&m);
        DetClass::Two {
            mod8: u.to_i64().unwrap(),
        }
    } else {
        let np = num.mod_floor(&pb);
        let dp = den.mod_floor(&pb);
        let u = (np * mod_inverse(&dp, &pb)).mod_floor(&pb);
        DetClass::OddPrime {
            square: legendre_is_square(&u, p),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = m - BigInt::from(2);
    a.modpow(&e, m)
}

fn legendre_is_square(u: &BigInt, p: i64) -> bool {
    let pb = BigInt::from(p);
    let e = (&pb - BigInt::one()) / BigInt::from(2);
    u.modpow(&e, &pb).is_one()
}

/// Search for a group isomorphism preserving the quadratic form (or its
/// negative, for `anti = true`). Returns generator images on success.
pub fn forms_isomorphic(
    a: &DiscriminantForm,
    b: &DiscriminantForm,
    anti: bool,
) -> Option<Vec<FqElement>> {
    if a.order() != b.order() {
        return None;
    }
    if a.ell() == 0 {
        return Some(vec![]);
    }
    let a = a.normalized();
    let b_elems = b.elements();
    // target values in b's denominator
    let to_b_den = |num: i64, from_den: i64, modulus: i64| -> Option<i64> {
        let scaled = num as i128 * b.den as i128;
        if scaled % from_den as i128 != 0 {
            return None;
        }
        Some(modi(
            (scaled / from_den as i128) as i64,
            modulus * b.den,
        ))
    };
    let sign = if anti { -1i64 } else { 1 };
    // precompute per generator candidate images
    let mut images: Vec<FqElement> = Vec::new();
    fn extend(
        a: &DiscriminantForm,
        b: &DiscriminantForm,
        b_elems: &[FqElement],
        images: &mut Vec<FqElement>,
        sign: i64,
        to_b_den: &dyn Fn(i64, i64, i64) -> Option<i64>,
    ) -> bool {
        let i = images.len();
        if i == a.ell() {
            // verify bijectivity: images generate all of b
            let span = fq_span_size(b, images);
            return span == b.order();
        }
        let want_q = to_b_den(modi(sign * a.q_num_of(&unit(a, i)), 2 * a.den), a.den, 2);
        let Some(want_q) = want_q else { return false };
        for cand in b_elems {
            if b.el_order(cand) != a.invariant_factors[i] {
                continue;
            }
            if b.q_num_of(cand) != want_q {
                continue;
            }
            let ok = (0..i).all(|j| {
                let want_b = to_b_den(modi(sign * a.b_num_of(&unit(a, i), &unit(a, j)), a.den), a.den, 1);
                match want_b {
                    Some(w) => b.b_num_of(cand, &images[j]) == w,
                    None => false,
                }
            });
            if !ok {
                continue;
            }
            images.push(cand.clone());
            if extend(a, b, b_elems, images, sign, to_b_den) {
                return true;
            }
            images.pop();
        }
        false
    }
    fn unit(a: &DiscriminantForm, i: usize) -> FqElement {
        let mut e = a.zero_el();
        e[i] = 1;
        e
    }
    if extend(&a, b, &b_elems, &mut images, sign, &to_b_den) {
        Some(images)
    } else {
        None
    }
}

fn fq_span_size(d: &DiscriminantForm, gens: &[FqElement]) -> BigInt {
    let mut seen: std::collections::HashSet<FqElement> = Default::default();
    seen.insert(d.zero_el());
    let mut frontier: Vec<FqElement> = vec![d.zero_el()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = d.add_el(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    BigInt::from(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rank_one;
    use crate::mat::rat;

    #[test]
    fn trivial_form() {
        let d = DiscriminantForm::trivial();
        assert_eq!(d.order(), BigInt::one());
        assert!(d.primary_invariants().primary.is_empty());
    }

    #[test]
    fn cyclic_form_invariants() {
        // <4/3>: order 3, ell_3 = 1
        let f = cyclic_form(4, 3);
        let inv = f.primary_invariants();
        assert_eq!(inv.order, BigInt::from(3));
        assert_eq!(inv.primary.len(), 1);
        assert_eq!(inv.primary[0].p, 3);
        assert_eq!(inv.primary[0].ell_p, 1);
    }

    #[test]
    fn v2_is_even_and_u2_too() {
        let v = v_form(2);
        assert!(v.is_even_at_2());
        let u = u_form(2);
        assert!(u.is_even_at_2());
        // <-1/2> + <-1/2>: order 2 elements with q = ±1/2 exist
        let f = cyclic_form(-1, 2).direct_sum(&cyclic_form(-1, 2));
        assert!(!f.is_even_at_2());
    }

    #[test]
    fn det_2_of_standard_forms() {
        // u has determinant -1 = 7 mod 8, v has determinant 3 mod 8
        assert_eq!(u_form(2).det_p(2), Some(DetClass::Two { mod8: 7 }));
        assert_eq!(v_form(2).det_p(2), Some(DetClass::Two { mod8: 3 }));
        // odd 2-part: undefined
        assert_eq!(cyclic_form(-1, 2).det_p(2), None);
    }

    #[test]
    fn a1_pair_not_isomorphic_to_v2() {
        let a = cyclic_form(-1, 2).direct_sum(&cyclic_form(-1, 2));
        let v = v_form(2);
        assert!(forms_isomorphic(&a, &v, false).is_none());
        assert!(forms_isomorphic(&a, &a, false).is_some());
        // order mismatch
        assert!(forms_isomorphic(&a, &cyclic_form(-1, 2), false).is_none());
    }

    #[test]
    fn discr_of_a1() {
        let a1 = rank_one(-2);
        let d = a1.discriminant_form().unwrap();
        // <-1/2>, i.e. q = 3/2 canonically
        assert_eq!(d.q_of_gen(0), rat(3, 2));
        let named = cyclic_form(-1, 2);
        assert!(forms_isomorphic(&d, &named, false).is_some());
    }

    #[test]
    fn extension_order_law_on_discriminants() {
        // discr(U(2)) = u_2; extension by an isotropic element has order
        // |discr| / p^2 = 1
        let l = crate::lattice::hyperbolic_plane_twice();
        let d = l.discriminant_form().unwrap();
        assert!(forms_isomorphic(&d, &u_form(2), false).is_some());
        let cands = d.isotropic_subgroup_candidates(2);
        assert!(!cands.is_empty());
        for k in &cands {
            let kperp = d.orthogonal_subgroup(std::slice::from_ref(k));
            let q = d.subquotient_form(&kperp, std::slice::from_ref(k));
            assert_eq!(q.order(), BigInt::one());
        }
    }

    #[test]
    fn p_part_splits() {
        let f = cyclic_form(4, 3).direct_sum(&v_form(4));
        assert_eq!(f.p_part(3).order(), BigInt::from(3));
        assert_eq!(f.p_part(2).order(), BigInt::from(16));
        assert_eq!(f.ell_p(2), 2);
    }

    #[test]
    fn parser_roundtrip() {
        let f = parse_form("V4+<4/3>").unwrap();
        assert_eq!(f.order(), BigInt::from(48));
        let g = parse_form("<3/2>+<63/32>").unwrap();
        assert_eq!(g.order(), BigInt::from(64));
        assert!(parse_form("W3").is_err());
    }

    #[test]
    fn anti_isomorphism() {
        let f = cyclic_form(4, 3);
        let g = cyclic_form(-4, 3);
        assert!(forms_isomorphic(&f, &g, true).is_some());
        assert!(forms_isomorphic(&f, &g, false).is_none());
    }
}
