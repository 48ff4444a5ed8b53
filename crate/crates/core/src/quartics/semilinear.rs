//! Semilinear projective transformations (a matrix together with an
//! optional coefficient conjugation), group closure by multiplication, and
//! the induced action on line sets.

use crate::nf::{NFElement, NumberField};
use crate::quartics::line::ProjLine;
use crate::quartics::surface::QuarticSurface;

/// A projective transformation `z -> M z` or `z -> M conj(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    pub matrix: Vec<Vec<NFElement>>,
    pub conjugate: bool,
}

impl SemilinearMap {
    pub fn linear(matrix: Vec<Vec<NFElement>>) -> Self {
        SemilinearMap {
            matrix,
            conjugate: false,
        }
    }

    pub fn antilinear(matrix: Vec<Vec<NFElement>>) -> Self {
        SemilinearMap {
            matrix,
            conjugate: true,
        }
    }

    pub fn field(&self) -> NumberField {
        self.matrix[0][0].field
    }

    pub fn identity(field: NumberField, n: usize) -> Self {
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        SemilinearMap::linear(m)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &SemilinearMap) -> SemilinearMap {
        let n = self.matrix.len();
        // self(other(z)) = M1 * c1(M2 * c2(z)) = (M1 * c1(M2)) * (c1 c2)(z)
        let m2 = if self.conjugate {
            conj_matrix(&other.matrix)
        } else {
            other.matrix.clone()
        };
        let mut m = vec![vec![self.field().zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field().zero();
                for (k, x) in self.matrix[i].iter().enumerate() {
                    acc = acc.add(&x.mul(&m2[k][j]));
                }
                m[i][j] = acc;
            }
        }
        SemilinearMap {
            matrix: m,
            conjugate: self.conjugate != other.conjugate,
        }
    }

    /// Canonical projective representative: matrix scaled so the first
    /// nonzero entry (row major) is 1.
    pub fn canonical(&self) -> SemilinearMap {
        let first = self
            .matrix
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("zero matrix is not projective");
        let inv = first.inverse();
        SemilinearMap {
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| x.mul(&inv)).collect())
                .collect(),
            conjugate: self.conjugate,
        }
    }

    pub fn is_projective_identity(&self) -> bool {
        if self.conjugate {
            return false;
        }
        let c = self.canonical();
        let n = c.matrix.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    c.matrix[i][j].is_one()
                } else {
                    c.matrix[i][j].is_zero()
                }
            })
        })
    }

    /// Projectively involutive: the square is a scalar matrix.
    pub fn is_involution(&self) -> bool {
        self.compose(self).is_projective_identity()
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let l = if self.conjugate { l.conjugate() } else { l.clone() };
        l.transform(&self.matrix)
    }

    /// Whether the transformation maps the surface to a scalar multiple of
    /// itself.
    pub fn preserves_surface(&self, x: &QuarticSurface) -> bool {
        let sub = x.substitute_linear(&self.matrix);
        let g = if self.conjugate {
            sub.conjugate_coeffs()
        } else {
            sub
        };
        g.proportional_to(x)
    }
}

fn conj_matrix(m: &[Vec<NFElement>]) -> Vec<Vec<NFElement>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.conjugate()).collect())
        .collect()
}

/// Close a list of linear generators under composition (projectively).
/// Returns the canonical group elements; `limit` guards runaway closure.
pub fn close_group(gens: &[SemilinearMap], limit: usize) -> Result<Vec<SemilinearMap>, String> {
    let field = gens
        .first()
        .map(|g| g.field())
        .ok_or("need at least one generator")?;
    let n = gens[0].matrix.len();
    let mut seen: std::collections::HashSet<SemilinearMap> = Default::default();
    let id = SemilinearMap::identity(field, n).canonical();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut all = Vec::new();
    while let Some(g) = frontier.pop() {
        all.push(g.clone());
        for gen in gens {
            let h = gen.compose(&g).canonical();
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
            if seen.len() > limit {
                return Err(format!("group closure exceeded {limit} elements"));
            }
        }
    }
    all.sort_by_key(|g| format!("{g:?}"));
    Ok(all)
}

/// Result of the symmetry audit of a surface with a distinguished line set.
#[derive(Clone, Debug)]
pub struct AutAudit {
    pub order: usize,
    pub faithful: bool,
    /// permutation of line indices per group element, in group order
    pub actions: Vec<Vec<usize>>,
}

/// Close the generators to a group, verify each element maps the surface to
/// a scalar multiple of itself, and report the permutation action on the
/// line set with its faithfulness.
pub fn automorphism_audit(
    x: &QuarticSurface,
    lines: &[ProjLine],
    gens: &[SemilinearMap],
    limit: usize,
) -> Result<AutAudit, String> {
    for (i, g) in gens.iter().enumerate() {
        if g.conjugate {
            return Err(format!("generator {i} is antilinear; audit takes automorphisms"));
        }
        if !g.preserves_surface(x) {
            return Err(format!("generator {i} does not preserve the surface"));
        }
    }
    let group = close_group(gens, limit)?;
    let mut actions = Vec::with_capacity(group.len());
    let mut faithful = true;
    for g in &group {
        if !g.preserves_surface(x) {
            return Err("closure produced a non-preserving element".into());
        }
        let mut perm = Vec::with_capacity(lines.len());
        for l in lines {
            let img = g.apply_line(l);
            let idx = lines
                .iter()
                .position(|m| *m == img)
                .ok_or("group element does not permute the line set")?;
            perm.push(idx);
        }
        let is_id_perm = perm.iter().enumerate().all(|(i, &j)| i == j);
        if is_id_perm && !g.is_projective_identity() {
            faithful = false;
        }
        actions.push(perm);
    }
    Ok(AutAudit {
        order: group.len(),
        faithful,
        actions,
    })
}

/// Count the lines fixed setwise by an involutive semilinear map.
pub fn real_line_count(lines: &[ProjLine], sigma: &SemilinearMap) -> Result<usize, String> {
    if !sigma.compose(sigma).is_projective_identity() {
        return Err("real structure must be involutive".into());
    }
    Ok(lines.iter().filter(|l| sigma.apply_line(l) == **l).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_coordinate_swaps() {
        let f = NumberField::Rationals;
        let mut m = SemilinearMap::identity(f, 4).matrix;
        m.swap(0, 1);
        let s01 = SemilinearMap::linear(m);
        let mut m = SemilinearMap::identity(f, 4).matrix;
        m.swap(1, 2);
        let s12 = SemilinearMap::linear(m);
        let mut m = SemilinearMap::identity(f, 4).matrix;
        m.swap(2, 3);
        let s23 = SemilinearMap::linear(m);
        let g = close_group(&[s01, s12, s23], 100).unwrap();
        assert_eq!(g.len(), 24);
    }

    #[test]
    fn involution_detection() {
        let f = NumberField::Sqrt(2);
        let id = SemilinearMap::identity(f, 4);
        assert!(id.is_involution());
        let conj = SemilinearMap::antilinear(id.matrix.clone());
        assert!(conj.compose(&conj).is_projective_identity());
    }
}
