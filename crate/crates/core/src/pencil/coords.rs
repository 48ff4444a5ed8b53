//! Section coordinates: a section of a pencil of type `(p, q)` is recorded
//! by which line of each 3-fiber it meets (a `Z3` value) and by its parity
//! of intersection with each 1-fiber line (a `Z2` value).

/// Coordinates of a section in `(Z3)^p x (Z2)^q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateVector {
    pub eps: Vec<u8>,
    pub rho: Vec<u8>,
}

impl CoordinateVector {
    pub fn new(eps: Vec<u8>, rho: Vec<u8>) -> Self {
        assert!(eps.iter().all(|&e| e < 3));
        assert!(rho.iter().all(|&r| r < 2));
        CoordinateVector { eps, rho }
    }

    pub fn zero(p: usize, q: usize) -> Self {
        CoordinateVector {
            eps: vec![0; p],
            rho: vec![0; q],
        }
    }

    /// The distinguished vector `[0,...,0; 1,...,1]`.
    pub fn ones(p: usize, q: usize) -> Self {
        CoordinateVector {
            eps: vec![0; p],
            rho: vec![1; q],
        }
    }

    pub fn p(&self) -> usize {
        self.eps.len()
    }

    pub fn q(&self) -> usize {
        self.rho.len()
    }

    /// Componentwise group addition.
    pub fn add(&self, other: &CoordinateVector) -> CoordinateVector {
        CoordinateVector {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| (a + b) % 3)
                .collect(),
            rho: self
                .rho
                .iter()
                .zip(&other.rho)
                .map(|(a, b)| (a + b) % 2)
                .collect(),
        }
    }

    /// Componentwise group subtraction.
    pub fn sub(&self, other: &CoordinateVector) -> CoordinateVector {
        CoordinateVector {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| (a + 3 - b) % 3)
                .collect(),
            rho: self
                .rho
                .iter()
                .zip(&other.rho)
                .map(|(a, b)| (a + 2 - b) % 2)
                .collect(),
        }
    }

    /// Number of nonzero 3-coordinates.
    pub fn num3(&self) -> usize {
        self.eps.iter().filter(|&&e| e != 0).count()
    }

    /// Number of nonzero 1-coordinates.
    pub fn num1(&self) -> usize {
        self.rho.iter().filter(|&&r| r != 0).count()
    }

    /// Positions where the 3-coordinates differ.
    pub fn dif3(&self, other: &CoordinateVector) -> usize {
        self.eps
            .iter()
            .zip(&other.eps)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Positions where the 1-coordinates differ.
    pub fn dif1(&self, other: &CoordinateVector) -> usize {
        self.rho
            .iter()
            .zip(&other.rho)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// The common-fiber statistics of a list of coordinate vectors, following
/// the convention that 3-fiber positions count whenever *all* values agree,
/// while 1-fiber positions count only when all values equal 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateStats {
    pub com3_set: Vec<usize>,
    pub com1_set: Vec<usize>,
    pub com3: usize,
    pub com1: usize,
    pub com: usize,
    pub dif3: usize,
    pub dif1: usize,
    pub num3: Vec<usize>,
    pub num1: Vec<usize>,
}

/// Statistics of a nonempty list of sections (by coordinates).
pub fn coordinate_stats(vs: &[&CoordinateVector]) -> CoordinateStats {
    assert!(!vs.is_empty());
    let p = vs[0].p();
    let q = vs[0].q();
    for v in vs {
        assert_eq!((v.p(), v.q()), (p, q), "mismatched (p, q)");
    }
    let com3_set: Vec<usize> = (0..p)
        .filter(|&i| vs.iter().all(|v| v.eps[i] == vs[0].eps[i]))
        .collect();
    let com1_set: Vec<usize> = (0..q)
        .filter(|&k| vs.iter().all(|v| v.rho[k] == 1))
        .collect();
    let (dif3, dif1) = if vs.len() == 2 {
        (vs[0].dif3(vs[1]), vs[0].dif1(vs[1]))
    } else {
        (0, 0)
    };
    CoordinateStats {
        com3: com3_set.len(),
        com1: com1_set.len(),
        com: com3_set.len() + com1_set.len(),
        com3_set,
        com1_set,
        dif3,
        dif1,
        num3: vs.iter().map(|v| v.num3()).collect(),
        num1: vs.iter().map(|v| v.num1()).collect(),
    }
}

/// `com(s1, s2, ...)`: the number of fibers shared by all the given
/// sections (all 3-coordinates equal; all 1-coordinates equal to 1).
pub fn com(vs: &[&CoordinateVector]) -> usize {
    coordinate_stats(vs).com
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_com_is_p_plus_num1() {
        let s = CoordinateVector::new(vec![1, 0, 2, 2, 0], vec![1, 0, 1]);
        let st = coordinate_stats(&[&s, &s]);
        assert_eq!(st.com, 5 + s.num1());
    }

    #[test]
    fn disjoint_coordinates() {
        // [0,0,0,0,0;1] vs [1,1,1,1,1;0] in C_{5,1}
        let s1 = CoordinateVector::new(vec![0; 5], vec![1]);
        let s2 = CoordinateVector::new(vec![1; 5], vec![0]);
        let st = coordinate_stats(&[&s1, &s2]);
        assert_eq!(st.com3, 0);
        assert_eq!(st.com1, 0);
        assert_eq!(st.dif1, 1);
        assert_eq!(st.dif3, 5);
    }

    #[test]
    fn ones_minus_twice_is_plus() {
        // I - s - s = I + s on the 3-part (1-part is its own inverse)
        let p = 4;
        let q = 3;
        let i = CoordinateVector::ones(p, q);
        let s = CoordinateVector::new(vec![1, 2, 0, 1], vec![1, 0, 1]);
        let lhs = i.sub(&s).sub(&s);
        let rhs = i.add(&s);
        assert_eq!(lhs.eps, rhs.eps);
        // and on the 2-part, subtracting twice is the identity
        assert_eq!(lhs.rho, i.rho);
    }
}
