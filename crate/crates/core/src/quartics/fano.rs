//! Extraction of the abstract line configuration of a quartic from an
//! explicit line set: the lattice spanned by the hyperplane class and the
//! classes of the lines, with products given by incidence.

use crate::config::Configuration;
use crate::lattice::{Lattice, PolarizedLattice};
use crate::mat::{rational_inverse, IntMatrix};
use crate::quartics::line::{lines_meet, ProjLine};
use crate::quartics::surface::{line_on_surface, QuarticSurface};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Build the configuration lattice of a line set on a quartic: the span of
/// `h` and the line classes with `h^2 = 4`, `h . line = 1`, `line^2 = -2`
/// and `line . line' = 1` or `0` by incidence, reduced modulo its kernel
/// (linear relations among the classes, e.g. the four lines of a plane
/// summing to `h`). The result is validated as a configuration.
pub fn fano_configuration(
    lines: &[ProjLine],
    surface: &QuarticSurface,
    check_pairwise: bool,
) -> Result<Configuration, String> {
    let n = lines.len();
    if n == 0 {
        return Err("need at least one line".into());
    }
    for (i, l) in lines.iter().enumerate() {
        if !line_on_surface(l, surface)? {
            return Err(format!("line {i} is not on the surface"));
        }
    }
    // abstract Gram on h, a_1, ..., a_n
    let m = n + 1;
    let mut g = IntMatrix::zero(m, m);
    g[(0, 0)] = BigInt::from(4);
    for i in 0..n {
        g[(0, i + 1)] = BigInt::one();
        g[(i + 1, 0)] = BigInt::one();
        g[(i + 1, i + 1)] = BigInt::from(-2);
    }
    if check_pairwise {
        for i in 0..n {
            for j in i + 1..n {
                let meet = lines_meet(&lines[i], &lines[j])
                    .map_err(|_| format!("duplicate lines {i} and {j}"))?;
                if meet {
                    g[(i + 1, j + 1)] = BigInt::one();
                    g[(j + 1, i + 1)] = BigInt::one();
                }
            }
        }
    }
    let degenerate = Lattice::new(g);
    let (quotient, section) = crate::lattice::quotient_by_kernel(&degenerate);
    // express h (= e_0) in the quotient basis: with B = [kernel; section]
    // unimodular, h = w B and the image is the section part of w
    let kernel = crate::lattice::lattice_kernel(&degenerate);
    let mut b = IntMatrix::zero(m, m);
    for i in 0..kernel.rows {
        for j in 0..m {
            b[(i, j)] = kernel[(i, j)].clone();
        }
    }
    for i in 0..section.rows {
        for j in 0..m {
            b[(kernel.rows + i, j)] = section[(i, j)].clone();
        }
    }
    let binv = rational_inverse(&b).ok_or("kernel/section basis is not unimodular")?;
    let project = |v: &[BigInt]| -> Vec<BigInt> {
        // w = v * B^{-1}; image = last section.rows coordinates
        let mut w = vec![crate::mat::Rational::zero(); m];
        for (i, wi) in w.iter_mut().enumerate() {
            for (k, x) in v.iter().enumerate() {
                *wi += crate::mat::Rational::from(x.clone()) * &binv[k][i];
            }
        }
        w[kernel.rows..]
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    };
    let mut e0 = vec![BigInt::zero(); m];
    e0[0] = BigInt::one();
    let h_img = project(&e0);
    let polarized = PolarizedLattice::new(quotient, h_img);
    let report = crate::config::validate_configuration(&polarized)?;
    if !report.is_valid() {
        return Err(format!(
            "line span is not a valid configuration: {}",
            report.failures().join("; ")
        ));
    }
    let c = Configuration::new_unchecked(polarized)?;
    if c.line_count() != n {
        return Err(format!(
            "configuration has {} lattice lines but {} input lines",
            c.line_count(),
            n
        ));
    }
    // the images of the input lines must be exactly the lattice lines
    for i in 0..n {
        let mut ei = vec![BigInt::zero(); m];
        ei[i + 1] = BigInt::one();
        let img = project(&ei);
        if !c.lines.contains(&img) {
            return Err(format!("class of input line {i} is not a lattice line"));
        }
    }
    Ok(c)
}
