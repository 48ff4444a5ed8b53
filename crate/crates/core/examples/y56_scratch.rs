use quartic_lines::quartics::{fano_configuration, y56};

fn main() {
    eprintln!("start");
    let y = y56::y56_lines().unwrap();
    eprintln!("lines done: {}", y.all.len());
    let x = y56::y56_surface();
    eprintln!("fano starting");
    let c = fano_configuration(&y.all, &x, true).unwrap();
    eprintln!("fano done rank {} det {}", c.polarized.rank(), c.polarized.lattice.det());
    let t = std::time::Instant::now();
    let d = c.polarized.lattice.discriminant_form().unwrap();
    eprintln!("discr: {} ({:?})", d.to_text(), t.elapsed());
    let t = std::time::Instant::now();
    let tc = quartic_lines::nikulin::transcendental_candidates(&c.polarized).unwrap();
    eprintln!("candidates: {:?} ({:?})", tc, t.elapsed());
    let t = std::time::Instant::now();
    let tr = quartic_lines::nikulin::totally_reflexive_test(&c.polarized).unwrap();
    eprintln!("totally reflexive: {tr} ({:?})", t.elapsed());
}
