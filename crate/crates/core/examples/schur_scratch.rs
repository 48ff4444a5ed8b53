use quartic_lines::quartics::{fano_configuration, schur};

fn main() {
    let t0 = std::time::Instant::now();
    let lines = schur::schur_lines().unwrap();
    println!("lines: {} ({:?})", lines.len(), t0.elapsed());
    let x = schur::schur_surface();
    let t1 = std::time::Instant::now();
    let c = fano_configuration(&lines, &x, true).unwrap();
    println!("fano config built in {:?}", t1.elapsed());
    println!("rank: {}", c.polarized.rank());
    println!("det: {}", c.polarized.lattice.det());
    println!("lines in lattice: {}", c.line_count());
    let d = c.polarized.lattice.discriminant_form().unwrap();
    println!("discr: {}", d.to_text());
    let t2 = std::time::Instant::now();
    println!("pencil structure: {}", c.pencil_structure_string().unwrap());
    println!("ps time {:?}", t2.elapsed());
    let named = quartic_lines::discform::parse_form("V4+<4/3>").unwrap();
    println!("discr ~ V4+<4/3>: {}", quartic_lines::discform::forms_isomorphic(&d, &named, false).is_some());
    let tc = quartic_lines::nikulin::transcendental_candidates(&c.polarized).unwrap();
    println!("transcendental candidates: {:?}", tc);
    println!("total {:?}", t0.elapsed());
}
