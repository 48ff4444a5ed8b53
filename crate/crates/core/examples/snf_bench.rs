use quartic_lines::quartics::{fano_configuration, y56};

fn main() {
    let y = y56::y56_lines().unwrap();
    let x = y56::y56_surface();
    let c = fano_configuration(&y.all, &x, true).unwrap();
    let g = c.polarized.lattice.gram.clone();
    eprintln!("gram ready {}x{}", g.rows, g.cols);
    let t = std::time::Instant::now();
    let d = quartic_lines::mat::exact_determinant(&g).unwrap();
    eprintln!("det {} ({:?})", d, t.elapsed());
    let t = std::time::Instant::now();
    let s = quartic_lines::mat::smith_normal_form(&g);
    eprintln!("snf {:?} ({:?})", s.diagonal().iter().map(|x| x.to_string()).collect::<Vec<_>>(), t.elapsed());
    // how big do U entries get?
    let mut maxbits = 0;
    for i in 0..s.u.rows { for j in 0..s.u.cols { maxbits = maxbits.max(s.u[(i,j)].bits()); } }
    for i in 0..s.v.rows { for j in 0..s.v.cols { maxbits = maxbits.max(s.v[(i,j)].bits()); } }
    eprintln!("max transform entry bits: {maxbits}");
}
