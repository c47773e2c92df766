//! A genuine isometry C^2 -> C^3 with A* b = 0: every normalized kernel is a
//! norm-attaining vector for C*.
//!
//!     cargo run --example isometry_embedding

use num_complex::Complex64;

use fockna::kernel::adjoint_norm_at_kernel;
use fockna::{analyze, gallery, ComplexVector, Tolerances};

fn main() -> fockna::Result<()> {
    let sym = gallery::isometry_embedding(2)?;
    let l = analyze(&sym, &Tolerances::default())?.require_log_norm()?;
    println!("ln |C| = {l}");
    for w in [[0.0, 0.0], [1.0, -2.0], [3.0, 0.5], [-0.25, 4.0]] {
        let w = ComplexVector::from_vec(vec![Complex64::new(w[0], 0.0), Complex64::new(0.0, w[1])])?;
        println!("w = ({:+.2}, {:+.2}i): ln |C* k_w| = {:.15}", w.get(0).re, w.get(1).im, adjoint_norm_at_kernel(&sym, &w)?);
    }
    Ok(())
}
