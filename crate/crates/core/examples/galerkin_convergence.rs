//! Norms of the compressions of C_phi to polynomials of degree <= d, next to
//! the closed form. Writes the table as CSV when a path is given.
//!
//!     cargo run --example galerkin_convergence [out.csv]

use num_complex::Complex64;

use fockna::{convergence_report, gallery, AffineSymbol};

fn main() -> fockna::Result<()> {
    let scalar = AffineSymbol::scalar(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0))?;
    let report = convergence_report(&scalar, 25)?;
    println!("z/2 + 1");
    for row in report.rows.iter().step_by(5) {
        println!("  d = {:>2}  {:.15}  gap {:.2e}", row.d, row.truncated_norm, row.relative_gap.unwrap_or(f64::NAN));
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, report.to_csv()).expect("writable path");
        println!("  wrote {path}");
    }

    // two variables: slower, since the polynomial degree drives the norm
    let shift = gallery::nilpotent_shift(2)?;
    let report = convergence_report(&shift, 16)?;
    println!("nilpotent shift on C^2");
    for row in report.rows.iter().step_by(4) {
        println!("  d = {:>2}  {:.12}  gap {:.2e}", row.d, row.truncated_norm, row.relative_gap.unwrap_or(f64::NAN));
    }

    let unbounded = AffineSymbol::scalar(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))?;
    let report = convergence_report(&unbounded, 12)?;
    println!("z + 1 (unbounded)");
    for row in report.rows.iter().step_by(3) {
        println!("  d = {:>2}  {:.6}", row.d, row.truncated_norm);
    }
    Ok(())
}
