//! Boundedness, compactness and the three closed forms for ln ||C_phi||.
//!
//!     cargo run --example classify

use num_complex::Complex64;

use fockna::{analyze, AffineSymbol, ComplexMatrix, ComplexVector, Tolerances};

fn main() -> fockna::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let symbols = [
        ("z/2 + 1", AffineSymbol::scalar(c(0.5), c(1.0))?),
        ("z + 1", AffineSymbol::scalar(c(1.0), c(1.0))?),
        ("rotation", AffineSymbol::linear_only(ComplexMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]])?)),
        (
            "diag(1, 1/2) z + (0, 1)",
            AffineSymbol::new(ComplexMatrix::from_diagonal(&[1.0, 0.5]), ComplexVector::from_real(&[0.0, 1.0])?)?,
        ),
        (
            "diag(1, 1/2) z + (1, 0)",
            AffineSymbol::new(ComplexMatrix::from_diagonal(&[1.0, 0.5]), ComplexVector::from_real(&[1.0, 0.0])?)?,
        ),
    ];

    let tol = Tolerances::default();
    for (name, sym) in &symbols {
        let r = analyze(sym, &tol)?;
        print!("{name:<26} |A| = {:.3}  ", r.norm_a);
        match r.formulas {
            Some(f) => println!(
                "bounded, {}compact, ln|C| = {:.12} / {:.12} / {:.12}",
                if r.compact { "" } else { "not " },
                f.via_v,
                f.via_u,
                f.via_w0
            ),
            None => println!(
                "unbounded (primal {}, dual {}, carswell {})",
                r.verdict.primal, r.verdict.dual, r.verdict.carswell
            ),
        }
    }
    Ok(())
}
