//! A weighted shift whose symbol has |phi(e2)| = |phi(e3)|, yet C* does not
//! attain its norm at K_e2 + K_e3. The kernel at w0 does.
//!
//!     cargo run --example weighted_shift [mu]

use fockna::{analyze, gallery, ComplexVector, CompositionOperator, KernelCombination, Side, Tolerances};

fn main() -> fockna::Result<()> {
    let mu: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let sym = gallery::weighted_shift(mu, 4)?;
    let tol = Tolerances::default();
    let report = analyze(&sym, &tol)?;
    let log_norm = report.require_log_norm()?;
    println!("mu = {mu}: |C|^2 = {:.10}, e^(1 + 1/mu^2) = {:.10}", (2.0 * log_norm).exp(), (1.0 + 1.0 / (mu * mu)).exp());

    let (e2, e3) = (ComplexVector::unit(4, 1), ComplexVector::unit(4, 2));
    println!("|phi(e2)| = {:.12}, |phi(e3)| = {:.12}", sym.apply(&e2)?.norm(), sym.apply(&e3)?.norm());

    let op = CompositionOperator::new(sym, &tol)?;
    let pair = op.extremality(&KernelCombination::sum_of_kernels(&[e2, e3])?, Side::Adjoint, 1e-9)?;
    println!("K_e2 + K_e3: residual {:.4}, |C* f| / (|C| |f|) = {:.6}", pair.eigen_residual_rel, pair.log_ratio.exp());

    let w0 = report.w0.expect("bounded");
    let witness = op.extremality(&KernelCombination::kernel(w0.clone())?, Side::Adjoint, 1e-9)?;
    println!("K_w0 with w0 = {:?}: residual {:.2e}", w0.entries().iter().map(|z| z.re).collect::<Vec<_>>(), witness.eigen_residual_rel);
    Ok(())
}
