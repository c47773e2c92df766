//! The truncated right shift with b = e_1 attains its norm e^{1/2} at sums of kernels.
//!
//!     cargo run --example nilpotent_shift

use fockna::{gallery, ComplexVector, CompositionOperator, KernelCombination, Side, Tolerances};

fn main() -> fockna::Result<()> {
    let sym = gallery::nilpotent_shift(3)?;
    let op = CompositionOperator::new(sym, &Tolerances::default())?;
    println!("|C| = {:.12} (e^(1/2) = {:.12})", op.log_norm().exp(), 0.5f64.exp());

    let e = |i| ComplexVector::unit(3, i);
    for (label, f) in [
        ("K_e1", KernelCombination::kernel(e(0))?),
        ("K_e1 + K_e2", KernelCombination::sum_of_kernels(&[e(0), e(1)])?),
        ("K_e2 + K_e3", KernelCombination::sum_of_kernels(&[e(1), e(2)])?),
        ("K_0", KernelCombination::kernel(ComplexVector::zeros(3))?),
    ] {
        let r = op.extremality(&f, Side::Adjoint, 1e-10)?;
        println!(
            "{label:<12} residual {:.2e}  log-ratio {:+.3e}  {}",
            r.eigen_residual_rel,
            r.log_ratio,
            if r.is_extremal { "extremal" } else { "-" }
        );
    }

    let check = op.sum_kernel_check(&e(0), &e(1), 1e-12)?;
    println!(
        "|phi(e1)| = {:.6}, |phi(e2)| = {:.6}, consistent: {}",
        check.norm_phi_x1, check.norm_phi_x2, check.implication_holds
    );
    Ok(())
}
