//! The two kernel witnesses of a random bounded symbol and the positivity
//! identities f(A* b) = e^{|v|^2} f(0), f(b) = |C|^2 f(0) they satisfy.
//!
//!     FOCKNA_SEED=7 cargo run --example positivity

use fockna::sample::SymbolSampler;
use fockna::{CompositionOperator, KernelCombination, Side, Tolerances};

fn main() -> fockna::Result<()> {
    let mut sampler = SymbolSampler::from_env();
    let sym = sampler.any_bounded(3, 4);
    let op = CompositionOperator::new(sym.clone(), &Tolerances::default())?;
    let report = op.report().clone();
    let (v, w0, wc) = (
        report.v.expect("bounded"),
        report.w0.expect("bounded"),
        report.composition_kernel_witness.expect("bounded"),
    );
    println!("ln |C| = {:.12}, |v|^2 = {:.12}, |b|^2 = {:.12}", op.log_norm(), v.norm_sqr(), sym.translation().norm_sqr());
    println!("<b, w_c> = {:.12}", wc.inner(sym.translation()));

    for (name, f, side) in [
        ("K_w0 (on C^3, for C*)", KernelCombination::kernel(w0)?, Side::Adjoint),
        ("K_wc (on C^4, for C) ", KernelCombination::kernel(wc)?, Side::Composition),
    ] {
        let ext = op.extremality(&f, side, 1e-9)?;
        let p = op.positivity(&f, 1e-9)?;
        println!("{name}: residual {:.1e}", ext.eigen_residual_rel);
        if let Some(r) = p.ratio_astar_b {
            println!("    f(A*b)/f(0) = {r:.12}, e^|v|^2 = {:.12}", p.expected_ratio_astar_b);
        }
        if let Some(r) = p.ratio_b {
            println!("    f(b)/f(0)   = {r:.12}, |C|^2   = {:.12}", p.expected_ratio_b);
        }
    }
    Ok(())
}
