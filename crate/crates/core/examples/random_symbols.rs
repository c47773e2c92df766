//! Seeded random symbols: bounded ones (including |A| = 1) and the two
//! ways of being unbounded, with the three boundedness tests side by side.
//!
//!     FOCKNA_SEED=3 cargo run --example random_symbols

use fockna::sample::{BoundedKind, SymbolSampler, UnboundedKind};
use fockna::{analyze, Tolerances};

fn main() -> fockna::Result<()> {
    let mut s = SymbolSampler::from_env();
    let tol = Tolerances::default();
    let mut samples = Vec::new();
    for kind in [BoundedKind::Contraction, BoundedKind::Boundary, BoundedKind::PartialIsometry, BoundedKind::Linear] {
        samples.push((format!("{kind:?}"), s.bounded(3, 4, kind)));
    }
    for kind in [UnboundedKind::Expanding, UnboundedKind::Translating] {
        samples.push((format!("{kind:?}"), s.unbounded(3, 4, kind)));
    }
    for (name, sym) in samples {
        let r = analyze(&sym, &tol)?;
        let spread = r.formulas.map_or(String::from("-"), |f| format!("{:.1e}", f.max_relative_spread()));
        println!(
            "{name:<16} |A| = {:.6}  primal {:<5} dual {:<5} carswell {:<5} ln|C| = {:<14} spread {spread}",
            r.norm_a,
            r.verdict.primal,
            r.verdict.dual,
            r.verdict.carswell,
            r.log_norm.map_or(String::from("-"), |l| format!("{l:.9}")),
        );
    }
    Ok(())
}
