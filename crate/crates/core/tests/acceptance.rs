//! One line per acceptance criterion; exits non-zero if any fails.
//! `FOCKNA_SEED` changes the random populations (default 42).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;

use fockna::kernel::{adjoint_norm_at_kernel, evaluate};
use fockna::sample::{env_seed, SymbolSampler};
use fockna::{
    analyze, check_bounded, compose_symbols, extremality_report, galerkin_matrix, gallery, truncation, AffineSymbol,
    ComplexMatrix, ComplexVector, CompositionOperator, KernelCombination, Side, Tolerances,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The random bounded population shared by criteria 1, 2, 6 and 9.
fn bounded_population(seed: u64) -> Vec<AffineSymbol> {
    let mut s = SymbolSampler::new(seed);
    let mut out = vec![
        gallery::nilpotent_shift(3).unwrap(),
        gallery::weighted_shift(0.5, 4).unwrap(),
        gallery::isometry_embedding(2).unwrap(),
        gallery::scalar(c(0.5), c(1.0)).unwrap(),
        gallery::identity(3).unwrap(),
    ];
    while out.len() < 500 {
        let (n, m) = s.dims(8);
        out.push(s.any_bounded(n, m));
    }
    out
}

fn unbounded_population(seed: u64) -> Vec<AffineSymbol> {
    let mut s = SymbolSampler::new(seed);
    let mut out = vec![
        gallery::scalar(c(1.0), c(1.0)).unwrap(),
        gallery::scalar(Complex64::from_polar(1.0, 2.0), c(-0.3)).unwrap(),
        gallery::scalar(c(1.5), c(0.0)).unwrap(),
    ];
    while out.len() < 100 {
        let (n, m) = s.dims(8);
        out.push(s.any_unbounded(n, m));
    }
    out
}

fn criterion_1(pop: &[AffineSymbol]) -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    let mut boundary = 0;
    for sym in pop {
        let r = analyze(sym, &tol).unwrap();
        if !r.bounded {
            return outcome(false, format!("sampled symbol classified unbounded (||A|| = {})", r.norm_a));
        }
        if r.norm_a >= 1.0 - 1e-12 {
            boundary += 1;
        }
        worst = worst.max(r.formulas.unwrap().max_relative_spread());
    }
    outcome(
        worst <= 1e-8,
        format!("{} symbols ({boundary} with ||A|| = 1), max relative spread {worst:.2e}", pop.len()),
    )
}

fn criterion_2(bounded: &[AffineSymbol], unbounded: &[AffineSymbol]) -> Outcome {
    let tol = Tolerances::default();
    let mut disagree = 0;
    let mut misclassified = 0;
    for (sym, expect) in bounded.iter().map(|s| (s, true)).chain(unbounded.iter().map(|s| (s, false))) {
        match catch_unwind(AssertUnwindSafe(|| check_bounded(sym, &tol))) {
            Ok(Ok(v)) => {
                if !v.criteria_agree() {
                    disagree += 1;
                }
                if v.bounded() != expect {
                    misclassified += 1;
                }
            }
            _ => disagree += 1,
        }
    }
    outcome(
        disagree == 0 && misclassified == 0,
        format!(
            "{} bounded + {} unbounded: {disagree} disagreements, {misclassified} misclassified",
            bounded.len(),
            unbounded.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let sym = gallery::scalar(c(0.5), c(1.0)).unwrap();
    let report = truncation::convergence_report(&sym, 25).unwrap();
    let exact = (2.0f64 / 3.0).exp();
    let last = report.rows.last().unwrap();
    let gap = (exact - last.truncated_norm).abs() / exact;
    let exact_ok = (last.exact_norm.unwrap() - exact).abs() <= 1e-12 * exact;
    let monotone = report.is_monotone(1e-12);
    outcome(
        exact_ok && gap <= 1e-3 && monotone,
        format!("exact {exact:.10}, d=25 truncated {:.10}, gap {gap:.2e}, monotone {monotone}", last.truncated_norm),
    )
}

fn criterion_4() -> Outcome {
    let sym = gallery::nilpotent_shift(3).unwrap();
    let norm = analyze(&sym, &Tolerances::default()).unwrap().norm().unwrap();
    let f = KernelCombination::sum_of_kernels(&[ComplexVector::unit(3, 0), ComplexVector::unit(3, 1)]).unwrap();
    let r = extremality_report(&sym, &f, Side::Adjoint, 1e-10).unwrap();
    let norm_ok = (norm - 0.5f64.exp()).abs() <= 1e-12;
    outcome(
        norm_ok && r.is_extremal && r.eigen_residual_rel <= 1e-10,
        format!("||C|| = {norm:.12}, residual {:.2e}", r.eigen_residual_rel),
    )
}

fn criterion_5() -> Outcome {
    let sym = gallery::weighted_shift(0.5, 4).unwrap();
    let norm = analyze(&sym, &Tolerances::default()).unwrap().norm().unwrap();
    let norm_sq_ok = (norm * norm - 5.0f64.exp()).abs() <= 1e-10 * 5.0f64.exp();
    let (e2, e3) = (ComplexVector::unit(4, 1), ComplexVector::unit(4, 2));
    let f = KernelCombination::sum_of_kernels(&[e2.clone(), e3.clone()]).unwrap();
    let r = extremality_report(&sym, &f, Side::Adjoint, 1e-9).unwrap();
    let d = (sym.apply(&e2).unwrap().norm() - sym.apply(&e3).unwrap().norm()).abs();
    outcome(
        norm_sq_ok && !r.is_extremal && r.eigen_residual_rel >= 0.01 && d <= 1e-12,
        format!(
            "||C||^2 = {:.10} (e^5 = {:.10}), residual {:.3}, | |psi(e2)| - |psi(e3)| | = {d:.1e}",
            norm * norm,
            5.0f64.exp(),
            r.eigen_residual_rel
        ),
    )
}

fn criterion_6(pop: &[AffineSymbol]) -> Outcome {
    let tol = Tolerances::default();
    let mut worst_gap = 0.0f64;
    let mut worst_residual = 0.0f64;
    let mut failures = 0;
    for sym in pop {
        let op = CompositionOperator::new(sym.clone(), &tol).unwrap();
        let w0 = op.report().w0.clone().unwrap();
        let l = op.log_norm();
        let at = adjoint_norm_at_kernel(sym, &w0).unwrap();
        let gap = (at - l).abs() / l.abs().max(1.0);
        let r = op.extremality(&KernelCombination::kernel(w0).unwrap(), Side::Adjoint, 1e-9).unwrap();
        worst_gap = worst_gap.max(gap);
        worst_residual = worst_residual.max(r.eigen_residual_rel);
        if gap > 1e-10 || !r.is_extremal {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!(
            "{} symbols, max log-norm gap {worst_gap:.2e}, max eigen residual {worst_residual:.2e}",
            pop.len()
        ),
    )
}

fn criterion_7(seed: u64) -> Outcome {
    let sym = gallery::isometry_embedding(2).unwrap();
    let l = analyze(&sym, &Tolerances::default()).unwrap().log_norm.unwrap();
    let mut s = SymbolSampler::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let r: f64 = rand::Rng::gen_range(s.rng(), 0.0..4.0);
        let w = s.unit_vector(2).scale(c(r));
        worst = worst.max((adjoint_norm_at_kernel(&sym, &w).unwrap() - l).abs());
    }
    outcome(
        (l - 0.5).abs() <= 1e-14 && worst <= 1e-10,
        format!("log||C|| = {l}, max gap over 100 kernels {worst:.2e}"),
    )
}

/// `A` an isometry `C^n -> C^m` with `b` orthogonal to its range: every
/// function is an eigenfunction of `C C*`.
fn isometric_symbol(s: &mut SymbolSampler, n: usize, m: usize) -> AffineSymbol {
    let u = s.unitary(m);
    let v = s.unitary(n);
    let a = ComplexMatrix::from_fn(m, n, |i, j| (0..n).map(|k| u[(i, k)] * v[(j, k)].conj()).sum()).unwrap();
    let g = s.gaussian_vector(m - n);
    let b = ComplexVector::from_vec((0..m).map(|i| (0..m - n).map(|k| u[(i, n + k)] * g.get(k)).sum()).collect()).unwrap();
    AffineSymbol::new(a, b).unwrap()
}

fn criterion_8(seed: u64) -> Outcome {
    let tol = Tolerances::default();
    let mut s = SymbolSampler::new(seed);
    let mut extremal = 0;
    let mut violations = 0;
    for i in 0..300 {
        let (sym, x1, x2) = match i % 4 {
            0 | 1 => {
                let (n, m) = s.dims(5);
                let sym = s.any_bounded(n, m);
                (sym, s.unit_vector(n), s.unit_vector(n))
            }
            2 => {
                let n = 1 + i % 3;
                let sym = isometric_symbol(&mut s, n, n + 1 + i % 2);
                (sym, s.unit_vector(n), s.unit_vector(n))
            }
            _ => {
                let dim = 3 + i % 3;
                let sym = gallery::nilpotent_shift(dim).unwrap();
                let (j, k) = (i % (dim - 1), (i / 7) % (dim - 1));
                let phase = |s: &mut SymbolSampler| Complex64::from_polar(1.0, rand::Rng::gen_range(s.rng(), 0.0..6.3));
                let x1 = ComplexVector::unit(dim, j).scale(phase(&mut s));
                let x2 = ComplexVector::unit(dim, k).scale(phase(&mut s));
                (sym, x1, x2)
            }
        };
        let op = CompositionOperator::new(sym, &tol).unwrap();
        let check = op.sum_kernel_check(&x1, &x2, 1e-10).unwrap();
        if check.extremal {
            extremal += 1;
        }
        if !check.implication_holds {
            violations += 1;
        }
    }
    outcome(
        violations == 0 && extremal > 0,
        format!("300 instances, {extremal} extremal, {violations} violations"),
    )
}

fn criterion_9(pop: &[AffineSymbol]) -> Outcome {
    let tol = Tolerances::default();
    let mut witness_checks = 0;
    let mut w0_side_checks = 0;
    let mut worst_identity = 0.0f64;
    let mut worst_ratio = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    let mut failures = Vec::new();
    for (idx, sym) in pop.iter().enumerate() {
        let op = CompositionOperator::new(sym.clone(), &tol).unwrap();
        let rep = op.report();
        let b = sym.translation();
        let target = rep.v.as_ref().unwrap().norm_sqr() + b.norm_sqr();
        let scale = target.max(1.0);

        let mut identity_at = |w: &ComplexVector| {
            let gap = (w.inner(b).re - target).abs() / scale;
            worst_identity = worst_identity.max(gap);
            gap <= 1e-8
        };

        let w0 = rep.w0.clone().unwrap();
        let k_w0 = KernelCombination::kernel(w0.clone()).unwrap();
        if sym.domain_dim() == sym.codomain_dim()
            && op.extremality(&k_w0, Side::Composition, 1e-9).unwrap().is_extremal
        {
            w0_side_checks += 1;
            if !identity_at(&w0) {
                failures.push(format!("#{idx}: <b, w0>"));
            }
        }
        let wc = rep.composition_kernel_witness.clone().unwrap();
        let k_wc = KernelCombination::kernel(wc.clone()).unwrap();
        let ext = op.extremality(&k_wc, Side::Composition, 1e-9).unwrap();
        witness_checks += 1;
        if !ext.is_extremal || !identity_at(&wc) {
            failures.push(format!("#{idx}: composition witness (residual {:.1e})", ext.eigen_residual_rel));
        }

        for f in [&k_w0, &k_wc] {
            let p = op.positivity(f, 1e-9).unwrap();
            for (ratio, expected) in [
                (p.ratio_astar_b, p.expected_ratio_astar_b),
                (p.ratio_b, p.expected_ratio_b),
            ] {
                if let Some(r) = ratio {
                    min_ratio = min_ratio.min(r);
                    let gap = (r - expected).abs() / expected.max(1.0);
                    worst_ratio = worst_ratio.max(gap);
                    if r < -1e-10 || gap > 1e-8 {
                        failures.push(format!("#{idx}: positivity ratio {r} vs {expected}"));
                    }
                }
            }
        }
        // f(A* b) = e^{|v|^2} f(0) evaluated directly at the adjoint witness
        let at0 = evaluate(&k_w0, &ComplexVector::zeros(w0.dim())).unwrap();
        let at = evaluate(&k_w0, &sym.adjoint_translation()).unwrap();
        let v_sq = rep.v.as_ref().unwrap().norm_sqr();
        if ((at / at0).re - v_sq.exp()).abs() > 1e-8 * v_sq.exp() {
            failures.push(format!("#{idx}: K_w0(A*b)"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{witness_checks} composition witnesses, {w0_side_checks} symbols extremal for C at K_w0, \
             max identity gap {worst_identity:.2e}, max ratio gap {worst_ratio:.2e}, min ratio {min_ratio:.3}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", failures.iter().take(5).cloned().collect::<Vec<_>>().join(", "))
            }
        ),
    )
}

fn criterion_10(seed: u64) -> Outcome {
    let mut s = SymbolSampler::new(seed);
    let random = |s: &mut SymbolSampler| {
        let a = ComplexMatrix::from_fn(2, 2, |_, _| s.gaussian() * 0.7).unwrap();
        AffineSymbol::new(a, s.gaussian_vector(2)).unwrap()
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let inner = random(&mut s);
        let outer = random(&mut s);
        let composed = compose_symbols(&outer, &inner).unwrap();
        let lhs = galerkin_matrix(&composed, 6).unwrap().to_dense();
        let rhs = &galerkin_matrix(&inner, 6).unwrap().to_dense() * &galerkin_matrix(&outer, 6).unwrap().to_dense();
        let rel = (&lhs - &rhs).frobenius_norm() / lhs.frobenius_norm().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    outcome(worst <= 1e-12, format!("100 pairs at d = 6, max relative error {worst:.2e}"))
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let seed = env_seed();
    println!("acceptance (seed {seed})");
    let bounded = bounded_population(seed);
    let unbounded = unbounded_population(seed.wrapping_add(1));

    let criteria: Vec<(&str, Check)> = vec![
        ("norm formulas agree", Box::new(|| criterion_1(&bounded))),
        ("boundedness criteria agree", Box::new(|| criterion_2(&bounded, &unbounded))),
        ("Galerkin oracle, scalar symbol", Box::new(criterion_3)),
        ("nilpotent shift attains its norm", Box::new(criterion_4)),
        ("weighted shift does not", Box::new(criterion_5)),
        ("kernel witness is extremal", Box::new(|| criterion_6(&bounded))),
        ("isometry embedding", Box::new(|| criterion_7(seed.wrapping_add(2)))),
        ("two-kernel necessary condition", Box::new(|| criterion_8(seed.wrapping_add(3)))),
        ("positivity identities", Box::new(|| criterion_9(&bounded))),
        ("Galerkin matrices compose", Box::new(|| criterion_10(seed.wrapping_add(4)))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} ({:.2} s)",
            if result.pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
