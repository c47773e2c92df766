//! Exact algebra on finite sums of reproducing kernels `K_w(z) = exp<z, w>`.
//!
//! Both `C_phi` and its adjoint map kernels to multiples of kernels, so every
//! quantity here (norms, residuals of eigen-equations, equality tests) is a
//! finite Gram-matrix computation with no truncation error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{ComplexVector, Tolerances};
use crate::symbol::{analyze, AffineSymbol, SymbolReport};

/// Kernel points with `|w|^2` above this are rejected: exponents `<p, q>` of
/// that size carry absolute rounding errors near the extremality tolerance.
pub const MAX_POINT_NORM_SQR: f64 = 1e6;

/// Default bound on the relative eigen-equation residual for extremality.
pub const DEFAULT_EXTREMAL_TOL: f64 = 1e-9;

const DROP_REL: f64 = 1e-15;
/// Two kernels are identified when `|K_p - K_q| <= MERGE_REL * |K_p|`.
const MERGE_REL: f64 = 1e-12;

/// One term `coeff * K_point`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTerm {
    pub coeff: Complex64,
    pub point: ComplexVector,
}

/// A finite combination `exp(log_scale) * sum_i c_i K_{w_i}` on `C^dim`.
///
/// Stored normalized: near-coincident points are merged, negligible
/// coefficients dropped and the largest `|c_i|` rescaled to 1, so kernels
/// far from the origin neither overflow nor underflow. The empty
/// combination is the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCombination {
    dim: usize,
    log_scale: f64,
    terms: Vec<KernelTerm>,
}

fn check_point(point: &ComplexVector, dim: usize) -> Result<()> {
    if point.dim() != dim {
        return invalid(format!("point has dimension {}, expected {dim}", point.dim()));
    }
    let sq = point.norm_sqr();
    if sq > MAX_POINT_NORM_SQR {
        return Err(Error::Range(format!(
            "kernel point with |w|^2 = {sq:.3} exceeds {MAX_POINT_NORM_SQR}"
        )));
    }
    Ok(())
}

fn close_points(p: &ComplexVector, q: &ComplexVector) -> bool {
    if p == q {
        return true;
    }
    // |K_p - K_q|^2 / |K_p|^2 ~ |p - q|^2 (1 + |p|^2) to leading order
    let spread = 1.0 + p.norm_sqr().max(q.norm_sqr());
    (p - q).norm_sqr() * spread <= MERGE_REL * MERGE_REL
}

impl KernelCombination {
    pub fn new(dim: usize, terms: Vec<KernelTerm>) -> Result<Self> {
        Self::with_log_scale(dim, 0.0, terms)
    }

    /// `exp(log_scale) * sum_i c_i K_{w_i}`.
    pub fn with_log_scale(dim: usize, log_scale: f64, terms: Vec<KernelTerm>) -> Result<Self> {
        if dim == 0 {
            return invalid("kernel combinations need dimension >= 1");
        }
        if !log_scale.is_finite() {
            return invalid("non-finite scale");
        }
        for t in &terms {
            check_point(&t.point, dim)?;
            if !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                return invalid("non-finite coefficient");
            }
        }
        let mut out = KernelCombination { dim, log_scale, terms };
        out.normalize();
        Ok(out)
    }

    pub fn zero(dim: usize) -> Self {
        KernelCombination {
            dim,
            log_scale: 0.0,
            terms: Vec::new(),
        }
    }

    /// `K_w`.
    pub fn kernel(point: ComplexVector) -> Result<Self> {
        Self::new(
            point.dim(),
            vec![KernelTerm {
                coeff: Complex64::new(1.0, 0.0),
                point,
            }],
        )
    }

    /// Normalized kernel `k_w = exp(-|w|^2 / 2) K_w`.
    pub fn normalized_kernel(point: ComplexVector) -> Result<Self> {
        let log_scale = -0.5 * point.norm_sqr();
        Self::with_log_scale(
            point.dim(),
            log_scale,
            vec![KernelTerm {
                coeff: Complex64::new(1.0, 0.0),
                point,
            }],
        )
    }

    /// `K_{p_1} + ... + K_{p_k}`.
    pub fn sum_of_kernels(points: &[ComplexVector]) -> Result<Self> {
        let Some(first) = points.first() else {
            return invalid("need at least one point");
        };
        let terms = points
            .iter()
            .map(|p| KernelTerm {
                coeff: Complex64::new(1.0, 0.0),
                point: p.clone(),
            })
            .collect();
        Self::new(first.dim(), terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms relative to the common factor `exp(log_scale())`.
    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// Actual coefficients `exp(log_scale) c_i`; may overflow for extreme scales.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let s = self.log_scale.exp();
        self.terms.iter().map(|t| t.coeff * s).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self) {
        let mut merged: Vec<KernelTerm> = Vec::with_capacity(self.terms.len());
        for term in self.terms.drain(..) {
            match merged.iter_mut().find(|m| close_points(&m.point, &term.point)) {
                Some(m) => m.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        let biggest = merged.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        merged.retain(|t| t.coeff.norm() > DROP_REL * biggest);
        if merged.is_empty() {
            self.log_scale = 0.0;
        } else if biggest != 1.0 {
            for t in &mut merged {
                t.coeff /= biggest;
            }
            self.log_scale += biggest.ln();
        }
        self.terms = merged;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == Complex64::new(0.0, 0.0) {
            return Self::zero(self.dim);
        }
        let phase = s / s.norm();
        let terms = self
            .terms
            .iter()
            .map(|t| KernelTerm {
                coeff: t.coeff * phase,
                point: t.point.clone(),
            })
            .collect();
        KernelCombination {
            dim: self.dim,
            log_scale: self.log_scale + s.norm().ln(),
            terms,
        }
    }

    /// Multiplies by the positive real `exp(log_factor)`.
    pub fn scale_log(&self, log_factor: f64) -> Self {
        let mut out = self.clone();
        if !out.terms.is_empty() {
            out.log_scale += log_factor;
        }
        out
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &KernelCombination, s: Complex64) -> Result<Self> {
        same_dim(self, other)?;
        let other = other.scale(s);
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other);
        }
        let common = self.log_scale.max(other.log_scale);
        let rel = |c: &KernelCombination| (c.log_scale - common).exp();
        let (rs, ro) = (rel(self), rel(&other));
        let mut terms: Vec<KernelTerm> = self
            .terms
            .iter()
            .map(|t| KernelTerm {
                coeff: t.coeff * rs,
                point: t.point.clone(),
            })
            .collect();
        terms.extend(other.terms.iter().map(|t| KernelTerm {
            coeff: t.coeff * ro,
            point: t.point.clone(),
        }));
        let mut out = KernelCombination {
            dim: self.dim,
            log_scale: common,
            terms,
        };
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &KernelCombination) -> Result<Self> {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// `ln |f|`, `-inf` for the zero function.
    pub fn log_norm(&self) -> Result<f64> {
        let (s, shift) = gram(self, self)?;
        Ok(if s.re > 0.0 { 0.5 * (shift + s.re.ln()) } else { f64::NEG_INFINITY })
    }

    pub fn norm(&self) -> Result<f64> {
        Ok(self.log_norm()?.exp())
    }
}

fn same_dim(f: &KernelCombination, g: &KernelCombination) -> Result<()> {
    if f.dim != g.dim {
        return invalid(format!(
            "kernel combinations live on C^{} and C^{}",
            f.dim, g.dim
        ));
    }
    Ok(())
}

/// Sum of `c_k exp(x_k)` as `(mantissa, shift)` with value `mantissa * exp(shift)`.
fn shifted_sum(terms: impl Iterator<Item = (Complex64, Complex64)> + Clone) -> (Complex64, f64) {
    let shift = terms.clone().map(|(_, x)| x.re).fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let sum = terms.map(|(c, x)| c * (x - shift).exp()).sum();
    (sum, shift)
}

/// `f(z)` as `(mantissa, shift)`.
fn evaluate_shifted(f: &KernelCombination, z: &ComplexVector) -> Result<(Complex64, f64)> {
    if z.dim() != f.dim {
        return invalid(format!("evaluation point has dimension {}, expected {}", z.dim(), f.dim));
    }
    let exps: Vec<(Complex64, Complex64)> = f.terms.iter().map(|t| (t.coeff, z.inner(&t.point))).collect();
    let (m, shift) = shifted_sum(exps.iter().copied());
    Ok((m, shift + f.log_scale))
}

/// Points within this distance of a cluster centre share it in [`gram`].
const CLUSTER_RADIUS_SQR: f64 = 1.0;

/// Terms grouped around centres `m`, each stored as `(coeff, point - m)`.
struct Cluster {
    centre: ComplexVector,
    members: Vec<(Complex64, ComplexVector)>,
}

fn clusters(f: &KernelCombination) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    for t in &f.terms {
        match out
            .iter_mut()
            .find(|c| (&t.point - &c.centre).norm_sqr() <= CLUSTER_RADIUS_SQR)
        {
            Some(c) => c.members.push((t.coeff, &t.point - &c.centre)),
            None => out.push(Cluster {
                centre: t.point.clone(),
                members: vec![(t.coeff, ComplexVector::zeros(f.dim))],
            }),
        }
    }
    out
}

/// `exp(z) - 1` without cancellation for small `z`.
fn expm1(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * half * half, z.re.exp() * z.im.sin())
}

/// `<f_A, f_B>` for one pair of clusters, as `(mantissa, shift)`.
///
/// With `p = m + d` and `q = m' + d'`,
/// `<K_p, K_q> = e^{<m', m>} e^{<m', d>} conj(e^{<m, d'>}) (1 + expm1<d', d>)`,
/// so near-cancelling sums inside a cluster are formed from the small
/// offsets only and keep their relative accuracy far from the origin.
fn cluster_block(a: &Cluster, b: &Cluster) -> (Complex64, f64) {
    let base = b.centre.inner(&a.centre);
    let ea: Vec<Complex64> = a.members.iter().map(|(_, d)| b.centre.inner(d)).collect();
    let eb: Vec<Complex64> = b.members.iter().map(|(_, d)| a.centre.inner(d)).collect();
    let sa = ea.iter().map(|x| x.re).fold(f64::NEG_INFINITY, f64::max);
    let sb = eb.iter().map(|x| x.re).fold(f64::NEG_INFINITY, f64::max);
    let g: Vec<Complex64> = a.members.iter().zip(&ea).map(|((c, _), x)| c * (x - sa).exp()).collect();
    let h: Vec<Complex64> = b.members.iter().zip(&eb).map(|((c, _), x)| c * (x - sb).exp()).collect();
    let mut acc = g.iter().sum::<Complex64>() * h.iter().sum::<Complex64>().conj();
    for (gi, (_, di)) in g.iter().zip(&a.members) {
        for (hj, (_, dj)) in h.iter().zip(&b.members) {
            if di.is_zero() || dj.is_zero() {
                continue;
            }
            acc += gi * hj.conj() * expm1(dj.inner(di));
        }
    }
    (acc * Complex64::from_polar(1.0, base.im), base.re + sa + sb)
}

/// `<f, g>` as `(mantissa, shift)`.
fn gram(f: &KernelCombination, g: &KernelCombination) -> Result<(Complex64, f64)> {
    same_dim(f, g)?;
    let (cf, cg) = (clusters(f), clusters(g));
    let mut blocks = Vec::with_capacity(cf.len() * cg.len());
    for a in &cf {
        for b in &cg {
            blocks.push(cluster_block(a, b));
        }
    }
    let shift = blocks.iter().map(|(_, s)| *s).fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let m = blocks.iter().map(|(m, s)| m * (s - shift).exp()).sum();
    Ok((m, shift + f.log_scale + g.log_scale))
}

/// `f(z) = sum_i c_i exp<z, w_i>`.
pub fn evaluate(f: &KernelCombination, z: &ComplexVector) -> Result<Complex64> {
    let (m, shift) = evaluate_shifted(f, z)?;
    Ok(m * shift.exp())
}

/// `f(z) / f(z0)`, computed without forming either value.
pub fn evaluation_ratio(f: &KernelCombination, z: &ComplexVector, z0: &ComplexVector) -> Result<Option<Complex64>> {
    let (num, s1) = evaluate_shifted(f, z)?;
    let (den, s0) = evaluate_shifted(f, z0)?;
    if den.norm() == 0.0 {
        return Ok(None);
    }
    Ok(Some(num / den * (s1 - s0).exp()))
}

/// `<f, g> = sum_ij c_i conj(d_j) exp<q_j, p_i>`.
pub fn inner_product(f: &KernelCombination, g: &KernelCombination) -> Result<Complex64> {
    let (m, shift) = gram(f, g)?;
    Ok(m * shift.exp())
}

/// `C_phi* f`, mapping each `c K_w` to `c K_{phi(w)}`.
pub fn apply_adjoint(sym: &AffineSymbol, f: &KernelCombination) -> Result<KernelCombination> {
    if f.dim != sym.domain_dim() {
        return invalid(format!(
            "adjoint acts on functions over C^{}, got C^{}",
            sym.domain_dim(),
            f.dim
        ));
    }
    let terms = f
        .terms
        .iter()
        .map(|t| {
            Ok(KernelTerm {
                coeff: t.coeff,
                point: sym.apply(&t.point)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    KernelCombination::with_log_scale(sym.codomain_dim(), f.log_scale, terms)
}

/// `C_phi f`, mapping each `c K_w` to `c exp<b, w> K_{A* w}`.
pub fn apply_composition(sym: &AffineSymbol, f: &KernelCombination) -> Result<KernelCombination> {
    if f.dim != sym.codomain_dim() {
        return invalid(format!(
            "composition acts on functions over C^{}, got C^{}",
            sym.codomain_dim(),
            f.dim
        ));
    }
    let b = sym.translation();
    let exps: Vec<Complex64> = f.terms.iter().map(|t| b.inner(&t.point)).collect();
    let shift = exps.iter().map(|x| x.re).fold(0.0, f64::max);
    let terms = f
        .terms
        .iter()
        .zip(&exps)
        .map(|(t, x)| {
            Ok(KernelTerm {
                coeff: t.coeff * (x - shift).exp(),
                point: sym.adjoint_linear_apply(&t.point)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    KernelCombination::with_log_scale(sym.domain_dim(), f.log_scale + shift, terms)
}

/// Equality up to `tol` relative, measured in the Fock norm.
pub fn combinations_equal(f: &KernelCombination, g: &KernelCombination, tol: f64) -> Result<bool> {
    let diff = f.sub(g)?.log_norm()?;
    let reference = f.log_norm()?.max(g.log_norm()?).max(0.0);
    Ok(diff <= tol.ln() + reference)
}

/// `ln |C_phi* k_w| = (|A w + b|^2 - |w|^2) / 2` without a boundedness check.
pub fn log_adjoint_kernel_ratio(sym: &AffineSymbol, w: &ComplexVector) -> Result<f64> {
    let image = sym.apply(w)?;
    Ok(0.5 * (image.norm_sqr() - w.norm_sqr()))
}

/// `ln |C_phi* k_w|` for a bounded symbol.
pub fn adjoint_norm_at_kernel(sym: &AffineSymbol, w: &ComplexVector) -> Result<f64> {
    let report = analyze(sym, &Tolerances::default())?;
    report.require_log_norm()?;
    log_adjoint_kernel_ratio(sym, w)
}

/// Which operator's norm attainment is being tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `C_phi`: tests `C_phi* C_phi f = |C_phi|^2 f` for `f` over `C^m`.
    Composition,
    /// `C_phi*`: tests `C_phi C_phi* f = |C_phi|^2 f` for `f` over `C^n`.
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalityReport {
    /// `ln(|T f| / |f|) - ln |C_phi|`; never meaningfully positive.
    pub log_ratio: f64,
    /// `|T* T f - |C_phi|^2 f| / (|C_phi|^2 |f|)`
    pub eigen_residual_rel: f64,
    pub is_extremal: bool,
}

/// Result of the two-kernel necessary condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumKernelCheck {
    pub extremal: bool,
    pub norm_phi_x1: f64,
    pub norm_phi_x2: f64,
    pub implication_holds: bool,
}

/// Ratios from the positivity identities for eigenfunctions of `C C*` and `C* C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    /// `C_phi C_phi* f = |C_phi|^2 f`
    pub cc_star_eigen: bool,
    /// `Re f(A* b) / f(0)`, reported when `cc_star_eigen` and `f(0) != 0`.
    pub ratio_astar_b: Option<f64>,
    /// `exp(|v|^2)`, the value `ratio_astar_b` must equal.
    pub expected_ratio_astar_b: f64,
    /// `C_phi* C_phi f = |C_phi|^2 f`
    pub c_star_c_eigen: bool,
    /// `Re f(b) / f(0)`, reported when `c_star_c_eigen` and `f(0) != 0`.
    pub ratio_b: Option<f64>,
    /// `|C_phi|^2`, the value `ratio_b` must equal.
    pub expected_ratio_b: f64,
}

impl PositivityReport {
    /// Both present ratios are non-negative and match their closed forms.
    pub fn holds(&self, tol: f64) -> bool {
        let ok = |ratio: Option<f64>, expected: f64| {
            ratio.is_none_or(|r| r >= -tol && (r - expected).abs() <= tol * expected.max(1.0))
        };
        ok(self.ratio_astar_b, self.expected_ratio_astar_b) && ok(self.ratio_b, self.expected_ratio_b)
    }
}

/// A bounded `C_phi` together with its closed-form analysis.
#[derive(Debug, Clone)]
pub struct CompositionOperator {
    symbol: AffineSymbol,
    report: SymbolReport,
    log_norm: f64,
}

impl CompositionOperator {
    pub fn new(symbol: AffineSymbol, tol: &Tolerances) -> Result<Self> {
        let report = analyze(&symbol, tol)?;
        let log_norm = report.require_log_norm()?;
        Ok(CompositionOperator {
            symbol,
            report,
            log_norm,
        })
    }

    pub fn symbol(&self) -> &AffineSymbol {
        &self.symbol
    }

    pub fn report(&self) -> &SymbolReport {
        &self.report
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// Returns `T f` and `T* T f` for the chosen side.
    fn forward_and_back(&self, f: &KernelCombination, side: Side) -> Result<(KernelCombination, KernelCombination)> {
        match side {
            Side::Composition => {
                let tf = apply_composition(&self.symbol, f)?;
                let back = apply_adjoint(&self.symbol, &tf)?;
                Ok((tf, back))
            }
            Side::Adjoint => {
                let tf = apply_adjoint(&self.symbol, f)?;
                let back = apply_composition(&self.symbol, &tf)?;
                Ok((tf, back))
            }
        }
    }

    pub fn extremality(&self, f: &KernelCombination, side: Side, tol: f64) -> Result<ExtremalityReport> {
        if f.is_zero() {
            return invalid("extremality needs a nonzero function");
        }
        let (tf, back) = self.forward_and_back(f, side)?;
        let f_log_norm = f.log_norm()?;
        let log_ratio = tf.log_norm()? - f_log_norm - self.log_norm;
        let scaled = back.scale_log(-2.0 * self.log_norm);
        let residual = (scaled.sub(f)?.log_norm()? - f_log_norm).exp();
        Ok(ExtremalityReport {
            log_ratio,
            eigen_residual_rel: residual,
            is_extremal: residual <= tol,
        })
    }

    pub fn sum_kernel_check(&self, x1: &ComplexVector, x2: &ComplexVector, tol: f64) -> Result<SumKernelCheck> {
        for x in [x1, x2] {
            if (x.norm() - 1.0).abs() > 1e-12 {
                return invalid(format!("points must be unit vectors, got norm {}", x.norm()));
            }
        }
        let f = KernelCombination::sum_of_kernels(&[x1.clone(), x2.clone()])?;
        let extremal = self.extremality(&f, Side::Adjoint, DEFAULT_EXTREMAL_TOL)?.is_extremal;
        let norm_phi_x1 = self.symbol.apply(x1)?.norm();
        let norm_phi_x2 = self.symbol.apply(x2)?.norm();
        Ok(SumKernelCheck {
            extremal,
            norm_phi_x1,
            norm_phi_x2,
            implication_holds: !extremal || (norm_phi_x1 - norm_phi_x2).abs() <= tol,
        })
    }

    pub fn positivity(&self, f: &KernelCombination, tol: f64) -> Result<PositivityReport> {
        let v_sq = self.report.v.as_ref().map_or(0.0, ComplexVector::norm_sqr);
        let mut out = PositivityReport {
            cc_star_eigen: false,
            ratio_astar_b: None,
            expected_ratio_astar_b: v_sq.exp(),
            c_star_c_eigen: false,
            ratio_b: None,
            expected_ratio_b: (2.0 * self.log_norm).exp(),
        };
        if f.is_zero() {
            return Ok(out);
        }
        if f.dim() == self.symbol.domain_dim() {
            out.cc_star_eigen = self.extremality(f, Side::Adjoint, tol)?.is_extremal;
            if out.cc_star_eigen {
                let zero = ComplexVector::zeros(f.dim());
                out.ratio_astar_b = evaluation_ratio(f, &self.symbol.adjoint_translation(), &zero)?.map(|r| r.re);
            }
        }
        if f.dim() == self.symbol.codomain_dim() {
            out.c_star_c_eigen = self.extremality(f, Side::Composition, tol)?.is_extremal;
            if out.c_star_c_eigen {
                let zero = ComplexVector::zeros(f.dim());
                out.ratio_b = evaluation_ratio(f, self.symbol.translation(), &zero)?.map(|r| r.re);
            }
        }
        Ok(out)
    }
}

/// Tests whether `f` is an eigenfunction of `T* T` for the top eigenvalue
/// `|C_phi|^2`, i.e. whether `T` attains its norm at `f / |f|`.
pub fn extremality_report(sym: &AffineSymbol, f: &KernelCombination, side: Side, tol: f64) -> Result<ExtremalityReport> {
    CompositionOperator::new(sym.clone(), &Tolerances::default())?.extremality(f, side, tol)
}

/// If `C_phi*` attains its norm at the normalized `K_{x1} + K_{x2}` with unit
/// `x1, x2`, then `|phi(x1)| = |phi(x2)|`.
pub fn sum_kernel_necessary_check(sym: &AffineSymbol, x1: &ComplexVector, x2: &ComplexVector, tol: f64) -> Result<SumKernelCheck> {
    CompositionOperator::new(sym.clone(), &Tolerances::default())?.sum_kernel_check(x1, x2, tol)
}

pub fn positivity_checks(sym: &AffineSymbol, f: &KernelCombination, tol: f64) -> Result<PositivityReport> {
    CompositionOperator::new(sym.clone(), &Tolerances::default())?.positivity(f, tol)
}
