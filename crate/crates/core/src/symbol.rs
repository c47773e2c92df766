//! Affine symbols `phi(z) = A z + b` and the classification of `C_phi`.
//!
//! `A` maps the domain `C^n` into the codomain `C^m`; the composition
//! operator then acts from the Fock space over `C^m` to the one over `C^n`.
//! Boundedness is decided three ways (primal range test on `A* b`, dual
//! range test on `b`, and orthogonality of `b` to `A` applied to the
//! isometric subspace) and the norm is computed by three closed forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, reassemble, ComplexMatrix, ComplexVector, Tolerances};

/// The symbol `phi(z) = A z + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSymbol {
    linear: ComplexMatrix,
    translation: ComplexVector,
}

impl AffineSymbol {
    pub fn new(linear: ComplexMatrix, translation: ComplexVector) -> Result<Self> {
        if linear.rows() != translation.dim() {
            return invalid(format!(
                "translation has dimension {} but A has {} rows",
                translation.dim(),
                linear.rows()
            ));
        }
        Ok(AffineSymbol { linear, translation })
    }

    /// `z -> A z` on `C^n`.
    pub fn linear_only(linear: ComplexMatrix) -> Self {
        let m = linear.rows();
        AffineSymbol {
            linear,
            translation: ComplexVector::zeros(m),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear_only(ComplexMatrix::identity(n))
    }

    /// One-variable symbol `z -> a z + b`.
    pub fn scalar(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(
            ComplexMatrix::from_rows(&[vec![a]])?,
            ComplexVector::from_vec(vec![b])?,
        )
    }

    pub fn linear(&self) -> &ComplexMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &ComplexVector {
        &self.translation
    }

    /// Dimension `n` of the space the symbol is defined on.
    pub fn domain_dim(&self) -> usize {
        self.linear.cols()
    }

    /// Dimension `m` of the space the symbol maps into.
    pub fn codomain_dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn apply(&self, z: &ComplexVector) -> Result<ComplexVector> {
        Ok(&self.linear.checked_mul_vec(z)? + &self.translation)
    }

    /// `A* w` for `w` in the codomain.
    pub fn adjoint_linear_apply(&self, w: &ComplexVector) -> Result<ComplexVector> {
        if w.dim() != self.codomain_dim() {
            return invalid(format!(
                "point has dimension {}, expected {}",
                w.dim(),
                self.codomain_dim()
            ));
        }
        Ok(&self.linear.adjoint() * w)
    }

    /// `A* b`.
    pub fn adjoint_translation(&self) -> ComplexVector {
        &self.linear.adjoint() * &self.translation
    }
}

/// Returns the symbol of `outer ∘ inner`, i.e. `z -> A_o (A_i z + b_i) + b_o`.
pub fn compose_symbols(outer: &AffineSymbol, inner: &AffineSymbol) -> Result<AffineSymbol> {
    if outer.domain_dim() != inner.codomain_dim() {
        return invalid(format!(
            "outer symbol expects dimension {}, inner produces {}",
            outer.domain_dim(),
            inner.codomain_dim()
        ));
    }
    let linear = outer.linear.checked_mul(&inner.linear)?;
    let translation = &(&outer.linear * &inner.translation) + &outer.translation;
    AffineSymbol::new(linear, translation)
}

/// Outcome of the three boundedness tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessVerdict {
    /// `A* b` lies in the range of `(I - A*A)^{1/2}`.
    pub primal: bool,
    /// `b` lies in the range of `(I - AA*)^{1/2}`.
    pub dual: bool,
    /// `<A zeta, b> = 0` whenever `|A zeta| = |zeta|`.
    pub carswell: bool,
}

impl BoundednessVerdict {
    pub fn bounded(&self) -> bool {
        self.primal
    }

    pub fn criteria_agree(&self) -> bool {
        self.primal == self.dual && self.dual == self.carswell
    }

    fn unbounded() -> Self {
        BoundednessVerdict {
            primal: false,
            dual: false,
            carswell: false,
        }
    }
}

/// The three closed-form values of `ln ||C_phi||`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogNormFormulas {
    /// `(|v|^2 + |b|^2) / 2`
    pub via_v: f64,
    /// `|u|^2 / 2`
    pub via_u: f64,
    /// `(|w0|^2 - |A w0|^2 + |b|^2) / 2`
    pub via_w0: f64,
}

impl LogNormFormulas {
    /// Largest pairwise relative disagreement.
    pub fn max_relative_spread(&self) -> f64 {
        let vals = [self.via_v, self.via_u, self.via_w0];
        if vals.iter().any(|x| !x.is_finite()) {
            return f64::INFINITY;
        }
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let scale = hi.abs().max(lo.abs());
        if scale == 0.0 {
            0.0
        } else {
            (hi - lo) / scale
        }
    }
}

/// Full classification of a symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolReport {
    pub norm_a: f64,
    pub verdict: BoundednessVerdict,
    pub bounded: bool,
    pub compact: bool,
    /// Minimal-norm solution of `(I - A*A)^{1/2} v = A* b` (dimension n).
    pub v: Option<ComplexVector>,
    /// Minimal-norm solution of `(I - AA*)^{1/2} u = b` (dimension m).
    pub u: Option<ComplexVector>,
    /// Minimal-norm solution of `(I - A*A) w = A* b` (dimension n).
    pub w0: Option<ComplexVector>,
    pub log_norm: Option<f64>,
    pub formulas: Option<LogNormFormulas>,
    /// Point `w` with `C_phi*` attaining its norm at the normalized `K_w`.
    pub extremal_kernel_witness: Option<ComplexVector>,
    /// Minimal-norm solution of `(I - AA*) w = b` (dimension m): `C_phi`
    /// itself attains its norm at the normalized `K_w`.
    pub composition_kernel_witness: Option<ComplexVector>,
}

impl SymbolReport {
    /// `||C_phi||`, when bounded.
    pub fn norm(&self) -> Option<f64> {
        self.log_norm.map(f64::exp)
    }

    pub fn require_log_norm(&self) -> Result<f64> {
        self.log_norm.ok_or(Error::Unbounded)
    }
}

/// Spectral data of `A` with singular values snapped into `[0, 1]`.
const ISOMETRY_GAP: f64 = 1e-12;

struct Geometry {
    norm_a: f64,
    admissible: bool,
    /// `I - A*A` (n x n)
    defect: ComplexMatrix,
    /// `I - AA*` (m x m)
    dual_defect: ComplexMatrix,
    /// Orthonormal basis of `{zeta : |A zeta| = |zeta|}` as columns of `A zeta`.
    isometric_images: Vec<ComplexVector>,
}

impl Geometry {
    fn new(sym: &AffineSymbol, tol: &Tolerances) -> Result<Self> {
        let d = linalg::svd(&sym.linear)?;
        let norm_a = d.sigma.first().copied().unwrap_or(0.0);
        let admissible = norm_a <= 1.0 + tol.compare_rel;
        let n = sym.domain_dim();
        let m = sym.codomain_dim();
        if !admissible {
            return Ok(Geometry {
                norm_a,
                admissible,
                defect: ComplexMatrix::zeros(n, n),
                dual_defect: ComplexMatrix::zeros(m, m),
                isometric_images: Vec::new(),
            });
        }
        // Directions with 1 - sigma^2 below the square-root clamp are isometric;
        // snapping them to sigma = 1 keeps all three criteria on the same footing.
        let sigma: Vec<f64> = d
            .sigma
            .iter()
            .map(|&s| if 1.0 - s * s <= ISOMETRY_GAP { 1.0 } else { s })
            .collect();
        let sq: Vec<f64> = sigma.iter().map(|s| s * s).collect();
        let defect = &ComplexMatrix::identity(n) - &reassemble(&d.v, &sq);
        let dual_defect = &ComplexMatrix::identity(m) - &reassemble(&d.u, &sq);
        let isometric_images = sigma
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 1.0)
            .map(|(k, _)| d.u.column(k))
            .collect();
        Ok(Geometry {
            norm_a,
            admissible,
            defect,
            dual_defect,
            isometric_images,
        })
    }
}

fn solves(m: &ComplexMatrix, y: &ComplexVector, tol: &Tolerances, reference: f64) -> Result<Option<ComplexVector>> {
    match linalg::min_norm_solve_scaled(m, y, tol, reference) {
        Ok(x) => Ok(Some(x)),
        Err(Error::Inconsistent { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn verdict_from(sym: &AffineSymbol, g: &Geometry, tol: &Tolerances) -> Result<(BoundednessVerdict, Option<ComplexVector>, Option<ComplexVector>)> {
    if !g.admissible {
        return Ok((BoundednessVerdict::unbounded(), None, None));
    }
    let b = &sym.translation;
    let a_star_b = sym.adjoint_translation();
    let v = solves(&linalg::psd_sqrt_relative(&g.defect, 1.0)?, &a_star_b, tol, b.norm())?;
    let u = solves(&linalg::psd_sqrt_relative(&g.dual_defect, 1.0)?, b, tol, 0.0)?;
    let leak: f64 = g
        .isometric_images
        .iter()
        .map(|az| az.inner(b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let carswell = leak <= tol.residual_rel * b.norm();
    Ok((
        BoundednessVerdict {
            primal: v.is_some(),
            dual: u.is_some(),
            carswell,
        },
        v,
        u,
    ))
}

/// Runs the three boundedness criteria.
pub fn check_bounded(sym: &AffineSymbol, tol: &Tolerances) -> Result<BoundednessVerdict> {
    tol.validate()?;
    let g = Geometry::new(sym, tol)?;
    let (verdict, _, _) = verdict_from(sym, &g, tol)?;
    debug_assert!(verdict.criteria_agree(), "boundedness criteria disagree: {verdict:?}");
    Ok(verdict)
}

/// `C_phi` is compact exactly when `||A|| < 1`.
pub fn check_compact(sym: &AffineSymbol, tol: &Tolerances) -> Result<bool> {
    Ok(linalg::operator_norm(&sym.linear)? < 1.0 - tol.compare_rel)
}

/// Classifies the symbol and, when bounded, computes `v`, `u`, `w0`, the
/// log-norm by each closed form and the extremal kernel points.
pub fn analyze(sym: &AffineSymbol, tol: &Tolerances) -> Result<SymbolReport> {
    tol.validate()?;
    let g = Geometry::new(sym, tol)?;
    let (verdict, v, u) = verdict_from(sym, &g, tol)?;
    debug_assert!(verdict.criteria_agree(), "boundedness criteria disagree: {verdict:?}");
    let compact = g.norm_a < 1.0 - tol.compare_rel;

    let mut report = SymbolReport {
        norm_a: g.norm_a,
        verdict,
        bounded: verdict.bounded(),
        compact,
        v: None,
        u: None,
        w0: None,
        log_norm: None,
        formulas: None,
        extremal_kernel_witness: None,
        composition_kernel_witness: None,
    };
    let (Some(v), true) = (v, verdict.bounded()) else {
        return Ok(report);
    };

    let b = &sym.translation;
    let b_sq = b.norm_sqr();
    let w0 = linalg::min_norm_solve_scaled(&g.defect, &sym.adjoint_translation(), tol, b.norm())?;
    let dual_witness = solves(&g.dual_defect, b, tol, 0.0)?;
    let via_v = 0.5 * (v.norm_sqr() + b_sq);
    let via_u = u.as_ref().map_or(f64::NAN, |u| 0.5 * u.norm_sqr());
    let via_w0 = 0.5 * (w0.norm_sqr() - (&sym.linear * &w0).norm_sqr() + b_sq);

    report.log_norm = Some(via_v);
    report.formulas = Some(LogNormFormulas { via_v, via_u, via_w0 });
    report.v = Some(v);
    report.u = u;
    report.extremal_kernel_witness = Some(w0.clone());
    report.w0 = Some(w0);
    report.composition_kernel_witness = dual_witness;
    Ok(report)
}
