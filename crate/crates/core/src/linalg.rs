//! Dense complex linear algebra used by the rest of the crate.
//!
//! Thin newtypes over `nalgebra` storage that enforce finiteness, plus the
//! handful of routines the norm formulas need: SVD, operator norm, the
//! square root of a Hermitian PSD matrix and minimal-norm least squares.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Numerical tolerances shared by the linear-algebra and symbol layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Singular values at or below `rank_cutoff_rel * sigma_max` count as zero.
    pub rank_cutoff_rel: f64,
    /// Relative residual accepted by [`min_norm_solve`].
    pub residual_rel: f64,
    /// Relative slack for comparisons such as `||A|| <= 1`.
    pub compare_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_cutoff_rel: 1e-12,
            residual_rel: 1e-8,
            compare_rel: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(rank_cutoff_rel: f64, residual_rel: f64, compare_rel: f64) -> Result<Self> {
        let tol = Tolerances {
            rank_cutoff_rel,
            residual_rel,
            compare_rel,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("rank_cutoff_rel", self.rank_cutoff_rel),
            ("residual_rel", self.residual_rel),
            ("compare_rel", self.compare_rel),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return invalid(format!("tolerance {name} = {value} must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

/// A finite complex matrix with at least one row and one column.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

/// A finite complex vector of dimension at least one.
#[derive(Clone, PartialEq)]
pub struct ComplexVector(DVector<Complex64>);

impl ComplexMatrix {
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return invalid("matrix must have at least one row and one column");
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("matrix has non-finite entries");
        }
        Ok(ComplexMatrix(m))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return invalid("ragged rows");
        }
        let flat: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::from_row_slice(r, c, &flat)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of dimension zero");
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.0[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector(self.0.column(j).into_owned())
    }

    pub fn row_major_entries(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn checked_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != rhs.rows() {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            ));
        }
        Ok(ComplexMatrix(&self.0 * &rhs.0))
    }

    pub fn checked_mul_vec(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.cols() != x.dim() {
            return invalid(format!(
                "cannot apply {}x{} matrix to vector of dimension {}",
                self.rows(),
                self.cols(),
                x.dim()
            ));
        }
        Ok(ComplexVector(&self.0 * &x.0))
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix(&self.0 * s)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Mul<&ComplexVector> for &ComplexMatrix {
    type Output = ComplexVector;
    fn mul(self, rhs: &ComplexVector) -> ComplexVector {
        self.checked_mul_vec(rhs).expect("matrix-vector dimension mismatch")
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl ComplexVector {
    pub fn from_dvector(v: DVector<Complex64>) -> Result<Self> {
        if v.is_empty() {
            return invalid("vector must have dimension at least one");
        }
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("vector has non-finite entries");
        }
        Ok(ComplexVector(v))
    }

    pub fn from_vec(entries: Vec<Complex64>) -> Result<Self> {
        Self::from_dvector(DVector::from_vec(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::from_vec(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector of dimension zero");
        ComplexVector(DVector::zeros(dim))
    }

    /// Standard basis vector `e_{index+1}` (zero-based index).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.0[i]
    }

    pub fn entries(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other>`, linear in `self` and conjugate-linear in `other`.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, s: Complex64) -> ComplexVector {
        ComplexVector(&self.0 * s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Add<&ComplexVector> for &ComplexVector {
    type Output = ComplexVector;
    fn add(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexVector> for &ComplexVector {
    type Output = ComplexVector;
    fn sub(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(&self.0 - &rhs.0)
    }
}

impl Neg for &ComplexVector {
    type Output = ComplexVector;
    fn neg(self) -> ComplexVector {
        ComplexVector(-&self.0)
    }
}

/// Thin singular value decomposition `M = U diag(sigma) V*`.
///
/// With `k = min(rows, cols)`, `u` is `rows x k`, `v` is `cols x k` and
/// `sigma` holds `k` non-negative values in descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let k = rows.min(cols);
    if k == 0 {
        return Ok(Svd {
            u: ComplexMatrix(DMatrix::zeros(rows, 0)),
            sigma: Vec::new(),
            v: ComplexMatrix(DMatrix::zeros(cols, 0)),
        });
    }
    let decomposition = to_faer(&m.0)
        .thin_svd()
        .map_err(|e| Error::Range(format!("singular value decomposition failed: {e:?}")))?;
    let (u, s, v) = (decomposition.U(), decomposition.S().column_vector(), decomposition.V());
    let sigma: Vec<f64> = (0..k).map(|j| s[j].re.max(0.0)).collect();
    if sigma.iter().any(|x| !x.is_finite()) {
        return Err(Error::Range("singular values overflowed".into()));
    }
    Ok(Svd {
        u: ComplexMatrix(DMatrix::from_fn(rows, k, |i, j| u[(i, j)])),
        sigma,
        v: ComplexMatrix(DMatrix::from_fn(cols, k, |i, j| v[(i, j)])),
    })
}

fn to_faer(m: &DMatrix<Complex64>) -> faer::Mat<Complex64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Spectral norm, the largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.max_abs() == 0.0 {
        return Ok(0.0);
    }
    Ok(svd(m)?.sigma[0])
}

/// Hermitian eigendecomposition with eigenvalues ascending.
pub(crate) fn hermitian_eigen(h: &ComplexMatrix, reference: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return invalid(format!("{}x{} matrix is not square", h.rows(), h.cols()));
    }
    let scale = h.frobenius_norm().max(reference);
    let skew = (&h.0 - h.0.adjoint()).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if skew > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return invalid(format!("matrix is not Hermitian (skew part {skew:e})"));
    }
    let sym = (&h.0 + h.0.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = to_faer(&sym)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Range(format!("eigendecomposition failed: {e:?}")))?;
    let n = sym.nrows();
    let (s, u) = (eig.S().column_vector(), eig.U());
    // faer returns eigenvalues in nondecreasing order
    let values = (0..n).map(|j| s[j].re).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    Ok((values, ComplexMatrix(vectors)))
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues within `1e-12 * ||H||` of zero are set to zero; anything more
/// negative is rejected.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_relative(h, 0.0)
}

/// As [`psd_sqrt`], with the clamp measured against `max(||H||, reference)`.
///
/// Use this for matrices like `I - A*A` whose entries are differences of
/// order-one quantities: there `reference = 1` keeps pure rounding noise
/// from being judged on its own tiny scale.
pub fn psd_sqrt_relative(h: &ComplexMatrix, reference: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigen(h, reference)?;
    let scale = values.iter().map(|x| x.abs()).fold(reference, f64::max);
    let cutoff = 1e-12 * scale;
    let mut roots = Vec::with_capacity(values.len());
    for &lambda in &values {
        if lambda < -cutoff {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        roots.push(if lambda <= cutoff { 0.0 } else { lambda.sqrt() });
    }
    Ok(reassemble(&vectors, &roots))
}

/// `Q diag(d) Q*` for a unitary (or isometric) `Q`.
pub(crate) fn reassemble(q: &ComplexMatrix, d: &[f64]) -> ComplexMatrix {
    let scaled = DMatrix::from_fn(q.rows(), d.len(), |i, j| q.0[(i, j)] * d[j]);
    ComplexMatrix(scaled * q.0.adjoint())
}

/// Minimal-norm least-squares solution of `M x = y`.
///
/// Returns [`Error::Inconsistent`] when the best residual exceeds
/// `tol.residual_rel * ||y||`.
pub fn min_norm_solve(m: &ComplexMatrix, y: &ComplexVector, tol: &Tolerances) -> Result<ComplexVector> {
    min_norm_solve_scaled(m, y, tol, 0.0)
}

/// As [`min_norm_solve`], with the residual judged against `max(||y||, reference)`.
///
/// Right-hand sides that are themselves products (say `A* b`) can be pure
/// rounding noise; `reference` supplies the scale they came from.
pub fn min_norm_solve_scaled(m: &ComplexMatrix, y: &ComplexVector, tol: &Tolerances, reference: f64) -> Result<ComplexVector> {
    if m.rows() != y.dim() {
        return invalid(format!(
            "right-hand side has dimension {}, matrix has {} rows",
            y.dim(),
            m.rows()
        ));
    }
    let y_norm = y.norm();
    if y_norm == 0.0 {
        return Ok(ComplexVector::zeros(m.cols()));
    }
    let decomposition = svd(m)?;
    let x = pinv_apply(&decomposition, y, tol.rank_cutoff_rel);
    let residual = (&(m * &x) - y).norm();
    let scale = y_norm.max(reference);
    if residual > tol.residual_rel * scale {
        return Err(Error::Inconsistent {
            residual: residual / scale,
        });
    }
    Ok(x)
}

/// `V diag(1/sigma) U* y`, truncating singular values below the cutoff.
pub(crate) fn pinv_apply(d: &Svd, y: &ComplexVector, rank_cutoff_rel: f64) -> ComplexVector {
    let sigma_max = d.sigma.first().copied().unwrap_or(0.0);
    let cutoff = rank_cutoff_rel * sigma_max;
    let mut x = DVector::zeros(d.v.rows());
    for (k, &s) in d.sigma.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            break;
        }
        let coeff: Complex64 = d
            .u
            .0
            .column(k)
            .iter()
            .zip(y.0.iter())
            .map(|(u, yi)| u.conj() * yi)
            .sum::<Complex64>()
            / s;
        x += d.v.0.column(k) * coeff;
    }
    ComplexVector(x)
}

/// Whether `y` lies in the range of `M` up to the residual tolerance.
pub fn range_membership(m: &ComplexMatrix, y: &ComplexVector, tol: &Tolerances) -> Result<bool> {
    match min_norm_solve(m, y, tol) {
        Ok(_) => Ok(true),
        Err(Error::Inconsistent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, k, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap()
    }

    #[test]
    fn svd_of_identity_and_diagonal() {
        assert_eq!(svd(&ComplexMatrix::identity(2)).unwrap().sigma, vec![1.0, 1.0]);
        let d = svd(&ComplexMatrix::from_diagonal(&[0.5, 0.0])).unwrap();
        assert!((d.sigma[0] - 0.5).abs() < 1e-15 && d.sigma[1].abs() < 1e-15);
    }

    #[test]
    fn svd_reconstructs_random_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, k) in [(5, 3), (3, 5), (4, 4)] {
            let m = random_matrix(&mut rng, r, k);
            let d = svd(&m).unwrap();
            assert!(d.sigma.windows(2).all(|w| w[0] >= w[1]));
            let us = DMatrix::from_fn(r, d.sigma.len(), |i, j| d.u.0[(i, j)] * d.sigma[j]);
            let rebuilt = us * d.v.0.adjoint();
            let err = (rebuilt - &m.0).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err <= 1e-10 * d.sigma[0], "reconstruction error {err}");
            let utu = d.u.0.adjoint() * &d.u.0;
            let vtv = d.v.0.adjoint() * &d.v.0;
            let eye = DMatrix::<Complex64>::identity(d.sigma.len(), d.sigma.len());
            assert!((utu - &eye).norm() < 1e-12);
            assert!((vtv - &eye).norm() < 1e-12);
        }
    }

    #[test]
    fn svd_rejects_non_finite() {
        let m = ComplexMatrix::from_rows(&[vec![c(f64::NAN, 0.0)]]);
        assert!(matches!(m, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn operator_norm_cases() {
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 2)).unwrap(), 0.0);
        // unitary: scaled DFT matrix of size 3
        let w = std::f64::consts::TAU / 3.0;
        let f = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex64::from_polar(1.0 / 3f64.sqrt(), w * (i * j) as f64)
        })
        .unwrap();
        assert!((operator_norm(&f).unwrap() - 1.0).abs() < 1e-14);
        let shift = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!((operator_norm(&shift).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn operator_norm_dominates_random_unit_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&mut rng, 4, 6);
        let norm = operator_norm(&m).unwrap();
        let mut best: f64 = 0.0;
        for _ in 0..1000 {
            let x = ComplexVector::from_vec(
                (0..6).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
            )
            .unwrap();
            let x = x.scale(c(1.0 / x.norm(), 0.0));
            best = best.max((&m * &x).norm());
        }
        assert!(best <= norm * (1.0 + 1e-12));
        // the top right singular vector attains it
        let d = svd(&m).unwrap();
        assert!(((&m * &d.v.column(0)).norm() - norm).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_examples() {
        let r = psd_sqrt(&ComplexMatrix::from_diagonal(&[0.75, 1.0])).unwrap();
        assert!((r.get(0, 0).re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((r.get(1, 1).re - 1.0).abs() < 1e-15);
        assert!(r.get(0, 1).norm() < 1e-15);

        let z = psd_sqrt(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z.max_abs(), 0.0);

        let a = ComplexMatrix::from_diagonal(&[0.5]);
        let h = &ComplexMatrix::identity(1) - &(&a.adjoint() * &a);
        let r = psd_sqrt(&h).unwrap();
        assert!((r.get(0, 0).re - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn psd_sqrt_rejects_bad_input() {
        let neg = ComplexMatrix::from_diagonal(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&neg), Err(Error::NotPsd { .. })));
        let skew = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(psd_sqrt(&skew), Err(Error::InvalidInput(_))));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(psd_sqrt(&rect), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn psd_sqrt_clamps_rounding_negatives() {
        let h = ComplexMatrix::from_diagonal(&[1.0, -1e-14]);
        let r = psd_sqrt(&h).unwrap();
        assert_eq!(r.get(1, 1).re, 0.0);
    }

    #[test]
    fn psd_sqrt_squares_back_for_random_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 5, 17, 50] {
            let g = random_matrix(&mut rng, n, n / 2 + 1);
            let h = &g * &g.adjoint();
            let r = psd_sqrt(&h).unwrap();
            let err = (&(&r * &r) - &h).frobenius_norm();
            assert!(err <= 1e-10 * h.frobenius_norm(), "n={n}: {err}");
            let skew = (&r - &r.adjoint()).frobenius_norm();
            assert!(skew <= 1e-12 * r.frobenius_norm());
        }
    }

    #[test]
    fn min_norm_solve_examples() {
        let tol = Tolerances::default();
        let m = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let x = min_norm_solve(&m, &ComplexVector::from_real(&[2.0, 0.0]).unwrap(), &tol).unwrap();
        assert_eq!(x.entries(), &[c(2.0, 0.0), c(0.0, 0.0)]);

        match min_norm_solve(&m, &ComplexVector::from_real(&[0.0, 1.0]).unwrap(), &tol) {
            Err(Error::Inconsistent { residual }) => assert!((residual - 1.0).abs() < 1e-15),
            other => panic!("expected inconsistency, got {other:?}"),
        }

        let s = 0.75f64.sqrt();
        let m = ComplexMatrix::from_diagonal(&[s, 0.0, 0.0, 1.0]);
        let x = min_norm_solve(&m, &ComplexVector::from_real(&[s, 0.0, 0.0, 0.0]).unwrap(), &tol).unwrap();
        assert!((&x - &ComplexVector::unit(4, 0)).norm() < 1e-15);
    }

    #[test]
    fn min_norm_solve_dimension_mismatch() {
        let m = ComplexMatrix::identity(2);
        let y = ComplexVector::zeros(3);
        assert!(matches!(
            min_norm_solve(&m, &y, &Tolerances::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn min_norm_solution_is_orthogonal_to_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = Tolerances::default();
        for _ in 0..20 {
            // rank-2 map C^5 -> C^4
            let m = &random_matrix(&mut rng, 4, 2) * &random_matrix(&mut rng, 2, 5);
            let z = ComplexVector::from_vec((0..5).map(|_| c(rng.gen(), rng.gen())).collect()).unwrap();
            let y = &m * &z;
            let x = min_norm_solve(&m, &y, &tol).unwrap();
            let d = svd(&m).unwrap();
            // null vectors: right singular vectors past the rank, completed via full SVD of M*M
            let (vals, vecs) = hermitian_eigen(&(&m.adjoint() * &m), 0.0).unwrap();
            for (k, &lambda) in vals.iter().enumerate() {
                if lambda < 1e-10 * d.sigma[0] * d.sigma[0] {
                    assert!(x.inner(&vecs.column(k)).norm() < 1e-8 * x.norm().max(1.0));
                }
            }
            assert!((&(&m * &x) - &y).norm() <= 1e-10 * y.norm());
        }
    }

    #[test]
    fn range_membership_examples() {
        let tol = Tolerances::default();
        assert!(range_membership(&ComplexMatrix::zeros(2, 2), &ComplexVector::zeros(2), &tol).unwrap());
        assert!(!range_membership(&ComplexMatrix::zeros(1, 1), &ComplexVector::from_real(&[1.0]).unwrap(), &tol).unwrap());
        let s = 0.75f64.sqrt();
        let root = ComplexMatrix::from_diagonal(&[s, 0.0, 0.0, 1.0]);
        assert!(range_membership(&root, &ComplexVector::from_real(&[s, 0.0, 0.0, 0.0]).unwrap(), &tol).unwrap());
    }

    #[test]
    fn tolerances_must_be_in_unit_interval() {
        assert!(Tolerances::new(0.0, 1e-8, 1e-10).is_err());
        assert!(Tolerances::new(1e-12, 1.0, 1e-10).is_err());
        assert!(Tolerances::new(1e-12, 1e-8, 1e-10).is_ok());
    }
}
