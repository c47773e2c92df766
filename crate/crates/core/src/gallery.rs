//! Built-in symbols: finite-dimensional versions of the classical shift
//! examples on `l^2(N)`, plus a few reference cases.
//!
//! The shifts are truncated so that the identities the examples rely on
//! (`S* e_1 = 0`, `(I - S*S)^{1/2} e_1 = S* b`) hold exactly.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::symbol::AffineSymbol;

/// Right shift `e_k -> e_{k+1}`, `e_dim -> 0`, translated by `e_1`.
pub fn nilpotent_shift(dim: usize) -> Result<AffineSymbol> {
    if dim == 0 {
        return invalid("nilpotent-shift needs dim >= 1");
    }
    let a = ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    AffineSymbol::new(a, ComplexVector::unit(dim, 0))
}

/// Weighted shift `e_1 -> mu e_2`, `e_k -> e_{k+1}` for `1 < k < dim`,
/// `e_dim -> 0`, translated by `(1, sqrt(1 - mu^2)/mu, 0, ...)`.
pub fn weighted_shift(mu: f64, dim: usize) -> Result<AffineSymbol> {
    if !(mu > 0.0 && mu <= 1.0) {
        return invalid(format!("weighted-shift needs 0 < mu <= 1, got {mu}"));
    }
    if dim < 2 {
        return invalid("weighted-shift needs dim >= 2");
    }
    let a = ComplexMatrix::from_fn(dim, dim, |i, j| {
        let w = match (i, j) {
            (1, 0) => mu,
            (i, j) if i == j + 1 => 1.0,
            _ => 0.0,
        };
        Complex64::new(w, 0.0)
    })?;
    let mut b = vec![0.0; dim];
    b[0] = 1.0;
    b[1] = (1.0 - mu * mu).sqrt() / mu;
    AffineSymbol::new(a, ComplexVector::from_real(&b)?)
}

/// Embedding `C^n -> C^{n+1}`, `z -> (z, 0) + e_{n+1}`.
///
/// `A = [I_n; 0]` is an isometry that is not unitary and `A* b = 0`.
pub fn isometry_embedding(n: usize) -> Result<AffineSymbol> {
    if n == 0 {
        return invalid("isometry-embedding needs n >= 1");
    }
    let a = ComplexMatrix::from_fn(n + 1, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    AffineSymbol::new(a, ComplexVector::unit(n + 1, n))
}

pub fn scalar(a: Complex64, b: Complex64) -> Result<AffineSymbol> {
    AffineSymbol::scalar(a, b)
}

pub fn identity(n: usize) -> Result<AffineSymbol> {
    if n == 0 {
        return invalid("identity needs n >= 1");
    }
    Ok(AffineSymbol::identity(n))
}
