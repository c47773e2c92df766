//! Matrix of `C_phi` on the polynomials of degree at most `d`.
//!
//! Affine composition never raises degree, so the space of polynomials of
//! degree `<= d` is invariant and the compression is an honest restriction.
//! Its spectral norm is a lower bound for `||C_phi||` that increases with `d`.
//!
//! Columns are indexed by the orthonormal monomials `z^b / sqrt(b!)` over the
//! codomain `C^m` and rows by those over the domain `C^n`. Column `b` is
//! built from an earlier column `b - e_k` by multiplying with the affine form
//! `b_k + (A z)_k`, which in orthonormal coordinates only involves
//! `sqrt(a_j + 1)` factors, so no factorials are formed.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector, Tolerances};
use crate::polynomial::{basis_size, monomial_basis, MultiIndex, Polynomial};
use crate::symbol::{analyze, AffineSymbol};

/// Largest basis either side of the matrix may have.
pub const MAX_BASIS: usize = 5000;

/// Matrices with at most this many entries go through a dense SVD.
const DENSE_SVD_ENTRIES: usize = 400 * 400;

/// The compression of `C_phi` to degree `<= degree`, stored by sparse columns.
#[derive(Debug, Clone)]
pub struct GalerkinMatrix {
    degree: u32,
    row_basis: Vec<MultiIndex>,
    col_basis: Vec<MultiIndex>,
    columns: Vec<Vec<(usize, Complex64)>>,
}

impl GalerkinMatrix {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monomials over the domain `C^n` (rows).
    pub fn row_basis(&self) -> &[MultiIndex] {
        &self.row_basis
    }

    /// Monomials over the codomain `C^m` (columns).
    pub fn col_basis(&self) -> &[MultiIndex] {
        &self.col_basis
    }

    pub fn rows(&self) -> usize {
        self.row_basis.len()
    }

    pub fn cols(&self) -> usize {
        self.col_basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map_or(Complex64::new(0.0, 0.0), |(_, v)| *v)
    }

    pub fn column(&self, col: usize) -> &[(usize, Complex64)] {
        &self.columns[col]
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = DMatrix::zeros(self.rows(), self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] = v;
            }
        }
        ComplexMatrix::from_dmatrix(m).expect("finite Galerkin entries")
    }

    /// Leading block for degree `d <= self.degree()`; graded order makes it a prefix.
    pub fn restrict(&self, degree: u32) -> GalerkinMatrix {
        assert!(degree <= self.degree, "cannot restrict to a larger degree");
        let n = self.row_basis.first().map_or(0, MultiIndex::dim);
        let m = self.col_basis.first().map_or(0, MultiIndex::dim);
        let rows = basis_size(n, degree);
        let cols = basis_size(m, degree);
        GalerkinMatrix {
            degree,
            row_basis: self.row_basis[..rows].to_vec(),
            col_basis: self.col_basis[..cols].to_vec(),
            columns: self.columns[..cols]
                .iter()
                .map(|c| c.iter().copied().filter(|(r, _)| *r < rows).collect())
                .collect(),
        }
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows()];
        for (col, &xj) in self.columns.iter().zip(x) {
            if xj.norm_sqr() == 0.0 {
                continue;
            }
            for &(i, v) in col {
                y[i] += v * xj;
            }
        }
        y
    }

    fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|&(i, v)| v.conj() * y[i]).sum())
            .collect()
    }

    /// `M^* y` on coefficient vectors in the orthonormal row basis.
    pub fn adjoint_times(&self, y: &ComplexVector) -> Result<ComplexVector> {
        if y.dim() != self.rows() {
            return Err(Error::InvalidInput(format!(
                "vector has dimension {}, matrix has {} rows",
                y.dim(),
                self.rows()
            )));
        }
        ComplexVector::from_vec(self.apply_adjoint(y.entries()))
    }
}

/// Builds the compression of `C_phi` to polynomials of degree `<= degree`.
pub fn galerkin_matrix(sym: &AffineSymbol, degree: u32) -> Result<GalerkinMatrix> {
    let n = sym.domain_dim();
    let m = sym.codomain_dim();
    for size in [basis_size(n, degree), basis_size(m, degree)] {
        if size > MAX_BASIS {
            return Err(Error::TooLarge { size, cap: MAX_BASIS });
        }
    }
    let row_basis = monomial_basis(n, degree);
    let col_basis = monomial_basis(m, degree);
    let row_pos: HashMap<&MultiIndex, usize> = row_basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let col_pos: HashMap<&MultiIndex, usize> = col_basis.iter().enumerate().map(|(i, a)| (a, i)).collect();

    // raise[j][i] = position of row_basis[i] + e_j, with sqrt(a_j + 1)
    let raise: Vec<Vec<Option<(usize, f64)>>> = (0..n)
        .map(|j| {
            row_basis
                .iter()
                .map(|a| {
                    let up = a.plus(&MultiIndex::unit(n, j));
                    row_pos
                        .get(&up)
                        .map(|&p| (p, (a.exponents()[j] as f64 + 1.0).sqrt()))
                })
                .collect()
        })
        .collect();

    let a = sym.linear();
    let b = sym.translation();
    let zero = Complex64::new(0.0, 0.0);
    let mut columns: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(col_basis.len());
    let mut scratch = vec![zero; row_basis.len()];
    for beta in &col_basis {
        let Some(k) = beta.exponents().iter().position(|&e| e > 0) else {
            columns.push(vec![(0, Complex64::new(1.0, 0.0))]);
            continue;
        };
        let mut parent_idx = beta.exponents().to_vec();
        parent_idx[k] -= 1;
        let parent = &columns[col_pos[&MultiIndex::new(parent_idx)]];
        let scale = 1.0 / (beta.exponents()[k] as f64).sqrt();
        let mut touched: Vec<usize> = Vec::new();
        let mut bump = |pos: usize, val: Complex64, scratch: &mut Vec<Complex64>| {
            if scratch[pos] == zero {
                touched.push(pos);
            }
            scratch[pos] += val;
        };
        for &(i, c) in parent {
            let c = c * scale;
            if b.get(k) != zero {
                bump(i, c * b.get(k), &mut scratch);
            }
            for (j, table) in raise.iter().enumerate() {
                let akj = a.get(k, j);
                if akj == zero {
                    continue;
                }
                let (up, root) = table[i].expect("parent degree below truncation");
                bump(up, c * akj * root, &mut scratch);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut col = Vec::with_capacity(touched.len());
        for pos in touched {
            let v = std::mem::replace(&mut scratch[pos], zero);
            if v != zero {
                col.push((pos, v));
            }
        }
        columns.push(col);
    }
    Ok(GalerkinMatrix {
        degree,
        row_basis,
        col_basis,
        columns,
    })
}

/// Top singular triple `(sigma, left, right)` of the matrix.
fn top_triplet(g: &GalerkinMatrix) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    if g.rows() * g.cols() <= DENSE_SVD_ENTRIES {
        let dense = g.to_dense();
        let d = linalg::svd(&dense).expect("finite matrix");
        let left = d.u.column(0).entries().to_vec();
        let right = d.v.column(0).entries().to_vec();
        return (d.sigma[0], left, right);
    }
    lanczos_top_triplet(g)
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn orthogonalize(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for q in basis {
            let proj: Complex64 = q.iter().zip(x.iter()).map(|(qi, xi)| qi.conj() * xi).sum();
            for (xi, qi) in x.iter_mut().zip(q) {
                *xi -= proj * qi;
            }
        }
    }
}

/// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization,
/// stopped once the top Ritz triple has relative residual below 1e-13.
fn lanczos_top_triplet(g: &GalerkinMatrix) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let max_steps = g.rows().min(g.cols());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..g.cols())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);

    let mut vs: Vec<Vec<Complex64>> = Vec::new();
    let mut us: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut best = (0.0, vec![Complex64::new(0.0, 0.0); g.rows()], v.clone());

    let mut u = g.apply(&v);
    let alpha = norm(&u);
    if alpha == 0.0 {
        // v happened to lie in the kernel; fall back to the dense route
        let dense = linalg::svd(&g.to_dense()).expect("finite matrix");
        return (
            dense.sigma[0],
            dense.u.column(0).entries().to_vec(),
            dense.v.column(0).entries().to_vec(),
        );
    }
    u.iter_mut().for_each(|z| *z /= alpha);
    vs.push(v);
    us.push(u);
    alphas.push(alpha);

    loop {
        let k = alphas.len();
        let check = k >= max_steps || k.is_multiple_of(4);
        if check {
            let Some((sigma, left, right)) = ritz_triplet(g, &alphas, &betas, &us, &vs) else {
                return best;
            };
            let mr = g.apply(&right);
            let res: f64 = mr.iter().zip(&left).map(|(a, b)| (a - b * sigma).norm_sqr()).sum::<f64>()
                + g.apply_adjoint(&left)
                    .iter()
                    .zip(&right)
                    .map(|(a, b)| (a - b * sigma).norm_sqr())
                    .sum::<f64>();
            best = (sigma, left, right);
            if res.sqrt() <= 1e-13 * sigma || k >= max_steps {
                return best;
            }
        }

        let mut v_next = g.apply_adjoint(&us[k - 1]);
        for (x, p) in v_next.iter_mut().zip(&vs[k - 1]) {
            *x -= p * alphas[k - 1];
        }
        orthogonalize(&mut v_next, &vs);
        let beta = norm(&v_next);
        if beta <= 1e-14 * alphas.iter().copied().fold(0.0, f64::max) {
            // invariant subspace found: the Ritz values are exact
            return ritz_triplet(g, &alphas, &betas, &us, &vs).unwrap_or(best);
        }
        v_next.iter_mut().for_each(|z| *z /= beta);
        let mut u_next = g.apply(&v_next);
        for (x, p) in u_next.iter_mut().zip(&us[k - 1]) {
            *x -= p * beta;
        }
        orthogonalize(&mut u_next, &us);
        let alpha = norm(&u_next);
        betas.push(beta);
        vs.push(v_next);
        if alpha == 0.0 {
            alphas.push(0.0);
            us.push(vec![Complex64::new(0.0, 0.0); g.rows()]);
            return ritz_triplet(g, &alphas, &betas, &us, &vs).unwrap_or(best);
        }
        u_next.iter_mut().for_each(|z| *z /= alpha);
        us.push(u_next);
        alphas.push(alpha);
    }
}

/// Top singular triple of the current bidiagonal, lifted back to full vectors.
fn ritz_triplet(
    g: &GalerkinMatrix,
    alphas: &[f64],
    betas: &[f64],
    us: &[Vec<Complex64>],
    vs: &[Vec<Complex64>],
) -> Option<(f64, Vec<Complex64>, Vec<Complex64>)> {
    let k = alphas.len().min(vs.len());
    if k == 0 {
        return None;
    }
    let b = ComplexMatrix::from_fn(k, k, |i, j| {
        let x = if i == j {
            alphas[i]
        } else if j == i + 1 && i < betas.len() {
            betas[i]
        } else {
            0.0
        };
        Complex64::new(x, 0.0)
    })
    .ok()?;
    let d = linalg::svd(&b).ok()?;
    let sigma = d.sigma[0];
    let ul = d.u.column(0);
    let vr = d.v.column(0);
    let mut left = vec![Complex64::new(0.0, 0.0); g.rows()];
    let mut right = vec![Complex64::new(0.0, 0.0); g.cols()];
    for i in 0..k {
        for (l, x) in left.iter_mut().zip(&us[i]) {
            *l += x * ul.get(i);
        }
        for (r, x) in right.iter_mut().zip(&vs[i]) {
            *r += x * vr.get(i);
        }
    }
    Some((sigma, left, right))
}

/// Spectral norm of the degree-`degree` compression.
///
/// For unbounded symbols the matrix still exists and the value grows without
/// bound in `degree`.
pub fn truncated_norm(sym: &AffineSymbol, degree: u32) -> Result<f64> {
    Ok(matrix_norm(&galerkin_matrix(sym, degree)?))
}

/// Spectral norm of an assembled compression.
pub fn matrix_norm(g: &GalerkinMatrix) -> f64 {
    top_triplet(g).0
}

fn to_polynomial(basis: &[MultiIndex], coeffs: &[Complex64]) -> Polynomial {
    // make the first significant coefficient real and positive
    let phase = coeffs
        .iter()
        .find(|z| z.norm() > 1e-8)
        .map_or(Complex64::new(1.0, 0.0), |z| z.conj() / z.norm());
    let dim = basis.first().map_or(1, MultiIndex::dim);
    let mut p = Polynomial::zero(dim);
    for (idx, &c) in basis.iter().zip(coeffs) {
        p.add_term(idx.clone(), c * phase / idx.factorial().sqrt());
    }
    p
}

/// Top right singular vector as a unit-norm polynomial over the codomain:
/// approximates a function at which `C_phi` attains its norm.
pub fn truncated_top_vector(sym: &AffineSymbol, degree: u32) -> Result<Polynomial> {
    let g = galerkin_matrix(sym, degree)?;
    let (_, _, right) = top_triplet(&g);
    Ok(to_polynomial(g.col_basis(), &right))
}

/// Top left singular vector as a unit-norm polynomial over the domain:
/// approximates a function at which `C_phi*` attains its norm.
pub fn truncated_top_left_vector(sym: &AffineSymbol, degree: u32) -> Result<Polynomial> {
    let g = galerkin_matrix(sym, degree)?;
    let (_, left, _) = top_triplet(&g);
    Ok(to_polynomial(g.row_basis(), &left))
}

/// Coefficients of a polynomial in the orthonormal basis `z^a / sqrt(a!)`.
pub fn orthonormal_coefficients(p: &Polynomial, basis: &[MultiIndex]) -> Result<ComplexVector> {
    ComplexVector::from_vec(basis.iter().map(|a| p.coeff(a) * a.factorial().sqrt()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub d: u32,
    pub truncated_norm: f64,
    pub exact_norm: Option<f64>,
    pub relative_gap: Option<f64>,
}

/// Truncated norms for `d = 0..=d_max` next to the closed-form norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn final_gap(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.relative_gap)
    }

    /// Truncated norms never decrease (up to `slack` relative).
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].truncated_norm >= w[0].truncated_norm * (1.0 - slack))
    }

    /// Every truncated norm stays below the exact norm (up to `slack` relative).
    pub fn is_bounded_by_exact(&self, slack: f64) -> bool {
        self.rows
            .iter()
            .all(|r| r.exact_norm.is_none_or(|e| r.truncated_norm <= e * (1.0 + slack)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,truncated_norm,exact_norm,relative_gap\n");
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.17e}"));
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.17e},{},{}\n",
                r.d,
                r.truncated_norm,
                opt(r.exact_norm),
                opt(r.relative_gap)
            ));
        }
        out
    }
}

pub fn convergence_report(sym: &AffineSymbol, d_max: u32) -> Result<ConvergenceReport> {
    let exact = analyze(sym, &Tolerances::default())?.norm();
    let full = galerkin_matrix(sym, d_max)?;
    let rows = (0..=d_max)
        .map(|d| {
            let t = matrix_norm(&full.restrict(d));
            ConvergenceRow {
                d,
                truncated_norm: t,
                exact_norm: exact,
                relative_gap: exact.map(|e| (e - t) / e),
            }
        })
        .collect();
    Ok(ConvergenceReport { rows })
}
