//! Multivariate complex polynomials with the Fock inner product
//! `<z^a, z^b> = a! [a = b]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::linalg::ComplexVector;
use crate::symbol::AffineSymbol;

/// Exponent vector `a = (a_1, ..., a_n)`.
///
/// Ordered graded-lexicographically: by total degree, then by exponents
/// with `z_1 > z_2 > ... > z_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut e = vec![0; dim];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a! = a_1! ... a_n!`
    pub fn factorial(&self) -> f64 {
        if self.0.iter().all(|&k| k <= 20) {
            self.0.iter().map(|&k| exact_factorial(k) as f64).product()
        } else {
            self.ln_factorial().exp()
        }
    }

    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&k| ln_factorial(k)).sum()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `z^a` at a point.
    pub fn monomial_at(&self, z: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(z)
            .map(|(&k, zi)| zi.powu(k))
            .product()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn exact_factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

fn ln_factorial(k: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0.0; 257];
        for i in 1..t.len() {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    match table.get(k as usize) {
        Some(v) => *v,
        None => table[256] + (257..=k).map(|i| (i as f64).ln()).sum::<f64>(),
    }
}

/// All multi-indices of dimension `dim` and degree at most `degree`, in
/// graded-lexicographic order. There are `C(dim + degree, degree)` of them.
pub fn monomial_basis(dim: usize, degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for total in 0..=degree {
        let mut current = vec![0u32; dim];
        push_compositions(&mut out, &mut current, 0, total);
    }
    out
}

// lexicographically descending compositions of `remaining` into current[pos..]
fn push_compositions(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        push_compositions(out, current, pos + 1, remaining - k);
    }
    current[pos] = 0;
}

/// Number of monomials of degree `<= degree` in `dim` variables.
pub fn basis_size(dim: usize, degree: u32) -> usize {
    // C(dim + degree, dim), computed incrementally to stay exact
    let mut acc: u128 = 1;
    for i in 1..=dim as u128 {
        acc = acc * (degree as u128 + i) / i;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// `sum_a c_a z^a` over `C^dim`.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    pub fn monomial(index: MultiIndex, c: Complex64) -> Self {
        let mut p = Self::zero(index.dim());
        p.add_term(index, c);
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (idx, c) in terms {
            if idx.dim() != dim {
                return invalid(format!("multi-index {idx:?} does not have dimension {dim}"));
            }
            p.add_term(idx, c);
        }
        Ok(p)
    }

    /// `c_0 + sum_j c_j z_j`.
    pub fn affine(constant: Complex64, linear: &[Complex64]) -> Self {
        let dim = linear.len();
        let mut p = Self::constant(dim, constant);
        for (j, &c) in linear.iter().enumerate() {
            p.add_term(MultiIndex::unit(dim, j), c);
        }
        p
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Complex64) {
        debug_assert_eq!(index.dim(), self.dim);
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs.get(index).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Nonzero terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter().filter(|(_, c)| c.norm() != 0.0)
    }

    pub fn degree(&self) -> u32 {
        self.terms().map(|(i, _)| i.degree()).max().unwrap_or(0)
    }

    pub fn evaluate(&self, z: &ComplexVector) -> Result<Complex64> {
        if z.dim() != self.dim {
            return invalid(format!("point has dimension {}, polynomial has {}", z.dim(), self.dim));
        }
        Ok(self.terms().map(|(i, c)| c * i.monomial_at(z.entries())).sum())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), *c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (i, c) in self.terms() {
            out.add_term(i.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.dim);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i.plus(j), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.dim, Complex64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Fock inner product `sum_a p_a conj(q_a) a!`.
    pub fn fock_inner(&self, other: &Polynomial) -> Complex64 {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        self.terms()
            .map(|(i, a)| a * other.coeff(i).conj() * i.factorial())
            .sum()
    }

    pub fn fock_norm(&self) -> f64 {
        self.terms()
            .map(|(i, a)| a.norm_sqr() * i.factorial())
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

/// `p(A z + b)` as a polynomial in the domain variables of `sym`.
pub fn poly_compose_affine(p: &Polynomial, sym: &AffineSymbol) -> Result<Polynomial> {
    if p.dim() != sym.codomain_dim() {
        return invalid(format!(
            "polynomial in {} variables cannot be composed with a map into C^{}",
            p.dim(),
            sym.codomain_dim()
        ));
    }
    let n = sym.domain_dim();
    let a = sym.linear();
    let b = sym.translation();
    let forms: Vec<Polynomial> = (0..sym.codomain_dim())
        .map(|k| {
            let row: Vec<Complex64> = (0..n).map(|j| a.get(k, j)).collect();
            Polynomial::affine(b.get(k), &row)
        })
        .collect();

    let mut powers: Vec<Vec<Polynomial>> = forms.iter().map(|f| vec![Polynomial::constant(n, 1.0.into()), f.clone()]).collect();
    let mut out = Polynomial::zero(n);
    for (index, c) in p.terms() {
        let mut term = Polynomial::constant(n, *c);
        for (k, &e) in index.exponents().iter().enumerate() {
            while powers[k].len() <= e as usize {
                let next = powers[k].last().expect("seeded").mul(&forms[k]);
                powers[k].push(next);
            }
            term = term.mul(&powers[k][e as usize]);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Degree-`degree` truncation of the kernel `K_w`:
/// `sum_{|a| <= d} conj(w)^a z^a / a!`.
pub fn kernel_projection(w: &ComplexVector, degree: u32) -> Polynomial {
    let conj: Vec<Complex64> = w.entries().iter().map(|z| z.conj()).collect();
    let mut p = Polynomial::zero(w.dim());
    for idx in monomial_basis(w.dim(), degree) {
        let c = idx.monomial_at(&conj) / idx.factorial();
        p.add_term(idx, c);
    }
    p
}
