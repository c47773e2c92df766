//! JSON file formats. Complex numbers are two-element arrays `[re, im]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::kernel::{KernelCombination, KernelTerm};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::symbol::{AffineSymbol, SymbolReport};

pub type Pair = [f64; 2];

fn to_c(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn to_pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

pub fn vector_pairs(v: &ComplexVector) -> Vec<Pair> {
    v.entries().iter().map(to_pair).collect()
}

pub fn pairs_vector(p: &[Pair]) -> Result<ComplexVector> {
    ComplexVector::from_vec(p.iter().map(to_c).collect())
}

/// `{"n": 2, "m": 3, "A": [[[re, im], ...], ...], "b": [[re, im], ...]}`;
/// `A` is `m x n` and `m` defaults to `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Pair>>,
    pub b: Vec<Pair>,
}

impl SymbolFile {
    pub fn from_symbol(sym: &AffineSymbol) -> Self {
        let a = sym.linear();
        let rows = (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| to_pair(&a.get(i, j))).collect())
            .collect();
        SymbolFile {
            n: sym.domain_dim(),
            m: Some(sym.codomain_dim()),
            a: rows,
            b: vector_pairs(sym.translation()),
        }
    }

    pub fn to_symbol(&self) -> Result<AffineSymbol> {
        let m = self.m.unwrap_or(self.n);
        if self.n == 0 || m == 0 {
            return invalid("dimensions must be positive");
        }
        if self.a.len() != m {
            return invalid(format!("A has {} rows, expected m = {m}", self.a.len()));
        }
        if let Some(row) = self.a.iter().find(|r| r.len() != self.n) {
            return invalid(format!("A row has {} entries, expected n = {}", row.len(), self.n));
        }
        if self.b.len() != m {
            return invalid(format!("b has {} entries, expected m = {m}", self.b.len()));
        }
        let rows: Vec<Vec<Complex64>> = self.a.iter().map(|r| r.iter().map(to_c).collect()).collect();
        AffineSymbol::new(ComplexMatrix::from_rows(&rows)?, pairs_vector(&self.b)?)
    }

    pub fn parse(text: &str) -> Result<AffineSymbol> {
        let file: SymbolFile = serde_json::from_str(text)
            .map_err(|e| crate::Error::InvalidInput(format!("symbol file: {e}")))?;
        file.to_symbol()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: Pair,
    pub point: Vec<Pair>,
}

/// `{"dim": n, "terms": [{"coeff": [re, im], "point": [[re, im], ...]}]}`
///
/// The optional `log_scale` multiplies every coefficient by `exp(log_scale)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub log_scale: f64,
    pub terms: Vec<TermFile>,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl CombinationFile {
    pub fn from_combination(f: &KernelCombination) -> Self {
        CombinationFile {
            dim: f.dim(),
            log_scale: f.log_scale(),
            terms: f
                .terms()
                .iter()
                .map(|t| TermFile {
                    coeff: to_pair(&t.coeff),
                    point: vector_pairs(&t.point),
                })
                .collect(),
        }
    }

    pub fn to_combination(&self) -> Result<KernelCombination> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let coeff = to_c(&t.coeff);
                if !coeff.re.is_finite() || !coeff.im.is_finite() {
                    return invalid("non-finite coefficient");
                }
                Ok(KernelTerm {
                    coeff,
                    point: pairs_vector(&t.point)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        KernelCombination::with_log_scale(self.dim, self.log_scale, terms)
    }

    pub fn parse(text: &str) -> Result<KernelCombination> {
        let file: CombinationFile = serde_json::from_str(text)
            .map_err(|e| crate::Error::InvalidInput(format!("combination file: {e}")))?;
        file.to_combination()
    }
}

/// Machine-readable form of [`SymbolReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSummary {
    pub norm_a: f64,
    pub bounded: bool,
    pub primal: bool,
    pub dual: bool,
    pub carswell: bool,
    pub compact: bool,
    pub v: Option<Vec<Pair>>,
    pub u: Option<Vec<Pair>>,
    pub w0: Option<Vec<Pair>>,
    pub log_norm: Option<f64>,
    pub norm: Option<f64>,
    pub log_norm_via_v: Option<f64>,
    pub log_norm_via_u: Option<f64>,
    pub log_norm_via_w0: Option<f64>,
    pub extremal_kernel_witness: Option<Vec<Pair>>,
    pub composition_kernel_witness: Option<Vec<Pair>>,
}

impl From<&SymbolReport> for SymbolSummary {
    fn from(r: &SymbolReport) -> Self {
        let vec = |v: &Option<ComplexVector>| v.as_ref().map(vector_pairs);
        SymbolSummary {
            norm_a: r.norm_a,
            bounded: r.bounded,
            primal: r.verdict.primal,
            dual: r.verdict.dual,
            carswell: r.verdict.carswell,
            compact: r.compact,
            v: vec(&r.v),
            u: vec(&r.u),
            w0: vec(&r.w0),
            log_norm: r.log_norm,
            norm: r.norm(),
            log_norm_via_v: r.formulas.map(|f| f.via_v),
            log_norm_via_u: r.formulas.map(|f| f.via_u),
            log_norm_via_w0: r.formulas.map(|f| f.via_w0),
            extremal_kernel_witness: vec(&r.extremal_kernel_witness),
            composition_kernel_witness: vec(&r.composition_kernel_witness),
        }
    }
}
