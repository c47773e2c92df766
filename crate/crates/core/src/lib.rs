//! Composition operators `C_phi f = f o phi` on Fock spaces, for affine
//! symbols `phi(z) = A z + b` from `C^n` to `C^m`.
//!
//! The crate decides boundedness and compactness, evaluates the operator
//! norm in closed form, tests candidate extremal functions built from
//! reproducing kernels and cross-checks everything against Galerkin
//! compressions onto polynomials of bounded degree.
//!
//! ```
//! use fockna::{analyze, gallery, Tolerances};
//!
//! let sym = gallery::nilpotent_shift(4).unwrap();
//! let report = analyze(&sym, &Tolerances::default()).unwrap();
//! assert!(report.bounded);
//! assert!((report.norm().unwrap() - 0.5f64.exp()).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod gallery;
pub mod kernel;
pub mod linalg;
pub mod polynomial;
pub mod sample;
pub mod schema;
pub mod symbol;
pub mod truncation;

pub use error::{Error, Result};
pub use kernel::{
    apply_adjoint, apply_composition, evaluation_ratio, extremality_report, positivity_checks, sum_kernel_necessary_check,
    CompositionOperator, ExtremalityReport, KernelCombination, KernelTerm, PositivityReport, Side, SumKernelCheck,
};
pub use linalg::{ComplexMatrix, ComplexVector, Tolerances};
pub use polynomial::{MultiIndex, Polynomial};
pub use symbol::{analyze, check_bounded, check_compact, compose_symbols, AffineSymbol, BoundednessVerdict, SymbolReport};
pub use truncation::{convergence_report, galerkin_matrix, truncated_norm, ConvergenceReport, GalerkinMatrix};
