//! Seeded random symbols for tests and experiments.
//!
//! Linear parts are built as `U diag(sigma) V*` with Haar-like unitaries so
//! the singular values, and hence boundedness, are under direct control.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{psd_sqrt_relative, ComplexMatrix, ComplexVector};
use crate::symbol::AffineSymbol;

/// Environment variable read by [`SymbolSampler::from_env`].
pub const SEED_ENV: &str = "FOCKNA_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// The seed from `FOCKNA_SEED`, or 42.
pub fn env_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// How a bounded sample places its singular values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedKind {
    /// All singular values in `[0, 0.95]`.
    Contraction,
    /// At least one singular value exactly 1.
    Boundary,
    /// `A` is a partial isometry (singular values 0 or 1).
    PartialIsometry,
    /// `b = 0`, any contraction.
    Linear,
}

/// How an unbounded sample fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnboundedKind {
    /// `||A|| > 1`.
    Expanding,
    /// `||A|| = 1` and `b` has a component along `A zeta` for an isometric direction `zeta`.
    Translating,
}

pub struct SymbolSampler {
    rng: ChaCha8Rng,
}

impl SymbolSampler {
    pub fn new(seed: u64) -> Self {
        SymbolSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn from_env() -> Self {
        Self::new(env_seed())
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn gaussian_vector(&mut self, dim: usize) -> ComplexVector {
        ComplexVector::from_vec((0..dim).map(|_| self.gaussian()).collect()).expect("finite samples")
    }

    /// A point uniformly distributed on the unit sphere of `C^dim`.
    pub fn unit_vector(&mut self, dim: usize) -> ComplexVector {
        loop {
            let g = self.gaussian_vector(dim);
            let r = g.norm();
            if r > 1e-3 {
                return g.scale(Complex64::new(1.0 / r, 0.0));
            }
        }
    }

    /// Haar unitary: QR of a Gaussian matrix with the phases of `R` removed.
    pub fn unitary(&mut self, dim: usize) -> DMatrix<Complex64> {
        let g = DMatrix::from_fn(dim, dim, |_, _| self.gaussian());
        let qr = g.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
        q
    }

    /// `U diag(sigma) V*` of size `m x n`; `sigma` has `min(m, n)` entries.
    pub fn with_singular_values(&mut self, m: usize, n: usize, sigma: &[f64]) -> ComplexMatrix {
        assert_eq!(sigma.len(), m.min(n));
        let u = self.unitary(m);
        let v = self.unitary(n);
        let a = DMatrix::from_fn(m, n, |i, j| {
            sigma
                .iter()
                .enumerate()
                .map(|(k, s)| u[(i, k)] * v[(j, k)].conj() * *s)
                .sum()
        });
        ComplexMatrix::from_dmatrix(a).expect("finite")
    }

    /// A random `b` with `b` in the range of `(I - A A*)^{1/2}`.
    pub fn admissible_translation(&mut self, a: &ComplexMatrix) -> ComplexVector {
        let defect = &ComplexMatrix::identity(a.rows()) - &(a * &a.adjoint());
        let root = psd_sqrt_relative(&defect, 1.0).expect("contraction");
        let g = self.gaussian_vector(a.rows());
        root.checked_mul_vec(&g).expect("dimensions")
    }

    pub fn bounded(&mut self, n: usize, m: usize, kind: BoundedKind) -> AffineSymbol {
        let k = m.min(n);
        let mut sigma: Vec<f64> = match kind {
            BoundedKind::Contraction | BoundedKind::Linear => (0..k).map(|_| self.rng.gen_range(0.0..0.95)).collect(),
            BoundedKind::Boundary => (0..k).map(|_| self.rng.gen_range(0.0..1.0)).collect(),
            BoundedKind::PartialIsometry => (0..k).map(|_| if self.rng.gen_bool(0.5) { 1.0 } else { 0.0 }).collect(),
        };
        if kind == BoundedKind::Boundary {
            sigma[0] = 1.0;
        }
        let a = self.with_singular_values(m, n, &sigma);
        let b = match kind {
            BoundedKind::Linear => ComplexVector::zeros(m),
            _ => self.admissible_translation(&a),
        };
        AffineSymbol::new(a, b).expect("dimensions")
    }

    /// A bounded symbol of a randomly chosen kind.
    pub fn any_bounded(&mut self, n: usize, m: usize) -> AffineSymbol {
        let kind = match self.rng.gen_range(0..10) {
            0..=4 => BoundedKind::Contraction,
            5..=7 => BoundedKind::Boundary,
            8 => BoundedKind::PartialIsometry,
            _ => BoundedKind::Linear,
        };
        self.bounded(n, m, kind)
    }

    pub fn unbounded(&mut self, n: usize, m: usize, kind: UnboundedKind) -> AffineSymbol {
        let k = m.min(n);
        let mut sigma: Vec<f64> = (0..k).map(|_| self.rng.gen_range(0.0..1.0)).collect();
        match kind {
            UnboundedKind::Expanding => {
                sigma[0] = self.rng.gen_range(1.05..2.0);
                let a = self.with_singular_values(m, n, &sigma);
                let b = self.gaussian_vector(m);
                AffineSymbol::new(a, b).expect("dimensions")
            }
            UnboundedKind::Translating => {
                sigma[0] = 1.0;
                let u = self.unitary(m);
                let v = self.unitary(n);
                let a = DMatrix::from_fn(m, n, |i, j| {
                    sigma
                        .iter()
                        .enumerate()
                        .map(|(l, s)| u[(i, l)] * v[(j, l)].conj() * *s)
                        .sum()
                });
                let a = ComplexMatrix::from_dmatrix(a).expect("finite");
                let mut b = self.admissible_translation(&a);
                // A v_1 = u_1 is an isometric image; push b off the admissible set along it
                let c = Complex64::from_polar(self.rng.gen_range(0.2..2.0), self.rng.gen_range(0.0..std::f64::consts::TAU));
                let u1 = ComplexVector::from_vec((0..m).map(|i| u[(i, 0)] * c).collect()).expect("finite");
                b = &b + &u1;
                AffineSymbol::new(a, b).expect("dimensions")
            }
        }
    }

    pub fn any_unbounded(&mut self, n: usize, m: usize) -> AffineSymbol {
        let kind = if self.rng.gen_bool(0.5) {
            UnboundedKind::Expanding
        } else {
            UnboundedKind::Translating
        };
        self.unbounded(n, m, kind)
    }

    /// Dimensions in `1..=max`.
    pub fn dims(&mut self, max: usize) -> (usize, usize) {
        (self.rng.gen_range(1..=max), self.rng.gen_range(1..=max))
    }
}
