//! The Bruck loop on symmetric positive definite matrices.
//!
//! For symmetric positive definite `A` and `B`, the product `AB` factors
//! uniquely as `UP` with `U` orthogonal and `P` symmetric positive definite.
//! The loop operation is `A ⊙ B = P`. `U` comes from a scaled Newton
//! iteration and `P = Uᵀ(AB)`. Algebraically `P` is also `(B A² B)^{1/2}`
//! ([`pd_mul_gram`]), but forming `B A² B` squares the condition number and
//! costs several digits once products are nested, as in the Bol identity.
//!
//! Division has a closed form as well: `A \ B = A⁻¹ (A B² A)^{1/2} A⁻¹`, and
//! `A / B = A ⊙ B⁻¹`.

// `!(x < tol)` is deliberate: a NaN residual must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::identity::{Identity, Term, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("unsupported term: {0}")]
    Unsupported(String),
    #[error("variable {0} is unassigned")]
    Unassigned(Var),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest allowed `|a_ij - a_ji|`.
    pub sym: f64,
    /// Eigenvalue floor for positive definiteness.
    pub pd: f64,
    /// Residual bound for identities.
    pub id: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { sym: 1e-10, pd: 1e-12, id: 1e-8 }
    }
}

impl Tolerances {
    pub fn new(sym: f64, pd: f64, id: f64) -> Result<Self, MatrixError> {
        if [sym, pd, id].iter().all(|t| *t > 0.0 && t.is_finite()) {
            Ok(Tolerances { sym, pd, id })
        } else {
            Err(MatrixError::NumericalBreakdown("tolerances must be positive".into()))
        }
    }
}

/// A symmetric positive definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PDMatrix(DMatrix<f64>);

impl PDMatrix {
    pub fn new(m: DMatrix<f64>, tol: &Tolerances) -> Result<Self, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let asym = (&m - m.transpose()).amax();
        if asym > tol.sym {
            return Err(MatrixError::NotSymmetric(asym));
        }
        let m = symmetrize(m);
        let min = SymmetricEigen::new(m.clone()).eigenvalues.min();
        if !(min > tol.pd) {
            return Err(MatrixError::NotPositiveDefinite(min));
        }
        Ok(PDMatrix(m))
    }

    pub fn identity(dim: usize) -> Self {
        PDMatrix(DMatrix::identity(dim, dim))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self, MatrixError> {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values));
        PDMatrix::new(m, &Tolerances::default())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn inverse(&self) -> Result<PDMatrix, MatrixError> {
        spectral_map(&self.0, |l| 1.0 / l, &Tolerances::default()).map(PDMatrix)
    }

    /// Spectral-norm distance to another matrix of the same size.
    pub fn distance(&self, other: &PDMatrix) -> f64 {
        spectral_norm(&(&self.0 - &other.0))
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// `Q f(Λ) Qᵀ` for the eigendecomposition of a symmetric positive definite `s`.
fn spectral_map(s: &DMatrix<f64>, f: impl Fn(f64) -> f64, tol: &Tolerances) -> Result<DMatrix<f64>, MatrixError> {
    let eig = SymmetricEigen::new(symmetrize(s.clone()));
    let min = eig.eigenvalues.min();
    if !(min > tol.pd) {
        return Err(MatrixError::NumericalBreakdown(format!("eigenvalue {min:e} below floor {:e}", tol.pd)));
    }
    let mapped = eig.eigenvalues.map(f);
    let q = &eig.eigenvectors;
    Ok(symmetrize(q * DMatrix::from_diagonal(&mapped) * q.transpose()))
}

/// Largest singular value, as the root of the top eigenvalue of `mᵀm`.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    (m.transpose() * m).symmetric_eigenvalues().max().max(0.0).sqrt()
}

/// The positive definite square root.
pub fn pd_sqrt(s: &DMatrix<f64>, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    spectral_map(s, f64::sqrt, tol).map(PDMatrix)
}

fn same_dim(a: &PDMatrix, b: &PDMatrix) -> Result<(), MatrixError> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(MatrixError::DimMismatch(a.dim(), b.dim()))
    }
}

/// Positive polar factor of `m`, via the scaled Newton iteration
/// `X ← (ζX + ζ⁻¹X⁻ᵀ)/2` for the orthogonal factor `U`, then `P = sym(Uᵀm)`.
fn polar_positive(m: DMatrix<f64>, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    let breakdown = || MatrixError::NumericalBreakdown("polar iteration hit a singular matrix".into());
    let mut x = m.clone();
    for _ in 0..100 {
        let inv_t = x.clone().try_inverse().ok_or_else(breakdown)?.transpose();
        let zeta = (inv_t.norm() / x.norm()).sqrt();
        let next = (&x * zeta + inv_t / zeta) * 0.5;
        let step = (&next - &x).norm();
        x = next;
        if step <= 1e-15 * x.norm() * 4.0 {
            break;
        }
    }
    let p = symmetrize(x.transpose() * m);
    let min = p.clone().symmetric_eigenvalues().min();
    if !(min > tol.pd) {
        return Err(MatrixError::NumericalBreakdown(format!("eigenvalue {min:e} below floor {:e}", tol.pd)));
    }
    Ok(PDMatrix(p))
}

/// `A ⊙ B`, the positive factor in the polar decomposition of `AB`.
pub fn pd_mul(a: &PDMatrix, b: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    same_dim(a, b)?;
    polar_positive(&a.0 * &b.0, tol)
}

/// `A ⊙ B` computed as `(B A² B)^{1/2}`. Agrees with [`pd_mul`] but squares
/// the condition number of `AB` before taking the root.
pub fn pd_mul_gram(a: &PDMatrix, b: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    same_dim(a, b)?;
    let ab = &a.0 * &b.0;
    pd_sqrt(&(ab.transpose() * ab), tol)
}

/// The unique `X` with `A ⊙ X = B`.
pub fn pd_ldiv(a: &PDMatrix, b: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    same_dim(a, b)?;
    let a_inv = spectral_map(&a.0, |l| 1.0 / l, tol)?;
    // (A B² A)^{1/2} is the positive polar factor of BA.
    let root = polar_positive(&b.0 * &a.0, tol)?;
    Ok(PDMatrix(symmetrize(&a_inv * root.0 * &a_inv)))
}

/// The unique `Y` with `Y ⊙ B = A`.
pub fn pd_rdiv(a: &PDMatrix, b: &PDMatrix, tol: &Tolerances) -> Result<PDMatrix, MatrixError> {
    pd_mul(a, &b.inverse()?, tol)
}

/// Evaluates a term with matrix values for its variables.
pub fn eval_term_numeric(
    t: &Term,
    values: &[Option<PDMatrix>; 6],
    dim: usize,
    tol: &Tolerances,
) -> Result<PDMatrix, MatrixError> {
    let ev = |t: &Term| eval_term_numeric(t, values, dim, tol);
    match t {
        Term::Var(v) => values[v.index()].clone().ok_or(MatrixError::Unassigned(*v)),
        Term::One => Ok(PDMatrix::identity(dim)),
        Term::Mul(a, b) => pd_mul(&ev(a)?, &ev(b)?, tol),
        Term::Ldiv(a, b) => pd_ldiv(&ev(a)?, &ev(b)?, tol),
        Term::Rdiv(a, b) => pd_rdiv(&ev(a)?, &ev(b)?, tol),
        Term::Inv(a) => ev(a)?.inverse(),
    }
}

/// Parameters of the sampling distribution: eigenvalues log-uniform in
/// `[1/kappa, kappa]`, conjugated by a random orthogonal matrix.
pub const DEFAULT_KAPPA: f64 = 10.0;
pub const DEFAULT_SEED: u64 = 0x5eed_b2c0;
pub const DEFAULT_SAMPLES: usize = 500;

/// Haar-distributed orthogonal matrix from the QR factorization of a
/// Gaussian matrix, with the signs of `R`'s diagonal folded into `Q`.
pub fn random_orthogonal<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_pd<R: Rng + ?Sized>(dim: usize, kappa: f64, rng: &mut R) -> PDMatrix {
    let log_k = kappa.ln();
    let spectrum: Vec<f64> = (0..dim).map(|_| rng.random_range(-log_k..=log_k).exp()).collect();
    let q = random_orthogonal(dim, rng);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(spectrum));
    PDMatrix(symmetrize(&q * d * q.transpose()))
}

/// Maximum residual of an identity over seeded random samples at one
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericResidual {
    pub dim: usize,
    pub samples: usize,
    pub max_residual: f64,
    /// Index of the sample attaining the maximum.
    pub worst_sample: usize,
}

/// Evaluates both sides of `id` on `samples` random assignments per
/// dimension and reports the largest spectral-norm residual.
pub fn check_identity_numeric(
    id: &Identity,
    samples: usize,
    dims: &[usize],
    tol: &Tolerances,
    seed: u64,
) -> Result<Vec<NumericResidual>, MatrixError> {
    dims.iter()
        .map(|&dim| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let draws: Vec<[Option<PDMatrix>; 6]> = (0..samples)
                .map(|_| {
                    let mut values: [Option<PDMatrix>; 6] = Default::default();
                    for v in id.vars() {
                        values[v.index()] = Some(random_pd(dim, DEFAULT_KAPPA, &mut rng));
                    }
                    values
                })
                .collect();
            let residuals = draws
                .par_iter()
                .map(|values| {
                    let lhs = eval_term_numeric(id.lhs(), values, dim, tol)?;
                    let rhs = eval_term_numeric(id.rhs(), values, dim, tol)?;
                    Ok(lhs.distance(&rhs))
                })
                .collect::<Result<Vec<f64>, MatrixError>>()?;
            let (worst_sample, max_residual) =
                residuals
                    .iter()
                    .copied()
                    .enumerate()
                    .fold((0, 0.0), |best, (i, r)| if r > best.1 { (i, r) } else { best });
            Ok(NumericResidual { dim, samples, max_residual, worst_sample })
        })
        .collect()
}

/// Largest residual among `I ⊙ A = A`, `A ⊙ I = A`, `A ⊙ A⁻¹ = I`,
/// `A⁻¹ ⊙ A = I` and `A ⊙ (A \ B) = B` over random samples.
pub fn identity_inverse_residual(dim: usize, samples: usize, tol: &Tolerances, seed: u64) -> Result<f64, MatrixError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(PDMatrix, PDMatrix)> = (0..samples)
        .map(|_| (random_pd(dim, DEFAULT_KAPPA, &mut rng), random_pd(dim, DEFAULT_KAPPA, &mut rng)))
        .collect();
    let one = PDMatrix::identity(dim);
    draws
        .par_iter()
        .map(|(a, b)| {
            let a_inv = a.inverse()?;
            let residuals = [
                pd_mul(&one, a, tol)?.distance(a),
                pd_mul(a, &one, tol)?.distance(a),
                pd_mul(a, &a_inv, tol)?.distance(&one),
                pd_mul(&a_inv, a, tol)?.distance(&one),
                pd_mul(a, &pd_ldiv(a, b, tol)?, tol)?.distance(b),
                pd_mul(&pd_rdiv(a, b, tol)?, b, tol)?.distance(a),
            ];
            Ok(residuals.into_iter().fold(0.0, f64::max))
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
}

/// `max ‖(A ⊙ X) ⊙ Y − A ⊙ (X ⊙ Y)‖` over the given pairs.
pub fn left_nucleus_deviation(
    a: &PDMatrix,
    pairs: &[(PDMatrix, PDMatrix)],
    tol: &Tolerances,
) -> Result<f64, MatrixError> {
    pairs
        .par_iter()
        .map(|(x, y)| {
            let lhs = pd_mul(&pd_mul(a, x, tol)?, y, tol)?;
            let rhs = pd_mul(a, &pd_mul(x, y, tol)?, tol)?;
            Ok(lhs.distance(&rhs))
        })
        .try_reduce(|| 0.0, |x, y| Ok(x.max(y)))
}

/// Sampling evidence that `a` is not in the left nucleus: a positive return
/// value exhibits `X`, `Y` that fail to associate with `a`.
pub fn left_nucleus_violation_sampler(a: &PDMatrix, samples: usize, seed: u64) -> Result<f64, MatrixError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (0..samples)
        .map(|_| (random_pd(a.dim(), DEFAULT_KAPPA, &mut rng), random_pd(a.dim(), DEFAULT_KAPPA, &mut rng)))
        .collect();
    left_nucleus_deviation(a, &pairs, &Tolerances::default())
}
