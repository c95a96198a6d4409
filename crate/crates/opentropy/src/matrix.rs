//! Dense complex Hermitian matrices, spectral calculus and the Loewner order.
//!
//! Everything downstream (entropy functionals, inequality suites) is built on
//! the primitives here: eigendecomposition, `f(H)` via spectral calculus,
//! real powers `H^q`, the sandwich `M X M` and PSD comparison of slacks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ScalarFunction;

/// Tolerances used throughout; `tol_eig` for numerical identities,
/// `tol_order` for Loewner verdicts, `eig_floor` for "strictly positive".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub tol_eig: f64,
    pub tol_order: f64,
    pub eig_floor: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            tol_eig: 1e-10,
            tol_order: 1e-8,
            eig_floor: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol_eig <= 0.0 || self.tol_order <= 0.0 || self.eig_floor <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "tolerance",
                value: self.tol_eig.min(self.tol_order).min(self.eig_floor),
                lo: f64::MIN_POSITIVE,
                hi: f64::INFINITY,
            });
        }
        if self.tol_eig > self.tol_order {
            return Err(Error::ParameterOutOfRange {
                name: "tol_eig",
                value: self.tol_eig,
                lo: 0.0,
                hi: self.tol_order,
            });
        }
        Ok(())
    }

    /// `tol_order` override from the environment, used by the CLI.
    pub fn with_order_tol(mut self, tol: f64) -> Self {
        self.tol_order = tol;
        self
    }
}

/// Hermiticity tolerance accepted at construction, relative to the norm.
const HERMITICITY_TOL: f64 = 1e-8;

/// A dense complex Hermitian matrix. The invariant `H = H*` is enforced at
/// construction (within tolerance) and then the matrix is symmetrized exactly,
/// so entries always satisfy `h[i][j] == conj(h[j][i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Validates hermiticity of `m` and symmetrizes exactly.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                found: m.ncols(),
            });
        }
        let deviation = (&m - m.adjoint()).norm();
        let tolerance = HERMITICITY_TOL * m.norm().max(1.0);
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrizes `m <- (m + m*)/2` without a hermiticity check. Used for
    /// composite results whose drift is pure floating-point noise.
    pub(crate) fn symmetrize(m: DMatrix<Complex64>) -> Self {
        let sym = (&m + m.adjoint()).scale(0.5);
        HermitianMatrix { data: sym }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix {
            data: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix {
            data: DMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let v: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        HermitianMatrix {
            data: DMatrix::from_diagonal(&DVector::from_vec(v)),
        }
    }

    pub fn scalar(value: f64) -> Self {
        Self::from_diagonal(&[value])
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn raw(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_raw(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(HermitianMatrix {
            data: &self.data + &other.data,
        })
    }

    pub fn subtract(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(HermitianMatrix {
            data: &self.data - &other.data,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianMatrix {
            data: self.data.scale(c),
        }
    }

    /// `self + c*I`.
    pub fn shift(&self, c: f64) -> Self {
        let mut data = self.data.clone();
        for i in 0..data.nrows() {
            data[(i, i)] += Complex64::new(c, 0.0);
        }
        HermitianMatrix { data }
    }

    pub fn trace(&self) -> f64 {
        self.data.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let decomp = spectral_decompose(self)?;
        Ok(decomp.eigenvalues[0])
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        let decomp = spectral_decompose(self)?;
        Ok(decomp.eigenvalues[decomp.eigenvalues.len() - 1])
    }

    /// Scalar value of a 1x1 matrix.
    pub fn as_scalar(&self) -> Option<f64> {
        if self.dim() == 1 {
            Some(self.data[(0, 0)].re)
        } else {
            None
        }
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// Eigendecomposition `H = U diag(eigenvalues) U*`, eigenvalues ascending and
/// eigenvectors stored as the columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    /// `U diag(g(lambda_i)) U*`, the engine of all matrix functions.
    pub fn map_eigenvalues(&self, g: impl Fn(f64) -> f64) -> HermitianMatrix {
        let d = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for j in 0..d {
            let v = Complex64::new(g(self.eigenvalues[j]), 0.0);
            for i in 0..d {
                scaled[(i, j)] *= v;
            }
        }
        HermitianMatrix::symmetrize(&scaled * self.eigenvectors.adjoint())
    }

    pub fn reconstruction_error(&self, h: &HermitianMatrix) -> f64 {
        self.map_eigenvalues(|x| x)
            .subtract(h)
            .map(|d| d.frobenius_norm())
            .unwrap_or(f64::INFINITY)
    }

    pub fn unitarity_error(&self) -> f64 {
        let d = self.eigenvectors.nrows();
        (self.eigenvectors.adjoint() * &self.eigenvectors - DMatrix::<Complex64>::identity(d, d))
            .norm()
    }
}

const EIG_MAX_ITER: usize = 10_000;

/// Dense Hermitian eigendecomposition with eigenvalues sorted ascending.
pub fn spectral_decompose(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let eig = nalgebra::SymmetricEigen::try_new(h.data.clone(), f64::EPSILON, EIG_MAX_ITER)
        .ok_or(Error::IterationLimit {
            what: "symmetric eigensolver",
            limit: EIG_MAX_ITER,
        })?;
    let d = h.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = DVector::from_iterator(d, order.iter().map(|&i| eig.eigenvalues[i]));
    let eigenvectors =
        DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>());
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Spectral calculus `f(H) = U diag(f(lambda_i)) U*`. Every eigenvalue must
/// lie in the domain of `f`.
pub fn apply_function(h: &HermitianMatrix, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let decomp = spectral_decompose(h)?;
    check_domain(&decomp.eigenvalues, f)?;
    Ok(decomp.map_eigenvalues(|x| f.eval(x)))
}

pub(crate) fn check_domain(eigenvalues: &DVector<f64>, f: &ScalarFunction) -> Result<()> {
    let floor = f.domain_floor();
    for &lambda in eigenvalues.iter() {
        if lambda < floor || !f.eval(lambda).is_finite() {
            return Err(Error::DomainViolation {
                function: f.name(),
                eigenvalue: lambda,
                floor,
            });
        }
    }
    Ok(())
}

/// Real matrix power `H^q`. Non-integer exponents require `H` strictly
/// positive (min eigenvalue at or above `eig_floor`).
pub fn matrix_power(h: &HermitianMatrix, q: f64, tol: &ToleranceConfig) -> Result<HermitianMatrix> {
    if q == 0.0 {
        return Ok(HermitianMatrix::identity(h.dim()));
    }
    if q == 1.0 {
        return Ok(h.clone());
    }
    let decomp = spectral_decompose(h)?;
    let integral = q >= 0.0 && q.fract() == 0.0;
    if !integral {
        let min_eig = decomp.eigenvalues[0];
        if min_eig < tol.eig_floor {
            return Err(Error::NotStrictlyPositive {
                min_eig,
                floor: tol.eig_floor,
            });
        }
    }
    Ok(decomp.map_eigenvalues(|x| x.powf(q)))
}

/// The sandwich `M X M` for Hermitian `M`, re-hermitized.
pub fn conjugate(m: &HermitianMatrix, x: &HermitianMatrix) -> Result<HermitianMatrix> {
    m.check_dim(x)?;
    Ok(HermitianMatrix::symmetrize(&m.data * &x.data * &m.data))
}

/// Outcome of a Loewner comparison `X <= Y`, decided from the slack `Y - X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub holds: bool,
    pub slack_min_eig: f64,
    pub slack_norm: f64,
    pub tolerance_used: f64,
}

/// Loewner comparison: `X <= Y` iff the slack `Y - X` is PSD up to a relative
/// tolerance. Returns the verdict together with the slack matrix.
pub fn loewner_leq(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    tol: &ToleranceConfig,
) -> Result<(OrderVerdict, HermitianMatrix)> {
    let slack = y.subtract(x)?;
    let verdict = psd_verdict(&slack, tol)?;
    Ok((verdict, slack))
}

/// Verdict for "is this slack matrix PSD" with the relative tolerance rule
/// `slack_min_eig >= -tol_order * max(1, ||slack||_F)`.
pub fn psd_verdict(slack: &HermitianMatrix, tol: &ToleranceConfig) -> Result<OrderVerdict> {
    let slack_min_eig = slack.min_eigenvalue()?;
    let slack_norm = slack.frobenius_norm();
    let tolerance_used = tol.tol_order;
    Ok(OrderVerdict {
        holds: slack_min_eig >= -tolerance_used * slack_norm.max(1.0),
        slack_min_eig,
        slack_norm,
        tolerance_used,
    })
}

/// Wire format for matrices: row-major real and imaginary parts; `im`
/// defaults to zero so real symmetric input is accepted as-is.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(h: &HermitianMatrix) -> Self {
        let d = h.dim();
        let re = (0..d)
            .map(|i| (0..d).map(|j| h.data[(i, j)].re).collect())
            .collect();
        let im: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| h.data[(i, j)].im).collect())
            .collect();
        let all_real = im.iter().all(|row| row.iter().all(|&x| x == 0.0));
        MatrixJson {
            dim: d,
            re,
            im: if all_real { None } else { Some(im) },
        }
    }

    pub fn to_matrix(&self) -> Result<HermitianMatrix> {
        let d = self.dim;
        let check_shape = |rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: rows.len(),
                });
            }
            Ok(())
        };
        check_shape(&self.re)?;
        if let Some(im) = &self.im {
            check_shape(im)?;
        }
        let m = DMatrix::from_fn(d, d, |i, j| {
            let re = self.re[i][j];
            let im = self.im.as_ref().map(|im| im[i][j]).unwrap_or(0.0);
            Complex64::new(re, im)
        });
        HermitianMatrix::new(m)
    }
}
