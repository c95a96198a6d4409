//! Seeded generators for all constrained random objects the suites consume.
//!
//! Every trial draws from its own ChaCha stream keyed by
//! `(master_seed, suite_id, trial_index)`, so instances are reproducible in
//! any execution order and under any thread count.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::entropy::{natural_power_mean, OperatorTuple, PositiveMapDescriptor};
use crate::error::{Error, Result};
use crate::matrix::{loewner_leq, matrix_power, spectral_decompose, HermitianMatrix, ToleranceConfig};

/// Parameters of a generator invocation; the per-trial stream seed is a hash
/// of `(master_seed, suite_id, trial_index)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub master_seed: u64,
    pub dim: usize,
    pub n: usize,
    pub eig_range: (f64, f64),
    pub trial_index: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Stable per-trial seed, independent of execution order.
pub fn trial_seed(master_seed: u64, suite_id: &str, trial_index: u64) -> u64 {
    let h = fnv1a(suite_id.as_bytes());
    splitmix64(splitmix64(master_seed ^ h) ^ trial_index)
}

pub fn trial_rng(master_seed: u64, suite_id: &str, trial_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master_seed, suite_id, trial_index))
}

/// Complex Gaussian (Ginibre) matrix, entries N(0,1) + i N(0,1).
pub fn random_ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let g = random_ginibre(dim, dim, rng);
    let (mut q, r) = g.qr().unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

fn uniform_in(range: (f64, f64), rng: &mut impl Rng) -> f64 {
    if range.1 > range.0 {
        rng.random_range(range.0..range.1)
    } else {
        range.0
    }
}

/// Random Hermitian positive definite matrix `U diag(lambda) U*` with
/// eigenvalues uniform in `eig_range` and Haar unitary `U`.
pub fn random_hpd(dim: usize, eig_range: (f64, f64), rng: &mut impl Rng) -> HermitianMatrix {
    let u = random_unitary(dim, rng);
    let eigs: Vec<f64> = (0..dim).map(|_| uniform_in(eig_range, rng)).collect();
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        eigs.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    HermitianMatrix::symmetrize(&u * d * u.adjoint())
}

/// Random Hermitian (possibly indefinite) matrix with eigenvalues uniform in
/// `eig_range`, which may include negative values.
pub fn random_hermitian(dim: usize, eig_range: (f64, f64), rng: &mut impl Rng) -> HermitianMatrix {
    random_hpd(dim, eig_range, rng)
}

const RESOLUTION_MAX_ATTEMPTS: usize = 100;

/// Tuple of strictly positive matrices summing to the identity, built by
/// congruence normalization `A_j = S^{-1/2} X_j S^{-1/2}` with `S = sum X_j`.
pub fn random_resolution_of_identity(
    n: usize,
    dim: usize,
    rng: &mut impl Rng,
    tol: &ToleranceConfig,
) -> Result<OperatorTuple> {
    for _ in 0..RESOLUTION_MAX_ATTEMPTS {
        let xs: Vec<HermitianMatrix> = (0..n).map(|_| random_hpd(dim, (0.5, 2.0), rng)).collect();
        if let Ok(tuple) = normalize_to_resolution(&xs, tol) {
            return Ok(tuple);
        }
    }
    Err(Error::DegenerateInstance {
        attempts: RESOLUTION_MAX_ATTEMPTS,
    })
}

/// Congruence-normalizes arbitrary strictly positive `xs` into a resolution
/// of identity. Fails if a normalized entry drops below the eigenvalue floor.
pub fn normalize_to_resolution(
    xs: &[HermitianMatrix],
    tol: &ToleranceConfig,
) -> Result<OperatorTuple> {
    let dim = xs[0].dim();
    let mut s = HermitianMatrix::zeros(dim);
    for x in xs {
        s = s.add(x)?;
    }
    let s_inv_half = matrix_power(&s, -0.5, tol)?;
    let entries: Vec<HermitianMatrix> = xs
        .iter()
        .map(|x| crate::matrix::conjugate(&s_inv_half, x))
        .collect::<Result<_>>()?;
    let tuple = OperatorTuple::new(entries, tol)?;
    debug_assert!(tuple.sums_to_identity());
    Ok(tuple)
}

/// The uniform resolution `A_j = I/n`, the equality case of the entropy
/// inequalities.
pub fn uniform_resolution(n: usize, dim: usize, tol: &ToleranceConfig) -> OperatorTuple {
    let entries = vec![HermitianMatrix::identity(dim).scale(1.0 / n as f64); n];
    OperatorTuple::new(entries, tol).expect("uniform resolution is valid")
}

/// Nonnegative square matrix with unit row and column sums.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoublyStochasticMatrix {
    pub entries: Vec<Vec<f64>>,
}

impl DoublyStochasticMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(n: usize) -> Self {
        DoublyStochasticMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    /// Max deviation of any row or column sum from 1.
    pub fn marginal_error(&self) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let row: f64 = self.entries[i].iter().sum();
            worst = worst.max((row - 1.0).abs());
        }
        for j in 0..n {
            let col: f64 = (0..n).map(|i| self.entries[i][j]).sum();
            worst = worst.max((col - 1.0).abs());
        }
        worst
    }
}

/// Point on the probability simplex via normalized exponentials.
pub fn random_simplex(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -rng.random_range(0.0..1.0_f64).max(1e-300).ln()).collect();
    let s: f64 = v.iter().sum();
    for x in &mut v {
        *x /= s;
    }
    v
}

/// Simplex point with a per-coordinate floor, keeping weight-function
/// denominators bounded away from zero.
pub fn random_simplex_floored(n: usize, floor: f64, rng: &mut impl Rng) -> Vec<f64> {
    let base = random_simplex(n, rng);
    let free = 1.0 - n as f64 * floor;
    base.iter().map(|&x| floor + free * x).collect()
}

/// Birkhoff-form doubly stochastic matrix: convex combination of `k` random
/// permutation matrices with random simplex weights. Row/column sums are
/// exact up to rounding, no iteration involved.
pub fn random_doubly_stochastic(n: usize, k: usize, rng: &mut impl Rng) -> DoublyStochasticMatrix {
    let weights = random_simplex(k, rng);
    let mut entries = vec![vec![0.0; n]; n];
    for &w in &weights {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            entries[i][j] += w;
        }
    }
    DoublyStochasticMatrix { entries }
}

/// Discrete weight function: nonnegative kernel `omega` coupling probability
/// vectors `mu` (length m) and `lambda` (length n) through
/// `sum_i omega(i,j) mu_i = 1` and `sum_j omega(i,j) lambda_j = 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightFunction {
    pub mu: Vec<f64>,
    pub lambda: Vec<f64>,
    pub omega: Vec<Vec<f64>>,
}

impl WeightFunction {
    pub fn m(&self) -> usize {
        self.mu.len()
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// The trivial weight function `omega == 1` (independent coupling).
    pub fn trivial(mu: Vec<f64>, lambda: Vec<f64>) -> Self {
        let omega = vec![vec![1.0; lambda.len()]; mu.len()];
        WeightFunction { mu, lambda, omega }
    }

    /// Weight function `omega(i,j) = n * a_ij` induced by a doubly stochastic
    /// matrix under uniform mu = lambda = 1/n.
    pub fn from_doubly_stochastic(ds: &DoublyStochasticMatrix) -> Self {
        let n = ds.n();
        let uniform = vec![1.0 / n as f64; n];
        let omega = ds
            .entries
            .iter()
            .map(|row| row.iter().map(|&x| n as f64 * x).collect())
            .collect();
        WeightFunction {
            mu: uniform.clone(),
            lambda: uniform,
            omega,
        }
    }

    /// Max violation of the two marginal constraints.
    pub fn constraint_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.n() {
            let s: f64 = (0..self.m()).map(|i| self.omega[i][j] * self.mu[i]).sum();
            worst = worst.max((s - 1.0).abs());
        }
        for i in 0..self.m() {
            let s: f64 = (0..self.n()).map(|j| self.omega[i][j] * self.lambda[j]).sum();
            worst = worst.max((s - 1.0).abs());
        }
        worst
    }

    /// Pointwise convex combination `(1-t) self + t other`; a weight function
    /// again whenever both share the same (mu, lambda).
    pub fn interpolate(&self, other: &WeightFunction, t: f64) -> WeightFunction {
        let omega = self
            .omega
            .iter()
            .zip(&other.omega)
            .map(|(r1, r2)| {
                r1.iter()
                    .zip(r2)
                    .map(|(&a, &b)| (1.0 - t) * a + t * b)
                    .collect()
            })
            .collect();
        WeightFunction {
            mu: self.mu.clone(),
            lambda: self.lambda.clone(),
            omega,
        }
    }
}

const SINKHORN_THRESHOLD: f64 = 1e-12;
const SINKHORN_MAX_ITER: usize = 10_000;

/// Scales a positive matrix to prescribed row sums `mu` and column sums
/// `lambda` by alternating normalization.
pub fn sinkhorn(
    mut p: Vec<Vec<f64>>,
    mu: &[f64],
    lambda: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let m = mu.len();
    let n = lambda.len();
    for iter in 0..SINKHORN_MAX_ITER {
        for (i, row) in p.iter_mut().enumerate() {
            let s: f64 = row.iter().sum();
            let c = mu[i] / s;
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        for j in 0..n {
            let s: f64 = (0..m).map(|i| p[i][j]).sum();
            let c = lambda[j] / s;
            for row in p.iter_mut() {
                row[j] *= c;
            }
        }
        let residual = (0..m)
            .map(|i| (p[i].iter().sum::<f64>() - mu[i]).abs())
            .fold(0.0_f64, f64::max);
        if residual <= SINKHORN_THRESHOLD {
            let _ = iter;
            return Ok(p);
        }
    }
    let residual = (0..m)
        .map(|i| (p[i].iter().sum::<f64>() - mu[i]).abs())
        .fold(0.0_f64, f64::max);
    Err(Error::SinkhornNonConvergence {
        iterations: SINKHORN_MAX_ITER,
        residual,
        threshold: SINKHORN_THRESHOLD,
    })
}

const SIMPLEX_FLOOR: f64 = 1e-3;

/// Random weight function: draws floored simplex vectors mu, lambda, Sinkhorn
/// scales a positive matrix to a coupling P with those marginals and returns
/// `omega(i,j) = P[i][j] / (mu_i lambda_j)`.
pub fn random_weight_function(m: usize, n: usize, rng: &mut impl Rng) -> Result<WeightFunction> {
    let mu = random_simplex_floored(m, SIMPLEX_FLOOR / m as f64, rng);
    let lambda = random_simplex_floored(n, SIMPLEX_FLOOR / n as f64, rng);
    let w: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(0.5..1.5)).collect())
        .collect();
    let p = sinkhorn(w, &mu, &lambda)?;
    let omega = (0..m)
        .map(|i| (0..n).map(|j| p[i][j] / (mu[i] * lambda[j])).collect())
        .collect();
    Ok(WeightFunction { mu, lambda, omega })
}

/// Second weight function over the same probability vectors as `base`, so
/// the two can be interpolated pointwise.
pub fn random_weight_function_matching(
    base: &WeightFunction,
    rng: &mut impl Rng,
) -> Result<WeightFunction> {
    let (m, n) = (base.m(), base.n());
    let w: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(0.5..1.5)).collect())
        .collect();
    let p = sinkhorn(w, &base.mu, &base.lambda)?;
    let omega = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| p[i][j] / (base.mu[i] * base.lambda[j]))
                .collect()
        })
        .collect();
    Ok(WeightFunction {
        mu: base.mu.clone(),
        lambda: base.lambda.clone(),
        omega,
    })
}

/// Random normalized positive map of the given kind. For `kraus`, the `k`
/// blocks come from QR-orthonormalizing a `(k*dim_in) x dim_out` Ginibre
/// matrix, so `sum_k V_k* V_k = I_out` up to rounding.
pub fn random_positive_map(
    kind: &str,
    dim_in: usize,
    dim_out: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<PositiveMapDescriptor> {
    match kind {
        "identity" => {
            if dim_in != dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_in,
                    found: dim_out,
                });
            }
            Ok(PositiveMapDescriptor::Identity { dim: dim_in })
        }
        "depolarizing" => {
            if dim_in != dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_in,
                    found: dim_out,
                });
            }
            Ok(PositiveMapDescriptor::Depolarizing { dim: dim_in })
        }
        "compression" => {
            if dim_in < dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_out,
                    found: dim_in,
                });
            }
            let g = random_ginibre(dim_in, dim_out, rng);
            let (q, _) = g.qr().unpack();
            Ok(PositiveMapDescriptor::Compression {
                isometry: q.columns(0, dim_out).into_owned(),
            })
        }
        "kraus" => {
            if k == 0 || k * dim_in < dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_out,
                    found: k * dim_in,
                });
            }
            let g = random_ginibre(k * dim_in, dim_out, rng);
            let (q, _) = g.qr().unpack();
            let q = q.columns(0, dim_out).into_owned();
            let operators = (0..k)
                .map(|t| q.rows(t * dim_in, dim_in).into_owned())
                .collect();
            Ok(PositiveMapDescriptor::Kraus { operators })
        }
        other => Err(Error::InvalidKind(other.to_string())),
    }
}

/// Contractions `C_1..C_n` with `sum_j C_j* C_j <= I`, built by scaling
/// Ginibre blocks to operator norm at most `1/sqrt(n)`.
pub fn random_contraction_set(
    n: usize,
    dim: usize,
    rng: &mut impl Rng,
) -> Vec<DMatrix<Complex64>> {
    (0..n)
        .map(|_| {
            let g = random_ginibre(dim, dim, rng);
            let gram = HermitianMatrix::symmetrize(g.adjoint() * &g);
            let top = spectral_decompose(&gram)
                .expect("gram eigendecomposition")
                .eigenvalues
                .max()
                .max(f64::MIN_POSITIVE);
            let rho: f64 = rng.random_range(0.5..0.99);
            g.scale(rho / (n as f64).sqrt() / top.sqrt())
        })
        .collect()
}

/// Acceptance bookkeeping for the rejection sampler.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RejectionStats {
    pub attempts: usize,
    pub accepted: usize,
}

pub const THM28_DEFAULT_BUDGET: usize = 1000;

/// Rejection sampler for pairs satisfying the joint hypotheses
/// `A natural_{p-2} B <= I` and `B^2 <= A^2` (p in [0,1]).
///
/// Commuting analysis pins the feasible region to spectra of `A` inside
/// (0, 1]: with `B = A^e` both constraints reduce to `1 < e <= (3-p)/(2-p)`.
/// The sampler draws such a pair and applies a small congruence perturbation
/// to leave the commuting family, then re-verifies both constraints.
pub fn generate_thm28_pair(
    dim: usize,
    p: f64,
    rng: &mut impl Rng,
    tol: &ToleranceConfig,
    max_attempts: usize,
) -> Result<(HermitianMatrix, HermitianMatrix, RejectionStats)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let e_max = (3.0 - p) / (2.0 - p);
    for attempt in 1..=max_attempts {
        let a_hi: f64 = rng.random_range(0.55..0.95);
        let a = random_hpd(dim, (0.5 * a_hi, a_hi), rng);
        let e: f64 = rng.random_range(1.0..e_max);
        // interior exponent leaves margin for the perturbation
        let e = 1.0 + 0.8 * (e - 1.0);
        let base = matrix_power(&a, e, tol)?;
        let eps: f64 = rng.random_range(0.0..0.05);
        let g = random_ginibre(dim, dim, rng).scale(eps / (dim as f64));
        let m = DMatrix::<Complex64>::identity(dim, dim) + g;
        let b = HermitianMatrix::symmetrize(&m * base.raw() * m.adjoint());

        let ok = verify_thm28_hypotheses(&a, &b, p, tol).unwrap_or(false);
        if ok {
            return Ok((
                a,
                b,
                RejectionStats {
                    attempts: attempt,
                    accepted: 1,
                },
            ));
        }
    }
    Err(Error::RejectionBudgetExhausted {
        attempts: max_attempts,
    })
}

/// Checks `A natural_{p-2} B <= I` and `B^2 <= A^2` with a tight margin so
/// downstream re-verification at the order tolerance always passes.
pub fn verify_thm28_hypotheses(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    p: f64,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let dim = a.dim();
    let nat = natural_power_mean(a, b, p - 2.0, tol)?;
    let (v1, _) = loewner_leq(&nat, &HermitianMatrix::identity(dim), tol)?;
    let a2 = HermitianMatrix::symmetrize(a.raw() * a.raw());
    let b2 = HermitianMatrix::symmetrize(b.raw() * b.raw());
    let (v2, _) = loewner_leq(&b2, &a2, tol)?;
    Ok(v1.slack_min_eig >= -tol.tol_eig && v2.slack_min_eig >= -tol.tol_eig)
}
