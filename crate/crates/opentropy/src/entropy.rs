//! Operator entropy and mean functionals.
//!
//! All functionals share the sandwich structure
//! `A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}`; `PairKernel` computes the
//! half-powers and the inner eigendecomposition once per (A, B) pair so that
//! every derived quantity (natural power means, entropy terms, perspectives)
//! is built from the same factors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{
    check_domain, spectral_decompose, HermitianMatrix, SpectralDecomposition, ToleranceConfig,
};
use crate::scalar::ScalarFunction;

/// Shared factors for functionals of a pair (A, B): the half powers of A and
/// the eigendecomposition of `T = A^{-1/2} B A^{-1/2}`.
pub struct PairKernel {
    a_half: DMatrix<Complex64>,
    inner: SpectralDecomposition,
    dim: usize,
}

impl PairKernel {
    /// Requires `A` strictly positive; `B` may be any Hermitian matrix (the
    /// individual functionals impose their own constraints on `T`).
    pub fn new(a: &HermitianMatrix, b: &HermitianMatrix, tol: &ToleranceConfig) -> Result<Self> {
        a.check_dim(b)?;
        let da = spectral_decompose(a)?;
        if da.eigenvalues[0] < tol.eig_floor {
            return Err(Error::NotStrictlyPositive {
                min_eig: da.eigenvalues[0],
                floor: tol.eig_floor,
            });
        }
        let a_half = da.map_eigenvalues(|x| x.sqrt()).into_raw();
        let a_inv_half = da.map_eigenvalues(|x| 1.0 / x.sqrt()).into_raw();
        let t = HermitianMatrix::symmetrize(&a_inv_half * b.raw() * &a_inv_half);
        let inner = spectral_decompose(&t)?;
        Ok(PairKernel {
            a_half,
            inner,
            dim: a.dim(),
        })
    }

    /// Eigenvalues of `T = A^{-1/2} B A^{-1/2}`, ascending.
    pub fn inner_eigenvalues(&self) -> &nalgebra::DVector<f64> {
        &self.inner.eigenvalues
    }

    fn require_inner_positive(&self, tol: &ToleranceConfig) -> Result<()> {
        let min_eig = self.inner.eigenvalues[0];
        if min_eig < tol.eig_floor {
            return Err(Error::NotStrictlyPositive {
                min_eig,
                floor: tol.eig_floor,
            });
        }
        Ok(())
    }

    /// `A^{1/2} g(T) A^{1/2}` for a pointwise map of the inner eigenvalues.
    fn sandwich(&self, g: impl Fn(f64) -> f64) -> HermitianMatrix {
        let inner = self.inner.map_eigenvalues(g);
        HermitianMatrix::symmetrize(&self.a_half * inner.raw() * &self.a_half)
    }

    /// `A natural_q B = A^{1/2} T^q A^{1/2}`.
    pub fn power_mean(&self, q: f64, tol: &ToleranceConfig) -> Result<HermitianMatrix> {
        if q != 0.0 && q != 1.0 && !(q > 0.0 && q.fract() == 0.0) {
            self.require_inner_positive(tol)?;
        }
        Ok(self.sandwich(|t| t.powf(q)))
    }

    /// `S_q^f(A|B) = A^{1/2} T^q f(T) A^{1/2}`.
    pub fn entropy_term(
        &self,
        q: f64,
        f: &ScalarFunction,
        tol: &ToleranceConfig,
    ) -> Result<HermitianMatrix> {
        if q.fract() != 0.0 || q < 0.0 {
            self.require_inner_positive(tol)?;
        }
        check_domain(&self.inner.eigenvalues, f)?;
        Ok(self.sandwich(|t| t.powf(q) * f.eval(t)))
    }

    /// Perspective `g(B, A) = A^{1/2} f(T) A^{1/2}`.
    pub fn perspective(&self, f: &ScalarFunction) -> Result<HermitianMatrix> {
        check_domain(&self.inner.eigenvalues, f)?;
        Ok(self.sandwich(|t| f.eval(t)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `X natural_q Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^q X^{1/2}` for strictly
/// positive X, Y and any real q.
pub fn natural_power_mean(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    q: f64,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let kernel = PairKernel::new(x, y, tol)?;
    kernel.require_inner_positive(tol)?;
    kernel.power_mean(q, tol)
}

/// Fujii-Kamei relative operator entropy
/// `S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}`.
pub fn relative_operator_entropy(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    generalized_entropy_term(a, b, 0.0, &ScalarFunction::Log, tol)
}

/// Furuta's parametric operator entropy `S_p(A|B)`, p restricted to [0, 1].
pub fn furuta_entropy(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    p: f64,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    generalized_entropy_term(a, b, p, &ScalarFunction::Log, tol)
}

/// One term of the generalized operator Shannon entropy,
/// `S_q^f(A|B) = A^{1/2} T^q f(T) A^{1/2}` with `T = A^{-1/2} B A^{-1/2}`.
pub fn generalized_entropy_term(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    q: f64,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let kernel = PairKernel::new(a, b, tol)?;
    kernel.require_inner_positive(tol)?;
    kernel.entropy_term(q, f, tol)
}

/// `S_q(A|B)` with `f = log`, computed through the dual identity
/// `-S_{1-q}(B|A)`. Serves as the independent second route for the duality
/// suite; deliberately does not share a kernel with the direct evaluation.
pub fn entropy_dual(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    q: f64,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    let swapped = generalized_entropy_term(b, a, 1.0 - q, &ScalarFunction::Log, tol)?;
    Ok(swapped.scale(-1.0))
}

/// Perspective `g(B, A) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` for
/// strictly positive A and Hermitian B with spectrum of T in dom(f).
pub fn perspective(
    b: &HermitianMatrix,
    a: &HermitianMatrix,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    PairKernel::new(a, b, tol)?.perspective(f)
}

/// Non-commutative f-divergence `Theta(B, A) = sum_i g(B_i, A_i)`.
pub fn f_divergence(
    bs: &[HermitianMatrix],
    as_: &OperatorTuple,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    if bs.len() != as_.len() {
        return Err(Error::LengthMismatch {
            left: bs.len(),
            right: as_.len(),
        });
    }
    let mut acc = HermitianMatrix::zeros(as_.dim());
    for (b, a) in bs.iter().zip(as_.entries()) {
        acc = acc.add(&perspective(b, a, f, tol)?)?;
    }
    Ok(acc)
}

/// Finite tuple of strictly positive matrices, with a certificate recording
/// whether the entries sum to the identity.
#[derive(Debug, Clone)]
pub struct OperatorTuple {
    entries: Vec<HermitianMatrix>,
    sums_to_identity: bool,
}

impl OperatorTuple {
    /// Validates strict positivity of every entry and computes the
    /// sums-to-identity certificate.
    pub fn new(entries: Vec<HermitianMatrix>, tol: &ToleranceConfig) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::LengthMismatch { left: 0, right: 1 });
        }
        let dim = entries[0].dim();
        let mut sum = HermitianMatrix::zeros(dim);
        for e in &entries {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            let min_eig = e.min_eigenvalue()?;
            if min_eig < tol.eig_floor {
                return Err(Error::NotStrictlyPositive {
                    min_eig,
                    floor: tol.eig_floor,
                });
            }
            sum = sum.add(e)?;
        }
        let deviation = sum
            .subtract(&HermitianMatrix::identity(dim))?
            .frobenius_norm();
        let sums_to_identity = deviation <= entries.len() as f64 * tol.tol_eig;
        Ok(OperatorTuple {
            entries,
            sums_to_identity,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries[0].dim()
    }

    pub fn entries(&self) -> &[HermitianMatrix] {
        &self.entries
    }

    pub fn sums_to_identity(&self) -> bool {
        self.sums_to_identity
    }

    pub fn sum(&self) -> HermitianMatrix {
        let mut acc = HermitianMatrix::zeros(self.dim());
        for e in &self.entries {
            acc = acc.add(e).expect("same dim by construction");
        }
        acc
    }
}

/// `S_q^f(A|B) = sum_j S_q^f(A_j|B_j)`, summed in ascending index order.
pub fn generalized_entropy_sum(
    a: &OperatorTuple,
    b: &OperatorTuple,
    q: f64,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<HermitianMatrix> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut acc = HermitianMatrix::zeros(a.dim());
    for (aj, bj) in a.entries().iter().zip(b.entries()) {
        acc = acc.add(&generalized_entropy_term(aj, bj, q, f, tol)?)?;
    }
    Ok(acc)
}

/// A normalized positive map in one of four constructive forms, each positive
/// and unital by construction.
#[derive(Debug, Clone)]
pub enum PositiveMapDescriptor {
    Identity {
        dim: usize,
    },
    /// `A -> (tr A / dim) I`.
    Depolarizing {
        dim: usize,
    },
    /// Single isometry `V` (dim_in x dim_out, `V* V = I_out`): `A -> V* A V`.
    Compression {
        isometry: DMatrix<Complex64>,
    },
    /// Kraus blocks `V_k` (dim_in x dim_out) with `sum_k V_k* V_k = I_out`.
    Kraus {
        operators: Vec<DMatrix<Complex64>>,
    },
}

impl PositiveMapDescriptor {
    pub fn dim_in(&self) -> usize {
        match self {
            PositiveMapDescriptor::Identity { dim } | PositiveMapDescriptor::Depolarizing { dim } => *dim,
            PositiveMapDescriptor::Compression { isometry } => isometry.nrows(),
            PositiveMapDescriptor::Kraus { operators } => operators[0].nrows(),
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            PositiveMapDescriptor::Identity { dim } | PositiveMapDescriptor::Depolarizing { dim } => *dim,
            PositiveMapDescriptor::Compression { isometry } => isometry.ncols(),
            PositiveMapDescriptor::Kraus { operators } => operators[0].ncols(),
        }
    }

    /// `|| Phi(I_in) - I_out ||_F`, zero up to rounding for all four kinds.
    pub fn normalization_error(&self) -> f64 {
        let input = HermitianMatrix::identity(self.dim_in());
        match self.apply(&input) {
            Ok(out) => out
                .subtract(&HermitianMatrix::identity(self.dim_out()))
                .map(|d| d.frobenius_norm())
                .unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    }
}

/// Applies the map; positivity is preserved by construction for every kind.
pub fn apply_positive_map(
    phi: &PositiveMapDescriptor,
    a: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    if a.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            found: a.dim(),
        });
    }
    match phi {
        PositiveMapDescriptor::Identity { .. } => Ok(a.clone()),
        PositiveMapDescriptor::Depolarizing { dim } => {
            Ok(HermitianMatrix::identity(*dim).scale(a.trace() / *dim as f64))
        }
        PositiveMapDescriptor::Compression { isometry } => Ok(HermitianMatrix::symmetrize(
            isometry.adjoint() * a.raw() * isometry,
        )),
        PositiveMapDescriptor::Kraus { operators } => {
            let dout = operators[0].ncols();
            let mut acc = DMatrix::<Complex64>::zeros(dout, dout);
            for v in operators {
                acc += v.adjoint() * a.raw() * v;
            }
            Ok(HermitianMatrix::symmetrize(acc))
        }
    }
}

impl PositiveMapDescriptor {
    pub fn apply(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        apply_positive_map(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::matrix::{loewner_leq, matrix_power};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn power_mean_identity_left_gives_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        for q in [-1.0, 0.3, 0.5, 2.0] {
            let m = natural_power_mean(&HermitianMatrix::identity(3), &y, q, &tol()).unwrap();
            let yq = matrix_power(&y, q, &tol()).unwrap();
            assert!(m.subtract(&yq).unwrap().frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn power_mean_scalar_geometric() {
        let m = natural_power_mean(
            &HermitianMatrix::scalar(4.0),
            &HermitianMatrix::scalar(9.0),
            0.5,
            &tol(),
        )
        .unwrap();
        assert!((m.as_scalar().unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn power_mean_endpoints_and_idempotence() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = gen::random_hpd(4, (0.2, 3.0), &mut rng);
        let y = gen::random_hpd(4, (0.2, 3.0), &mut rng);
        let m0 = natural_power_mean(&x, &y, 0.0, &tol()).unwrap();
        assert!(m0.subtract(&x).unwrap().frobenius_norm() < 1e-10);
        let m1 = natural_power_mean(&x, &y, 1.0, &tol()).unwrap();
        assert!(m1.subtract(&y).unwrap().frobenius_norm() < 1e-10);
        for q in [-0.5, 0.25, 1.7] {
            let m = natural_power_mean(&x, &x, q, &tol()).unwrap();
            assert!(m.subtract(&x).unwrap().frobenius_norm() < 1e-9);
        }
    }

    #[test]
    fn power_mean_homogeneous_and_commuting_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let y = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let c = 1.0 + rng.random_range(0.0..2.0_f64);
        let q = 0.4;
        let lhs = natural_power_mean(&x.scale(c), &y.scale(c), q, &tol()).unwrap();
        let rhs = natural_power_mean(&x, &y, q, &tol()).unwrap().scale(c);
        assert!(lhs.subtract(&rhs).unwrap().frobenius_norm() < 1e-8 * rhs.frobenius_norm().max(1.0));

        // simultaneously diagonal pair: X^{1-q} Y^q
        let x = HermitianMatrix::from_diagonal(&[0.5, 2.0, 3.0]);
        let y = HermitianMatrix::from_diagonal(&[1.5, 0.7, 2.2]);
        let m = natural_power_mean(&x, &y, q, &tol()).unwrap();
        let expect = HermitianMatrix::from_diagonal(&[
            0.5_f64.powf(1.0 - q) * 1.5_f64.powf(q),
            2.0_f64.powf(1.0 - q) * 0.7_f64.powf(q),
            3.0_f64.powf(1.0 - q) * 2.2_f64.powf(q),
        ]);
        assert!(m.subtract(&expect).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn relative_entropy_examples() {
        let a = HermitianMatrix::scalar(1.0);
        let b = HermitianMatrix::scalar(std::f64::consts::E);
        let s = relative_operator_entropy(&a, &b, &tol()).unwrap();
        assert!((s.as_scalar().unwrap() - 1.0).abs() < 1e-12);

        let a = HermitianMatrix::scalar(4.0);
        let b = HermitianMatrix::scalar(1.0);
        let s = relative_operator_entropy(&a, &b, &tol()).unwrap();
        assert!((s.as_scalar().unwrap() - 4.0 * 0.25_f64.ln()).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let s = relative_operator_entropy(&a, &a, &tol()).unwrap();
        assert!(s.frobenius_norm() < 1e-10);
    }

    #[test]
    fn relative_entropy_nonpositive_when_a_dominates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let b = gen::random_hpd(3, (0.2, 1.5), &mut rng);
            let a = b.add(&gen::random_hpd(3, (1e-3, 1.0), &mut rng)).unwrap();
            let s = relative_operator_entropy(&a, &b, &tol()).unwrap();
            assert!(loewner_leq(&s, &HermitianMatrix::zeros(3), &tol()).unwrap().0.holds);
        }
    }

    #[test]
    fn furuta_examples() {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let b = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let f0 = furuta_entropy(&a, &b, 0.0, &t).unwrap();
        let s = relative_operator_entropy(&a, &b, &t).unwrap();
        assert!(f0.subtract(&s).unwrap().frobenius_norm() < 1e-12);

        let f1 = furuta_entropy(
            &HermitianMatrix::scalar(1.0),
            &HermitianMatrix::scalar(4.0),
            1.0,
            &t,
        )
        .unwrap();
        assert!((f1.as_scalar().unwrap() - 4.0 * 4.0_f64.ln()).abs() < 1e-12);

        for p in [0.0, 0.3, 1.0] {
            let f = furuta_entropy(&a, &a, p, &t).unwrap();
            assert!(f.frobenius_norm() < 1e-10);
        }
        assert!(matches!(
            furuta_entropy(&a, &b, 1.2, &t),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn generalized_term_examples() {
        let t = tol();
        // 1x1: a (b/a)^q f(b/a); a=1, b=4, q=2, f=sqrt -> 16 * 2 = 32
        let s = generalized_entropy_term(
            &HermitianMatrix::scalar(1.0),
            &HermitianMatrix::scalar(4.0),
            2.0,
            &ScalarFunction::Pow(0.5),
            &t,
        )
        .unwrap();
        assert!((s.as_scalar().unwrap() - 32.0).abs() < 1e-12);

        // q=0, f=identity reproduces B
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let b = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let s = generalized_entropy_term(&a, &b, 0.0, &ScalarFunction::Identity, &t).unwrap();
        assert!(s.subtract(&b).unwrap().frobenius_norm() < 1e-10);

        // nonnegative f gives a PSD term for any real q
        for q in [-1.0, 0.0, 0.7, 2.5] {
            let s = generalized_entropy_term(&a, &b, q, &ScalarFunction::Ratio, &t).unwrap();
            assert!(s.min_eigenvalue().unwrap() >= -t.tol_order * s.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn entropy_sum_and_duality() {
        let t = tol();
        // 1x1 tuples a=(1/2,1/2), b=(1/4,3/4), q=0, f=log
        let a = OperatorTuple::new(
            vec![HermitianMatrix::scalar(0.5), HermitianMatrix::scalar(0.5)],
            &t,
        )
        .unwrap();
        let b = OperatorTuple::new(
            vec![HermitianMatrix::scalar(0.25), HermitianMatrix::scalar(0.75)],
            &t,
        )
        .unwrap();
        assert!(a.sums_to_identity() && b.sums_to_identity());
        let s = generalized_entropy_sum(&a, &b, 0.0, &ScalarFunction::Log, &t).unwrap();
        let expect = 0.5 * 0.5_f64.ln() + 0.5 * 1.5_f64.ln();
        assert!((s.as_scalar().unwrap() - expect).abs() < 1e-12);

        // identical tuples vanish for f = log
        let s = generalized_entropy_sum(&a, &a, 0.7, &ScalarFunction::Log, &t).unwrap();
        assert!(s.frobenius_norm() < 1e-12);

        // duality on random 3x3 pairs
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let y = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        for q in [-1.0, 0.3, 2.0] {
            let direct = generalized_entropy_term(&x, &y, q, &ScalarFunction::Log, &t).unwrap();
            let dual = entropy_dual(&x, &y, q, &t).unwrap();
            let scale = x.frobenius_norm() + y.frobenius_norm();
            assert!(direct.subtract(&dual).unwrap().frobenius_norm() <= t.tol_order * scale);
        }
    }

    #[test]
    fn perspective_examples() {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let p = perspective(&b, &HermitianMatrix::identity(3), &ScalarFunction::Log, &t).unwrap();
        let fb = crate::matrix::apply_function(&b, &ScalarFunction::Log).unwrap();
        assert!(p.subtract(&fb).unwrap().frobenius_norm() < 1e-10);

        let a = gen::random_hpd(3, (0.3, 2.0), &mut rng);
        let p = perspective(&b, &a, &ScalarFunction::Identity, &t).unwrap();
        assert!(p.subtract(&b).unwrap().frobenius_norm() < 1e-10);

        let p = perspective(
            &HermitianMatrix::scalar(6.0),
            &HermitianMatrix::scalar(2.0),
            &ScalarFunction::Log,
            &t,
        )
        .unwrap();
        assert!((p.as_scalar().unwrap() - 2.0 * 3.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn divergence_matches_entropy_sum_at_q0() {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = gen::random_resolution_of_identity(3, 3, &mut rng, &t).unwrap();
        let b = gen::random_resolution_of_identity(3, 3, &mut rng, &t).unwrap();
        let f = ScalarFunction::Pow(0.5);
        let div = f_divergence(b.entries(), &a, &f, &t).unwrap();
        let sum = generalized_entropy_sum(&a, &b, 0.0, &f, &t).unwrap();
        assert!(div.subtract(&sum).unwrap().frobenius_norm() < 1e-9);

        // f = identity sums the B side
        let div = f_divergence(b.entries(), &a, &ScalarFunction::Identity, &t).unwrap();
        assert!(div.subtract(&b.sum()).unwrap().frobenius_norm() < 1e-9);
    }

    #[test]
    fn positive_map_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = gen::random_hpd(2, (0.2, 2.0), &mut rng);
        let id = PositiveMapDescriptor::Identity { dim: 2 };
        assert!(id.apply(&a).unwrap().subtract(&a).unwrap().frobenius_norm() < 1e-15);

        let dep = PositiveMapDescriptor::Depolarizing { dim: 2 };
        let out = dep.apply(&HermitianMatrix::from_diagonal(&[1.0, 3.0])).unwrap();
        assert!(out.subtract(&HermitianMatrix::identity(2).scale(2.0)).unwrap().frobenius_norm() < 1e-14);

        // single unitary Kraus block preserves the spectrum
        let phi = gen::random_positive_map("kraus", 3, 3, 1, &mut rng).unwrap();
        let h = gen::random_hpd(3, (0.1, 2.0), &mut rng);
        let out = phi.apply(&h).unwrap();
        let ein = crate::matrix::spectral_decompose(&h).unwrap().eigenvalues;
        let eout = crate::matrix::spectral_decompose(&out).unwrap().eigenvalues;
        assert!((ein - eout).norm() < 1e-10);
        assert!(phi.normalization_error() < 1e-12);
    }

    #[test]
    fn positive_map_preserves_order() {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let phi = gen::random_positive_map("kraus", 3, 3, 2, &mut rng).unwrap();
        for _ in 0..20 {
            let x = gen::random_hpd(3, (0.1, 2.0), &mut rng);
            let y = x.add(&gen::random_hpd(3, (1e-3, 1.0), &mut rng)).unwrap();
            let px = phi.apply(&x).unwrap();
            let py = phi.apply(&y).unwrap();
            assert!(loewner_leq(&px, &py, &t).unwrap().0.holds);
        }
    }
}
