//! One check per inequality or identity. Each check evaluates both sides,
//! forms the slack matrix (greater side minus lesser side) and reports it
//! together with a hypothesis verdict; slacks are judged PSD by the runner.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::entropy::{OperatorTuple, PairKernel, PositiveMapDescriptor};
use crate::error::{Error, Result};
use crate::gen::{verify_thm28_hypotheses, DoublyStochasticMatrix, WeightFunction};
use crate::matrix::{
    apply_function, loewner_leq, spectral_decompose, HermitianMatrix, ToleranceConfig,
};
use crate::scalar::ScalarFunction;

/// A labeled slack matrix. `equality` marks residuals of identities, judged
/// by norm instead of minimum eigenvalue.
#[derive(Debug, Clone)]
pub struct LabeledSlack {
    pub label: String,
    pub slack: HermitianMatrix,
    pub equality: bool,
}

impl LabeledSlack {
    fn psd(label: impl Into<String>, slack: HermitianMatrix) -> Self {
        LabeledSlack {
            label: label.into(),
            slack,
            equality: false,
        }
    }

    fn residual(label: impl Into<String>, slack: HermitianMatrix) -> Self {
        LabeledSlack {
            label: label.into(),
            slack,
            equality: true,
        }
    }
}

/// Result of one check on one instance.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub hypothesis_satisfied: bool,
    pub scale: f64,
    pub slacks: Vec<LabeledSlack>,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn new(hypothesis_satisfied: bool, scale: f64, slacks: Vec<LabeledSlack>) -> Self {
        CheckOutcome {
            hypothesis_satisfied,
            scale,
            slacks,
            detail: None,
        }
    }

    fn unmet(scale: f64, detail: String) -> Self {
        CheckOutcome {
            hypothesis_satisfied: false,
            scale,
            slacks: Vec::new(),
            detail: Some(detail),
        }
    }
}

fn max_norm(matrices: &[&HermitianMatrix]) -> f64 {
    matrices
        .iter()
        .map(|m| m.frobenius_norm())
        .fold(0.0, f64::max)
}

fn tuple_scale(a: &OperatorTuple, b: &OperatorTuple) -> f64 {
    a.entries()
        .iter()
        .chain(b.entries())
        .map(|m| m.frobenius_norm())
        .fold(0.0, f64::max)
}

/// Smallest eigenvalue check for "argument of f stays in its domain".
fn domain_gate(h: &HermitianMatrix, f: &ScalarFunction, tol: &ToleranceConfig) -> Result<()> {
    let floor = f.domain_floor();
    let min_eig = h.min_eigenvalue()?;
    let effective = if floor == 0.0 { tol.eig_floor } else { floor };
    if min_eig < effective {
        return Err(Error::DomainViolation {
            function: f.name(),
            eigenvalue: min_eig,
            floor: effective,
        });
    }
    Ok(())
}

/// Flags required of `f` by the entropy-bound theorems:
/// operator monotone, operator concave and nonnegative on the domain.
fn theorem_flags(f: &ScalarFunction) -> bool {
    f.is_operator_monotone() && f.is_operator_concave() && f.is_nonnegative_on_domain()
}

/// Shared sums for tuple-based entropy checks.
struct TupleSums {
    gate: HermitianMatrix,      // sum_j A_j natural_p B_j
    shifted: HermitianMatrix,   // sum_j A_j natural_{p+shift} B_j
    entropy: HermitianMatrix,   // S_p^f(A|B)
}

fn tuple_sums(
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    p: f64,
    shift: f64,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<TupleSums> {
    let dim = a[0].dim();
    let mut gate = HermitianMatrix::zeros(dim);
    let mut shifted = HermitianMatrix::zeros(dim);
    let mut entropy = HermitianMatrix::zeros(dim);
    for (aj, bj) in a.iter().zip(b) {
        let kernel = PairKernel::new(aj, bj, tol)?;
        gate = gate.add(&kernel.power_mean(p, tol)?)?;
        shifted = shifted.add(&kernel.power_mean(p + shift, tol)?)?;
        entropy = entropy.add(&kernel.entropy_term(p, f, tol)?)?;
    }
    Ok(TupleSums {
        gate,
        shifted,
        entropy,
    })
}

/// Upper entropy bound for resolutions of identity:
/// `f[sum(A_j nat_{p+1} B_j) + t0 (I - G)] - f(t0)(I - G) >= S_p^f(A|B)`
/// with `G = sum A_j nat_p B_j`, for p in [0,1].
pub fn check_theorem_upper(
    a: &OperatorTuple,
    b: &OperatorTuple,
    p: f64,
    f: &ScalarFunction,
    t0: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let scale = tuple_scale(a, b);
    let hyp = a.sums_to_identity()
        && b.sums_to_identity()
        && (0.0..=1.0).contains(&p)
        && theorem_flags(f)
        && t0 > 0.0;
    let sums = tuple_sums(a.entries(), b.entries(), p, 1.0, f, tol)?;
    let remainder = HermitianMatrix::identity(a.dim()).subtract(&sums.gate)?;
    let arg = sums.shifted.add(&remainder.scale(t0))?;
    domain_gate(&arg, f, tol)?;
    let slack = apply_function(&arg, f)?
        .subtract(&remainder.scale(f.eval(t0)))?
        .subtract(&sums.entropy)?;
    Ok(CheckOutcome::new(hyp, scale, vec![LabeledSlack::psd("", slack)]))
}

/// Lower entropy bound for resolutions of identity, p in [2,3]:
/// `S_p^f(A|B) >= -f[sum(A_j nat_{p-1} B_j) + t0 (I - G)] + f(t0)(I - G)`.
///
/// For p in [2,3] the remainder `I - G` can be indefinite and push the
/// f-argument out of the domain; such instances are stamped hypothesis_unmet
/// rather than extrapolating f.
pub fn check_theorem_lower(
    a: &OperatorTuple,
    b: &OperatorTuple,
    p: f64,
    f: &ScalarFunction,
    t0: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let scale = tuple_scale(a, b);
    let hyp = a.sums_to_identity()
        && b.sums_to_identity()
        && (2.0..=3.0).contains(&p)
        && theorem_flags(f)
        && t0 > 0.0;
    let sums = tuple_sums(a.entries(), b.entries(), p, -1.0, f, tol)?;
    let remainder = HermitianMatrix::identity(a.dim()).subtract(&sums.gate)?;
    let arg = sums.shifted.add(&remainder.scale(t0))?;
    if let Err(Error::DomainViolation { eigenvalue, .. }) = domain_gate(&arg, f, tol) {
        return Ok(CheckOutcome::unmet(
            scale,
            format!("f-argument eigenvalue {eigenvalue:e} outside dom({})", f.name()),
        ));
    }
    let slack = sums
        .entropy
        .add(&apply_function(&arg, f)?)?
        .subtract(&remainder.scale(f.eval(t0)))?;
    Ok(CheckOutcome::new(hyp, scale, vec![LabeledSlack::psd("", slack)]))
}

/// Furuta's chain (f = log) under the gate `sum A_j nat_p B_j <= I`;
/// returns the upper and lower slack.
pub fn check_furuta_e8(
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    p: f64,
    t0: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dim = a[0].dim();
    let log = ScalarFunction::Log;
    let scale = max_norm(&a.iter().chain(b).collect::<Vec<_>>());

    let mut gate = HermitianMatrix::zeros(dim);
    let mut up = HermitianMatrix::zeros(dim);
    let mut down = HermitianMatrix::zeros(dim);
    let mut entropy = HermitianMatrix::zeros(dim);
    for (aj, bj) in a.iter().zip(b) {
        let kernel = PairKernel::new(aj, bj, tol)?;
        gate = gate.add(&kernel.power_mean(p, tol)?)?;
        up = up.add(&kernel.power_mean(p + 1.0, tol)?)?;
        down = down.add(&kernel.power_mean(p - 1.0, tol)?)?;
        entropy = entropy.add(&kernel.entropy_term(p, &log, tol)?)?;
    }
    let (gate_verdict, _) = loewner_leq(&gate, &HermitianMatrix::identity(dim), tol)?;
    let hyp = gate_verdict.holds && (0.0..=1.0).contains(&p) && t0 > 0.0;

    let remainder = HermitianMatrix::identity(dim).subtract(&gate)?;
    let arg_up = up.add(&remainder.scale(t0))?;
    let arg_down = down.add(&remainder.scale(t0))?;
    domain_gate(&arg_up, &log, tol)?;
    domain_gate(&arg_down, &log, tol)?;
    let log_t0 = t0.ln();
    let upper = apply_function(&arg_up, &log)?
        .subtract(&remainder.scale(log_t0))?
        .subtract(&entropy)?;
    let lower = entropy
        .add(&apply_function(&arg_down, &log)?)?
        .subtract(&remainder.scale(log_t0))?;
    Ok(CheckOutcome::new(
        hyp,
        scale,
        vec![
            LabeledSlack::psd("upper", upper),
            LabeledSlack::psd("lower", lower),
        ],
    ))
}

/// The p = 1 and p = 0 specializations for resolutions of identity:
/// (i) `f(sum B_j A_j^{-1} B_j) >= S_1^f`, (ii) `f(I) >= S_0^f`.
pub fn check_cor_2_4(
    a: &OperatorTuple,
    b: &OperatorTuple,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let scale = tuple_scale(a, b);
    let hyp = a.sums_to_identity() && b.sums_to_identity() && theorem_flags(f);
    let dim = a.dim();
    let mut quad = HermitianMatrix::zeros(dim); // sum B_j A_j^{-1} B_j = sum A_j nat_2 B_j
    let mut s1 = HermitianMatrix::zeros(dim);
    let mut s0 = HermitianMatrix::zeros(dim);
    for (aj, bj) in a.entries().iter().zip(b.entries()) {
        let kernel = PairKernel::new(aj, bj, tol)?;
        quad = quad.add(&kernel.power_mean(2.0, tol)?)?;
        s1 = s1.add(&kernel.entropy_term(1.0, f, tol)?)?;
        s0 = s0.add(&kernel.entropy_term(0.0, f, tol)?)?;
    }
    domain_gate(&quad, f, tol)?;
    let slack_i = apply_function(&quad, f)?.subtract(&s1)?;
    let slack_ii = HermitianMatrix::identity(dim)
        .scale(f.eval(1.0))
        .subtract(&s0)?;
    Ok(CheckOutcome::new(
        hyp,
        scale,
        vec![
            LabeledSlack::psd("i", slack_i),
            LabeledSlack::psd("ii", slack_ii),
        ],
    ))
}

/// `log(sum A_j^{-1}) >= (log n) I - (1/n) sum log A_j` for resolutions.
pub fn check_cor_2_5(a: &OperatorTuple, tol: &ToleranceConfig) -> Result<CheckOutcome> {
    let n = a.len() as f64;
    let dim = a.dim();
    let scale = max_norm(&a.entries().iter().collect::<Vec<_>>());
    let log = ScalarFunction::Log;
    let mut inv_sum = HermitianMatrix::zeros(dim);
    let mut log_sum = HermitianMatrix::zeros(dim);
    for aj in a.entries() {
        let d = spectral_decompose(aj)?;
        inv_sum = inv_sum.add(&d.map_eigenvalues(|x| 1.0 / x))?;
        log_sum = log_sum.add(&d.map_eigenvalues(|x| x.ln()))?;
    }
    domain_gate(&inv_sum, &log, tol)?;
    let slack = apply_function(&inv_sum, &log)?
        .subtract(&HermitianMatrix::identity(dim).scale(n.ln()))?
        .add(&log_sum.scale(1.0 / n))?;
    Ok(CheckOutcome::new(
        a.sums_to_identity(),
        scale,
        vec![LabeledSlack::psd("", slack)],
    ))
}

/// Operator entropy inequality `-sum A_j log A_j <= (log n) I`, evaluated in
/// the symmetrized form `A_j^{1/2} (log A_j) A_j^{1/2}` alongside the plain
/// `A_j log A_j` form (the two coincide termwise).
pub fn check_cor_2_6(a: &OperatorTuple, tol: &ToleranceConfig) -> Result<CheckOutcome> {
    let n = a.len() as f64;
    let dim = a.dim();
    let scale = max_norm(&a.entries().iter().collect::<Vec<_>>());
    let mut symmetrized = HermitianMatrix::zeros(dim);
    let mut plain = HermitianMatrix::zeros(dim);
    for aj in a.entries() {
        let d = spectral_decompose(aj)?;
        if d.eigenvalues[0] < tol.eig_floor {
            return Err(Error::NotStrictlyPositive {
                min_eig: d.eigenvalues[0],
                floor: tol.eig_floor,
            });
        }
        // A^{1/2} log(A) A^{1/2} = A log A under spectral calculus
        symmetrized = symmetrized.add(&d.map_eigenvalues(|x| x * x.ln()))?;
        let half = d.map_eigenvalues(|x| x.sqrt());
        let loga = d.map_eigenvalues(|x| x.ln());
        plain = plain.add(&crate::matrix::conjugate(&half, &loga)?)?;
    }
    let log_n = HermitianMatrix::identity(dim).scale(n.ln());
    let slack = log_n.add(&plain)?;
    let slack_plain = log_n.add(&symmetrized)?;
    Ok(CheckOutcome::new(
        a.sums_to_identity(),
        scale,
        vec![
            LabeledSlack::psd("", slack),
            LabeledSlack::psd("plain", slack_plain),
        ],
    ))
}

/// Scalar Kullback-Leibler positivity `0 >= sum a_j log(b_j / a_j)`.
pub fn check_kl_scalar(a: &[f64], b: &[f64]) -> Result<CheckOutcome> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let sum_a: f64 = a.iter().sum();
    let sum_b: f64 = b.iter().sum();
    let hyp = a.iter().all(|&x| x > 0.0)
        && b.iter().all(|&x| x > 0.0)
        && (sum_a - 1.0).abs() < 1e-9
        && (sum_b - 1.0).abs() < 1e-9;
    let kl: f64 = -a
        .iter()
        .zip(b)
        .map(|(&aj, &bj)| aj * (bj / aj).ln())
        .sum::<f64>();
    Ok(CheckOutcome::new(
        hyp,
        1.0,
        vec![LabeledSlack::psd("", HermitianMatrix::scalar(kl))],
    ))
}

/// Two-operator bounds under `A nat_{p-2} B <= I` and `B^2 <= A^2`,
/// p in [0,1]; also asserts the proof's intermediate claim `A nat_p B <= I`.
pub fn check_two_operator_bounds(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    p: f64,
    f: &ScalarFunction,
    t0: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let scale = max_norm(&[a, b]);
    let hypotheses_hold = verify_thm28_hypotheses(a, b, p, tol)?;
    let hyp = hypotheses_hold && (0.0..=1.0).contains(&p) && theorem_flags(f) && t0 > 0.0;

    let kernel = PairKernel::new(a, b, tol)?;
    let gate = kernel.power_mean(p, tol)?;
    let remainder = HermitianMatrix::identity(a.dim()).subtract(&gate)?;
    let entropy = kernel.entropy_term(p, f, tol)?;

    let arg_up = kernel.power_mean(p + 1.0, tol)?.add(&remainder.scale(t0))?;
    let arg_down = kernel.power_mean(p - 1.0, tol)?.add(&remainder.scale(t0))?;
    domain_gate(&arg_up, f, tol)?;
    domain_gate(&arg_down, f, tol)?;
    let upper = apply_function(&arg_up, f)?
        .subtract(&remainder.scale(f.eval(t0)))?
        .subtract(&entropy)?;
    let lower = entropy
        .add(&apply_function(&arg_down, f)?)?
        .subtract(&remainder.scale(f.eval(t0)))?;
    Ok(CheckOutcome::new(
        hyp,
        scale,
        vec![
            LabeledSlack::psd("upper", upper),
            LabeledSlack::psd("lower", lower),
            // intermediate claim: I - A nat_p B is PSD
            LabeledSlack::psd("gate", remainder),
        ],
    ))
}

/// Duality identity `S_q(A|B) = -S_{1-q}(B|A)`, both sides evaluated
/// independently; recorded as an equality residual.
pub fn check_entropy_duality(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    q: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let scale = a.frobenius_norm() + b.frobenius_norm();
    let direct = crate::entropy::generalized_entropy_term(a, b, q, &ScalarFunction::Log, tol)?;
    let dual = crate::entropy::entropy_dual(a, b, q, tol)?;
    let residual = direct.subtract(&dual)?;
    Ok(CheckOutcome::new(
        true,
        scale,
        vec![LabeledSlack::residual("", residual)],
    ))
}

/// Subadditivity of the natural power mean for q in [0,1]:
/// `sum_j A_j nat_q B_j <= (sum A_j) nat_q (sum B_j)`.
pub fn check_natural_subadditivity(
    a: &[HermitianMatrix],
    b: &[HermitianMatrix],
    q: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dim = a[0].dim();
    let scale = max_norm(&a.iter().chain(b).collect::<Vec<_>>());
    let hyp = (0.0..=1.0).contains(&q);
    let mut termwise = HermitianMatrix::zeros(dim);
    let mut sum_a = HermitianMatrix::zeros(dim);
    let mut sum_b = HermitianMatrix::zeros(dim);
    for (aj, bj) in a.iter().zip(b) {
        termwise = termwise.add(&crate::entropy::natural_power_mean(aj, bj, q, tol)?)?;
        sum_a = sum_a.add(aj)?;
        sum_b = sum_b.add(bj)?;
    }
    let joint = crate::entropy::natural_power_mean(&sum_a, &sum_b, q, tol)?;
    let slack = joint.subtract(&termwise)?;
    Ok(CheckOutcome::new(hyp, scale, vec![LabeledSlack::psd("", slack)]))
}

/// Operator Jensen inequality for contraction families:
/// `f(sum C_j* X_j C_j + t0 (I - S)) >= sum C_j* f(X_j) C_j + f(t0)(I - S)`
/// with `S = sum C_j* C_j <= I`.
pub fn check_hanp_jensen(
    cs: &[DMatrix<Complex64>],
    xs: &[HermitianMatrix],
    t0: f64,
    f: &ScalarFunction,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    if cs.len() != xs.len() || cs.is_empty() {
        return Err(Error::LengthMismatch {
            left: cs.len(),
            right: xs.len(),
        });
    }
    let dim = xs[0].dim();
    let scale = max_norm(&xs.iter().collect::<Vec<_>>());
    let mut gram = HermitianMatrix::zeros(dim);
    let mut compressed = HermitianMatrix::zeros(dim);
    let mut image = HermitianMatrix::zeros(dim);
    for (c, x) in cs.iter().zip(xs) {
        gram = gram.add(&HermitianMatrix::symmetrize(c.adjoint() * c))?;
        compressed = compressed.add(&HermitianMatrix::symmetrize(c.adjoint() * x.raw() * c))?;
        image = image.add(&HermitianMatrix::symmetrize(
            c.adjoint() * apply_function(x, f)?.raw() * c,
        ))?;
    }
    let (gate_verdict, _) = loewner_leq(&gram, &HermitianMatrix::identity(dim), tol)?;
    if !gate_verdict.holds {
        return Err(Error::HypothesisUnmet(format!(
            "sum C_j* C_j exceeds I by {:e}",
            -gate_verdict.slack_min_eig
        )));
    }
    let t0_in_domain = t0 > f.domain_floor() && f.eval(t0).is_finite();
    let hyp = f.is_operator_concave() && t0_in_domain;
    let remainder = HermitianMatrix::identity(dim).subtract(&gram)?;
    let arg = compressed.add(&remainder.scale(t0))?;
    domain_gate(&arg, f, tol)?;
    let slack = apply_function(&arg, f)?
        .subtract(&image)?
        .subtract(&remainder.scale(f.eval(t0)))?;
    Ok(CheckOutcome::new(hyp, scale, vec![LabeledSlack::psd("", slack)]))
}

/// Shared context for the weighted Jensen refinements: the images
/// `Phi(A_j)` and the right end `sum_j lambda_j Phi(f(A_j))` are computed
/// once, all refinement terms reuse them.
pub struct JensenContext {
    lambda: Vec<f64>,
    mu: Vec<f64>,
    phi_aj: Vec<HermitianMatrix>,
    right_end: HermitianMatrix,
    left_end: HermitianMatrix,
    f: ScalarFunction,
    scale: f64,
}

impl JensenContext {
    pub fn new(
        lambda: &[f64],
        mu: &[f64],
        phi: &PositiveMapDescriptor,
        xs: &[HermitianMatrix],
        f: &ScalarFunction,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        if lambda.len() != xs.len() || xs.is_empty() {
            return Err(Error::LengthMismatch {
                left: lambda.len(),
                right: xs.len(),
            });
        }
        let dout = phi.dim_out();
        let scale = max_norm(&xs.iter().collect::<Vec<_>>());
        let mut phi_aj = Vec::with_capacity(xs.len());
        let mut right_end = HermitianMatrix::zeros(dout);
        let mut left_arg = HermitianMatrix::zeros(dout);
        for (j, x) in xs.iter().enumerate() {
            let img = phi.apply(x)?;
            right_end = right_end.add(&phi.apply(&apply_function(x, f)?)?.scale(lambda[j]))?;
            left_arg = left_arg.add(&img.scale(lambda[j]))?;
            phi_aj.push(img);
        }
        domain_gate(&left_arg, f, tol)?;
        let left_end = apply_function(&left_arg, f)?;
        Ok(JensenContext {
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
            phi_aj,
            right_end,
            left_end,
            f: f.clone(),
            scale,
        })
    }

    /// Middle term `sum_i mu_i f(sum_j omega(i,j) lambda_j Phi(A_j))`.
    pub fn middle(&self, omega: &[Vec<f64>], tol: &ToleranceConfig) -> Result<HermitianMatrix> {
        let dout = self.left_end.dim();
        let mut acc = HermitianMatrix::zeros(dout);
        for (i, row) in omega.iter().enumerate() {
            let mut arg = HermitianMatrix::zeros(dout);
            for (j, img) in self.phi_aj.iter().enumerate() {
                arg = arg.add(&img.scale(row[j] * self.lambda[j]))?;
            }
            domain_gate(&arg, &self.f, tol)?;
            acc = acc.add(&apply_function(&arg, &self.f)?.scale(self.mu[i]))?;
        }
        Ok(acc)
    }

    /// The two chain slacks `left - middle` and `middle - right`.
    pub fn chain_slacks(
        &self,
        omega: &[Vec<f64>],
        tol: &ToleranceConfig,
    ) -> Result<(HermitianMatrix, HermitianMatrix)> {
        let middle = self.middle(omega, tol)?;
        Ok((
            self.left_end.subtract(&middle)?,
            middle.subtract(&self.right_end)?,
        ))
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Refined Jensen inequality for a single weight function:
/// `f(sum lambda_j Phi(A_j)) >= sum_i mu_i f(sum_j omega(i,j) lambda_j Phi(A_j))
///  >= sum_j lambda_j Phi(f(A_j))`.
pub fn check_jensen_refinement(
    ctx: &JensenContext,
    omega: &WeightFunction,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let hyp = ctx.f.is_operator_concave() && omega.constraint_error() <= 1e-10;
    let (s1, s2) = ctx.chain_slacks(&omega.omega, tol)?;
    Ok(CheckOutcome::new(
        hyp,
        ctx.scale(),
        vec![
            LabeledSlack::psd("upper", s1),
            LabeledSlack::psd("lower", s2),
        ],
    ))
}

/// Interpolated refinement `F(t)` for two weight functions over the same
/// probability vectors: the chain at each grid point plus Loewner concavity
/// of `F` on weighted grid triples.
pub fn check_thm_2_10(
    ctx: &JensenContext,
    omega1: &WeightFunction,
    omega2: &WeightFunction,
    t_grid: &[f64],
    eta_grid: &[f64],
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let hyp = ctx.f.is_operator_concave()
        && omega1.constraint_error() <= 1e-10
        && omega2.constraint_error() <= 1e-10;
    let mut slacks = Vec::new();
    let middle_at = |t: f64| -> Result<HermitianMatrix> {
        ctx.middle(&omega1.interpolate(omega2, t).omega, tol)
    };
    for &t in t_grid {
        let (s1, s2) = ctx.chain_slacks(&omega1.interpolate(omega2, t).omega, tol)?;
        slacks.push(LabeledSlack::psd(format!("chain-t{t:.2}:upper"), s1));
        slacks.push(LabeledSlack::psd(format!("chain-t{t:.2}:lower"), s2));
    }
    for (idx1, &t1) in t_grid.iter().enumerate() {
        for &t2 in &t_grid[idx1 + 1..] {
            for &eta in eta_grid {
                let mid = eta * t1 + (1.0 - eta) * t2;
                let slack = middle_at(mid)?
                    .subtract(&middle_at(t1)?.scale(eta))?
                    .subtract(&middle_at(t2)?.scale(1.0 - eta))?;
                slacks.push(LabeledSlack::psd(
                    format!("concavity-t{t1:.2}-t{t2:.2}-e{eta:.2}"),
                    slack,
                ));
            }
        }
    }
    Ok(CheckOutcome::new(hyp, ctx.scale(), slacks))
}

/// Entropy refinement through doubly stochastic mixing (f = -t log t,
/// Phi = identity): `(log n) I >= M(t) >= -sum A_j log A_j` where
/// `M(t) = sum_i eta(sum_j [(1-t) b_ij + t c_ij] A_j)`.
pub fn check_cor_2_11(
    a: &OperatorTuple,
    bmat: &DoublyStochasticMatrix,
    cmat: &DoublyStochasticMatrix,
    t: f64,
    tol: &ToleranceConfig,
) -> Result<CheckOutcome> {
    let n = a.len();
    if bmat.n() != n || cmat.n() != n {
        return Err(Error::LengthMismatch {
            left: bmat.n(),
            right: n,
        });
    }
    let dim = a.dim();
    let scale = max_norm(&a.entries().iter().collect::<Vec<_>>());
    let eta = ScalarFunction::NegEntropy;
    let mut mixed_entropy = HermitianMatrix::zeros(dim);
    for i in 0..n {
        let mut mixed = HermitianMatrix::zeros(dim);
        for (j, aj) in a.entries().iter().enumerate() {
            let w = (1.0 - t) * bmat.entries[i][j] + t * cmat.entries[i][j];
            mixed = mixed.add(&aj.scale(w))?;
        }
        domain_gate(&mixed, &eta, tol)?;
        mixed_entropy = mixed_entropy.add(&apply_function(&mixed, &eta)?)?;
    }
    let mut plain_entropy = HermitianMatrix::zeros(dim); // sum A_j log A_j
    for aj in a.entries() {
        let d = spectral_decompose(aj)?;
        plain_entropy = plain_entropy.add(&d.map_eigenvalues(|x| x * x.ln()))?;
    }
    let slack1 = HermitianMatrix::identity(dim)
        .scale((n as f64).ln())
        .subtract(&mixed_entropy)?;
    let slack2 = mixed_entropy.add(&plain_entropy)?;
    Ok(CheckOutcome::new(
        a.sums_to_identity(),
        scale,
        vec![
            LabeledSlack::psd("upper", slack1),
            LabeledSlack::psd("lower", slack2),
        ],
    ))
}
