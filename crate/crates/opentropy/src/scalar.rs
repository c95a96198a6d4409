//! Catalog of scalar functions with operator-theoretic metadata.
//!
//! Each entry records whether the function is operator monotone, operator
//! concave and nonnegative on its domain. The flags are asserted metadata
//! backed by classical results; `check_operator_concavity_numeric` spot-checks
//! them by sampling rather than proving them.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gen;
use crate::matrix::{apply_function, loewner_leq, ToleranceConfig};

/// A named scalar function usable in spectral calculus.
///
/// `Square` (t^2, operator convex) is deliberately absent from the catalog;
/// it exists so the concavity sampler has a known negative to find.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFunction {
    Log,
    /// t^r for r in (0, 1].
    Pow(f64),
    /// t / (1 + t).
    Ratio,
    /// log(1 + t).
    Log1p,
    /// eta(t) = -t log t.
    NegEntropy,
    Identity,
    #[doc(hidden)]
    Square,
}

impl ScalarFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ScalarFunction::Log => t.ln(),
            ScalarFunction::Pow(r) => t.powf(*r),
            ScalarFunction::Ratio => t / (1.0 + t),
            ScalarFunction::Log1p => t.ln_1p(),
            ScalarFunction::NegEntropy => {
                if t == 0.0 {
                    0.0
                } else {
                    -t * t.ln()
                }
            }
            ScalarFunction::Identity => t,
            ScalarFunction::Square => t * t,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ScalarFunction::Log => "log".into(),
            ScalarFunction::Pow(r) => format!("pow_{r}"),
            ScalarFunction::Ratio => "ratio".into(),
            ScalarFunction::Log1p => "log1p".into(),
            ScalarFunction::NegEntropy => "neg_entropy".into(),
            ScalarFunction::Identity => "identity".into(),
            ScalarFunction::Square => "square".into(),
        }
    }

    /// Lower endpoint of the domain; evaluation is finite on `(floor, inf)`.
    pub fn domain_floor(&self) -> f64 {
        match self {
            ScalarFunction::Identity | ScalarFunction::Square => f64::NEG_INFINITY,
            _ => 0.0,
        }
    }

    pub fn is_operator_monotone(&self) -> bool {
        !matches!(
            self,
            ScalarFunction::NegEntropy | ScalarFunction::Square
        )
    }

    pub fn is_operator_concave(&self) -> bool {
        !matches!(self, ScalarFunction::Square)
    }

    pub fn is_nonnegative_on_domain(&self) -> bool {
        match self {
            ScalarFunction::Log | ScalarFunction::NegEntropy => false,
            ScalarFunction::Square => true,
            _ => true,
        }
    }

    /// The six fixed catalog entries (`pow` represented by r = 1/2).
    pub fn catalog() -> Vec<ScalarFunction> {
        vec![
            ScalarFunction::Log,
            ScalarFunction::Pow(0.5),
            ScalarFunction::Ratio,
            ScalarFunction::Log1p,
            ScalarFunction::NegEntropy,
            ScalarFunction::Identity,
        ]
    }

    /// Resolves a CLI name: `log | pow_<r> | ratio | log1p | neg_entropy | identity`.
    pub fn lookup(name: &str) -> Result<ScalarFunction> {
        match name {
            "log" => Ok(ScalarFunction::Log),
            "ratio" => Ok(ScalarFunction::Ratio),
            "log1p" => Ok(ScalarFunction::Log1p),
            "neg_entropy" => Ok(ScalarFunction::NegEntropy),
            "identity" => Ok(ScalarFunction::Identity),
            _ => {
                if let Some(rest) = name.strip_prefix("pow_") {
                    let r: f64 = rest
                        .parse()
                        .map_err(|_| Error::UnknownFunction(name.to_string()))?;
                    if r <= 0.0 || r > 1.0 {
                        // t^r is operator monotone exactly for r in (0,1]
                        return Err(Error::ParameterOutOfRange {
                            name: "pow exponent",
                            value: r,
                            lo: 0.0,
                            hi: 1.0,
                        });
                    }
                    Ok(ScalarFunction::Pow(r))
                } else {
                    Err(Error::UnknownFunction(name.to_string()))
                }
            }
        }
    }
}

/// Samples random strictly positive pairs and checks the operator concavity
/// inequality `lam f(A) + (1-lam) f(B) <= f(lam A + (1-lam) B)` on each.
/// A sanity gate for catalog metadata, not a proof.
pub fn check_operator_concavity_numeric(
    f: &ScalarFunction,
    trials: usize,
    dim: usize,
    rng: &mut impl Rng,
    tol: &ToleranceConfig,
) -> Result<bool> {
    for _ in 0..trials {
        let a = gen::random_hpd(dim, (0.05, 4.0), rng);
        let b = gen::random_hpd(dim, (0.05, 4.0), rng);
        let lam: f64 = rng.random_range(0.0..=1.0);
        let mix = a.scale(lam).add(&b.scale(1.0 - lam))?;
        let lhs = apply_function(&a, f)?.scale(lam).add(&apply_function(&b, f)?.scale(1.0 - lam))?;
        let rhs = apply_function(&mix, f)?;
        if !loewner_leq(&lhs, &rhs, tol)?.0.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalog_flags() {
        let log = ScalarFunction::lookup("log").unwrap();
        assert!(!log.is_nonnegative_on_domain()); // log(1/2) < 0
        assert!(log.is_operator_monotone() && log.is_operator_concave());

        let p = ScalarFunction::lookup("pow_0.5").unwrap();
        assert!(p.is_operator_monotone() && p.is_operator_concave() && p.is_nonnegative_on_domain());

        let eta = ScalarFunction::lookup("neg_entropy").unwrap();
        assert!(!eta.is_operator_monotone()); // decreasing beyond 1/e
        assert!(eta.is_operator_concave());
    }

    #[test]
    fn lookup_rejects_bad_names_and_exponents() {
        assert!(matches!(
            ScalarFunction::lookup("tanh"),
            Err(Error::UnknownFunction(_))
        ));
        assert!(matches!(
            ScalarFunction::lookup("pow_1.5"),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(ScalarFunction::lookup("pow_1").is_ok());
    }

    #[test]
    fn neg_entropy_equality_cases() {
        let eta = ScalarFunction::NegEntropy;
        assert_eq!(eta.eval(1.0), 0.0);
        for n in [2usize, 3, 7] {
            let v = eta.eval(1.0 / n as f64) * n as f64;
            assert!((v - (n as f64).ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn concavity_sampler_accepts_identity_and_log() {
        let tol = ToleranceConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(check_operator_concavity_numeric(&ScalarFunction::Identity, 50, 3, &mut rng, &tol).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert!(check_operator_concavity_numeric(&ScalarFunction::Log, 200, 4, &mut rng, &tol).unwrap());
    }

    #[test]
    fn concavity_sampler_rejects_square() {
        // scalar counterexample: lam=1/2, A=diag(0.1), B=diag(4)
        let tol = ToleranceConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(!check_operator_concavity_numeric(&ScalarFunction::Square, 200, 2, &mut rng, &tol).unwrap());
    }

    #[test]
    fn monotone_flags_hold_on_comparable_pairs() {
        let tol = ToleranceConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for f in ScalarFunction::catalog() {
            if !f.is_operator_monotone() {
                continue;
            }
            for _ in 0..40 {
                let a = gen::random_hpd(3, (0.1, 2.0), &mut rng);
                let psd = gen::random_hpd(3, (0.0_f64.max(1e-3), 1.0), &mut rng);
                let b = a.add(&psd).unwrap();
                let fa = apply_function(&a, &f).unwrap();
                let fb = apply_function(&b, &f).unwrap();
                assert!(
                    loewner_leq(&fa, &fb, &tol).unwrap().0.holds,
                    "monotonicity violated for {}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn nonnegative_flags_hold_on_domain() {
        let tol = ToleranceConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for f in ScalarFunction::catalog() {
            if !f.is_nonnegative_on_domain() {
                continue;
            }
            for _ in 0..40 {
                let h = gen::random_hpd(4, (1e-3, 5.0), &mut rng);
                let fh = apply_function(&h, &f).unwrap();
                assert!(fh.min_eigenvalue().unwrap() >= -tol.tol_order);
            }
        }
    }
}
