//! Independent scalar re-implementation of every suite formula, used to
//! cross-check the matrix pipeline on 1x1 instances. Deliberately avoids the
//! library's spectral calculus: everything here is plain f64 arithmetic.

use opentropy::entropy::OperatorTuple;
use opentropy::matrix::HermitianMatrix;
use opentropy::suites::report::Verdict;
use opentropy::suites::runner::{generate_instance, run_trial, SuiteConfig, SuiteId, TrialInstance};

const REL: f64 = 1e-12;
const T_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const ETA_GRID: [f64; 2] = [0.25, 0.5];

fn feval(name: &str, t: f64) -> f64 {
    if let Some(r) = name.strip_prefix("pow_") {
        return t.powf(r.parse::<f64>().unwrap());
    }
    match name {
        "log" => t.ln(),
        "ratio" => t / (1.0 + t),
        "log1p" => (1.0 + t).ln(),
        "neg_entropy" => {
            if t == 0.0 {
                0.0
            } else {
                -t * t.ln()
            }
        }
        "identity" => t,
        other => panic!("oracle has no function `{other}`"),
    }
}

fn sc(m: &HermitianMatrix) -> f64 {
    m.as_scalar().expect("oracle needs 1x1 matrices")
}

fn scalars(t: &OperatorTuple) -> Vec<f64> {
    t.entries().iter().map(sc).collect()
}

/// `sum_j a_j (b_j/a_j)^p` — the scalar natural power mean, summed.
fn nat_sum(a: &[f64], b: &[f64], p: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x * (y / x).powf(p))
        .sum()
}

/// `sum_j a_j (b_j/a_j)^p f(b_j/a_j)` — the scalar entropy sum.
fn entropy_sum(a: &[f64], b: &[f64], p: f64, f: &str) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x * (y / x).powf(p) * feval(f, y / x))
        .sum()
}

/// None means the oracle predicts a hypothesis_unmet record (f-argument
/// outside the domain), mirroring the lower-bound design decision.
fn oracle(cfg: &SuiteConfig, instance: &TrialInstance) -> Option<Vec<f64>> {
    let fname = cfg.function.as_str();
    match (cfg.suite, instance) {
        (SuiteId::ThmUpper, TrialInstance::ResolutionPair { a, b }) => {
            let (a, b) = (scalars(a), scalars(b));
            let r = 1.0 - nat_sum(&a, &b, cfg.p);
            let arg = nat_sum(&a, &b, cfg.p + 1.0) + cfg.t0 * r;
            Some(vec![
                feval(fname, arg) - feval(fname, cfg.t0) * r - entropy_sum(&a, &b, cfg.p, fname),
            ])
        }
        (SuiteId::ThmLower, TrialInstance::ResolutionPair { a, b }) => {
            let (a, b) = (scalars(a), scalars(b));
            let r = 1.0 - nat_sum(&a, &b, cfg.p);
            let arg = nat_sum(&a, &b, cfg.p - 1.0) + cfg.t0 * r;
            if arg < 1e-8 {
                return None;
            }
            Some(vec![
                entropy_sum(&a, &b, cfg.p, fname) + feval(fname, arg)
                    - feval(fname, cfg.t0) * r,
            ])
        }
        (SuiteId::Cor24, TrialInstance::ResolutionPair { a, b }) => {
            let (a, b) = (scalars(a), scalars(b));
            let quad: f64 = a.iter().zip(&b).map(|(&x, &y)| y * y / x).sum();
            let s1 = entropy_sum(&a, &b, 1.0, fname);
            let s0 = entropy_sum(&a, &b, 0.0, fname);
            Some(vec![feval(fname, quad) - s1, feval(fname, 1.0) - s0])
        }
        (SuiteId::FurutaE8, TrialInstance::GatedTuples { a, b }) => {
            let a: Vec<f64> = a.iter().map(sc).collect();
            let b: Vec<f64> = b.iter().map(sc).collect();
            let r = 1.0 - nat_sum(&a, &b, cfg.p);
            let ent = entropy_sum(&a, &b, cfg.p, "log");
            let upper =
                (nat_sum(&a, &b, cfg.p + 1.0) + cfg.t0 * r).ln() - cfg.t0.ln() * r - ent;
            let lower =
                ent + (nat_sum(&a, &b, cfg.p - 1.0) + cfg.t0 * r).ln() - cfg.t0.ln() * r;
            Some(vec![upper, lower])
        }
        (SuiteId::TwoOperator, TrialInstance::Pair { a, b }) => {
            let (a, b) = (sc(a), sc(b));
            let gate = a * (b / a).powf(cfg.p);
            let r = 1.0 - gate;
            let ent = a * (b / a).powf(cfg.p) * feval(fname, b / a);
            let upper = feval(fname, a * (b / a).powf(cfg.p + 1.0) + cfg.t0 * r)
                - feval(fname, cfg.t0) * r
                - ent;
            let lower = ent + feval(fname, a * (b / a).powf(cfg.p - 1.0) + cfg.t0 * r)
                - feval(fname, cfg.t0) * r;
            Some(vec![upper, lower, r])
        }
        (SuiteId::Cor25, TrialInstance::Resolution { a }) => {
            let a = scalars(a);
            let n = a.len() as f64;
            let inv: f64 = a.iter().map(|&x| 1.0 / x).sum();
            let mean_log: f64 = a.iter().map(|&x| x.ln()).sum::<f64>() / n;
            Some(vec![inv.ln() - n.ln() + mean_log])
        }
        (SuiteId::Cor26, TrialInstance::Resolution { a }) => {
            let a = scalars(a);
            let n = (a.len() as f64).ln();
            let ent: f64 = a.iter().map(|&x| x * x.ln()).sum();
            Some(vec![n + ent, n + ent])
        }
        (SuiteId::Cor211, TrialInstance::ResolutionStoch { a, bmat, cmat }) => {
            let a = scalars(a);
            let n = a.len();
            let t = cfg.q;
            let mut mixed_entropy = 0.0;
            for i in 0..n {
                let m: f64 = (0..n)
                    .map(|j| ((1.0 - t) * bmat.entries[i][j] + t * cmat.entries[i][j]) * a[j])
                    .sum();
                mixed_entropy += feval("neg_entropy", m);
            }
            let plain: f64 = a.iter().map(|&x| x * x.ln()).sum();
            Some(vec![(n as f64).ln() - mixed_entropy, mixed_entropy + plain])
        }
        (SuiteId::Kl, TrialInstance::ScalarPair { a, b }) => Some(vec![-a
            .iter()
            .zip(b)
            .map(|(&x, &y)| x * (y / x).ln())
            .sum::<f64>()]),
        (SuiteId::Duality, TrialInstance::Pair { a, b }) => {
            let (a, b) = (sc(a), sc(b));
            let direct = a * (b / a).powf(cfg.q) * (b / a).ln();
            let dual = -(b * (a / b).powf(1.0 - cfg.q) * (a / b).ln());
            Some(vec![-(direct - dual).abs()])
        }
        (SuiteId::Subadd, TrialInstance::TuplePair { a, b }) => {
            let a: Vec<f64> = a.iter().map(sc).collect();
            let b: Vec<f64> = b.iter().map(sc).collect();
            let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
            Some(vec![
                sa * (sb / sa).powf(cfg.q) - nat_sum(&a, &b, cfg.q),
            ])
        }
        (SuiteId::Hanp, TrialInstance::Contractions { cs, xs }) => {
            let w: Vec<f64> = cs.iter().map(|c| c[(0, 0)].norm_sqr()).collect();
            let x: Vec<f64> = xs.iter().map(sc).collect();
            let s: f64 = w.iter().sum();
            let arg: f64 =
                w.iter().zip(&x).map(|(&wi, &xi)| wi * xi).sum::<f64>() + cfg.t0 * (1.0 - s);
            let image: f64 = w.iter().zip(&x).map(|(&wi, &xi)| wi * feval(fname, xi)).sum();
            Some(vec![
                feval(fname, arg) - image - feval(fname, cfg.t0) * (1.0 - s),
            ])
        }
        (SuiteId::Jensen, TrialInstance::Weighted { omega1, xs, .. }) => {
            let x: Vec<f64> = xs.iter().map(sc).collect();
            let (left, middle, right) = jensen_ends(&omega1.mu, &omega1.lambda, &omega1.omega, &x, fname);
            Some(vec![left - middle, middle - right])
        }
        (
            SuiteId::Thm210,
            TrialInstance::Weighted {
                omega1,
                omega2: Some(omega2),
                xs,
                ..
            },
        ) => {
            let x: Vec<f64> = xs.iter().map(sc).collect();
            let mid_at = |t: f64| -> f64 {
                let omega: Vec<Vec<f64>> = omega1
                    .omega
                    .iter()
                    .zip(&omega2.omega)
                    .map(|(r1, r2)| {
                        r1.iter()
                            .zip(r2)
                            .map(|(&u, &v)| (1.0 - t) * u + t * v)
                            .collect()
                    })
                    .collect();
                jensen_ends(&omega1.mu, &omega1.lambda, &omega, &x, fname).1
            };
            let (left, _, right) =
                jensen_ends(&omega1.mu, &omega1.lambda, &omega1.omega, &x, fname);
            let mut out = Vec::new();
            for &t in &T_GRID {
                let m = mid_at(t);
                out.push(left - m);
                out.push(m - right);
            }
            for (i1, &t1) in T_GRID.iter().enumerate() {
                for &t2 in &T_GRID[i1 + 1..] {
                    for &eta in &ETA_GRID {
                        out.push(
                            mid_at(eta * t1 + (1.0 - eta) * t2)
                                - eta * mid_at(t1)
                                - (1.0 - eta) * mid_at(t2),
                        );
                    }
                }
            }
            Some(out)
        }
        _ => panic!("oracle: unexpected instance shape for {}", cfg.suite),
    }
}

/// (left end, middle, right end) of the scalar Jensen chain with Phi = id.
fn jensen_ends(
    mu: &[f64],
    lambda: &[f64],
    omega: &[Vec<f64>],
    x: &[f64],
    fname: &str,
) -> (f64, f64, f64) {
    let left_arg: f64 = lambda.iter().zip(x).map(|(&l, &xi)| l * xi).sum();
    let left = feval(fname, left_arg);
    let middle: f64 = mu
        .iter()
        .enumerate()
        .map(|(i, &mi)| {
            let arg: f64 = lambda
                .iter()
                .zip(x)
                .enumerate()
                .map(|(j, (&l, &xi))| omega[i][j] * l * xi)
                .sum();
            mi * feval(fname, arg)
        })
        .sum();
    let right: f64 = lambda
        .iter()
        .zip(x)
        .map(|(&l, &xi)| l * feval(fname, xi))
        .sum();
    (left, middle, right)
}

/// Runs every suite at dim = 1 and compares each record's slack_min_eig to
/// the oracle. Returns human-readable mismatch descriptions.
pub fn run_all_suites(seed: u64, trials: u64) -> Vec<String> {
    let mut mismatches = Vec::new();
    for &suite in SuiteId::all() {
        let mut cfg = SuiteConfig::new(suite);
        cfg.dim = 1;
        cfg.n = 3;
        cfg.master_seed = seed;
        cfg.trials = trials;
        for trial in 0..trials {
            let instance = match generate_instance(&cfg, trial) {
                Ok(i) => i,
                Err(e) => {
                    mismatches.push(format!("{suite} trial {trial}: generation failed: {e}"));
                    continue;
                }
            };
            let reports = run_trial(&cfg, trial);
            match oracle(&cfg, &instance) {
                None => {
                    if !reports
                        .iter()
                        .all(|r| r.verdict == Verdict::HypothesisUnmet)
                    {
                        mismatches
                            .push(format!("{suite} trial {trial}: expected hypothesis_unmet"));
                    }
                }
                Some(expected) => {
                    if reports.len() != expected.len() {
                        mismatches.push(format!(
                            "{suite} trial {trial}: {} records, oracle has {}",
                            reports.len(),
                            expected.len()
                        ));
                        continue;
                    }
                    for (r, e) in reports.iter().zip(&expected) {
                        let bound = REL * e.abs().max(1.0);
                        if (r.slack_min_eig - e).abs() > bound {
                            mismatches.push(format!(
                                "{} trial {trial}: {} vs oracle {} (diff {:e})",
                                r.suite_id,
                                r.slack_min_eig,
                                e,
                                (r.slack_min_eig - e).abs()
                            ));
                        }
                    }
                }
            }
        }
    }
    mismatches
}
