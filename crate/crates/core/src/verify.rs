//! Self-check suites: exact auxiliary counts on the torus, classifier and
//! evaluation oracles, symmetry checks and combinatorial identities.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dependency::{brute_force_classify, classify};
use crate::error::Result;
use crate::evaluator::{eval_graph, invariance_check, naive_eval, pool, random_config};
use crate::graph::{build, stats, Algorithm};
use crate::indexsets::{enumerate_k, DegreeSpec, Group};
use crate::partitions::{pi, pi_bounds, slice_identity_check};

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn report(name: &str, passed: bool, detail: String) -> SuiteReport {
    SuiteReport { name: name.to_string(), passed, detail }
}

/// Closed-form number of auxiliary nodes the original heuristic inserts on
/// the torus: `2 sum_{k=2}^{nu_max-1} sum_{n=1}^{D/2} pi(k, n)`.
pub fn torus_aux_formula(nu_max: usize, max_degree: u32) -> BigUint {
    let half = (max_degree / 2) as usize;
    let mut total = BigUint::zero();
    for k in 2..nu_max {
        for n in 1..=half {
            total += pi(k, n);
        }
    }
    total * 2u32
}

/// Builds `T`, `p = 1`, original heuristic for every `(nu_max, D)` and
/// compares the auxiliary count with [`torus_aux_formula`].
pub fn exact_count_suite(nu_maxes: &[usize], degrees: impl IntoIterator<Item = u32> + Clone) -> Result<SuiteReport> {
    let mut checked = 0;
    for &nu_max in nu_maxes {
        for d in degrees.clone() {
            let g = build(Group::T, DegreeSpec::total(d), nu_max, Algorithm::Original)?;
            let got = BigUint::from(stats(&g).num_aux);
            let want = torus_aux_formula(nu_max, d);
            if got != want {
                return Ok(report(
                    "t-exact-count",
                    false,
                    format!("nu_max={nu_max} D={d}: built {got} auxiliary nodes, formula gives {want}"),
                ));
            }
            checked += 1;
        }
    }
    Ok(report("t-exact-count", true, format!("{checked} (nu_max, D) grid points match")))
}

/// Compares [`classify`] with the exhaustive subset oracle on every tuple of
/// `K_G(nu, D)` for `2 <= nu <= nu_max`.
pub fn classifier_suite(group: Group, nu_max: usize, max_degree: u32) -> Result<SuiteReport> {
    let spec = DegreeSpec::total(max_degree);
    let mut checked = 0usize;
    for nu in 2..=nu_max {
        for t in enumerate_k(group, nu, spec)? {
            let fast = classify(&t, group)?;
            let slow = brute_force_classify(&t, group);
            if fast != slow {
                return Ok(report(
                    "classifier",
                    false,
                    format!("{group} {t}: classifier says {fast:?}, oracle says {slow:?}"),
                ));
            }
            checked += 1;
        }
    }
    Ok(report("classifier", true, format!("{group} nu<={nu_max} D={max_degree}: {checked} tuples agree")))
}

/// Largest `|graph - naive| / (1 + |naive|)` over all nodes and configs,
/// for both heuristics and `n` in `{1, 2}`.
pub fn max_oracle_deviation(
    group: Group,
    nu_max: usize,
    max_degree: u32,
    configs: usize,
    seed: u64,
) -> Result<f64> {
    let spec = DegreeSpec::total(max_degree);
    let algorithms = [Algorithm::Original, Algorithm::Generalized { n: 1 }, Algorithm::Generalized { n: 2 }];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for alg in algorithms {
        let g = build(group, spec, nu_max, alg)?;
        for _ in 0..configs {
            let count = rng.gen_range(1..=8);
            let cfg = random_config::<f64, _>(group, count, &mut rng);
            let pooled = pool(group, max_degree, &cfg)?;
            let values = eval_graph(&g, &pooled)?;
            for (node, v) in g.nodes().iter().zip(&values) {
                let want: Complex<f64> = naive_eval(&node.tuple, &pooled)?;
                worst = worst.max((v - want).norm() / (1.0 + want.norm()));
            }
        }
    }
    Ok(worst)
}

pub const ORACLE_TOLERANCE: f64 = 1e-12;
pub const INVARIANCE_TOLERANCE: f64 = 1e-10;
pub const CONTROL_THRESHOLD: f64 = 1e-2;

pub fn oracle_suite(group: Group, nu_max: usize, max_degree: u32, configs: usize, seed: u64) -> Result<SuiteReport> {
    let worst = max_oracle_deviation(group, nu_max, max_degree, configs, seed)?;
    Ok(report(
        "oracle",
        worst <= ORACLE_TOLERANCE,
        format!("{group} nu<={nu_max} D={max_degree}: max deviation {worst:.3e} (tol {ORACLE_TOLERANCE:e})"),
    ))
}

/// Worst rotation / inversion deviation and smallest control deviation over
/// `configs` random configurations.
pub fn invariance_extremes(
    group: Group,
    nu_max: usize,
    max_degree: u32,
    configs: usize,
    seed: u64,
) -> Result<(f64, f64, f64)> {
    let g = build(group, DegreeSpec::total(max_degree), nu_max, Algorithm::Original)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut rot, mut inv, mut ctrl) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..configs {
        let count = rng.gen_range(1..=8);
        let cfg = random_config::<f64, _>(group, count, &mut rng);
        let r = invariance_check(&g, &cfg, 3, &mut rng)?;
        rot = rot.max(r.rotation);
        inv = inv.max(r.inversion.unwrap_or(0.0));
        ctrl = ctrl.min(r.control);
    }
    Ok((rot, inv, ctrl))
}

pub fn invariance_suite(group: Group, nu_max: usize, max_degree: u32, configs: usize, seed: u64) -> Result<SuiteReport> {
    let (rot, inv, ctrl) = invariance_extremes(group, nu_max, max_degree, configs, seed)?;
    let passed = rot < INVARIANCE_TOLERANCE && inv < INVARIANCE_TOLERANCE && ctrl > CONTROL_THRESHOLD;
    Ok(report(
        "invariance",
        passed,
        format!("{group}: rotation {rot:.3e}, inversion {inv:.3e}, control {ctrl:.3e}"),
    ))
}

/// Slice identity for `2 <= nu <= max_nu`, partition bounds for
/// `1 <= k <= n <= bound_n` and the recurrence for `n <= recurrence_n`.
pub fn identities_suite(max_nu: usize, bound_n: usize, recurrence_n: usize) -> SuiteReport {
    if let Some(nu) = (2..=max_nu).find(|&nu| !slice_identity_check(nu)) {
        return report("identities", false, format!("slice identity fails at nu={nu}"));
    }
    for n in 1..=bound_n {
        for k in 1..=n {
            let (lo, hi) = pi_bounds(k, n);
            let p = BigRational::from_integer(pi(k, n).into());
            if p < lo || p > hi {
                return report("identities", false, format!("bounds fail at k={k} n={n}"));
            }
        }
    }
    let by_largest_part = partitions_by_largest_part(recurrence_n);
    for n in 1..=recurrence_n {
        for k in 1..=n {
            let value = pi(k, n);
            let rhs = pi(k - 1, n - 1) + pi(k, n - k);
            if value != rhs {
                return report("identities", false, format!("recurrence fails at k={k} n={n}"));
            }
            if value != by_largest_part[k][n] {
                return report("identities", false, format!("conjugate count differs at k={k} n={n}"));
            }
        }
    }
    report(
        "identities",
        true,
        format!("slice identity nu<={max_nu}, bounds n<={bound_n}, recurrence n<={recurrence_n}"),
    )
}


/// `out[k][n]`: partitions of `n` whose largest part is exactly `k`, which by
/// conjugation equals the number with exactly `k` parts. Computed by the
/// coin-change recursion over allowed part sizes, independently of
/// [`pi`].
fn partitions_by_largest_part(max_n: usize) -> Vec<Vec<BigUint>> {
    // at_most[n] = partitions of n into parts <= k, updated for k = 1, 2, ...
    let mut at_most = vec![BigUint::zero(); max_n + 1];
    at_most[0] = BigUint::from(1u32);
    let mut out = vec![vec![BigUint::zero(); max_n + 1]; max_n + 1];
    for k in 1..=max_n {
        let previous = at_most.clone();
        for n in k..=max_n {
            let add = at_most[n - k].clone();
            at_most[n] += add;
        }
        for n in 0..=max_n {
            out[k][n] = &at_most[n] - &previous[n];
        }
    }
    out
}
