//! Descriptive statistics and the two nonparametric tests used to compare
//! real and simulated goal totals.
//!
//! Both tests use the large-sample normal approximation. Mann-Whitney is
//! two-sided with the midrank tie correction in its variance and no
//! continuity correction; the Wald-Wolfowitz runs test is one-sided in the
//! lower tail, since too few runs is the evidence against identical
//! distributions.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

pub mod reference;

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("sample has {got} values, at least {need} required")]
    TooFewValues { got: usize, need: usize },
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    /// Standard deviation with divisor `n - 1`.
    pub std_corrected: f64,
}

pub fn describe(sample: &[f64]) -> Result<SampleStats, StatsError> {
    if sample.len() < 2 {
        return Err(StatsError::TooFewValues {
            got: sample.len(),
            need: 2,
        });
    }
    check_finite(sample)?;
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let ss: f64 = sample.iter().map(|v| (v - mean).powi(2)).sum();
    Ok(SampleStats {
        n: sample.len(),
        mean,
        std_corrected: (ss / (n - 1.0)).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    /// U for Mann-Whitney, the number of runs R for the runs test.
    pub statistic: f64,
    pub z: f64,
    pub p: f64,
    pub alpha: f64,
    pub reject: bool,
    pub ties_present: bool,
}

impl TestResult {
    fn new(statistic: f64, z: f64, p: f64, alpha: f64, ties_present: bool) -> Self {
        let p = p.clamp(0.0, 1.0);
        TestResult {
            statistic,
            z,
            p,
            alpha,
            reject: p < alpha,
            ties_present,
        }
    }
}

fn check_finite(sample: &[f64]) -> Result<(), StatsError> {
    if sample.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StatsError::NonFinite)
    }
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<(), StatsError> {
    if x.is_empty() || y.is_empty() {
        return Err(StatsError::EmptySample);
    }
    check_finite(x)?;
    check_finite(y)
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// Counts `x < y` pairs, ties worth one half. Sort-based, O((m+n) log(m+n)).
fn u_statistic(x: &[f64], y: &[f64]) -> f64 {
    let mut ys = y.to_vec();
    ys.sort_by(f64::total_cmp);
    x.iter()
        .map(|&xi| {
            let below_or_eq = ys.partition_point(|&v| v <= xi);
            let below = ys.partition_point(|&v| v < xi);
            let greater = ys.len() - below_or_eq;
            let ties = below_or_eq - below;
            greater as f64 + 0.5 * ties as f64
        })
        .sum()
}

/// Sizes of groups of equal values in the pooled sample.
fn tie_groups(pooled: &mut [f64]) -> Vec<usize> {
    pooled.sort_by(f64::total_cmp);
    pooled.chunk_by(|a, b| a == b).map(<[f64]>::len).collect()
}

/// Mann-Whitney U with `U = #{x_i < y_j} + ties/2`, so a positive `z` means
/// `y` tends to be larger.
pub fn mann_whitney(x: &[f64], y: &[f64], alpha: f64) -> Result<TestResult, StatsError> {
    check_pair(x, y)?;
    let (m, n) = (x.len() as f64, y.len() as f64);
    let total = m + n;
    let u = u_statistic(x, y);

    let mut pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let groups = tie_groups(&mut pooled);
    let ties_present = groups.iter().any(|&t| t > 1);
    let tie_term: f64 = groups
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = if total > 1.0 {
        m * n / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)))
    } else {
        0.0
    };

    if var <= 0.0 {
        // Every value identical (or a single pair): no evidence either way.
        return Ok(TestResult::new(u, 0.0, 1.0, alpha, ties_present));
    }
    let z = (u - m * n / 2.0) / var.sqrt();
    let p = 2.0 * std_normal().sf(z.abs());
    Ok(TestResult::new(u, z, p, alpha, ties_present))
}

/// Sorts the pooled sample (ties: `x` before `y`) and returns the labels,
/// `false` for x and `true` for y.
fn pooled_labels(x: &[f64], y: &[f64]) -> (Vec<bool>, bool) {
    let mut pooled: Vec<(f64, bool)> = x
        .iter()
        .map(|&v| (v, false))
        .chain(y.iter().map(|&v| (v, true)))
        .collect();
    pooled.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let cross_ties = pooled
        .windows(2)
        .any(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1);
    (
        pooled.into_iter().map(|(_, label)| label).collect(),
        cross_ties,
    )
}

/// Wald-Wolfowitz runs test. Values shared between the samples make the run
/// count ill-defined; they are ordered x-first and `ties_present` is set.
pub fn runs_test(x: &[f64], y: &[f64], alpha: f64) -> Result<TestResult, StatsError> {
    check_pair(x, y)?;
    if x.len() + y.len() < 4 {
        return Err(StatsError::TooFewValues {
            got: x.len() + y.len(),
            need: 4,
        });
    }
    let (labels, ties_present) = pooled_labels(x, y);
    let runs = 1 + labels.windows(2).filter(|w| w[0] != w[1]).count();

    let (m, n) = (x.len() as f64, y.len() as f64);
    let total = m + n;
    let mean = 2.0 * m * n / total + 1.0;
    let var = 2.0 * m * n * (2.0 * m * n - m - n) / (total * total * (total - 1.0));
    let r = runs as f64;
    if var <= 0.0 {
        return Ok(TestResult::new(r, 0.0, 1.0, alpha, ties_present));
    }
    let z = (r - mean) / var.sqrt();
    let p = std_normal().cdf(z);
    Ok(TestResult::new(r, z, p, alpha, ties_present))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub mann_whitney: TestResult,
    pub runs: TestResult,
    /// Neither test rejects the hypothesis of identical distributions.
    pub overall_identical_not_rejected: bool,
}

pub fn compare_distributions(x: &[f64], y: &[f64], alpha: f64) -> Result<Comparison, StatsError> {
    let mann_whitney = mann_whitney(x, y, alpha)?;
    let runs = runs_test(x, y, alpha)?;
    Ok(Comparison {
        mann_whitney,
        runs,
        overall_identical_not_rejected: !mann_whitney.reject && !runs.reject,
    })
}
