//! Wilcoxon signed-rank test and the pairwise scheme table.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::HarnessError;

/// Two-sided significance level.
pub const ALPHA: f64 = 0.05;
/// Largest number of non-zero differences handled by the exact null
/// distribution; larger samples use the normal approximation.
pub const EXACT_LIMIT: usize = 25;

/// Which sample has the lower values, when the difference is significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FirstLower,
    SecondLower,
    Equivalent,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WilcoxonResult {
    /// Number of non-zero paired differences.
    pub n: usize,
    /// Rank sum of the positive differences `a − b`.
    pub w_plus: f64,
    pub w_minus: f64,
    /// `min(W+, W−)`.
    pub statistic: f64,
    pub p_value: f64,
    pub significant: bool,
    pub direction: Direction,
}

/// Ranks of `values` (1-based) with ties given their mean rank.
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Exact two-sided p-value of `W+ = w_plus` given the (mid)ranks, by
/// counting the sign assignments.
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    // Doubled ranks are integers even with mid-ranks.
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0f64; total + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let all: f64 = counts.iter().sum();
    let w = (w_plus * 2.0).round() as usize;
    let lower: f64 = counts[..=w].iter().sum::<f64>() / all;
    let upper: f64 = counts[w..].iter().sum::<f64>() / all;
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_p(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut ties = Vec::new();
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
        ties.push(j as f64);
        i += j;
    }
    let correction: f64 = ties.iter().map(|t| t * t * t - t).sum::<f64>() / 48.0;
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - correction;
    if var <= 0.0 {
        return 1.0;
    }
    let diff = w_plus - mean;
    let z = (diff.abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

/// Paired two-sided signed-rank test of `a` against `b` at level [`ALPHA`].
///
/// Zero differences are dropped and tied magnitudes get mid-ranks. The null
/// distribution is exact up to [`EXACT_LIMIT`] non-zero differences.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult, HarnessError> {
    if a.len() != b.len() {
        return Err(HarnessError::Config(format!("paired samples differ in length: {} vs {}", a.len(), b.len())));
    }
    if a.len() < 6 {
        return Err(HarnessError::Config(format!("at least 6 pairs are required, got {}", a.len())));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(HarnessError::Config("samples must be finite".into()));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            n,
            w_plus: 0.0,
            w_minus: 0.0,
            statistic: 0.0,
            p_value: 1.0,
            significant: false,
            direction: Direction::Equivalent,
        });
    }
    let magnitudes: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = midranks(&magnitudes);
    let w_plus: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let w_minus = ranks.iter().sum::<f64>() - w_plus;
    let p_value = if n <= EXACT_LIMIT { exact_p(&ranks, w_plus) } else { normal_p(&ranks, w_plus) };
    let significant = p_value <= ALPHA;
    let direction = match (significant, w_plus < w_minus) {
        (false, _) => Direction::Equivalent,
        (true, true) => Direction::FirstLower,
        (true, false) => Direction::SecondLower,
    };
    Ok(WilcoxonResult { n, w_plus, w_minus, statistic: w_plus.min(w_minus), p_value, significant, direction })
}

/// Pairwise comparison table of named samples (lower is better).
///
/// Cell `(row, column)` is `≻` when the row sample is significantly lower,
/// `≺` when it is significantly higher and `≡` otherwise. Samples must be
/// paired by position.
pub fn comparison_table(samples: &[(String, Vec<f64>)]) -> Result<String, HarnessError> {
    let width = samples.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0).max(2) + 2;
    let pad = |s: &str| format!("{s:<width$}");
    let mut out = pad("");
    for (name, _) in samples {
        out.push_str(&pad(name));
    }
    out = out.trim_end().to_string();
    out.push('\n');
    for (i, (row, a)) in samples.iter().enumerate() {
        let mut line = pad(row);
        for (j, (_, b)) in samples.iter().enumerate() {
            let cell = if i == j {
                "--"
            } else {
                match wilcoxon_signed_rank(a, b)?.direction {
                    Direction::FirstLower => "≻",
                    Direction::SecondLower => "≺",
                    Direction::Equivalent => "≡",
                }
            };
            line.push_str(&pad(cell));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}
