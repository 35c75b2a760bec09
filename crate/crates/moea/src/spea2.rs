//! SPEA2 fitness assignment and archive truncation.

use std::cmp::Ordering;

use crate::point::{normalize, ScoredPoint};

/// Components of the SPEA2 fitness, one entry per input point.
#[derive(Clone, Debug, PartialEq)]
pub struct Spea2Fitness {
    /// Number of points each point dominates.
    pub strength: Vec<usize>,
    /// Sum of the strengths of each point's dominators.
    pub raw: Vec<usize>,
    /// `1 / (σ_k + 2)` with `σ_k` the distance to the k-th nearest neighbor.
    pub density: Vec<f64>,
    /// `raw + density`; lower is better and below 1 exactly for
    /// non-dominated points.
    pub fitness: Vec<f64>,
}

pub fn spea2_strengths(points: &[ScoredPoint]) -> Vec<usize> {
    points.iter().map(|p| points.iter().filter(|q| p.dominates(q)).count()).collect()
}

fn distance(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Fitness of the union of population and archive. Distances are measured
/// after rescaling both objectives to `[0,1]`; `k = ⌊√N⌋`.
pub fn spea2_fitness(points: &[ScoredPoint]) -> Spea2Fitness {
    let n = points.len();
    let strength = spea2_strengths(points);
    let raw: Vec<usize> =
        (0..n).map(|i| (0..n).filter(|&j| points[j].dominates(&points[i])).map(|j| strength[j]).sum()).collect();
    let norm = normalize(points);
    let k = (n as f64).sqrt().floor() as usize;
    let mut row = Vec::with_capacity(n);
    let density: Vec<f64> = (0..n)
        .map(|i| {
            row.clear();
            row.extend((0..n).filter(|&j| j != i).map(|j| distance(&norm[i], &norm[j])));
            row.sort_by(f64::total_cmp);
            let sigma = match row.len() {
                0 => 0.0,
                len => row[k.clamp(1, len) - 1],
            };
            1.0 / (sigma + 2.0)
        })
        .collect();
    let fitness = raw.iter().zip(&density).map(|(&r, &d)| r as f64 + d).collect();
    Spea2Fitness { strength, raw, density, fitness }
}

/// Selects the next archive of `size` points. Returns sorted indices.
///
/// Points with fitness below 1 are kept. If there are too many, the point
/// whose sorted vector of distances to the remaining ones is
/// lexicographically smallest is removed, one at a time. If there are too
/// few, the best dominated points by fitness fill the archive.
pub fn spea2_truncate(points: &[ScoredPoint], fitness: &[f64], size: usize) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..points.len()).filter(|&i| fitness[i] < 1.0).collect();
    if keep.len() < size {
        let mut rest: Vec<usize> = (0..points.len()).filter(|&i| fitness[i] >= 1.0).collect();
        rest.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
        keep.extend(rest.into_iter().take(size - keep.len()));
    } else if keep.len() > size {
        let norm = normalize(points);
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(keep.len());
        while keep.len() > size {
            rows.clear();
            for &i in &keep {
                let mut row: Vec<f64> =
                    keep.iter().filter(|&&j| j != i).map(|&j| distance(&norm[i], &norm[j])).collect();
                row.sort_by(f64::total_cmp);
                rows.push(row);
            }
            let mut worst = 0;
            for c in 1..keep.len() {
                if lexicographic(&rows[c], &rows[worst]) == Ordering::Less {
                    worst = c;
                }
            }
            keep.remove(worst);
        }
    }
    keep.sort_unstable();
    keep
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}
