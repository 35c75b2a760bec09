//! Indicator-based fitness and environmental selection.

use rand::Rng;

use crate::indicator::{eps_indicator, hypdiff_indicator};
use crate::point::{normalize, ScoredPoint};
use crate::select::{binary_tournament, IndicatorKind};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IbeaParams {
    pub indicator: IndicatorKind,
    /// Fitness scaling factor κ.
    pub kappa: f64,
    /// Reference point of the hypervolume indicator, in normalized
    /// coordinates.
    pub reference: [f64; 2],
}

impl Default for IbeaParams {
    fn default() -> Self {
        IbeaParams { indicator: IndicatorKind::HypDiff, kappa: 0.05, reference: [2.0, 2.0] }
    }
}

/// Indicator value `I(x, y)` used for fitness assignment.
///
/// For [`IndicatorKind::HypDiff`] this is [`hypdiff_indicator`] unless `x`
/// weakly dominates `y`, in which case it is the negative volume
/// `HV(y) − HV(x)`, so that the margin of dominance still counts.
pub fn ibea_indicator(kind: IndicatorKind, x: [f64; 2], y: [f64; 2], reference: [f64; 2]) -> f64 {
    match kind {
        IndicatorKind::EpsPlus => eps_indicator(x, y),
        IndicatorKind::HypDiff => {
            if x[0] <= y[0] && x[1] <= y[1] {
                let area = |p: [f64; 2]| (reference[0] - p[0]) * (reference[1] - p[1]);
                area(y) - area(x)
            } else {
                hypdiff_indicator(x, y, reference)
            }
        }
    }
}

/// Pairwise indicator matrix `m[y][x] = I(y, x)` and its scaling constant.
fn indicator_matrix(points: &[ScoredPoint], params: &IbeaParams) -> (Vec<Vec<f64>>, f64) {
    let norm = normalize(points);
    let n = points.len();
    let mut scale: f64 = 0.0;
    let m: Vec<Vec<f64>> = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| {
                    let v = ibea_indicator(params.indicator, norm[y], norm[x], params.reference);
                    scale = scale.max(v.abs());
                    v
                })
                .collect()
        })
        .collect();
    (m, if scale > 0.0 { scale } else { 1.0 })
}

/// `F(x) = Σ_{y≠x} −exp(−I(y,x) / (c·κ))` with objectives rescaled to
/// `[0,1]` and `c` the largest absolute indicator value. Higher is better.
pub fn ibea_fitness(points: &[ScoredPoint], params: &IbeaParams) -> Vec<f64> {
    let (m, c) = indicator_matrix(points, params);
    fitness_from(&m, c * params.kappa)
}

fn fitness_from(m: &[Vec<f64>], denom: f64) -> Vec<f64> {
    let n = m.len();
    (0..n).map(|x| (0..n).filter(|&y| y != x).map(|y| -(-m[y][x] / denom).exp()).sum()).collect()
}

/// Removes the worst point and updates the others' fitness until `mu`
/// remain. Returns the sorted survivor indices and their fitness.
pub fn ibea_survivors(points: &[ScoredPoint], mu: usize, params: &IbeaParams) -> (Vec<usize>, Vec<f64>) {
    let (m, c) = indicator_matrix(points, params);
    let denom = c * params.kappa;
    let mut fitness = fitness_from(&m, denom);
    let mut alive: Vec<usize> = (0..points.len()).collect();
    while alive.len() > mu {
        let mut worst = 0;
        for k in 1..alive.len() {
            if fitness[alive[k]] < fitness[alive[worst]] {
                worst = k;
            }
        }
        let gone = alive.remove(worst);
        for &x in &alive {
            fitness[x] += (-m[gone][x] / denom).exp();
        }
    }
    let kept = alive.iter().map(|&i| fitness[i]).collect();
    (alive, kept)
}

/// One IBEA generation on `points` (parents and offspring): environmental
/// selection down to `mu`, then `mu` binary tournaments on the survivors.
/// Returns `(mating pool, survivors)` as indices into `points`.
pub fn ibea_step<R: Rng + ?Sized>(
    points: &[ScoredPoint],
    mu: usize,
    params: &IbeaParams,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let (survivors, fitness) = ibea_survivors(points, mu, params);
    let keys: Vec<f64> = fitness.iter().map(|f| -f).collect();
    let pool = (0..mu).map(|_| survivors[binary_tournament(&keys, rng)]).collect();
    (pool, survivors)
}
