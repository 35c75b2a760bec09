//! Binary quality indicators and the unary hypervolume metric.

use mozeno_core::{ObjectivePoint, ParetoFront};

/// Reference point of the unary hypervolume, in normalized coordinates.
pub const HV_REFERENCE: [f64; 2] = [1.1, 1.1];

/// Additive ε-indicator: the smallest shift of `x` that makes it weakly
/// dominate `y`.
pub fn eps_indicator(x: [f64; 2], y: [f64; 2]) -> f64 {
    (x[0] - y[0]).max(x[1] - y[1])
}

fn box_area(p: [f64; 2], reference: [f64; 2]) -> f64 {
    (reference[0] - p[0]).max(0.0) * (reference[1] - p[1]).max(0.0)
}

/// Volume weakly dominated by `y` but not by `x`, bounded by `reference`.
pub fn hypdiff_indicator(x: [f64; 2], y: [f64; 2], reference: [f64; 2]) -> f64 {
    let overlap = [x[0].max(y[0]), x[1].max(y[1])];
    box_area(y, reference) - box_area(overlap, reference)
}

/// Area weakly dominated by `points` and bounded by `reference`.
pub fn hypervolume_2d(points: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut inside: Vec<[f64; 2]> =
        points.iter().copied().filter(|p| p[0] < reference[0] && p[1] < reference[1]).collect();
    inside.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut best = reference[1];
    for (i, p) in inside.iter().enumerate() {
        if p[1] >= best {
            continue;
        }
        best = p[1];
        let next_x = inside[i + 1..].iter().find(|q| q[1] < best).map_or(reference[0], |q| q[0]);
        area += (next_x - p[0]) * (reference[1] - best);
    }
    area
}

/// Hypervolume deficit of `approx` with respect to `exact`.
///
/// Both sets are rescaled by the bounding box of `exact` and clipped to
/// `[0,1]²`; the reference point is [`HV_REFERENCE`]. Zero means the exact
/// front is reached; an empty approximation scores `HV(exact)`.
pub fn unary_hypervolume(approx: &[ObjectivePoint], exact: &ParetoFront) -> f64 {
    let pts = exact.points();
    if pts.is_empty() {
        return 0.0;
    }
    let lo = [pts[0].makespan.raw(), pts[pts.len() - 1].secondary.raw()];
    let hi = [pts[pts.len() - 1].makespan.raw(), pts[0].secondary.raw()];
    let scale = |p: &ObjectivePoint| {
        let v = [p.makespan.raw(), p.secondary.raw()];
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = if hi[i] > lo[i] {
                ((v[i] - lo[i]) as f64 / (hi[i] - lo[i]) as f64).clamp(0.0, 1.0)
            } else if v[i] > lo[i] {
                1.0
            } else {
                0.0
            };
        }
        out
    };
    let e: Vec<[f64; 2]> = pts.iter().map(scale).collect();
    let a: Vec<[f64; 2]> = approx.iter().map(scale).collect();
    hypervolume_2d(&e, HV_REFERENCE) - hypervolume_2d(&a, HV_REFERENCE)
}
