//! Non-dominated sorting and crowding distance.

use crate::point::ScoredPoint;

/// Pareto rank of every point: 0 for the non-dominated set, `r` for the
/// points that become non-dominated once ranks below `r` are removed.
pub fn nondominated_sort(points: &[ScoredPoint]) -> Vec<usize> {
    let n = points.len();
    let mut dominated_by = vec![0usize; n];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if points[i].dominates(&points[j]) {
                dominates[i].push(j);
                dominated_by[j] += 1;
            } else if points[j].dominates(&points[i]) {
                dominates[j].push(i);
                dominated_by[i] += 1;
            }
        }
    }
    let mut rank = vec![0usize; n];
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    let mut r = 0;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            rank[i] = r;
            for &j in &dominates[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        current = next;
        r += 1;
    }
    rank
}

/// Crowding distance of each point of one front.
///
/// The extreme points of each objective get `+∞`; the others the sum over
/// objectives of the gap between their neighbors divided by the objective
/// range. Equal values are ordered by index.
pub fn crowding_distance(front: &[ScoredPoint]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let objectives: [fn(&ScoredPoint) -> i64; 2] = [|p| p.objectives.makespan.raw(), |p| p.objectives.secondary.raw()];
    for value in objectives {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (value(&front[i]), i));
        let range = value(&front[order[n - 1]]) - value(&front[order[0]]);
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        if range == 0 {
            continue;
        }
        for w in order.windows(3) {
            let gap = value(&front[w[2]]) - value(&front[w[0]]);
            dist[w[1]] += gap as f64 / range as f64;
        }
    }
    dist
}

/// Ranks and crowding distances (computed per rank) of every point.
pub(crate) fn rank_and_crowding(points: &[ScoredPoint]) -> (Vec<usize>, Vec<f64>) {
    let rank = nondominated_sort(points);
    let mut crowd = vec![0.0; points.len()];
    let max_rank = rank.iter().copied().max().unwrap_or(0);
    for r in 0..=max_rank {
        let members: Vec<usize> = (0..points.len()).filter(|&i| rank[i] == r).collect();
        let front: Vec<ScoredPoint> = members.iter().map(|&i| points[i]).collect();
        for (&i, d) in members.iter().zip(crowding_distance(&front)) {
            crowd[i] = d;
        }
    }
    (rank, crowd)
}

/// Keeps `mu` points: whole ranks in increasing order, then the most crowded-apart
/// members of the first rank that does not fit. Returns sorted indices.
pub fn nsga2_survivors(points: &[ScoredPoint], mu: usize) -> Vec<usize> {
    let (rank, crowd) = rank_and_crowding(points);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then(crowd[b].total_cmp(&crowd[a])).then(a.cmp(&b)));
    order.truncate(mu);
    order.sort_unstable();
    order
}
