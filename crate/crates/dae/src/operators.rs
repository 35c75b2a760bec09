use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::Rng;

use crate::eval::DaeParams;
use crate::individual::{DaeProblem, Individual, PartialState};

/// The four mutation operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationKind {
    AddState,
    DelState,
    AddAtom,
    DelAtom,
}

impl MutationKind {
    pub const ALL: [MutationKind; 4] =
        [MutationKind::AddState, MutationKind::DelState, MutationKind::AddAtom, MutationKind::DelAtom];
}

/// Builds a state at bucket `i`: the target size is uniform in
/// `1..=|allowed|`, atoms are drawn uniformly and mutex ones skipped, with at
/// most `|allowed|` draws.
pub fn random_state<R: Rng + ?Sized>(problem: &DaeProblem, i: usize, rng: &mut R) -> PartialState {
    let allowed = problem.allowed(i);
    let mut state = PartialState::new(problem.buckets()[i], Vec::new());
    if allowed.is_empty() {
        return state;
    }
    let target = rng.gen_range(1..=allowed.len());
    let mut draws = 0;
    while state.len() < target && draws < allowed.len() {
        draws += 1;
        let atom = allowed[rng.gen_range(0..allowed.len())];
        if state.accepts(problem.task(), atom) {
            state.insert(atom);
        }
    }
    state
}

/// Random individual: the number of states is uniform in `1..=|buckets|`,
/// buckets are distinct and sorted.
pub fn init_individual<R: Rng + ?Sized>(problem: &DaeProblem, rng: &mut R) -> Individual {
    let count = problem.buckets().len();
    if count == 0 {
        return Individual::default();
    }
    let n = rng.gen_range(1..=count);
    let mut picked = sample(rng, count, n).into_vec();
    picked.sort_unstable();
    let states = picked.into_iter().map(|i| random_state(problem, i, rng)).filter(|s| !s.is_empty()).collect();
    Individual::new(states)
}

fn chronological(prefix: &[PartialState], suffix: &[PartialState]) -> bool {
    match (prefix.last(), suffix.first()) {
        (Some(p), Some(s)) => p.bucket <= s.bucket,
        _ => true,
    }
}

fn splice(prefix: &[PartialState], suffix: &[PartialState]) -> Individual {
    Individual::new(prefix.iter().chain(suffix).cloned().collect())
}

/// One-point crossover with independent cut points. Returns prefix(a) ++
/// suffix(b) when chronological, else prefix(b) ++ suffix(a) when that one
/// is, else a copy of `a`.
pub fn crossover<R: Rng + ?Sized>(a: &Individual, b: &Individual, rng: &mut R) -> Individual {
    let ca = rng.gen_range(0..=a.len());
    let cb = rng.gen_range(0..=b.len());
    crossover_at(a, b, ca, cb)
}

/// [`crossover`] with explicit cut points `ca <= a.len()` and `cb <= b.len()`.
pub fn crossover_at(a: &Individual, b: &Individual, ca: usize, cb: usize) -> Individual {
    let (a, b) = (&a.states, &b.states);
    if chronological(&a[..ca], &b[cb..]) {
        splice(&a[..ca], &b[cb..])
    } else if chronological(&b[..cb], &a[ca..]) {
        splice(&b[..cb], &a[ca..])
    } else {
        Individual::new(a.clone())
    }
}

/// Applies one mutation operator drawn by roulette over the mutation weights.
pub fn mutate<R: Rng + ?Sized>(
    problem: &DaeProblem,
    ind: &Individual,
    params: &DaeParams,
    rng: &mut R,
) -> (Individual, MutationKind) {
    let roulette = WeightedIndex::new(params.mutation_weights).expect("validated mutation weights");
    let kind = MutationKind::ALL[roulette.sample(rng)];
    (mutate_with(problem, ind, kind, rng), kind)
}

/// Applies the given operator. Vacuous cases return an unchanged copy.
pub fn mutate_with<R: Rng + ?Sized>(
    problem: &DaeProblem,
    ind: &Individual,
    kind: MutationKind,
    rng: &mut R,
) -> Individual {
    let mut states = ind.states.clone();
    match kind {
        MutationKind::AddState => {
            let buckets = problem.buckets();
            if buckets.is_empty() {
                return Individual::new(states);
            }
            let pos = rng.gen_range(0..=states.len());
            let lo = pos.checked_sub(1).map_or(buckets[0], |i| states[i].bucket);
            let hi = states.get(pos).map_or(buckets[buckets.len() - 1], |s| s.bucket);
            let range: Vec<usize> = (0..buckets.len()).filter(|&i| lo <= buckets[i] && buckets[i] <= hi).collect();
            let i = range[rng.gen_range(0..range.len())];
            let state = random_state(problem, i, rng);
            if !state.is_empty() {
                states.insert(pos, state);
            }
        }
        MutationKind::DelState => {
            if !states.is_empty() {
                states.remove(rng.gen_range(0..states.len()));
            }
        }
        MutationKind::AddAtom => {
            if !states.is_empty() {
                let k = rng.gen_range(0..states.len());
                let state = &mut states[k];
                let i = problem.bucket_index(state.bucket).expect("state bucket is an earliest start time");
                let candidates: Vec<_> =
                    problem.allowed(i).iter().copied().filter(|&a| state.accepts(problem.task(), a)).collect();
                if !candidates.is_empty() {
                    state.insert(candidates[rng.gen_range(0..candidates.len())]);
                }
            }
        }
        MutationKind::DelAtom => {
            if !states.is_empty() {
                let k = rng.gen_range(0..states.len());
                let state = &mut states[k];
                state.atoms.remove(rng.gen_range(0..state.atoms.len()));
                if state.is_empty() {
                    states.remove(k);
                }
            }
        }
    }
    Individual::new(states)
}
