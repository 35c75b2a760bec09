//! Exhaustive bi-objective search for exact MultiZeno fronts.
//!
//! The search walks decision epochs of left-shifted schedules. A state holds,
//! for every plane and passenger, its current (or destination) city and the
//! time it becomes free. At each epoch every free plane either starts a
//! flight, empty or carrying one free passenger from its city, or waits for
//! the next event. Planes are interchangeable, and so are passengers, so
//! states are kept in a canonical sorted form. Labels `(now, secondary)` are
//! pruned by Pareto dominance per canonical state and by lower bounds
//! against the incumbent solutions.
//!
//! This module works directly on the instance parameters and does not share
//! code with the ground model, so it can serve as an independent check.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::error::ModelError;
use crate::multizeno::MultiZenoConfig;
use crate::objective::{pareto_filter, ObjectivePoint, ParetoFront};
use crate::quantity::Tenths;
use crate::task::ObjectiveMode;

/// Largest bunch count the oracle accepts.
pub const ORACLE_MAX_K: usize = 2;

const MAX_OBJECTS: usize = 3 * ORACLE_MAX_K;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Slot {
    city: u8,
    free_at: i64,
}

/// One flight started at an epoch; `passenger` is `NO_PASSENGER` when empty.
#[derive(Clone, Copy, Debug, Default)]
struct Move {
    plane: u8,
    passenger: u8,
    from: u8,
    to: u8,
}

const NO_PASSENGER: u8 = u8::MAX;
const NO_PARENT: usize = usize::MAX;

/// Search node. Objects keep their identities so that witness plans can be
/// rebuilt; only the dominance key is canonical.
#[derive(Clone, Copy, Debug)]
struct Node {
    planes: [Slot; MAX_OBJECTS],
    people: [Slot; MAX_OBJECTS],
    now: i64,
    secondary: i64,
    parent: usize,
    /// Time at which `moves` were started.
    epoch: i64,
    moves: [Move; MAX_OBJECTS],
    move_count: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Key {
    planes: [Slot; MAX_OBJECTS],
    people: [Slot; MAX_OBJECTS],
}

struct Edge {
    to: u8,
    duration: i64,
    weight: i64,
}

struct Search<'a> {
    cfg: &'a MultiZenoConfig,
    plane_count: usize,
    people_count: usize,
    dest: u8,
    edges: Vec<Vec<Edge>>,
    /// Minimal remaining loaded travel time from each city to the destination.
    remaining: Vec<i64>,
    min_weight: i64,
    horizon: i64,
    labels: FxHashMap<Key, Vec<(i64, i64)>>,
    nodes: Vec<Node>,
    open: BinaryHeap<Reverse<(i64, i64, usize)>>,
    /// Incumbent non-dominated `(makespan, secondary, node)` triples.
    solutions: Vec<(i64, i64, usize)>,
}

/// A flight of a witness plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessFlight {
    pub start: Tenths,
    pub plane: usize,
    pub passenger: Option<usize>,
    pub from: usize,
    pub to: usize,
}

/// A front point together with a schedule achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: ObjectivePoint,
    pub flights: Vec<WitnessFlight>,
}

/// Exact front by exhaustive search; limited to `k <= 2`.
pub fn exact_front_oracle(cfg: &MultiZenoConfig) -> Result<ParetoFront, ModelError> {
    let points: Vec<ObjectivePoint> = oracle_witnesses(cfg)?.into_iter().map(|w| w.point).collect();
    pareto_filter(&points)
}

/// Runs the exhaustive search and returns one witness schedule per front point,
/// sorted by makespan.
pub fn oracle_witnesses(cfg: &MultiZenoConfig) -> Result<Vec<Witness>, ModelError> {
    cfg.validate()?;
    if cfg.k > ORACLE_MAX_K {
        return Err(ModelError::InstanceTooLarge(format!(
            "the exhaustive oracle handles k <= {ORACLE_MAX_K}, got k = {}",
            cfg.k
        )));
    }
    let mut search = Search::new(cfg);
    search.run();
    let mut solutions = search.solutions.clone();
    solutions.sort();
    Ok(solutions.iter().map(|&(t, s, id)| search.witness(t, s, id)).collect())
}

impl<'a> Search<'a> {
    fn new(cfg: &'a MultiZenoConfig) -> Self {
        let central = cfg.central_cities();
        let dest = cfg.destination();
        let weights = cfg.secondary_weights();
        let mut edges: Vec<Vec<Edge>> = (0..cfg.city_count()).map(|_| Vec::new()).collect();
        for (i, (d, w)) in cfg.durations.iter().zip(weights).enumerate().take(central) {
            let c = i + 1;
            let (d, w) = (d.raw(), w.raw());
            edges[0].push(Edge { to: c as u8, duration: d, weight: w });
            edges[c].push(Edge { to: 0, duration: d, weight: 0 });
            edges[c].push(Edge { to: dest as u8, duration: d, weight: 0 });
            edges[dest].push(Edge { to: c as u8, duration: d, weight: w });
        }
        let min_duration = cfg.durations.iter().map(|d| d.raw()).min().unwrap_or(0);
        let mut remaining = vec![2 * min_duration; cfg.city_count()];
        for i in 0..central {
            remaining[i + 1] = cfg.durations[i].raw();
        }
        remaining[dest] = 0;
        let max_duration = cfg.durations.iter().map(|d| d.raw()).max().unwrap_or(0);
        let flights_per_plane = (2 * cfg.passengers() + cfg.planes) as i64;
        // A left-shifted plan never exceeds the sum of its durations.
        let horizon = cfg.planes as i64 * flights_per_plane * max_duration;

        Search {
            cfg,
            plane_count: cfg.planes,
            people_count: cfg.passengers(),
            dest: dest as u8,
            edges,
            remaining,
            min_weight: weights.iter().map(|w| w.raw()).min().unwrap_or(0),
            horizon,
            labels: FxHashMap::default(),
            nodes: Vec::new(),
            open: BinaryHeap::new(),
            solutions: Vec::new(),
        }
    }

    fn key(&self, node: &Node) -> Key {
        let rel = |s: Slot| Slot { city: s.city, free_at: (s.free_at - node.now).max(0) };
        let mut key = Key { planes: [Slot::default(); MAX_OBJECTS], people: [Slot::default(); MAX_OBJECTS] };
        for i in 0..self.plane_count {
            key.planes[i] = rel(node.planes[i]);
        }
        for i in 0..self.people_count {
            key.people[i] = rel(node.people[i]);
        }
        key.planes[..self.plane_count].sort();
        key.people[..self.people_count].sort();
        key
    }

    fn combine(&self, acc: i64, weight: i64) -> i64 {
        match self.cfg.mode {
            ObjectiveMode::Cost => acc + weight,
            ObjectiveMode::Risk => acc.max(weight),
        }
    }

    fn lower_bound(&self, node: &Node) -> (i64, i64) {
        let mut time = node.now;
        let mut waiting_at_origin = 0;
        for p in &node.people[..self.people_count] {
            let city = p.city as usize;
            time = time.max(p.free_at.max(node.now) + self.remaining[city]);
            if city == 0 {
                waiting_at_origin += 1;
            }
        }
        let secondary = match self.cfg.mode {
            ObjectiveMode::Cost => node.secondary + waiting_at_origin * self.min_weight,
            ObjectiveMode::Risk if waiting_at_origin > 0 => node.secondary.max(self.min_weight),
            ObjectiveMode::Risk => node.secondary,
        };
        (time, secondary)
    }

    fn beaten_by_incumbent(&self, node: &Node) -> bool {
        let (t, s) = self.lower_bound(node);
        self.solutions.iter().any(|&(st, ss, _)| st <= t && ss <= s)
    }

    /// Inserts a label unless dominated; returns whether it was kept.
    fn insert_label(&mut self, key: Key, now: i64, secondary: i64) -> bool {
        let list = self.labels.entry(key).or_default();
        if list.iter().any(|&(n, s)| n <= now && s <= secondary) {
            return false;
        }
        list.retain(|&(n, s)| !(now <= n && secondary <= s));
        list.push((now, secondary));
        true
    }

    fn push(&mut self, node: Node) {
        if node.now > self.horizon || self.beaten_by_incumbent(&node) {
            return;
        }
        let key = self.key(&node);
        if self.insert_label(key, node.now, node.secondary) {
            let id = self.nodes.len();
            self.nodes.push(node);
            self.open.push(Reverse((node.now, node.secondary, id)));
        }
    }

    fn run(&mut self) {
        let start = Node {
            planes: [Slot { city: 0, free_at: 0 }; MAX_OBJECTS],
            people: [Slot { city: 0, free_at: 0 }; MAX_OBJECTS],
            now: 0,
            secondary: 0,
            parent: NO_PARENT,
            epoch: 0,
            moves: [Move::default(); MAX_OBJECTS],
            move_count: 0,
        };
        self.push(start);
        while let Some(Reverse((now, secondary, id))) = self.open.pop() {
            let node = self.nodes[id];
            let key = self.key(&node);
            let alive = self.labels.get(&key).is_some_and(|l| l.contains(&(now, secondary)));
            if !alive || self.beaten_by_incumbent(&node) {
                continue;
            }
            let free: Vec<usize> = (0..self.plane_count).filter(|&i| node.planes[i].free_at <= now).collect();
            let mut successors = Vec::new();
            let template = Node { parent: id, epoch: now, move_count: 0, ..node };
            self.assign(&template, &free, 0, 0, &mut successors);
            for succ in successors {
                self.settle(succ);
            }
        }
    }

    /// Enumerates joint decisions of the free planes at the current epoch.
    fn assign(&self, node: &Node, free: &[usize], pos: usize, used: u32, out: &mut Vec<Node>) {
        if pos == free.len() {
            let busy = (0..self.plane_count).any(|i| node.planes[i].free_at > node.now);
            if node.move_count > 0 || busy {
                out.push(*node);
            }
            return;
        }
        let plane = free[pos];
        let here = node.planes[plane].city;

        // Wait for the next event.
        self.assign(node, free, pos + 1, used, out);

        let passenger = (0..self.people_count)
            .find(|&q| used & (1 << q) == 0 && node.people[q].city == here && node.people[q].free_at <= node.now);
        for edge in &self.edges[here as usize] {
            let arrive = node.now + edge.duration;
            let mut next = *node;
            next.planes[plane] = Slot { city: edge.to, free_at: arrive };
            next.secondary = self.combine(node.secondary, edge.weight);
            let flight = Move { plane: plane as u8, passenger: NO_PASSENGER, from: here, to: edge.to };
            next.moves[next.move_count as usize] = flight;
            next.move_count += 1;
            self.assign(&next, free, pos + 1, used, out);

            if let Some(q) = passenger {
                next.people[q] = Slot { city: edge.to, free_at: arrive };
                next.moves[next.move_count as usize - 1].passenger = q as u8;
                self.assign(&next, free, pos + 1, used | (1 << q), out);
            }
        }
    }

    /// Records goal states; advances the others to their next event.
    fn settle(&mut self, mut node: Node) {
        let planes = &node.planes[..self.plane_count];
        let people = &node.people[..self.people_count];
        if people.iter().all(|p| p.city == self.dest) {
            let end = planes.iter().chain(people).map(|s| s.free_at).max().unwrap_or(0).max(node.now);
            if !self.solutions.iter().any(|&(t, s, _)| t <= end && s <= node.secondary) {
                self.solutions.retain(|&(t, s, _)| !(end <= t && node.secondary <= s));
                let id = self.nodes.len();
                self.nodes.push(node);
                self.solutions.push((end, node.secondary, id));
            }
            return;
        }
        let Some(next) = planes.iter().map(|s| s.free_at).filter(|&t| t > node.now).min() else {
            return;
        };
        node.now = next;
        self.push(node);
    }

    fn witness(&self, makespan: i64, secondary: i64, mut id: usize) -> Witness {
        let mut flights = Vec::new();
        while id != NO_PARENT {
            let node = &self.nodes[id];
            for m in &node.moves[..node.move_count as usize] {
                flights.push(WitnessFlight {
                    start: Tenths::from_raw(node.epoch),
                    plane: m.plane as usize,
                    passenger: (m.passenger != NO_PASSENGER).then_some(m.passenger as usize),
                    from: m.from as usize,
                    to: m.to as usize,
                });
            }
            id = node.parent;
        }
        flights.reverse();
        Witness { point: ObjectivePoint::new(Tenths::from_raw(makespan), Tenths::from_raw(secondary)), flights }
    }
}
