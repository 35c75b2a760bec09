//! Ground atoms and fixed-capacity atom sets.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Predicate {
    PlaneAt,
    PersonAt,
}

/// A ground Boolean fact: `object` is at `city`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub predicate: Predicate,
    pub object: usize,
    pub city: usize,
}

impl Atom {
    pub fn plane_at(plane: usize, city: usize) -> Self {
        Atom { predicate: Predicate::PlaneAt, object: plane, city }
    }

    pub fn person_at(passenger: usize, city: usize) -> Self {
        Atom { predicate: Predicate::PersonAt, object: passenger, city }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.predicate {
            Predicate::PlaneAt => write!(f, "PlaneAt({},{})", self.object, self.city),
            Predicate::PersonAt => write!(f, "PersonAt({},{})", self.object, self.city),
        }
    }
}

/// Approximate mutex relation: one object cannot be in two cities.
pub fn mutex(a: &Atom, b: &Atom) -> bool {
    a.predicate == b.predicate && a.object == b.object && a.city != b.city
}

/// Index of an atom in its task's universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomId(pub u16);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const WORDS: usize = 4;

/// A set of atom ids backed by a 256-bit bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet([u64; WORDS]);

impl AtomSet {
    pub const CAPACITY: usize = WORDS * 64;

    pub fn new() -> Self {
        AtomSet([0; WORDS])
    }

    pub fn from_ids<I: IntoIterator<Item = AtomId>>(ids: I) -> Self {
        let mut s = AtomSet::new();
        for id in ids {
            s.insert(id);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, id: AtomId) {
        let i = id.index();
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, id: AtomId) {
        let i = id.index();
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, id: AtomId) -> bool {
        let i = id.index();
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &AtomSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = *self;
        for (o, b) in out.0.iter_mut().zip(other.0.iter()) {
            *o |= b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut out = *self;
        for (o, b) in out.0.iter_mut().zip(other.0.iter()) {
            *o &= !b;
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut out = *self;
        for (o, b) in out.0.iter_mut().zip(other.0.iter()) {
            *o &= b;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterates ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(AtomId((w * 64 + tz) as u16))
            })
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<AtomId> for AtomSet {
    fn from_iter<T: IntoIterator<Item = AtomId>>(iter: T) -> Self {
        AtomSet::from_ids(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutex_examples() {
        assert!(mutex(&Atom::plane_at(0, 0), &Atom::plane_at(0, 1)));
        assert!(!mutex(&Atom::plane_at(0, 0), &Atom::plane_at(1, 0)));
        assert!(!mutex(&Atom::person_at(2, 4), &Atom::plane_at(0, 4)));
        assert!(!mutex(&Atom::plane_at(1, 3), &Atom::plane_at(1, 3)));
    }

    #[test]
    fn set_operations() {
        let a = AtomSet::from_ids([AtomId(1), AtomId(70), AtomId(200)]);
        let b = AtomSet::from_ids([AtomId(70)]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.len(), 3);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![AtomId(1), AtomId(200)]);
        assert!(a.intersects(&b));
        let mut c = a;
        c.remove(AtomId(200));
        assert!(!c.contains(AtomId(200)));
        assert!(AtomSet::new().is_empty());
    }
}
