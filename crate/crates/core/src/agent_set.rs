//! Fixed-capacity bitset over agent indices.
//!
//! An [`AgentSet`] is the representation of a coalition. Sets built for the
//! same instance share the same word count, so union and disjointness are a
//! handful of word operations. Up to 128 agents are stored inline.

use std::fmt;

use smallvec::{smallvec, SmallVec};

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AgentSet {
    words: SmallVec<[u64; 2]>,
}

impl AgentSet {
    /// Empty set able to hold agents `0..capacity`.
    pub fn empty(capacity: usize) -> Self {
        let n_words = capacity.div_ceil(WORD_BITS).max(1);
        AgentSet {
            words: smallvec![0; n_words],
        }
    }

    pub fn singleton(capacity: usize, agent: usize) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(agent);
        s
    }

    pub fn from_agents<I: IntoIterator<Item = usize>>(capacity: usize, agents: I) -> Self {
        let mut s = Self::empty(capacity);
        for a in agents {
            s.insert(a);
        }
        s
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        Self::from_agents(n, 0..n)
    }

    /// Number of agents the backing storage can hold.
    pub fn capacity(&self) -> usize {
        self.words.len() * WORD_BITS
    }

    #[inline]
    pub fn insert(&mut self, agent: usize) {
        let w = agent / WORD_BITS;
        assert!(w < self.words.len(), "agent {agent} exceeds set capacity");
        self.words[w] |= 1u64 << (agent % WORD_BITS);
    }

    #[inline]
    pub fn contains(&self, agent: usize) -> bool {
        self.words
            .get(agent / WORD_BITS)
            .is_some_and(|w| w & (1u64 << (agent % WORD_BITS)) != 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &AgentSet) -> AgentSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    #[inline]
    pub fn union_with(&mut self, other: &AgentSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn is_disjoint(&self, other: &AgentSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Smallest agent in the set.
    pub fn min_agent(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Agents in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a AgentSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = AgentSet::from_agents(130, [0, 5, 64, 129]);
        assert_eq!(a.len(), 4);
        assert!(a.contains(64) && !a.contains(63));
        assert_eq!(a.to_vec(), vec![0, 5, 64, 129]);
        assert_eq!(a.min_agent(), Some(0));

        let b = AgentSet::from_agents(130, [1, 65]);
        assert!(a.is_disjoint(&b));
        let u = a.union(&b);
        assert_eq!(u.to_vec(), vec![0, 1, 5, 64, 65, 129]);
        assert!(!u.is_disjoint(&b));
    }

    #[test]
    fn empty_and_full() {
        assert!(AgentSet::empty(10).is_empty());
        assert_eq!(AgentSet::empty(0).min_agent(), None);
        assert_eq!(AgentSet::full(70).len(), 70);
        assert_eq!(AgentSet::full(70).iter().last(), Some(69));
    }

    #[test]
    #[should_panic]
    fn insert_past_capacity_panics() {
        AgentSet::empty(64).insert(64);
    }
}
