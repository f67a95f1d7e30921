use crate::graph::VertexId;

const ABSENT: u32 = u32::MAX;

/// Set of active vertices with O(1) insert, remove and membership test.
///
/// `contains(v)` holds iff `v` appears exactly once in `as_slice()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pos: Vec<u32>,
    active: Vec<u32>,
}

impl Frontier {
    pub fn new(n: usize) -> Self {
        Self { pos: vec![ABSENT; n], active: Vec::new() }
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v] != ABSENT
    }

    /// Returns `false` if `v` was already present.
    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        if self.contains(v) {
            return false;
        }
        self.pos[v] = self.active.len() as u32;
        self.active.push(v as u32);
        true
    }

    /// Returns `false` if `v` was absent.
    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        let p = self.pos[v];
        if p == ABSENT {
            return false;
        }
        self.active.swap_remove(p as usize);
        if let Some(&moved) = self.active.get(p as usize) {
            self.pos[moved as usize] = p;
        }
        self.pos[v] = ABSENT;
        true
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.active
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.active.iter().map(|&v| v as VertexId)
    }

    pub fn clear(&mut self) {
        for &v in &self.active {
            self.pos[v as usize] = ABSENT;
        }
        self.active.clear();
    }

    /// Empties the set, returning its members in insertion order when no
    /// removals happened in between.
    pub fn drain(&mut self) -> Vec<VertexId> {
        let out = self.iter().collect();
        self.clear();
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(VertexId) -> bool) {
        let mut i = 0;
        while i < self.active.len() {
            let v = self.active[i] as VertexId;
            if keep(v) {
                i += 1;
            } else {
                self.remove(v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn membership_matches_list(ops in prop::collection::vec((any::<bool>(), 0usize..16), 0..200)) {
            let mut f = Frontier::new(16);
            let mut model = std::collections::BTreeSet::new();
            for (ins, v) in ops {
                if ins {
                    prop_assert_eq!(f.insert(v), model.insert(v));
                } else {
                    prop_assert_eq!(f.remove(v), model.remove(&v));
                }
                let mut listed: Vec<_> = f.iter().collect();
                listed.sort();
                prop_assert_eq!(listed, model.iter().copied().collect::<Vec<_>>());
                for v in 0..16 {
                    prop_assert_eq!(f.contains(v), model.contains(&v));
                }
            }
        }
    }

    #[test]
    fn retain_and_drain() {
        let mut f = Frontier::new(8);
        for v in [3, 1, 4, 5, 2] {
            f.insert(v);
        }
        f.retain(|v| v % 2 == 1);
        let mut left = f.drain();
        left.sort();
        assert_eq!(left, vec![1, 3, 5]);
        assert!(f.is_empty() && !f.contains(3));
    }
}
