//! Bidirectional breadth-first reachability over implicit graphs of fixed-width states.
//!
//! States are `u16` vectors (map tables, loops). Each side keeps an arena of
//! visited states with parent pointers; membership goes through a hash table
//! of arena indices keyed by the state's hash, with collisions resolved by
//! comparing the full vectors.

use std::hash::BuildHasher;
use std::ops::ControlFlow;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

const ROOT: u32 = u32::MAX;

pub(crate) struct StateTable {
    width: usize,
    states: Vec<u16>,
    parent: Vec<u32>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl StateTable {
    pub(crate) fn new(width: usize) -> Self {
        Self { width, states: Vec::new(), parent: Vec::new(), table: HashTable::new(), hasher: FxBuildHasher }
    }

    fn hash(hasher: &FxBuildHasher, state: &[u16]) -> u64 {
        hasher.hash_one(state)
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn get(&self, i: u32) -> &[u16] {
        let i = i as usize;
        &self.states[i * self.width..(i + 1) * self.width]
    }

    pub(crate) fn find(&self, state: &[u16]) -> Option<u32> {
        let hash = Self::hash(&self.hasher, state);
        let (states, width) = (&self.states, self.width);
        self.table.find(hash, |&i| &states[i as usize * width..(i as usize + 1) * width] == state).copied()
    }

    /// Inserts `state`; returns its new index, or `None` when already present.
    pub(crate) fn insert(&mut self, state: &[u16], parent: u32) -> Option<u32> {
        debug_assert_eq!(state.len(), self.width);
        if self.find(state).is_some() {
            return None;
        }
        let idx = self.parent.len() as u32;
        self.states.extend_from_slice(state);
        self.parent.push(parent);
        let hash = Self::hash(&self.hasher, state);
        let (states, width, hasher) = (&self.states, self.width, &self.hasher);
        self.table
            .insert_unique(hash, idx, |&i| Self::hash(hasher, &states[i as usize * width..(i as usize + 1) * width]));
        Some(idx)
    }

    /// States from `i` back to its root, `i` first.
    pub(crate) fn chain(&self, mut i: u32) -> Vec<Vec<u16>> {
        let mut out = vec![self.get(i).to_vec()];
        while self.parent[i as usize] != ROOT {
            i = self.parent[i as usize];
            out.push(self.get(i).to_vec());
        }
        out
    }
}

#[derive(Debug)]
pub(crate) enum Reach {
    /// Sequence of states from the start to a target, consecutive states adjacent.
    Found(Vec<Vec<u16>>),
    /// One side ran out of states: the start cannot reach any target.
    Exhausted,
    Budget,
}

#[derive(Debug)]
pub(crate) struct ReachReport {
    pub(crate) result: Reach,
    pub(crate) visited: usize,
}

/// Searches from `start` towards any of `targets`, always expanding the side
/// with the smaller frontier by one full level.
///
/// `neighbors(state, emit)` must enumerate the neighbours of `state` in a
/// symmetric adjacency relation and stop when `emit` breaks.
pub(crate) fn bidirectional<N>(start: &[u16], targets: &[Vec<u16>], budget: usize, mut neighbors: N) -> ReachReport
where
    N: FnMut(&[u16], &mut dyn FnMut(&[u16]) -> ControlFlow<()>) -> ControlFlow<()>,
{
    let width = start.len();
    let mut sides = [StateTable::new(width), StateTable::new(width)];
    sides[0].insert(start, ROOT);
    let mut fronts: [Vec<u32>; 2] = [vec![0], Vec::new()];
    for t in targets {
        if let Some(i) = sides[1].insert(t, ROOT) {
            fronts[1].push(i);
        }
    }
    if let Some(j) = sides[1].find(start) {
        return ReachReport { result: Reach::Found(sides[1].chain(j)), visited: sides[0].len() + sides[1].len() };
    }
    let mut visited = sides[0].len() + sides[1].len();
    if visited > budget {
        return ReachReport { result: Reach::Budget, visited };
    }

    loop {
        if fronts[0].is_empty() || fronts[1].is_empty() {
            return ReachReport { result: Reach::Exhausted, visited };
        }
        let side = if fronts[0].len() <= fronts[1].len() { 0 } else { 1 };
        let front = std::mem::take(&mut fronts[side]);
        let mut next = Vec::new();
        let mut meet: Option<(u32, u32)> = None;
        let mut over_budget = false;
        let (this, other) = {
            let (a, b) = sides.split_at_mut(1);
            if side == 0 {
                (&mut a[0], &b[0])
            } else {
                (&mut b[0], &a[0])
            }
        };
        for &u in &front {
            let state = this.get(u).to_vec();
            let _ = neighbors(&state, &mut |v: &[u16]| {
                if let Some(j) = other.find(v) {
                    meet = Some((u, j));
                    return ControlFlow::Break(());
                }
                if let Some(k) = this.insert(v, u) {
                    next.push(k);
                    visited += 1;
                    if visited > budget {
                        over_budget = true;
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            if let Some((u, j)) = meet {
                let (fwd_end, bwd_end) = if side == 0 { (u, j) } else { (j, u) };
                let mut states = sides[0].chain(fwd_end);
                states.reverse();
                states.extend(sides[1].chain(bwd_end));
                return ReachReport { result: Reach::Found(states), visited };
            }
            if over_budget {
                return ReachReport { result: Reach::Budget, visited };
            }
        }
        fronts[side] = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_neighbors(len: u16) -> impl FnMut(&[u16], &mut dyn FnMut(&[u16]) -> ControlFlow<()>) -> ControlFlow<()> {
        move |s, emit| {
            let x = s[0];
            if x > 0 {
                emit(&[x - 1])?;
            }
            if x + 1 < len {
                emit(&[x + 1])?;
            }
            ControlFlow::Continue(())
        }
    }

    #[test]
    fn finds_path_on_a_line() {
        let rep = bidirectional(&[0], &[vec![7]], usize::MAX, line_neighbors(10));
        match rep.result {
            Reach::Found(states) => {
                let xs: Vec<u16> = states.iter().map(|s| s[0]).collect();
                assert_eq!(xs, (0..=7).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn start_equal_to_target() {
        let rep = bidirectional(&[3], &[vec![3]], usize::MAX, line_neighbors(10));
        assert!(matches!(rep.result, Reach::Found(ref s) if s.len() == 1));
    }

    #[test]
    fn unreachable_target_is_exhausted() {
        let rep = bidirectional(&[0], &[vec![12]], usize::MAX, line_neighbors(10));
        assert!(matches!(rep.result, Reach::Exhausted));
    }

    #[test]
    fn budget_stops_the_search() {
        let rep = bidirectional(&[0], &[vec![900]], 20, line_neighbors(1000));
        assert!(matches!(rep.result, Reach::Budget));
        assert!(rep.visited > 20);
    }

    #[test]
    fn table_deduplicates() {
        let mut t = StateTable::new(3);
        assert_eq!(t.insert(&[1, 2, 3], ROOT), Some(0));
        assert_eq!(t.insert(&[1, 2, 3], 0), None);
        assert_eq!(t.insert(&[3, 2, 1], 0), Some(1));
        assert_eq!(t.find(&[3, 2, 1]), Some(1));
        assert_eq!(t.chain(1), vec![vec![3, 2, 1], vec![1, 2, 3]]);
    }
}
