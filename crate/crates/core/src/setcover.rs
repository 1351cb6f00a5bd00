//! Greedy and exact minimum set cover over bitsets.

use fixedbitset::FixedBitSet;

/// Greedy cover: repeatedly takes the set covering the most uncovered
/// elements, ties to the smaller set, then to the earlier index.
///
/// Returns indices into `sets`, or `None` when the sets do not cover the universe.
pub fn greedy_cover(universe: usize, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut uncovered = FixedBitSet::with_capacity(universe);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while !uncovered.is_clear() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, s) in sets.iter().enumerate() {
            let gain = s.intersection_count(&uncovered);
            if gain == 0 {
                continue;
            }
            let size = s.count_ones(..);
            let better = match best {
                None => true,
                Some((g, sz, _)) => gain > g || (gain == g && size < sz),
            };
            if better {
                best = Some((gain, size, i));
            }
        }
        let (_, _, i) = best?;
        uncovered.difference_with(&sets[i]);
        chosen.push(i);
    }
    Some(chosen)
}

/// Minimum-cardinality cover by branch and bound.
///
/// Branches on the lowest uncovered element, trying the sets that contain it
/// largest first; prunes when even perfectly disjoint largest sets could not
/// beat the incumbent. `node_budget` caps the number of branch nodes; the
/// second return value is `false` when the cap was hit (the cover returned is
/// then only the best found so far).
pub fn exact_cover(universe: usize, sets: &[FixedBitSet], node_budget: usize) -> (Option<Vec<usize>>, bool) {
    let mut incumbent = greedy_cover(universe, sets);
    if incumbent.is_none() {
        return (None, true);
    }
    let max_size = sets.iter().map(|s| s.count_ones(..)).max().unwrap_or(0).max(1);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (i, s) in sets.iter().enumerate() {
        for e in s.ones() {
            containing[e].push(i);
        }
    }
    for list in &mut containing {
        list.sort_by_key(|&i| (std::cmp::Reverse(sets[i].count_ones(..)), i));
    }
    let mut uncovered = FixedBitSet::with_capacity(universe);
    uncovered.insert_range(..);
    let mut search = Bnb { sets, containing: &containing, max_size, nodes: 0, node_budget, complete: true };
    let mut current = Vec::new();
    search.branch(&uncovered, &mut current, &mut incumbent);
    (incumbent, search.complete)
}

struct Bnb<'a> {
    sets: &'a [FixedBitSet],
    containing: &'a [Vec<usize>],
    max_size: usize,
    nodes: usize,
    node_budget: usize,
    complete: bool,
}

impl Bnb<'_> {
    fn branch(&mut self, uncovered: &FixedBitSet, current: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        let Some(e) = uncovered.ones().next() else {
            if best.as_ref().map_or(true, |b| current.len() < b.len()) {
                *best = Some(current.clone());
            }
            return;
        };
        let remaining = uncovered.count_ones(..);
        let bound = current.len() + remaining.div_ceil(self.max_size);
        if best.as_ref().is_some_and(|b| bound >= b.len()) {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.complete = false;
            return;
        }
        for &i in &self.containing[e] {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[i]);
            current.push(i);
            self.branch(&next, current, best);
            current.pop();
            if !self.complete {
                return;
            }
        }
    }
}

pub(crate) fn bitset_of(universe: usize, elements: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(universe);
    for &e in elements {
        b.insert(e);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(universe: usize, lists: &[&[usize]]) -> Vec<FixedBitSet> {
        lists.iter().map(|l| bitset_of(universe, l)).collect()
    }

    #[test]
    fn greedy_picks_largest_gain() {
        let s = sets(5, &[&[0, 1], &[0, 1, 2, 3], &[3, 4], &[4]]);
        assert_eq!(greedy_cover(5, &s), Some(vec![1, 3]));
        assert_eq!(greedy_cover(6, &s), None);
    }

    #[test]
    fn exact_beats_greedy() {
        // greedy takes the middle set first and needs three
        let s = sets(6, &[&[0, 1, 2], &[3, 4, 5], &[1, 2, 3, 4], &[0], &[5]]);
        assert_eq!(greedy_cover(6, &s).unwrap().len(), 3);
        let (best, complete) = exact_cover(6, &s, usize::MAX);
        assert!(complete);
        assert_eq!(best, Some(vec![0, 1]));
    }

    #[test]
    fn exact_matches_brute_force() {
        let lists: Vec<Vec<usize>> =
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0], vec![0, 2], vec![1, 3, 4]];
        let refs: Vec<&[usize]> = lists.iter().map(|l| l.as_slice()).collect();
        let s = sets(5, &refs);
        let brute = (1u32..1 << s.len())
            .filter(|mask| {
                let mut u = FixedBitSet::with_capacity(5);
                for i in 0..s.len() {
                    if mask & (1 << i) != 0 {
                        u.union_with(&s[i]);
                    }
                }
                u.count_ones(..) == 5
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap();
        assert_eq!(exact_cover(5, &s, usize::MAX).0.unwrap().len(), brute);
    }
}
