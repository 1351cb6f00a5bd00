//! Constraint search for planners on patches.
//!
//! Each pair is a variable whose values are `r`-paths of length `m`, and in
//! the joint form also a patch number; two pairs constrain each other when
//! they sit in the same patch and their Lipschitz bound is below the
//! diameter. Domains are 128-bit sets, search uses forward checking and
//! picks the variable with the fewest remaining values (ties by pair order).
//! Candidate paths are capped per pair, so a negative answer is never a proof.

use std::collections::HashMap;

use crate::metric::FiniteMetricSpace;
use crate::paths::hop_matrix;

use super::MotionPlanner;

/// Values per variable; one bit each in a `u128` domain.
const MAX_VALUES: usize = 128;

#[derive(Debug, Clone)]
pub struct PatchSearchOptions {
    /// Largest path length tried.
    pub m_max: usize,
    /// Branch nodes allowed per path length.
    pub budget: usize,
    /// Candidate paths kept per pair (fewest moves first), at most 128 split over the patches.
    pub candidate_cap: usize,
}

impl PatchSearchOptions {
    pub fn for_space(space: &FiniteMetricSpace) -> Self {
        Self { m_max: 2 * space.len(), budget: 5_000, candidate_cap: MAX_VALUES }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatchSearch {
    Found(MotionPlanner),
    NotFoundWithinHorizon,
}

/// Tries path lengths from the largest hop distance in the patch up to `m_max`.
pub fn search_patch_planner(
    space: &FiniteMetricSpace,
    patch: &[(usize, usize)],
    r: f64,
    opts: &PatchSearchOptions,
) -> PatchSearch {
    match search_planner_cover(space, patch, r, 1, opts) {
        Some(mut planners) => PatchSearch::Found(planners.remove(0)),
        None => PatchSearch::NotFoundWithinHorizon,
    }
}

/// Splits `pairs` into at most `k` patches and finds a planner on each, all
/// in one search. Returns the non-empty patches' planners.
pub fn search_planner_cover(
    space: &FiniteMetricSpace,
    pairs: &[(usize, usize)],
    r: f64,
    k: usize,
    opts: &PatchSearchOptions,
) -> Option<Vec<MotionPlanner>> {
    assert!((1..=MAX_VALUES).contains(&k), "between 1 and 128 patches");
    if pairs.is_empty() {
        return None;
    }
    let hops = hop_matrix(space, r);
    let m_min = pairs.iter().map(|&(x, y)| hops[x][y]).max()?;
    if m_min == usize::MAX {
        return None;
    }
    for m in m_min..=opts.m_max.max(m_min) {
        if let Some(planners) = solve_at_length(space, pairs, r, m, k, &hops, opts) {
            debug_assert!(planners.iter().all(|p| super::verify_planner(space, p).is_ok()));
            return Some(planners);
        }
    }
    None
}

/// Length-`m` `r`-paths from `x` to `y`, fewest moves first, then lexicographic.
pub(crate) fn candidate_paths(
    space: &FiniteMetricSpace,
    r: f64,
    x: usize,
    y: usize,
    m: usize,
    hops: &[Vec<usize>],
    cap: usize,
) -> Vec<Vec<usize>> {
    let n = space.len();
    let steps: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&v| space.le(space.d(u, v), r)).collect()).collect();
    // enumerate generously, then keep the `cap` with fewest moves
    let limit = cap.saturating_mul(16).max(cap);
    let mut out = Vec::new();
    let mut cur = vec![x];
    enumerate(&steps, hops, y, m, &mut cur, &mut out, limit);
    let moves = |p: &Vec<usize>| p.windows(2).filter(|w| w[0] != w[1]).count();
    out.sort_by(|a, b| moves(a).cmp(&moves(b)).then_with(|| a.cmp(b)));
    out.truncate(cap);
    out
}

fn enumerate(
    steps: &[Vec<usize>],
    hops: &[Vec<usize>],
    y: usize,
    m: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let here = *cur.last().unwrap();
    let left = m + 1 - cur.len();
    if left == 0 {
        if here == y {
            out.push(cur.clone());
        }
        return;
    }
    for &v in &steps[here] {
        if hops[v][y] < left {
            cur.push(v);
            enumerate(steps, hops, y, m, cur, out, limit);
            cur.pop();
        }
    }
}

/// Cached support sets are dropped when their total size passes this many words.
const CACHE_WORDS: usize = 1 << 23;

struct Csp<'a> {
    space: &'a FiniteMetricSpace,
    /// Value `v` of a variable means patch `v % k`, candidate `v / k`.
    k: usize,
    cands: Vec<Vec<Vec<usize>>>,
    /// For each variable, the other variables it constrains with their bound.
    arcs: Vec<Vec<(usize, f64)>>,
    domains: Vec<u128>,
    assigned: Vec<Option<u8>>,
    /// `(var, value)` → for each arc, the other variable's compatible values.
    support: HashMap<(usize, u8), Vec<u128>>,
    cached_words: usize,
    nodes: usize,
    budget: usize,
}

fn solve_at_length(
    space: &FiniteMetricSpace,
    pairs: &[(usize, usize)],
    r: f64,
    m: usize,
    k: usize,
    hops: &[Vec<usize>],
    opts: &PatchSearchOptions,
) -> Option<Vec<MotionPlanner>> {
    let cap = opts.candidate_cap.min(MAX_VALUES / k).max(1);
    let cands: Vec<Vec<Vec<usize>>> =
        pairs.iter().map(|&(x, y)| candidate_paths(space, r, x, y, m, hops, cap)).collect();
    if cands.iter().any(|c| c.is_empty()) {
        return None;
    }
    let diameter = space.diameter();
    let n = pairs.len();
    let mut arcs = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let bound = space.d(pairs[a].0, pairs[b].0) + space.d(pairs[a].1, pairs[b].1);
            if bound + space.eps() < diameter {
                arcs[a].push((b, bound));
            }
        }
    }
    let mut domains: Vec<u128> = cands.iter().map(|c| low_bits(c.len() * k)).collect();
    // patches are interchangeable: the first pair goes to patch 0
    if k > 1 {
        domains[0] &= (0..cands[0].len()).fold(0u128, |acc, c| acc | 1u128 << (c * k));
    }
    let mut csp = Csp {
        space,
        k,
        cands,
        arcs,
        domains,
        assigned: vec![None; n],
        support: HashMap::new(),
        cached_words: 0,
        nodes: 0,
        budget: opts.budget,
    };
    if !csp.solve() {
        return None;
    }
    let mut planners: Vec<MotionPlanner> =
        (0..k).map(|_| MotionPlanner { r, m, domain: Vec::new(), paths: Vec::new() }).collect();
    for (v, val) in csp.assigned.iter().enumerate() {
        let val = val.expect("complete assignment") as usize;
        let p = &mut planners[val % k];
        p.domain.push(pairs[v]);
        p.paths.push(csp.cands[v][val / k].clone());
    }
    planners.retain(|p| !p.domain.is_empty());
    Some(planners)
}

fn low_bits(count: usize) -> u128 {
    if count >= 128 {
        u128::MAX
    } else {
        (1u128 << count) - 1
    }
}

fn bits(mut set: u128) -> impl Iterator<Item = u8> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let b = set.trailing_zeros() as u8;
        set &= set - 1;
        Some(b)
    })
}

impl Csp<'_> {
    fn compatible(&self, p: &[usize], q: &[usize], bound: f64) -> bool {
        p.iter().zip(q).all(|(&u, &v)| self.space.le(self.space.d(u, v), bound))
    }

    fn supports(&mut self, var: usize, val: u8) -> &[u128] {
        if !self.support.contains_key(&(var, val)) {
            let k = self.k;
            let path = &self.cands[var][val as usize / k];
            let patch = val as usize % k;
            let sets: Vec<u128> = self.arcs[var]
                .iter()
                .map(|&(other, bound)| {
                    let mut set = 0u128;
                    for (c, q) in self.cands[other].iter().enumerate() {
                        for pk in 0..k {
                            if pk != patch || self.compatible(path, q, bound) {
                                set |= 1u128 << (c * k + pk);
                            }
                        }
                    }
                    set
                })
                .collect();
            self.cached_words += sets.len();
            if self.cached_words > CACHE_WORDS {
                self.support.clear();
                self.cached_words = sets.len();
            }
            self.support.insert((var, val), sets);
        }
        &self.support[&(var, val)]
    }

    fn solve(&mut self) -> bool {
        let Some(var) = (0..self.assigned.len())
            .filter(|&v| self.assigned[v].is_none())
            .min_by_key(|&v| self.domains[v].count_ones())
        else {
            return true;
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        for val in bits(self.domains[var]) {
            let sets = self.supports(var, val).to_vec();
            let mut trail: Vec<(usize, u128)> = Vec::new();
            let mut dead = false;
            for (i, &(other, _)) in self.arcs[var].iter().enumerate() {
                if self.assigned[other].is_some() {
                    continue;
                }
                let narrowed = self.domains[other] & sets[i];
                if narrowed != self.domains[other] {
                    trail.push((other, self.domains[other]));
                    self.domains[other] = narrowed;
                    if narrowed == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                self.assigned[var] = Some(val);
                if self.solve() {
                    return true;
                }
                self.assigned[var] = None;
            }
            for (other, old) in trail.into_iter().rev() {
                self.domains[other] = old;
            }
            if self.nodes > self.budget {
                return false;
            }
        }
        false
    }
}
