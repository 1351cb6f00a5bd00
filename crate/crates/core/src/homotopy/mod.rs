//! `(s, r)`-homotopies: verification and exact search.
//!
//! An `(s, r)`-homotopy from `f` to `g` is a finite sequence of maps
//! `F(-, 0) = f, ..., F(-, m) = g` in which every frame is `s`-Lipschitz and
//! every track `i ↦ F(x, i)` is `r`-Lipschitz. Over a finite codomain the
//! `s`-Lipschitz maps form a finite graph (edges join maps at uniform distance
//! at most `r`), so deciding homotopy is plain reachability in that graph.

mod neighbors;

use std::ops::ControlFlow;

use thiserror::Error;

use crate::lipmap::{is_lipschitz, MapError};
use crate::metric::FiniteMetricSpace;
use crate::search::{bidirectional, Reach};

pub(crate) use neighbors::NeighborGen;

/// Default cap on the number of maps a search may visit.
pub const DEFAULT_STATE_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomotopyViolation {
    #[error("the grid has no frames")]
    Empty,
    #[error("frame {frame} is not a total map into the codomain")]
    BadFrame { frame: usize },
    #[error("frame {frame} is not {s}-Lipschitz at points ({x}, {y})")]
    FrameNotLipschitz { frame: usize, x: usize, y: usize, s: f64 },
    #[error("track of point {x} moves more than r·{} between frames {from} and {to}", to - from)]
    TrackNotLipschitz { x: usize, from: usize, to: usize },
    #[error("frame 0 differs from the start map at point {x}")]
    StartMismatch { x: usize },
    #[error("last frame differs from the end map at point {x}")]
    EndMismatch { x: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomotopyError {
    #[error("start map: {0}")]
    Start(MapError),
    #[error("target map: {0}")]
    Target(MapError),
    #[error("codomain has more than 65535 points")]
    TooLarge,
}

/// A grid `F: X × [m] → Y`, stored frame by frame.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyGrid {
    pub s: f64,
    pub r: f64,
    pub frames: Vec<Vec<usize>>,
}

impl HomotopyGrid {
    pub fn new(s: f64, r: f64, frames: Vec<Vec<usize>>) -> Self {
        Self { s, r, frames }
    }

    /// The length-zero homotopy from `f` to itself.
    pub fn stationary(s: f64, r: f64, f: Vec<usize>) -> Self {
        Self { s, r, frames: vec![f] }
    }

    /// Number of steps `m`.
    pub fn m(&self) -> usize {
        self.frames.len().saturating_sub(1)
    }

    pub fn start(&self) -> &[usize] {
        &self.frames[0]
    }

    pub fn end(&self) -> &[usize] {
        self.frames.last().expect("non-empty grid")
    }

    /// `F(x, i)`.
    pub fn at(&self, x: usize, i: usize) -> usize {
        self.frames[i][x]
    }

    /// The track `i ↦ F(x, i)`.
    pub fn track(&self, x: usize) -> Vec<usize> {
        self.frames.iter().map(|f| f[x]).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut frames = self.frames.clone();
        frames.reverse();
        Self { s: self.s, r: self.r, frames }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &HomotopyGrid) -> Option<Self> {
        if self.end() != other.start() {
            return None;
        }
        let mut frames = self.frames.clone();
        frames.extend_from_slice(&other.frames[1..]);
        Some(Self { s: self.s.max(other.s), r: self.r.max(other.r), frames })
    }

    /// Pads with copies of the last frame up to `m` steps.
    pub fn padded(&self, m: usize) -> Self {
        let mut frames = self.frames.clone();
        let last = self.end().to_vec();
        while frames.len() < m + 1 {
            frames.push(last.clone());
        }
        Self { s: self.s, r: self.r, frames }
    }
}

/// Checks both Lipschitz conditions of a grid (every pair of frames along each track).
pub fn verify_grid(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    grid: &HomotopyGrid,
) -> Result<(), HomotopyViolation> {
    if grid.frames.is_empty() {
        return Err(HomotopyViolation::Empty);
    }
    for (frame, table) in grid.frames.iter().enumerate() {
        match is_lipschitz(domain, codomain, table, grid.s) {
            Ok(()) => {}
            Err(MapError::NotLipschitz { x, y, s, .. }) => {
                return Err(HomotopyViolation::FrameNotLipschitz { frame, x, y, s })
            }
            Err(_) => return Err(HomotopyViolation::BadFrame { frame }),
        }
    }
    let frames = &grid.frames;
    for x in 0..domain.len() {
        for i in 0..frames.len() {
            for j in i + 1..frames.len() {
                let d = codomain.d(frames[i][x], frames[j][x]);
                if !codomain.le(d, grid.r * (j - i) as f64) {
                    return Err(HomotopyViolation::TrackNotLipschitz { x, from: i, to: j });
                }
            }
        }
    }
    Ok(())
}

/// Checks that `grid` is an `(s, r)`-homotopy from `f` to `g`.
pub fn verify_homotopy(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    grid: &HomotopyGrid,
    f: &[usize],
    g: &[usize],
) -> Result<(), HomotopyViolation> {
    verify_grid(domain, codomain, grid)?;
    if let Some(x) = first_difference(grid.start(), f) {
        return Err(HomotopyViolation::StartMismatch { x });
    }
    if let Some(x) = first_difference(grid.end(), g) {
        return Err(HomotopyViolation::EndMismatch { x });
    }
    Ok(())
}

fn first_difference(a: &[usize], b: &[usize]) -> Option<usize> {
    if a.len() != b.len() {
        return Some(a.len().min(b.len()));
    }
    a.iter().zip(b).position(|(p, q)| p != q)
}

/// What the search is trying to reach.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Map(&'a [usize]),
    /// Any constant map; the first one reached wins.
    AnyConstant,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Found(HomotopyGrid),
    /// The start's component of the map graph was exhausted without meeting a target.
    Impossible,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub states_visited: usize,
}

/// Exact search for an `(s, r)`-homotopy from `f` to the target.
///
/// `Impossible` is a proof of non-existence; `BudgetExhausted` means more than
/// `budget` maps were visited before the question was settled.
pub fn homotopy_search(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    f: &[usize],
    target: Target<'_>,
    s: f64,
    r: f64,
    budget: usize,
) -> Result<SearchOutcome, HomotopyError> {
    if codomain.len() > u16::MAX as usize {
        return Err(HomotopyError::TooLarge);
    }
    is_lipschitz(domain, codomain, f, s).map_err(HomotopyError::Start)?;
    let targets: Vec<Vec<u16>> = match target {
        Target::Map(g) => {
            is_lipschitz(domain, codomain, g, s).map_err(HomotopyError::Target)?;
            vec![to_u16(g)]
        }
        Target::AnyConstant => (0..codomain.len()).map(|p| vec![p as u16; domain.len()]).collect(),
    };
    let gen = NeighborGen::new(domain, codomain, s, r);
    let report = bidirectional(&to_u16(f), &targets, budget, |state, emit| gen.for_each(state, emit));
    let verdict = match report.result {
        Reach::Found(states) => {
            let frames: Vec<Vec<usize>> = states.iter().map(|s| from_u16(s)).collect();
            let grid = HomotopyGrid::new(s, r, frames);
            let end = grid.end().to_vec();
            if let Err(v) = verify_homotopy(domain, codomain, &grid, f, &end) {
                panic!("search produced a grid that does not verify: {v}");
            }
            Verdict::Found(grid)
        }
        Reach::Exhausted => Verdict::Impossible,
        Reach::Budget => Verdict::BudgetExhausted,
    };
    Ok(SearchOutcome { verdict, states_visited: report.visited })
}

/// Streams every `s`-Lipschitz map within uniform distance `r` of `f`
/// (`f` included), in lexicographic order of tables.
pub fn for_each_neighbor(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    f: &[usize],
    s: f64,
    r: f64,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    let gen = NeighborGen::new(domain, codomain, s, r);
    let mut buf = vec![0usize; f.len()];
    let _ = gen.for_each(&to_u16(f), &mut |g: &[u16]| {
        for (b, &v) in buf.iter_mut().zip(g) {
            *b = v as usize;
        }
        visit(&buf)
    });
}

/// Collects [`for_each_neighbor`].
pub fn enumerate_neighbors(
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
    f: &[usize],
    s: f64,
    r: f64,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_neighbor(domain, codomain, f, s, r, |g| {
        out.push(g.to_vec());
        ControlFlow::Continue(())
    });
    out
}

pub(crate) fn to_u16(t: &[usize]) -> Vec<u16> {
    t.iter().map(|&p| p as u16).collect()
}

pub(crate) fn from_u16(t: &[u16]) -> Vec<usize> {
    t.iter().map(|&p| p as usize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lipmap::map_uniform_distance;
    use crate::metric::{gen_circle, FiniteMetricSpace};

    fn two_points(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    /// Every table `X → Y`, as base-|Y| counting.
    fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
        let total = k.pow(n as u32);
        (0..total)
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let d = c % k;
                        c /= k;
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    #[test]
    fn one_step_collapse_of_the_square() {
        let sq = gen_circle(4, 1.0).unwrap();
        let grid = HomotopyGrid::new(1.0, 2.0, vec![vec![0, 1, 2, 3], vec![0; 4]]);
        assert!(verify_homotopy(&sq, &sq, &grid, &[0, 1, 2, 3], &[0; 4]).is_ok());
        let tight = HomotopyGrid { r: 1.0, ..grid };
        let err = verify_homotopy(&sq, &sq, &tight, &[0, 1, 2, 3], &[0; 4]).unwrap_err();
        // c1 is the first point farther than r from the basepoint c0
        assert_eq!(err, HomotopyViolation::TrackNotLipschitz { x: 1, from: 0, to: 1 });
        assert!(sq.d(1, 0) > 1.0);
    }

    #[test]
    fn zero_length_grid() {
        let hex = gen_circle(6, 1.0).unwrap();
        let id: Vec<usize> = (0..6).collect();
        let grid = HomotopyGrid::stationary(1.0, 1.0, id.clone());
        assert!(verify_homotopy(&hex, &hex, &grid, &id, &id).is_ok());
        assert_eq!(verify_grid(&hex, &hex, &HomotopyGrid::new(1.0, 1.0, vec![])), Err(HomotopyViolation::Empty));
    }

    #[test]
    fn verifier_checks_all_pairs_of_frames() {
        // A track that steps 1, 1 but jumps by 2 over two frames is fine at r = 1;
        // a track at distance 2 after 1 frame is not.
        let line = crate::metric::gen_interval_grid(2, 2.0).unwrap();
        let grid = HomotopyGrid::new(1.0, 1.0, vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]);
        assert!(verify_grid(&line, &line, &grid).is_ok());
        let bad = HomotopyGrid::new(1.0, 1.0, vec![vec![0, 1, 2], vec![2, 2, 2]]);
        assert!(matches!(verify_grid(&line, &line, &bad), Err(HomotopyViolation::TrackNotLipschitz { x: 0, .. })));
    }

    #[test]
    fn search_reflexive() {
        let hex = gen_circle(6, 1.0).unwrap();
        let id: Vec<usize> = (0..6).collect();
        let out = homotopy_search(&hex, &hex, &id, Target::Map(&id), 1.0, 1.0, 100).unwrap();
        assert_eq!(out.verdict, Verdict::Found(HomotopyGrid::stationary(1.0, 1.0, id)));
    }

    #[test]
    fn far_two_point_space_is_stuck() {
        let x = two_points(3.0);
        let out = homotopy_search(&x, &x, &[0, 1], Target::Map(&[0, 0]), 1.0, 1.0, 1000).unwrap();
        assert_eq!(out.verdict, Verdict::Impossible);
    }

    #[test]
    fn near_two_point_space_collapses_in_one_step() {
        let x = two_points(1.0);
        let out = homotopy_search(&x, &x, &[0, 1], Target::Map(&[0, 0]), 1.0, 1.0, 1000).unwrap();
        match out.verdict {
            Verdict::Found(g) => assert_eq!(g.m(), 1),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn neighbors_of_identity_on_far_pair() {
        let x = two_points(3.0);
        assert_eq!(enumerate_neighbors(&x, &x, &[0, 1], 1.0, 1.0), vec![vec![0, 1]]);
    }

    #[test]
    fn zero_radius_gives_only_the_map() {
        let hex = gen_circle(6, 1.0).unwrap();
        let f = vec![0, 1, 2, 3, 4, 5];
        assert_eq!(enumerate_neighbors(&hex, &hex, &f, 1.0, 0.0), vec![f]);
    }

    #[test]
    fn vacuous_constraints_give_every_map() {
        let tri = gen_circle(3, 1.0).unwrap();
        let s = tri.diameter() / tri.min_positive_distance().unwrap();
        let ns = enumerate_neighbors(&tri, &tri, &[0, 1, 2], s, tri.diameter());
        assert_eq!(ns.len(), 27);
    }

    #[test]
    fn neighbors_match_brute_force_on_small_circles() {
        for n in [3usize, 4] {
            let c = gen_circle(n, 1.0).unwrap();
            for &(s, r) in &[(1.0, 1.0), (1.0, 1.5), (2.0, 1.5), (0.5, 2.0)] {
                let lips: Vec<Vec<usize>> =
                    all_maps(n, n).into_iter().filter(|t| is_lipschitz(&c, &c, t, s).is_ok()).collect();
                for f in &lips {
                    let mut expected: Vec<Vec<usize>> =
                        lips.iter().filter(|g| c.le(map_uniform_distance(&c, f, g).unwrap(), r)).cloned().collect();
                    expected.sort();
                    let got = enumerate_neighbors(&c, &c, f, s, r);
                    assert_eq!(got, expected, "n={n} s={s} r={r} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_non_lipschitz_start() {
        let hex = gen_circle(6, 1.0).unwrap();
        let err = homotopy_search(&hex, &hex, &[0, 3, 0, 0, 0, 0], Target::AnyConstant, 1.0, 1.0, 10);
        assert!(matches!(err, Err(HomotopyError::Start(_))));
    }
}
