//! `r`-contractibility, `r`-categorical subsets and bounds for `cat_r`.
//!
//! Finite spaces carry the discrete topology, so every subset is open and
//! covers range over arbitrary subsets.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::homotopy::DEFAULT_STATE_BUDGET;
use crate::homotopy::{homotopy_search, verify_homotopy, HomotopyGrid, HomotopyViolation, Target, Verdict};
use crate::metric::FiniteMetricSpace;
use crate::paths::{is_r_path, r_connected_components, PathError};
use crate::planner::{contraction_from_planner, search_planner_cover, PatchSearchOptions};
use crate::setcover::{bitset_of, exact_cover, greedy_cover};

/// Three-valued answer of a bounded search. `No` is always a proof.
#[derive(Debug, Clone, PartialEq)]
pub enum Decision<C> {
    Yes(C),
    No,
    Unknown,
}

impl<C> Decision<C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Decision::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// A `(1, r)`-homotopy from the identity to the constant map at `basepoint`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractibilityCertificate {
    pub r: f64,
    pub basepoint: usize,
    pub grid: HomotopyGrid,
}

/// A `(1, r)`-homotopy from the inclusion `A → X` to a constant map.
///
/// `grid` frames are tables indexed by position in `subset`.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalCertificate {
    pub r: f64,
    pub subset: Vec<usize>,
    pub grid: HomotopyGrid,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateError {
    #[error("scale mismatch: certificate is at r = {cert}, grid at r = {grid}")]
    Scale { cert: f64, grid: f64 },
    #[error("grid is not 1-Lipschitz in every frame (s = {0})")]
    LipschitzConstant(f64),
    #[error("subset is empty, unsorted, repeated or out of range")]
    BadSubset,
    #[error("the final frame is not constant")]
    NotConstant,
    #[error("the final frame is constant at {found}, not at the basepoint {basepoint}")]
    Basepoint { basepoint: usize, found: usize },
    #[error(transparent)]
    Grid(#[from] HomotopyViolation),
}

impl ContractibilityCertificate {
    pub fn verify(&self, space: &FiniteMetricSpace) -> Result<(), CertificateError> {
        check_grid_header(&self.grid, self.r)?;
        let end = self.grid.frames.last().ok_or(HomotopyViolation::Empty)?;
        let c = constant_value(end).ok_or(CertificateError::NotConstant)?;
        if c != self.basepoint {
            return Err(CertificateError::Basepoint { basepoint: self.basepoint, found: c });
        }
        let id: Vec<usize> = (0..space.len()).collect();
        verify_homotopy(space, space, &self.grid, &id, end)?;
        Ok(())
    }

    /// The same contraction, read as a categorical certificate for `A = X`.
    pub fn as_categorical(&self, n: usize) -> CategoricalCertificate {
        CategoricalCertificate { r: self.r, subset: (0..n).collect(), grid: self.grid.clone() }
    }
}

impl CategoricalCertificate {
    pub fn verify(&self, space: &FiniteMetricSpace) -> Result<(), CertificateError> {
        check_grid_header(&self.grid, self.r)?;
        if !valid_subset(&self.subset, space.len()) {
            return Err(CertificateError::BadSubset);
        }
        let end = self.grid.frames.last().ok_or(HomotopyViolation::Empty)?;
        constant_value(end).ok_or(CertificateError::NotConstant)?;
        let domain = space.subspace(&self.subset);
        verify_homotopy(&domain, space, &self.grid, &self.subset, end)?;
        Ok(())
    }

    /// The point every element of the subset is moved to.
    pub fn target(&self) -> usize {
        self.grid.end()[0]
    }

    /// Restriction to `sub ⊆ subset` (sorted); still a valid certificate.
    pub fn restrict(&self, sub: &[usize]) -> Option<CategoricalCertificate> {
        let pos: Option<Vec<usize>> = sub.iter().map(|p| self.subset.binary_search(p).ok()).collect();
        let pos = pos?;
        let frames = self.grid.frames.iter().map(|f| pos.iter().map(|&i| f[i]).collect()).collect();
        Some(CategoricalCertificate {
            r: self.r,
            subset: sub.to_vec(),
            grid: HomotopyGrid::new(self.grid.s, self.grid.r, frames),
        })
    }
}

fn check_grid_header(grid: &HomotopyGrid, r: f64) -> Result<(), CertificateError> {
    if grid.r != r {
        return Err(CertificateError::Scale { cert: r, grid: grid.r });
    }
    if grid.s != 1.0 {
        return Err(CertificateError::LipschitzConstant(grid.s));
    }
    Ok(())
}

fn constant_value(frame: &[usize]) -> Option<usize> {
    let first = *frame.first()?;
    frame.iter().all(|&p| p == first).then_some(first)
}

fn valid_subset(subset: &[usize], n: usize) -> bool {
    !subset.is_empty() && subset.windows(2).all(|w| w[0] < w[1]) && subset.iter().all(|&p| p < n)
}

/// Searches for a `(1, r)`-homotopy from the identity of `space` to a constant.
///
/// Spaces with more than one `r`-component are answered `No` without search,
/// since tracks of a contraction join every point to the basepoint. When the
/// state budget runs out, a full motion planner is searched for instead and
/// read back as a contraction.
pub fn is_r_contractible(space: &FiniteMetricSpace, r: f64, budget: usize) -> Decision<ContractibilityCertificate> {
    if r_connected_components(space, r).len() > 1 {
        return Decision::No;
    }
    let id: Vec<usize> = (0..space.len()).collect();
    let outcome =
        homotopy_search(space, space, &id, Target::AnyConstant, 1.0, r, budget).expect("identity is 1-Lipschitz");
    match outcome.verdict {
        Verdict::Found(grid) => {
            let basepoint = grid.end()[0];
            Decision::Yes(ContractibilityCertificate { r, basepoint, grid })
        }
        Verdict::Impossible => Decision::No,
        Verdict::BudgetExhausted => contraction_via_planner(space, r).map_or(Decision::Unknown, Decision::Yes),
    }
}

fn contraction_via_planner(space: &FiniteMetricSpace, r: f64) -> Option<ContractibilityCertificate> {
    let n = space.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let planner = search_planner_cover(space, &pairs, r, 1, &PatchSearchOptions::for_space(space))?.pop()?;
    let cert = contraction_from_planner(space, &planner, 0).ok()?;
    cert.verify(space).is_ok().then_some(cert)
}

/// A pair whose glued path failed to be an `r`-path.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("glued path from {x} to {y} is not an r-path: {cause}")]
pub struct ConnectivityWitness {
    pub x: usize,
    pub y: usize,
    pub cause: PathError,
}

/// The `r`-path from `x` to `y` through the basepoint: `F(x, i)` for `i ≤ m`,
/// then `F(y, 2m - i)`.
pub fn glued_path(cert: &ContractibilityCertificate, x: usize, y: usize) -> Vec<usize> {
    let mut path = cert.grid.track(x);
    let mut back = cert.grid.track(y);
    back.pop();
    back.reverse();
    path.extend(back);
    path
}

/// Builds and checks the glued path between every ordered pair of points.
pub fn check_contractible_implies_connected(
    space: &FiniteMetricSpace,
    cert: &ContractibilityCertificate,
) -> Result<(), ConnectivityWitness> {
    let n = space.len();
    (0..n * n).into_par_iter().try_for_each(|k| {
        let (x, y) = (k / n, k % n);
        let path = glued_path(cert, x, y);
        let mut cause = is_r_path(space, &path, cert.r).err();
        if cause.is_none() && (path[0] != x || path[path.len() - 1] != y) {
            cause = Some(PathError::EndpointMismatch { end: path[path.len() - 1], start: path[0] });
        }
        match cause {
            Some(cause) => Err(ConnectivityWitness { x, y, cause }),
            None => Ok(()),
        }
    })
}

/// Searches for a null-homotopy of the inclusion of `subset` (any order, no repeats).
pub fn is_r_categorical(
    space: &FiniteMetricSpace,
    subset: &[usize],
    r: f64,
    budget: usize,
) -> Decision<CategoricalCertificate> {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    assert!(valid_subset(&subset, space.len()), "subset must be non-empty and inside the space");
    if spans_components(space, &subset, r) {
        return Decision::No;
    }
    let domain = space.subspace(&subset);
    let outcome = homotopy_search(&domain, space, &subset, Target::AnyConstant, 1.0, r, budget)
        .expect("inclusion is 1-Lipschitz");
    match outcome.verdict {
        Verdict::Found(grid) => Decision::Yes(CategoricalCertificate { r, subset, grid }),
        Verdict::Impossible => Decision::No,
        Verdict::BudgetExhausted => Decision::Unknown,
    }
}

fn spans_components(space: &FiniteMetricSpace, subset: &[usize], r: f64) -> bool {
    let comps = r_connected_components(space, r);
    let comp_of = |p: usize| comps.iter().position(|c| c.contains(&p));
    let first = comp_of(subset[0]);
    subset.iter().any(|&p| comp_of(p) != first)
}

/// Subset enumeration is `2^n`; beyond this the candidate family is used regardless of the threshold.
pub const MAX_EXHAUSTIVE_POINTS: usize = 16;

#[derive(Debug, Clone)]
pub struct CatOptions {
    pub budget: usize,
    /// Spaces with at most this many points get an exhaustive subset enumeration.
    pub exact_threshold: usize,
    /// Extra candidate subsets for the cover.
    pub extra_subsets: Vec<Vec<usize>>,
}

impl Default for CatOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_STATE_BUDGET, exact_threshold: 10, extra_subsets: Vec::new() }
    }
}

/// Why the lower bound has its value.
#[derive(Debug, Clone, PartialEq)]
pub enum CatLowerEvidence {
    Contractible,
    /// One categorical set per `r`-component, two for each non-contractible one.
    Components {
        components: usize,
        non_contractible: usize,
    },
    /// Minimum cover over every subset not refuted by search.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatReport {
    pub r: f64,
    pub lower: usize,
    pub upper: usize,
    pub cover: Vec<CategoricalCertificate>,
    pub exact: bool,
    pub lower_evidence: CatLowerEvidence,
    pub contractible: Decision<ContractibilityCertificate>,
}

/// Certified bounds `lower ≤ cat_r(X) ≤ upper` with a verifying cover.
pub fn cat_bounds(space: &FiniteMetricSpace, r: f64, opts: &CatOptions) -> CatReport {
    let contractible = is_r_contractible(space, r, opts.budget);
    cat_bounds_with(space, r, opts, contractible)
}

pub(crate) fn cat_bounds_with(
    space: &FiniteMetricSpace,
    r: f64,
    opts: &CatOptions,
    contractible: Decision<ContractibilityCertificate>,
) -> CatReport {
    let n = space.len();
    if let Decision::Yes(c) = &contractible {
        return CatReport {
            r,
            lower: 1,
            upper: 1,
            cover: vec![c.as_categorical(n)],
            exact: true,
            lower_evidence: CatLowerEvidence::Contractible,
            contractible,
        };
    }
    let comps = r_connected_components(space, r);
    let non_contractible = if comps.len() == 1 {
        usize::from(contractible.is_no())
    } else {
        comps.par_iter().filter(|c| is_r_contractible(&space.subspace(c), r, opts.budget).is_no()).count()
    };
    let mut lower = comps.len() + non_contractible;
    let mut lower_evidence = CatLowerEvidence::Components { components: comps.len(), non_contractible };

    let exhaustive = n <= opts.exact_threshold.min(MAX_EXHAUSTIVE_POINTS);
    let (family, exhaustive_lower) =
        if exhaustive { exhaustive_family(space, r, opts) } else { (candidate_family(space, r, opts, &comps), None) };
    let universe = n;
    let sets: Vec<FixedBitSet> = family.iter().map(|c| bitset_of(universe, &c.subset)).collect();
    let (chosen, _) = exact_or_greedy(universe, &sets, exhaustive);
    let chosen = chosen.expect("singletons are always categorical");
    let cover: Vec<CategoricalCertificate> = chosen.into_iter().map(|i| family[i].clone()).collect();
    let upper = cover.len();
    if let Some(l) = exhaustive_lower {
        if l > lower {
            lower = l;
            lower_evidence = CatLowerEvidence::Exhaustive;
        }
    }
    let lower = lower.min(upper);
    CatReport { r, lower, upper, cover, exact: lower == upper, lower_evidence, contractible }
}

fn exact_or_greedy(universe: usize, sets: &[FixedBitSet], exact: bool) -> (Option<Vec<usize>>, bool) {
    if exact {
        exact_cover(universe, sets, 1_000_000)
    } else {
        (greedy_cover(universe, sets), false)
    }
}

/// Status of every subset of a small space, smallest first; a set with a
/// refuted subset is refuted without search.
///
/// Returns the maximal certified sets, and the minimum cover size over all
/// sets not refuted (a lower bound on `cat_r`).
fn exhaustive_family(
    space: &FiniteMetricSpace,
    r: f64,
    opts: &CatOptions,
) -> (Vec<CategoricalCertificate>, Option<usize>) {
    let n = space.len();
    let total = 1usize << n;
    // 0 = unknown, 1 = yes, 2 = no
    let mut status = vec![0u8; total];
    let mut certs: HashMap<usize, CategoricalCertificate> = HashMap::new();
    for size in 1..=n {
        let masks: Vec<usize> = (1..total).filter(|m| m.count_ones() as usize == size).collect();
        let results: Vec<(usize, Decision<CategoricalCertificate>)> = masks
            .par_iter()
            .map(|&mask| {
                let refuted = (0..n).any(|b| mask & (1 << b) != 0 && mask != 1 << b && status[mask ^ (1 << b)] == 2);
                if refuted {
                    return (mask, Decision::No);
                }
                (mask, is_r_categorical(space, &mask_points(mask, n), r, opts.budget))
            })
            .collect();
        for (mask, d) in results {
            status[mask] = match d {
                Decision::Yes(c) => {
                    certs.insert(mask, c);
                    1
                }
                Decision::No => 2,
                Decision::Unknown => 0,
            };
        }
    }
    // a subset of a certified set is certified by restriction
    let yes: Vec<usize> = (1..total).filter(|&m| status[m] == 1).collect();
    for m in 1..total {
        if status[m] == 0 {
            if let Some(&sup) = yes.iter().find(|&&s| s & m == m) {
                let c = certs[&sup].restrict(&mask_points(m, n)).expect("subset");
                certs.insert(m, c);
                status[m] = 1;
            }
        }
    }
    let open: Vec<usize> = (1..total).filter(|&m| status[m] != 2).collect();
    let lower = {
        let maximal = maximal_masks(&open);
        let sets: Vec<FixedBitSet> = maximal.iter().map(|&m| bitset_of(n, &mask_points(m, n))).collect();
        match exact_cover(n, &sets, 1_000_000) {
            (Some(c), true) => Some(c.len()),
            _ => None,
        }
    };
    let yes: Vec<usize> = (1..total).filter(|&m| status[m] == 1).collect();
    let family = maximal_masks(&yes).into_iter().map(|m| certs.remove(&m).expect("certified")).collect();
    (family, lower)
}

fn maximal_masks(masks: &[usize]) -> Vec<usize> {
    masks.iter().copied().filter(|&m| !masks.iter().any(|&o| o != m && o & m == m)).collect()
}

fn mask_points(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&b| mask & (1 << b) != 0).collect()
}

/// Certified candidates for large spaces: metric balls of every radius,
/// greedily grown maximal sets, and user subsets.
fn candidate_family(
    space: &FiniteMetricSpace,
    r: f64,
    opts: &CatOptions,
    comps: &[Vec<usize>],
) -> Vec<CategoricalCertificate> {
    let n = space.len();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for t in space.distinct_distances() {
        for x in 0..n {
            candidates.push(space.ball(x, t));
        }
    }
    for s in &opts.extra_subsets {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if valid_subset(&s, n) {
            candidates.push(s);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut family: Vec<CategoricalCertificate> = candidates
        .par_iter()
        .filter_map(|s| is_r_categorical(space, s, r, opts.budget).certificate().cloned())
        .collect();

    let mut grown: Vec<Vec<usize>> = Vec::new();
    for seed in 0..n {
        if grown.iter().any(|g| g.binary_search(&seed).is_ok()) {
            continue;
        }
        let comp = comps.iter().find(|c| c.contains(&seed)).expect("every point has a component");
        let mut current = match is_r_categorical(space, &[seed], r, opts.budget) {
            Decision::Yes(c) => c,
            _ => continue,
        };
        for &p in comp {
            if current.subset.binary_search(&p).is_ok() {
                continue;
            }
            let mut trial = current.subset.clone();
            trial.push(p);
            if let Decision::Yes(c) = is_r_categorical(space, &trial, r, opts.budget) {
                current = c;
            }
        }
        grown.push(current.subset.clone());
        family.push(current);
    }
    family.sort_by(|a, b| a.subset.cmp(&b.subset));
    family.dedup_by(|a, b| a.subset == b.subset);
    family
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{gen_circle, gen_interval_grid};

    fn two_points(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn interval_contracts_by_shifting() {
        let x = gen_interval_grid(2, 1.0).unwrap();
        let Decision::Yes(c) = is_r_contractible(&x, 0.5, DEFAULT_STATE_BUDGET) else { panic!() };
        assert!(c.verify(&x).is_ok());
        // collapsing onto the midpoint beats the two-step shift
        assert_eq!((c.grid.m(), c.basepoint), (1, 1));
        assert!(check_contractible_implies_connected(&x, &c).is_ok());
        for (a, b) in [(0, 2), (2, 0), (1, 1)] {
            assert_eq!(glued_path(&c, a, b).len(), 2 * c.grid.m() + 1);
        }
    }

    #[test]
    fn square_contracts_in_one_step_at_r2() {
        let sq = gen_circle(4, 1.0).unwrap();
        let Decision::Yes(c) = is_r_contractible(&sq, 2.0, DEFAULT_STATE_BUDGET) else { panic!() };
        assert_eq!(c.grid.m(), 1);
        assert!(c.verify(&sq).is_ok());
    }

    #[test]
    fn hexagon_is_not_contractible_at_r1() {
        let hex = gen_circle(6, 1.0).unwrap();
        assert_eq!(is_r_contractible(&hex, 1.0, DEFAULT_STATE_BUDGET), Decision::No);
        assert_eq!(is_r_categorical(&hex, &[0, 1, 2, 3, 4, 5], 1.0, DEFAULT_STATE_BUDGET), Decision::No);
    }

    #[test]
    fn categorical_examples() {
        let hex = gen_circle(6, 1.0).unwrap();
        let Decision::Yes(c) = is_r_categorical(&hex, &[3], 1.0, 100) else { panic!() };
        assert_eq!(c.grid.m(), 0);
        let Decision::Yes(arc) = is_r_categorical(&hex, &[2, 0, 1], 1.0, DEFAULT_STATE_BUDGET) else { panic!() };
        assert_eq!(arc.subset, vec![0, 1, 2]);
        assert!(arc.verify(&hex).is_ok());
        let sub = arc.restrict(&[0, 2]).unwrap();
        assert!(sub.verify(&hex).is_ok());
    }

    #[test]
    fn single_point_is_contractible() {
        let p = FiniteMetricSpace::point("p");
        let Decision::Yes(c) = is_r_contractible(&p, 1.0, 10) else { panic!() };
        assert_eq!(c.grid.m(), 0);
        assert!(check_contractible_implies_connected(&p, &c).is_ok());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let x = gen_interval_grid(2, 1.0).unwrap();
        let Decision::Yes(mut c) = is_r_contractible(&x, 0.5, DEFAULT_STATE_BUDGET) else { panic!() };
        c.basepoint = (c.basepoint + 1) % 3;
        assert!(matches!(c.verify(&x), Err(CertificateError::Basepoint { .. })));
    }

    #[test]
    fn cat_of_hexagon() {
        let hex = gen_circle(6, 1.0).unwrap();
        let rep = cat_bounds(&hex, 1.0, &CatOptions::default());
        assert_eq!((rep.lower, rep.upper), (2, 2));
        assert!(rep.exact);
        for c in &rep.cover {
            assert!(c.verify(&hex).is_ok());
        }
        let mut covered: Vec<usize> = rep.cover.iter().flat_map(|c| c.subset.clone()).collect();
        covered.sort();
        covered.dedup();
        assert_eq!(covered, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn cat_of_contractible_and_disconnected() {
        let sq = gen_circle(4, 1.0).unwrap();
        let rep = cat_bounds(&sq, 2.0, &CatOptions::default());
        assert_eq!((rep.lower, rep.upper, rep.exact), (1, 1, true));
        let far = two_points(5.0);
        let rep = cat_bounds(&far, 1.0, &CatOptions::default());
        assert_eq!((rep.lower, rep.upper), (2, 2));
        assert_eq!(rep.lower_evidence, CatLowerEvidence::Components { components: 2, non_contractible: 0 });
    }

    #[test]
    fn candidate_family_path_agrees_on_hexagon() {
        let hex = gen_circle(6, 1.0).unwrap();
        let opts = CatOptions { exact_threshold: 0, ..CatOptions::default() };
        let rep = cat_bounds(&hex, 1.0, &opts);
        assert_eq!((rep.lower, rep.upper), (2, 2));
    }
}
