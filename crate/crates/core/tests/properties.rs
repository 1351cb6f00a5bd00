use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use homotopy_forge::category::{check_contractible_implies_connected, is_r_contractible, Decision};
use homotopy_forge::cert::{self, Body, Document, SpaceJson};
use homotopy_forge::homotopy::{enumerate_neighbors, DEFAULT_STATE_BUDGET};
use homotopy_forge::metric::FiniteMetricSpace;
use homotopy_forge::paths::{is_r_connected, shortest_r_path};
use homotopy_forge::pi1::{conjugated_loop, lemma_certificate, RLoop};
use homotopy_forge::planner::{contraction_from_planner, synthesize_from_contraction, verify_planner};
use homotopy_forge::setcover::{exact_cover, greedy_cover};
use homotopy_forge::tc::{tc_bounds, verify_tc_report, TcOptions};

/// Shortest-path closure of random edge weights: always a metric.
fn space(n: usize, weights: &[f64]) -> FiniteMetricSpace {
    let mut d = vec![vec![0.0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            d[i][j] = weights[k];
            d[j][i] = weights[k];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = f64::min(d[i][j], d[i][m] + d[m][j]);
            }
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    FiniteMetricSpace::new(labels, &d).unwrap()
}

fn spaces(max: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        // quarter steps keep many distances tied, which is where tolerance matters
        proptest::collection::vec((2u8..=12).prop_map(|q| f64::from(q) / 4.0), pairs).prop_map(move |w| space(n, &w))
    })
}

fn scale() -> impl Strategy<Value = f64> {
    (2u8..=12).prop_map(|q| f64::from(q) / 4.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contractions_are_connected_and_give_planners(x in spaces(6), r in scale()) {
        match is_r_contractible(&x, r, DEFAULT_STATE_BUDGET) {
            Decision::Yes(c) => {
                prop_assert!(c.verify(&x).is_ok());
                prop_assert!(check_contractible_implies_connected(&x, &c).is_ok());
                let p = synthesize_from_contraction(&x, &c);
                prop_assert!(verify_planner(&x, &p).is_ok());
                let back = contraction_from_planner(&x, &p, x.len() - 1).unwrap();
                prop_assert!(back.verify(&x).is_ok());
                // the same certificate holds at every larger scale
                let mut wider = c.clone();
                wider.r = r + 0.5;
                wider.grid.r = r + 0.5;
                prop_assert!(wider.verify(&x).is_ok());
            }
            Decision::No => {}
            Decision::Unknown => prop_assert!(false, "small spaces never exhaust the budget"),
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric_and_reflexive(x in spaces(4), r in scale(), seed in any::<u64>()) {
        let n = x.len();
        let f: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i)) as usize) % n).collect();
        let lipschitz = (0..n).all(|a| (0..n).all(|b| x.le(x.d(f[a], f[b]), x.d(a, b))));
        prop_assume!(lipschitz);
        let around = enumerate_neighbors(&x, &x, &f, 1.0, r);
        prop_assert!(around.contains(&f));
        for g in &around {
            prop_assert!(enumerate_neighbors(&x, &x, g, 1.0, r).contains(&f));
        }
    }

    #[test]
    fn tc_reports_verify_and_round_trip(x in spaces(5), r in scale()) {
        let rep = tc_bounds(&x, r, &TcOptions::for_space(&x));
        prop_assert!(verify_tc_report(&x, &rep).is_ok());
        match (rep.lower, rep.upper) {
            (Some(lo), Some(up)) => {
                prop_assert!(lo <= up && lo >= 1);
                let cat = rep.cat.as_ref().unwrap();
                prop_assert!(cat.lower <= up);
            }
            (None, None) => prop_assert!(!is_r_connected(&x, r)),
            _ => prop_assert!(false, "half-infinite interval"),
        }
        let doc = Document::new(Body::TcReport { space: SpaceJson::from_space(&x), report: cert::tc_report_json(&x, &rep) });
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(cert::verify_document(&back).is_ok());
    }

    #[test]
    fn lemma_certificates_validate(x in spaces(5), r in scale(), walk in proptest::collection::vec(any::<u8>(), 0..6), start in any::<u8>()) {
        let Decision::Yes(c) = is_r_contractible(&x, r, DEFAULT_STATE_BUDGET) else {
            return Ok(());
        };
        let n = x.len();
        let p = start as usize % n;
        let mut points = vec![p];
        for step in walk {
            let here = *points.last().unwrap();
            let near: Vec<usize> = (0..n).filter(|&q| x.le(x.d(here, q), r)).collect();
            points.push(near[step as usize % near.len()]);
        }
        let back = shortest_r_path(&x, r, *points.last().unwrap(), p).unwrap();
        points.extend_from_slice(&back.points()[1..]);
        let lp = RLoop::new(&x, points, r).unwrap();
        let g = lemma_certificate(&x, &c, &lp).unwrap();
        prop_assert!(g.verify_for(&x, &conjugated_loop(&c, &lp)).is_ok());
    }

    #[test]
    fn exact_cover_is_no_larger_than_greedy(sets in proptest::collection::vec(proptest::collection::vec(0usize..10, 1..5), 1..10)) {
        let universe = 10;
        let mut bits: Vec<FixedBitSet> = sets
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(universe);
                for &e in s {
                    b.insert(e);
                }
                b
            })
            .collect();
        // singletons make every instance coverable
        bits.extend((0..universe).map(|e| {
            let mut b = FixedBitSet::with_capacity(universe);
            b.insert(e);
            b
        }));
        let greedy = greedy_cover(universe, &bits).unwrap();
        let (exact, complete) = exact_cover(universe, &bits, 1_000_000);
        let exact = exact.unwrap();
        prop_assert!(complete);
        prop_assert!(exact.len() <= greedy.len());
        for cover in [&greedy, &exact] {
            let mut union = FixedBitSet::with_capacity(universe);
            for &i in cover.iter() {
                union.union_with(&bits[i]);
            }
            prop_assert_eq!(union.count_ones(..), universe);
        }
    }
}
