use std::collections::BTreeSet;

use graft_core::eval::{generate_synthetic_genealogy, run_experiment_grid, GridSpec};
use graft_core::ingest::{read_ground_truth, write_ground_truth, GroundTruth};
use graft_core::namegraph::{NameGraph, PairCounts};
use graft_core::normalize::{normalize_profiles, NameView, NormalizationConfig};
use graft_core::strsim::EditDistanceRange;
use graft_core::suggest::OrderingFunction;
use graft_core::treegraph::RelationKind;
use proptest::prelude::*;

fn pairs_strategy() -> impl Strategy<Value = Vec<(String, String)>> {
    prop::collection::vec(("[abdeilmnorst]{1,6}", "[abdeilmnorst]{1,6}"), 0..80)
}

fn counts(pairs: &[(String, String)], extra: &[String]) -> PairCounts {
    PairCounts::from_names(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())), extra.iter().map(String::as_str))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serialization_round_trips(pairs in pairs_strategy(), extra in prop::collection::vec("[a-z]{1,5}", 0..5), hi in 1u32..6) {
        let g = NameGraph::from_counts(&counts(&pairs, &extra), EditDistanceRange::new(1, hi).unwrap()).unwrap()
            .with_origin(NameView::Surname, RelationKind::AllAncestors);
        let mut buf = Vec::new();
        g.write_to(&mut buf).unwrap();
        let back = NameGraph::read_from(&buf[..]).unwrap();
        let mut again = Vec::new();
        back.write_to(&mut again).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(again, buf);
    }

    #[test]
    fn wider_range_keeps_edges(pairs in pairs_strategy(), hi in 1u32..5) {
        let c = counts(&pairs, &[]);
        let narrow = NameGraph::from_counts(&c, EditDistanceRange::new(1, hi).unwrap()).unwrap();
        let wide = NameGraph::from_counts(&c, EditDistanceRange::new(1, hi + 1).unwrap()).unwrap();
        let wide_edges: BTreeSet<(&str, &str)> = wide.edges().map(|(a, b, _)| (a, b)).collect();
        for (a, b, e) in narrow.edges() {
            prop_assert!(wide_edges.contains(&(a, b)));
            prop_assert_eq!(wide.edge(a, b), Some(e));
        }
        prop_assert!(narrow.total_weight() <= wide.total_weight());
        prop_assert!(narrow.non_isolated_count() <= wide.non_isolated_count());
    }

    #[test]
    fn ground_truth_round_trips(pairs in prop::collection::vec(("q[a-z]{2,5}", "q[a-z]{2,5}"), 1..30)) {
        let gt = GroundTruth::from_pairs(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())));
        prop_assume!(!gt.is_empty());
        let mut buf = Vec::new();
        write_ground_truth(&mut buf, &gt).unwrap();
        let back = read_ground_truth(&buf[..], &NormalizationConfig::default()).unwrap();
        prop_assert_eq!(back.entries, gt.entries);
    }
}

#[test]
fn grid_coverage_grows_with_hi() {
    let data = generate_synthetic_genealogy(3, 60, 4, 0.2).unwrap();
    let (records, _) = normalize_profiles(&data.profiles, &NormalizationConfig::default());
    let spec = GridSpec { functions: vec![OrderingFunction::NetEd], ..GridSpec::default() };
    let rows = run_experiment_grid(&records, NameView::Forename, &data.forename_truth, &spec);
    assert_eq!(rows.len(), 16);
    for w in rows.windows(2) {
        if w[0].relation == w[1].relation {
            assert!(w[0].range.hi() < w[1].range.hi());
            assert!(w[0].report.metrics.covered <= w[1].report.metrics.covered);
        }
    }
}
