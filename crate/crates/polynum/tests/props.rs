//! Randomized properties over the parsing and identity layers. The
//! geometric machinery is covered by the deterministic suites; these
//! guard the pure-combinatorics surface against edge-case regressions.

use proptest::prelude::*;

use polynum::identities::{
    generalized_eulerian_row, macmahon_box, multinomial, worpitzky_check,
};
use polynum::PolytopeExpr;

fn leaf() -> impl Strategy<Value = PolytopeExpr> {
    prop_oneof![
        (0u32..=6).prop_map(PolytopeExpr::Simplex),
        (1u32..=6).prop_map(PolytopeExpr::Cross),
        (0u32..=6).prop_map(PolytopeExpr::Cube),
        (2u32..=8).prop_flat_map(|d| (Just(d), 1..d).prop_map(|(d, k)| {
            PolytopeExpr::Hypersimplex(d, k)
        })),
    ]
}

fn expr() -> impl Strategy<Value = PolytopeExpr> {
    leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| PolytopeExpr::Pyr(Box::new(e))),
            inner.clone().prop_map(|e| PolytopeExpr::Bipyr(Box::new(e))),
            prop::collection::vec(inner, 2..4).prop_map(PolytopeExpr::Prod),
        ]
    })
}

proptest! {
    #[test]
    fn expression_display_round_trips(e in expr()) {
        let text = e.to_string();
        let back: PolytopeExpr = text.parse().expect("canonical text parses");
        prop_assert_eq!(back, e);
    }

    #[test]
    fn worpitzky_holds_for_all_small_inputs(d in 1u32..=7, n in 0u32..=40) {
        prop_assert!(worpitzky_check(d, n).expect("in range").ok());
    }

    #[test]
    fn descent_rows_sum_to_the_multiset_count(
        d_list in prop::collection::vec(1u32..=4, 1..4)
    ) {
        let row = generalized_eulerian_row(&d_list).expect("in range");
        prop_assert_eq!(row.iter().sum::<i128>(), multinomial(&d_list));
    }

    #[test]
    fn box_counts_are_symmetric_in_all_axes(
        a in 1u32..=6, b in 1u32..=6, c in 1u32..=6
    ) {
        let reference = macmahon_box(a, b, c);
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            prop_assert_eq!(macmahon_box(x, y, z), reference);
        }
    }
}
