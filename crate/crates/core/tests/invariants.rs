use iterate_census::census::{brute_force_reducible_count, reducible_count_closed_ab, reducible_count_series_ab};
use iterate_census::{
    binomial, build_tableau, catalan, predicted_intersection_size, reducible_count_closed_a, t_nk,
    t_nk_combined, BigNat, TableauKind,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

proptest! {
    #[test]
    fn binomial_symmetry_and_row_sums(n in 0i64..120, k in -5i64..125) {
        prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        if k == 0 {
            let row: BigNat = (0..=n).map(|j| binomial(n, j)).sum();
            prop_assert_eq!(row, BigNat::from(1u32) << n as usize);
        }
    }

    #[test]
    fn combined_distribution_sums_to_catalan(n in 2i64..60) {
        // every iterate has some multiplicity, in both tableaux
        let a: BigNat = (1..=n + 2).map(|k| t_nk(n, k)).sum();
        let ab: BigNat = (1..=n + 2).map(|k| t_nk_combined(n, k).unwrap()).sum();
        prop_assert_eq!(&a, &catalan(n).unwrap());
        prop_assert_eq!(&ab, &catalan(n).unwrap());
    }

    #[test]
    fn law_on_random_tuples(
        (n, tuple) in (3usize..=8).prop_flat_map(|n| (Just(n), subsequence((1..=n + 2).collect::<Vec<_>>(), 2..=4)))
    ) {
        let t = build_tableau(TableauKind::AB, n, 16).unwrap();
        prop_assert_eq!(
            t.line_intersection_size(&tuple).unwrap(),
            predicted_intersection_size(n, &tuple).unwrap(),
            "n={} {:?}", n, tuple
        );
    }

    #[test]
    fn brute_force_ignores_worker_count(n in 2usize..=7, workers in 1usize..16) {
        let t = build_tableau(TableauKind::AB, n, 16).unwrap();
        prop_assert_eq!(
            brute_force_reducible_count(&t, 9, workers).unwrap(),
            reducible_count_closed_ab(n as i64).unwrap()
        );
    }
}

#[test]
fn reducible_counts_bounded_by_all_identities() {
    for n in 2..=120i64 {
        let total = catalan(n).unwrap().pow(2);
        let a = reducible_count_closed_a(n).unwrap();
        let ab = reducible_count_series_ab(n).unwrap();
        assert!(a <= ab, "n={n}");
        assert!(ab <= total, "n={n}");
    }
}

#[test]
fn series_and_pooled_agree_at_scale() {
    for n in [20, 75, 150, 300] {
        reducible_count_closed_ab(n).unwrap();
    }
}
