mod common;

use common::*;
use ermetrics_core::*;
use ermetrics_oracle as oracle;
use proptest::prelude::*;

#[test]
fn partition_enumeration_matches_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    for (n, &b) in bell.iter().enumerate() {
        assert_eq!(all_partitions(n).len(), b, "n = {n}");
    }
}

#[test]
fn pair_counts_match_enumeration_for_every_partition_up_to_eight() {
    for n in 0..=8 {
        for labels in all_partitions(n) {
            let c = from_labels(&labels);
            assert_eq!(intra_pair_count(&c), oracle::pairs(&labels).len() as u64);
            assert_eq!(inter_pair_count(&c), oracle::inter_pairs(&labels) as u64);
            let total = (n * n.saturating_sub(1) / 2) as u64;
            assert_eq!(intra_pair_count(&c) + inter_pair_count(&c), total);
        }
    }
}

#[test]
fn every_metric_matches_dense_oracle_on_small_pairs() {
    let mut rng = rng(0x5eed);
    for _ in 0..2000 {
        let n = rand::Rng::random_range(&mut rng, 1..=8);
        let pred = random_labels(&mut rng, n, n);
        let gold = random_labels(&mut rng, n, n);
        let o = table(&pred, &gold);

        let pw = pairwise(&o);
        let (p, r, f) = oracle::pairwise(&pred, &gold);
        assert!(close(pw.precision, p, 1e-9) && close(pw.recall, r, 1e-9) && close(pw.f1, f, 1e-9));
        assert_eq!(shared_pair_count(&o), oracle::shared_pairs(&pred, &gold) as u64);

        let ex = exact_cluster(&o);
        let (p, r, f) = oracle::exact_cluster(&pred, &gold);
        assert!(close(ex.precision, p, 1e-9) && close(ex.recall, r, 1e-9) && close(ex.f1, f, 1e-9));

        let cc = closest_cluster(&o).unwrap();
        let (p, r, f) = oracle::closest_cluster(&pred, &gold);
        assert!(close(cc.precision, p, 1e-9) && close(cc.recall, r, 1e-9) && close(cc.f1, f, 1e-9));

        let pu = purity_family(&o).unwrap();
        let (acp, aap, k, m) = oracle::purity(&pred, &gold);
        assert!(close(pu.acp, acp, 1e-9) && close(pu.aap, aap, 1e-9));
        assert!(close(pu.k, k, 1e-9) && close(pu.manning, m, 1e-9));

        let info = info_scores(&o, 1.0).unwrap();
        let (h, c, v, vi) = oracle::info(&pred, &gold, 1.0);
        assert!(close(info.homogeneity, h, 1e-9), "{pred:?} {gold:?}");
        assert!(close(info.completeness, c, 1e-9));
        assert!(close(info.v_measure, v, 1e-9));
        assert!(close(info.vi, vi, 1e-9));
        assert!(close(info.h_gold, oracle::entropy(&gold), 1e-9));
        assert!(close(info.h_pred_given_gold, oracle::conditional_entropy(&pred, &gold), 1e-9));
    }
}

#[test]
fn v_measure_beta_matches_oracle() {
    let mut rng = rng(99);
    for beta in [0.5, 2.0, 3.0] {
        for _ in 0..200 {
            let n = rand::Rng::random_range(&mut rng, 1..=8);
            let pred = random_labels(&mut rng, n, n);
            let gold = random_labels(&mut rng, n, n);
            let info = info_scores(&table(&pred, &gold), beta).unwrap();
            let (_, _, v, _) = oracle::info(&pred, &gold, beta);
            assert!(close(info.v_measure, v, 1e-9));
        }
    }
}

fn labels_strategy(max_n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, n),
            proptest::collection::vec(0..n, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn overlap_margins_are_consistent((pred, gold) in labels_strategy(40)) {
        let o = table(&pred, &gold);
        prop_assert_eq!(o.cells().iter().map(|c| c.count).sum::<u64>(), o.n());
        prop_assert!(o.cells().iter().all(|c| c.count >= 1));
        for (i, row) in o.rows().enumerate() {
            prop_assert_eq!(row.iter().map(|c| c.count).sum::<u64>(), o.row_sizes()[i]);
        }
        let mut cols = vec![0u64; o.num_cols()];
        for c in o.cells() {
            cols[c.col as usize] += c.count;
        }
        prop_assert_eq!(&cols[..], o.col_sizes());
    }

    #[test]
    fn transpose_is_the_swapped_table((pred, gold) in labels_strategy(40)) {
        let o = table(&pred, &gold);
        let swapped = overlap(&align(&from_labels(&pred), &from_labels(&gold), UniversePolicy::Strict).unwrap().swapped());
        prop_assert_eq!(o.transpose(), swapped.clone());
        prop_assert_eq!(swapped.transpose(), o);
    }

    #[test]
    fn scores_are_dual_under_swap((pred, gold) in labels_strategy(40)) {
        let o = table(&pred, &gold);
        let t = o.transpose();

        let (a, b) = (pairwise(&o), pairwise(&t));
        prop_assert_eq!(a.precision, b.recall);
        prop_assert_eq!(a.recall, b.precision);

        let (a, b) = (exact_cluster(&o), exact_cluster(&t));
        prop_assert!(close(a.precision, b.recall, 1e-12));

        let (a, b) = (closest_cluster(&o).unwrap(), closest_cluster(&t).unwrap());
        prop_assert!(close(a.precision, b.recall, 1e-12));
        prop_assert!(close(a.recall, b.precision, 1e-12));

        let (a, b) = (purity_family(&o).unwrap(), purity_family(&t).unwrap());
        prop_assert!(close(a.acp, b.aap, 1e-12));
        prop_assert!(close(a.aap, b.acp, 1e-12));

        let vi = variation_of_information(&o).unwrap();
        prop_assert!(close(vi, variation_of_information(&t).unwrap(), 1e-12));
    }

    #[test]
    fn scores_stay_in_range((pred, gold) in labels_strategy(60)) {
        let o = table(&pred, &gold);
        let s = cluster_scores(&o).unwrap();
        let pw = pairwise(&o);
        let info = info_scores(&o, 1.0).unwrap();
        let unit = [
            pw.precision, pw.recall, pw.f1,
            s.exact.precision, s.exact.recall, s.exact.f1,
            s.closest.precision, s.closest.recall, s.closest.f1,
            s.purity.acp, s.purity.aap, s.purity.k, s.purity.manning,
            info.homogeneity, info.completeness, info.v_measure,
        ];
        for v in unit {
            prop_assert!((0.0..=1.0).contains(&v), "{v}");
        }
        prop_assert!(pw.shared_pairs <= pw.true_pairs.min(pw.predicted_pairs));
        prop_assert!(close(s.purity.k, (s.purity.acp * s.purity.aap).sqrt(), 1e-12));
        prop_assert!(s.purity.k <= s.purity.acp.max(s.purity.aap) + 1e-12);
        prop_assert!(s.purity.k >= s.purity.acp.min(s.purity.aap) - 1e-12);
        prop_assert!(info.h_gold_given_pred <= info.h_gold + 1e-9);
        prop_assert!(info.h_pred_given_gold <= info.h_pred + 1e-9);
        prop_assert!(close(info.vi, info.h_gold_given_pred + info.h_pred_given_gold, 1e-12));
    }

    #[test]
    fn refinement_conditions((pred, gold) in labels_strategy(30)) {
        let o = table(&pred, &gold);
        // each R-cluster inside one S-cluster <=> single cell per row
        let rows_pure = o.rows().all(|row| row.len() == 1);
        let mut per_col = vec![0usize; o.num_cols()];
        for c in o.cells() {
            per_col[c.col as usize] += 1;
        }
        let cols_pure = per_col.iter().all(|&k| k == 1);

        let pw = pairwise(&o);
        let pu = purity_family(&o).unwrap();
        let info = info_scores(&o, 1.0).unwrap();
        prop_assert_eq!(pu.manning == 1.0, rows_pure);
        prop_assert_eq!(info.homogeneity == 1.0, rows_pure);
        prop_assert_eq!(info.completeness == 1.0, cols_pure);
        if rows_pure {
            prop_assert_eq!(pw.precision, 1.0);
        }
        if cols_pure {
            prop_assert_eq!(pw.recall, 1.0);
        }
    }
}

#[test]
fn vi_is_invariant_under_record_replication() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let n = rand::Rng::random_range(&mut rng, 1..=30);
        let pred = random_labels(&mut rng, n, 6);
        let gold = random_labels(&mut rng, n, 6);
        let base = variation_of_information(&table(&pred, &gold)).unwrap();
        for t in [2, 3, 5] {
            let rep = |l: &[usize]| -> Vec<usize> {
                l.iter().flat_map(|&x| std::iter::repeat_n(x, t)).collect()
            };
            let vi = variation_of_information(&table(&rep(&pred), &rep(&gold))).unwrap();
            assert!(close(vi, base, 1e-9), "t={t}: {vi} vs {base}");
        }
    }
}

#[test]
fn vi_is_zero_only_for_equal_partitions() {
    for n in 1..=5 {
        let parts = all_partitions(n);
        for a in &parts {
            for b in &parts {
                let vi = variation_of_information(&table(a, b)).unwrap();
                assert_eq!(vi == 0.0, a == b, "{a:?} {b:?}");
            }
        }
    }
}

#[test]
fn vi_satisfies_triangle_inequality() {
    let mut rng = rng(3);
    for _ in 0..2000 {
        let n = rand::Rng::random_range(&mut rng, 1..=12);
        let a = random_labels(&mut rng, n, n);
        let b = random_labels(&mut rng, n, n);
        let c = random_labels(&mut rng, n, n);
        let vi = |x: &[usize], y: &[usize]| variation_of_information(&table(x, y)).unwrap();
        assert!(vi(&a, &c) <= vi(&a, &b) + vi(&b, &c) + 1e-9);
    }
}
