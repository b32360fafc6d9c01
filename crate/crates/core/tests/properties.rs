mod common;

use cogmap::{
    enumerate_simple_paths, general_influence, influence_matrix, influence_matrix_with, kosko,
    load_map, save_map, CognitiveMap, InfluenceOptions, LoadOptions, MapFormat, PathBudget,
    WeightMode,
};
use common::oracle;
use proptest::prelude::*;

fn arb_map(max_n: usize) -> impl Strategy<Value = CognitiveMap> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let weight = prop_oneof![2 => Just(0.0), 3 => -2.0..2.0f64];
            (Just(n), prop::collection::vec(weight, n * n))
        })
        .prop_map(|(n, mut w)| {
            for i in 0..n {
                w[i * n + i] = 0.0;
            }
            CognitiveMap::from_row_major(n, &w).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn paths_match_brute_force(map in arb_map(6)) {
        for s in 0..map.n() {
            for t in (0..map.n()).filter(|&t| t != s) {
                let got: Vec<Vec<usize>> = enumerate_simple_paths(&map, s, t)
                    .unwrap()
                    .paths
                    .iter()
                    .map(|p| p.vertices().to_vec())
                    .collect();
                prop_assert_eq!(got, oracle::simple_paths(&map, s, t));
            }
        }
    }

    #[test]
    fn influence_matches_straight_line_oracle(map in arb_map(6)) {
        let z = influence_matrix(&map).unwrap();
        for (i, row) in oracle::influence(&map).iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                prop_assert!((z.get(i, j) - want).abs() <= 1e-12, "z_{}{} {} vs {}", i, j, z.get(i, j), want);
            }
        }
    }

    #[test]
    fn influence_bounded_and_zero_iff_unreachable(map in arb_map(6)) {
        let z = influence_matrix(&map).unwrap();
        let reach = map.reachability();
        let mu = map.max_abs_weight().value();
        for i in 0..map.n() {
            prop_assert_eq!(z.get(i, i), 0.0);
            for j in (0..map.n()).filter(|&j| j != i) {
                let s = enumerate_simple_paths(&map, i, j).unwrap().count() as f64;
                prop_assert_eq!(z.get(i, j) == 0.0, !reach.is_reachable(i, j));
                if s > 0.0 {
                    prop_assert!(z.get(i, j).abs() < 2.0 * mu * s);
                }
            }
        }
    }

    #[test]
    fn scaling_scales_scores(map in arb_map(6), eta in prop_oneof![0.001..0.1f64, 0.5..50.0f64]) {
        let base = general_influence(&influence_matrix(&map).unwrap());
        let scaled = general_influence(&influence_matrix(&map.scale(eta).unwrap()).unwrap());
        for (a, b) in scaled.scores.iter().zip(&base.scores) {
            prop_assert!((a - eta * b).abs() <= 1e-9 * (eta * b).abs().max(1e-300));
        }
    }

    #[test]
    fn threads_do_not_change_bits(map in arb_map(6), threads in 2usize..6) {
        let one = influence_matrix(&map).unwrap();
        let many = influence_matrix_with(&map, &InfluenceOptions { threads, ..Default::default() }).unwrap();
        let same = one.row_major().iter().zip(many.row_major()).all(|(a, b)| a.to_bits() == b.to_bits());
        prop_assert!(same);
    }

    #[test]
    fn kosko_total_dominates_and_is_monotone(map in arb_map(5), bump in 0.01..1.0f64, pick in any::<prop::sample::Index>()) {
        let n = map.n();
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| map.successors(i).map(move |j| (i, j))).collect();
        prop_assume!(!edges.is_empty());
        let (a, b) = edges[pick.index(edges.len())];
        let mut rows = map.to_rows();
        rows[a][b] += bump;
        prop_assume!(rows[a][b] != 0.0);
        let raised = CognitiveMap::new(rows).unwrap();
        for s in 0..n {
            for t in (0..n).filter(|&t| t != s) {
                let k = kosko::total_influence(&map, s, t, WeightMode::Signed, PathBudget::default()).unwrap();
                if let Some(total) = k.total {
                    prop_assert!(k.per_path.iter().all(|(_, ip)| *ip <= total));
                }
                let r = kosko::total_influence(&raised, s, t, WeightMode::Signed, PathBudget::default()).unwrap();
                prop_assert!(r.total >= k.total);
                let m = kosko::total_influence(&map, s, t, WeightMode::Magnitude, PathBudget::default()).unwrap();
                prop_assert!(m.total.is_none_or(|x| x > 0.0));
            }
        }
    }

    #[test]
    fn save_load_round_trip(map in arb_map(7)) {
        for format in [MapFormat::Csv, MapFormat::Json] {
            let mut buf = Vec::new();
            save_map(&map, &mut buf, format).unwrap();
            let back = load_map(&buf[..], format, LoadOptions::default()).unwrap();
            prop_assert_eq!(&back, &map);
        }
    }

    #[test]
    fn eigenvalues_are_backward_stable(map in arb_map(7)) {
        let n = map.n();
        let ours = cogmap::eigen::eigenvalues(n, map.row_major()).unwrap();
        prop_assert_eq!(ours.len(), n);
        let norm = map.row_major().iter().map(|w| w * w).sum::<f64>().sqrt().max(1.0);
        for lambda in &ours {
            prop_assert!(oracle::shifted_min_singular_value(&map, *lambda) <= 1e-10 * norm, "{lambda}");
            if lambda.im != 0.0 {
                prop_assert!(ours.iter().any(|mu| (mu - lambda.conj()).norm() <= 1e-12 * norm));
            }
        }
        let trace: f64 = (0..n).map(|i| map.weight(i, i)).sum();
        let sum: num_complex::Complex64 = ours.iter().sum();
        prop_assert!((sum.re - trace).abs() <= 1e-10 * norm && sum.im.abs() <= 1e-10 * norm);
    }
}

#[test]
fn unique_direct_edges_keep_their_weight() {
    let map = CognitiveMap::new(vec![
        vec![0.0, 0.7, 0.0, 0.0],
        vec![0.0, 0.0, -0.4, 0.0],
        vec![0.0, 0.0, 0.0, 0.9],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
    .unwrap();
    let z = influence_matrix(&map).unwrap();
    assert_eq!(z.get(0, 1), 0.7);
    assert_eq!(z.get(1, 2), -0.4);
    assert_eq!(z.get(2, 3), 0.9);
    assert_eq!(z.get(3, 0), 0.0);
}

#[test]
fn fixtures_agree_with_oracle() {
    for id in cogmap::fixtures::IDS {
        let map = cogmap::fixtures::map(id).unwrap();
        let z = influence_matrix(&map).unwrap();
        for (i, row) in oracle::influence(&map).iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((z.get(i, j) - want).abs() <= 1e-12, "m{id} z_{i}{j}");
            }
        }
    }
}
