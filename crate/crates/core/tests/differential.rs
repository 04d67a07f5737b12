mod common;

use common::*;
use proptest::prelude::*;
use seqrule::{
    enumerate_target_rules, mine_target_rules, parse_sequence_database, write_results,
    write_sequence_database, DatasetFormat, Metric, MiningConfig, OracleConfig, PruningVariant,
    Ratio, SequenceDatabase, SimilarityMetric,
};

fn metric_strategy() -> impl Strategy<Value = Metric> {
    prop_oneof![Just(Metric::Frequency), Just(Metric::Utility)]
}

fn similarity_strategy() -> impl Strategy<Value = SimilarityMetric> {
    prop_oneof![
        Just(SimilarityMetric::None),
        Just(SimilarityMetric::Trjs),
        Just(SimilarityMetric::Tros)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn miner_matches_oracle(
        db in database_strategy(7, 8),
        q in query_strategy(7),
        metric in metric_strategy(),
        min_attr in 1u64..=25,
        conf in 0u64..=4,
        sim in similarity_strategy(),
        sim_min in 0u64..=4,
        caps in (1usize..=4, 1usize..=4),
    ) {
        let min_attr = if metric == Metric::Frequency { 1 + min_attr % 5 } else { min_attr };
        let (max_ant, max_cons) = (caps.0.max(q.antecedent().len()), caps.1.max(q.consequent().len()));
        let min_conf = Ratio::new(conf, 4);
        let min_sim = Ratio::new(sim_min, 4);
        let oracle = enumerate_target_rules(
            &db,
            &q,
            &OracleConfig::new(metric, min_attr, min_conf)
                .with_size_limits(max_ant, max_cons)
                .with_similarity(sim, min_sim),
        )
        .unwrap();
        for variant in PruningVariant::ALL {
            let cfg = MiningConfig::new(metric, min_attr, min_conf)
                .with_variant(variant)
                .with_similarity(sim, min_sim)
                .with_size_limits(max_ant, max_cons);
            let mined = mine_target_rules(&db, &q, &cfg).unwrap();
            prop_assert_eq!(&mined.rules, &oracle, "{:?}", variant);
        }
    }

    #[test]
    fn oracle_ignores_sequence_order(
        db in database_strategy(6, 8),
        q in query_strategy(6),
        metric in metric_strategy(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let mut shuffled = db.sequences().to_vec();
        shuffled.shuffle(&mut rng(seed));
        let shuffled = SequenceDatabase::new(shuffled);
        let cfg = OracleConfig::new(metric, 1, Ratio::from_integer(0));
        let a = enumerate_target_rules(&db, &q, &cfg).unwrap();
        let b = enumerate_target_rules(&shuffled, &q, &cfg).unwrap();
        prop_assert_eq!(write_results(&a, false), write_results(&b, false));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn emitted_rules_include_query(db in database_strategy(6, 8), q in query_strategy(6), metric in metric_strategy()) {
        let cfg = MiningConfig::new(metric, 1, Ratio::from_integer(0));
        let rules = mine_target_rules(&db, &q, &cfg).unwrap().rules;
        for r in &rules {
            prop_assert!(!r.antecedent.is_empty() && !r.consequent.is_empty());
            prop_assert!(q.antecedent().iter().all(|i| r.antecedent.contains(i)));
            prop_assert!(q.consequent().iter().all(|i| r.consequent.contains(i)));
            prop_assert!(r.antecedent.iter().all(|i| !r.consequent.contains(i)));
        }
        prop_assert!(rules.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn database_text_round_trips(db in database_strategy(9, 10)) {
        let util = write_sequence_database(&db, DatasetFormat::Utility);
        prop_assert_eq!(parse_sequence_database(&util, DatasetFormat::Utility).unwrap(), db.clone());
        let freq = write_sequence_database(&db, DatasetFormat::Frequency);
        let back = parse_sequence_database(&freq, DatasetFormat::Frequency).unwrap();
        prop_assert_eq!(write_sequence_database(&back, DatasetFormat::Frequency), freq);
        prop_assert_eq!(back.len(), db.len());
    }
}

#[test]
fn repeated_runs_are_identical() {
    let mut r = rng(11);
    for _ in 0..40 {
        let db = random_database(&mut r, 8, 8);
        let Some(q) = random_query(&mut r, &db) else {
            continue;
        };
        for metric in [Metric::Frequency, Metric::Utility] {
            for variant in PruningVariant::ALL {
                let cfg = MiningConfig::new(metric, 2, Ratio::new(1, 4)).with_variant(variant);
                let a = mine_target_rules(&db, &q, &cfg).unwrap();
                let b = mine_target_rules(&db, &q, &cfg).unwrap();
                assert_eq!(a, b);
                assert_eq!(
                    write_results(&a.rules, false),
                    write_results(&b.rules, false)
                );
            }
        }
    }
}

#[test]
fn empty_database_yields_nothing() {
    let db = SequenceDatabase::new(Vec::new());
    let q = seqrule::QueryRule::from_ids(&[1], &[2]).unwrap();
    for variant in PruningVariant::ALL {
        let cfg =
            MiningConfig::new(Metric::Utility, 1, Ratio::from_integer(0)).with_variant(variant);
        let out = mine_target_rules(&db, &q, &cfg).unwrap();
        assert!(out.rules.is_empty());
        assert_eq!(out.stats.expansions, 0);
    }
}
