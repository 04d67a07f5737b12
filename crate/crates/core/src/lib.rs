//! Targeted sequential rule mining.
//!
//! Given a sequence database and a query rule `X -> Y`, [`mine_target_rules`]
//! finds every rule whose antecedent contains `X`, whose consequent contains
//! `Y`, and which meets the attribute and confidence thresholds. Attributes
//! are either occurrence counts ([`Metric::Frequency`]) or summed item
//! utilities ([`Metric::Utility`]).
//!
//! ```
//! use seqrule::{mine_target_rules, MiningConfig, Metric, QueryRule, Ratio, SequenceDatabase, Sequence};
//!
//! let db = SequenceDatabase::new(vec![
//!     Sequence::from_ids(&[&[(1, 1)], &[(2, 1)], &[(3, 1)]]).unwrap(),
//!     Sequence::from_ids(&[&[(1, 1)], &[(3, 1)]]).unwrap(),
//! ]);
//! let query = QueryRule::from_ids(&[1], &[3]).unwrap();
//! let cfg = MiningConfig::new(Metric::Frequency, 1, Ratio::from_integer(0));
//! let outcome = mine_target_rules(&db, &query, &cfg).unwrap();
//! // 1 -> 3, 1 -> 2,3 and 1,2 -> 3
//! assert_eq!(outcome.rules.len(), 3);
//! ```

pub mod dataio;
pub mod error;
pub mod generate;
pub mod miner;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod ratio;
pub mod similarity;

pub use dataio::{
    parse_query_rule, parse_query_rule_with, parse_sequence_database, write_results,
    write_results_with, write_sequence_database, DatasetFormat, TokenMap,
};
pub use error::{Error, Result};
pub use generate::{generate_database, GeneratorParams};
pub use miner::{
    mine_target_rules, mine_target_rules_traced, ExpansionTrace, MiningConfig, MiningOutcome,
    MiningStats, Side, TargetRuleResult,
};
pub use model::{
    Attr, Item, Itemset, KeyPositions, Metric, QueryRule, Rule, Sequence, SequenceDatabase,
};
pub use oracle::{enumerate_target_rules, OracleConfig};
pub use preprocess::{preprocess, prune_global_items, ModifiedDatabase, PruningVariant};
pub use ratio::{format_ratio, parse_ratio, Ratio};
pub use similarity::{SimilarityConfig, SimilarityMetric};
