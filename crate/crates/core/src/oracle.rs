//! Exhaustive reference miner.
//!
//! Enumerates every rule that includes the query within the size limits and
//! evaluates it by direct scans of the original database. Nothing here
//! shares code with the preprocessing or search paths; it exists to check
//! them.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::miner::TargetRuleResult;
use crate::model::{
    contains_rule, key_positions, support_itemset, Attr, Item, Metric, QueryRule, Rule, Sequence,
    SequenceDatabase,
};
use crate::ratio::{ratio_at_least, Ratio};
use crate::similarity::{SimilarityConfig, SimilarityMetric};

/// Largest item universe the oracle accepts.
pub const MAX_UNIVERSE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_antecedent: usize,
    pub max_consequent: usize,
    pub metric: Metric,
    pub min_attr: Attr,
    pub min_conf: Ratio,
    pub similarity: SimilarityMetric,
    pub min_similarity: Ratio,
}

impl OracleConfig {
    pub fn new(metric: Metric, min_attr: Attr, min_conf: Ratio) -> OracleConfig {
        OracleConfig {
            max_antecedent: 4,
            max_consequent: 4,
            metric,
            min_attr,
            min_conf,
            similarity: SimilarityMetric::None,
            min_similarity: Ratio::from_integer(0),
        }
    }

    pub fn with_size_limits(mut self, max_antecedent: usize, max_consequent: usize) -> Self {
        self.max_antecedent = max_antecedent;
        self.max_consequent = max_consequent;
        self
    }

    pub fn with_similarity(mut self, metric: SimilarityMetric, min: Ratio) -> Self {
        self.similarity = metric;
        self.min_similarity = min;
        self
    }
}

/// Rule attribute in one sequence by scanning every split point `v`: the
/// antecedent must be complete in itemsets `1..v-1` and the consequent in
/// `v..=n`.
pub fn attr_rule_by_split(rule: &Rule, s: &Sequence, metric: Metric) -> Attr {
    let n = s.len();
    let mut best: Option<Attr> = None;
    for v in 1..=n + 1 {
        let prefix: &[_] = &s.itemsets()[..v - 1];
        let suffix: &[_] = &s.itemsets()[v - 1..];
        let side_value = |side: &[Item], part: &[crate::model::Itemset]| -> Option<Attr> {
            side.iter()
                .map(|&i| part.iter().filter_map(|is| is.attr_of(i)).max())
                .sum()
        };
        let (Some(left), Some(right)) = (
            side_value(rule.antecedent(), prefix),
            side_value(rule.consequent(), suffix),
        ) else {
            continue;
        };
        let value = match metric {
            Metric::Frequency => 1,
            Metric::Utility => left + right,
        };
        best = Some(best.map_or(value, |b| b.max(value)));
    }
    best.unwrap_or(0)
}

/// Every target rule of `query`, sorted by antecedent then consequent.
pub fn enumerate_target_rules(
    db: &SequenceDatabase,
    query: &QueryRule,
    cfg: &OracleConfig,
) -> Result<Vec<TargetRuleResult>> {
    let universe = db.item_universe();
    if universe.len() > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(universe.len()));
    }
    if cfg.max_antecedent == 0 || cfg.max_consequent == 0 {
        return Err(Error::Config("size limits must be at least 1".into()));
    }
    let qx = query.antecedent();
    let qy = query.consequent();
    let query_support = db
        .sequences()
        .iter()
        .filter(|s| contains_rule(s, &query.to_rule()))
        .count();
    let sim = (cfg.similarity != SimilarityMetric::None && query_support > 0)
        .then(|| SimilarityConfig::new(cfg.similarity, cfg.min_similarity, query_support))
        .transpose()?;

    let free: Vec<Item> = universe
        .iter()
        .copied()
        .filter(|&i| !query.contains_item(i))
        .collect();
    let mut out = Vec::new();
    let left_room = cfg.max_antecedent.saturating_sub(qx.len());
    let right_room = cfg.max_consequent.saturating_sub(qy.len());
    for left_size in 0..=left_room.min(free.len()) {
        for extra_left in free.iter().copied().combinations(left_size) {
            let rest: Vec<Item> = free
                .iter()
                .copied()
                .filter(|i| !extra_left.contains(i))
                .collect();
            for right_size in 0..=right_room.min(rest.len()) {
                for extra_right in rest.iter().copied().combinations(right_size) {
                    let rule = Rule::new(
                        qx.iter().copied().chain(extra_left.iter().copied()),
                        qy.iter().copied().chain(extra_right.iter().copied()),
                    )?;
                    if rule.antecedent().is_empty() || rule.consequent().is_empty() {
                        continue;
                    }
                    if let Some(found) = evaluate(db, &rule, cfg, sim.as_ref())? {
                        out.push(found);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn evaluate(
    db: &SequenceDatabase,
    rule: &Rule,
    cfg: &OracleConfig,
    sim: Option<&SimilarityConfig>,
) -> Result<Option<TargetRuleResult>> {
    let mut support = 0;
    let mut attr = 0;
    for s in db.sequences() {
        if key_positions(s, rule).contains() {
            support += 1;
            attr += attr_rule_by_split(rule, s, cfg.metric);
        }
    }
    if support == 0 || attr < cfg.min_attr {
        return Ok(None);
    }
    let antecedent_support = support_itemset(rule.antecedent(), db);
    if !ratio_at_least(support as u64, antecedent_support as u64, &cfg.min_conf) {
        return Ok(None);
    }
    let sim = match sim {
        Some(sc) => {
            let value = sc.measure(support)?.expect("metric is set");
            if value < sc.min_similarity {
                return Ok(None);
            }
            Some(value)
        }
        None => None,
    };
    Ok(Some(TargetRuleResult {
        antecedent: rule.antecedent().to_vec(),
        consequent: rule.consequent().to_vec(),
        attr,
        support,
        antecedent_support,
        conf: Ratio::new(support as u64, antecedent_support as u64),
        sim,
    }))
}
