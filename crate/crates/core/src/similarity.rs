//! Similarity of a target rule to its query rule, measured on supports.
//!
//! Both measures only grow with the rule's support, and support never grows
//! under expansion, so a branch whose rule falls below the threshold can be
//! abandoned together with all its descendants.

use crate::error::{Error, Result};
use crate::ratio::{ratio_at_least, Ratio};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SimilarityMetric {
    #[default]
    None,
    /// Jaccard-style: `sup(tr) / sup(qr)`.
    Trjs,
    /// Dice-style: `2 sup(tr) / (sup(qr) + sup(tr))`.
    Tros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimilarityConfig {
    pub metric: SimilarityMetric,
    pub min_similarity: Ratio,
    /// Support of the query rule, measured after preprocessing.
    pub query_support: usize,
}

impl SimilarityConfig {
    pub fn new(
        metric: SimilarityMetric,
        min_similarity: Ratio,
        query_support: usize,
    ) -> Result<SimilarityConfig> {
        if min_similarity > Ratio::from_integer(1) {
            return Err(Error::Config(
                "minimum similarity must lie in [0, 1]".into(),
            ));
        }
        if metric != SimilarityMetric::None && query_support == 0 {
            return Err(Error::Config("query support must be positive".into()));
        }
        Ok(SimilarityConfig {
            metric,
            min_similarity,
            query_support,
        })
    }

    /// The configured measure for a rule with `rule_support`, or `None` when
    /// similarity is disabled.
    pub fn measure(&self, rule_support: usize) -> Result<Option<Ratio>> {
        match self.metric {
            SimilarityMetric::None => Ok(None),
            SimilarityMetric::Trjs => trjs(self.query_support, rule_support).map(Some),
            SimilarityMetric::Tros => tros(self.query_support, rule_support).map(Some),
        }
    }
}

fn check_domain(query_support: usize, rule_support: usize) -> Result<()> {
    if rule_support == 0 || rule_support > query_support {
        return Err(Error::SimilarityDomain {
            rule_support,
            query_support,
        });
    }
    Ok(())
}

pub fn trjs(query_support: usize, rule_support: usize) -> Result<Ratio> {
    check_domain(query_support, rule_support)?;
    Ok(Ratio::new(rule_support as u64, query_support as u64))
}

pub fn tros(query_support: usize, rule_support: usize) -> Result<Ratio> {
    check_domain(query_support, rule_support)?;
    Ok(Ratio::new(
        2 * rule_support as u64,
        (query_support + rule_support) as u64,
    ))
}

/// Whether a rule with `rule_support` reaches the similarity threshold.
/// Always true when similarity is disabled.
pub fn is_useful(rule_support: usize, cfg: &SimilarityConfig) -> bool {
    let (num, den) = match cfg.metric {
        SimilarityMetric::None => return true,
        SimilarityMetric::Trjs => (rule_support as u64, cfg.query_support as u64),
        SimilarityMetric::Tros => (
            2 * rule_support as u64,
            (cfg.query_support + rule_support) as u64,
        ),
    };
    if den == 0 {
        return cfg.min_similarity == Ratio::from_integer(0);
    }
    ratio_at_least(num, den, &cfg.min_similarity)
}

/// True when the branch rooted at a rule with `rule_support` can be
/// terminated without emitting anything.
pub fn prune_by_similarity(rule_support: usize, cfg: &SimilarityConfig) -> bool {
    !is_useful(rule_support, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(metric: SimilarityMetric, min: Ratio, qr: usize) -> SimilarityConfig {
        SimilarityConfig::new(metric, min, qr).unwrap()
    }

    #[test]
    fn jaccard_values() {
        assert_eq!(trjs(2, 2).unwrap(), Ratio::from_integer(1));
        assert_eq!(trjs(2, 1).unwrap(), Ratio::new(1, 2));
        assert!(matches!(trjs(2, 3), Err(Error::SimilarityDomain { .. })));
        assert!(trjs(2, 0).is_err());
    }

    #[test]
    fn dice_values() {
        assert_eq!(tros(2, 2).unwrap(), Ratio::from_integer(1));
        assert_eq!(tros(2, 1).unwrap(), Ratio::new(2, 3));
        assert_eq!(tros(5, 5).unwrap(), Ratio::from_integer(1));
        assert!(tros(1, 2).is_err());
    }

    #[test]
    fn usefulness() {
        let t = Ratio::new(3, 5);
        assert!(!is_useful(1, &cfg(SimilarityMetric::Trjs, t, 2)));
        assert!(is_useful(1, &cfg(SimilarityMetric::Tros, t, 2)));
        for sup in 1..=4 {
            assert!(is_useful(
                sup,
                &cfg(SimilarityMetric::Trjs, Ratio::from_integer(0), 4)
            ));
            assert!(is_useful(
                sup,
                &cfg(SimilarityMetric::Tros, Ratio::from_integer(0), 4)
            ));
        }
    }

    #[test]
    fn branch_termination() {
        let t = Ratio::new(3, 5);
        assert!(prune_by_similarity(1, &cfg(SimilarityMetric::Trjs, t, 2)));
        assert!(!prune_by_similarity(
            2,
            &cfg(SimilarityMetric::Trjs, Ratio::from_integer(1), 2)
        ));
        assert!(!prune_by_similarity(
            2,
            &cfg(SimilarityMetric::Tros, Ratio::from_integer(1), 2)
        ));
        assert!(!prune_by_similarity(
            1,
            &cfg(SimilarityMetric::Trjs, Ratio::from_integer(0), 9)
        ));
        assert!(!prune_by_similarity(1, &cfg(SimilarityMetric::None, t, 0)));
    }

    #[test]
    fn rejects_out_of_range_threshold() {
        assert!(SimilarityConfig::new(SimilarityMetric::Trjs, Ratio::new(3, 2), 2).is_err());
        assert!(SimilarityConfig::new(SimilarityMetric::Trjs, Ratio::new(1, 2), 0).is_err());
    }

    #[test]
    fn measures_stay_in_unit_interval() {
        for qr in 1..=12usize {
            for tr in 1..=qr {
                for m in [trjs(qr, tr).unwrap(), tros(qr, tr).unwrap()] {
                    assert!(m > Ratio::from_integer(0) && m <= Ratio::from_integer(1));
                }
                if tr > 1 {
                    assert!(trjs(qr, tr - 1).unwrap() <= trjs(qr, tr).unwrap());
                    assert!(tros(qr, tr - 1).unwrap() <= tros(qr, tr).unwrap());
                }
            }
        }
    }
}
