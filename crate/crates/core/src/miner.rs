//! Rule-growth search for target rules.
//!
//! Mining starts from the placeholder rule `iX -> iY` of the modified
//! database and grows it one item at a time. Right-expansions add to the
//! consequent and left-expansions to the antecedent; once a rule has been
//! left-expanded it is never right-expanded again, and every added item
//! sorts after the items already on its side, so each rule is reached along
//! exactly one path.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{
    Attr, Item, KeyPositions, Metric, Phase, QueryRule, Rule, Sequence, SequenceDatabase,
};
use crate::preprocess::{self, BoundReport, ModifiedDatabase, PruningVariant};
use crate::ratio::{ratio_at_least, Ratio};
use crate::similarity::{self, SimilarityConfig, SimilarityMetric};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiningConfig {
    pub metric: Metric,
    pub min_attr: Attr,
    pub min_conf: Ratio,
    pub variant: PruningVariant,
    pub similarity: SimilarityMetric,
    pub min_similarity: Ratio,
    /// Cap on the antecedent size of reported rules (query items included).
    pub max_antecedent: Option<usize>,
    /// Cap on the consequent size of reported rules (query items included).
    pub max_consequent: Option<usize>,
}

impl MiningConfig {
    pub fn new(metric: Metric, min_attr: Attr, min_conf: Ratio) -> MiningConfig {
        MiningConfig {
            metric,
            min_attr,
            min_conf,
            variant: PruningVariant::Full,
            similarity: SimilarityMetric::None,
            min_similarity: Ratio::from_integer(0),
            max_antecedent: None,
            max_consequent: None,
        }
    }

    pub fn with_variant(mut self, variant: PruningVariant) -> MiningConfig {
        self.variant = variant;
        self
    }

    pub fn with_similarity(mut self, metric: SimilarityMetric, min: Ratio) -> MiningConfig {
        self.similarity = metric;
        self.min_similarity = min;
        self
    }

    pub fn with_size_limits(
        mut self,
        max_antecedent: usize,
        max_consequent: usize,
    ) -> MiningConfig {
        self.max_antecedent = Some(max_antecedent);
        self.max_consequent = Some(max_consequent);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let one = Ratio::from_integer(1);
        if self.min_conf > one {
            return Err(Error::Config(
                "minimum confidence must lie in [0, 1]".into(),
            ));
        }
        if self.min_similarity > one {
            return Err(Error::Config(
                "minimum similarity must lie in [0, 1]".into(),
            ));
        }
        if self.max_antecedent == Some(0) || self.max_consequent == Some(0) {
            return Err(Error::Config("size limits must be at least 1".into()));
        }
        Ok(())
    }
}

/// A reported rule, expressed in the original item space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetRuleResult {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    pub attr: Attr,
    pub support: usize,
    pub antecedent_support: usize,
    pub conf: Ratio,
    pub sim: Option<Ratio>,
}

impl TargetRuleResult {
    pub fn rule(&self) -> Rule {
        Rule::new(
            self.antecedent.iter().copied(),
            self.consequent.iter().copied(),
        )
        .expect("reported rules are disjoint")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Left- and right-expansion calls made by the search.
    pub expansions: u64,
    /// Expansion candidates discovered before bound filtering.
    pub candidates: u64,
    pub rules_emitted: u64,
    pub sequences_kept: u64,
    pub items_removed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MiningOutcome {
    pub rules: Vec<TargetRuleResult>,
    pub stats: MiningStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One parent-to-child step of the search, reported to tracing observers.
#[derive(Debug)]
pub struct ExpansionTrace<'a> {
    pub side: Side,
    pub parent: &'a Rule,
    pub child: &'a Rule,
    pub parent_support: usize,
    pub child_support: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SeqState {
    sid: u32,
    px: u32,
    py: u32,
    attr: Attr,
}

/// A rule together with where it occurs in the modified database.
#[derive(Clone, Debug)]
pub struct RuleContext {
    rule: Rule,
    states: Vec<SeqState>,
    antecedent_sids: Vec<u32>,
}

impl RuleContext {
    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn support(&self) -> usize {
        self.states.len()
    }

    pub fn antecedent_support(&self) -> usize {
        self.antecedent_sids.len()
    }

    pub fn rule_sids(&self) -> impl Iterator<Item = usize> + '_ {
        self.states.iter().map(|s| s.sid as usize)
    }

    pub fn antecedent_sids(&self) -> impl Iterator<Item = usize> + '_ {
        self.antecedent_sids.iter().map(|&s| s as usize)
    }

    pub fn attr(&self) -> Attr {
        self.states.iter().map(|s| s.attr).sum()
    }

    pub fn sequence_attr(&self, sid: usize) -> Option<Attr> {
        self.state(sid).map(|s| s.attr)
    }

    pub fn positions(&self, sid: usize) -> Option<KeyPositions> {
        self.state(sid).map(|s| KeyPositions {
            px: Some(s.px as usize),
            py: Some(s.py as usize),
        })
    }

    /// `None` when the antecedent never occurs.
    pub fn confidence(&self) -> Option<Ratio> {
        (!self.antecedent_sids.is_empty())
            .then(|| Ratio::new(self.support() as u64, self.antecedent_support() as u64))
    }

    fn state(&self, sid: usize) -> Option<&SeqState> {
        self.states
            .binary_search_by_key(&(sid as u32), |s| s.sid)
            .ok()
            .map(|i| &self.states[i])
    }
}

#[derive(Clone, Debug)]
pub struct ExpansionCandidate {
    pub item: Item,
    pub side: Side,
    /// Attribute of the expanded rule.
    pub exact_attr: Attr,
    /// Sum of basic bounds over the sequences where the expansion holds.
    pub bound_attr: Attr,
    states: Vec<SeqState>,
}

impl ExpansionCandidate {
    pub fn rule_sids(&self) -> impl Iterator<Item = usize> + '_ {
        self.states.iter().map(|s| s.sid as usize)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Candidates {
    pub left: Vec<ExpansionCandidate>,
    pub right: Vec<ExpansionCandidate>,
    /// Candidates found before bound filtering.
    pub discovered: usize,
}

/// Thresholds and blocked items applied while collecting candidates.
#[derive(Clone, Copy, Debug)]
pub struct CandidateFilter<'a> {
    pub min_attr: Attr,
    pub variant: PruningVariant,
    pub report: Option<&'a BoundReport>,
}

struct IndexedSequence<'a> {
    seq: &'a Sequence,
    bound: Attr,
    items: Vec<Item>,
    offsets: Vec<u32>,
    occurrences: Vec<(u32, Attr)>,
}

impl<'a> IndexedSequence<'a> {
    fn new(seq: &'a Sequence, metric: Metric) -> IndexedSequence<'a> {
        let mut flat: Vec<(Item, u32, Attr)> = seq
            .itemsets()
            .iter()
            .enumerate()
            .flat_map(|(idx, is)| {
                is.entries()
                    .iter()
                    .map(move |&(i, a)| (i, idx as u32 + 1, a))
            })
            .collect();
        flat.sort_unstable();
        let mut items = Vec::new();
        let mut offsets = Vec::new();
        let mut occurrences = Vec::with_capacity(flat.len());
        for (k, &(item, pos, attr)) in flat.iter().enumerate() {
            if k == 0 || flat[k - 1].0 != item {
                items.push(item);
                offsets.push(k as u32);
            }
            occurrences.push((pos, attr));
        }
        offsets.push(flat.len() as u32);
        let bound = match metric {
            Metric::Frequency => 1,
            Metric::Utility => seq.total_attr(),
        };
        IndexedSequence {
            seq,
            bound,
            items,
            offsets,
            occurrences,
        }
    }

    fn occurrences(&self, item: Item) -> &[(u32, Attr)] {
        match self.items.binary_search(&item) {
            Ok(k) => &self.occurrences[self.offsets[k] as usize..self.offsets[k + 1] as usize],
            Err(_) => &[],
        }
    }

    /// Max over split points `v` in `(px, py]` of the antecedent prefix maxima
    /// up to `v - 1` plus the consequent suffix maxima from `v`.
    fn utility(
        &self,
        ant: impl Iterator<Item = Item>,
        cons: impl Iterator<Item = Item>,
        px: usize,
        py: usize,
    ) -> Attr {
        let width = py - px;
        let mut best = vec![0 as Attr; width];
        for x in ant {
            let occ = self.occurrences(x);
            let (mut k, mut run) = (0, 0);
            for (t, slot) in best.iter_mut().enumerate() {
                let upto = px + t;
                while k < occ.len() && occ[k].0 as usize <= upto {
                    run = run.max(occ[k].1);
                    k += 1;
                }
                *slot += run;
            }
        }
        for y in cons {
            let occ = self.occurrences(y);
            let (mut k, mut run) = (occ.len(), 0);
            for (t, slot) in best.iter_mut().enumerate().rev() {
                let from = px + t + 1;
                while k > 0 && occ[k - 1].0 as usize >= from {
                    run = run.max(occ[k - 1].1);
                    k -= 1;
                }
                *slot += run;
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// The modified database indexed for repeated rule scans.
pub struct SearchSpace<'a> {
    modified: &'a ModifiedDatabase,
    metric: Metric,
    sequences: Vec<IndexedSequence<'a>>,
    tidsets: BTreeMap<Item, Vec<u32>>,
}

impl<'a> SearchSpace<'a> {
    pub fn new(modified: &'a ModifiedDatabase, metric: Metric) -> SearchSpace<'a> {
        let sequences: Vec<_> = modified
            .database()
            .sequences()
            .iter()
            .map(|s| IndexedSequence::new(s, metric))
            .collect();
        let mut tidsets: BTreeMap<Item, Vec<u32>> = BTreeMap::new();
        for (sid, s) in sequences.iter().enumerate() {
            for &item in &s.items {
                tidsets.entry(item).or_default().push(sid as u32);
            }
        }
        SearchSpace {
            modified,
            metric,
            sequences,
            tidsets,
        }
    }

    fn attr_of(
        &self,
        s: &IndexedSequence<'_>,
        ant: impl Iterator<Item = Item>,
        cons: impl Iterator<Item = Item>,
        px: usize,
        py: usize,
    ) -> Attr {
        match self.metric {
            Metric::Frequency => 1,
            Metric::Utility => s.utility(ant, cons, px, py),
        }
    }

    /// The placeholder rule, or `None` when no sequence contains it.
    pub fn first_rule(&self) -> Option<RuleContext> {
        let rule = self.modified.placeholder_rule();
        let mut states = Vec::new();
        for (sid, (s, kp)) in self
            .sequences
            .iter()
            .zip(self.modified.key_positions())
            .enumerate()
        {
            if !kp.contains() {
                continue;
            }
            let (px, py) = (kp.px.expect("contained"), kp.py.expect("contained"));
            let attr = self.attr_of(
                s,
                rule.antecedent().iter().copied(),
                rule.consequent().iter().copied(),
                px,
                py,
            );
            states.push(SeqState {
                sid: sid as u32,
                px: px as u32,
                py: py as u32,
                attr,
            });
        }
        if states.is_empty() {
            return None;
        }
        Some(RuleContext {
            rule,
            states,
            antecedent_sids: (0..self.sequences.len() as u32).collect(),
        })
    }

    /// Collects left- and/or right-expansion candidates of `ctx`.
    pub fn find_candidates(
        &self,
        ctx: &RuleContext,
        want_left: bool,
        want_right: bool,
        filter: &CandidateFilter<'_>,
    ) -> Candidates {
        let ant = ctx.rule.antecedent();
        let cons = ctx.rule.consequent();
        let max_ant = ant.last().copied();
        let max_cons = cons.last().copied();
        let mut left: BTreeMap<Item, ExpansionCandidate> = BTreeMap::new();
        let mut right: BTreeMap<Item, ExpansionCandidate> = BTreeMap::new();
        let blocked_left = |i: &Item| {
            filter.variant == PruningVariant::Full
                && filter.report.is_some_and(|r| r.left_blocked.contains(i))
        };
        let blocked_right = |i: &Item| {
            filter.variant == PruningVariant::Full
                && filter.report.is_some_and(|r| r.right_blocked.contains(i))
        };
        let mut scratch: Vec<Item> = Vec::new();

        for st in &ctx.states {
            let s = &self.sequences[st.sid as usize];
            let (px, py) = (st.px as usize, st.py as usize);

            if want_left {
                scratch.clear();
                for is in &s.seq.itemsets()[..py - 1] {
                    scratch.extend(is.items().filter(|&i| {
                        !i.is_placeholder()
                            && Some(i) > max_ant
                            && cons.binary_search(&i).is_err()
                            && !blocked_left(&i)
                    }));
                }
                scratch.sort_unstable();
                scratch.dedup();
                for &item in &scratch {
                    let first = s.occurrences(item)[0].0 as usize;
                    let child_px = px.max(first);
                    let attr = self.attr_of(
                        s,
                        ant.iter().copied().chain(std::iter::once(item)),
                        cons.iter().copied(),
                        child_px,
                        py,
                    );
                    push_state(
                        &mut left,
                        item,
                        Side::Left,
                        s.bound,
                        SeqState {
                            sid: st.sid,
                            px: child_px as u32,
                            py: st.py,
                            attr,
                        },
                    );
                }
            }

            if want_right {
                scratch.clear();
                for is in &s.seq.itemsets()[px..] {
                    scratch.extend(is.items().filter(|&i| {
                        !i.is_placeholder()
                            && max_cons.is_none_or(|m| i > m)
                            && ant.binary_search(&i).is_err()
                            && !blocked_right(&i)
                    }));
                }
                scratch.sort_unstable();
                scratch.dedup();
                for &item in &scratch {
                    let occ = s.occurrences(item);
                    let last = occ[occ.len() - 1].0 as usize;
                    let child_py = py.min(last);
                    let attr = self.attr_of(
                        s,
                        ant.iter().copied(),
                        cons.iter().copied().chain(std::iter::once(item)),
                        px,
                        child_py,
                    );
                    push_state(
                        &mut right,
                        item,
                        Side::Right,
                        s.bound,
                        SeqState {
                            sid: st.sid,
                            px: st.px,
                            py: child_py as u32,
                            attr,
                        },
                    );
                }
            }
        }

        let discovered = left.len() + right.len();
        let keep = |c: &ExpansionCandidate| {
            filter.variant != PruningVariant::Full || c.bound_attr >= filter.min_attr
        };
        Candidates {
            left: left.into_values().filter(keep).collect(),
            right: right.into_values().filter(keep).collect(),
            discovered,
        }
    }

    /// Applies `cand` to `ctx`.
    pub fn expand(&self, ctx: &RuleContext, cand: &ExpansionCandidate) -> RuleContext {
        let ant = ctx.rule.antecedent().iter().copied();
        let cons = ctx.rule.consequent().iter().copied();
        let once = std::iter::once(cand.item);
        match cand.side {
            Side::Left => {
                let rule = Rule::new(ant.chain(once), cons)
                    .expect("candidate is not in the consequent")
                    .with_phase(Phase::LeftOnly);
                let tids = self.tidsets.get(&cand.item).map_or(&[][..], Vec::as_slice);
                RuleContext {
                    rule,
                    states: cand.states.clone(),
                    antecedent_sids: intersect_sorted(&ctx.antecedent_sids, tids),
                }
            }
            Side::Right => {
                let rule = Rule::new(ant, cons.chain(once))
                    .expect("candidate is not in the antecedent")
                    .with_phase(ctx.rule.phase());
                RuleContext {
                    rule,
                    states: cand.states.clone(),
                    antecedent_sids: ctx.antecedent_sids.clone(),
                }
            }
        }
    }
}

fn push_state(
    map: &mut BTreeMap<Item, ExpansionCandidate>,
    item: Item,
    side: Side,
    bound: Attr,
    state: SeqState,
) {
    let c = map.entry(item).or_insert_with(|| ExpansionCandidate {
        item,
        side,
        exact_attr: 0,
        bound_attr: 0,
        states: Vec::new(),
    });
    c.exact_attr += state.attr;
    c.bound_attr += bound;
    c.states.push(state);
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Mines every target rule of `query` in `db`.
pub fn mine_target_rules(
    db: &SequenceDatabase,
    query: &QueryRule,
    cfg: &MiningConfig,
) -> Result<MiningOutcome> {
    mine_target_rules_traced(db, query, cfg, &mut |_| {})
}

/// Like [`mine_target_rules`], reporting every expansion to `observer`.
pub fn mine_target_rules_traced(
    db: &SequenceDatabase,
    query: &QueryRule,
    cfg: &MiningConfig,
    observer: &mut dyn FnMut(&ExpansionTrace<'_>),
) -> Result<MiningOutcome> {
    cfg.validate()?;
    let modified = preprocess::preprocess(db, query, cfg.metric);
    let (pruned, report) =
        preprocess::prune_global_items(&modified, cfg.min_attr, cfg.metric, cfg.variant);
    let mut stats = MiningStats {
        sequences_kept: pruned.len() as u64,
        items_removed: report.removed.len() as u64,
        ..MiningStats::default()
    };

    let space = SearchSpace::new(&pruned, cfg.metric);
    let Some(first) = space.first_rule() else {
        return Ok(MiningOutcome {
            rules: Vec::new(),
            stats,
        });
    };
    let sim = SimilarityConfig::new(cfg.similarity, cfg.min_similarity, first.support())?;

    let mut miner = Miner {
        space: &space,
        cfg,
        query,
        sim,
        filter: CandidateFilter {
            min_attr: cfg.min_attr,
            variant: cfg.variant,
            report: Some(&report),
        },
        stats: &mut stats,
        out: Vec::new(),
        observer,
    };
    miner.run(first)?;
    let mut rules = std::mem::take(&mut miner.out);
    rules.sort();
    debug_assert!(
        rules
            .windows(2)
            .all(|w| (&w[0].antecedent, &w[0].consequent) != (&w[1].antecedent, &w[1].consequent)),
        "each rule is generated once"
    );
    Ok(MiningOutcome { rules, stats })
}

struct Miner<'s, 'a, 'o> {
    space: &'s SearchSpace<'a>,
    cfg: &'s MiningConfig,
    query: &'s QueryRule,
    sim: SimilarityConfig,
    filter: CandidateFilter<'s>,
    stats: &'s mut MiningStats,
    out: Vec<TargetRuleResult>,
    observer: &'o mut dyn FnMut(&ExpansionTrace<'_>),
}

impl Miner<'_, '_, '_> {
    fn run(&mut self, first: RuleContext) -> Result<()> {
        let has_x = !self.query.antecedent().is_empty();
        let has_y = !self.query.consequent().is_empty();
        if has_x && has_y {
            self.try_emit(&first)?;
        }
        let cands = self.candidates(&first, has_y, true);
        for c in &cands.left {
            let child = self.space.expand(&first, c);
            self.left_expand(&first, child)?;
        }
        for c in &cands.right {
            let child = self.space.expand(&first, c);
            self.right_expand(&first, child)?;
        }
        Ok(())
    }

    fn left_expand(&mut self, parent: &RuleContext, ctx: RuleContext) -> Result<()> {
        if !self.enter(Side::Left, parent, &ctx) {
            return Ok(());
        }
        if self.antecedent_concrete(&ctx) {
            self.try_emit(&ctx)?;
        }
        let cands = self.candidates(&ctx, true, false);
        for c in &cands.left {
            let child = self.space.expand(&ctx, c);
            self.left_expand(&ctx, child)?;
        }
        Ok(())
    }

    fn right_expand(&mut self, parent: &RuleContext, ctx: RuleContext) -> Result<()> {
        debug_assert_eq!(ctx.rule.phase(), Phase::RightOpen);
        if !self.enter(Side::Right, parent, &ctx) {
            return Ok(());
        }
        let consequent_nonempty = !ctx.rule.consequent().is_empty();
        if self.antecedent_concrete(&ctx) && self.consequent_concrete(&ctx) {
            self.try_emit(&ctx)?;
        }
        let cands = self.candidates(&ctx, consequent_nonempty, true);
        for c in &cands.left {
            let child = self.space.expand(&ctx, c);
            self.left_expand(&ctx, child)?;
        }
        for c in &cands.right {
            let child = self.space.expand(&ctx, c);
            self.right_expand(&ctx, child)?;
        }
        Ok(())
    }

    /// Counts the expansion and applies the similarity cut-off.
    fn enter(&mut self, side: Side, parent: &RuleContext, ctx: &RuleContext) -> bool {
        self.stats.expansions += 1;
        (self.observer)(&ExpansionTrace {
            side,
            parent: &parent.rule,
            child: &ctx.rule,
            parent_support: parent.support(),
            child_support: ctx.support(),
        });
        !similarity::prune_by_similarity(ctx.support(), &self.sim)
    }

    fn candidates(&mut self, ctx: &RuleContext, left: bool, right: bool) -> Candidates {
        let left = left && under_cap(self.side_size(ctx, Side::Left), self.cfg.max_antecedent);
        let right = right && under_cap(self.side_size(ctx, Side::Right), self.cfg.max_consequent);
        if !left && !right {
            return Candidates::default();
        }
        let cands = self.space.find_candidates(ctx, left, right, &self.filter);
        self.stats.candidates += cands.discovered as u64;
        cands
    }

    /// Size of a side in the original item space.
    fn side_size(&self, ctx: &RuleContext, side: Side) -> usize {
        let (items, query) = match side {
            Side::Left => (ctx.rule.antecedent(), self.query.antecedent()),
            Side::Right => (ctx.rule.consequent(), self.query.consequent()),
        };
        query.len() + items.iter().filter(|i| !i.is_placeholder()).count()
    }

    fn antecedent_concrete(&self, ctx: &RuleContext) -> bool {
        self.side_size(ctx, Side::Left) > 0
    }

    fn consequent_concrete(&self, ctx: &RuleContext) -> bool {
        self.side_size(ctx, Side::Right) > 0
    }

    fn try_emit(&mut self, ctx: &RuleContext) -> Result<()> {
        let attr = ctx.attr();
        let support = ctx.support();
        let ant_support = ctx.antecedent_support();
        if attr < self.cfg.min_attr
            || ant_support == 0
            || !ratio_at_least(support as u64, ant_support as u64, &self.cfg.min_conf)
        {
            return Ok(());
        }
        let sim = self.sim.measure(support)?;
        self.stats.rules_emitted += 1;
        self.out.push(TargetRuleResult {
            antecedent: restore(ctx.rule.antecedent(), self.query.antecedent()),
            consequent: restore(ctx.rule.consequent(), self.query.consequent()),
            attr,
            support,
            antecedent_support: ant_support,
            conf: Ratio::new(support as u64, ant_support as u64),
            sim,
        });
        Ok(())
    }
}

fn under_cap(size: usize, cap: Option<usize>) -> bool {
    cap.is_none_or(|c| size < c)
}

/// Replaces placeholders by the query side they stand for.
fn restore(items: &[Item], query_side: &[Item]) -> Vec<Item> {
    let mut out: Vec<Item> = items
        .iter()
        .copied()
        .filter(|i| !i.is_placeholder())
        .chain(query_side.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::example_db;

    const B: u32 = 2;
    const D: u32 = 4;
    const E: u32 = 5;

    fn query() -> QueryRule {
        QueryRule::from_ids(&[1], &[3, 7]).unwrap()
    }

    fn items(c: &[ExpansionCandidate]) -> Vec<Item> {
        c.iter().map(|c| c.item).collect()
    }

    fn filter(variant: PruningVariant, report: &BoundReport) -> CandidateFilter<'_> {
        CandidateFilter {
            min_attr: 2,
            variant,
            report: Some(report),
        }
    }

    #[test]
    fn first_rule_frequency() {
        let m = preprocess::preprocess(&example_db(), &query(), Metric::Frequency);
        let space = SearchSpace::new(&m, Metric::Frequency);
        let ftr = space.first_rule().unwrap();
        assert_eq!(ftr.rule_sids().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(ftr.antecedent_support(), 4);
        assert_eq!(ftr.attr(), 2);
        assert_eq!(ftr.confidence(), Some(Ratio::new(1, 2)));
        assert_eq!(
            ftr.positions(0),
            Some(KeyPositions {
                px: Some(2),
                py: Some(4)
            })
        );
    }

    #[test]
    fn first_rule_utility() {
        let m = preprocess::preprocess(&example_db(), &query(), Metric::Utility);
        let space = SearchSpace::new(&m, Metric::Utility);
        let ftr = space.first_rule().unwrap();
        assert_eq!(ftr.attr(), 14);
        assert_eq!(ftr.sequence_attr(0), Some(7));
    }

    #[test]
    fn first_rule_absent() {
        let q = QueryRule::from_ids(&[26], &[1]).unwrap();
        let m = preprocess::preprocess(&example_db(), &q, Metric::Frequency);
        assert!(m.is_empty());
        assert!(SearchSpace::new(&m, Metric::Frequency)
            .first_rule()
            .is_none());
    }

    #[test]
    fn candidates_full_and_filter() {
        let m = preprocess::preprocess(&example_db(), &query(), Metric::Frequency);
        let (pruned, report) =
            preprocess::prune_global_items(&m, 2, Metric::Frequency, PruningVariant::Full);
        let space = SearchSpace::new(&pruned, Metric::Frequency);
        let ftr = space.first_rule().unwrap();
        let c = space.find_candidates(&ftr, true, true, &filter(PruningVariant::Full, &report));
        assert_eq!(items(&c.left), vec![Item::new(B)]);
        assert_eq!(c.left[0].exact_attr, 2);
        assert_eq!(c.left[0].rule_sids().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(items(&c.right), vec![Item::new(E)]);
        assert_eq!(c.right[0].exact_attr, 2);

        let space = SearchSpace::new(&m, Metric::Frequency);
        let ftr = space.first_rule().unwrap();
        let empty = BoundReport::default();
        let c = space.find_candidates(&ftr, true, true, &filter(PruningVariant::Filter, &empty));
        let all = vec![Item::new(B), Item::new(D), Item::new(E)];
        assert_eq!(items(&c.left), all);
        assert_eq!(items(&c.right), all);
        // full variant on the unpruned database discards d and e on the left
        let c = space.find_candidates(&ftr, true, true, &filter(PruningVariant::Full, &empty));
        assert_eq!(items(&c.left), vec![Item::new(B)]);
        assert_eq!(items(&c.right), vec![Item::new(E)]);
    }

    #[test]
    fn expansions_recompute_positions_and_support() {
        let m = preprocess::preprocess(&example_db(), &query(), Metric::Frequency);
        let space = SearchSpace::new(&m, Metric::Frequency);
        let ftr = space.first_rule().unwrap();
        let empty = BoundReport::default();
        let c = space.find_candidates(&ftr, true, true, &filter(PruningVariant::Filter, &empty));
        let b = c.left.iter().find(|c| c.item == Item::new(B)).unwrap();
        let child = space.expand(&ftr, b);
        assert_eq!(child.rule().phase(), Phase::LeftOnly);
        assert_eq!(child.confidence(), Some(Ratio::from_integer(1)));
        // b follows iX in s1', so the antecedent now completes at itemset 3
        assert_eq!(child.positions(0).unwrap().px, Some(3));

        let e = c.right.iter().find(|c| c.item == Item::new(E)).unwrap();
        let child = space.expand(&ftr, e);
        assert_eq!(child.rule().phase(), Phase::RightOpen);
        assert_eq!(child.confidence(), Some(Ratio::new(1, 2)));
        assert_eq!(child.attr(), 2);
    }

    #[test]
    fn utility_split_scan_matches_model() {
        let db = example_db();
        let m = preprocess::preprocess(&db, &query(), Metric::Utility);
        let space = SearchSpace::new(&m, Metric::Utility);
        let rule = Rule::new([Item::IX, Item::new(B)], [Item::IY, Item::new(E)]).unwrap();
        for (s, idx) in m.database().sequences().iter().zip(&space.sequences) {
            let kp = crate::model::key_positions(s, &rule);
            if !kp.contains() {
                continue;
            }
            let fast = idx.utility(
                rule.antecedent().iter().copied(),
                rule.consequent().iter().copied(),
                kp.px.unwrap(),
                kp.py.unwrap(),
            );
            assert_eq!(fast, crate::model::attr_rule(&rule, s, Metric::Utility));
        }
    }

    #[test]
    fn config_validation() {
        let bad = MiningConfig::new(Metric::Frequency, 1, Ratio::new(3, 2));
        assert!(bad.validate().is_err());
        let bad = MiningConfig::new(Metric::Frequency, 1, Ratio::new(1, 2)).with_size_limits(0, 2);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn intersect() {
        assert_eq!(intersect_sorted(&[1, 3, 5, 7], &[2, 3, 7, 9]), vec![3, 7]);
        assert!(intersect_sorted(&[], &[1]).is_empty());
    }
}
