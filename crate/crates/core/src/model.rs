//! Sequence databases, rules and their containment semantics.
//!
//! Itemset positions are 1-based throughout this crate. Two sentinels keep
//! the empty-side conventions uniform: an empty antecedent completes at
//! position `0` and an empty consequent starts at position `n + 1`, so a
//! sequence contains a rule exactly when both key positions exist and
//! `s_px < s_py`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Attribute values (frequency indicator or utility) are integral.
pub type Attr = u64;

/// An item. Dataset ids order ascending; the two placeholder items used by
/// the modified database sort strictly below every dataset id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(u64);

impl Item {
    /// Stands for the query antecedent in a modified database.
    pub const IX: Item = Item(0);
    /// Stands for the query consequent in a modified database.
    pub const IY: Item = Item(1);

    pub const fn new(id: u32) -> Item {
        Item(id as u64 + 2)
    }

    /// The dataset id, or `None` for a placeholder.
    pub fn id(self) -> Option<u32> {
        self.0.checked_sub(2).map(|v| v as u32)
    }

    pub fn is_placeholder(self) -> bool {
        self.0 < 2
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Item::IX => f.write_str("iX"),
            Item::IY => f.write_str("iY"),
            other => write!(f, "{}", other.0 - 2),
        }
    }
}

impl fmt::Debug for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Frequency,
    Utility,
}

/// Items with attribute values, ascending by item, no duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itemset {
    entries: Vec<(Item, Attr)>,
}

impl Itemset {
    pub fn new(mut entries: Vec<(Item, Attr)>) -> Result<Itemset> {
        if entries.is_empty() {
            return Err(Error::InvalidSequence("empty itemset".into()));
        }
        entries.sort_by_key(|&(item, _)| item);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSequence(format!(
                "duplicate item {} in itemset",
                w[0].0
            )));
        }
        Ok(Itemset { entries })
    }

    /// Builds an itemset from `(id, attr)` pairs.
    pub fn from_ids(pairs: &[(u32, Attr)]) -> Result<Itemset> {
        Itemset::new(pairs.iter().map(|&(id, a)| (Item::new(id), a)).collect())
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(Item, Attr)>) -> Itemset {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Itemset { entries }
    }

    pub fn entries(&self) -> &[(Item, Attr)] {
        &self.entries
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn attr_of(&self, item: Item) -> Option<Attr> {
        self.entries
            .binary_search_by_key(&item, |&(i, _)| i)
            .ok()
            .map(|idx| self.entries[idx].1)
    }

    pub fn contains(&self, item: Item) -> bool {
        self.attr_of(item).is_some()
    }

    pub fn total(&self) -> Attr {
        self.entries.iter().map(|&(_, a)| a).sum()
    }
}

/// An ordered, nonempty list of nonempty itemsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence {
    itemsets: Vec<Itemset>,
}

impl Sequence {
    pub fn new(itemsets: Vec<Itemset>) -> Result<Sequence> {
        if itemsets.is_empty() {
            return Err(Error::InvalidSequence("sequence has no itemsets".into()));
        }
        if itemsets.iter().any(Itemset::is_empty) {
            return Err(Error::InvalidSequence("empty itemset".into()));
        }
        Ok(Sequence { itemsets })
    }

    /// Builds a sequence from per-itemset `(id, attr)` pairs.
    pub fn from_ids(itemsets: &[&[(u32, Attr)]]) -> Result<Sequence> {
        Sequence::new(
            itemsets
                .iter()
                .map(|pairs| Itemset::from_ids(pairs))
                .collect::<Result<_>>()?,
        )
    }

    pub fn itemsets(&self) -> &[Itemset] {
        &self.itemsets
    }

    /// Number of itemsets `n`.
    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    /// The itemset at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> &Itemset {
        &self.itemsets[pos - 1]
    }

    /// Sum of every attribute value in the sequence.
    pub fn total_attr(&self) -> Attr {
        self.itemsets.iter().map(Itemset::total).sum()
    }

    pub fn contains_item(&self, item: Item) -> bool {
        self.itemsets.iter().any(|is| is.contains(item))
    }

    /// True when every item of `items` occurs somewhere in the sequence.
    pub fn contains_all(&self, items: &[Item]) -> bool {
        items.iter().all(|&i| self.contains_item(i))
    }

    pub fn first_occurrence(&self, item: Item) -> Option<usize> {
        self.itemsets
            .iter()
            .position(|is| is.contains(item))
            .map(|p| p + 1)
    }

    pub fn last_occurrence(&self, item: Item) -> Option<usize> {
        self.itemsets
            .iter()
            .rposition(|is| is.contains(item))
            .map(|p| p + 1)
    }

    /// Max attribute of `item` over itemsets `1..=upto` (0 when absent).
    pub fn prefix_max(&self, item: Item, upto: usize) -> Attr {
        self.itemsets[..upto.min(self.len())]
            .iter()
            .filter_map(|is| is.attr_of(item))
            .max()
            .unwrap_or(0)
    }

    /// Max attribute of `item` over itemsets `from..=n` (0 when absent).
    pub fn suffix_max(&self, item: Item, from: usize) -> Attr {
        let start = from.max(1) - 1;
        if start >= self.len() {
            return 0;
        }
        self.itemsets[start..]
            .iter()
            .filter_map(|is| is.attr_of(item))
            .max()
            .unwrap_or(0)
    }

    pub fn items(&self) -> BTreeSet<Item> {
        self.itemsets.iter().flat_map(Itemset::items).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceDatabase {
    sequences: Vec<Sequence>,
    universe: BTreeSet<Item>,
}

impl SequenceDatabase {
    pub fn new(sequences: Vec<Sequence>) -> SequenceDatabase {
        let universe = sequences.iter().flat_map(Sequence::items).collect();
        SequenceDatabase {
            sequences,
            universe,
        }
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn item_universe(&self) -> &BTreeSet<Item> {
        &self.universe
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Right-expansion is still legal.
    RightOpen,
    /// A left-expansion has been applied; only left-expansions may follow.
    LeftOnly,
}

/// A sequential rule `X -> Y` over disjoint item sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    antecedent: Vec<Item>,
    consequent: Vec<Item>,
    phase: Phase,
}

fn sorted_unique(items: impl IntoIterator<Item = Item>) -> Vec<Item> {
    let mut v: Vec<Item> = items.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn first_overlap(a: &[Item], b: &[Item]) -> Option<Item> {
    a.iter().copied().find(|i| b.binary_search(i).is_ok())
}

impl Rule {
    pub fn new(
        antecedent: impl IntoIterator<Item = Item>,
        consequent: impl IntoIterator<Item = Item>,
    ) -> Result<Rule> {
        let antecedent = sorted_unique(antecedent);
        let consequent = sorted_unique(consequent);
        if let Some(item) = first_overlap(&antecedent, &consequent) {
            return Err(Error::InvalidRule(item));
        }
        Ok(Rule {
            antecedent,
            consequent,
            phase: Phase::RightOpen,
        })
    }

    /// Builds a rule from dataset ids.
    pub fn from_ids(antecedent: &[u32], consequent: &[u32]) -> Result<Rule> {
        Rule::new(
            antecedent.iter().map(|&i| Item::new(i)),
            consequent.iter().map(|&i| Item::new(i)),
        )
    }

    pub fn with_phase(mut self, phase: Phase) -> Rule {
        self.phase = phase;
        self
    }

    pub fn antecedent(&self) -> &[Item] {
        &self.antecedent
    }

    pub fn consequent(&self) -> &[Item] {
        &self.consequent
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// `self` includes `other`: both sides are supersets.
    pub fn includes(&self, other: &Rule) -> bool {
        other
            .antecedent
            .iter()
            .all(|i| self.antecedent.binary_search(i).is_ok())
            && other
                .consequent
                .iter()
                .all(|i| self.consequent.binary_search(i).is_ok())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |items: &[Item]| {
            items
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{{{}}} -> {{{}}}",
            side(&self.antecedent),
            side(&self.consequent)
        )
    }
}

/// The user's query `qX -> qY`: disjoint, not both empty, no placeholders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QueryRule {
    antecedent: Vec<Item>,
    consequent: Vec<Item>,
}

impl QueryRule {
    pub fn new(
        antecedent: impl IntoIterator<Item = Item>,
        consequent: impl IntoIterator<Item = Item>,
    ) -> Result<QueryRule> {
        let antecedent = sorted_unique(antecedent);
        let consequent = sorted_unique(consequent);
        if antecedent.is_empty() && consequent.is_empty() {
            return Err(Error::InvalidQuery("both sides are empty".into()));
        }
        if let Some(item) = first_overlap(&antecedent, &consequent) {
            return Err(Error::InvalidQuery(format!(
                "item {item} occurs on both sides"
            )));
        }
        if antecedent
            .iter()
            .chain(&consequent)
            .any(|i| i.is_placeholder())
        {
            return Err(Error::InvalidQuery("placeholder items are reserved".into()));
        }
        Ok(QueryRule {
            antecedent,
            consequent,
        })
    }

    pub fn from_ids(antecedent: &[u32], consequent: &[u32]) -> Result<QueryRule> {
        QueryRule::new(
            antecedent.iter().map(|&i| Item::new(i)),
            consequent.iter().map(|&i| Item::new(i)),
        )
    }

    pub fn antecedent(&self) -> &[Item] {
        &self.antecedent
    }

    pub fn consequent(&self) -> &[Item] {
        &self.consequent
    }

    pub fn contains_item(&self, item: Item) -> bool {
        self.antecedent.binary_search(&item).is_ok() || self.consequent.binary_search(&item).is_ok()
    }

    pub fn to_rule(&self) -> Rule {
        Rule {
            antecedent: self.antecedent.clone(),
            consequent: self.consequent.clone(),
            phase: Phase::RightOpen,
        }
    }
}

/// `s_px`: earliest position completing the antecedent; `s_py`: latest
/// position from which the consequent is complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KeyPositions {
    pub px: Option<usize>,
    pub py: Option<usize>,
}

impl KeyPositions {
    pub fn contains(&self) -> bool {
        matches!((self.px, self.py), (Some(px), Some(py)) if px < py)
    }
}

/// Alternative antecedent-complete (`left`) and consequent-start (`right`)
/// positions of a contained rule, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstanceSets {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn key_positions(s: &Sequence, rule: &Rule) -> KeyPositions {
    key_positions_of(s, rule.antecedent(), rule.consequent())
}

pub(crate) fn key_positions_of(s: &Sequence, ant: &[Item], cons: &[Item]) -> KeyPositions {
    let px = ant
        .iter()
        .try_fold(0, |acc, &i| s.first_occurrence(i).map(|p| acc.max(p)));
    let py = cons.iter().try_fold(s.len() + 1, |acc, &i| {
        s.last_occurrence(i).map(|p| acc.min(p))
    });
    KeyPositions { px, py }
}

pub fn contains_rule(s: &Sequence, rule: &Rule) -> bool {
    key_positions(s, rule).contains()
}

pub fn rule_instance_sets(s: &Sequence, rule: &Rule) -> Result<RuleInstanceSets> {
    let kp = key_positions(s, rule);
    let (px, py) = match (kp.px, kp.py) {
        (Some(px), Some(py)) if px < py => (px, py),
        _ => return Err(Error::NotContained),
    };
    let touches = |pos: usize, side: &[Item]| side.iter().any(|&i| s.at(pos).contains(i));
    let mut left = vec![px];
    left.extend((px + 1..=s.len()).filter(|&p| touches(p, rule.antecedent())));
    let mut right: Vec<usize> = (1..py).filter(|&p| touches(p, rule.consequent())).collect();
    right.push(py);
    Ok(RuleInstanceSets { left, right })
}

pub fn attr_item(item: Item, s: &Sequence, metric: Metric) -> Attr {
    match metric {
        Metric::Frequency => s.contains_item(item) as Attr,
        Metric::Utility => s.prefix_max(item, s.len()),
    }
}

/// Attribute of `rule` for the instance whose antecedent ends at `left` and
/// consequent starts at `right`.
pub fn attr_rule_at(
    rule: &Rule,
    s: &Sequence,
    left: usize,
    right: usize,
    metric: Metric,
) -> Result<Attr> {
    if left >= right {
        return Err(Error::InvalidInstance { left, right });
    }
    Ok(match metric {
        Metric::Frequency => 1,
        Metric::Utility => {
            rule.antecedent()
                .iter()
                .map(|&i| s.prefix_max(i, left))
                .sum::<Attr>()
                + rule
                    .consequent()
                    .iter()
                    .map(|&j| s.suffix_max(j, right))
                    .sum::<Attr>()
        }
    })
}

/// Attribute of `rule` in one sequence; 0 when not contained.
pub fn attr_rule(rule: &Rule, s: &Sequence, metric: Metric) -> Attr {
    let Ok(ris) = rule_instance_sets(s, rule) else {
        return 0;
    };
    match metric {
        Metric::Frequency => 1,
        Metric::Utility => {
            let mut best = 0;
            for &l in &ris.left {
                for &r in ris.right.iter().filter(|&&r| r > l) {
                    let v = attr_rule_at(rule, s, l, r, metric).expect("left < right");
                    best = best.max(v);
                }
            }
            best
        }
    }
}

pub fn attr_rule_db(rule: &Rule, db: &SequenceDatabase, metric: Metric) -> Attr {
    db.sequences()
        .iter()
        .map(|s| attr_rule(rule, s, metric))
        .sum()
}

/// Number of sequences whose items include every item of `items`.
pub fn support_itemset(items: &[Item], db: &SequenceDatabase) -> usize {
    db.sequences()
        .iter()
        .filter(|s| s.contains_all(items))
        .count()
}

pub fn support_rule(rule: &Rule, db: &SequenceDatabase) -> usize {
    db.sequences()
        .iter()
        .filter(|s| contains_rule(s, rule))
        .count()
}

pub fn confidence(rule: &Rule, db: &SequenceDatabase) -> Result<Ratio> {
    let ant = support_itemset(rule.antecedent(), db);
    if ant == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(Ratio::new(support_rule(rule, db) as u64, ant as u64))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    // a=1 b=2 c=3 d=4 e=5 f=6 g=7
    pub(crate) fn example_db() -> SequenceDatabase {
        SequenceDatabase::new(vec![
            Sequence::from_ids(&[
                &[(1, 2), (4, 1)],
                &[(1, 1), (2, 1), (5, 4)],
                &[(3, 4), (7, 1)],
            ])
            .unwrap(),
            Sequence::from_ids(&[&[(2, 1)], &[(1, 2)], &[(3, 4)], &[(4, 2), (5, 1), (7, 1)]])
                .unwrap(),
            Sequence::from_ids(&[&[(2, 1)], &[(4, 7)], &[(7, 2)]]).unwrap(),
            Sequence::from_ids(&[&[(5, 1)], &[(1, 2), (6, 2)]]).unwrap(),
            Sequence::from_ids(&[&[(4, 3)], &[(3, 1)], &[(1, 2)], &[(5, 1)]]).unwrap(),
        ])
    }

    fn seq(db: &SequenceDatabase, k: usize) -> &Sequence {
        &db.sequences()[k - 1]
    }

    fn a_to_cg() -> Rule {
        Rule::from_ids(&[1], &[3, 7]).unwrap()
    }

    #[test]
    fn containment_running_example() {
        let db = example_db();
        let a_c = Rule::from_ids(&[1], &[3]).unwrap();
        assert!(contains_rule(seq(&db, 1), &a_c));
        assert!(contains_rule(seq(&db, 2), &a_c));
        assert!(!contains_rule(seq(&db, 5), &a_c));
        assert_eq!(
            Rule::from_ids(&[1], &[1]).unwrap_err(),
            Error::InvalidRule(Item::new(1))
        );
    }

    #[test]
    fn empty_side_conventions() {
        let db = example_db();
        let s5 = seq(&db, 5);
        let a_only = Rule::from_ids(&[1], &[]).unwrap();
        // a occurs in the last-but-one itemset; no consequent needed
        assert!(contains_rule(s5, &a_only));
        let a_last = Rule::from_ids(&[5], &[]).unwrap();
        assert!(contains_rule(s5, &a_last));
        let to_d = Rule::from_ids(&[], &[4]).unwrap();
        assert!(contains_rule(s5, &to_d));
        assert_eq!(
            key_positions(s5, &to_d),
            KeyPositions {
                px: Some(0),
                py: Some(1)
            }
        );
        assert!(!contains_rule(s5, &Rule::from_ids(&[], &[7]).unwrap()));
    }

    #[test]
    fn key_positions_running_example() {
        let db = example_db();
        let r = a_to_cg();
        assert_eq!(
            key_positions(seq(&db, 1), &r),
            KeyPositions {
                px: Some(1),
                py: Some(3)
            }
        );
        assert_eq!(
            key_positions(seq(&db, 2), &r),
            KeyPositions {
                px: Some(2),
                py: Some(3)
            }
        );
        assert_eq!(
            key_positions(seq(&db, 4), &r),
            KeyPositions {
                px: Some(2),
                py: None
            }
        );
    }

    #[test]
    fn instance_sets() {
        let db = example_db();
        let r = a_to_cg();
        let s1 = rule_instance_sets(seq(&db, 1), &r).unwrap();
        assert_eq!((s1.left, s1.right), (vec![1, 2], vec![3]));
        let s2 = rule_instance_sets(seq(&db, 2), &r).unwrap();
        assert_eq!((s2.left, s2.right), (vec![2], vec![3]));
        assert_eq!(
            rule_instance_sets(seq(&db, 4), &r).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn attributes() {
        let db = example_db();
        let s1 = seq(&db, 1);
        let a = Item::new(1);
        assert_eq!(attr_item(a, s1, Metric::Utility), 2);
        assert_eq!(attr_item(a, s1, Metric::Frequency), 1);
        assert_eq!(attr_item(Item::new(6), s1, Metric::Utility), 0);

        let r = a_to_cg();
        assert_eq!(attr_rule_at(&r, s1, 1, 3, Metric::Utility).unwrap(), 7);
        assert_eq!(attr_rule_at(&r, s1, 2, 3, Metric::Utility).unwrap(), 7);
        assert_eq!(attr_rule_at(&r, s1, 2, 3, Metric::Frequency).unwrap(), 1);
        assert_eq!(
            attr_rule_at(&r, s1, 3, 3, Metric::Utility).unwrap_err(),
            Error::InvalidInstance { left: 3, right: 3 }
        );

        assert_eq!(attr_rule_db(&r, &db, Metric::Frequency), 2);
        assert_eq!(attr_rule_db(&r, &db, Metric::Utility), 14);
        assert_eq!(attr_rule(&r, seq(&db, 5), Metric::Utility), 0);
        assert_eq!(seq(&db, 1).total_attr(), 14);
    }

    #[test]
    fn support_and_confidence() {
        let db = example_db();
        assert_eq!(support_itemset(&[Item::new(1)], &db), 4);
        assert_eq!(support_rule(&a_to_cg(), &db), 2);
        assert_eq!(support_itemset(&[Item::new(26)], &db), 0);

        assert_eq!(confidence(&a_to_cg(), &db).unwrap(), Ratio::new(1, 2));
        let a_z = Rule::from_ids(&[1], &[26]).unwrap();
        assert_eq!(confidence(&a_z, &db).unwrap(), Ratio::from_integer(0));
        let z_a = Rule::from_ids(&[26], &[1]).unwrap();
        assert_eq!(
            confidence(&z_a, &db).unwrap_err(),
            Error::UndefinedConfidence
        );
    }

    #[test]
    fn query_rule_validation() {
        assert!(QueryRule::from_ids(&[], &[]).is_err());
        assert!(QueryRule::from_ids(&[1], &[1]).is_err());
        assert!(QueryRule::new([Item::IX], []).is_err());
        let q = QueryRule::from_ids(&[], &[7]).unwrap();
        assert!(q.antecedent().is_empty());
    }

    #[test]
    fn itemset_rejects_duplicates() {
        assert!(Itemset::from_ids(&[(1, 1), (1, 2)]).is_err());
        assert!(Sequence::from_ids(&[]).is_err());
    }

    #[test]
    fn placeholders_sort_first() {
        assert!(Item::IX < Item::IY);
        assert!(Item::IY < Item::new(0));
        assert_eq!(Item::new(0).id(), Some(0));
        assert_eq!(Item::IX.id(), None);
        assert_eq!(Item::new(7).to_string(), "7");
    }
}
