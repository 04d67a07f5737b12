//! Query-specific database reduction.
//!
//! Sequences that cannot contain the query antecedent are dropped, the
//! survivors are rewritten so that the placeholder items [`Item::IX`] and
//! [`Item::IY`] summarise the query sides, and items whose upper bounds fall
//! below the attribute threshold are removed.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{
    key_positions, key_positions_of, rule_instance_sets, Attr, Item, Itemset, KeyPositions, Metric,
    QueryRule, Rule, Sequence, SequenceDatabase,
};

/// Which global and candidate-level pruning the miner applies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PruningVariant {
    /// Database rewriting only; no bound-based pruning.
    Filter,
    /// Removes items whose basic bound is below the threshold.
    Basic,
    /// Basic removal plus the left/right targeted bounds.
    #[default]
    Full,
}

impl PruningVariant {
    pub const ALL: [PruningVariant; 3] = [
        PruningVariant::Filter,
        PruningVariant::Basic,
        PruningVariant::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PruningVariant::Filter => "filter",
            PruningVariant::Basic => "basic",
            PruningVariant::Full => "full",
        }
    }
}

/// The rewritten database for one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedDatabase {
    database: SequenceDatabase,
    key_positions: Vec<KeyPositions>,
    antecedent_only: BTreeSet<usize>,
    query_support: usize,
    query: QueryRule,
}

impl ModifiedDatabase {
    pub fn database(&self) -> &SequenceDatabase {
        &self.database
    }

    /// Key positions of the placeholder rule in each sequence.
    pub fn key_positions(&self) -> &[KeyPositions] {
        &self.key_positions
    }

    /// Ids of sequences that contain the query antecedent but not the rule.
    pub fn antecedent_only(&self) -> &BTreeSet<usize> {
        &self.antecedent_only
    }

    /// Number of sequences containing the placeholder rule.
    pub fn query_support(&self) -> usize {
        self.query_support
    }

    pub fn query(&self) -> &QueryRule {
        &self.query
    }

    /// `iX -> iY`, or `iX -> {}` when the query consequent is empty.
    pub fn placeholder_rule(&self) -> Rule {
        placeholder_rule(&self.query)
    }

    pub fn len(&self) -> usize {
        self.database.len()
    }

    pub fn is_empty(&self) -> bool {
        self.database.is_empty()
    }

    fn from_parts(
        database: SequenceDatabase,
        query: QueryRule,
        antecedent_only: BTreeSet<usize>,
    ) -> ModifiedDatabase {
        let rule = placeholder_rule(&query);
        let key_positions: Vec<KeyPositions> = database
            .sequences()
            .iter()
            .map(|s| key_positions(s, &rule))
            .collect();
        let query_support = key_positions.iter().filter(|kp| kp.contains()).count();
        ModifiedDatabase {
            database,
            key_positions,
            antecedent_only,
            query_support,
            query,
        }
    }
}

fn placeholder_rule(query: &QueryRule) -> Rule {
    let cons: &[Item] = if query.consequent().is_empty() {
        &[]
    } else {
        &[Item::IY]
    };
    Rule::new([Item::IX], cons.iter().copied()).expect("placeholders are distinct")
}

/// Keeps the sequences containing `qX -> {}` and records the query's key
/// positions in each of them.
pub fn remove_invalid_sequences(
    db: &SequenceDatabase,
    query: &QueryRule,
) -> (SequenceDatabase, Vec<KeyPositions>) {
    let mut kept = Vec::new();
    let mut table = Vec::new();
    for s in db.sequences() {
        if s.contains_all(query.antecedent()) {
            table.push(key_positions_of(s, query.antecedent(), query.consequent()));
            kept.push(s.clone());
        }
    }
    (SequenceDatabase::new(kept), table)
}

/// Rewrites each kept sequence with placeholder items and strips the query
/// items. `table` holds the query's key positions per kept sequence.
pub fn modify_sequences(
    kept: &SequenceDatabase,
    table: &[KeyPositions],
    query: &QueryRule,
    metric: Metric,
) -> ModifiedDatabase {
    assert_eq!(
        kept.len(),
        table.len(),
        "one key-position entry per sequence"
    );
    let mut sequences = Vec::with_capacity(kept.len());
    let mut antecedent_only = BTreeSet::new();
    for (sid, (s, kp)) in kept.sequences().iter().zip(table).enumerate() {
        let modified = modify_sequence(s, *kp, query, metric);
        if !kp.contains() {
            antecedent_only.insert(sid);
        }
        sequences.push(modified);
    }
    ModifiedDatabase::from_parts(
        SequenceDatabase::new(sequences),
        query.clone(),
        antecedent_only,
    )
}

fn modify_sequence(s: &Sequence, kp: KeyPositions, query: &QueryRule, metric: Metric) -> Sequence {
    let n = s.len();
    // slots[k] holds the itemsets inserted between original positions k and k + 1
    let mut slots: Vec<Vec<(Item, Attr)>> = vec![Vec::new(); n + 1];
    let placeholder_attr = |value: Attr| match metric {
        Metric::Frequency => 1,
        Metric::Utility => value,
    };

    if kp.contains() {
        let px = kp.px.expect("contained");
        let py = kp.py.expect("contained");
        let ris = rule_instance_sets(s, &query.to_rule()).expect("contained");
        // One instance (always the case that matters under frequency) needs a
        // single placeholder per side; otherwise every instance gets one.
        let single = metric == Metric::Frequency || (ris.left.len() == 1 && ris.right.len() == 1);
        let (lefts, rights) = if single {
            (vec![px], vec![py])
        } else {
            (ris.left, ris.right)
        };
        for &i in &lefts {
            let v: Attr = query.antecedent().iter().map(|&x| s.prefix_max(x, i)).sum();
            slots[i].push((Item::IX, placeholder_attr(v)));
        }
        if !query.consequent().is_empty() {
            for &j in &rights {
                let v: Attr = query.consequent().iter().map(|&y| s.suffix_max(y, j)).sum();
                slots[j - 1].push((Item::IY, placeholder_attr(v)));
            }
        }
    } else {
        slots[n].push((Item::IX, placeholder_attr(0)));
    }

    let mut itemsets = Vec::with_capacity(n + 2);
    for (k, slot) in slots.into_iter().enumerate() {
        if k >= 1 {
            let kept: Vec<(Item, Attr)> = s
                .at(k)
                .entries()
                .iter()
                .copied()
                .filter(|&(i, _)| !query.contains_item(i))
                .map(|(i, a)| (i, placeholder_attr(a)))
                .collect();
            if !kept.is_empty() {
                itemsets.push(Itemset::from_sorted_unchecked(kept));
            }
        }
        // iX is pushed before iY within a slot
        for entry in slot {
            itemsets.push(Itemset::from_sorted_unchecked(vec![entry]));
        }
    }
    Sequence::new(itemsets).expect("a placeholder itemset is always present")
}

/// Drops sequences that cannot hold a target rule, then rewrites the rest with placeholders.
pub fn preprocess(db: &SequenceDatabase, query: &QueryRule, metric: Metric) -> ModifiedDatabase {
    let (kept, table) = remove_invalid_sequences(db, query);
    modify_sequences(&kept, &table, query, metric)
}

/// Basic upper bound of `item` in one sequence.
pub fn ub(item: Item, s: &Sequence, metric: Metric) -> Attr {
    if !s.contains_item(item) {
        return 0;
    }
    match metric {
        Metric::Frequency => 1,
        Metric::Utility => s.total_attr(),
    }
}

/// Left-expansion bound: basic bounds summed over rule-containing sequences
/// where `item` occurs before the last `iY`.
pub fn tub_left(item: Item, modified: &ModifiedDatabase, metric: Metric) -> Attr {
    modified
        .database
        .sequences()
        .iter()
        .zip(&modified.key_positions)
        .filter(|(s, kp)| {
            kp.contains()
                && s.first_occurrence(item)
                    .is_some_and(|p| p < kp.py.expect("contained"))
        })
        .map(|(s, _)| ub(item, s, metric))
        .sum()
}

/// Right-expansion bound: basic bounds summed over rule-containing sequences
/// where `item` occurs after the first `iX`.
pub fn tub_right(item: Item, modified: &ModifiedDatabase, metric: Metric) -> Attr {
    modified
        .database
        .sequences()
        .iter()
        .zip(&modified.key_positions)
        .filter(|(s, kp)| {
            kp.contains()
                && s.last_occurrence(item)
                    .is_some_and(|p| p > kp.px.expect("contained"))
        })
        .map(|(s, _)| ub(item, s, metric))
        .sum()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ItemBounds {
    pub ub: Attr,
    pub tub_left: Attr,
    pub tub_right: Attr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundReport {
    pub per_item: BTreeMap<Item, ItemBounds>,
    pub removed: BTreeSet<Item>,
    /// Items that may not extend an antecedent.
    pub left_blocked: BTreeSet<Item>,
    /// Items that may not extend a consequent.
    pub right_blocked: BTreeSet<Item>,
}

/// Computes every item's bounds in a single pass over the database.
pub fn compute_bounds(modified: &ModifiedDatabase, metric: Metric) -> BTreeMap<Item, ItemBounds> {
    let mut per_item: BTreeMap<Item, ItemBounds> = BTreeMap::new();
    for (s, kp) in modified
        .database
        .sequences()
        .iter()
        .zip(&modified.key_positions)
    {
        let total = match metric {
            Metric::Frequency => 1,
            Metric::Utility => s.total_attr(),
        };
        // item -> (first, last)
        let mut span: BTreeMap<Item, (usize, usize)> = BTreeMap::new();
        for (idx, itemset) in s.itemsets().iter().enumerate() {
            for item in itemset.items().filter(|i| !i.is_placeholder()) {
                span.entry(item)
                    .and_modify(|e| e.1 = idx + 1)
                    .or_insert((idx + 1, idx + 1));
            }
        }
        let contained = kp.contains();
        for (item, (first, last)) in span {
            let b = per_item.entry(item).or_default();
            b.ub += total;
            if contained {
                if first < kp.py.expect("contained") {
                    b.tub_left += total;
                }
                if last > kp.px.expect("contained") {
                    b.tub_right += total;
                }
            }
        }
    }
    per_item
}

/// Removes globally unpromising items according to `variant`.
pub fn prune_global_items(
    modified: &ModifiedDatabase,
    min_attr: Attr,
    metric: Metric,
    variant: PruningVariant,
) -> (ModifiedDatabase, BoundReport) {
    let per_item = compute_bounds(modified, metric);
    let mut report = BoundReport::default();
    for (&item, b) in &per_item {
        match variant {
            PruningVariant::Filter => {}
            PruningVariant::Basic => {
                if b.ub < min_attr {
                    report.removed.insert(item);
                }
            }
            PruningVariant::Full => {
                let left_low = b.tub_left < min_attr;
                let right_low = b.tub_right < min_attr;
                if b.ub < min_attr || (left_low && right_low) {
                    report.removed.insert(item);
                } else if left_low {
                    report.left_blocked.insert(item);
                } else if right_low {
                    report.right_blocked.insert(item);
                }
            }
        }
    }
    report.per_item = per_item;

    if report.removed.is_empty() {
        return (modified.clone(), report);
    }
    let sequences = modified
        .database
        .sequences()
        .iter()
        .map(|s| {
            let itemsets = s
                .itemsets()
                .iter()
                .filter_map(|is| {
                    let kept: Vec<_> = is
                        .entries()
                        .iter()
                        .copied()
                        .filter(|(i, _)| !report.removed.contains(i))
                        .collect();
                    (!kept.is_empty()).then(|| Itemset::from_sorted_unchecked(kept))
                })
                .collect();
            Sequence::new(itemsets).expect("placeholders are never removed")
        })
        .collect();
    let pruned = ModifiedDatabase::from_parts(
        SequenceDatabase::new(sequences),
        modified.query.clone(),
        modified.antecedent_only.clone(),
    );
    (pruned, report)
}
