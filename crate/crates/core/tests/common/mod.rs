#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqrule::{Attr, Item, Itemset, QueryRule, Rule, Sequence, SequenceDatabase};

pub fn item(id: u32) -> Item {
    Item::new(id)
}

pub fn ids(items: &[Item]) -> Vec<u32> {
    items.iter().map(|i| i.id().expect("real item")).collect()
}

/// The running example, letters a..g as ids 1..7.
pub fn example_db() -> SequenceDatabase {
    SequenceDatabase::new(vec![
        Sequence::from_ids(&[
            &[(1, 2), (4, 1)],
            &[(1, 1), (2, 1), (5, 4)],
            &[(3, 4), (7, 1)],
        ])
        .unwrap(),
        Sequence::from_ids(&[&[(2, 1)], &[(1, 2)], &[(3, 4)], &[(4, 2), (5, 1), (7, 1)]]).unwrap(),
        Sequence::from_ids(&[&[(2, 1)], &[(4, 7)], &[(7, 2)]]).unwrap(),
        Sequence::from_ids(&[&[(5, 1)], &[(1, 2), (6, 2)]]).unwrap(),
        Sequence::from_ids(&[&[(4, 3)], &[(3, 1)], &[(1, 2)], &[(5, 1)]]).unwrap(),
    ])
}

pub fn itemset_strategy(items: u32, max_size: usize) -> impl Strategy<Value = Itemset> {
    prop::collection::btree_map(1..=items, 1..=5u64, 1..=max_size).prop_map(|m| {
        Itemset::new(m.into_iter().map(|(i, a)| (Item::new(i), a)).collect()).unwrap()
    })
}

pub fn sequence_strategy(items: u32) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(itemset_strategy(items, 3), 1..=6).prop_map(|v| Sequence::new(v).unwrap())
}

pub fn database_strategy(
    items: u32,
    max_sequences: usize,
) -> impl Strategy<Value = SequenceDatabase> {
    prop::collection::vec(sequence_strategy(items), 0..=max_sequences)
        .prop_map(SequenceDatabase::new)
}

/// Disjoint sides of at most two items each drawn from `1..=items`.
pub fn rule_sides_strategy(items: u32) -> impl Strategy<Value = (Vec<Item>, Vec<Item>)> {
    prop::collection::vec(0u8..4, items as usize).prop_map(|choices| {
        let mut ant = Vec::new();
        let mut cons = Vec::new();
        for (k, c) in choices.into_iter().enumerate() {
            let it = Item::new(k as u32 + 1);
            match c {
                1 if ant.len() < 2 => ant.push(it),
                2 if cons.len() < 2 => cons.push(it),
                _ => {}
            }
        }
        (ant, cons)
    })
}

pub fn query_strategy(items: u32) -> impl Strategy<Value = QueryRule> {
    rule_sides_strategy(items)
        .prop_filter("query needs an item", |(a, c)| {
            !a.is_empty() || !c.is_empty()
        })
        .prop_map(|(a, c)| QueryRule::new(a, c).unwrap())
}

pub fn rule_strategy(items: u32) -> impl Strategy<Value = Rule> {
    rule_sides_strategy(items)
        .prop_filter("rule needs both sides", |(a, c)| {
            !a.is_empty() && !c.is_empty()
        })
        .prop_map(|(a, c)| Rule::new(a, c).unwrap())
}

/// Random database drawn from `rng`, sized like the differential runs.
pub fn random_database(rng: &mut ChaCha8Rng, items: u32, max_sequences: usize) -> SequenceDatabase {
    let m = rng.gen_range(1..=max_sequences);
    let sequences = (0..m)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let itemsets = (0..n)
                .map(|_| {
                    let k = rng.gen_range(1..=3usize.min(items as usize));
                    let picked = rand::seq::index::sample(rng, items as usize, k);
                    let entries: Vec<(Item, Attr)> = picked
                        .into_iter()
                        .map(|i| (Item::new(i as u32 + 1), rng.gen_range(1..=5)))
                        .collect();
                    Itemset::new(entries).unwrap()
                })
                .collect();
            Sequence::new(itemsets).unwrap()
        })
        .collect();
    SequenceDatabase::new(sequences)
}

/// Random query over the database's universe, side sizes at most two.
pub fn random_query(rng: &mut ChaCha8Rng, db: &SequenceDatabase) -> Option<QueryRule> {
    let universe: Vec<Item> = db.item_universe().iter().copied().collect();
    if universe.is_empty() {
        return None;
    }
    loop {
        let mut ant = Vec::new();
        let mut cons = Vec::new();
        for &i in &universe {
            match rng.gen_range(0..universe.len() + 2) {
                0 if ant.len() < 2 => ant.push(i),
                1 if cons.len() < 2 => cons.push(i),
                _ => {}
            }
        }
        if !ant.is_empty() || !cons.is_empty() {
            return Some(QueryRule::new(ant, cons).unwrap());
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
