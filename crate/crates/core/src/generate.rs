//! Seeded synthetic sequence databases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Attr, Item, Itemset, Sequence, SequenceDatabase};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub sequences: usize,
    /// Item ids are drawn from `1..=items`.
    pub items: u32,
    pub max_itemsets: usize,
    pub max_itemset_size: usize,
    pub min_attr: Attr,
    pub max_attr: Attr,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            sequences: 100,
            items: 10,
            max_itemsets: 6,
            max_itemset_size: 3,
            min_attr: 1,
            max_attr: 10,
        }
    }
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<()> {
        if self.items == 0 || self.max_itemsets == 0 || self.max_itemset_size == 0 {
            return Err(Error::Config("generator sizes must be positive".into()));
        }
        if self.min_attr > self.max_attr {
            return Err(Error::Config("attribute range is empty".into()));
        }
        Ok(())
    }
}

/// Builds a database deterministically from `seed`.
pub fn generate_database(params: &GeneratorParams, seed: u64) -> Result<SequenceDatabase> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size_cap = params.max_itemset_size.min(params.items as usize);
    let mut sequences = Vec::with_capacity(params.sequences);
    for _ in 0..params.sequences {
        let len = rng.gen_range(1..=params.max_itemsets);
        let mut itemsets = Vec::with_capacity(len);
        for _ in 0..len {
            let size = rng.gen_range(1..=size_cap);
            let ids = rand::seq::index::sample(&mut rng, params.items as usize, size);
            let entries: Vec<(Item, Attr)> = ids
                .into_iter()
                .map(|i| {
                    let attr = rng.gen_range(params.min_attr..=params.max_attr);
                    (Item::new(i as u32 + 1), attr)
                })
                .collect();
            itemsets.push(Itemset::new(entries)?);
        }
        sequences.push(Sequence::new(itemsets)?);
    }
    Ok(SequenceDatabase::new(sequences))
}
