//! SPMF-style sequence files, the query grammar and the result format.
//!
//! Frequency files list item ids per itemset:
//! `1 4 -1 1 2 5 -1 3 7 -1 -2`. Utility files attach an attribute to each
//! item and may end with the sequence total:
//! `1[2] 4[1] -1 1[1] 2[1] 5[4] -1 3[4] 7[1] -1 -2 SUtility:14`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::miner::TargetRuleResult;
use crate::model::{Attr, Item, Itemset, QueryRule, Sequence, SequenceDatabase};
use crate::ratio::format_ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DatasetFormat {
    /// Plain item ids; every attribute is 1.
    Frequency,
    /// `ITEM[ATTR]` tokens with an optional `SUtility:N` trailer.
    Utility,
}

pub fn parse_sequence_database(text: &str, format: DatasetFormat) -> Result<SequenceDatabase> {
    let sequences = text
        .lines()
        .enumerate()
        .map(|(idx, line)| parse_sequence_line(line, idx + 1, format))
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceDatabase::new(sequences))
}

fn parse_sequence_line(line: &str, line_no: usize, format: DatasetFormat) -> Result<Sequence> {
    let err = |msg: String| Error::parse(line_no, msg);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let mut tokens = line.split_whitespace();
    let mut itemsets: Vec<Itemset> = Vec::new();
    let mut current: Vec<(Item, Attr)> = Vec::new();
    let mut terminated = false;

    for token in tokens.by_ref() {
        match token {
            "-1" => {
                if current.is_empty() {
                    return Err(err("empty itemset".into()));
                }
                itemsets.push(Itemset::from_sorted_unchecked(std::mem::take(&mut current)));
            }
            "-2" => {
                terminated = true;
                break;
            }
            _ => {
                let (item, attr) = parse_entry(token, format).map_err(err)?;
                if let Some(&(prev, _)) = current.last() {
                    if prev == item {
                        return Err(err(format!("duplicate item {item} in itemset")));
                    }
                    if prev > item {
                        return Err(err(format!("items not ascending: {item} after {prev}")));
                    }
                }
                current.push((item, attr));
            }
        }
    }
    if !terminated {
        return Err(err("missing -2 sequence terminator".into()));
    }
    if !current.is_empty() {
        return Err(err("itemset not terminated by -1".into()));
    }
    if itemsets.is_empty() {
        return Err(err("sequence has no itemsets".into()));
    }
    let sequence = Sequence::new(itemsets).map_err(|e| err(e.to_string()))?;

    let trailer: Vec<&str> = tokens.collect();
    match (format, trailer.as_slice()) {
        (_, []) => {}
        (DatasetFormat::Utility, [t]) if t.starts_with("SUtility:") => {
            let declared: Attr = t["SUtility:".len()..]
                .parse()
                .map_err(|_| err(format!("malformed token {t:?}")))?;
            let total = sequence.total_attr();
            if declared != total {
                return Err(err(format!(
                    "SUtility mismatch: declared {declared}, computed {total}"
                )));
            }
        }
        (_, [t, ..]) => return Err(err(format!("unexpected token after -2: {t:?}"))),
    }
    Ok(sequence)
}

fn parse_entry(token: &str, format: DatasetFormat) -> std::result::Result<(Item, Attr), String> {
    let bad = || format!("malformed token {token:?}");
    let parse_id = |s: &str| -> std::result::Result<Item, String> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let id: u32 = s.parse().map_err(|_| bad())?;
        Ok(Item::new(id))
    };
    match format {
        DatasetFormat::Frequency => Ok((parse_id(token)?, 1)),
        DatasetFormat::Utility => {
            let (id, rest) = token.split_once('[').ok_or_else(bad)?;
            let attr = rest.strip_suffix(']').ok_or_else(bad)?;
            if attr.is_empty() || !attr.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            Ok((parse_id(id)?, attr.parse().map_err(|_| bad())?))
        }
    }
}

/// Writes a database in `format`; utility lines carry a `SUtility` trailer.
pub fn write_sequence_database(db: &SequenceDatabase, format: DatasetFormat) -> String {
    let mut out = String::new();
    for s in db.sequences() {
        for itemset in s.itemsets() {
            for &(item, attr) in itemset.entries() {
                match format {
                    DatasetFormat::Frequency => write!(out, "{item} "),
                    DatasetFormat::Utility => write!(out, "{item}[{attr}] "),
                }
                .expect("writing to a String");
            }
            out.push_str("-1 ");
        }
        out.push_str("-2");
        if format == DatasetFormat::Utility {
            write!(out, " SUtility:{}", s.total_attr()).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Parses `ANT => CONS`, each side a comma-separated list of item ids.
pub fn parse_query_rule(text: &str) -> Result<QueryRule> {
    parse_query_rule_with(text, None)
}

/// Like [`parse_query_rule`], also accepting tokens from `map`.
pub fn parse_query_rule_with(text: &str, map: Option<&TokenMap>) -> Result<QueryRule> {
    let err = |msg: String| Error::parse(1, msg);
    let (ant, cons) = text
        .split_once("=>")
        .ok_or_else(|| err("query must have the form `ANT => CONS`".into()))?;
    let side = |part: &str| -> Result<Vec<Item>> {
        let compact: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(Vec::new());
        }
        let mut items: Vec<Item> = Vec::new();
        for token in compact.split(',') {
            let item = match token.parse::<u32>() {
                Ok(id) if token.bytes().all(|b| b.is_ascii_digit()) => Item::new(id),
                _ => map
                    .and_then(|m| m.item(token))
                    .ok_or_else(|| err(format!("bad item token {token:?}")))?,
            };
            if items.contains(&item) {
                return Err(err(format!("duplicate item {item}")));
            }
            items.push(item);
        }
        Ok(items)
    };
    let (ant, cons) = (side(ant)?, side(cons)?);
    QueryRule::new(ant, cons).map_err(|e| err(e.to_string()))
}

/// Renders results one per line:
/// `A1,A2 ==> C1,C2 #ATTR: n #CONF: d [#SIM: d]`.
pub fn write_results(rules: &[TargetRuleResult], include_sim: bool) -> String {
    write_results_with(rules, include_sim, None)
}

pub fn write_results_with(
    rules: &[TargetRuleResult],
    include_sim: bool,
    map: Option<&TokenMap>,
) -> String {
    let side = |items: &[Item]| {
        items
            .iter()
            .map(|&i| match map.and_then(|m| m.token(i)) {
                Some(t) => t.to_string(),
                None => i.to_string(),
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    for r in rules {
        write!(
            out,
            "{} ==> {} #ATTR: {} #CONF: {}",
            side(&r.antecedent),
            side(&r.consequent),
            r.attr,
            format_ratio(&r.conf, 4)
        )
        .expect("writing to a String");
        if include_sim {
            if let Some(sim) = &r.sim {
                write!(out, " #SIM: {}", format_ratio(sim, 4)).expect("writing to a String");
            }
        }
        out.push('\n');
    }
    out
}

/// Sidecar mapping between item ids and display tokens (`id<TAB>token`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenMap {
    by_id: BTreeMap<Item, String>,
    by_token: BTreeMap<String, Item>,
}

impl TokenMap {
    pub fn parse(text: &str) -> Result<TokenMap> {
        let mut map = TokenMap::default();
        for (idx, line) in text.lines().enumerate() {
            let err = |msg: String| Error::parse(idx + 1, msg);
            let (id, token) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `id<TAB>token`".into()))?;
            let id: u32 = id
                .trim()
                .parse()
                .map_err(|_| err(format!("bad id {id:?}")))?;
            let token = token.trim();
            if token.is_empty() || token.contains([',', ' ']) || token.contains("=>") {
                return Err(err(format!("unusable token {token:?}")));
            }
            let item = Item::new(id);
            if map.by_id.insert(item, token.to_string()).is_some() {
                return Err(err(format!("duplicate id {id}")));
            }
            if map.by_token.insert(token.to_string(), item).is_some() {
                return Err(err(format!("duplicate token {token:?}")));
            }
        }
        Ok(map)
    }

    pub fn token(&self, item: Item) -> Option<&str> {
        self.by_id.get(&item).map(String::as_str)
    }

    pub fn item(&self, token: &str) -> Option<Item> {
        self.by_token.get(token).copied()
    }
}
