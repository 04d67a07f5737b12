//! Library half of the `seqrule` command-line tool.
//!
//! Every subcommand is a plain function returning the text it would print,
//! which keeps the binary thin and lets tests drive the commands directly.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use seqrule::{
    enumerate_target_rules, generate_database, mine_target_rules, parse_query_rule_with,
    parse_ratio, parse_sequence_database, write_results_with, write_sequence_database,
    DatasetFormat, GeneratorParams, Metric, MiningConfig, MiningStats, OracleConfig,
    PruningVariant, QueryRule, Ratio, SequenceDatabase, SimilarityMetric, TokenMap,
};

#[derive(Parser, Debug)]
#[command(name = "seqrule", version, about = "Targeted sequential rule mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mine every rule that includes the query rule.
    Mine(MineArgs),
    /// Brute-force enumeration over the original database, for checking.
    Oracle(OracleArgs),
    /// Write a seeded random database.
    Gen(GenArgs),
    /// Compare expansion counts of the pruning variants over thresholds.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Freq,
    Util,
}

impl From<FormatArg> for DatasetFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Freq => DatasetFormat::Frequency,
            FormatArg::Util => DatasetFormat::Utility,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    #[value(alias = "frequency")]
    Freq,
    #[value(alias = "utility")]
    Util,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimilarityArg {
    None,
    Trjs,
    Tros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PruningArg {
    Filter,
    Basic,
    Full,
}

impl From<PruningArg> for PruningVariant {
    fn from(p: PruningArg) -> Self {
        match p {
            PruningArg::Filter => PruningVariant::Filter,
            PruningArg::Basic => PruningVariant::Basic,
            PruningArg::Full => PruningVariant::Full,
        }
    }
}

/// Input and threshold flags shared by `mine`, `oracle` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct QueryArgs {
    /// Sequence database file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "freq")]
    pub format: FormatArg,
    /// Query rule, e.g. "1 => 3,7". Either side may be empty.
    #[arg(long)]
    pub query: String,
    /// Defaults to the metric matching `--format`.
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,
    #[arg(long, default_value = "0.0")]
    pub min_conf: String,
    #[arg(long, value_enum, default_value = "none")]
    pub similarity: SimilarityArg,
    #[arg(long, default_value = "0")]
    pub min_sim: String,
    /// `id<TAB>token` lines; tokens may then be used in the query and
    /// appear in the output.
    #[arg(long)]
    pub token_map: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct MineArgs {
    #[command(flatten)]
    pub common: QueryArgs,
    #[arg(long, default_value_t = 1)]
    pub min_attr: u64,
    #[arg(long, value_enum, default_value = "full")]
    pub pruning: PruningArg,
    #[arg(long)]
    pub max_ant: Option<usize>,
    #[arg(long)]
    pub max_cons: Option<usize>,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print run statistics to standard error.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[command(flatten)]
    pub common: QueryArgs,
    #[arg(long, default_value_t = 1)]
    pub min_attr: u64,
    #[arg(long, default_value_t = 4)]
    pub max_ant: usize,
    #[arg(long, default_value_t = 4)]
    pub max_cons: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub sequences: usize,
    #[arg(long, default_value_t = 10)]
    pub items: u32,
    #[arg(long, default_value_t = 6)]
    pub max_itemsets: usize,
    #[arg(long, default_value_t = 3)]
    pub max_itemset_size: usize,
    #[arg(long, default_value_t = 1)]
    pub attr_min: u64,
    #[arg(long, default_value_t = 10)]
    pub attr_max: u64,
    #[arg(long, value_enum, default_value = "util")]
    pub format: FormatArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: QueryArgs,
    /// Comma-separated minimum attribute values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub thresholds: Vec<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// What a subcommand produced: the main text and, optionally, stats lines.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub stats: Option<String>,
}

pub fn run(cli: &Cli) -> Result<RunOutput> {
    match &cli.command {
        Command::Mine(a) => run_mine(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Gen(a) => run_gen(a).map(|text| RunOutput { text, stats: None }),
        Command::Bench(a) => run_bench(a).map(|text| RunOutput { text, stats: None }),
    }
}

/// The output path chosen by a subcommand, if any.
pub fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Mine(a) => a.output.as_ref(),
        Command::Oracle(a) => a.output.as_ref(),
        Command::Gen(a) => a.output.as_ref(),
        Command::Bench(a) => a.output.as_ref(),
    }
}

struct Loaded {
    db: SequenceDatabase,
    query: QueryRule,
    metric: Metric,
    min_conf: Ratio,
    similarity: SimilarityMetric,
    min_sim: Ratio,
    tokens: Option<TokenMap>,
}

fn unit_ratio(text: &str, what: &str) -> Result<Ratio> {
    let r = parse_ratio(text).with_context(|| format!("invalid {what} {text:?}"))?;
    ensure!(
        r <= Ratio::from_integer(1),
        "{what} must lie in [0, 1], got {text}"
    );
    Ok(r)
}

fn load(args: &QueryArgs) -> Result<Loaded> {
    let min_conf = unit_ratio(&args.min_conf, "--min-conf")?;
    let min_sim = unit_ratio(&args.min_sim, "--min-sim")?;
    let tokens = match &args.token_map {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Some(TokenMap::parse(&text).with_context(|| format!("in {}", path.display()))?)
        }
        None => None,
    };
    let query = parse_query_rule_with(&args.query, tokens.as_ref())
        .with_context(|| format!("invalid query {:?}", args.query))?;
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let db = parse_sequence_database(&text, args.format.into())
        .with_context(|| format!("in {}", args.input.display()))?;
    let metric = match args.metric {
        Some(MetricArg::Freq) => Metric::Frequency,
        Some(MetricArg::Util) => Metric::Utility,
        None => match args.format {
            FormatArg::Freq => Metric::Frequency,
            FormatArg::Util => Metric::Utility,
        },
    };
    let similarity = match args.similarity {
        SimilarityArg::None => SimilarityMetric::None,
        SimilarityArg::Trjs => SimilarityMetric::Trjs,
        SimilarityArg::Tros => SimilarityMetric::Tros,
    };
    Ok(Loaded {
        db,
        query,
        metric,
        min_conf,
        similarity,
        min_sim,
        tokens,
    })
}

fn mining_config(l: &Loaded, min_attr: u64, variant: PruningVariant) -> MiningConfig {
    MiningConfig::new(l.metric, min_attr, l.min_conf)
        .with_variant(variant)
        .with_similarity(l.similarity, l.min_sim)
}

pub fn format_stats(stats: &MiningStats, elapsed_ms: u128) -> String {
    format!(
        "expansions={}\ncandidates={}\nrules={}\nsequences_kept={}\nitems_removed={}\nelapsed_ms={}\n",
        stats.expansions,
        stats.candidates,
        stats.rules_emitted,
        stats.sequences_kept,
        stats.items_removed,
        elapsed_ms
    )
}

pub fn run_mine(args: &MineArgs) -> Result<RunOutput> {
    let l = load(&args.common)?;
    let mut cfg = mining_config(&l, args.min_attr, args.pruning.into());
    cfg.max_antecedent = args.max_ant;
    cfg.max_consequent = args.max_cons;
    let start = Instant::now();
    let outcome = mine_target_rules(&l.db, &l.query, &cfg)?;
    let elapsed = start.elapsed().as_millis();
    let include_sim = l.similarity != SimilarityMetric::None;
    Ok(RunOutput {
        text: write_results_with(&outcome.rules, include_sim, l.tokens.as_ref()),
        stats: args.stats.then(|| format_stats(&outcome.stats, elapsed)),
    })
}

pub fn run_oracle(args: &OracleArgs) -> Result<RunOutput> {
    let l = load(&args.common)?;
    let cfg = OracleConfig::new(l.metric, args.min_attr, l.min_conf)
        .with_size_limits(args.max_ant, args.max_cons)
        .with_similarity(l.similarity, l.min_sim);
    let rules = enumerate_target_rules(&l.db, &l.query, &cfg)?;
    let include_sim = l.similarity != SimilarityMetric::None;
    Ok(RunOutput {
        text: write_results_with(&rules, include_sim, l.tokens.as_ref()),
        stats: None,
    })
}

pub fn run_gen(args: &GenArgs) -> Result<String> {
    let params = GeneratorParams {
        sequences: args.sequences,
        items: args.items,
        max_itemsets: args.max_itemsets,
        max_itemset_size: args.max_itemset_size,
        min_attr: args.attr_min,
        max_attr: args.attr_max,
    };
    let db = generate_database(&params, args.seed)?;
    Ok(write_sequence_database(&db, args.format.into()))
}

pub const BENCH_HEADER: &str = "threshold,variant,expansions,rules,elapsed_ms";

/// Runs every pruning variant at every threshold. Fails if the variants
/// disagree on the rules found or if a stronger variant expands more.
pub fn run_bench(args: &BenchArgs) -> Result<String> {
    let l = load(&args.common)?;
    let mut out = String::new();
    writeln!(out, "{BENCH_HEADER}")?;
    for &threshold in &args.thresholds {
        let mut runs = Vec::new();
        for variant in PruningVariant::ALL {
            let start = Instant::now();
            let outcome =
                mine_target_rules(&l.db, &l.query, &mining_config(&l, threshold, variant))?;
            let elapsed = start.elapsed().as_millis();
            writeln!(
                out,
                "{threshold},{},{},{},{elapsed}",
                variant.name(),
                outcome.stats.expansions,
                outcome.rules.len()
            )?;
            runs.push((variant, outcome));
        }
        let (first, rest) = runs.split_first().expect("three variants");
        for (variant, outcome) in rest {
            if outcome.rules != first.1.rules {
                bail!(
                    "threshold {threshold}: {} and {} found different rules",
                    first.0.name(),
                    variant.name()
                );
            }
        }
        let count = |v: PruningVariant| {
            runs.iter()
                .find(|(w, _)| *w == v)
                .map(|(_, o)| o.stats.expansions)
                .unwrap_or(0)
        };
        let (filter, basic, full) = (
            count(PruningVariant::Filter),
            count(PruningVariant::Basic),
            count(PruningVariant::Full),
        );
        if !(full <= basic && basic <= filter) {
            bail!(
                "threshold {threshold}: expansion counts not monotone ({filter}, {basic}, {full})"
            );
        }
    }
    Ok(out)
}
