use std::io::{self, Write};
use std::path::{Path, PathBuf};

use facetmine::testkit::{brute_force_frequent, verify_partition, PartitionReport};
use facetmine::{
    facets_to_faces, max_sieve, CompressedComplex, FacetMiner, FrequencyOracle, ItemSet,
    MinerOptions, MiningConfig, Order, TransactionDb,
};
use serde::Serialize;
use thiserror::Error;

use crate::input::{
    into_itemsets, parse_item_lines, parse_transactions_with_universe, ParseError, ParseErrorKind,
};
use crate::output::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Facets,
    Compress,
    Count,
    CountK(usize),
    Supersets(String),
    Delta,
    Maxsets,
    Verify,
    Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub command: Command,
    pub min_support: Option<usize>,
    pub format: Format,
    pub universe: Option<usize>,
    /// Facet file whose line order replaces discovery order.
    pub order_file: Option<PathBuf>,
    /// Seeds a random item order for facet extension.
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Core(#[from] facetmine::Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_error(path: &Path) -> impl FnOnce(ParseError) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    }
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

struct Session<'c> {
    config: &'c RunConfig,
    db: TransactionDb,
}

impl<'c> Session<'c> {
    fn open(config: &'c RunConfig) -> Result<Self, CliError> {
        let bytes = read(&config.input)?;
        let db = parse_transactions_with_universe(&bytes, config.universe)
            .map_err(parse_error(&config.input))?;
        Ok(Session { config, db })
    }

    fn mining_config(&self, shift: usize) -> Result<MiningConfig, CliError> {
        let alpha = self
            .config
            .min_support
            .ok_or_else(|| CliError::Usage("--min-support is required".to_string()))?;
        Ok(MiningConfig::new(alpha + shift)?)
    }

    fn mine(&self, config: MiningConfig) -> Vec<ItemSet> {
        let options = MinerOptions {
            extension: self.config.seed.map_or(Order::Ascending, Order::Seeded),
            ..MinerOptions::default()
        };
        FacetMiner::new(FrequencyOracle::new(&self.db, config), options).run()
    }

    /// Mined facets, reordered by `--order-file` when given.
    fn ordered_facets(&self, config: MiningConfig) -> Result<Vec<ItemSet>, CliError> {
        let facets = self.mine(config);
        let Some(path) = &self.config.order_file else {
            return Ok(facets);
        };
        let lists = parse_item_lines(&read(path)?).map_err(parse_error(path))?;
        let (_, given) = into_itemsets(lists, Some(self.db.universe().size()))
            .or_else(|e| match e.kind {
                // an empty order file can only match an empty complex
                ParseErrorKind::Empty => Ok((self.db.universe(), Vec::new())),
                _ => Err(e),
            })
            .map_err(parse_error(path))?;
        let mut a = facets.clone();
        let mut b = given.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(CliError::Usage(format!(
                "{}: facets do not match the mined facets",
                path.display()
            )));
        }
        Ok(given)
    }

    /// The order file describes the complex at the requested threshold only.
    fn compress(&self, shift: usize) -> Result<CompressedComplex, CliError> {
        let config = self.mining_config(shift)?;
        let facets = if shift == 0 {
            self.ordered_facets(config)?
        } else {
            self.mine(config)
        };
        Ok(facets_to_faces(&facets, self.db.universe())?)
    }

    fn itemset(&self, text: &str) -> Result<ItemSet, CliError> {
        let lists = parse_item_lines(text.replace(',', " ").as_bytes())
            .map_err(|e| CliError::Usage(format!("--set: {e}")))?;
        let items = lists.into_iter().flatten();
        Ok(ItemSet::from_items(self.db.universe(), items)?)
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let format = config.format;
    match &config.command {
        Command::Maxsets => return maxsets(config, out),
        Command::Stats => return stats(config, out),
        _ => {}
    }

    let session = Session::open(config)?;
    match &config.command {
        Command::Facets => {
            let mut facets = session.mine(session.mining_config(0)?);
            facets.sort();
            match format {
                Format::Text => {
                    for f in &facets {
                        writeln!(out, "{f}")?;
                    }
                }
                Format::Json => json(
                    out,
                    &JsonFacets {
                        facets: facets.iter().map(ItemSet::to_vec).collect(),
                    },
                )?,
            }
        }
        Command::Compress => {
            let c = session.compress(0)?;
            match format {
                Format::Text => {
                    for row in c.rows() {
                        writeln!(out, "{row}\t{}", row.cardinality())?;
                    }
                }
                Format::Json => json(out, &JsonComplex::from(&c))?,
            }
        }
        Command::Count => {
            let total = session.compress(0)?.total_count().to_string();
            match format {
                Format::Text => writeln!(out, "{total}")?,
                Format::Json => json(out, &JsonTotal { total })?,
            }
        }
        Command::CountK(k) => {
            let count = session.compress(0)?.count_faces_of_size(*k).to_string();
            match format {
                Format::Text => writeln!(out, "{count}")?,
                Format::Json => json(out, &JsonSizeCount { k: *k, count })?,
            }
        }
        Command::Supersets(text) => {
            let x = session.itemset(text)?;
            let c = session.compress(0)?;
            let per_row = c.superset_counts(&x)?;
            let count: num_bigint::BigUint = per_row.iter().sum();
            match format {
                Format::Text => writeln!(out, "{count}")?,
                Format::Json => json(
                    out,
                    &JsonSupersets {
                        set: x.to_vec(),
                        count: count.to_string(),
                        per_row: per_row.iter().map(ToString::to_string).collect(),
                    },
                )?,
            }
        }
        Command::Delta => {
            let alpha = session.mining_config(0)?.alpha();
            let at = session.compress(0)?.total_count();
            let above = session.compress(1)?.total_count();
            let delta = &at - &above;
            match format {
                Format::Text => writeln!(out, "{delta}")?,
                Format::Json => json(
                    out,
                    &JsonDelta {
                        alpha,
                        frequent: at.to_string(),
                        frequent_above: above.to_string(),
                        delta: delta.to_string(),
                    },
                )?,
            }
        }
        Command::Verify => {
            let config = session.mining_config(0)?;
            let c = session.compress(0)?;
            let reference = brute_force_frequent(&session.db, config.alpha())?;
            let report = verify_partition(&c, &reference)?;
            let violation = match &report {
                PartitionReport::Ok => None,
                PartitionReport::Unmatched(x) => Some(format!("unmatched {x:?}")),
                PartitionReport::MatchedTwice(x) => Some(format!("matched twice {x:?}")),
                PartitionReport::Extraneous(x) => Some(format!("extraneous {x:?}")),
            };
            match format {
                Format::Text => match &violation {
                    None => writeln!(
                        out,
                        "ok: {} rows partition {} frequent sets",
                        c.rows().len(),
                        reference.len()
                    )?,
                    Some(v) => writeln!(out, "violation: {v}")?,
                },
                Format::Json => json(
                    out,
                    &JsonVerify {
                        ok: report.is_ok(),
                        rows: c.rows().len(),
                        reference: reference.len(),
                        violation: violation.clone(),
                    },
                )?,
            }
            if violation.is_some() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Maxsets | Command::Stats => unreachable!("handled above"),
    }
    Ok(EXIT_OK)
}

fn maxsets(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let lists = parse_item_lines(&read(&config.input)?).map_err(parse_error(&config.input))?;
    let (universe, family) =
        into_itemsets(lists, config.universe).map_err(parse_error(&config.input))?;
    let mut found = max_sieve(&family, universe)?;
    found.sort_unstable();
    match config.format {
        Format::Text => {
            for j in found {
                writeln!(out, "{j}\t{}", family[j - 1])?;
            }
        }
        Format::Json => json(
            out,
            &JsonMaxsets {
                maxsets: found
                    .into_iter()
                    .map(|j| JsonMaxset {
                        index: j,
                        items: family[j - 1].to_vec(),
                    })
                    .collect(),
            },
        )?,
    }
    Ok(EXIT_OK)
}

fn stats(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let lists = parse_item_lines(&read(&config.input)?).map_err(parse_error(&config.input))?;
    let stats = JsonStats {
        transactions: lists.len(),
        universe: config
            .universe
            .unwrap_or_else(|| lists.iter().flatten().copied().max().unwrap_or(0)),
        item_occurrences: lists.iter().map(Vec::len).sum(),
    };
    match config.format {
        Format::Text => {
            writeln!(out, "transactions\t{}", stats.transactions)?;
            writeln!(out, "universe\t{}", stats.universe)?;
            writeln!(out, "item_occurrences\t{}", stats.item_occurrences)?;
        }
        Format::Json => json(out, &stats)?,
    }
    Ok(EXIT_OK)
}
