//! Brute-force oracles and seeded random instances.
//!
//! Everything here works on plain `u32` bitmasks and full enumeration, and
//! shares no code path with the vertical-layout index, the miner or the row
//! membership test. It exists so the fast paths can be checked against it.

use std::collections::HashSet;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::compress::CompressedComplex;
use crate::db::TransactionDb;
use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};

/// Largest universe the enumerating oracles accept.
pub const ENUMERATION_LIMIT: usize = 20;

fn guard(universe: Universe) -> Result<usize> {
    let w = universe.size();
    if w > ENUMERATION_LIMIT {
        return Err(Error::UniverseTooLarge {
            size: w,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(w)
}

/// Bitmask of an itemset, bit `i - 1` for item `i`. Universe must fit in 32 bits.
pub fn to_mask(set: &ItemSet) -> u32 {
    set.iter().fold(0, |m, i| m | 1 << (i - 1))
}

pub fn from_mask(universe: Universe, mask: u32) -> ItemSet {
    ItemSet::from_items(
        universe,
        (0..universe.size())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + 1),
    )
    .expect("mask fits the universe")
}

/// Every itemset contained in at least `alpha` transactions, found by
/// scanning all `2^w` subsets against every transaction. Shortlex order.
pub fn brute_force_frequent(db: &TransactionDb, alpha: usize) -> Result<Vec<ItemSet>> {
    let w = guard(db.universe())?;
    let rows: Vec<u32> = db.transactions().iter().map(to_mask).collect();
    let mut out: Vec<ItemSet> = (0..1u32 << w)
        .filter(|&x| rows.iter().filter(|&&t| x & !t == 0).count() >= alpha)
        .map(|x| from_mask(db.universe(), x))
        .collect();
    out.sort();
    Ok(out)
}

/// Pairwise maximality filter with duplicates removed. Shortlex order.
pub fn brute_force_maximal(family: &[ItemSet]) -> Vec<ItemSet> {
    let mut out: Vec<ItemSet> = Vec::new();
    for x in family {
        let dominated = family.iter().any(|y| x != y && x.is_subset(y));
        if !dominated && !out.contains(x) {
            out.push(x.clone());
        }
    }
    out.sort();
    out
}

/// Pairwise minimality filter with duplicates removed. Shortlex order.
pub fn brute_force_minimal(family: &[ItemSet]) -> Vec<ItemSet> {
    let mut out: Vec<ItemSet> = Vec::new();
    for x in family {
        let dominated = family.iter().any(|y| x != y && y.is_subset(x));
        if !dominated && !out.contains(x) {
            out.push(x.clone());
        }
    }
    out.sort();
    out
}

/// All minimal transversals by enumeration of every subset of the universe.
pub fn brute_force_transversals(universe: Universe, edges: &[ItemSet]) -> Result<Vec<ItemSet>> {
    let w = guard(universe)?;
    let edges: Vec<u32> = edges.iter().map(to_mask).collect();
    let hits = |x: u32| edges.iter().all(|&e| x & e != 0);
    let mut out: Vec<ItemSet> = (0..1u32 << w)
        .filter(|&x| hits(x) && (0..w).all(|b| x >> b & 1 == 0 || !hits(x & !(1 << b))))
        .map(|x| from_mask(universe, x))
        .collect();
    out.sort();
    Ok(out)
}

/// Row membership on bitmasks.
#[derive(Clone, Debug)]
struct MaskRow {
    ones: u32,
    zeros: u32,
    groups: Vec<u32>,
}

impl MaskRow {
    fn matches(&self, x: u32) -> bool {
        x & self.ones == self.ones && x & self.zeros == 0 && self.groups.iter().all(|g| x & g != 0)
    }
}

fn mask_rows(c: &CompressedComplex) -> Vec<MaskRow> {
    c.rows()
        .iter()
        .map(|r| MaskRow {
            ones: to_mask(r.ones()),
            zeros: to_mask(r.zeros()),
            groups: r.egroups().iter().map(to_mask).collect(),
        })
        .collect()
}

/// Number of itemsets matched by each row, by enumeration.
pub fn enumerate_row_counts(c: &CompressedComplex) -> Result<Vec<u64>> {
    let w = guard(c.universe())?;
    let rows = mask_rows(c);
    let mut counts = vec![0u64; rows.len()];
    for x in 0..1u32 << w {
        for (k, r) in rows.iter().enumerate() {
            if r.matches(x) {
                counts[k] += 1;
            }
        }
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionReport {
    Ok,
    /// A reference member matched by no row.
    Unmatched(ItemSet),
    /// An itemset matched by more than one row.
    MatchedTwice(ItemSet),
    /// A row member missing from the reference.
    Extraneous(ItemSet),
}

impl PartitionReport {
    pub fn is_ok(&self) -> bool {
        *self == PartitionReport::Ok
    }
}

/// Checks that the rows of `c` partition exactly `reference`. Reports the
/// first violating itemset in mask order.
pub fn verify_partition(c: &CompressedComplex, reference: &[ItemSet]) -> Result<PartitionReport> {
    let w = guard(c.universe())?;
    let rows = mask_rows(c);
    let reference: HashSet<u32> = reference.iter().map(to_mask).collect();
    for x in 0..1u32 << w {
        let matched = rows.iter().filter(|r| r.matches(x)).count();
        let expected = reference.contains(&x);
        let verdict = match (expected, matched) {
            (true, 0) => PartitionReport::Unmatched(from_mask(c.universe(), x)),
            (_, n) if n > 1 => PartitionReport::MatchedTwice(from_mask(c.universe(), x)),
            (false, 1) => PartitionReport::Extraneous(from_mask(c.universe(), x)),
            _ => continue,
        };
        return Ok(verdict);
    }
    Ok(PartitionReport::Ok)
}

/// The fixed generator behind every random instance: SplitMix64 with state
/// initialised to the seed (Steele, Lea and Flood constants). A Bernoulli(p)
/// draw is `(next >> 11) * 2^-53 < p`; a draw below `n` is `next % n`.
#[derive(Clone, Debug)]
pub struct SeededSource(SplitMix64);

impl SeededSource {
    pub fn new(seed: u64) -> Self {
        SeededSource(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform random `k`-subset of the universe (partial Fisher-Yates).
    pub fn subset_of_size(&mut self, universe: Universe, k: usize) -> ItemSet {
        let mut items: Vec<usize> = universe.items().collect();
        let k = k.min(items.len());
        for i in 0..k {
            let j = i + self.below((items.len() - i) as u64) as usize;
            items.swap(i, j);
        }
        ItemSet::from_items(universe, items[..k].iter().copied()).expect("items from universe")
    }

    /// Each item independently with probability `p`.
    pub fn bernoulli_subset(&mut self, universe: Universe, p: f64) -> ItemSet {
        let mut set = ItemSet::empty(universe);
        for item in universe.items() {
            if self.bernoulli(p) {
                set.insert(item);
            }
        }
        set
    }
}

/// Parameters of a reproducible random database.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomDbSpec {
    pub seed: u64,
    pub universe_size: usize,
    pub transactions: usize,
    pub density: f64,
}

pub const RANDOM_DB_MAX_UNIVERSE: usize = 16;
pub const RANDOM_DB_MAX_TRANSACTIONS: usize = 24;

/// Transactions drawn row by row, item by item, each item present with
/// probability `density`.
pub fn random_database(spec: RandomDbSpec) -> Result<TransactionDb> {
    if !(1..=RANDOM_DB_MAX_UNIVERSE).contains(&spec.universe_size) {
        return Err(Error::InvalidSpec(format!(
            "universe size {} not in 1..={RANDOM_DB_MAX_UNIVERSE}",
            spec.universe_size
        )));
    }
    if !(1..=RANDOM_DB_MAX_TRANSACTIONS).contains(&spec.transactions) {
        return Err(Error::InvalidSpec(format!(
            "transaction count {} not in 1..={RANDOM_DB_MAX_TRANSACTIONS}",
            spec.transactions
        )));
    }
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::InvalidSpec(format!(
            "density {} not in [0, 1]",
            spec.density
        )));
    }
    let universe = Universe::new(spec.universe_size)?;
    let mut source = SeededSource::new(spec.seed);
    let transactions = (0..spec.transactions)
        .map(|_| source.bernoulli_subset(universe, spec.density))
        .collect();
    TransactionDb::new(universe, transactions)
}
