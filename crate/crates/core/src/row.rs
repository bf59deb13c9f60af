//! Wildcard rows over `{0, 1, 2, e}`.
//!
//! A row fixes some positions to 1 (`ones`), some to 0 (`zeros`), leaves
//! don't-cares free (`2`), and partitions the rest into e-groups, each of
//! which must contain at least one 1.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row012e {
    universe: Universe,
    ones: ItemSet,
    zeros: ItemSet,
    dontcares: ItemSet,
    egroups: Vec<ItemSet>,
}

impl Row012e {
    /// Builds a row after checking that the four kinds of positions partition
    /// the universe. Singleton e-groups become fixed ones and the remaining
    /// groups are sorted by smallest member.
    pub fn new(
        ones: ItemSet,
        zeros: ItemSet,
        dontcares: ItemSet,
        egroups: Vec<ItemSet>,
    ) -> Result<Self> {
        let universe = ones.universe();
        for part in [&zeros, &dontcares].into_iter().chain(egroups.iter()) {
            universe.check_same(part.universe())?;
        }

        let mut ones = ones;
        let mut groups = Vec::with_capacity(egroups.len());
        for g in egroups {
            match g.len() {
                0 => return Err(Error::EmptyEgroup),
                1 => {
                    let item = g.min_item().expect("nonempty");
                    if !ones.insert(item) {
                        return Err(Error::OverlappingPositions { item });
                    }
                }
                _ => groups.push(g),
            }
        }

        let mut seen = ItemSet::empty(universe);
        for part in [&ones, &zeros, &dontcares].into_iter().chain(groups.iter()) {
            if let Some(item) = seen.intersection(part).min_item() {
                return Err(Error::OverlappingPositions { item });
            }
            seen.union_with(part);
        }
        if let Some(item) = seen.complement().min_item() {
            return Err(Error::UncoveredPosition { item });
        }

        groups.sort_by_key(|g| g.min_item());
        Ok(Row012e {
            universe,
            ones,
            zeros,
            dontcares,
            egroups: groups,
        })
    }

    /// The row denoting every subset of `facet`.
    pub fn powerset(facet: &ItemSet) -> Self {
        let universe = facet.universe();
        Row012e {
            universe,
            ones: ItemSet::empty(universe),
            zeros: facet.complement(),
            dontcares: facet.clone(),
            egroups: Vec::new(),
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn ones(&self) -> &ItemSet {
        &self.ones
    }

    pub fn zeros(&self) -> &ItemSet {
        &self.zeros
    }

    pub fn dontcares(&self) -> &ItemSet {
        &self.dontcares
    }

    pub fn egroups(&self) -> &[ItemSet] {
        &self.egroups
    }

    /// Whether `x` is one of the itemsets this row denotes.
    pub fn contains(&self, x: &ItemSet) -> Result<bool> {
        self.universe.check_same(x.universe())?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &ItemSet) -> bool {
        self.ones.is_subset(x)
            && self.zeros.is_disjoint(x)
            && self.egroups.iter().all(|g| g.intersects(x))
    }

    /// Number of itemsets denoted: `2^|dontcares| * prod (2^|g| - 1)`.
    pub fn cardinality(&self) -> BigUint {
        let mut count = BigUint::one() << self.dontcares.len();
        for g in &self.egroups {
            count *= (BigUint::one() << g.len()) - BigUint::one();
        }
        count
    }

    /// Parses the whitespace-separated token form; the token count must equal
    /// the size of `universe`.
    pub fn from_text(text: &str, universe: Universe) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != universe.size() {
            return Err(Error::RowText {
                position: tokens.len().min(universe.size()) + 1,
                message: format!(
                    "expected {} tokens, found {}",
                    universe.size(),
                    tokens.len()
                ),
            });
        }

        let mut ones = ItemSet::empty(universe);
        let mut zeros = ItemSet::empty(universe);
        let mut dontcares = ItemSet::empty(universe);
        // label 0 stands for a bare `e`, which is an alias of `e1`
        let mut labelled: Vec<(usize, ItemSet)> = Vec::new();
        let mut bare_e = None;
        let mut numbered_beyond_one = None;

        for (pos, token) in tokens.iter().enumerate() {
            let item = pos + 1;
            match *token {
                "0" => {
                    zeros.insert(item);
                }
                "1" => {
                    ones.insert(item);
                }
                "2" => {
                    dontcares.insert(item);
                }
                t if t.starts_with('e') => {
                    let label = if t == "e" {
                        bare_e.get_or_insert(item);
                        1
                    } else {
                        match t[1..].parse::<usize>() {
                            Ok(k) if k >= 1 && t[1..].bytes().all(|b| b.is_ascii_digit()) => k,
                            _ => {
                                return Err(Error::RowText {
                                    position: item,
                                    message: format!("bad e-group label {t:?}"),
                                })
                            }
                        }
                    };
                    if label > 1 {
                        numbered_beyond_one.get_or_insert(item);
                    }
                    match labelled.iter_mut().find(|(l, _)| *l == label) {
                        Some((_, g)) => {
                            g.insert(item);
                        }
                        None => {
                            let mut g = ItemSet::empty(universe);
                            g.insert(item);
                            labelled.push((label, g));
                        }
                    }
                }
                other => {
                    return Err(Error::RowText {
                        position: item,
                        message: format!("unknown symbol {other:?}"),
                    })
                }
            }
        }

        if let (Some(_), Some(pos)) = (bare_e, numbered_beyond_one) {
            return Err(Error::RowText {
                position: pos,
                message: "bare `e` mixed with numbered e-groups".to_string(),
            });
        }

        Row012e::new(
            ones,
            zeros,
            dontcares,
            labelled.into_iter().map(|(_, g)| g).collect(),
        )
    }

    /// Canonical token form: `e` when there is a single e-group, `e1`, `e2`, ...
    /// (in canonical group order) otherwise.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    fn symbol_at(&self, item: usize) -> String {
        if self.ones.contains(item) {
            "1".to_string()
        } else if self.zeros.contains(item) {
            "0".to_string()
        } else if self.dontcares.contains(item) {
            "2".to_string()
        } else {
            let k = self
                .egroups
                .iter()
                .position(|g| g.contains(item))
                .expect("positions partition the universe");
            if self.egroups.len() == 1 {
                "e".to_string()
            } else {
                format!("e{}", k + 1)
            }
        }
    }
}

impl fmt::Display for Row012e {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in self.universe.items() {
            if item > 1 {
                f.write_str(" ")?;
            }
            f.write_str(&self.symbol_at(item))?;
        }
        Ok(())
    }
}
