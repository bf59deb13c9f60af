//! Itemsets over a finite universe `1..=w`, stored as packed bit vectors.
//!
//! The same type doubles as a set of member indices (transaction ids, family
//! positions): a family of `n` sets is indexed by the universe `1..=n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// The item range `1..=w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe(usize);

impl Universe {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(Universe(size))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn items(self) -> std::ops::RangeInclusive<usize> {
        1..=self.0
    }

    pub fn contains(self, item: usize) -> bool {
        (1..=self.0).contains(&item)
    }

    fn words(self) -> usize {
        self.0.div_ceil(WORD)
    }

    pub(crate) fn check_same(self, other: Universe) -> Result<()> {
        if self != other {
            return Err(Error::UniverseMismatch {
                expected: self.0,
                found: other.0,
            });
        }
        Ok(())
    }
}

/// A subset of a [`Universe`].
///
/// Binary operations require both operands to share a universe and panic
/// otherwise; mixing universes is a logic error, not a data error.
///
/// The total order is shortlex: by cardinality first, then lexicographically
/// on the ascending member lists. It extends inclusion, so the least element
/// of any family is one of its minimal members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ItemSet {
    universe: Universe,
    words: Box<[u64]>,
}

impl ItemSet {
    pub fn empty(universe: Universe) -> Self {
        ItemSet {
            universe,
            words: vec![0; universe.words()].into_boxed_slice(),
        }
    }

    pub fn full(universe: Universe) -> Self {
        let mut set = ItemSet {
            universe,
            words: vec![u64::MAX; universe.words()].into_boxed_slice(),
        };
        set.trim();
        set
    }

    pub fn from_items<I>(universe: Universe, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = ItemSet::empty(universe);
        for item in items {
            if !universe.contains(item) {
                return Err(Error::ItemOutOfRange {
                    item,
                    size: universe.size(),
                });
            }
            set.insert(item);
        }
        Ok(set)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    #[inline]
    fn locate(item: usize) -> (usize, u64) {
        let bit = item - 1;
        (bit / WORD, 1u64 << (bit % WORD))
    }

    // clears the padding bits past `w` in the last word
    fn trim(&mut self) {
        let rem = self.universe.size() % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn contains(&self, item: usize) -> bool {
        if !self.universe.contains(item) {
            return false;
        }
        let (w, mask) = Self::locate(item);
        self.words[w] & mask != 0
    }

    /// Adds `item`; returns whether it was newly inserted. Panics outside the universe.
    pub fn insert(&mut self, item: usize) -> bool {
        assert!(
            self.universe.contains(item),
            "item {item} outside universe 1..={}",
            self.universe.size()
        );
        let (w, mask) = Self::locate(item);
        let fresh = self.words[w] & mask == 0;
        self.words[w] |= mask;
        fresh
    }

    pub fn remove(&mut self, item: usize) -> bool {
        if !self.universe.contains(item) {
            return false;
        }
        let (w, mask) = Self::locate(item);
        let present = self.words[w] & mask != 0;
        self.words[w] &= !mask;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min_item(&self) -> Option<usize> {
        self.iter().next()
    }

    fn same_universe(&self, other: &ItemSet) {
        assert_eq!(
            self.universe, other.universe,
            "itemsets from different universes"
        );
    }

    pub fn is_subset(&self, other: &ItemSet) -> bool {
        self.same_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &ItemSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_disjoint(&self, other: &ItemSet) -> bool {
        self.same_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &ItemSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &ItemSet) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ItemSet) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ItemSet) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ItemSet) -> ItemSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &ItemSet) -> ItemSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> ItemSet {
        let mut out = ItemSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    /// `self ∪ {item}` without touching `self`.
    pub fn with(&self, item: usize) -> ItemSet {
        let mut out = self.clone();
        out.insert(item);
        out
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for ItemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| {
                // The lowest item in the symmetric difference decides: the set
                // holding it has the smaller element at the first differing slot.
                for (a, b) in self.words.iter().zip(other.words.iter()) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let low = diff & diff.wrapping_neg();
                        return if a & low != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ItemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit + 1);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a ItemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl BitAnd for &ItemSet {
    type Output = ItemSet;
    fn bitand(self, rhs: &ItemSet) -> ItemSet {
        self.intersection(rhs)
    }
}

impl BitOr for &ItemSet {
    type Output = ItemSet;
    fn bitor(self, rhs: &ItemSet) -> ItemSet {
        self.union(rhs)
    }
}

impl Sub for &ItemSet {
    type Output = ItemSet;
    fn sub(self, rhs: &ItemSet) -> ItemSet {
        self.difference(rhs)
    }
}

impl Not for &ItemSet {
    type Output = ItemSet;
    fn not(self) -> ItemSet {
        self.complement()
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Space-separated ascending items, the same shape as a transaction line.
impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for item in self {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
            first = false;
        }
        Ok(())
    }
}
