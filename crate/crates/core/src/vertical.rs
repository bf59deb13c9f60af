//! Vertical layout: column-oriented indices over a set family.
//!
//! For a family `X_1..X_n` over `1..=w`, column `i` of the zeros index holds
//! `{ j : i ∉ X_j }` and column `i` of the ones index holds `{ j : i ∈ X_j }`.
//! Member indices are 1-based and stored as [`ItemSet`]s over `1..=n`.
//!
//! Intersecting zeros columns over the complement of `X` yields every member
//! contained in `X`; intersecting ones columns over `X` yields every member
//! containing `X`. Both sieves below and the support count are built on that.

use crate::db::{MiningConfig, TransactionDb};
use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};

fn member_space(family: &[ItemSet], universe: Universe) -> Result<Universe> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for member in family {
        universe.check_same(member.universe())?;
    }
    Universe::new(family.len())
}

/// Per item, the members that do not contain it.
#[derive(Clone, Debug)]
pub struct ZerosIndex {
    universe: Universe,
    members: Universe,
    zeros: Vec<ItemSet>,
}

impl ZerosIndex {
    pub fn build(family: &[ItemSet], universe: Universe) -> Result<Self> {
        let members = member_space(family, universe)?;
        let mut zeros = vec![ItemSet::full(members); universe.size()];
        for (j, member) in family.iter().enumerate() {
            for item in member {
                zeros[item - 1].remove(j + 1);
            }
        }
        Ok(ZerosIndex {
            universe,
            members,
            zeros,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn member_count(&self) -> usize {
        self.members.size()
    }

    /// Column `item`: indices of members missing `item`.
    pub fn zeros(&self, item: usize) -> &ItemSet {
        &self.zeros[item - 1]
    }

    /// `{ j : X_j ⊆ x }`, the intersection of the zeros columns outside `x`.
    pub fn subset_member_indices(&self, x: &ItemSet) -> ItemSet {
        let mut hits = ItemSet::full(self.members);
        for item in x.complement().iter() {
            hits.intersect_with(&self.zeros[item - 1]);
            if hits.is_empty() {
                break;
            }
        }
        hits
    }
}

/// Per item, the members that contain it. Over a transaction database these
/// are the tidlists.
#[derive(Clone, Debug)]
pub struct OnesIndex {
    universe: Universe,
    members: Universe,
    ones: Vec<ItemSet>,
}

impl OnesIndex {
    pub fn build(family: &[ItemSet], universe: Universe) -> Result<Self> {
        let members = member_space(family, universe)?;
        let mut ones = vec![ItemSet::empty(members); universe.size()];
        for (j, member) in family.iter().enumerate() {
            for item in member {
                ones[item - 1].insert(j + 1);
            }
        }
        Ok(OnesIndex {
            universe,
            members,
            ones,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn member_count(&self) -> usize {
        self.members.size()
    }

    pub fn ones(&self, item: usize) -> &ItemSet {
        &self.ones[item - 1]
    }

    /// `{ j : x ⊆ X_j }`, the intersection of the ones columns over `x`.
    pub fn superset_member_indices(&self, x: &ItemSet) -> ItemSet {
        let mut hits = ItemSet::full(self.members);
        for item in x {
            hits.intersect_with(&self.ones[item - 1]);
            if hits.is_empty() {
                break;
            }
        }
        hits
    }
}

pub fn build_zeros_index(family: &[ItemSet], universe: Universe) -> Result<ZerosIndex> {
    ZerosIndex::build(family, universe)
}

pub fn subset_member_indices(index: &ZerosIndex, x: &ItemSet) -> ItemSet {
    index.subset_member_indices(x)
}

/// Bookkeeping of one sieve run: `found ⊆ candidates`, and the run ends as
/// soon as the two coincide.
#[derive(Clone, Debug)]
struct SieveState {
    candidates: ItemSet,
    found: Vec<usize>,
    card_buckets: Vec<Vec<usize>>,
}

impl SieveState {
    fn new(family: &[ItemSet], universe: Universe, members: Universe) -> Self {
        let mut card_buckets = vec![Vec::new(); universe.size() + 1];
        for (j, member) in family.iter().enumerate() {
            card_buckets[member.len()].push(j + 1);
        }
        SieveState {
            candidates: ItemSet::full(members),
            found: Vec::new(),
            card_buckets,
        }
    }

    fn done(&self) -> bool {
        self.found.len() == self.candidates.len()
    }

    fn run<I, F>(mut self, bucket_order: I, family: &[ItemSet], comparable: F) -> Vec<usize>
    where
        I: Iterator<Item = usize>,
        F: Fn(&ItemSet) -> ItemSet,
    {
        let buckets = std::mem::take(&mut self.card_buckets);
        'outer: for card in bucket_order {
            for &j in &buckets[card] {
                // already dominated or a later duplicate of a processed set
                if !self.candidates.contains(j) {
                    continue;
                }
                let dominated = comparable(&family[j - 1]);
                self.candidates.difference_with(&dominated);
                self.candidates.insert(j);
                self.found.push(j);
                if self.done() {
                    break 'outer;
                }
            }
        }
        self.found
    }
}

/// Indices of the inclusion-maximal members, one per distinct maximal set
/// (the lowest index among duplicates), in the order they were confirmed.
pub fn max_sieve(family: &[ItemSet], universe: Universe) -> Result<Vec<usize>> {
    let index = ZerosIndex::build(family, universe)?;
    let state = SieveState::new(family, universe, index.members);
    Ok(state.run((0..=universe.size()).rev(), family, |x| {
        index.subset_member_indices(x)
    }))
}

/// Dual of [`max_sieve`]: indices of the inclusion-minimal members.
pub fn min_sieve(family: &[ItemSet], universe: Universe) -> Result<Vec<usize>> {
    let index = OnesIndex::build(family, universe)?;
    let state = SieveState::new(family, universe, index.members);
    Ok(state.run(0..=universe.size(), family, |x| {
        index.superset_member_indices(x)
    }))
}

/// The distinct inclusion-minimal members of `family`, in shortlex order.
/// An empty family yields an empty result.
pub fn minimal_members(family: Vec<ItemSet>, universe: Universe) -> Result<Vec<ItemSet>> {
    if family.is_empty() {
        return Ok(family);
    }
    let keep = min_sieve(&family, universe)?;
    let mut slots: Vec<Option<ItemSet>> = family.into_iter().map(Some).collect();
    let mut out: Vec<ItemSet> = keep
        .into_iter()
        .map(|j| slots[j - 1].take().expect("indices are distinct"))
        .collect();
    out.sort();
    Ok(out)
}

/// Number of transactions containing `x`, by intersecting tidlists over `x`.
/// The empty set is contained in every transaction.
pub fn support(db: &TransactionDb, x: &ItemSet) -> usize {
    db.tidlists().superset_member_indices(x).len()
}

pub fn is_frequent(db: &TransactionDb, config: MiningConfig, x: &ItemSet) -> bool {
    support(db, x) >= config.alpha()
}

/// A set system with nonempty edges.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    universe: Universe,
    edges: Vec<ItemSet>,
}

impl Hypergraph {
    pub fn new(universe: Universe, edges: Vec<ItemSet>) -> Result<Self> {
        for (index, edge) in edges.iter().enumerate() {
            universe.check_same(edge.universe())?;
            if edge.is_empty() {
                return Err(Error::EmptyEdge { index });
            }
        }
        Ok(Hypergraph { universe, edges })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn edges(&self) -> &[ItemSet] {
        &self.edges
    }
}

/// All inclusion-minimal sets meeting every edge, in shortlex order.
///
/// Edges are absorbed one at a time: a partial transversal already meeting
/// the edge is kept, any other is extended by each item of the edge, and the
/// result is min-sieved before the next edge.
pub fn minimal_transversals(h: &Hypergraph) -> Vec<ItemSet> {
    let universe = h.universe;
    let mut partial = vec![ItemSet::empty(universe)];
    for edge in &h.edges {
        let mut next = Vec::with_capacity(partial.len());
        for t in partial {
            if t.intersects(edge) {
                next.push(t);
            } else {
                next.extend(edge.iter().map(|x| t.with(x)));
            }
        }
        partial = minimal_members(next, universe).expect("family shares the universe");
    }
    partial.sort();
    partial
}
