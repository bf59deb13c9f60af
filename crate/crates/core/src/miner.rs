//! Find-All-Facets: enumerate the facets of a simplicial complex that is only
//! known through a membership test.
//!
//! The miner keeps a list of found facets `F_1..F_t` and a list of generators
//! `G_1..G_s` such that every face lies either below some `F_i` or above some
//! `G_j`, never both. A step extends a generator that is a face to a new facet
//! `F`, then replaces each generator `G ⊆ F` by the sets `G ∪ {x}` for `x ∉ F`.
//! Expansions that are not faces are dropped and the survivors are min-sieved.
//! Mining stops once no generator is left.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::db::{MiningConfig, TransactionDb};
use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};
use crate::vertical::{is_frequent, minimal_members, minimal_transversals, Hypergraph};

/// A decidable simplicial complex.
///
/// Implementations must be hereditary (a subset of a face is a face); this is
/// assumed, not checked. `is_face` takes `&self` so one oracle can serve
/// concurrent read-only queries.
pub trait MembershipOracle {
    fn universe(&self) -> Universe;
    fn is_face(&self, x: &ItemSet) -> bool;
}

impl<O: MembershipOracle + ?Sized> MembershipOracle for &O {
    fn universe(&self) -> Universe {
        (**self).universe()
    }

    fn is_face(&self, x: &ItemSet) -> bool {
        (**self).is_face(x)
    }
}

/// The complex of `alpha`-frequent itemsets of a database.
#[derive(Clone, Copy, Debug)]
pub struct FrequencyOracle<'a> {
    db: &'a TransactionDb,
    config: MiningConfig,
}

impl<'a> FrequencyOracle<'a> {
    pub fn new(db: &'a TransactionDb, config: MiningConfig) -> Self {
        FrequencyOracle { db, config }
    }
}

impl MembershipOracle for FrequencyOracle<'_> {
    fn universe(&self) -> Universe {
        self.db.universe()
    }

    fn is_face(&self, x: &ItemSet) -> bool {
        is_frequent(self.db, self.config, x)
    }
}

/// An oracle backed by a closure.
pub struct FnOracle<F> {
    universe: Universe,
    decide: F,
}

impl<F: Fn(&ItemSet) -> bool> FnOracle<F> {
    pub fn new(universe: Universe, decide: F) -> Self {
        FnOracle { universe, decide }
    }
}

impl<F: Fn(&ItemSet) -> bool> MembershipOracle for FnOracle<F> {
    fn universe(&self) -> Universe {
        self.universe
    }

    fn is_face(&self, x: &ItemSet) -> bool {
        (self.decide)(x)
    }
}

/// Wraps an oracle and counts `is_face` calls.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    calls: AtomicUsize,
}

impl<O: MembershipOracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(AtomicOrdering::Relaxed)
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: MembershipOracle> MembershipOracle for CountingOracle<O> {
    fn universe(&self) -> Universe {
        self.inner.universe()
    }

    fn is_face(&self, x: &ItemSet) -> bool {
        self.calls.fetch_add(1, AtomicOrdering::Relaxed);
        self.inner.is_face(x)
    }
}

/// Deterministic ascending order, or a seeded shuffle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    #[default]
    Ascending,
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinerOptions {
    /// Order in which outside items are tried when growing a face.
    pub extension: Order,
    /// `Ascending` extends the first generator in shortlex order; `Seeded`
    /// picks a random one.
    pub selection: Order,
    /// Min-sieve generators after each update. Turning this off leaves
    /// redundant generators in place; results are unchanged, only cost grows.
    pub sieve: bool,
}

impl Default for MinerOptions {
    fn default() -> Self {
        MinerOptions {
            extension: Order::Ascending,
            selection: Order::Ascending,
            sieve: true,
        }
    }
}

/// Found facets plus the generators of the unexplored part of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorState {
    universe: Universe,
    generators: Vec<ItemSet>,
    facets: Vec<ItemSet>,
    // generators not yet confirmed to be faces (warm starts)
    unchecked: bool,
}

impl GeneratorState {
    /// Nothing found yet: the single generator `∅` covers the whole complex.
    pub fn initial(universe: Universe) -> Self {
        GeneratorState {
            universe,
            generators: vec![ItemSet::empty(universe)],
            facets: Vec::new(),
            unchecked: true,
        }
    }

    /// A state from explicitly given parts. Generators that turn out not to
    /// be faces are dropped when mining resumes.
    pub fn from_parts(
        universe: Universe,
        facets: Vec<ItemSet>,
        generators: Vec<ItemSet>,
    ) -> Result<Self> {
        for s in facets.iter().chain(generators.iter()) {
            universe.check_same(s.universe())?;
        }
        Ok(GeneratorState {
            universe,
            generators,
            facets,
            unchecked: true,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn generators(&self) -> &[ItemSet] {
        &self.generators
    }

    pub fn facets(&self) -> &[ItemSet] {
        &self.facets
    }

    pub fn is_exhausted(&self) -> bool {
        self.generators.is_empty()
    }

    fn drop_non_faces<O: MembershipOracle>(&mut self, oracle: &O) {
        if self.unchecked {
            self.generators.retain(|g| oracle.is_face(g));
            self.unchecked = false;
        }
    }

    /// Records `facet` and rewrites the generators so that the faces below it
    /// leave the generated filter.
    pub fn absorb_facet<O: MembershipOracle>(&mut self, facet: ItemSet, oracle: &O, sieve: bool) {
        self.drop_non_faces(oracle);
        let outside = facet.complement();

        let mut kept = Vec::new();
        let mut expansions = Vec::new();
        for g in std::mem::take(&mut self.generators) {
            if g.intersects(&outside) {
                kept.push(g);
            } else {
                expansions.extend(outside.iter().map(|x| g.with(x)));
            }
        }
        expansions.sort();
        expansions.dedup();
        // non-faces go first; no superset of a non-face can be a face
        kept.extend(expansions.into_iter().filter(|h| oracle.is_face(h)));

        self.generators = if sieve {
            minimal_members(kept, self.universe).expect("generators share the universe")
        } else {
            kept.sort();
            kept.dedup();
            kept
        };
        self.facets.push(facet);
    }
}

/// Grows `seed` to a facet, trying outside items in the given order.
///
/// One pass suffices: an item rejected once stays rejected, since the face
/// only grows afterwards.
fn grow<O: MembershipOracle>(oracle: &O, seed: &ItemSet, order: &[usize]) -> ItemSet {
    let mut face = seed.clone();
    for &x in order {
        if face.contains(x) {
            continue;
        }
        let bigger = face.with(x);
        if oracle.is_face(&bigger) {
            face = bigger;
        }
    }
    face
}

/// Extends a face to a facet, trying items in ascending order.
pub fn extend_to_facet<O: MembershipOracle>(oracle: &O, seed: &ItemSet) -> Result<ItemSet> {
    oracle.universe().check_same(seed.universe())?;
    if !oracle.is_face(seed) {
        return Err(Error::NotAFace {
            seed: format!("{seed:?}"),
        });
    }
    let order: Vec<usize> = oracle.universe().items().collect();
    Ok(grow(oracle, seed, &order))
}

/// One sieved generator update; see [`GeneratorState::absorb_facet`].
pub fn update_generators<O: MembershipOracle>(
    mut state: GeneratorState,
    new_facet: ItemSet,
    oracle: &O,
) -> GeneratorState {
    state.absorb_facet(new_facet, oracle, true);
    state
}

/// Generators for a complex whose facets `known` are already known: the
/// minimal transversals of their complements. A facet equal to the whole
/// universe leaves nothing to generate.
pub fn seed_from_facets(known: &[ItemSet], universe: Universe) -> Result<GeneratorState> {
    for f in known {
        universe.check_same(f.universe())?;
    }
    for (i, a) in known.iter().enumerate() {
        for (j, b) in known.iter().enumerate().skip(i + 1) {
            if a.is_subset(b) || b.is_subset(a) {
                return Err(Error::ComparableFacets {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }
    let complements: Vec<ItemSet> = known.iter().map(ItemSet::complement).collect();
    let generators = if complements.iter().any(ItemSet::is_empty) {
        Vec::new()
    } else {
        minimal_transversals(&Hypergraph::new(universe, complements)?)
    };
    Ok(GeneratorState {
        universe,
        generators,
        facets: known.to_vec(),
        unchecked: true,
    })
}

/// Drives the facet search over a [`MembershipOracle`].
pub struct FacetMiner<O> {
    oracle: O,
    options: MinerOptions,
    state: GeneratorState,
    extension_rng: Option<SplitMix64>,
    selection_rng: Option<SplitMix64>,
}

impl<O: MembershipOracle> FacetMiner<O> {
    pub fn new(oracle: O, options: MinerOptions) -> Self {
        let state = GeneratorState::initial(oracle.universe());
        Self::resume(oracle, options, state)
    }

    /// Continues from a previously built state, e.g. one from [`seed_from_facets`].
    pub fn resume(oracle: O, options: MinerOptions, state: GeneratorState) -> Self {
        let rng = |order: Order| match order {
            Order::Ascending => None,
            Order::Seeded(seed) => Some(SplitMix64::seed_from_u64(seed)),
        };
        FacetMiner {
            extension_rng: rng(options.extension),
            selection_rng: rng(options.selection),
            oracle,
            options,
            state,
        }
    }

    pub fn state(&self) -> &GeneratorState {
        &self.state
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn into_state(self) -> GeneratorState {
        self.state
    }

    /// Finds one more facet, or returns `None` once the generators are
    /// exhausted and every facet has been found.
    pub fn step(&mut self) -> Option<ItemSet> {
        self.state.drop_non_faces(&self.oracle);
        if self.state.generators.is_empty() {
            return None;
        }

        let pick = match self.selection_rng.as_mut() {
            None => 0,
            Some(rng) => rng.random_range(0..self.state.generators.len()),
        };
        let seed = self.state.generators[pick].clone();

        let mut order: Vec<usize> = self.state.universe.items().collect();
        if let Some(rng) = self.extension_rng.as_mut() {
            order.shuffle(rng);
        }
        let facet = grow(&self.oracle, &seed, &order);
        self.state
            .absorb_facet(facet.clone(), &self.oracle, self.options.sieve);
        Some(facet)
    }

    /// All remaining facets, then the complete list in discovery order.
    pub fn run(mut self) -> Vec<ItemSet> {
        while self.step().is_some() {}
        self.state.facets
    }
}

/// All facets of the complex, in discovery order. Empty when `∅` is not a face.
pub fn find_all_facets<O: MembershipOracle>(oracle: &O) -> Vec<ItemSet> {
    FacetMiner::new(oracle, MinerOptions::default()).run()
}

/// Facets of the `alpha`-frequent itemsets of `db`, in discovery order.
pub fn mine_frequent(db: &TransactionDb, config: MiningConfig) -> Vec<ItemSet> {
    find_all_facets(&FrequencyOracle::new(db, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(w: usize) -> Universe {
        Universe::new(w).unwrap()
    }

    fn set(w: usize, items: impl IntoIterator<Item = usize>) -> ItemSet {
        ItemSet::from_items(u(w), items).unwrap()
    }

    fn table4() -> TransactionDb {
        TransactionDb::from_item_lists(
            u(9),
            [
                vec![1, 2, 3, 5, 6, 7, 9],
                vec![2, 4, 5, 8, 9],
                vec![3, 4, 6, 7, 8, 9],
                vec![1, 2, 3, 4, 5, 6, 7, 8],
                vec![1, 2, 4, 5, 7, 8, 9],
                vec![1, 3, 6, 7, 9],
            ],
        )
        .unwrap()
    }

    fn alpha(a: usize) -> MiningConfig {
        MiningConfig::new(a).unwrap()
    }

    #[test]
    fn extend_examples() {
        let db = table4();
        let oracle = FrequencyOracle::new(&db, alpha(2));
        assert_eq!(
            extend_to_facet(&oracle, &set(9, [2])).unwrap(),
            set(9, [1, 2, 3, 5, 6, 7])
        );
        assert_eq!(
            extend_to_facet(&oracle, &set(9, [5, 9, 7])).unwrap(),
            set(9, [1, 2, 5, 7, 9])
        );
        let facet = set(9, [1, 3, 6, 7, 9]);
        assert_eq!(extend_to_facet(&oracle, &facet).unwrap(), facet);
    }

    #[test]
    fn extend_rejects_non_face() {
        let db = table4();
        let oracle = FrequencyOracle::new(&db, alpha(2));
        assert!(matches!(
            extend_to_facet(&oracle, &set(9, [2, 3, 9])),
            Err(Error::NotAFace { .. })
        ));
    }

    #[test]
    fn update_examples() {
        let db = table4();
        let oracle = FrequencyOracle::new(&db, alpha(2));
        let state = GeneratorState::from_parts(
            u(9),
            vec![set(9, [1, 3, 6, 7, 9])],
            vec![set(9, [2]), set(9, [4]), set(9, [5]), set(9, [8])],
        )
        .unwrap();
        let state = update_generators(state, set(9, [1, 2, 3, 5, 6, 7]), &oracle);
        assert_eq!(
            state.generators(),
            &[set(9, [4]), set(9, [8]), set(9, [2, 9]), set(9, [5, 9])]
        );
        assert_eq!(state.facets().len(), 2);

        let state =
            GeneratorState::from_parts(u(9), vec![], vec![set(9, [4, 7, 9]), set(9, [7, 8, 9])])
                .unwrap();
        let counting = CountingOracle::new(&oracle);
        let state = update_generators(state, set(9, [4, 7, 8, 9]), &counting);
        assert!(state.generators().is_empty());
        // 2 generator checks plus the ten expansions
        assert_eq!(counting.calls(), 12);
    }

    #[test]
    fn full_facet_empties_generators() {
        let oracle = FnOracle::new(u(4), |_: &ItemSet| true);
        let state = update_generators(GeneratorState::initial(u(4)), set(4, 1..=4), &oracle);
        assert!(state.is_exhausted());
        assert_eq!(find_all_facets(&oracle), vec![set(4, 1..=4)]);
    }

    #[test]
    fn table4_facets() {
        let mut got = mine_frequent(&table4(), alpha(2));
        got.sort();
        let mut want = vec![
            set(9, [1, 3, 6, 7, 9]),
            set(9, [1, 2, 3, 5, 6, 7]),
            set(9, [2, 4, 5, 8, 9]),
            set(9, [1, 2, 5, 7, 9]),
            set(9, [3, 4, 6, 7, 8]),
            set(9, [1, 2, 4, 5, 7, 8]),
            set(9, [4, 7, 8, 9]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_complex() {
        assert!(mine_frequent(&table4(), alpha(7)).is_empty());
    }

    #[test]
    fn seeding() {
        let state = seed_from_facets(&[set(9, [1, 3, 6, 7, 9])], u(9)).unwrap();
        assert_eq!(
            state.generators(),
            &[set(9, [2]), set(9, [4]), set(9, [5]), set(9, [8])]
        );
        let state = seed_from_facets(&[set(5, 1..=5)], u(5)).unwrap();
        assert!(state.is_exhausted());
        assert_eq!(
            seed_from_facets(&[set(3, [1]), set(3, [1, 2])], u(3)).unwrap_err(),
            Error::ComparableFacets {
                first: 1,
                second: 2
            }
        );
    }

    #[test]
    fn resumed_run_finishes_the_complex() {
        let db = table4();
        let oracle = FrequencyOracle::new(&db, alpha(2));
        let state = seed_from_facets(&[set(9, [1, 3, 6, 7, 9])], u(9)).unwrap();
        let mut facets = FacetMiner::resume(&oracle, MinerOptions::default(), state).run();
        facets.sort();
        let mut full = mine_frequent(&db, alpha(2));
        full.sort();
        assert_eq!(facets, full);
    }
}
