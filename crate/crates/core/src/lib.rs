//! Maximal frequent itemsets and their wildcard compression.
//!
//! The pipeline has three stages:
//!
//! * [`miner`] finds every facet (maximal face) of a simplicial complex given
//!   only a membership test, such as "is this itemset frequent?".
//! * [`compress`] turns an ordered facet list into disjoint 012e-rows whose
//!   union is the whole complex.
//! * counting queries (totals, faces of a given size, supersets of a set) run
//!   directly on the rows.
//!
//! [`vertical`] provides the column-oriented indices behind support counting
//! and the max/min sieves used throughout; [`testkit`] holds brute-force
//! oracles for testing.
//!
//! ```
//! use facetmine::{compress_frequent, MiningConfig, TransactionDb, Universe};
//!
//! let universe = Universe::new(4).unwrap();
//! let db = TransactionDb::from_item_lists(
//!     universe,
//!     [vec![1, 2, 3], vec![1, 2, 4], vec![2, 3, 4]],
//! )
//! .unwrap();
//! let complex = compress_frequent(&db, MiningConfig::new(2).unwrap()).unwrap();
//! assert_eq!(complex.total_count(), 8u32.into());
//! ```

pub mod compress;
pub mod db;
pub mod error;
pub mod itemset;
pub mod miner;
pub mod row;
pub mod testkit;
pub mod vertical;

pub use compress::{
    compress_frequent, face_count_polynomial, facets_to_faces, threshold_delta, CompressedComplex,
    CountReport,
};
pub use db::{MiningConfig, TransactionDb};
pub use error::{Error, Result};
pub use itemset::{ItemSet, Universe};
pub use miner::{
    extend_to_facet, find_all_facets, mine_frequent, seed_from_facets, update_generators,
    CountingOracle, FacetMiner, FnOracle, FrequencyOracle, GeneratorState, MembershipOracle,
    MinerOptions, Order,
};
pub use row::Row012e;
pub use vertical::{
    build_zeros_index, is_frequent, max_sieve, min_sieve, minimal_members, minimal_transversals,
    subset_member_indices, support, Hypergraph, OnesIndex, ZerosIndex,
};
