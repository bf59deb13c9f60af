//! Command-line driver for facetmine: parse transaction files, mine facets,
//! compress the frequent sets and answer counting queries.

pub mod input;
pub mod output;
pub mod run;

pub use input::{parse_transactions, parse_transactions_with_universe, ParseError};
pub use run::{run, Command, Format, RunConfig};
