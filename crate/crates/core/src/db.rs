use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};
use crate::vertical::OnesIndex;

/// An ordered list of transactions with a per-item transaction-id index.
///
/// Transaction ids are 1-based and follow input order. Duplicates are kept.
#[derive(Clone, Debug)]
pub struct TransactionDb {
    universe: Universe,
    transactions: Vec<ItemSet>,
    tidlists: OnesIndex,
}

impl TransactionDb {
    pub fn new(universe: Universe, transactions: Vec<ItemSet>) -> Result<Self> {
        if transactions.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        let tidlists = OnesIndex::build(&transactions, universe)?;
        Ok(TransactionDb {
            universe,
            transactions,
            tidlists,
        })
    }

    /// Convenience constructor from plain item lists.
    pub fn from_item_lists<I, T>(universe: Universe, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = usize>,
    {
        let transactions = lists
            .into_iter()
            .map(|items| ItemSet::from_items(universe, items))
            .collect::<Result<Vec<_>>>()?;
        TransactionDb::new(universe, transactions)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn transactions(&self) -> &[ItemSet] {
        &self.transactions
    }

    /// The transaction with 1-based id `tid`.
    pub fn transaction(&self, tid: usize) -> Option<&ItemSet> {
        tid.checked_sub(1).and_then(|i| self.transactions.get(i))
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn tidlists(&self) -> &OnesIndex {
        &self.tidlists
    }
}

/// Support threshold for a mining run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MiningConfig {
    alpha: usize,
}

impl MiningConfig {
    pub fn new(alpha: usize) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::ZeroThreshold);
        }
        Ok(MiningConfig { alpha })
    }

    pub fn alpha(self) -> usize {
        self.alpha
    }
}
