//! Facets-To-Faces: rewrite `P(F_1) ∪ ... ∪ P(F_t)` as a disjoint union of
//! 012e-rows, and count faces on the compressed form.
//!
//! Facet `F_i` contributes `P(F_i) \ (P(F_1) ∪ ... ∪ P(F_{i-1}))`: the subsets
//! of `F_i` that hit every constraint `F_i \ F_j`, `j < i`. Only the minimal
//! constraints matter. When those are pairwise disjoint they become the
//! e-groups of a single row; otherwise the facet is split on a pivot item into
//! a branch with the pivot set to 1 and one with it set to 0.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::db::{MiningConfig, TransactionDb};
use crate::error::{Error, Result};
use crate::itemset::{ItemSet, Universe};
use crate::miner::mine_frequent;
use crate::row::Row012e;
use crate::vertical::minimal_members;

/// A disjoint row cover of the complex generated by `source_facets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedComplex {
    universe: Universe,
    rows: Vec<Row012e>,
    source_facets: Vec<ItemSet>,
    rows_per_facet: Vec<usize>,
}

/// Aggregate counts over a row list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub total: BigUint,
    /// Entry `k` counts the faces of cardinality `k`.
    pub by_size: Vec<BigUint>,
    pub per_row: Vec<BigUint>,
}

impl CompressedComplex {
    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn rows(&self) -> &[Row012e] {
        &self.rows
    }

    pub fn source_facets(&self) -> &[ItemSet] {
        &self.source_facets
    }

    /// Number of rows emitted for each source facet, in facet order.
    pub fn rows_per_facet(&self) -> &[usize] {
        &self.rows_per_facet
    }

    pub fn total_count(&self) -> BigUint {
        self.rows.iter().map(Row012e::cardinality).sum()
    }

    pub fn count_faces_of_size(&self, k: usize) -> BigUint {
        self.rows
            .iter()
            .filter_map(|row| face_count_polynomial(row).into_iter().nth(k))
            .sum()
    }

    /// Per-row counts of members containing `x`.
    pub fn superset_counts(&self, x: &ItemSet) -> Result<Vec<BigUint>> {
        self.universe.check_same(x.universe())?;
        Ok(self.rows.iter().map(|row| row_supersets(row, x)).collect())
    }

    /// Number of faces containing `x`.
    pub fn count_supersets(&self, x: &ItemSet) -> Result<BigUint> {
        Ok(self.superset_counts(x)?.into_iter().sum())
    }

    pub fn report(&self) -> CountReport {
        let mut by_size = vec![BigUint::zero(); self.universe.size() + 1];
        let mut per_row = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let poly = face_count_polynomial(row);
            per_row.push(poly.iter().sum());
            for (slot, c) in by_size.iter_mut().zip(poly) {
                *slot += c;
            }
        }
        CountReport {
            total: per_row.iter().sum(),
            by_size,
            per_row,
        }
    }
}

fn row_supersets(row: &Row012e, x: &ItemSet) -> BigUint {
    if row.zeros().intersects(x) {
        return BigUint::zero();
    }
    let mut free = row.dontcares().difference(x).len();
    let mut count = BigUint::one();
    for g in row.egroups() {
        let rest = g.difference(x).len();
        if g.intersects(x) {
            free += rest;
        } else {
            count *= (BigUint::one() << rest) - BigUint::one();
        }
    }
    count << free
}

/// Coefficients of `x^|ones| (1+x)^|dontcares| prod_g ((1+x)^|g| - 1)`, so
/// entry `k` is the number of size-`k` members of the row. Length `w + 1`.
pub fn face_count_polynomial(row: &Row012e) -> Vec<BigUint> {
    let w = row.universe().size();
    let mut poly = vec![BigUint::zero(); w + 1];
    poly[row.ones().len()] = BigUint::one();

    let binomial_row = |n: usize| -> Vec<BigUint> {
        let mut c = vec![BigUint::one()];
        for k in 1..=n {
            let next = &c[k - 1] * BigUint::from(n - k + 1) / BigUint::from(k);
            c.push(next);
        }
        c
    };
    let mul = |poly: &[BigUint], factor: &[BigUint]| -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); w + 1];
        for (i, a) in poly.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in factor.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if i + j <= w {
                    out[i + j] += a * b;
                }
            }
        }
        out
    };

    poly = mul(&poly, &binomial_row(row.dontcares().len()));
    for g in row.egroups() {
        let mut factor = binomial_row(g.len());
        factor[0] = BigUint::zero();
        poly = mul(&poly, &factor);
    }
    poly
}

/// Compresses the complex generated by `facets`, processing facets in the
/// given order. An empty facet list yields an empty complex.
pub fn facets_to_faces(facets: &[ItemSet], universe: Universe) -> Result<CompressedComplex> {
    for f in facets {
        universe.check_same(f.universe())?;
    }
    for (i, a) in facets.iter().enumerate() {
        for (j, b) in facets.iter().enumerate().skip(i + 1) {
            if a.is_subset(b) || b.is_subset(a) {
                return Err(Error::ComparableFacets {
                    first: i + 1,
                    second: j + 1,
                });
            }
        }
    }

    let mut rows = Vec::new();
    let mut rows_per_facet = Vec::with_capacity(facets.len());
    for (i, facet) in facets.iter().enumerate() {
        let constraints: Vec<ItemSet> = facets[..i].iter().map(|prev| facet - prev).collect();
        let constraints = minimal_members(constraints, universe)?;
        let before = rows.len();
        split(
            Partial {
                ones: ItemSet::empty(universe),
                zeros: facet.complement(),
                free: facet.clone(),
            },
            constraints,
            &mut rows,
        )?;
        rows_per_facet.push(rows.len() - before);
    }

    Ok(CompressedComplex {
        universe,
        rows,
        source_facets: facets.to_vec(),
        rows_per_facet,
    })
}

struct Partial {
    ones: ItemSet,
    zeros: ItemSet,
    free: ItemSet,
}

/// Emits rows for the subsets of `partial.free` (with the fixed ones/zeros)
/// that hit every constraint. Constraints are min-sieved and lie in `free`.
fn split(partial: Partial, constraints: Vec<ItemSet>, rows: &mut Vec<Row012e>) -> Result<()> {
    let universe = partial.free.universe();

    let mut covered = ItemSet::empty(universe);
    let mut disjoint = true;
    for c in &constraints {
        if covered.intersects(c) {
            disjoint = false;
            break;
        }
        covered.union_with(c);
    }
    if disjoint {
        let dontcares = partial.free.difference(&covered);
        rows.push(Row012e::new(
            partial.ones,
            partial.zeros,
            dontcares,
            constraints,
        )?);
        return Ok(());
    }

    // pivot: the item in the most constraints, smallest on ties
    let mut occurrences = vec![0usize; universe.size() + 1];
    for c in &constraints {
        for x in c {
            occurrences[x] += 1;
        }
    }
    let pivot = (1..=universe.size())
        .max_by_key(|&x| (occurrences[x], std::cmp::Reverse(x)))
        .expect("universe is nonempty");

    let mut free = partial.free.clone();
    free.remove(pivot);

    // pivot = 1: every constraint holding it is met
    let met: Vec<ItemSet> = constraints
        .iter()
        .filter(|c| !c.contains(pivot))
        .cloned()
        .collect();
    split(
        Partial {
            ones: partial.ones.with(pivot),
            zeros: partial.zeros.clone(),
            free: free.clone(),
        },
        met,
        rows,
    )?;

    // pivot = 0: it no longer helps; a constraint left empty is unsatisfiable
    let mut shrunk = Vec::with_capacity(constraints.len());
    for mut c in constraints {
        c.remove(pivot);
        if c.is_empty() {
            return Ok(());
        }
        shrunk.push(c);
    }
    split(
        Partial {
            ones: partial.ones,
            zeros: partial.zeros.with(pivot),
            free,
        },
        minimal_members(shrunk, universe)?,
        rows,
    )
}

/// Mines the `alpha`-frequent facets of `db` and compresses them in
/// discovery order.
pub fn compress_frequent(db: &TransactionDb, config: MiningConfig) -> Result<CompressedComplex> {
    facets_to_faces(&mine_frequent(db, config), db.universe())
}

/// How many `alpha`-frequent itemsets are not `(alpha + 1)`-frequent, from
/// two full mine-and-compress runs.
pub fn threshold_delta(db: &TransactionDb, alpha: usize) -> Result<BigUint> {
    let at = compress_frequent(db, MiningConfig::new(alpha)?)?.total_count();
    let above = compress_frequent(db, MiningConfig::new(alpha + 1)?)?.total_count();
    Ok(at - above)
}
