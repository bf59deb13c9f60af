//! JSON shapes for machine-readable output. Counts are decimal strings since
//! they routinely exceed 64 bits.

use facetmine::{CompressedComplex, ItemSet, Row012e};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
    pub dontcares: Vec<usize>,
    pub egroups: Vec<Vec<usize>>,
    pub count: String,
}

impl From<&Row012e> for JsonRow {
    fn from(row: &Row012e) -> Self {
        JsonRow {
            ones: row.ones().to_vec(),
            zeros: row.zeros().to_vec(),
            dontcares: row.dontcares().to_vec(),
            egroups: row.egroups().iter().map(ItemSet::to_vec).collect(),
            count: row.cardinality().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub universe: usize,
    pub rows: Vec<JsonRow>,
    pub total: String,
}

impl From<&CompressedComplex> for JsonComplex {
    fn from(c: &CompressedComplex) -> Self {
        JsonComplex {
            universe: c.universe().size(),
            rows: c.rows().iter().map(JsonRow::from).collect(),
            total: c.total_count().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFacets {
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTotal {
    pub total: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSizeCount {
    pub k: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSupersets {
    pub set: Vec<usize>,
    pub count: String,
    pub per_row: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDelta {
    pub alpha: usize,
    pub frequent: String,
    pub frequent_above: String,
    pub delta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMaxset {
    pub index: usize,
    pub items: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMaxsets {
    pub maxsets: Vec<JsonMaxset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVerify {
    pub ok: bool,
    pub rows: usize,
    pub reference: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStats {
    pub transactions: usize,
    pub universe: usize,
    pub item_occurrences: usize,
}
