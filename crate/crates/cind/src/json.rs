//! JSON forms of check reports and measuring tables.

use cind_core::{Bounds, Measuring, Report};
use serde::{Deserialize, Serialize};

use crate::Outcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub claim: String,
    pub instance: String,
    pub status: String,
    pub witnesses: Vec<String>,
}

impl From<&Report> for JsonReport {
    fn from(r: &Report) -> Self {
        JsonReport {
            claim: r.claim.clone(),
            instance: r.instance.clone(),
            status: r.status.as_str().to_string(),
            witnesses: r.witnesses.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOutcome {
    pub status: String,
    pub reports: Vec<JsonReport>,
}

impl From<&Outcome> for JsonOutcome {
    fn from(o: &Outcome) -> Self {
        JsonOutcome {
            status: o.status().as_str().to_string(),
            reports: o.checks.iter().map(|c| JsonReport::from(&c.report)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonRow {
    pub coalgebra_state: String,
    pub input: String,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTable {
    pub measuring: String,
    pub coalgebra: String,
    pub source: String,
    pub target: String,
    pub rows: Vec<JsonRow>,
}

impl JsonTable {
    /// Rows over the source carrier, enumerated to the depth bound when it is
    /// infinite.
    pub fn new(m: &Measuring, bounds: &Bounds) -> cind_core::Result<Self> {
        let rows = m
            .rows(bounds)?
            .into_iter()
            .map(|(coalgebra_state, input, output)| JsonRow { coalgebra_state, input, output })
            .collect();
        Ok(JsonTable {
            measuring: m.name().to_string(),
            coalgebra: m.coalg().name().to_string(),
            source: m.source().name().to_string(),
            target: m.target().name().to_string(),
            rows,
        })
    }
}
