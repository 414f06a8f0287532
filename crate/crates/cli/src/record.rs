//! The record emitted for every evaluated input, and the digit metadata
//! attached to it. Values are exact strings: naturals in decimal,
//! rationals as `p/q`.

use floorsum::radix::expand;
use floorsum::{Natural, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitMetadata {
    pub expansion: String,
    pub digit_sum: String,
    /// `m`; absent for `n = 0`.
    pub leading_pos: Option<u64>,
    /// `ν_b(n)`; absent for `n = 0`.
    pub valuation: Option<u64>,
    /// Digits in weakly decreasing order.
    pub partition: Vec<String>,
    /// `λ′_1..λ′_{b-1}`; absent when `b` is too large to lay out.
    pub conjugate: Option<Vec<u64>>,
}

impl DigitMetadata {
    pub fn of(n: &Natural, base: &Natural) -> Result<Self> {
        let e = expand(n, base)?;
        Ok(DigitMetadata {
            expansion: e.to_string(),
            digit_sum: e.digit_sum().to_string(),
            leading_pos: e.leading_pos().ok(),
            valuation: e.valuation().ok(),
            partition: e.partition().parts().iter().map(ToString::to_string).collect(),
            conjugate: e
                .conjugate()
                .counts()
                .ok()
                .map(|c| c.into_iter().map(|v| v as u64).collect()),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    /// Family label such as `floor` or `sawtooth-double`.
    pub family: Option<String>,
    /// The natural argument; for the ceil family this is `⌈x⌉`.
    pub n: Option<String>,
    /// The rational argument of the ceil family.
    pub x: Option<String>,
    pub base: String,
    pub j: Option<String>,
    pub closed_value: Option<String>,
    pub direct_value: Option<String>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub digits: Option<DigitMetadata>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// One flat CSV row.
#[derive(Serialize)]
pub struct CsvRow<'a> {
    family: &'a str,
    n: &'a str,
    x: &'a str,
    base: &'a str,
    j: &'a str,
    closed_value: &'a str,
    direct_value: &'a str,
    #[serde(rename = "match")]
    matches: &'a str,
    notes: String,
}

impl<'a> From<&'a OutputRecord> for CsvRow<'a> {
    fn from(r: &'a OutputRecord) -> Self {
        let s = |v: &'a Option<String>| v.as_deref().unwrap_or("");
        CsvRow {
            family: s(&r.family),
            n: s(&r.n),
            x: s(&r.x),
            base: &r.base,
            j: s(&r.j),
            closed_value: s(&r.closed_value),
            direct_value: s(&r.direct_value),
            matches: match r.matches {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            },
            notes: r.notes.join("; "),
        }
    }
}
