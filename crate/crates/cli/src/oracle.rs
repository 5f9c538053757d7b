//! Field-by-field comparison of reports against externally computed
//! reference data: a JSON array of `{polynomial, d_K, index, splittings, t}`.
//! Integers may be JSON numbers or decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::parse::parse_polynomial;
use crate::report::FieldReport;

#[derive(Debug, Deserialize)]
struct RawSplitting {
    p: Value,
    shape: Vec<(u32, u32)>,
}

#[derive(Debug, Deserialize)]
struct RawEntry {
    polynomial: String,
    #[serde(rename = "d_K")]
    d_k: Value,
    index: Value,
    splittings: Vec<RawSplitting>,
    t: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleEntry {
    pub polynomial: String,
    pub d_k: BigInt,
    pub index: BigInt,
    /// `p -> shape` with shapes sorted descending.
    pub splittings: BTreeMap<BigInt, Vec<(u32, u32)>>,
    pub t: BigInt,
}

fn int(v: &Value, what: &str) -> Result<BigInt, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(format!("{what}: expected an integer, got {v}")),
    };
    text.parse().map_err(|_| format!("{what}: invalid integer {text:?}"))
}

fn canonical_shape(mut shape: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    shape.sort_unstable_by(|a, b| b.cmp(a));
    shape
}

pub fn parse_oracle(text: &str) -> Result<Vec<OracleEntry>, String> {
    let raw: Vec<RawEntry> = serde_json::from_str(text).map_err(|e| format!("oracle schema: {e}"))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, r)| {
            let f = parse_polynomial(&r.polynomial).map_err(|e| format!("entry {i}: polynomial: {e}"))?;
            let mut splittings = BTreeMap::new();
            for s in r.splittings {
                splittings.insert(int(&s.p, "p")?, canonical_shape(s.shape));
            }
            Ok(OracleEntry {
                polynomial: f.to_string(),
                d_k: int(&r.d_k, "d_K")?,
                index: int(&r.index, "index")?,
                splittings,
                t: int(&r.t, "t")?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffSummary {
    pub compared: usize,
    pub mismatches: Vec<String>,
    /// Locally analyzed fields absent from the oracle.
    pub gaps: Vec<String>,
    /// Oracle entries with no local report.
    pub unused: usize,
}

impl DiffSummary {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.gaps.is_empty()
    }
}

pub fn diff(reports: &[FieldReport], oracle: &[OracleEntry]) -> DiffSummary {
    let by_poly: BTreeMap<&str, &OracleEntry> = oracle.iter().map(|e| (e.polynomial.as_str(), e)).collect();
    let mut out = DiffSummary::default();
    let mut used = 0;
    for r in reports {
        let key = r.parsed_polynomial().to_string();
        let Some(o) = by_poly.get(key.as_str()) else {
            out.gaps.push(format!("{key}: missing from oracle"));
            continue;
        };
        used += 1;
        out.compared += 1;
        let mut field = |name: &str, local: String, theirs: String| {
            if local != theirs {
                out.mismatches.push(format!("{key}: {name} local={local} oracle={theirs}"));
            }
        };
        field("d_K", r.d_k.0.to_string(), o.d_k.to_string());
        field("index", r.index.0.to_string(), o.index.to_string());
        field("t", r.t.0.to_string(), o.t.to_string());
        let local: BTreeMap<BigInt, Vec<(u32, u32)>> = r
            .splittings
            .iter()
            .map(|s| (s.p.0.clone(), canonical_shape(s.shape.clone())))
            .collect();
        field("splittings", format!("{local:?}"), format!("{:?}", o.splittings));
    }
    out.unused = by_poly.len() - used.min(by_poly.len());
    out
}
