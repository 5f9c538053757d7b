//! The persisted per-field report (`"schema": 1`). Integers are decimal
//! strings; every report is re-validated when read back.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use tracefield::analysis::{CounterexampleWitness, FieldAnalysis};
use tracefield::poly::{discriminant, IntPolynomial};
use tracefield::trace::ConjectureStatus;

use crate::parse::parse_polynomial;

pub const SCHEMA_VERSION: u32 = 1;

/// Arbitrary-precision integer serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dec(pub BigInt);

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigInt>()
            .map(Dec)
            .map_err(|_| serde::de::Error::custom(format!("invalid decimal integer {s:?}")))
    }
}

impl From<&BigInt> for Dec {
    fn from(v: &BigInt) -> Self {
        Dec(v.clone())
    }
}

fn decs(v: &[BigInt]) -> Vec<Dec> {
    v.iter().map(Dec::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralBasis {
    pub denominator: Dec,
    /// Row `i` over `denominator` is basis element `i` in the power basis.
    pub numerators: Vec<Vec<Dec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingReport {
    pub p: Dec,
    /// `[e, f]` pairs, descending.
    pub shape: Vec<(u32, u32)>,
    pub wild: bool,
    pub index_divides: bool,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaReport {
    pub prop1: bool,
    pub tame: bool,
    pub cor3: bool,
    pub thm4: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessReport {
    /// Coordinates over the integral basis of an element of trace 1.
    pub gamma: Vec<Dec>,
    pub wild_prime: Dec,
    /// A prime `p | n` with `p^2 | d_K`.
    pub failing_prime: Dec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldReport {
    pub schema: u32,
    pub polynomial: String,
    pub degree: usize,
    pub disc_of_poly: Dec,
    #[serde(rename = "d_K")]
    pub d_k: Dec,
    pub index: Dec,
    pub integral_basis: IntegralBasis,
    pub splittings: Vec<SplittingReport>,
    pub tame: bool,
    pub basis_traces: Vec<Dec>,
    pub t: Dec,
    /// Coordinates over the integral basis of an element of trace `t`.
    pub gamma: Vec<Dec>,
    pub criteria: CriteriaReport,
    pub conjecture_status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl FieldReport {
    pub fn from_analysis(a: &FieldAnalysis, timing_ms: Option<f64>) -> Self {
        let o = &a.order;
        let v = &a.verdict;
        FieldReport {
            schema: SCHEMA_VERSION,
            polynomial: a.poly.to_string(),
            degree: a.degree(),
            disc_of_poly: o.disc_poly().into(),
            d_k: o.disc().into(),
            index: o.index().into(),
            integral_basis: IntegralBasis {
                denominator: o.denom().into(),
                numerators: o.numerators().row_vecs().iter().map(|r| decs(r)).collect(),
            },
            splittings: a
                .splittings
                .iter()
                .map(|s| SplittingReport {
                    p: (&s.p).into(),
                    shape: s.shape.clone(),
                    wild: s.wild,
                    index_divides: s.index_divides,
                    text: s.to_string(),
                })
                .collect(),
            tame: a.tame,
            basis_traces: decs(&a.profile.basis_traces),
            t: (&a.profile.t).into(),
            gamma: decs(&a.profile.gamma_coords()),
            criteria: CriteriaReport {
                prop1: v.prop1_applies,
                tame: v.tame_applies,
                cor3: v.cor3_applies,
                thm4: v.thm4_applies,
                surjective: v.ground_truth_surjective,
            },
            conjecture_status: v.conjecture_status.as_str().to_string(),
            witness: a.witness.as_ref().map(witness_report),
            timing_ms,
        }
    }

    pub fn status(&self) -> Option<ConjectureStatus> {
        ConjectureStatus::parse(&self.conjecture_status)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Parses one JSON document and re-validates it.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let r: FieldReport = serde_json::from_str(text).map_err(|e| e.to_string())?;
        r.validate()?;
        Ok(r)
    }

    /// Internal consistency of a report, independent of how it was produced.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema != SCHEMA_VERSION {
            return Err(format!("unsupported schema {}", self.schema));
        }
        let f = parse_polynomial(&self.polynomial).map_err(|e| format!("polynomial: {e}"))?;
        let n = self.degree;
        if f.degree() != Some(n) || !f.is_monic() {
            return Err("polynomial degree does not match".into());
        }
        let disc = discriminant(&f).map_err(|e| e.to_string())?;
        if disc != self.disc_of_poly.0 {
            return Err("disc_of_poly does not match the polynomial".into());
        }
        let (d, idx, t) = (&self.d_k.0, &self.index.0, &self.t.0);
        if !idx.is_positive() || !t.is_positive() {
            return Err("index and t must be positive".into());
        }
        if d * idx * idx != self.disc_of_poly.0 {
            return Err("disc_of_poly != d_K * index^2".into());
        }
        if !(BigInt::from(n) % t).is_zero() {
            return Err("t does not divide n".into());
        }
        if !(d % (t * t)).is_zero() {
            return Err("t^2 does not divide d_K".into());
        }
        let basis = &self.integral_basis;
        if basis.numerators.len() != n || basis.numerators.iter().any(|r| r.len() != n) {
            return Err("integral basis is not n x n".into());
        }
        if self.basis_traces.len() != n || self.gamma.len() != n {
            return Err("basis_traces and gamma must have n entries".into());
        }
        let tr: BigInt = self.gamma.iter().zip(&self.basis_traces).map(|(a, b)| &a.0 * &b.0).sum();
        if &tr != t {
            return Err("gamma does not have trace t".into());
        }
        let g = self.basis_traces.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.0));
        if &g != t {
            return Err("t is not the gcd of the basis traces".into());
        }
        for s in &self.splittings {
            let sum: u64 = s.shape.iter().map(|&(e, f)| e as u64 * f as u64).sum();
            if sum != n as u64 {
                return Err(format!("splitting at {} has sum e*f = {sum}", s.p.0));
            }
            if !(d % &s.p.0).is_zero() {
                return Err(format!("{} listed but does not divide d_K", s.p.0));
            }
        }
        let status = self.status().ok_or_else(|| format!("unknown status {:?}", self.conjecture_status))?;
        if self.criteria.surjective != t.is_one() || self.criteria.tame != self.tame {
            return Err("criteria disagree with t or tame flag".into());
        }
        if (status == ConjectureStatus::Counterexample) != self.witness.is_some() {
            return Err("witness present iff status is counterexample".into());
        }
        Ok(())
    }

    /// One-screen human summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "polynomial      {}", self.polynomial);
        let _ = writeln!(s, "degree          {}", self.degree);
        let _ = writeln!(s, "disc(f)         {}", self.disc_of_poly.0);
        let _ = writeln!(s, "d_K             {}", self.d_k.0);
        let _ = writeln!(s, "index           {}", self.index.0);
        let _ = writeln!(s, "integral basis  (1/{}) x", self.integral_basis.denominator.0);
        for row in &self.integral_basis.numerators {
            let r: Vec<String> = row.iter().map(|c| c.0.to_string()).collect();
            let _ = writeln!(s, "                  [{}]", r.join(", "));
        }
        let _ = writeln!(s, "ramified primes");
        if self.splittings.is_empty() {
            let _ = writeln!(s, "                  none");
        }
        for sp in &self.splittings {
            let _ = writeln!(s, "                  {}", sp.text);
        }
        let _ = writeln!(s, "tame            {}", self.tame);
        let tr: Vec<String> = self.basis_traces.iter().map(|c| c.0.to_string()).collect();
        let _ = writeln!(s, "basis traces    [{}]", tr.join(", "));
        let _ = writeln!(s, "t               {}", self.t.0);
        let g: Vec<String> = self.gamma.iter().map(|c| c.0.to_string()).collect();
        let _ = writeln!(s, "gamma           [{}]  (trace {})", g.join(", "), self.t.0);
        let c = &self.criteria;
        let _ = writeln!(
            s,
            "criteria        prop1={} tame={} cor3={} thm4={} surjective={}",
            c.prop1, c.tame, c.cor3, c.thm4, c.surjective
        );
        let _ = writeln!(s, "status          {}", self.conjecture_status);
        if let Some(w) = &self.witness {
            let g: Vec<String> = w.gamma.iter().map(|c| c.0.to_string()).collect();
            let _ = writeln!(
                s,
                "witness         gamma=[{}] wild_prime={} failing_prime={}",
                g.join(", "),
                w.wild_prime.0,
                w.failing_prime.0
            );
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time            {ms:.3} ms");
        }
        s
    }

    pub fn parsed_polynomial(&self) -> IntPolynomial {
        parse_polynomial(&self.polynomial).expect("validated report")
    }
}

fn witness_report(w: &CounterexampleWitness) -> WitnessReport {
    WitnessReport {
        gamma: decs(&w.gamma.int_coords().expect("gamma is integral")),
        wild_prime: (&w.wild_prime).into(),
        failing_prime: (&w.failing_prime).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tracefield::analysis::{analyze, AnalysisConfig};

    fn report(text: &str) -> FieldReport {
        let f = parse_polynomial(text).unwrap();
        FieldReport::from_analysis(&analyze(&f, &AnalysisConfig::default()).unwrap(), None)
    }

    #[test]
    fn round_trip() {
        let r = report("x^3+x-6");
        let line = r.to_json_line();
        assert!(line.starts_with("{\"schema\":1,\"polynomial\":\"x^3+x-6\""));
        assert!(line.contains("\"d_K\":\"-244\""));
        assert!(!line.contains("timing_ms"));
        assert_eq!(FieldReport::from_json(&line).unwrap(), r);
    }

    #[test]
    fn tampering_is_detected() {
        let r = report("x^2-2");
        let mut bad = r.clone();
        bad.d_k = Dec(BigInt::from(2));
        assert!(bad.validate().is_err());
        let mut bad = r.clone();
        bad.t = Dec(BigInt::from(1));
        assert!(bad.validate().is_err());
        let mut bad = r;
        bad.schema = 2;
        assert!(bad.validate().is_err());
        assert!(FieldReport::from_json("{\"schema\":1}").is_err());
    }
}
