//! End-to-end analysis of one field, with every structural invariant checked.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor, FactorConfig};
use crate::order::{maximal_order_with, FieldElement, OrderBasis};
use crate::poly::{is_irreducible_over_q, Irreducibility, IrreducibilityConfig, IntPolynomial};
use crate::ramification::{
    codifferent_index, is_tame_field, lemma1_valuation_check, ramified_primes, split_prime, CodifferentCheck,
    Lemma1Case, PrimeSplitting,
};
use crate::trace::{evaluate_criteria, trace_profile, verify_thm4_mechanics, ConjectureStatus, CriteriaVerdict, Thm4Report, TraceProfile};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisConfig {
    pub factor: FactorConfig,
    pub irreducibility: IrreducibilityConfig,
    pub seed: u64,
}

/// Data refuting the conjectured converse: a surjective wild field where some
/// `p | n` has `p^2 | d_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleWitness {
    /// Element of trace 1, over the integral basis.
    pub gamma: FieldElement,
    pub wild_prime: BigInt,
    pub failing_prime: BigInt,
}

#[derive(Debug, Clone)]
pub struct FieldAnalysis {
    pub poly: IntPolynomial,
    pub order: OrderBasis,
    pub splittings: Vec<PrimeSplitting>,
    pub tame: bool,
    pub codifferent: CodifferentCheck,
    pub lemma1: Vec<Lemma1Case>,
    pub profile: TraceProfile,
    pub thm4: Thm4Report,
    pub verdict: CriteriaVerdict,
    pub witness: Option<CounterexampleWitness>,
}

impl FieldAnalysis {
    pub fn degree(&self) -> usize {
        self.order.degree()
    }

    pub fn status(&self) -> ConjectureStatus {
        self.verdict.conjecture_status
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(what()))
    }
}

/// Full pipeline for the monic `f`.
///
/// Refuses reducible input (`Error::Reducible`) and undecided irreducibility
/// (`Error::IrreducibilityUnknown`). A contradicted sufficient criterion is
/// reported as `Error::TheoremViolation`.
pub fn analyze(f: &IntPolynomial, config: &AnalysisConfig) -> Result<FieldAnalysis> {
    let n = f.require_monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    match is_irreducible_over_q(f, &config.irreducibility, &mut rng) {
        Irreducibility::Proved => {}
        Irreducibility::Disproved(g) => return Err(Error::Reducible { factor: g }),
        Irreducibility::Unknown => return Err(Error::IrreducibilityUnknown(f.clone())),
    }
    let order = maximal_order_with(f, &config.factor, config.seed)?;
    let d = order.disc().clone();
    check(*order.disc_poly() == &d * order.index() * order.index(), || "disc(f) != d_K index^2".into())?;
    check(order.trace_gram().det()? == d, || "det(trace gram) != d_K".into())?;
    for (i, t) in order.basis_traces().iter().enumerate() {
        check(order.element_trace(&order.basis_element(i))? == t.clone().into(), || format!("trace of w_{i}"))?;
    }

    let splittings = ramified_primes(&order, &config.factor, &mut rng)?;
    let mut lemma1 = Vec::with_capacity(splittings.len());
    for s in &splittings {
        check(s.degree() == n as u64, || format!("sum e_i f_i != n at {}", s.p))?;
        check(s.is_ramified(), || format!("{} divides d_K but is unramified", s.p))?;
        lemma1.push(lemma1_valuation_check(&order, s)?);
    }
    // primes dividing the index but not d_K must be unramified
    if !order.index().is_zero() {
        for p in factor(order.index())?.primes() {
            if !(&d % p).is_zero() {
                let s = split_prime(&order, p, &mut rng)?;
                check(!s.is_ramified() && s.degree() == n as u64, || format!("{p} ramified but prime to d_K"))?;
            }
        }
    }
    let codifferent = codifferent_index(&order);
    check(codifferent.dual_index == d.abs(), || "codifferent index != |d_K|".into())?;

    let profile = trace_profile(&order)?;
    let thm4 = verify_thm4_mechanics(&profile, &order)?;
    let verdict = evaluate_criteria(f, &order, &splittings, &profile)?;
    if verdict.conjecture_status == ConjectureStatus::TheoremViolation {
        return Err(Error::TheoremViolation(f.clone()));
    }
    let witness = if verdict.conjecture_status == ConjectureStatus::Counterexample {
        let wild_prime = splittings.iter().find(|s| s.wild).map(|s| s.p.clone());
        let failing_prime = factor(&BigInt::from(n))?
            .primes()
            .find(|p| (&d % (*p * *p)).is_zero())
            .cloned();
        match (wild_prime, failing_prime) {
            (Some(wild_prime), Some(failing_prime)) => Some(CounterexampleWitness {
                gamma: profile.gamma.clone(),
                wild_prime,
                failing_prime,
            }),
            _ => return Err(Error::Invariant("counterexample without witness data".into())),
        }
    } else {
        None
    };
    Ok(FieldAnalysis {
        poly: f.clone(),
        tame: is_tame_field(&splittings),
        order,
        splittings,
        codifferent,
        lemma1,
        profile,
        thm4,
        verdict,
        witness,
    })
}
