use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracefield::arith::{factor, hnf, squarefree_part, FactorConfig, IntMatrix};
use tracefield::order::{dedekind_test, maximal_order, p_radical, ring_of_multipliers, BasisTag, DedekindOutcome, FieldElement, OrderBasis};
use tracefield::poly::{discriminant, eisenstein_prime, is_irreducible_over_q, Irreducibility, IrreducibilityConfig, IntPolynomial};
use tracefield::ramification::{codifferent_index, is_tame_field, lemma1_valuation_check, ramified_primes, split_prime, Lemma1Case};
use tracefield::trace::{conjecture_classify, evaluate_criteria, trace_profile, verify_thm4_mechanics, ConjectureStatus};

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(5)
}

#[test]
fn arithmetic_examples() {
    assert_eq!(factor(&b(-244)).unwrap().to_string(), "-1 * 2^2 * 61");
    assert_eq!(squarefree_part(&b(-244)).unwrap(), b(-61));
    assert_eq!(discriminant(&p(&[-6, 1, 0, 1])).unwrap(), b(-976));
    assert_eq!(eisenstein_prime(&p(&[-2, 0, 1])), Some(b(2)));
    let h = hnf(&IntMatrix::from_i64(&[&[2, 4], &[1, 3]]));
    assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[1, 1]]));
}

#[test]
fn irreducibility_examples() {
    let cfg = IrreducibilityConfig::default();
    assert_eq!(is_irreducible_over_q(&p(&[-6, 1, 0, 1]), &cfg, &mut rng()), Irreducibility::Proved);
    assert!(matches!(is_irreducible_over_q(&p(&[-1, 0, 1]), &cfg, &mut rng()), Irreducibility::Disproved(_)));
}

#[test]
fn dedekind_examples() {
    let out = |c: &[i64], q: i64| dedekind_test(&p(c), &b(q), &mut rng()).unwrap();
    assert_eq!(out(&[-2, 0, 1], 2), DedekindOutcome::PMaximal);
    assert!(matches!(out(&[-6, 1, 0, 1], 2), DedekindOutcome::Enlarged(_)));
    assert_eq!(out(&[1, 1, 1], 3), DedekindOutcome::PMaximal);
}

#[test]
fn round_two_examples() {
    let f = p(&[-6, 1, 0, 1]);
    let z = OrderBasis::equation_order(&f).unwrap();
    let rad = p_radical(&z, &b(2)).unwrap();
    let o = ring_of_multipliers(&z, &rad, &b(2)).unwrap();
    assert_eq!(o.index(), &b(2));
    let o = maximal_order(&f).unwrap();
    assert_eq!((o.index(), o.disc()), (&b(2), &b(-244)));
    let o = maximal_order(&p(&[-5, 0, 1])).unwrap();
    assert_eq!(o.numerators(), &IntMatrix::from_i64(&[&[2, 0], &[1, 1]]));
    assert_eq!(o.denom(), &b(2));
}

#[test]
fn element_examples() {
    let o = maximal_order(&p(&[-6, 1, 0, 1])).unwrap();
    assert_eq!(o.element_trace(&o.one()).unwrap(), BigRational::from_integer(b(3)));
    let alpha = FieldElement::from_ints(&[b(0), b(1), b(0)], BasisTag::Power);
    assert_eq!(o.element_trace(&alpha).unwrap(), BigRational::from_integer(b(0)));
    let q5 = maximal_order(&p(&[-5, 0, 1])).unwrap();
    let golden = q5.basis_element(1);
    assert_eq!(q5.element_trace(&golden).unwrap(), BigRational::from_integer(b(1)));
    assert!(q5.multiply(&golden, &alpha).is_err());
}

#[test]
fn ramification_examples() {
    let cfg = FactorConfig::default();
    let o = maximal_order(&p(&[-2, 0, 1])).unwrap();
    let s = split_prime(&o, &b(2), &mut rng()).unwrap();
    assert_eq!((s.shape.clone(), s.wild), (vec![(2, 1)], true));
    assert_eq!(lemma1_valuation_check(&o, &s).unwrap(), Lemma1Case::WildInequality);
    assert_eq!(codifferent_index(&o).dual_index, b(8));
    assert!(!is_tame_field(&ramified_primes(&o, &cfg, &mut rng()).unwrap()));

    let o = maximal_order(&p(&[-6, 1, 0, 1])).unwrap();
    let all = ramified_primes(&o, &cfg, &mut rng()).unwrap();
    let primes: Vec<BigInt> = all.iter().map(|s| s.p.clone()).collect();
    assert_eq!(primes, vec![b(2), b(61)]);
    assert_eq!(lemma1_valuation_check(&o, &all[1]).unwrap(), Lemma1Case::TameEquality);
    assert_eq!(codifferent_index(&o).dual_index, b(244));

    let o = maximal_order(&p(&[1, 1, 1])).unwrap();
    let s = ramified_primes(&o, &cfg, &mut rng()).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!((s[0].p.clone(), s[0].shape.clone(), s[0].wild), (b(3), vec![(2, 1)], false));
    assert!(is_tame_field(&s));
}

#[test]
fn trace_examples() {
    let run = |c: &[i64]| {
        let f = p(c);
        let o = maximal_order(&f).unwrap();
        let s = ramified_primes(&o, &FactorConfig::default(), &mut rng()).unwrap();
        let prof = trace_profile(&o).unwrap();
        let report = verify_thm4_mechanics(&prof, &o).unwrap();
        let v = evaluate_criteria(&f, &o, &s, &prof).unwrap();
        assert_eq!(conjecture_classify(&v), v.conjecture_status);
        (prof, report, v)
    };
    let (prof, rep, v) = run(&[-2, 0, 1]);
    assert_eq!((prof.t.clone(), rep.d_over_t2.clone()), (b(2), b(2)));
    assert_eq!(v.conjecture_status, ConjectureStatus::ConsistentNegative);
    let (prof, _, v) = run(&[-6, 1, 0, 1]);
    assert_eq!(prof.t, b(1));
    assert!(v.thm4_applies && !v.tame_applies && !v.prop1_applies && !v.cor3_applies);
    let (_, rep, _) = run(&[1, 0, 1]);
    assert_eq!(rep.d_over_t2, b(-1));
    let (_, _, v) = run(&[1, 1, 1]);
    assert!(v.prop1_applies && v.cor3_applies && v.thm4_applies && v.tame_applies);
    assert_eq!(v.conjecture_status, ConjectureStatus::ConsistentPositive);
}
