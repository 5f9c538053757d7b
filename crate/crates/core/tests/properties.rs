use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tracefield::analysis::{analyze, AnalysisConfig};
use tracefield::arith::{factor, hnf, is_prime, snf, IntMatrix};
use tracefield::order::{maximal_order, BasisTag, FieldElement, OrderBasis};
use tracefield::poly::modp::is_irreducible_mod_p;
use tracefield::poly::{
    discriminant, factor_mod_p, is_irreducible_over_q, power_sums, resultant, Irreducibility, IrreducibilityConfig,
    IntPolynomial, ModPolynomial,
};
use tracefield::ramification::{split_prime_dedekind, split_prime_general};
use tracefield::Error;

fn monic(tail_low_to_high: &[i64]) -> IntPolynomial {
    let mut c = tail_low_to_high.to_vec();
    c.push(1);
    IntPolynomial::from_i64(&c)
}

fn monic_strategy(deg: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    deg.prop_flat_map(move |n| prop::collection::vec(-bound..=bound, n)).prop_map(|t| monic(&t))
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows).prop_map(|rs| {
        IntMatrix::from_rows(rs.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
    })
}

/// Product of random elementary row operations.
fn unimodular(n: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            for k in 0..n {
                u[(i, k)] = -u[(i, k)].clone();
            }
            continue;
        }
        let q = BigInt::from(rng.gen_range(-3i64..=3));
        for k in 0..n {
            let v = &u[(j, k)] * &q;
            u[(i, k)] += v;
        }
    }
    u
}

fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    let fh = f.coeffs_high_to_low();
    let gh = g.coeffs_high_to_low();
    for i in 0..n {
        for (k, c) in fh.iter().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gh.iter().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s.det().unwrap()
}

/// Complex roots as eigenvalues of the companion matrix, or `None` when the
/// Schur iteration fails to converge on the matrix and its transpose.
fn numeric_roots(f: &IntPolynomial) -> Option<Vec<nalgebra::Complex<f64>>> {
    let n = f.degree().unwrap();
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -f.coeff(i).to_f64().unwrap();
    }
    let schur = |m: DMatrix<f64>| Schur::try_new(m, f64::EPSILON, 10_000);
    let s = schur(c.clone()).or_else(|| schur(c.transpose()))?;
    Some(s.complex_eigenvalues().iter().copied().collect())
}

fn irreducible(f: &IntPolynomial) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    is_irreducible_over_q(f, &IrreducibilityConfig::default(), &mut rng) == Irreducibility::Proved
}

#[test]
fn factor_round_trip_ten_thousand() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let mut n = BigInt::from(rng.gen_range(1i64..=1_000_000_000_000));
        if rng.gen_bool(0.5) {
            n = -n;
        }
        let fac = factor(&n).unwrap();
        assert_eq!(fac.value(), n);
        assert!(fac.primes().all(is_prime));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_invariant_under_unimodular_left_action(m in matrix_strategy(3, 4), seed in any::<u64>()) {
        let u = unimodular(3, seed);
        prop_assert_eq!(hnf(&(&u * &m)), hnf(&m));
    }

    #[test]
    fn snf_divisibility_chain_and_transforms(m in matrix_strategy(3, 3)) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.left * &m) * &s.right, s.diag.clone());
        prop_assert!(s.left.det().unwrap().abs().is_one());
        prop_assert!(s.right.det().unwrap().abs().is_one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let prod: BigInt = inv.iter().product();
        let d = m.det().unwrap().abs();
        if !d.is_zero() {
            prop_assert_eq!(prod, d);
        }
    }

    #[test]
    fn resultant_matches_sylvester(f in monic_strategy(1..=4, 6), g in monic_strategy(1..=4, 6)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn discriminant_is_multiplicative(f in monic_strategy(1..=3, 5), g in monic_strategy(1..=3, 5)) {
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(
            discriminant(&f.mul(&g)).unwrap(),
            discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r
        );
    }

    #[test]
    fn newton_sums_match_numeric_roots(f in monic_strategy(2..=5, 4)) {
        let s = power_sums(&f, 6).unwrap();
        let roots = numeric_roots(&f);
        prop_assume!(roots.is_some(), "eigenvalue iteration did not converge");
        let roots = roots.unwrap();
        for (k, sk) in s.iter().enumerate() {
            let num: f64 = roots.iter().map(|r| r.powu(k as u32).re).sum();
            let exact = sk.to_f64().unwrap();
            prop_assert!((num - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "k={} {} vs {}", k, num, exact);
        }
    }

    #[test]
    fn factor_mod_p_recomposes(f in monic_strategy(1..=6, 20), pi in 0usize..6, seed in any::<u64>()) {
        let p = [2u64, 3, 5, 7, 31, 1_000_003][pi];
        let fbar = ModPolynomial::from_int(&f, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fac = factor_mod_p(&fbar, &mut rng);
        let mut prod = ModPolynomial::one(p);
        for (g, e) in &fac {
            prop_assert!(is_irreducible_mod_p(g));
            prop_assert_eq!(g.lc(), 1);
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, fbar);
    }

    #[test]
    fn products_are_reducible(f in monic_strategy(1..=3, 5), g in monic_strategy(1..=3, 5)) {
        let h = f.mul(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        match is_irreducible_over_q(&h, &IrreducibilityConfig::default(), &mut rng) {
            Irreducibility::Disproved(d) => {
                prop_assert!(d.degree().unwrap() >= 1 && d.degree() < h.degree());
                let (_, r) = h.divrem_monic(&d.primitive_part());
                prop_assert!(r.is_zero() || d.lc().abs() != BigInt::one());
            }
            other => prop_assert!(false, "{} gave {:?}", h, other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maximal_order_invariants(f in monic_strategy(2..=4, 12)) {
        prop_assume!(irreducible(&f));
        let o = maximal_order(&f).unwrap();
        let n = o.degree();
        prop_assert_eq!(o.disc_poly().clone(), o.disc() * o.index() * o.index());
        prop_assert_eq!(o.trace_gram().det().unwrap(), o.disc().clone());
        prop_assert_eq!(o.basis_traces()[0].clone(), BigInt::from(n));

        // traces agree with sums over numeric embeddings
        let roots = numeric_roots(&f);
        prop_assume!(roots.is_some(), "eigenvalue iteration did not converge");
        let roots = roots.unwrap();
        let d = o.denom().to_f64().unwrap();
        for i in 0..n {
            let row = o.numerators().row(i);
            let num: f64 = roots
                .iter()
                .map(|r| row.iter().enumerate().map(|(k, c)| r.powu(k as u32) * c.to_f64().unwrap()).sum::<nalgebra::Complex<f64>>().re / d)
                .sum();
            let exact = o.basis_traces()[i].to_f64().unwrap();
            prop_assert!((num - exact).abs() <= 1e-6 * (1.0 + exact.abs()));
        }

        // power-basis trace of a equals -a_{n-1}
        let mut a = vec![BigRational::zero(); n];
        a[1] = BigRational::one();
        let alpha = FieldElement::new(a, BasisTag::Power);
        prop_assert_eq!(o.element_trace(&alpha).unwrap(), BigRational::from_integer(-f.coeff(n - 1)));

        // canonical under re-presentation of the same lattice
        let u = unimodular(n, 99);
        let again = OrderBasis::from_lattice(&f, &(&u * o.numerators()), o.denom()).unwrap();
        prop_assert_eq!(&again, &o);
        // and idempotent
        let z = OrderBasis::equation_order(&f).unwrap();
        prop_assert!(o.index() >= z.index());
    }

    #[test]
    fn dedekind_and_general_splittings_agree(f in monic_strategy(2..=4, 9), pi in 0usize..8, seed in any::<u64>()) {
        prop_assume!(irreducible(&f));
        let p = BigInt::from([2u64, 3, 5, 7, 11, 13, 17, 19][pi]);
        let o = maximal_order(&f).unwrap();
        prop_assume!(!(o.index() % &p).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = split_prime_dedekind(&o, &p, &mut rng).unwrap();
        let g = split_prime_general(&o, &p, &mut rng).unwrap();
        prop_assert_eq!(&a.shape, &g.shape);
        prop_assert_eq!(a.degree(), o.degree() as u64);
        prop_assert_eq!(a.is_ramified(), (o.disc() % &p).is_zero());
    }

    #[test]
    fn analysis_invariants(f in monic_strategy(2..=4, 6)) {
        match analyze(&f, &AnalysisConfig::default()) {
            Ok(a) => {
                let t = &a.profile.t;
                prop_assert!((BigInt::from(a.degree()) % t).is_zero());
                prop_assert!((a.order.disc() % (t * t)).is_zero());
                prop_assert_eq!(&a.codifferent.dual_index, &a.order.disc().abs());
                prop_assert_eq!(a.order.element_trace(&a.profile.gamma).unwrap(), BigRational::from_integer(t.clone()));
            }
            Err(Error::Reducible { .. }) => {}
            Err(e) => prop_assert!(false, "{}: {}", f, e),
        }
    }
}
