//! Irreducibility of monic integer polynomials over `Q`.
//!
//! Effort order: rational roots, Eisenstein, an irreducible reduction modulo
//! one of the first primes not dividing the discriminant, then Zassenhaus
//! recombination of Hensel-lifted modular factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::modp::{factor_mod_p, ModPolynomial};
use super::{discriminant, IntPolynomial};
use crate::arith::{factor, is_prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Proved,
    Disproved(IntPolynomial),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityConfig {
    /// Number of primes not dividing the discriminant tried for a witness.
    pub witness_primes: usize,
    /// Maximum number of factor subsets tried during recombination.
    pub recombination_budget: u64,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        IrreducibilityConfig { witness_primes: 25, recombination_budget: 1 << 16 }
    }
}

pub fn is_irreducible_over_q<R: Rng + ?Sized>(
    f: &IntPolynomial,
    config: &IrreducibilityConfig,
    rng: &mut R,
) -> Irreducibility {
    let n = match f.degree() {
        None | Some(0) => return Irreducibility::Unknown,
        Some(n) => n,
    };
    if !f.is_monic() {
        return Irreducibility::Unknown;
    }
    if n == 1 {
        return Irreducibility::Proved;
    }
    if let Some(r) = rational_root(f) {
        return Irreducibility::Disproved(IntPolynomial::new(vec![-r, BigInt::one()]));
    }
    if n <= 3 {
        // no root means no linear factor
        return Irreducibility::Proved;
    }
    if eisenstein_prime(f).is_some() {
        return Irreducibility::Proved;
    }
    let disc = match discriminant(f) {
        Ok(d) => d,
        Err(_) => return Irreducibility::Unknown,
    };
    if disc.is_zero() {
        let g = gcd_over_q(f, &f.derivative());
        return Irreducibility::Disproved(g);
    }

    // (prime, factor degrees) for the first primes not dividing disc
    let mut best: Option<(u64, Vec<(ModPolynomial, u32)>)> = None;
    let mut possible: Vec<bool> = vec![true; n + 1];
    let mut p = 2u64;
    let mut tried = 0;
    while tried < config.witness_primes {
        if fp_is_prime(p) && !(&disc % p).is_zero() {
            tried += 1;
            let fp_ = ModPolynomial::from_int(f, p);
            let fac = factor_mod_p(&fp_, rng);
            if fac.len() == 1 {
                return Irreducibility::Proved;
            }
            // degrees of factors over Z must be subset sums of every pattern
            let sums = subset_sums(&fac.iter().map(|(g, _)| g.degree().unwrap()).collect::<Vec<_>>(), n);
            for d in 0..=n {
                possible[d] &= sums[d];
            }
            if (1..n).all(|d| !possible[d]) {
                return Irreducibility::Proved;
            }
            if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
                best = Some((p, fac));
            }
        }
        p += 1;
    }
    let Some((p, fac)) = best else { return Irreducibility::Unknown };
    zassenhaus(f, p, fac.into_iter().map(|(g, _)| g).collect(), &possible, config)
}

fn fp_is_prime(p: u64) -> bool {
    is_prime(&BigInt::from(p))
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Integer root of a monic polynomial, if any.
fn rational_root(f: &IntPolynomial) -> Option<BigInt> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Some(BigInt::zero());
    }
    let fac = factor(&a0).ok()?;
    let mut divisors = vec![BigInt::one()];
    for (p, e) in fac.factors() {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .find(|r| f.eval(r).is_zero())
}

/// A prime certifying irreducibility by Eisenstein's criterion.
pub fn eisenstein_prime(f: &IntPolynomial) -> Option<BigInt> {
    let n = f.degree()?;
    let lower: Vec<BigInt> = (0..n).map(|i| f.coeff(i)).collect();
    let g = crate::arith::gcd_all(&lower);
    if g.is_zero() || g.is_one() {
        return None;
    }
    let fac = factor(&g).ok()?;
    let a0 = f.coeff(0);
    let found = fac.primes().find(|p| !a0.is_multiple_of(&(*p * *p))).cloned();
    found
}

/// Monic gcd over `Q` of two integer polynomials (made primitive).
fn gcd_over_q(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a.primitive_part()
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn poly_mod(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn to_modp(f: &IntPolynomial, p: u64) -> ModPolynomial {
    ModPolynomial::from_int(f, p)
}

/// Lifts `f = g*h mod p` (both monic) to `f = G*H mod p^k`.
fn hensel_pair(f: &IntPolynomial, g: &ModPolynomial, h: &ModPolynomial, p: u64, k: u32) -> (IntPolynomial, IntPolynomial) {
    let (one, s, t) = g.xgcd(h);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut gl = g.to_int();
    let mut hl = h.to_int();
    let mut m = pb.clone();
    for _ in 1..k {
        let e = f.sub(&gl.mul(&hl));
        let e = IntPolynomial::new(e.coeffs().iter().map(|c| c / &m).collect());
        let e = to_modp(&e, p);
        // t*e = q*g + dg, dh = s*e + q*h
        let (q, dg) = t.mul(&e).divrem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        gl = gl.add(&dg.to_int().scale(&m));
        hl = hl.add(&dh.to_int().scale(&m));
        m *= &pb;
        gl = poly_mod(&gl, &m);
        hl = poly_mod(&hl, &m);
    }
    (gl, hl)
}

/// Lifts a complete modular factorization of the monic `f` to `p^k`.
fn hensel_lift(f: &IntPolynomial, factors: &[ModPolynomial], p: u64, k: u32) -> Vec<IntPolynomial> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let g = factors[0].clone();
    let h = factors[1..]
        .iter()
        .fold(ModPolynomial::one(p), |acc, x| acc.mul(x));
    let (gl, hl) = hensel_pair(f, &g, &h, p, k);
    let mut out = vec![gl];
    out.extend(hensel_lift(&hl, &factors[1..], p, k));
    out
}

fn zassenhaus(
    f: &IntPolynomial,
    p: u64,
    factors: Vec<ModPolynomial>,
    possible: &[bool],
    config: &IrreducibilityConfig,
) -> Irreducibility {
    let n = f.degree().unwrap();
    // coefficient bound for a monic factor of degree <= n: 2^n * ||f||_2
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= &bound * 2 {
        m *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &factors, p, k);
    let r = lifted.len();
    let degs: Vec<usize> = factors.iter().map(|g| g.degree().unwrap()).collect();
    let mut budget = config.recombination_budget;
    // some side of any nontrivial factorization has degree <= n/2
    for size in 1..r {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| degs[i]).sum();
            if deg <= n / 2 && possible[deg] {
                if budget == 0 {
                    return Irreducibility::Unknown;
                }
                budget -= 1;
                let prod = idx
                    .iter()
                    .fold(IntPolynomial::one(), |acc, &i| poly_mod(&acc.mul(&lifted[i]), &m));
                let cand = IntPolynomial::new(prod.coeffs().iter().map(|c| sym_mod(c, &m)).collect());
                if cand.degree().unwrap_or(0) > 0 && f.div_exact_monic(&cand).is_some() {
                    return Irreducibility::Disproved(cand);
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    Irreducibility::Proved
}

fn next_combination(idx: &mut [usize], r: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < r - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
