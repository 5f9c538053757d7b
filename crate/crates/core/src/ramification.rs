//! Prime splitting in the maximal order and the discriminant consequences of
//! tame and wild ramification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arith::{factor_with, fp, snf, valuation, FactorConfig};
use crate::order::OrderBasis;
use crate::poly::{factor_mod_p, ModPolynomial};
use crate::{Error, Result};

/// `pO_K = prod P_i^e_i` with residue degrees `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: BigInt,
    /// `(e_i, f_i)` sorted descending.
    pub shape: Vec<(u32, u32)>,
    pub wild: bool,
    pub index_divides: bool,
}

impl PrimeSplitting {
    fn new(p: BigInt, mut shape: Vec<(u32, u32)>, index_divides: bool) -> Self {
        shape.sort_unstable_by(|a, b| b.cmp(a));
        let wild = shape.iter().any(|&(e, _)| (BigInt::from(e) % &p).is_zero());
        PrimeSplitting { p, shape, wild, index_divides }
    }

    pub fn is_ramified(&self) -> bool {
        self.shape.iter().any(|&(e, _)| e > 1)
    }

    /// `sum e_i f_i`.
    pub fn degree(&self) -> u64 {
        self.shape.iter().map(|&(e, f)| e as u64 * f as u64).sum()
    }
}

impl fmt::Display for PrimeSplitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.p)?;
        for (e, deg) in &self.shape {
            write!(f, " {e}^{deg}")?;
        }
        let kind = if self.wild {
            "wild"
        } else if self.is_ramified() {
            "tame"
        } else {
            "unramified"
        };
        write!(f, " ({kind})")
    }
}

/// Splitting of `p`, by Dedekind when `p` does not divide the index and by
/// idempotents of `O/pO` otherwise.
pub fn split_prime<R: Rng + ?Sized>(order: &OrderBasis, p: &BigInt, rng: &mut R) -> Result<PrimeSplitting> {
    if (order.index() % p).is_zero() {
        split_prime_general(order, p, rng)
    } else {
        split_prime_dedekind(order, p, rng)
    }
}

/// Reads the splitting off the factorization of `f mod p`. Requires `p ∤ index`.
pub fn split_prime_dedekind<R: Rng + ?Sized>(order: &OrderBasis, p: &BigInt, rng: &mut R) -> Result<PrimeSplitting> {
    if (order.index() % p).is_zero() {
        return Err(Error::Invariant(format!("{p} divides the index")));
    }
    let ps = fp::small_prime(p)?;
    let fbar = ModPolynomial::from_int(order.poly(), ps);
    let shape = factor_mod_p(&fbar, rng)
        .into_iter()
        .map(|(g, e)| (e, g.degree().unwrap() as u32))
        .collect();
    Ok(PrimeSplitting::new(p.clone(), shape, false))
}

/// Splitting via the semisimple quotient `(O/pO)/rad`: its Frobenius-fixed
/// subalgebra yields one idempotent per prime above `p`, and `e_i` comes from
/// the chain `dim O/(P^m + pO) = f_i min(m, e_i)`. Valid for any `p`.
pub fn split_prime_general<R: Rng + ?Sized>(order: &OrderBasis, p: &BigInt, rng: &mut R) -> Result<PrimeSplitting> {
    let ps = fp::small_prime(p)?;
    let n = order.degree();
    let alg = order.algebra_mod(ps);
    let (rad, rpiv) = alg.radical();
    let reduce = |mut v: Vec<u64>| {
        fp::reduce_mod_space(&mut v, &rad, &rpiv, ps);
        v
    };
    let comp: Vec<usize> = (0..n).filter(|c| !rpiv.contains(c)).collect();
    let embed = |w: &[u64]| {
        let mut v = vec![0u64; n];
        for (&c, &x) in comp.iter().zip(w) {
            v[c] = x;
        }
        v
    };

    // Frobenius - id on the quotient, in complement coordinates
    let frob: Vec<Vec<u64>> = comp
        .iter()
        .map(|&c| {
            let mut img = reduce(alg.pow(&alg.unit(c), ps as u128));
            img[c] = fp::sub(img[c], 1, ps);
            comp.iter().map(|&k| img[k]).collect()
        })
        .collect();
    let fixed: Vec<Vec<u64>> = fp::left_kernel(&frob, comp.len(), ps)
        .iter()
        .map(|w| embed(w))
        .collect();
    let r = fixed.len();

    let mut idempotents = vec![reduce(alg.one())];
    let mut rounds = 0u32;
    while idempotents.len() < r {
        rounds += 1;
        if rounds > 10_000 {
            return Err(Error::Invariant("idempotent splitting did not converge".into()));
        }
        let mut z = vec![0u64; n];
        for b in &fixed {
            let c = rng.gen_range(0..ps);
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi = fp::add(*zi, fp::mul(c, *bi, ps), ps);
            }
        }
        let mut next = Vec::with_capacity(r);
        for e in &idempotents {
            let ze = reduce(alg.mul(&z, e));
            next.extend(split_idempotent(&alg, e, &ze, &reduce, rng));
        }
        idempotents = next;
    }

    let one = alg.one();
    let mut shape = Vec::with_capacity(r);
    for eps in &idempotents {
        let residue: Vec<Vec<u64>> = (0..n).map(|c| reduce(alg.mul(eps, &alg.unit(c)))).collect();
        let f = fp::rank(&residue, ps);
        // P = rad + (1 - eps) A, inside A = O/pO
        let comp_eps: Vec<u64> = one.iter().zip(eps).map(|(&a, &b)| fp::sub(a, b, ps)).collect();
        let mut gens = rad.clone();
        gens.extend((0..n).map(|c| alg.mul(&comp_eps, &alg.unit(c))));
        let (prime, _) = fp::row_space(&gens, ps);
        if n - prime.len() != f {
            return Err(Error::Invariant("residue degree mismatch".into()));
        }
        let mut power = prime.clone();
        let mut codim = f;
        for _ in 1..n {
            let (next, _) = alg.product_space(&power, &prime);
            let c = n - next.len();
            if c == codim {
                break;
            }
            codim = c;
            power = next;
        }
        if f == 0 || !codim.is_multiple_of(f) {
            return Err(Error::Invariant("ramification chain is not a multiple of f".into()));
        }
        shape.push(((codim / f) as u32, f as u32));
    }
    let split = PrimeSplitting::new(p.clone(), shape, (order.index() % p).is_zero());
    if split.degree() != n as u64 {
        return Err(Error::Invariant(format!("sum e_i f_i != {n} at {p}")));
    }
    Ok(split)
}

/// Splits the idempotent `e` along the eigenvalues of `z` (with `z = z e`).
fn split_idempotent<R: Rng + ?Sized>(
    alg: &crate::order::AlgebraModP,
    e: &[u64],
    z: &[u64],
    reduce: &impl Fn(Vec<u64>) -> Vec<u64>,
    rng: &mut R,
) -> Vec<Vec<u64>> {
    let p = alg.p;
    let mut powers = vec![e.to_vec()];
    loop {
        let next = reduce(alg.mul(powers.last().unwrap(), z));
        powers.push(next);
        if fp::rank(&powers, p) < powers.len() {
            break;
        }
    }
    let ker = fp::left_kernel(&powers, powers.len(), p);
    let minpoly = ModPolynomial::new(p, ker[0].clone()).monic();
    let roots: Vec<u64> = factor_mod_p(&minpoly, rng)
        .into_iter()
        .map(|(g, _)| fp::neg(g.coeff(0), p))
        .collect();
    if roots.len() < 2 {
        return vec![e.to_vec()];
    }
    roots
        .iter()
        .map(|&lam| {
            let mut acc = e.to_vec();
            for &mu in roots.iter().filter(|&&mu| mu != lam) {
                let scale = fp::inv(fp::sub(lam, mu, p), p);
                let factor: Vec<u64> = z
                    .iter()
                    .zip(e)
                    .map(|(&zi, &ei)| fp::mul(fp::sub(zi, fp::mul(mu, ei, p), p), scale, p))
                    .collect();
                acc = reduce(alg.mul(&acc, &factor));
            }
            acc
        })
        .collect()
}

/// Splittings of every prime dividing `d_K`, ascending in `p`.
pub fn ramified_primes<R: Rng + ?Sized>(
    order: &OrderBasis,
    config: &FactorConfig,
    rng: &mut R,
) -> Result<Vec<PrimeSplitting>> {
    let fac = factor_with(order.disc(), config)?;
    fac.primes().map(|p| split_prime(order, p, rng)).collect()
}

pub fn is_tame_field(splittings: &[PrimeSplitting]) -> bool {
    splittings.iter().all(|s| !s.wild)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodifferentCheck {
    /// `[O_K^dual : O_K]`, the product of the trace form's elementary divisors.
    pub dual_index: BigInt,
}

pub fn codifferent_index(order: &OrderBasis) -> CodifferentCheck {
    let dual_index = snf(&order.trace_gram())
        .invariants()
        .into_iter()
        .fold(BigInt::one(), |acc, d| acc * d.abs());
    CodifferentCheck { dual_index }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Case {
    /// `v_p(d_K) = sum f_i (e_i - 1)`.
    TameEquality,
    /// `v_p(d_K) >= sum_tame f_i (e_i - 1) + sum_wild f_i e_i`.
    WildInequality,
}

/// Checks the discriminant valuation against the splitting shape. An `Err`
/// means an internal inconsistency, never a property of the input.
pub fn lemma1_valuation_check(order: &OrderBasis, splitting: &PrimeSplitting) -> Result<Lemma1Case> {
    let p = &splitting.p;
    let v = valuation(order.disc(), p)? as u64;
    let mut bound = 0u64;
    for &(e, f) in &splitting.shape {
        let (e, f) = (e as u64, f as u64);
        bound += if (BigInt::from(e) % p).is_zero() { f * e } else { f * (e - 1) };
    }
    if splitting.wild {
        if v >= bound {
            Ok(Lemma1Case::WildInequality)
        } else {
            Err(Error::Invariant(format!("v_{p}(d_K) = {v} < {bound} at a wild prime")))
        }
    } else if v == bound {
        Ok(Lemma1Case::TameEquality)
    } else {
        Err(Error::Invariant(format!("v_{p}(d_K) = {v} != {bound} at a tame prime")))
    }
}
