//! Integer factorization for discriminant-sized inputs.
//!
//! Trial division by sieved primes up to a configurable bound, then
//! Pollard rho (Brent's cycle detection) with Miller-Rabin certification of
//! the cofactors. Miller-Rabin with the first 13 prime bases is
//! deterministic below 3.3e24; above that the first 24 bases are used.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    pub trial_bound: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { trial_bound: 1_000_000 }
    }
}

/// `value = sign * prod p^e` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BigInt, u32)> {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        v
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            write!(f, "-1")?;
        } else {
            write!(f, "1")?;
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                write!(f, " * {p}")?;
            } else {
                write!(f, " * {p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with(n, &FactorConfig::default())
}

pub fn factor_with(n: &BigInt, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero("factor"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rem = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();

    for &p in small_primes(config.trial_bound) {
        if rem.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > rem {
            break;
        }
        while (&rem % p).is_zero() {
            rem /= p;
            primes.push(pb.clone());
        }
    }
    if !rem.is_one() {
        split_large(rem, &mut primes);
    }
    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

fn split_large(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = match n.to_u64() {
        Some(small) => BigInt::from(rho_u64(small)),
        None => rho_big(&n),
    };
    let q = &n / &d;
    split_large(d, out);
    split_large(q, out);
}

fn small_primes(bound: u64) -> &'static [u64] {
    static SIEVE: OnceLock<Vec<u64>> = OnceLock::new();
    let all = SIEVE.get_or_init(|| sieve(1_000_000));
    let end = all.partition_point(|&p| p <= bound);
    &all[..end]
}

fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

const MR_BASES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bound: BigInt = "3317044064679887385961981".parse().unwrap();
    let rounds = if *n < bound { 13 } else { MR_BASES.len() };
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES[..rounds] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial divisor of the odd composite `n`.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut r, mut q) = (2u64, 2u64, 1u64, 1u64, 1u64);
        let mut ys = 0;
        const BATCH: u64 = 64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut g = BigInt::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            g = (&x - &y).abs().gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
