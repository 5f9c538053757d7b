use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::factor;
use crate::{Error, Result};

/// Nonnegative gcd of all entries; `gcd_all(&[]) == 0`.
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Extended gcd of a list: returns `(g, c)` with `g >= 0` and `sum c_i x_i == g`.
pub fn xgcd(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        if v.is_zero() {
            coeffs.push(BigInt::zero());
            continue;
        }
        if g.is_zero() {
            g = v.abs();
            coeffs.push(if v.is_negative() { -BigInt::one() } else { BigInt::one() });
            continue;
        }
        let e = g.extended_gcd(v);
        let (mut ng, mut u, mut w) = (e.gcd, e.x, e.y);
        if ng.is_negative() {
            ng = -ng;
            u = -u;
            w = -w;
        }
        for c in coeffs.iter_mut() {
            *c *= &u;
        }
        coeffs.push(w);
        g = ng;
    }
    (g, coeffs)
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Zero("valuation"));
    }
    if *p <= BigInt::one() {
        return Err(Error::NotPrime(p.clone()));
    }
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// Signed squarefree part: `sign(n) * prod p^(e mod 2)`.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let fac = factor(n)?;
    let mut out = BigInt::from(fac.sign());
    for (p, e) in fac.factors() {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}
