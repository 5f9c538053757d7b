use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPolynomial;
use crate::{Error, Result};

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant over the integers by the subresultant pseudo-remainder sequence.
///
/// Rejects the case where both inputs are constants; a zero input yields 0.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    match (f.degree(), g.degree()) {
        (Some(0), Some(0)) => return Err(Error::ConstantPolynomial),
        (None, _) | (_, None) => return Ok(BigInt::zero()),
        _ => {}
    }
    let (ca, cb) = (f.content(), g.content());
    let mut a = f.div_scalar(&ca);
    let mut b = g.div_scalar(&cb);
    let mut s = BigInt::one();
    let t = pow(&ca, b.degree().unwrap()) * pow(&cb, a.degree().unwrap());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
    }
    if b.degree() == Some(0) {
        return Ok(s * t * pow(&b.lc(), a.degree().unwrap()));
    }
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.div_scalar(&(&g_ * pow(&h, delta)));
        g_ = a.lc();
        h = if delta == 0 {
            h
        } else {
            pow(&g_, delta) / pow(&h, delta - 1)
        };
        match b.degree() {
            None => return Ok(BigInt::zero()),
            Some(0) => {
                let da = a.degree().unwrap();
                let hh = pow(&b.lc(), da) / pow(&h, da - 1);
                return Ok(s * t * hh);
            }
            Some(_) => {}
        }
    }
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let d = r / f.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Power sums `[s_0, ..., s_kmax]` of the roots of the monic `f`, via Newton's
/// identities. `s_0 = deg f` and `s_1 = -a_1`.
pub fn power_sums(f: &IntPolynomial, k_max: usize) -> Result<Vec<BigInt>> {
    let n = f.require_monic()?;
    // a[i] is the coefficient of x^(n-i)
    let a: Vec<BigInt> = (0..=n).map(|i| f.coeff(n - i)).collect();
    let mut s: Vec<BigInt> = Vec::with_capacity(k_max + 1);
    s.push(BigInt::from(n));
    for k in 1..=k_max {
        let mut acc = BigInt::zero();
        for i in 1..k.min(n + 1) {
            acc += &a[i] * &s[k - i];
        }
        if k <= n {
            acc += &a[k] * k;
        }
        s.push(-acc);
    }
    Ok(s)
}
