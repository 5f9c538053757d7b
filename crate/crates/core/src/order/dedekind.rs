use num_bigint::BigInt;
use rand::Rng;

use super::OrderBasis;
use crate::arith::{fp, IntMatrix};
use crate::poly::{factor_mod_p, IntPolynomial, ModPolynomial};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DedekindOutcome {
    /// `Z[a]` is already maximal at `p`.
    PMaximal,
    /// `Z[a]` is not maximal at `p`; carries the strictly larger order
    /// `Z[a] + (U(a)/p) Z[a]` of index `p^(deg gcd)` over `Z[a]`.
    Enlarged(OrderBasis),
}

/// Dedekind's criterion for `Z[a]` at the prime `p`.
///
/// With `f = prod g_i^e_i mod p`, `g = prod g_i`, `h = f / g` (lifted) and
/// `F = (f - g h) / p`, `Z[a]` is `p`-maximal iff `gcd(F, g, h) = 1` mod `p`.
pub fn dedekind_test<R: Rng + ?Sized>(f: &IntPolynomial, p: &BigInt, rng: &mut R) -> Result<DedekindOutcome> {
    let n = f.require_monic()?;
    let ps = fp::small_prime(p)?;
    let fbar = ModPolynomial::from_int(f, ps);
    let factors = factor_mod_p(&fbar, rng);
    let mut g = ModPolynomial::one(ps);
    let mut h = ModPolynomial::one(ps);
    for (gi, e) in &factors {
        g = g.mul(gi);
        for _ in 1..*e {
            h = h.mul(gi);
        }
    }
    let gh = g.to_int().mul(&h.to_int());
    let diff = f.sub(&gh);
    let big_f = diff.div_scalar(p);
    debug_assert_eq!(big_f.scale(p), diff);
    let fb = ModPolynomial::from_int(&big_f, ps);
    let t = fb.gcd(&g).gcd(&h);
    let m = t.degree().unwrap_or(0);
    if m == 0 {
        return Ok(DedekindOutcome::PMaximal);
    }
    // U = f / t mod p, lifted
    let u = fbar.div(&t).to_int();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::from(0); n];
            r[i] = p.clone();
            r
        })
        .collect();
    let mut xk = u;
    for _ in 0..m {
        let (_, r) = xk.divrem_monic(f);
        rows.push((0..n).map(|i| r.coeff(i)).collect());
        xk = xk.mul(&IntPolynomial::x());
    }
    let order = OrderBasis::from_lattice(f, &IntMatrix::from_rows(rows)?, p)?;
    Ok(DedekindOutcome::Enlarged(order))
}
