//! Round 2: enlarge an order at `p` by its ring of multipliers of the
//! `p`-radical until it stops growing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{dedekind_test, DedekindOutcome, OrderBasis};
use crate::arith::{factor_with, fp, hnf, FactorConfig, IntMatrix};
use crate::poly::IntPolynomial;
use crate::{Error, Result};

/// Lifts `F_p` row vectors and adds `pZ^n`; returns the HNF (n x n).
fn lift_with_p(rows: &[Vec<u64>], n: usize, p: &BigInt) -> IntMatrix {
    let mut all: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for i in 0..n {
        let mut r = vec![BigInt::from(0); n];
        r[i] = p.clone();
        all.push(r);
    }
    hnf(&IntMatrix::from_rows(all).expect("rows have equal length"))
}

/// The `p`-radical `{x in O : x^k in pO for some k}` as an HNF lattice over
/// the order basis. Always contains `pO`.
pub fn p_radical(order: &OrderBasis, p: &BigInt) -> Result<IntMatrix> {
    let ps = fp::small_prime(p)?;
    let alg = order.algebra_mod(ps);
    let (rad, _) = alg.radical();
    Ok(lift_with_p(&rad, order.degree(), p))
}

/// The ring `{x in K : x I subset I}` for an ideal `I` containing `pO`,
/// computed as `(1/p) {y in O : y I subset pI}`.
pub fn ring_of_multipliers(order: &OrderBasis, ideal: &IntMatrix, p: &BigInt) -> Result<OrderBasis> {
    let n = order.degree();
    let ps = fp::small_prime(p)?;
    if ideal.rows() != n || ideal.cols() != n || !ideal.is_lower_triangular() {
        return Err(Error::Dimension("ideal must be an n x n HNF lattice".into()));
    }
    // row i: coordinates of w_i * beta_k over the ideal basis, all k, mod p
    let betas = ideal.row_vecs();
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n * n);
        for beta in &betas {
            let mut prod = vec![BigInt::from(0); n];
            for (j, bj) in beta.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for (o, c) in prod.iter_mut().zip(order.product_coords(i, j)) {
                    *o += bj * c;
                }
            }
            let coords = OrderBasis::coords_in_sublattice(ideal, &prod)
                .ok_or_else(|| Error::Invariant("lattice is not an ideal".into()))?;
            row.extend(coords.iter().map(|c| fp::reduce(c, ps)));
        }
        m.push(row);
    }
    let ker = fp::left_kernel(&m, n, ps);
    let u = lift_with_p(&ker, n, p);
    // O' = (1/p) U, rewritten over the power basis
    let num = u.checked_mul(order.numerators())?;
    OrderBasis::from_lattice(order.poly(), &num, &(order.denom() * p))
}

/// Enlarges `order` until it is `p`-maximal.
pub fn maximal_order_at(order: &OrderBasis, p: &BigInt) -> Result<OrderBasis> {
    let mut current = order.clone();
    loop {
        let rad = p_radical(&current, p)?;
        let next = ring_of_multipliers(&current, &rad, p)?;
        if next.index() == current.index() {
            return Ok(current);
        }
        current = next;
    }
}

fn rng_for_prime(seed: u64, p: &BigInt) -> ChaCha8Rng {
    let low = (p % BigInt::from(u64::MAX)).to_u64().unwrap_or(0);
    ChaCha8Rng::seed_from_u64(seed ^ low.rotate_left(17))
}

/// The maximal order of `Q[x]/(f)`, with default factorization bound and seed 0.
///
/// `f` must be monic and irreducible; irreducibility is the caller's
/// responsibility (see [`crate::analysis::analyze`]).
pub fn maximal_order(f: &IntPolynomial) -> Result<OrderBasis> {
    maximal_order_with(f, &FactorConfig::default(), 0)
}

pub fn maximal_order_with(f: &IntPolynomial, config: &FactorConfig, seed: u64) -> Result<OrderBasis> {
    let n = f.require_monic()?;
    let base = OrderBasis::equation_order(f)?;
    let disc = base.disc_poly().clone();
    if disc.is_zero() {
        return Err(Error::Reducible { factor: f.clone() });
    }
    let fac = factor_with(&disc, config)?;
    let mut local: Vec<OrderBasis> = Vec::new();
    for (p, e) in fac.factors() {
        if e < 2 {
            continue;
        }
        let mut rng = rng_for_prime(seed, p);
        if let DedekindOutcome::Enlarged(o) = dedekind_test(f, p, &mut rng)? {
            local.push(maximal_order_at(&o, p)?);
        }
    }
    if local.is_empty() {
        return Ok(base);
    }
    let denom = local.iter().fold(BigInt::one(), |l, o| l.lcm(o.denom()));
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n * local.len());
    for o in &local {
        let s = &denom / o.denom();
        rows.extend(o.numerators().row_vecs().into_iter().map(|r| r.into_iter().map(|x| x * &s).collect::<Vec<_>>()));
    }
    OrderBasis::from_lattice(f, &IntMatrix::from_rows(rows)?, &denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn maximal_order_examples() {
        let o = maximal_order(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!((o.index().clone(), o.disc().clone()), (BigInt::from(1), BigInt::from(8)));
        assert_eq!(o.numerators(), &IntMatrix::identity(2));

        let o = maximal_order(&poly(&[-6, 1, 0, 1])).unwrap();
        assert_eq!((o.index().clone(), o.disc().clone()), (BigInt::from(2), BigInt::from(-244)));

        let o = maximal_order(&poly(&[-5, 0, 1])).unwrap();
        assert_eq!(o.denom(), &BigInt::from(2));
        assert_eq!(o.numerators(), &IntMatrix::from_i64(&[&[2, 0], &[1, 1]]));
        assert_eq!(o.disc(), &BigInt::from(5));
        assert_eq!(o.trace_gram().det().unwrap(), BigInt::from(5));
    }

    #[test]
    fn radical_and_multipliers() {
        let f = poly(&[-6, 1, 0, 1]);
        let z = OrderBasis::equation_order(&f).unwrap();
        let rad = p_radical(&z, &BigInt::from(2)).unwrap();
        let o = ring_of_multipliers(&z, &rad, &BigInt::from(2)).unwrap();
        assert_eq!(o.index(), &BigInt::from(2));
        // idempotent on the maximal order
        let rad = p_radical(&o, &BigInt::from(2)).unwrap();
        assert_eq!(ring_of_multipliers(&o, &rad, &BigInt::from(2)).unwrap(), o);
        // unramified prime: radical is pO
        let rad = p_radical(&o, &BigInt::from(3)).unwrap();
        assert_eq!(rad, hnf(&IntMatrix::from_i64(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])));
    }

    #[test]
    fn high_index_orders() {
        // x^2 - 180 = x^2 - 6^2 * 5
        let o = maximal_order(&poly(&[-180, 0, 1])).unwrap();
        assert_eq!((o.index().clone(), o.disc().clone()), (BigInt::from(12), BigInt::from(5)));
        // x^4 + 6^4 defines Q(zeta_8)
        let o = maximal_order(&poly(&[1296, 0, 0, 0, 1])).unwrap();
        let o2 = maximal_order(&poly(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(o.disc(), o2.disc());
    }
}
