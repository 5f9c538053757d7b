//! Arithmetic and dense linear algebra over `F_p` for primes below 2^63.
//!
//! Vectors are rows (`Vec<u64>` with entries in `[0, p)`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{Error, Result};

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// Residue of an arbitrary integer.
pub fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Checks that `p` is a prime usable as a modulus here.
pub fn small_prime(p: &BigInt) -> Result<u64> {
    if !super::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    match p.to_u64() {
        Some(v) if v < (1 << 63) => Ok(v),
        _ => Err(Error::PrimeTooLarge(p.clone())),
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = sub(*x, mul(f, *y, p), p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the row space in reduced echelon form.
pub fn row_space(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m = rows.to_vec();
    let piv = rref(&mut m, p);
    (m, piv)
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    row_space(rows, p).0.len()
}

/// Basis of `{v : v * m == 0}` where `m` has `n` rows (vectors act on the left).
pub fn left_kernel(m: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let ncols = m.first().map_or(0, Vec::len);
    // transpose: columns of m become equations in v
    let mut eqs: Vec<Vec<u64>> = (0..ncols).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    let pivots = rref(&mut eqs, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (row, &pc) in eqs.iter().zip(&pivots) {
                v[pc] = neg(row[fc], p);
            }
            v
        })
        .collect()
}

/// Reduces `v` modulo a subspace given in reduced echelon form.
pub fn reduce_mod_space(v: &mut [u64], space: &[Vec<u64>], pivots: &[usize], p: u64) {
    for (row, &c) in space.iter().zip(pivots) {
        let f = v[c];
        if f == 0 {
            continue;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x = sub(*x, mul(f, *y, p), p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_projection() {
        let p = 5;
        // v -> v*m where m kills the last coordinate
        let m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
        let k = left_kernel(&m, 3, p);
        assert_eq!(k, vec![vec![0, 0, 1]]);
        let m = vec![vec![1, 1], vec![2, 2]];
        let k = left_kernel(&m, 2, p);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(add(mul(v[0], 1, p), mul(v[1], 2, p), p), 0);
    }

    #[test]
    fn echelon_and_reduction() {
        let p = 7;
        let (space, piv) = row_space(&[vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1]], p);
        assert_eq!(space.len(), 2);
        let mut v = vec![3, 6, 9 % 7];
        reduce_mod_space(&mut v, &space, &piv, p);
        assert_eq!(v, vec![0, 0, 0]);
        assert_eq!(inv(3, 7), 5);
        assert_eq!(reduce(&BigInt::from(-1), 7), 6);
    }
}
