//! Polynomials over `F_p` and their complete factorization.
//!
//! Factoring runs squarefree decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a caller-supplied
//! random generator.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;

use super::IntPolynomial;
use crate::arith::fp;
use crate::arith::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPolynomial {
    /// Reduces the coefficients (lowest degree first) modulo `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = ModPolynomial { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        out.trim();
        out
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|c| fp::reduce(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPolynomial { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = fp::inv(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| fp::mul(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| fp::add(self.coeff(i), other.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| fp::sub(self.coeff(i), other.coeff(i), self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = fp::inv(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let t = fp::mul(r[top], inv, p);
            if t == 0 {
                continue;
            }
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[top - dd + i] = fp::sub(r[top - dd + i], fp::mul(t, dc, p), p);
            }
            q[top - dd] = t;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient (panics on a nonzero remainder in debug builds).
    pub fn div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fp::inv(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| fp::mul(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| fp::add(fp::mul(acc, x, self.p), c, self.p))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// For `f = g(x^p)`, returns `g` (the `p`-th root, since `a^p = a` in `F_p`).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self.to_int(), self.p)
    }
}

impl fmt::Debug for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `f(g) mod modulus`.
pub fn poly_mod_compose(f: &ModPolynomial, g: &ModPolynomial, modulus: &ModPolynomial) -> ModPolynomial {
    let p = f.modulus();
    let g = g.rem(modulus);
    let mut acc = ModPolynomial::zero(p);
    for &c in f.coeffs().iter().rev() {
        acc = acc.mul(&g).add(&ModPolynomial::new(p, vec![c])).rem(modulus);
    }
    acc
}

/// Matrix of the Frobenius `a -> a^p` on `F_p[x]/(f)`: row `i` holds the
/// coordinates of `x^(i p) mod f`.
pub fn frobenius_matrix(f: &ModPolynomial) -> IntMatrix {
    let n = f.degree().unwrap_or(0);
    let p = f.modulus();
    let xp = ModPolynomial::x(p).pow_mod_u64(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = ModPolynomial::one(p).rem(f);
    for _ in 0..n {
        rows.push((0..n).map(|j| BigInt::from(cur.coeff(j))).collect());
        cur = cur.mul(&xp).rem(f);
    }
    IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zeros(0, 0))
}

/// Berlekamp test: `f` is irreducible iff squarefree and `Q - I` has nullity 1.
pub fn is_irreducible_mod_p(f: &ModPolynomial) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !f.gcd(&f.derivative()).is_one() {
        return false;
    }
    let p = f.modulus();
    let q = frobenius_matrix(f);
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = fp::reduce(&q[(i, j)], p);
                    if i == j {
                        fp::sub(v, 1, p)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    fp::rank(&rows, p) == n - 1
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, k)` with `g`
/// squarefree and pairwise coprime, `f = prod g^k`.
pub fn squarefree_decomposition(f: &ModPolynomial) -> Vec<(ModPolynomial, u32)> {
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, k)| *k);
    out
}

fn sqf_into(f: &ModPolynomial, mult: u32, out: &mut Vec<(ModPolynomial, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.modulus();
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.div(&w);
    }
    if !c.is_one() {
        sqf_into(&c.pth_root(), mult * p as u32, out);
    }
}

/// Distinct-degree splitting of a squarefree monic `f`: pairs `(g, d)` where
/// `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let p = f.modulus();
    let x = ModPolynomial::x(p);
    let mut f = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod_u64(p, &f);
        let g = h.sub(&x).gcd(&f);
        if !g.is_one() {
            f = f.div(&g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        let deg = f.degree().unwrap();
        out.push((f, deg));
    }
    out
}

/// Splits a product of distinct irreducibles all of degree `d`.
pub fn equal_degree<R: Rng + ?Sized>(f: &ModPolynomial, d: usize, rng: &mut R) -> Vec<ModPolynomial> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.monic()];
    }
    let p = f.modulus();
    let exp = if p == 2 {
        None
    } else {
        let q = num_traits::pow(BigUint::from(p), d);
        Some((q - BigUint::one()) >> 1)
    };
    loop {
        let a = ModPolynomial::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = match &exp {
            Some(e) => a.pow_mod(e, f).sub(&ModPolynomial::one(p)),
            None => {
                // trace map a + a^2 + ... + a^(2^(d-1)) for characteristic 2
                let mut t = a.rem(f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(f);
                    acc = acc.add(&t);
                }
                acc
            }
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div(&g), d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients, exponent).
pub fn factor_mod_p<R: Rng + ?Sized>(f: &ModPolynomial, rng: &mut R) -> Vec<(ModPolynomial, u32)> {
    let mut out = Vec::new();
    for (g, k) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                out.push((irr, k));
            }
        }
    }
    out.sort_by(|(a, ka), (b, kb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
            .then(ka.cmp(kb))
    });
    out
}
