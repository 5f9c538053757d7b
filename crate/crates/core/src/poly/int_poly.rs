use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Polynomial over the integers, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn require_monic(&self) -> Result<usize> {
        match self.degree() {
            None | Some(0) => Err(Error::ConstantPolynomial),
            Some(n) if self.is_monic() => Ok(n),
            Some(_) => Err(Error::NotMonic(self.clone())),
        }
    }

    pub fn content(&self) -> BigInt {
        crate::arith::gcd_all(&self.coeffs)
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let Some(ds) = self.degree() else { return Self::zero() };
        if ds < dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut steps = ds - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[top - dd + i] -= &t * dc;
            }
            r.pop();
            steps -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let tail = num_traits::pow(lc, steps);
        Self::new(r.into_iter().map(|c| c * &tail).collect())
    }

    /// Exact division by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem_monic(d);
        r.is_zero().then_some(q)
    }

    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let t = r[top].clone();
            if t.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[top - dd + i] -= &t * dc;
            }
            q[top - dd] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Coefficients highest degree first.
    pub fn coeffs_high_to_low(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

impl fmt::Display for IntPolynomial {
    /// Compact ASCII form such as `x^3+x-6`, the same syntax the parser reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
