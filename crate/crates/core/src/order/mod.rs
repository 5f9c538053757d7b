//! Orders of `K = Q[x]/(f)` as lattices over the power basis `1, a, ..., a^(n-1)`.
//!
//! An [`OrderBasis`] stores a lower-triangular integer HNF numerator matrix
//! and one common denominator; row `i` is the basis element `w_i`. The first
//! row is always `1`. Traces are traces of the regular representation, read
//! off the multiplication table.

mod algebra;
mod dedekind;
mod round2;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) use algebra::AlgebraModP;
pub use dedekind::{dedekind_test, DedekindOutcome};
pub use round2::{maximal_order, maximal_order_at, maximal_order_with, p_radical, ring_of_multipliers};

use crate::arith::{gcd_all, hnf, IntMatrix};
use crate::poly::{discriminant, IntPolynomial};
use crate::{Error, Result};

/// Which basis a [`FieldElement`]'s coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    Power,
    /// Fingerprint of a specific order basis.
    Order(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<BigRational>,
    basis: BasisTag,
}

impl FieldElement {
    pub fn new(coords: Vec<BigRational>, basis: BasisTag) -> Self {
        FieldElement { coords, basis }
    }

    pub fn from_ints(coords: &[BigInt], basis: BasisTag) -> Self {
        Self::new(coords.iter().map(|c| BigRational::from_integer(c.clone())).collect(), basis)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn is_integral_coords(&self) -> bool {
        self.coords.iter().all(BigRational::is_integer)
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct OrderBasis {
    poly: IntPolynomial,
    basis: IntMatrix,
    denom: BigInt,
    disc_poly: BigInt,
    disc: BigInt,
    index: BigInt,
    /// `table[i][j]` = coordinates of `w_i * w_j`.
    table: Vec<Vec<Vec<BigInt>>>,
    traces: Vec<BigInt>,
    tag: u64,
}

impl PartialEq for OrderBasis {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.basis == other.basis && self.denom == other.denom
    }
}

impl Eq for OrderBasis {}

/// `x^k mod f` for the monic `f`.
fn reduce_mod(f: &IntPolynomial, g: &IntPolynomial) -> Vec<BigInt> {
    let n = f.degree().unwrap();
    let (_, r) = g.divrem_monic(f);
    (0..n).map(|i| r.coeff(i)).collect()
}

impl OrderBasis {
    /// The equation order `Z[a]`.
    pub fn equation_order(f: &IntPolynomial) -> Result<Self> {
        let n = f.require_monic()?;
        Self::from_lattice(f, &IntMatrix::identity(n), &BigInt::one())
    }

    /// The order spanned by the rows of `numerators / denom` over the power
    /// basis. Fails if the lattice is not a full-rank ring containing 1.
    pub fn from_lattice(f: &IntPolynomial, numerators: &IntMatrix, denom: &BigInt) -> Result<Self> {
        let n = f.require_monic()?;
        if numerators.cols() != n {
            return Err(Error::Dimension(format!("expected {n} columns, got {}", numerators.cols())));
        }
        let mut basis = hnf(numerators);
        if basis.rows() != n {
            return Err(Error::Dimension(format!("lattice has rank {} < {n}", basis.rows())));
        }
        let mut entries: Vec<BigInt> = basis.row_vecs().into_iter().flatten().collect();
        entries.push(denom.clone());
        let g = gcd_all(&entries);
        let mut denom = denom.clone();
        if !g.is_one() {
            basis = IntMatrix::from_rows(
                basis.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect(),
            )?;
            denom /= &g;
        }
        if denom.is_negative() {
            return Err(Error::Invariant("negative denominator".into()));
        }
        let det: BigInt = (0..n).map(|i| basis[(i, i)].clone()).product();
        let dn = num_traits::pow(denom.clone(), n);
        let (index, rem) = dn.div_rem(&det);
        if !rem.is_zero() {
            return Err(Error::Invariant("lattice does not contain Z[a]".into()));
        }
        let disc_poly = discriminant(f)?;
        let (disc, rem) = disc_poly.div_rem(&(&index * &index));
        if !rem.is_zero() {
            return Err(Error::NotIntegral);
        }
        let mut hasher = DefaultHasher::new();
        f.hash(&mut hasher);
        basis.hash(&mut hasher);
        denom.hash(&mut hasher);
        let tag = hasher.finish();

        let mut order = OrderBasis {
            poly: f.clone(),
            basis,
            denom,
            disc_poly,
            disc,
            index,
            table: Vec::new(),
            traces: Vec::new(),
            tag,
        };
        order.build_table()?;
        Ok(order)
    }

    fn build_table(&mut self) -> Result<()> {
        let n = self.degree();
        let rows: Vec<IntPolynomial> = (0..n)
            .map(|i| IntPolynomial::new(self.basis.row(i).to_vec()))
            .collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        let d2 = &self.denom * &self.denom;
        for i in 0..n {
            for j in i..n {
                let prod = reduce_mod(&self.poly, &rows[i].mul(&rows[j]));
                let coords = self
                    .solve(&prod, &d2)
                    .ok_or_else(|| Error::Invariant("lattice is not closed under multiplication".into()))?;
                table[i][j] = coords.clone();
                table[j][i] = coords;
            }
        }
        self.traces = (0..n)
            .map(|k| (0..n).map(|i| table[k][i][i].clone()).sum())
            .collect();
        self.table = table;
        if !self.basis.row(0).iter().skip(1).all(Zero::is_zero) || self.basis[(0, 0)] != self.denom {
            return Err(Error::Invariant("first basis element is not 1".into()));
        }
        Ok(())
    }

    /// Integer coordinates of `v / vdenom` (power basis) over this basis.
    fn solve(&self, v: &[BigInt], vdenom: &BigInt) -> Option<Vec<BigInt>> {
        let coords = self.solve_rational(v, vdenom);
        coords.into_iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    fn solve_rational(&self, v: &[BigInt], vdenom: &BigInt) -> Vec<BigRational> {
        let n = self.degree();
        // x * B = v * d / vdenom, B lower triangular
        let scale = BigRational::new(self.denom.clone(), vdenom.clone());
        let w: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone()) * &scale).collect();
        let mut x = vec![BigRational::zero(); n];
        for j in (0..n).rev() {
            let mut acc = w[j].clone();
            for i in j + 1..n {
                if !self.basis[(i, j)].is_zero() {
                    acc -= &x[i] * BigRational::from_integer(self.basis[(i, j)].clone());
                }
            }
            x[j] = acc / BigRational::from_integer(self.basis[(j, j)].clone());
        }
        x
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.basis.cols()
    }

    /// HNF numerator matrix; row `i` times `1/denom` is `w_i` over the power basis.
    pub fn numerators(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn disc_poly(&self) -> &BigInt {
        &self.disc_poly
    }

    /// `[O : Z[a]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn tag(&self) -> BasisTag {
        BasisTag::Order(self.tag)
    }

    /// Coordinates of `w_i * w_j` over this basis.
    pub fn product_coords(&self, i: usize, j: usize) -> &[BigInt] {
        &self.table[i][j]
    }

    /// `Tr(w_i)` for every basis element.
    pub fn basis_traces(&self) -> &[BigInt] {
        &self.traces
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = BigInt::one();
        FieldElement::from_ints(&c, self.tag())
    }

    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[i] = BigInt::one();
        FieldElement::from_ints(&c, self.tag())
    }

    /// Rewrites an element over the power basis.
    pub fn to_power_basis(&self, a: &FieldElement) -> Result<FieldElement> {
        match a.basis {
            BasisTag::Power => Ok(a.clone()),
            BasisTag::Order(t) if t == self.tag => {
                let n = self.degree();
                let d = BigRational::from_integer(self.denom.clone());
                let coords = (0..n)
                    .map(|j| {
                        let s: BigRational = (0..n)
                            .map(|i| &a.coords[i] * BigRational::from_integer(self.basis[(i, j)].clone()))
                            .sum();
                        s / &d
                    })
                    .collect();
                Ok(FieldElement::new(coords, BasisTag::Power))
            }
            _ => Err(Error::MixedBasis),
        }
    }

    /// Rewrites a power-basis element over this order's basis.
    pub fn from_power_basis(&self, a: &FieldElement) -> Result<FieldElement> {
        match a.basis {
            BasisTag::Power => {
                let lcm = a.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                let v: Vec<BigInt> = a.coords.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
                Ok(FieldElement::new(self.solve_rational(&v, &lcm), self.tag()))
            }
            BasisTag::Order(t) if t == self.tag => Ok(a.clone()),
            _ => Err(Error::MixedBasis),
        }
    }

    pub fn multiply(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        if a.basis != b.basis {
            return Err(Error::MixedBasis);
        }
        let n = self.degree();
        match a.basis {
            BasisTag::Order(t) if t == self.tag => {
                let mut out = vec![BigRational::zero(); n];
                for i in 0..n {
                    if a.coords[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if b.coords[j].is_zero() {
                            continue;
                        }
                        let c = &a.coords[i] * &b.coords[j];
                        for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                            if !t.is_zero() {
                                *o += &c * BigRational::from_integer(t.clone());
                            }
                        }
                    }
                }
                Ok(FieldElement::new(out, a.basis))
            }
            BasisTag::Power => {
                let lcm_a = a.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                let lcm_b = b.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                let pa = scaled_poly(&a.coords, &lcm_a);
                let pb = scaled_poly(&b.coords, &lcm_b);
                let r = reduce_mod(&self.poly, &pa.mul(&pb));
                let den = BigRational::from_integer(lcm_a * lcm_b);
                Ok(FieldElement::new(
                    r.into_iter().map(|c| BigRational::from_integer(c) / &den).collect(),
                    BasisTag::Power,
                ))
            }
            _ => Err(Error::MixedBasis),
        }
    }

    /// Trace of multiplication by `a` as a `Q`-linear map of `K`.
    pub fn element_trace(&self, a: &FieldElement) -> Result<BigRational> {
        let n = self.degree();
        match a.basis {
            BasisTag::Order(t) if t == self.tag => Ok((0..n)
                .map(|i| &a.coords[i] * BigRational::from_integer(self.traces[i].clone()))
                .sum()),
            BasisTag::Power => {
                // Tr(a^k) = sum_i [coefficient of a^i in a^(k+i) mod f]
                let mut total = BigRational::zero();
                for (k, c) in a.coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let tr: BigInt = (0..n)
                        .map(|i| {
                            let mut m = vec![BigInt::zero(); k + i + 1];
                            m[k + i] = BigInt::one();
                            reduce_mod(&self.poly, &IntPolynomial::new(m))[i].clone()
                        })
                        .sum();
                    total += c * BigRational::from_integer(tr);
                }
                Ok(total)
            }
            _ => Err(Error::MixedBasis),
        }
    }

    /// The trace form `Tr(w_i w_j)`.
    pub fn trace_gram(&self) -> IntMatrix {
        let n = self.degree();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.table[i][j]
                    .iter()
                    .zip(&self.traces)
                    .map(|(c, t)| c * t)
                    .sum();
            }
        }
        g
    }

    /// Multiplication table reduced modulo `p`.
    pub(crate) fn algebra_mod(&self, p: u64) -> AlgebraModP {
        AlgebraModP::from_table(&self.table, p)
    }

    /// Expresses the integer vector `v` (coordinates over this basis) over the
    /// sublattice with lower-triangular HNF basis `sub`; `None` if outside.
    pub(crate) fn coords_in_sublattice(sub: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = v.len();
        let mut x = vec![BigInt::zero(); n];
        for j in (0..n).rev() {
            let mut acc = v[j].clone();
            for i in j + 1..n {
                acc -= &x[i] * &sub[(i, j)];
            }
            let (q, r) = acc.div_rem(&sub[(j, j)]);
            if !r.is_zero() {
                return None;
            }
            x[j] = q;
        }
        Some(x)
    }
}

fn scaled_poly(coords: &[BigRational], lcm: &BigInt) -> IntPolynomial {
    IntPolynomial::new(
        coords
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn equation_order_basics() {
        let f = IntPolynomial::from_i64(&[-6, 1, 0, 1]);
        let o = OrderBasis::equation_order(&f).unwrap();
        assert_eq!(o.index(), &BigInt::one());
        assert_eq!(o.disc(), &BigInt::from(-976));
        assert_eq!(o.element_trace(&o.one()).unwrap(), q(3, 1));
        assert_eq!(o.element_trace(&o.basis_element(1)).unwrap(), q(0, 1));
        assert_eq!(o.trace_gram().det().unwrap(), BigInt::from(-976));
    }

    #[test]
    fn half_integral_order_of_sqrt5() {
        let f = IntPolynomial::from_i64(&[-5, 0, 1]);
        let num = IntMatrix::from_i64(&[&[2, 0], &[1, 1]]);
        let o = OrderBasis::from_lattice(&f, &num, &BigInt::from(2)).unwrap();
        assert_eq!(o.index(), &BigInt::from(2));
        assert_eq!(o.disc(), &BigInt::from(5));
        assert_eq!(o.element_trace(&o.basis_element(1)).unwrap(), q(1, 1));
        let golden = FieldElement::new(vec![q(1, 2), q(1, 2)], BasisTag::Power);
        assert_eq!(o.element_trace(&golden).unwrap(), q(1, 1));
        let w = o.from_power_basis(&golden).unwrap();
        assert_eq!(w.coords(), &[q(0, 1), q(1, 1)]);
        // golden^2 = golden + 1
        let sq = o.multiply(&w, &w).unwrap();
        assert_eq!(sq.coords(), &[q(1, 1), q(1, 1)]);
        assert_eq!(o.multiply(&golden, &golden).unwrap().coords(), &[q(3, 2), q(1, 2)]);
        assert_eq!(o.multiply(&w, &golden), Err(Error::MixedBasis));
    }

    #[test]
    fn rejects_non_ring_lattice() {
        // Z + Z*(a/2) is not closed under multiplication for a^2 = 2... it is
        // not: (a/2)^2 = 1/2.
        let f = IntPolynomial::from_i64(&[-2, 0, 1]);
        let num = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(OrderBasis::from_lattice(&f, &num, &BigInt::from(2)).is_err());
    }
}
