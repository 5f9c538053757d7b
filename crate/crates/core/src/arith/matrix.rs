//! Dense integer matrices with Hermite and Smith normal forms.
//!
//! Lattices are stored as row generators. The Hermite normal form used
//! throughout the crate is lower-echelon: every row's pivot is its last
//! nonzero entry, pivots are positive, pivot columns strictly increase from
//! one row to the next, and every entry sitting in a pivot column of a later
//! row is reduced into `[0, pivot)`. For a full-rank square lattice this is a
//! lower-triangular matrix with positive diagonal.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Hermite normal form of the row lattice of `m` (zero rows dropped).
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut pending: Vec<Vec<BigInt>> = m
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();

    for col in (0..cols).rev() {
        loop {
            let mut best: Option<usize> = None;
            for (i, r) in pending.iter().enumerate() {
                if r[col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| r[col].abs() < pending[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            let piv = pending.swap_remove(b);
            let mut done = true;
            for r in pending.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&piv[col]);
                axpy(r, &q, &piv);
                if !r[col].is_zero() {
                    done = false;
                }
            }
            if done {
                let mut piv = piv;
                if piv[col].is_negative() {
                    piv.iter_mut().for_each(|x| *x = -&*x);
                }
                pivots.push((col, piv));
                pending.retain(|r| r.iter().any(|x| !x.is_zero()));
                break;
            }
            pending.push(piv);
        }
    }

    pivots.reverse();
    for k in 1..pivots.len() {
        for i in (0..k).rev() {
            let (c, _) = pivots[i];
            let (head, tail) = pivots.split_at_mut(k);
            let pivot_row = &head[i].1;
            let row = &mut tail[0].1;
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                axpy(row, &q, pivot_row);
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = pivots.into_iter().map(|(_, r)| r).collect();
    let n = rows.len();
    if n == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(rows).unwrap_or_else(|_| IntMatrix::zeros(n, cols))
}

/// Smith normal form `left * m * right == diag` with unimodular transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    /// Nonzero elementary divisors `d_1 | d_2 | ...`.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols()))
            .map(|i| self.diag[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);

    let row_op = |a: &mut IntMatrix, dst: usize, q: &BigInt, src: usize| {
        for j in 0..a.cols() {
            let v = &a[(src, j)] * q;
            a[(dst, j)] -= v;
        }
    };
    let col_op = |a: &mut IntMatrix, dst: usize, q: &BigInt, src: usize| {
        for i in 0..a.rows() {
            let v = &a[(i, src)] * q;
            a[(i, dst)] -= v;
        }
    };
    let swap_rows = |a: &mut IntMatrix, i: usize, j: usize| {
        for k in 0..a.cols() {
            let t = a[(i, k)].clone();
            a[(i, k)] = a[(j, k)].clone();
            a[(j, k)] = t;
        }
    };
    let swap_cols = |a: &mut IntMatrix, i: usize, j: usize| {
        for k in 0..a.rows() {
            let t = a[(k, i)].clone();
            a[(k, i)] = a[(k, j)].clone();
            a[(k, j)] = t;
        }
    };

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                swap_rows(&mut a, bi, t);
                swap_rows(&mut left, bi, t);
            }
            if bj != t {
                swap_cols(&mut a, bj, t);
                swap_cols(&mut right, bj, t);
            }
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_op(&mut a, i, &q, t);
                row_op(&mut left, i, &q, t);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_op(&mut a, j, &q, t);
                col_op(&mut right, j, &q, t);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t
            let piv = a[(t, t)].clone();
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_op(&mut a, t, &minus_one, i);
                    row_op(&mut left, t, &minus_one, i);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..c {
                a[(t, j)] = -&a[(t, j)];
            }
            for j in 0..r {
                left[(t, j)] = -&left[(t, j)];
            }
        }
    }
    Snf { diag: a, left, right }
}
