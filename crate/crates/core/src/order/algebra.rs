use num_bigint::BigInt;

use crate::arith::fp;

/// `O / pO` as an `F_p`-algebra with structure constants over the order basis.
#[derive(Debug, Clone)]
pub(crate) struct AlgebraModP {
    pub n: usize,
    pub p: u64,
    table: Vec<Vec<Vec<u64>>>,
}

impl AlgebraModP {
    pub fn from_table(table: &[Vec<Vec<BigInt>>], p: u64) -> Self {
        let t = table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| fp::reduce(c, p)).collect()).collect())
            .collect();
        AlgebraModP { n: table.len(), p, table: t }
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[0] = 1 % self.p;
        v
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut acc = vec![0u128; self.n];
        let bound = u128::MAX / 2;
        let mut out = vec![0u64; self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = fp::mul(ai, bj, p) as u128;
                for (k, &t) in self.table[i][j].iter().enumerate() {
                    if t != 0 {
                        acc[k] += c * t as u128;
                        if acc[k] > bound {
                            acc[k] %= p as u128;
                        }
                    }
                }
            }
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = (a % p as u128) as u64;
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Smallest `p^j >= n`, the exponent whose power map kills the radical.
    pub fn radical_exponent(&self) -> u128 {
        let mut q = self.p as u128;
        while q < self.n as u128 {
            q *= self.p as u128;
        }
        q
    }

    /// Basis of the Jacobson radical of the algebra, in reduced echelon form.
    pub fn radical(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let q = self.radical_exponent();
        let images: Vec<Vec<u64>> = (0..self.n).map(|i| self.pow(&self.unit(i), q)).collect();
        let ker = fp::left_kernel(&images, self.n, self.p);
        fp::row_space(&ker, self.p)
    }

    /// Row space of all products `a * b`, `a` in `xs`, `b` in `ys`.
    pub fn product_space(&self, xs: &[Vec<u64>], ys: &[Vec<u64>]) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut rows = Vec::with_capacity(xs.len() * ys.len());
        for x in xs {
            for y in ys {
                rows.push(self.mul(x, y));
            }
        }
        fp::row_space(&rows, self.p)
    }
}
