//! Linear algebra over prime fields. Vectors are rows and matrices act on the right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, ", self.p)?;
        for r in 0..self.rows {
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, ")")
    }
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<FpMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.rows);
        let p = self.p;
        let mut out = FpMatrix::zero(p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = (out.data[i * o.cols + j] + a * o.get(k, j)) % p;
                    out.data[i * o.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &FpMatrix) -> FpMatrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + b) % self.p).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn neg(&self) -> FpMatrix {
        let data = self.data.iter().map(|a| (self.p - a) % self.p).collect();
        FpMatrix { data, ..self.clone() }
    }

    /// `v · M` for a row vector `v`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + a * self.get(i, j)) % self.p;
            }
        }
        out
    }

    pub fn kronecker(&self, o: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, self.get(i, j) * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut r = RowReducer::new(self.p, self.cols);
        for i in 0..self.rows {
            r.insert(self.row(i).to_vec());
        }
        r.rank()
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::SingularMatrix);
        }
        let p = self.p;
        let mut a = self.clone();
        let mut inv = FpMatrix::identity(p, n);
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return Err(Error::SingularMatrix);
            };
            for j in 0..n {
                a.data.swap(c * n + j, piv * n + j);
                inv.data.swap(c * n + j, piv * n + j);
            }
            let s = inv_mod(a.get(c, c), p);
            for j in 0..n {
                a.set(c, j, a.get(c, j) * s);
                inv.set(c, j, inv.get(c, j) * s);
            }
            for r in 0..n {
                if r == c || a.get(r, c) == 0 {
                    continue;
                }
                let f = a.get(r, c);
                for j in 0..n {
                    a.set(r, j, a.get(r, j) + p - f * a.get(c, j) % p);
                    inv.set(r, j, inv.get(r, j) + p - f * inv.get(c, j) % p);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        *self == FpMatrix::identity(self.p, self.rows)
    }

    pub fn det(&self) -> u64 {
        let n = self.rows;
        let p = self.p;
        let mut a = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(c * n + j, piv * n + j);
                }
                det = (p - det) % p;
            }
            det = det * a.get(c, c) % p;
            let s = inv_mod(a.get(c, c), p);
            for r in c + 1..n {
                let f = a.get(r, c) * s % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a.set(r, j, a.get(r, j) + p - f * a.get(c, j) % p);
                }
            }
        }
        det
    }
}

/// Incremental row echelon form. Rows are kept reduced against each other.
#[derive(Clone, Debug)]
pub struct RowReducer {
    pub p: u64,
    pub ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(p: u64, ncols: usize) -> RowReducer {
        RowReducer { p, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = (*x + p - f * r % p) % p;
            }
        }
    }

    /// Adds a row; returns the pivot column of the new row if it was independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> Option<usize> {
        self.reduce(&mut v);
        let pc = v.iter().position(|&x| x != 0)?;
        let s = inv_mod(v[pc], self.p);
        for x in v.iter_mut() {
            *x = *x * s % self.p;
        }
        let p = self.p;
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = (*x + p - f * r % p) % p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        Some(pc)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rows sorted by pivot column: the reduced row echelon basis.
    pub fn echelon(&self) -> Vec<Vec<u64>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }
}

/// Dimension of the solution space of `x · M = 0` for an `r × c` matrix.
pub fn left_kernel_dim(m: &FpMatrix) -> usize {
    m.rows - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn inverse_roundtrip(entries in proptest::collection::vec(0u64..7, 9)) {
            let m = FpMatrix { p: 7, rows: 3, cols: 3, data: entries };
            match m.inverse() {
                Ok(inv) => {
                    prop_assert!(m.mul(&inv).is_identity());
                    prop_assert!(m.det() != 0);
                }
                Err(_) => prop_assert_eq!(m.det(), 0),
            }
        }
    }

    #[test]
    fn echelon_rank() {
        let mut r = RowReducer::new(5, 3);
        assert!(r.insert(vec![1, 2, 3]).is_some());
        assert!(r.insert(vec![2, 4, 1]).is_none());
        assert!(r.insert(vec![0, 1, 4]).is_some());
        assert!(r.insert(vec![1, 3, 2]).is_none());
        assert_eq!(r.rank(), 2);
    }
}
