//! Dense rational matrices and fraction-free inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Sparse matrix-vector product; `v` is given as `(index, value)` pairs.
    pub fn mul_sparse_vec<'a>(&self, v: impl IntoIterator<Item = (usize, &'a Rational)>) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v {
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Exact inverse by fraction-free Gauss–Jordan elimination.
    ///
    /// Rows are first scaled to integers (`A' = D A`), then `[A' | I]` is
    /// reduced with Bareiss updates, every division being exact. At the end
    /// the left block is `d·I` and the right block is `d·A'^{-1}`, so
    /// `A^{-1} = A'^{-1} D`.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let w = 2 * n;
        let mut scale = Vec::with_capacity(n);
        let mut m: Vec<BigInt> = Vec::with_capacity(n * w);
        for i in 0..n {
            let d = denominator_lcm(self.row(i));
            for a in self.row(i) {
                m.push(a.numer() * (&d / a.denom()));
            }
            for j in 0..n {
                m.push(if i == j { BigInt::one() } else { BigInt::zero() });
            }
            scale.push(d);
        }

        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m[r * w + k].is_zero()).ok_or(Error::Singular)?;
            if pivot_row != k {
                for j in 0..w {
                    m.swap(k * w + j, pivot_row * w + j);
                }
            }
            let pivot = m[k * w + k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = m[i * w + k].clone();
                for j in 0..w {
                    let v = &pivot * &m[i * w + j] - &factor * &m[k * w + j];
                    let (q, r) = v.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i * w + j] = q;
                }
            }
            prev = pivot;
        }

        let det = prev;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            debug_assert_eq!(m[i * w + i], det);
            for j in 0..n {
                let v = Rational::new(m[i * w + n + j].clone() * &scale[j], det.clone());
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn inverse_of_small_matrix() {
        let a = RationalMatrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![ratio(1, 3), int(0), int(4)],
            vec![int(0), ratio(-1, 2), int(1)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn needs_pivoting() {
        let a = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(a.inverse().unwrap(), a);
    }

    #[test]
    fn singular_is_reported() {
        let a = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(a.inverse(), Err(Error::Singular));
    }

    #[test]
    fn hilbert_matrix_round_trip() {
        let n = 7;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| ratio(1, (i + j + 1) as i64)).collect())
            .collect();
        let h = RationalMatrix::from_rows(rows).unwrap();
        assert!(h.mul(&h.inverse().unwrap()).unwrap().is_identity());
    }
}
