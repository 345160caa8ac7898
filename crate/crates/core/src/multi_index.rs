//! Exponent vectors `ν ∈ Z_+^N` with graded-lexicographic ordering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{binomial, factorial};

/// An exponent vector. Ordered graded-lexicographically: total degree first,
/// then by exponents from the first coordinate on (so `x1^2 > x1*x2 > x2^2`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(rank: usize) -> Self {
        MultiIndex(vec![0; rank])
    }

    pub fn unit(rank: usize, axis: usize) -> Self {
        let mut e = vec![0; rank];
        e[axis] = 1;
        MultiIndex(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|ν|`
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `ν!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// `binom(ν, ρ)`, zero unless `ρ ≤ ν`.
    pub fn binomial(&self, rho: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&rho.0)
            .fold(BigInt::one(), |acc, (&n, &k)| acc * binomial(n, k))
    }

    /// Componentwise partial order `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn add_unit(&self, axis: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[axis] += 1;
        MultiIndex(e)
    }

    pub fn sub_unit(&self, axis: usize) -> Option<MultiIndex> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[axis] -= 1;
        Some(MultiIndex(e))
    }

    pub fn doubled(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|e| 2 * e).collect())
    }

    /// `μ` with `self = 2μ`, if every component is even.
    pub fn halved(&self) -> Option<MultiIndex> {
        if self.0.iter().all(|e| e % 2 == 0) {
            Some(MultiIndex(self.0.iter().map(|e| e / 2).collect()))
        } else {
            None
        }
    }

    /// All `ρ ≤ self`, in ascending graded-lex order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        let mut out: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
        out.sort();
        out
    }

    /// All exponent vectors of total degree `n` in `rank` variables, in
    /// descending graded-lex order (`x1^n` first).
    pub fn of_degree(rank: usize, n: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0; rank];
        if rank == 0 {
            if n == 0 {
                out.push(MultiIndex(current));
            }
            return out;
        }
        fill_degree(&mut current, 0, n, &mut out);
        out
    }

    /// All exponent vectors with `|ν| ≤ n`, grouped by ascending degree.
    pub fn up_to_degree(rank: usize, n: u32) -> Vec<MultiIndex> {
        (0..=n).flat_map(|d| Self::of_degree(rank, d)).collect()
    }
}

fn fill_degree(current: &mut Vec<u32>, axis: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if axis + 1 == current.len() {
        current[axis] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[axis] = e;
        fill_degree(current, axis + 1, remaining - e, out);
    }
    current[axis] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// `2` for rank one, `(1,0,2)` otherwise.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn graded_lex_order() {
        assert!(mi(&[2, 0]) > mi(&[1, 1]));
        assert!(mi(&[1, 1]) > mi(&[0, 2]));
        assert!(mi(&[0, 2]) > mi(&[1, 0]));
        assert!(mi(&[0, 0]) < mi(&[0, 1]));
    }

    #[test]
    fn degree_enumeration() {
        let d2 = MultiIndex::of_degree(3, 2);
        assert_eq!(d2.len(), 6);
        assert_eq!(d2[0], mi(&[2, 0, 0]));
        assert_eq!(d2[5], mi(&[0, 0, 2]));
        for w in d2.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert_eq!(MultiIndex::up_to_degree(2, 3).len(), 10);
        assert_eq!(MultiIndex::of_degree(1, 4), vec![mi(&[4])]);
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(mi(&[2, 3]).factorial(), BigInt::from(12));
        assert_eq!(mi(&[4, 2]).binomial(&mi(&[2, 1])), BigInt::from(12));
        assert_eq!(mi(&[1, 2]).binomial(&mi(&[2, 0])), BigInt::from(0));
    }

    #[test]
    fn partial_order_and_lower_set() {
        assert!(mi(&[1, 0]).le(&mi(&[1, 2])));
        assert!(!mi(&[2, 0]).le(&mi(&[1, 2])));
        let lower = mi(&[1, 2]).lower_set();
        assert_eq!(lower.len(), 6);
        assert!(lower.iter().all(|r| r.le(&mi(&[1, 2]))));
        assert_eq!(mi(&[4, 2]).halved(), Some(mi(&[2, 1])));
        assert_eq!(mi(&[3, 2]).halved(), None);
    }

    #[test]
    fn display() {
        assert_eq!(mi(&[2]).to_string(), "2");
        assert_eq!(mi(&[1, 0, 2]).to_string(), "(1,0,2)");
    }
}
