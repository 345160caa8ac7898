//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`], so iteration is in
//! ascending graded-lex order and the printed form (descending) is stable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::rational::{format_rational, to_f64, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(rank), c)
    }

    /// The coordinate function `x_axis` (zero-based axis).
    pub fn var(rank: usize, axis: usize) -> Self {
        Self::monomial(MultiIndex::unit(rank, axis), Rational::one())
    }

    pub fn monomial(nu: MultiIndex, c: Rational) -> Self {
        let rank = nu.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(nu, c);
        }
        Polynomial { rank, terms }
    }

    /// `x^ν` with unit coefficient.
    pub fn x_pow(nu: &MultiIndex) -> Self {
        Self::monomial(nu.clone(), Rational::one())
    }

    /// Builds a polynomial from `(ν, c)` pairs, merging duplicates and dropping zeros.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut p = Polynomial::zero(rank);
        for (nu, c) in terms {
            if nu.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: nu.rank(),
                });
            }
            p.add_term(nu, c);
        }
        Ok(p)
    }

    /// Linear form `⟨a, x⟩`.
    pub fn linear_form(a: &[Rational]) -> Self {
        let rank = a.len();
        let mut p = Polynomial::zero(rank);
        for (i, c) in a.iter().enumerate() {
            p.add_term(MultiIndex::unit(rank, i), c.clone());
        }
        p
    }

    /// `|x|^2 = Σ x_i^2`.
    pub fn norm_squared(rank: usize) -> Self {
        let mut p = Polynomial::zero(rank);
        for i in 0..rank {
            p.add_term(MultiIndex::unit(rank, i).doubled(), Rational::one());
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|k| k.degree() as i64).max().unwrap_or(-1)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, nu: &MultiIndex) -> Rational {
        self.terms.get(nu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.rank))
    }

    pub fn add_term(&mut self, nu: MultiIndex, c: Rational) {
        debug_assert_eq!(nu.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(nu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Polynomial) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (nu, c) in &other.terms {
            out.add_term(nu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (nu, c) in &other.terms {
            out.add_term(nu.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = Polynomial::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^ν`.
    pub fn shift(&self, nu: &MultiIndex) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.add(nu), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.rank);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact `∂_axis p` (zero-based axis).
    pub fn partial_derivative(&self, axis: usize) -> Result<Polynomial> {
        if axis >= self.rank {
            return Err(Error::AxisOutOfRange { axis, rank: self.rank });
        }
        let mut out = Polynomial::zero(self.rank);
        for (nu, c) in &self.terms {
            let e = nu.get(axis);
            if e > 0 {
                out.add_term(nu.sub_unit(axis).unwrap(), c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Terms with `|ν| = n`.
    pub fn homogeneous_component(&self, n: u32) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Homogeneous components keyed by degree (only nonzero ones).
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (nu, c) in &self.terms {
            out.entry(nu.degree())
                .or_insert_with(|| Polynomial::zero(self.rank))
                .terms
                .insert(nu.clone(), c.clone());
        }
        out
    }

    /// Degree if the polynomial is homogeneous (the zero polynomial is
    /// homogeneous of every degree; reported as `Some(-1)`).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|k| k.degree());
        match degrees.next() {
            None => Some(-1),
            Some(d) => degrees.all(|e| e == d).then_some(d as i64),
        }
    }

    /// `x ↦ p(Mx)`.
    pub fn substitute_linear(&self, m: &LinearMap) -> Result<Polynomial> {
        if m.dim() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: m.dim(),
            });
        }
        if let Some(perm) = m.signed_permutation() {
            let mut out = Polynomial::zero(self.rank);
            for (nu, c) in &self.terms {
                let mut exps = vec![0u32; self.rank];
                let mut negative = false;
                for (i, &(j, neg)) in perm.iter().enumerate() {
                    let e = nu.get(i);
                    exps[j] += e;
                    if neg && e % 2 == 1 {
                        negative = !negative;
                    }
                }
                let c = if negative { -c } else { c.clone() };
                out.add_term(MultiIndex::new(exps), c);
            }
            return Ok(out);
        }
        let rows: Vec<Polynomial> = (0..self.rank).map(|i| Polynomial::linear_form(m.row(i))).collect();
        let mut powers: Vec<Vec<Polynomial>> = rows.iter().map(|r| vec![Polynomial::one(r.rank), r.clone()]).collect();
        let mut out = Polynomial::zero(self.rank);
        for (nu, c) in &self.terms {
            let mut term = Polynomial::constant(self.rank, c.clone());
            for (i, &e) in nu.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &rows[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Exact quotient `p / ⟨α, x⟩`. Fails with [`Error::NotDivisible`] if a
    /// nonzero remainder is left.
    pub fn divide_exact_by_linear_form(&self, alpha: &[Rational]) -> Result<Polynomial> {
        if alpha.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: alpha.len(),
            });
        }
        let pivot = alpha.iter().position(|a| !a.is_zero()).ok_or(Error::ZeroLinearForm)?;
        let inv = alpha[pivot].recip();
        // Long division in the pivot variable: eliminate the term of highest
        // pivot exponent until none is left.
        let mut rem: BTreeMap<(u32, MultiIndex), Rational> = self
            .terms
            .iter()
            .map(|(k, v)| ((k.get(pivot), k.clone()), v.clone()))
            .collect();
        let mut quotient = Polynomial::zero(self.rank);
        while let Some(entry) = rem.last_entry() {
            if entry.key().0 == 0 {
                return Err(Error::NotDivisible);
            }
            let ((_, nu), c) = entry.remove_entry();
            let q_nu = nu.sub_unit(pivot).unwrap();
            let q_c = &c * &inv;
            for (j, a) in alpha.iter().enumerate() {
                if j == pivot || a.is_zero() {
                    continue;
                }
                let k = q_nu.add_unit(j);
                let key = (k.get(pivot), k);
                let delta = -(&q_c * a);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.add_term(q_nu, q_c);
        }
        Ok(quotient)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: point.len(),
            });
        }
        let mut cache: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut acc = Rational::zero();
        for (nu, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in nu.exponents().iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &point[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    term *= &cache[i][e];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation. Coefficients are rounded to `f64` first, so
    /// the result is not exact.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(nu, c)| {
                nu.exponents()
                    .iter()
                    .zip(point)
                    .fold(to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// LaTeX rendering, e.g. `\frac{1}{3} x_{1}^{2} x_{2} - 2 x_{2}`.
    pub fn to_latex(&self) -> String {
        self.render(
            |c| {
                if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
                }
            },
            |i, e| {
                if e == 1 {
                    format!("x_{{{}}}", i + 1)
                } else {
                    format!("x_{{{}}}^{{{}}}", i + 1, e)
                }
            },
            " ",
        )
    }

    fn render(&self, coef: impl Fn(&Rational) -> String, var: impl Fn(usize, u32) -> String, sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (nu, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let vars: Vec<String> = nu
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| var(i, e))
                .collect();
            if vars.is_empty() {
                out.push_str(&coef(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&coef(&abs));
                    out.push_str(sep);
                }
                out.push_str(&vars.join(sep));
            }
        }
        out
    }
}

/// Canonical text form: descending graded-lex, coefficients as `p/q`,
/// e.g. `1/3*x1^2*x2 - 2*x2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(
            format_rational,
            |i, e| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            },
            "*",
        );
        f.write_str(&s)
    }
}

// Operator impls panic on rank mismatch; use the `checked_*` methods when the
// ranks are not known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// A square rational matrix acting on `R^N` (row-major).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    dim: usize,
    entries: Vec<Rational>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        LinearMap { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(LinearMap { dim, entries })
    }

    /// `σ_α(x) = x - 2⟨α,x⟩/|α|^2 · α`.
    pub fn reflection(alpha: &[Rational]) -> Result<Self> {
        let dim = alpha.len();
        let norm2: Rational = alpha.iter().map(|a| a * a).sum();
        if norm2.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        let two = Rational::from_integer(2.into());
        let mut m = Self::identity(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.entries[i * dim + j] -= &two * &alpha[i] * &alpha[j] / &norm2;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| to_f64(a) * b).sum())
            .collect()
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(LinearMap { dim: n, entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// For a matrix with exactly one `±1` per row and column, row `i` maps to
    /// `(column, is_negative)`.
    pub fn signed_permutation(&self) -> Option<Vec<(usize, bool)>> {
        let mut out = Vec::with_capacity(self.dim);
        let mut used = vec![false; self.dim];
        for i in 0..self.dim {
            let mut found = None;
            for (j, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if found.is_some() || used[j] || !(a.is_one() || (-a).is_one()) {
                    return None;
                }
                found = Some((j, a.is_negative()));
            }
            let (j, neg) = found?;
            used[j] = true;
            out.push((j, neg));
        }
        Some(out)
    }
}
