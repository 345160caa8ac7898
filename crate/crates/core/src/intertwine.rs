//! The intertwining operator `V` and its inverse, degree by degree, and the
//! moment functions `m_ν = V(x^ν)`.
//!
//! `V^{-1}` comes straight from Dunkl derivatives at the origin:
//! `(V^{-1} f)(y) = Σ_ν y^ν/ν! (T^ν f)(0)`. `V` is then the exact inverse of
//! that matrix. The intertwining relation `T_i V = V ∂_i` is never imposed,
//! only checked.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::dunkl::{cached, DunklContext};
use crate::error::Result;
use crate::linalg::RationalMatrix;
use crate::multi_index::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::{from_bigint, int, Rational};

/// `V` and `V^{-1}` restricted to the homogeneous polynomials of one degree,
/// in the basis of [`DunklContext::basis`]. Column `j` holds the image of
/// the `j`-th basis monomial.
#[derive(Debug)]
pub struct DegreeMatrix {
    pub degree: u32,
    pub basis: Vec<MultiIndex>,
    pub forward: RationalMatrix,
    pub inverse: Arc<RationalMatrix>,
}

impl DunklContext {
    /// Matrix of `V^{-1}` on degree `n`: entry `(ν, ρ)` is `(T^ν x^ρ)(0) / ν!`.
    ///
    /// Built from degree `n - 1` using `(T^ν p)(0) = (T^{ν-e_j} T_j p)(0)`.
    pub fn v_inverse_matrix(&self, n: u32) -> Result<Arc<RationalMatrix>> {
        if let Some(m) = self.v_inverse.read().expect("cache lock poisoned").get(&n) {
            return Ok(m.clone());
        }
        // Fill lower degrees iteratively so deep requests never recurse.
        let start = {
            let guard = self.v_inverse.read().expect("cache lock poisoned");
            (0..n).rev().find(|d| guard.contains_key(d)).map_or(0, |d| d + 1)
        };
        for d in start..n {
            self.v_inverse_matrix_step(d)?;
        }
        self.v_inverse_matrix_step(n)
    }

    fn v_inverse_matrix_step(&self, n: u32) -> Result<Arc<RationalMatrix>> {
        cached(&self.v_inverse, n, || {
            let basis = self.basis(n);
            if n == 0 {
                return Ok(RationalMatrix::identity(1));
            }
            let lower_basis = self.basis(n - 1);
            let lower = self
                .v_inverse
                .read()
                .expect("cache lock poisoned")
                .get(&(n - 1))
                .cloned()
                .expect("lower degree filled first");
            let rank = self.rank();
            let dim = basis.len();
            let mut m = RationalMatrix::zeros(dim, dim);
            // images[j][ρ] = T_j x^ρ as a dense vector over the degree n-1 basis
            let mut images: Vec<Vec<Vec<(usize, Rational)>>> = vec![Vec::with_capacity(dim); rank];
            for rho in &basis.monomials {
                let x_rho = Polynomial::x_pow(rho);
                for (j, slot) in images.iter_mut().enumerate() {
                    let img = self.dunkl(j, &x_rho)?;
                    slot.push(
                        img.terms()
                            .map(|(nu, c)| (lower_basis.index_of(nu).expect("degree drops by one"), c.clone()))
                            .collect(),
                    );
                }
            }
            for (row, nu) in basis.monomials.iter().enumerate() {
                let j = (0..rank).rev().find(|&j| nu.get(j) > 0).expect("n > 0");
                let prev = nu.sub_unit(j).unwrap();
                let prev_row = lower_basis.index_of(&prev).unwrap();
                let scale = int(nu.get(j) as i64);
                for (col, image) in images[j].iter().enumerate() {
                    let mut acc = Rational::zero();
                    for (sigma, c) in image {
                        let l = lower.get(prev_row, *sigma);
                        if !l.is_zero() {
                            acc += l * c;
                        }
                    }
                    if !acc.is_zero() {
                        m.set(row, col, acc / &scale);
                    }
                }
            }
            Ok(m)
        })
    }

    /// `V^{-1}` on degree `n` evaluated literally as `(T^ν x^ρ)(0)/ν!` for
    /// every pair, with no reuse between degrees. Slower; used as a cross-check.
    pub fn v_inverse_matrix_direct(&self, n: u32) -> Result<RationalMatrix> {
        let basis = self.basis(n);
        let dim = basis.len();
        let mut m = RationalMatrix::zeros(dim, dim);
        for (col, rho) in basis.monomials.iter().enumerate() {
            let x_rho = Polynomial::x_pow(rho);
            for (row, nu) in basis.monomials.iter().enumerate() {
                let v = self.dunkl_power_at_zero(nu, &x_rho)?;
                m.set(row, col, v / from_bigint(nu.factorial()));
            }
        }
        Ok(m)
    }

    /// `V` and `V^{-1}` on degree `n`.
    pub fn degree_matrix(&self, n: u32) -> Result<Arc<DegreeMatrix>> {
        cached(&self.degree_matrices, n, || {
            let inverse = self.v_inverse_matrix(n)?;
            let forward = inverse.inverse().map_err(|_| {
                crate::error::Error::InvalidMultiplicity(format!("intertwining matrix of degree {n} is singular"))
            })?;
            Ok(DegreeMatrix {
                degree: n,
                basis: self.basis(n).monomials.clone(),
                forward,
                inverse,
            })
        })
    }

    /// Matrix of `V` on degree `n`.
    pub fn v_matrix(&self, n: u32) -> Result<Arc<DegreeMatrix>> {
        self.degree_matrix(n)
    }

    fn apply_degreewise(
        &self,
        p: &Polynomial,
        matrix: impl Fn(u32) -> Result<Arc<RationalMatrix>>,
    ) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.rank());
        for (n, part) in p.homogeneous_components() {
            let basis = self.basis(n);
            let m = matrix(n)?;
            let coords: Vec<(usize, &Rational)> =
                part.terms().map(|(nu, c)| (basis.index_of(nu).unwrap(), c)).collect();
            let image = m.mul_sparse_vec(coords);
            for (nu, c) in basis.monomials.iter().zip(image) {
                out.add_term(nu.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn apply_v(&self, p: &Polynomial) -> Result<Polynomial> {
        self.apply_degreewise(p, |n| {
            let dm = self.degree_matrix(n)?;
            Ok(Arc::new(dm.forward.clone()))
        })
    }

    pub fn apply_v_inverse(&self, p: &Polynomial) -> Result<Polynomial> {
        self.apply_degreewise(p, |n| self.v_inverse_matrix(n))
    }

    /// `m_ν = V(x^ν)`.
    pub fn moment_function(&self, nu: &MultiIndex) -> Result<Polynomial> {
        let n = nu.degree();
        let dm = self.degree_matrix(n)?;
        let col = self.basis(n).index_of(nu).expect("ν has the context rank");
        let mut out = Polynomial::zero(self.rank());
        for (row, mono) in dm.basis.iter().enumerate() {
            out.add_term(mono.clone(), dm.forward.get(row, col).clone());
        }
        Ok(out)
    }

    /// Coefficients `c_ν = (T^ν p)(0)/ν!` with `p = Σ c_ν m_ν` (zeros omitted).
    pub fn taylor_coefficients(&self, p: &Polynomial) -> Result<BTreeMap<MultiIndex, Rational>> {
        let q = self.apply_v_inverse(p)?;
        Ok(q.terms().map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// `Σ c_ν m_ν`.
    pub fn from_moment_coefficients(&self, coeffs: &BTreeMap<MultiIndex, Rational>) -> Result<Polynomial> {
        let q = Polynomial::from_terms(self.rank(), coeffs.iter().map(|(k, v)| (k.clone(), v.clone())))?;
        self.apply_v(&q)
    }
}
