//! Appell characters `R_ν` and cocharacters `S_ν` of the k-Gaussian
//! semigroup, exact integration against `P_t(x, ·)`, the pairing
//! `[p, q]_k = (p(T) q)(0)` and generalized Hermite bases.
//!
//! Integration never uses quadrature. A polynomial is expanded in the
//! moment functions and each `m_ν` is integrated by the closed binomial
//! formula, so every identity reduces to a rational equation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::dunkl::{cached, DunklContext};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::multi_index::MultiIndex;
use crate::par::{self, Strategy};
use crate::poly::Polynomial;
use crate::rational::{factorial, from_bigint, int, pochhammer, pow, ratio, Rational};

/// `a_λ(t) = (2μ)!/μ! · (-t)^{|μ|}` if `λ = 2μ`, else `0`.
pub fn a_lambda(lambda: &MultiIndex, t: &Rational) -> Rational {
    match lambda.halved() {
        Some(mu) => from_bigint(lambda.factorial()) / from_bigint(mu.factorial()) * pow(&-t, mu.degree()),
        None => Rational::zero(),
    }
}

/// Variance parameter and center of the k-Gaussian `P_t(x, ·)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianSpec {
    pub t: Rational,
    pub center: Vec<Rational>,
}

impl GaussianSpec {
    pub fn centered(rank: usize, t: Rational) -> Self {
        GaussianSpec {
            t,
            center: vec![Rational::zero(); rank],
        }
    }

    pub fn new(t: Rational, center: Vec<Rational>) -> Self {
        GaussianSpec { t, center }
    }

    pub fn is_centered(&self) -> bool {
        self.center.iter().all(Zero::is_zero)
    }
}

/// Both sides of the two derivative recursions for one `(ν, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionSides {
    /// `T_j R_{ν+e_j}(t, ·)` and `(ν_j + 1) R_ν(t, ·)`.
    pub character: (Polynomial, Polynomial),
    /// `S_{ν+e_j}(1/2, ·)` and `T_j^* S_ν(1/2, ·)`.
    pub cocharacter: (Polynomial, Polynomial),
}

/// One row of an Appell table.
#[derive(Clone, Debug, PartialEq)]
pub struct AppellEntry {
    pub nu: MultiIndex,
    pub character: Polynomial,
    pub cocharacter: Polynomial,
}

/// `R_ν(t, ·)` and `S_ν(t, ·)` for every `|ν| ≤ n_max`.
#[derive(Clone, Debug)]
pub struct AppellTables {
    pub t: Rational,
    pub n_max: u32,
    pub entries: Vec<AppellEntry>,
}

impl AppellTables {
    pub fn generate(ctx: &DunklContext, n_max: u32, t: &Rational, strategy: Strategy) -> Result<Self> {
        // Fill the per-degree caches once so workers only read them.
        for n in 0..=n_max {
            ctx.degree_matrix(n)?;
        }
        let indices = MultiIndex::up_to_degree(ctx.rank(), n_max);
        let entries = par::try_map(strategy, &indices, |nu| {
            Ok(AppellEntry {
                nu: nu.clone(),
                character: ctx.appell_character(nu, t)?,
                cocharacter: ctx.appell_cocharacter(nu, t)?,
            })
        })?;
        Ok(AppellTables {
            t: t.clone(),
            n_max,
            entries,
        })
    }
}

impl DunklContext {
    fn check_index(&self, nu: &MultiIndex) -> Result<()> {
        if nu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: nu.rank(),
            });
        }
        Ok(())
    }

    /// `R_ν(t, x) = Σ_{ρ≤ν} binom(ν, ρ) a_{ν-ρ}(t) m_ρ(x)`.
    pub fn appell_character(&self, nu: &MultiIndex, t: &Rational) -> Result<Polynomial> {
        self.appell_character_with(nu, t, a_lambda)
    }

    /// [`appell_character`](Self::appell_character) with a replacement for `a_λ`.
    pub fn appell_character_with(
        &self,
        nu: &MultiIndex,
        t: &Rational,
        a: impl Fn(&MultiIndex, &Rational) -> Rational,
    ) -> Result<Polynomial> {
        self.check_index(nu)?;
        let mut out = Polynomial::zero(self.rank());
        for rho in nu.lower_set() {
            let lambda = nu.checked_sub(&rho).expect("ρ ≤ ν");
            let c = a(&lambda, t);
            if c.is_zero() {
                continue;
            }
            let c = c * from_bigint(nu.binomial(&rho));
            for (mono, v) in self.moment_function(&rho)?.terms() {
                out.add_term(mono.clone(), &c * v);
            }
        }
        Ok(out)
    }

    /// `e^{-tΔ_k} m_ν`.
    pub fn character_via_heat(&self, nu: &MultiIndex, t: &Rational) -> Result<Polynomial> {
        self.check_index(nu)?;
        self.heat(&-t, &self.moment_function(nu)?)
    }

    /// `S_ν(t, x) = (2t)^{-|ν|} e^{-tΔ_k} x^ν`.
    pub fn appell_cocharacter(&self, nu: &MultiIndex, t: &Rational) -> Result<Polynomial> {
        if t.is_zero() {
            return Err(Error::ZeroTime);
        }
        self.check_index(nu)?;
        let scale = pow(&(t * int(2)).recip(), nu.degree());
        Ok(self.heat(&-t, &Polynomial::x_pow(nu))?.scale(&scale))
    }

    /// `(-1)^{|ν|} e^{|x|²/4t} T^ν e^{-|x|²/4t}`, i.e. the Gaussian-conjugated
    /// operators applied to `1`.
    pub fn rodriguez_cocharacter(&self, nu: &MultiIndex, t: &Rational) -> Result<Polynomial> {
        if t.is_zero() {
            return Err(Error::ZeroTime);
        }
        self.check_index(nu)?;
        let mut p = self.one();
        for axis in 0..self.rank() {
            for _ in 0..nu.get(axis) {
                p = self.gaussian_conjugate(axis, t, &p)?;
            }
        }
        Ok(if nu.degree() % 2 == 1 { -&p } else { p })
    }

    fn check_spec(&self, spec: &GaussianSpec) -> Result<()> {
        if !spec.t.is_positive() {
            return Err(Error::NonPositiveTime);
        }
        if spec.center.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: spec.center.len(),
            });
        }
        Ok(())
    }

    /// `∫ m_ν dP_t(x, ·) = Σ_{ρ≤ν} binom(ν, ρ) a_ρ(-t) m_{ν-ρ}(x)`.
    pub fn gaussian_moment(&self, nu: &MultiIndex, spec: &GaussianSpec) -> Result<Rational> {
        self.check_spec(spec)?;
        self.check_index(nu)?;
        let minus_t = -spec.t.clone();
        if spec.is_centered() {
            return Ok(a_lambda(nu, &minus_t));
        }
        let mut acc = Rational::zero();
        for rho in nu.lower_set() {
            let a = a_lambda(&rho, &minus_t);
            if a.is_zero() {
                continue;
            }
            let rest = nu.checked_sub(&rho).expect("ρ ≤ ν");
            let m = self.moment_function(&rest)?.evaluate(&spec.center)?;
            acc += a * from_bigint(nu.binomial(&rho)) * m;
        }
        Ok(acc)
    }

    /// For `|ρ| = n` even: `∫ x^ρ dP_t(0, ·) = t^{n/2} · row[ρ]`, with
    /// `row[ρ] = Σ_{|2μ|=n} V^{-1}[2μ, ρ] (2μ)!/μ!`.
    pub(crate) fn centered_moment_row(&self, n: u32) -> Result<Arc<Vec<Rational>>> {
        cached(&self.centered_moments, n, || {
            let basis = self.basis(n);
            let mut row = vec![Rational::zero(); basis.len()];
            if n % 2 == 1 {
                return Ok(row);
            }
            let vinv = self.v_inverse_matrix(n)?;
            for (r, nu) in basis.monomials.iter().enumerate() {
                let Some(mu) = nu.halved() else { continue };
                let w = from_bigint(nu.factorial()) / from_bigint(mu.factorial());
                for (col, slot) in row.iter_mut().enumerate() {
                    let v = vinv.get(r, col);
                    if !v.is_zero() {
                        *slot += v * &w;
                    }
                }
            }
            Ok(row)
        })
    }

    fn integrate_centered(&self, p: &Polynomial, t: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        let mut rows: BTreeMap<u32, (Arc<Vec<Rational>>, Rational)> = BTreeMap::new();
        for (rho, c) in p.terms() {
            let n = rho.degree();
            if n % 2 == 1 {
                continue;
            }
            let (row, tn) = match rows.entry(n) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert((self.centered_moment_row(n)?, pow(t, n / 2))),
            };
            let idx = self.basis(n).index_of(rho).expect("monomial of degree n");
            let m = &row[idx];
            if !m.is_zero() {
                acc += c * m * &*tn;
            }
        }
        Ok(acc)
    }

    /// `∫ p dP_t(x, ·)`, exact.
    pub fn gaussian_integrate(&self, p: &Polynomial, spec: &GaussianSpec) -> Result<Rational> {
        self.check_spec(spec)?;
        if p.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: p.rank(),
            });
        }
        if spec.is_centered() {
            return self.integrate_centered(p, &spec.t);
        }
        self.gaussian_expectation_polynomial(p, &spec.t)?.evaluate(&spec.center)
    }

    /// `x ↦ ∫ p dP_t(x, ·)` as a polynomial in the center `x`.
    pub fn gaussian_expectation_polynomial(&self, p: &Polynomial, t: &Rational) -> Result<Polynomial> {
        if !t.is_positive() {
            return Err(Error::NonPositiveTime);
        }
        let coeffs = self.taylor_coefficients(p)?;
        let mut moments: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(self.rank());
        let minus_t = -t.clone();
        for (nu, c) in &coeffs {
            for rho in nu.lower_set() {
                let a = a_lambda(&rho, &minus_t);
                if a.is_zero() {
                    continue;
                }
                let rest = nu.checked_sub(&rho).expect("ρ ≤ ν");
                if !moments.contains_key(&rest) {
                    moments.insert(rest.clone(), self.moment_function(&rest)?);
                }
                let w = c * a * from_bigint(nu.binomial(&rho));
                for (mono, v) in moments[&rest].terms() {
                    out.add_term(mono.clone(), &w * v);
                }
            }
        }
        Ok(out)
    }

    /// `[p, q]_k = Σ_ν p_ν (T^ν q)(0)`.
    pub fn pairing(&self, p: &Polynomial, q: &Polynomial) -> Result<Rational> {
        if p.rank() != q.rank() || p.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: p.rank(),
                right: q.rank(),
            });
        }
        let mut acc = Rational::zero();
        for (nu, c) in p.terms() {
            let v = self.dunkl_power_at_zero(nu, q)?;
            if !v.is_zero() {
                acc += c * v;
            }
        }
        Ok(acc)
    }

    /// Gram matrix of `[·, ·]_k` on the degree-`n` monomials:
    /// `[x^ν, x^ρ]_k = ν! V^{-1}[ν, ρ]`.
    pub fn pairing_matrix(&self, n: u32) -> Result<RationalMatrix> {
        let vinv = self.v_inverse_matrix(n)?;
        let basis = self.basis(n);
        let mut g = (*vinv).clone();
        for (r, nu) in basis.monomials.iter().enumerate() {
            let f = from_bigint(nu.factorial());
            for c in 0..basis.len() {
                let v = g.get(r, c) * &f;
                g.set(r, c, v);
            }
        }
        Ok(g)
    }

    /// `([p, q]_k, (2t)^{-n} ∫ e^{-tΔ_k}p · e^{-tΔ_k}q dP_t(0, ·))` for `p`, `q`
    /// homogeneous of a common degree `n`.
    pub fn macdonald_identity_check(
        &self,
        p: &Polynomial,
        q: &Polynomial,
        t: &Rational,
    ) -> Result<(Rational, Rational)> {
        let dp = p.homogeneous_degree();
        let dq = q.homogeneous_degree();
        let n = match (dp, dq) {
            (Some(a), Some(b)) if a == b || b < 0 => a.max(0),
            (Some(a), Some(b)) if a < 0 => b,
            _ => return Err(Error::NotHomogeneous(p.degree(), q.degree())),
        };
        let lhs = self.pairing(p, q)?;
        let integral = self.heat_product_integral(p, q, t)?;
        let rhs = integral / pow(&(t * int(2)), n as u32);
        Ok((lhs, rhs))
    }

    /// `([p, q]_k, ∫ e^{-tΔ_k}p · e^{-tΔ_k}q dP_t(0, ·))` without normalization,
    /// for inputs of different degrees where both should vanish.
    pub fn macdonald_cross_degree(&self, p: &Polynomial, q: &Polynomial, t: &Rational) -> Result<(Rational, Rational)> {
        Ok((self.pairing(p, q)?, self.heat_product_integral(p, q, t)?))
    }

    fn heat_product_integral(&self, p: &Polynomial, q: &Polynomial, t: &Rational) -> Result<Rational> {
        let hp = self.heat(&-t, p)?;
        let hq = self.heat(&-t, q)?;
        self.gaussian_integrate(&(&hp * &hq), &GaussianSpec::centered(self.rank(), t.clone()))
    }

    /// Hermite basis up to degree `n_max`: Gram–Schmidt of the monomials of
    /// each degree under `[·, ·]_k` (no normalization), then `e^{-tΔ_k}`.
    /// Each polynomial is labelled by the monomial it was built from.
    pub fn hermite_basis(&self, n_max: u32, t: &Rational) -> Result<Vec<(MultiIndex, Polynomial)>> {
        if !t.is_positive() {
            return Err(Error::NonPositiveTime);
        }
        let mut out = Vec::new();
        for n in 0..=n_max {
            let basis = self.basis(n);
            let g = self.pairing_matrix(n)?;
            let dim = basis.len();
            let inner = |u: &[Rational], v: &[Rational]| -> Rational {
                let mut acc = Rational::zero();
                for (i, ui) in u.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    for (j, vj) in v.iter().enumerate() {
                        if !vj.is_zero() {
                            acc += ui * g.get(i, j) * vj;
                        }
                    }
                }
                acc
            };
            let mut phis: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::one();
                let mut phi = e.clone();
                for (prev, norm) in &phis {
                    let c = inner(&e, prev) / norm;
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in phi.iter_mut().zip(prev) {
                        *x -= &c * y;
                    }
                }
                let norm = inner(&phi, &phi);
                if !norm.is_positive() {
                    return Err(Error::InvalidMultiplicity(format!(
                        "pairing is not positive definite in degree {n}"
                    )));
                }
                let poly =
                    Polynomial::from_terms(self.rank(), basis.monomials.iter().cloned().zip(phi.iter().cloned()))?;
                out.push((basis.monomials[i].clone(), self.heat(&-t, &poly)?));
                phis.push((phi, norm));
            }
        }
        Ok(out)
    }

    /// Both sides of `T_j R_{ν+e_j}(t) = (ν_j+1) R_ν(t)` and
    /// `S_{ν+e_j}(1/2) = T_j^* S_ν(1/2)`.
    pub fn character_recursion_check(&self, nu: &MultiIndex, j: usize, t: &Rational) -> Result<RecursionSides> {
        self.check_index(nu)?;
        if j >= self.rank() {
            return Err(Error::AxisOutOfRange {
                axis: j,
                rank: self.rank(),
            });
        }
        let up = nu.add_unit(j);
        let lhs = self.dunkl(j, &self.appell_character(&up, t)?)?;
        let rhs = self.appell_character(nu, t)?.scale(&int(nu.get(j) as i64 + 1));
        let half = ratio(1, 2);
        let s_up = self.appell_cocharacter(&up, &half)?;
        let s_adj = self.adjoint(j, &self.appell_cocharacter(nu, &half)?)?;
        Ok(RecursionSides {
            character: (lhs, rhs),
            cocharacter: (s_up, s_adj),
        })
    }
}

/// Coefficients of `L_n^{(α)}(u) = Σ_j binom(n+α, n-j) (-u)^j / j!`,
/// lowest power first; `binom(n+α, n-j) = (α+j+1)_{n-j} / (n-j)!`.
pub fn laguerre_coefficients(n: u32, alpha: &Rational) -> Vec<Rational> {
    (0..=n)
        .map(|j| {
            let b = pochhammer(&(alpha + int(j as i64 + 1)), n - j) / from_bigint(factorial(n - j));
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            b * sign / from_bigint(factorial(j))
        })
        .collect()
}

/// One-variable profile of the rank-one characters: `t^n L_n^{(k-1/2)}(x²/4t)`
/// for degree `2n` and `t^n x L_n^{(k+1/2)}(x²/4t)` for degree `2n+1`.
pub fn z2_laguerre_profile(degree: u32, k: &Rational, t: &Rational) -> Polynomial {
    let n = degree / 2;
    let odd = degree % 2;
    let alpha = k + ratio(2 * odd as i64 - 1, 2);
    let mut out = Polynomial::zero(1);
    for (j, c) in laguerre_coefficients(n, &alpha).into_iter().enumerate() {
        let j = j as u32;
        // t^n (x²/4t)^j = x^{2j} t^{n-j} / 4^j
        let coeff = c * pow(t, n - j) / from_bigint(num_bigint::BigInt::from(4).pow(j));
        out.add_term(MultiIndex::new(vec![2 * j + odd]), coeff);
    }
    out
}

/// Classical closed form at `k = 0`: `Π_i Σ_j (-1)^j n_i! / (j! (n_i-2j)!) x_i^{n_i-2j} t^j`.
pub fn classical_hermite_character(nu: &MultiIndex, t: &Rational) -> Polynomial {
    let rank = nu.rank();
    let mut out = Polynomial::one(rank);
    for axis in 0..rank {
        let n = nu.get(axis);
        let mut factor = Polynomial::zero(rank);
        for j in 0..=n / 2 {
            let c = from_bigint(factorial(n)) / from_bigint(factorial(j) * factorial(n - 2 * j));
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let mut e = vec![0; rank];
            e[axis] = n - 2 * j;
            factor.add_term(MultiIndex::new(e), c * sign * pow(t, j));
        }
        out = &out * &factor;
    }
    out
}

/// `∫ x^{2μ} dP_t(0, ·) = Π_i (4t)^{μ_i} (k_i + 1/2)_{μ_i}` on `Z2^N`, computed
/// from one-dimensional gamma integrals; odd exponents give zero.
pub fn z2_product_moment(k: &[Rational], exponents: &MultiIndex, t: &Rational) -> Rational {
    let Some(mu) = exponents.halved() else {
        return Rational::zero();
    };
    let mut acc = Rational::one();
    for (ki, &m) in k.iter().zip(mu.exponents()) {
        acc *= pow(&(t * int(4)), m) * pochhammer(&(ki + ratio(1, 2)), m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(k: Rational) -> DunklContext {
        DunklContext::from_catalog("Z2", 1, vec![k]).unwrap()
    }

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn x1(n: u32) -> Polynomial {
        Polynomial::x_pow(&mi(&[n]))
    }

    fn c1(c: Rational) -> Polynomial {
        Polynomial::constant(1, c)
    }

    #[test]
    fn a_lambda_values() {
        let t = ratio(3, 7);
        assert_eq!(a_lambda(&mi(&[0, 0]), &t), int(1));
        assert_eq!(a_lambda(&mi(&[2]), &t), -&t * int(2));
        assert_eq!(a_lambda(&mi(&[2, 2]), &t), &t * &t * int(4));
        assert!(a_lambda(&mi(&[1, 2]), &t).is_zero());
    }

    #[test]
    fn z2_characters_and_cocharacters() {
        let k = ratio(1, 3);
        let ctx = z2(k.clone());
        let t = ratio(2, 5);
        let one_2k = int(1) + &k * int(2);
        let r2 = &x1(2).scale(&one_2k.recip()) - &c1(&t * int(2));
        assert_eq!(ctx.appell_character(&mi(&[2]), &t).unwrap(), r2);
        assert_eq!(ctx.character_via_heat(&mi(&[2]), &t).unwrap(), r2);
        assert_eq!(ctx.appell_character(&mi(&[0]), &t).unwrap(), ctx.one());

        let two_t = &t * int(2);
        assert_eq!(
            ctx.appell_cocharacter(&mi(&[1]), &t).unwrap(),
            x1(1).scale(&two_t.recip())
        );
        let s2 = (&x1(2) - &c1(&two_t * &one_2k)).scale(&(&two_t * &two_t).recip());
        assert_eq!(ctx.appell_cocharacter(&mi(&[2]), &t).unwrap(), s2);
        assert_eq!(ctx.rodriguez_cocharacter(&mi(&[2]), &t).unwrap(), s2);
        let half = ratio(1, 2);
        assert_eq!(
            ctx.rodriguez_cocharacter(&mi(&[2]), &half).unwrap(),
            &x1(2) - &c1(one_2k)
        );
        assert_eq!(ctx.appell_cocharacter(&mi(&[1]), &int(0)), Err(Error::ZeroTime));
    }

    #[test]
    fn classical_character() {
        let ctx = z2(int(0));
        let t = ratio(5, 3);
        assert_eq!(ctx.appell_character(&mi(&[2]), &t).unwrap(), &x1(2) - &c1(&t * int(2)));
    }

    #[test]
    fn z2_integration() {
        let k = ratio(3, 2);
        let ctx = z2(k.clone());
        let t = ratio(1, 4);
        let one_2k = int(1) + &k * int(2);
        let spec = GaussianSpec::centered(1, t.clone());
        assert_eq!(ctx.gaussian_integrate(&ctx.one(), &spec).unwrap(), int(1));
        assert_eq!(ctx.gaussian_integrate(&x1(3), &spec).unwrap(), int(0));
        assert_eq!(ctx.gaussian_integrate(&x1(2), &spec).unwrap(), &t * int(2) * &one_2k);
        assert_eq!(ctx.gaussian_moment(&mi(&[2]), &spec).unwrap(), &t * int(2));
        assert!(ctx.gaussian_moment(&mi(&[3]), &spec).unwrap().is_zero());

        let x = ratio(-2, 3);
        let off = GaussianSpec::new(t.clone(), vec![x.clone()]);
        assert_eq!(
            ctx.gaussian_moment(&mi(&[2]), &off).unwrap(),
            &t * int(2) + &x * &x / &one_2k
        );

        let r2 = ctx.appell_character(&mi(&[2]), &t).unwrap();
        let s2 = ctx.appell_cocharacter(&mi(&[2]), &t).unwrap();
        assert_eq!(ctx.gaussian_integrate(&(&r2 * &s2), &spec).unwrap(), int(2));
        assert_eq!(
            ctx.gaussian_integrate(&x1(1), &GaussianSpec::centered(1, int(0))),
            Err(Error::NonPositiveTime)
        );
    }

    #[test]
    fn pairing_values() {
        let k = ratio(2, 9);
        let ctx = z2(k.clone());
        assert_eq!(ctx.pairing(&ctx.one(), &ctx.one()).unwrap(), int(1));
        assert_eq!(ctx.pairing(&x1(2), &x1(2)).unwrap(), int(2) * (int(1) + &k * int(2)));
        let g = ctx.pairing_matrix(2).unwrap();
        assert_eq!(g.get(0, 0), &(int(2) * (int(1) + &k * int(2))));
    }

    #[test]
    fn macdonald_examples() {
        let k = int(3);
        let ctx = z2(k.clone());
        let half = ratio(1, 2);
        let (l, r) = ctx.macdonald_identity_check(&ctx.one(), &ctx.one(), &half).unwrap();
        assert_eq!((l, r), (int(1), int(1)));
        let (l, r) = ctx.macdonald_identity_check(&x1(2), &x1(2), &half).unwrap();
        assert_eq!(l, int(2) * (int(1) + &k * int(2)));
        assert_eq!(l, r);
        let (l, r) = ctx.macdonald_cross_degree(&x1(2), &x1(1), &half).unwrap();
        assert!(l.is_zero() && r.is_zero());
        assert!(matches!(
            ctx.macdonald_identity_check(&(&x1(2) + &x1(1)), &x1(2), &half),
            Err(Error::NotHomogeneous(..))
        ));
    }

    #[test]
    fn hermite_in_rank_one() {
        let k = ratio(1, 2);
        let ctx = z2(k.clone());
        let t = ratio(1, 3);
        let h = ctx.hermite_basis(2, &t).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h[0].1, ctx.one());
        assert_eq!(h[1].1, x1(1));
        assert_eq!(h[2].1, &x1(2) - &c1(&t * int(2) * (int(1) + &k * int(2))));
        assert_eq!(ctx.hermite_basis(0, &t).unwrap(), vec![(mi(&[0]), ctx.one())]);
    }

    #[test]
    fn recursion_examples() {
        let k = ratio(4, 3);
        let ctx = z2(k.clone());
        let t = ratio(1, 5);
        for n in 0..4 {
            let sides = ctx.character_recursion_check(&mi(&[n]), 0, &t).unwrap();
            assert_eq!(sides.character.0, sides.character.1);
            assert_eq!(sides.cocharacter.0, sides.cocharacter.1);
        }
        let sides = ctx.character_recursion_check(&mi(&[1]), 0, &t).unwrap();
        assert_eq!(sides.cocharacter.0, &x1(2) - &c1(int(1) + &k * int(2)));
    }

    #[test]
    fn laguerre_low_orders() {
        let a = ratio(3, 2);
        assert_eq!(laguerre_coefficients(0, &a), vec![int(1)]);
        assert_eq!(laguerre_coefficients(1, &a), vec![&a + int(1), int(-1)]);
        // L_2 = ((a+1)(a+2) - 2(a+2)u + u²)/2
        let l2 = laguerre_coefficients(2, &a);
        assert_eq!(l2[0], (&a + int(1)) * (&a + int(2)) / int(2));
        assert_eq!(l2[1], -(&a + int(2)));
        assert_eq!(l2[2], ratio(1, 2));
    }

    #[test]
    fn tables_have_expected_shape() {
        let ctx = DunklContext::from_catalog("B", 2, vec![int(1), ratio(1, 2)]).unwrap();
        let t = ratio(1, 4);
        let seq = AppellTables::generate(&ctx, 3, &t, Strategy::Sequential).unwrap();
        let par = AppellTables::generate(&ctx, 3, &t, Strategy::Parallel).unwrap();
        assert_eq!(seq.entries, par.entries);
        assert_eq!(seq.entries.len(), 10);
        for e in &seq.entries {
            assert_eq!(e.character.degree(), e.nu.degree() as i64);
            assert_eq!(e.cocharacter.degree(), e.nu.degree() as i64);
        }
    }
}
