//! Dunkl operators `T_i`, the Dunkl Laplacian, the polynomial heat
//! semigroup, the adjoint `T_j^*` and the Gaussian-conjugated operator.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Multiplicity, Root, RootSystem};
use crate::linalg::RationalMatrix;
use crate::multi_index::MultiIndex;
use crate::poly::{LinearMap, Polynomial};
use crate::rational::{int, Rational};

/// Ordered monomial basis of the homogeneous polynomials of one degree.
#[derive(Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl DegreeBasis {
    pub fn new(rank: usize, degree: u32) -> Self {
        let monomials = MultiIndex::of_degree(rank, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, nu: &MultiIndex) -> Option<usize> {
        self.index.get(nu).copied()
    }
}

/// Root system, multiplicity and lazily filled per-degree caches.
///
/// The caches only ever grow; two threads computing the same entry produce
/// identical values and the first one published wins.
pub struct DunklContext {
    roots: RootSystem,
    k: Multiplicity,
    /// Positive roots with `k(α) ≠ 0`, with their reflections.
    active: Vec<(Root, LinearMap, Rational)>,
    images: RwLock<HashMap<MultiIndex, Arc<Vec<Polynomial>>>>,
    pub(crate) bases: RwLock<BTreeMap<u32, Arc<DegreeBasis>>>,
    pub(crate) v_inverse: RwLock<BTreeMap<u32, Arc<RationalMatrix>>>,
    pub(crate) degree_matrices: RwLock<BTreeMap<u32, Arc<crate::intertwine::DegreeMatrix>>>,
    pub(crate) centered_moments: RwLock<BTreeMap<u32, Arc<Vec<Rational>>>>,
}

impl std::fmt::Debug for DunklContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DunklContext")
            .field("group", &self.roots.label())
            .field("k", &self.k.orbit_values())
            .finish()
    }
}

pub(crate) fn cached<K, V>(
    lock: &RwLock<impl CacheMap<K, Arc<V>>>,
    key: K,
    compute: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>>
where
    K: Clone,
{
    if let Some(v) = lock.read().expect("cache lock poisoned").lookup(&key) {
        return Ok(v.clone());
    }
    let value = Arc::new(compute()?);
    let mut guard = lock.write().expect("cache lock poisoned");
    Ok(guard.insert_if_absent(key, value))
}

pub(crate) trait CacheMap<K, V> {
    fn lookup(&self, key: &K) -> Option<&V>;
    fn insert_if_absent(&mut self, key: K, value: V) -> V;
}

impl<K: Ord, V: Clone> CacheMap<K, V> for BTreeMap<K, V> {
    fn lookup(&self, key: &K) -> Option<&V> {
        self.get(key)
    }
    fn insert_if_absent(&mut self, key: K, value: V) -> V {
        self.entry(key).or_insert(value).clone()
    }
}

impl<K: Eq + Hash, V: Clone> CacheMap<K, V> for HashMap<K, V> {
    fn lookup(&self, key: &K) -> Option<&V> {
        self.get(key)
    }
    fn insert_if_absent(&mut self, key: K, value: V) -> V {
        self.entry(key).or_insert(value).clone()
    }
}

impl DunklContext {
    pub fn new(roots: RootSystem, k: Multiplicity) -> Result<Self> {
        if k.positive_values().len() != roots.positive_indices().len() {
            return Err(Error::InvalidMultiplicity(
                "multiplicity does not belong to this root system".into(),
            ));
        }
        let active = roots
            .positive_roots()
            .zip(roots.reflections())
            .zip(k.positive_values())
            .filter(|(_, kv)| !kv.is_zero())
            .map(|((a, s), kv)| (a.clone(), s.clone(), kv.clone()))
            .collect();
        Ok(DunklContext {
            roots,
            k,
            active,
            images: RwLock::default(),
            bases: RwLock::default(),
            v_inverse: RwLock::default(),
            degree_matrices: RwLock::default(),
            centered_moments: RwLock::default(),
        })
    }

    /// Catalog group with one multiplicity value per root orbit.
    pub fn from_catalog(family: &str, rank: usize, orbit_values: Vec<Rational>) -> Result<Self> {
        let rs = RootSystem::from_catalog(family, rank)?;
        let k = Multiplicity::new(&rs, orbit_values)?;
        Self::new(rs, k)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn multiplicity(&self) -> &Multiplicity {
        &self.k
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn basis(&self, degree: u32) -> Arc<DegreeBasis> {
        cached(&self.bases, degree, || Ok(DegreeBasis::new(self.rank(), degree)))
            .expect("basis construction is infallible")
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: p.rank(),
            });
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.rank() {
            return Err(Error::AxisOutOfRange {
                axis,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `[T_0 x^ρ, ..., T_{N-1} x^ρ]`, cached per monomial.
    fn monomial_images(&self, rho: &MultiIndex) -> Result<Arc<Vec<Polynomial>>> {
        cached(&self.images, rho.clone(), || {
            let n = self.rank();
            let x_rho = Polynomial::x_pow(rho);
            let mut out: Vec<Polynomial> = (0..n).map(|j| x_rho.partial_derivative(j)).collect::<Result<_>>()?;
            for (alpha, sigma, kv) in &self.active {
                let reflected = x_rho.substitute_linear(sigma)?;
                let numerator = &x_rho - &reflected;
                let quotient = numerator.divide_exact_by_linear_form(alpha)?;
                for (j, aj) in alpha.iter().enumerate() {
                    if aj.is_zero() {
                        continue;
                    }
                    let c = kv * aj;
                    for (nu, v) in quotient.terms() {
                        out[j].add_term(nu.clone(), &c * v);
                    }
                }
            }
            Ok(out)
        })
    }

    /// `T_axis p`, zero-based axis:
    /// `∂_i p + Σ_{α∈R+} k(α) α_i (p(x) - p(σ_α x)) / ⟨α, x⟩`.
    pub fn dunkl(&self, axis: usize, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check_axis(axis)?;
        let mut out = Polynomial::zero(self.rank());
        for (rho, c) in p.terms() {
            let images = self.monomial_images(rho)?;
            for (nu, v) in images[axis].terms() {
                out.add_term(nu.clone(), c * v);
            }
        }
        Ok(out)
    }

    /// `Δ_k p = Σ_j T_j^2 p`.
    pub fn laplacian(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        let mut out = Polynomial::zero(self.rank());
        for j in 0..self.rank() {
            let once = self.dunkl(j, p)?;
            out = &out + &self.dunkl(j, &once)?;
        }
        Ok(out)
    }

    /// `e^{tΔ_k} p = Σ_j t^j Δ_k^j p / j!`; the series terminates on polynomials.
    /// Any rational `t` is accepted, including zero and negative values.
    pub fn heat(&self, t: &Rational, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        let mut out = p.clone();
        let mut term = p.clone();
        let mut j = 0i64;
        loop {
            term = self.laplacian(&term)?;
            if term.is_zero() {
                break;
            }
            j += 1;
            term = term.scale(&(t / int(j)));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `T^ν p = T_1^{ν_1} ⋯ T_N^{ν_N} p`, applied in ascending axis order.
    pub fn dunkl_power(&self, nu: &MultiIndex, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        if nu.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: nu.rank(),
            });
        }
        let mut out = p.clone();
        for axis in 0..self.rank() {
            for _ in 0..nu.get(axis) {
                if out.is_zero() {
                    return Ok(out);
                }
                out = self.dunkl(axis, &out)?;
            }
        }
        Ok(out)
    }

    /// `T_j^* p = x_j p - T_j p`, the adjoint of `T_j` for the centered
    /// k-Gaussian with `t = 1/2`.
    pub fn adjoint(&self, axis: usize, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check_axis(axis)?;
        let shifted = p.shift(&MultiIndex::unit(self.rank(), axis));
        Ok(&shifted - &self.dunkl(axis, p)?)
    }

    /// `e^{|x|^2/4t} T_j (e^{-|x|^2/4t} p) = T_j p - x_j p / 2t`.
    pub fn gaussian_conjugate(&self, axis: usize, t: &Rational, p: &Polynomial) -> Result<Polynomial> {
        if t.is_zero() {
            return Err(Error::ZeroTime);
        }
        self.check(p)?;
        self.check_axis(axis)?;
        let shifted = p
            .shift(&MultiIndex::unit(self.rank(), axis))
            .scale(&(t * int(2)).recip());
        Ok(&self.dunkl(axis, p)? - &shifted)
    }

    /// `(T^ν p)(0)`.
    pub fn dunkl_power_at_zero(&self, nu: &MultiIndex, p: &Polynomial) -> Result<Rational> {
        let part = p.homogeneous_component(nu.degree());
        Ok(self.dunkl_power(nu, &part)?.constant_term())
    }

    pub(crate) fn one(&self) -> Polynomial {
        Polynomial::constant(self.rank(), Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::rational::ratio;

    fn z2(k: Rational) -> DunklContext {
        DunklContext::from_catalog("Z2", 1, vec![k]).unwrap()
    }

    fn x1(n: u32) -> Polynomial {
        Polynomial::x_pow(&MultiIndex::new(vec![n]))
    }

    fn c1(c: Rational) -> Polynomial {
        Polynomial::constant(1, c)
    }

    #[test]
    fn z2_dunkl_on_monomials() {
        let k = ratio(3, 7);
        let ctx = z2(k.clone());
        let two_k = &k * int(2);
        assert_eq!(ctx.dunkl(0, &x1(1)).unwrap(), c1(int(1) + &two_k));
        assert_eq!(ctx.dunkl(0, &x1(2)).unwrap(), x1(1).scale(&int(2)));
        assert_eq!(ctx.dunkl(0, &x1(3)).unwrap(), x1(2).scale(&(int(3) + &two_k)));
    }

    #[test]
    fn z2_laplacian_and_heat() {
        let k = ratio(5, 2);
        let ctx = z2(k.clone());
        let one_2k = int(1) + &k * int(2);
        assert_eq!(ctx.laplacian(&x1(2)).unwrap(), c1(int(2) * &one_2k));
        assert!(ctx.laplacian(&ctx.one()).unwrap().is_zero());
        let t = ratio(1, 3);
        assert_eq!(ctx.heat(&t, &ctx.one()).unwrap(), ctx.one());
        let expected = &x1(2) - &c1(int(2) * &t * &one_2k);
        assert_eq!(ctx.heat(&-t.clone(), &x1(2)).unwrap(), expected);
        let classical = z2(int(0));
        assert_eq!(classical.heat(&-t.clone(), &x1(2)).unwrap(), &x1(2) - &c1(int(2) * &t));
    }

    #[test]
    fn classical_laplacian_in_two_variables() {
        let ctx = DunklContext::from_catalog("Z2", 2, vec![int(0), int(0)]).unwrap();
        assert_eq!(
            ctx.laplacian(&Polynomial::norm_squared(2)).unwrap(),
            Polynomial::constant(2, int(4))
        );
    }

    #[test]
    fn powers_adjoint_and_conjugate() {
        let k = int(2);
        let ctx = z2(k.clone());
        let one_2k = int(1) + &k * int(2);
        assert_eq!(ctx.dunkl_power(&MultiIndex::zero(1), &x1(3)).unwrap(), x1(3));
        assert_eq!(
            ctx.dunkl_power(&MultiIndex::new(vec![2]), &x1(2)).unwrap(),
            ctx.laplacian(&x1(2)).unwrap()
        );
        let flat = DunklContext::from_catalog("Z2", 2, vec![int(0), int(0)]).unwrap();
        let xy = Polynomial::x_pow(&MultiIndex::new(vec![1, 1]));
        assert_eq!(
            flat.dunkl_power(&MultiIndex::new(vec![1, 1]), &xy).unwrap(),
            Polynomial::one(2)
        );

        assert!(ctx.adjoint(0, &Polynomial::zero(1)).unwrap().is_zero());
        assert_eq!(ctx.adjoint(0, &ctx.one()).unwrap(), x1(1));
        assert_eq!(ctx.adjoint(0, &x1(1)).unwrap(), &x1(2) - &c1(one_2k.clone()));

        let half = ratio(1, 2);
        assert_eq!(ctx.gaussian_conjugate(0, &half, &ctx.one()).unwrap(), -&x1(1));
        let t = ratio(3, 5);
        assert_eq!(
            ctx.gaussian_conjugate(0, &t, &x1(1)).unwrap(),
            &c1(one_2k) - &x1(2).scale(&(&t * int(2)).recip())
        );
        assert_eq!(ctx.gaussian_conjugate(0, &int(0), &x1(1)), Err(Error::ZeroTime));

        let flat1 = z2(int(0));
        let once = flat1.gaussian_conjugate(0, &half, &flat1.one()).unwrap();
        let twice = flat1.gaussian_conjugate(0, &half, &once).unwrap();
        assert_eq!(twice, &x1(2) - &c1(int(1)));
    }

    #[test]
    fn zero_multiplicity_is_partial_derivative() {
        let ctx = DunklContext::from_catalog("B", 3, vec![int(0), int(0)]).unwrap();
        for nu in MultiIndex::up_to_degree(3, 4) {
            let p = Polynomial::x_pow(&nu);
            for j in 0..3 {
                assert_eq!(ctx.dunkl(j, &p).unwrap(), p.partial_derivative(j).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        let ctx = z2(int(1));
        assert!(ctx.dunkl(1, &x1(1)).is_err());
        assert!(ctx.dunkl(0, &Polynomial::one(2)).is_err());
        let rs = RootSystem::build(Family::B, 2).unwrap();
        let other = RootSystem::build(Family::Z2, 1).unwrap();
        let k = Multiplicity::uniform(&other, int(1)).unwrap();
        assert!(DunklContext::new(rs, k).is_err());
    }
}
