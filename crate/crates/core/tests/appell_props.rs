//! Invariants of the intertwining operator, Appell systems and Gaussian
//! integration on the reference configurations.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::thread;

use common::strategies::*;
use common::{reference_configs, reference_contexts};
use dunkl_core::rational::{from_bigint, pow};
use dunkl_core::{a_lambda, int, ratio, DunklContext, GaussianSpec, MultiIndex, Polynomial, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn ctx(idx: usize) -> &'static DunklContext {
    &reference_contexts()[idx].1
}

fn ctx_index() -> impl Strategy<Value = usize> {
    0..reference_configs().len()
}

fn positive_time() -> impl Strategy<Value = Rational> {
    prop_oneof![
        proptest::sample::select(common::reference_times().to_vec()),
        (1i64..=7, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
    ]
}

fn fit(p: &Polynomial, rank: usize) -> Polynomial {
    Polynomial::from_terms(
        rank,
        p.terms()
            .filter(|(nu, _)| nu.exponents()[rank..].iter().all(|&e| e == 0))
            .map(|(nu, c)| (MultiIndex::new(nu.exponents()[..rank].to_vec()), c.clone())),
    )
    .unwrap()
}

fn fit_index(nu: &MultiIndex, rank: usize) -> MultiIndex {
    MultiIndex::new(nu.exponents()[..rank].to_vec())
}

#[test]
fn v_fixes_constants() {
    for (_, c) in reference_contexts() {
        let one = Polynomial::one(c.rank());
        assert_eq!(c.apply_v(&one).unwrap(), one);
        assert_eq!(c.apply_v_inverse(&one).unwrap(), one);
    }
}

#[test]
fn concurrent_cache_fills_agree() {
    let (family, rank, k) = reference_configs()[2].clone();
    let fresh = Arc::new(DunklContext::from_catalog(family, rank, k).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let c = Arc::clone(&fresh);
            thread::spawn(move || (*c.v_inverse_matrix(5).unwrap()).clone())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(results.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(results[0], fresh.v_inverse_matrix_direct(5).unwrap());
}

#[test]
fn hermite_basis_is_orthogonal() {
    for (label, c) in reference_contexts() {
        let t = ratio(1, 2);
        let basis = c.hermite_basis(3, &t).unwrap();
        let spec = GaussianSpec::centered(c.rank(), t.clone());
        for (i, (a, ha)) in basis.iter().enumerate() {
            for (b, hb) in &basis[..i] {
                let v = c.gaussian_integrate(&(ha * hb), &spec).unwrap();
                assert!(v.is_zero(), "{label}: H_{a:?} and H_{b:?} are not orthogonal");
            }
            assert!(c.gaussian_integrate(&(ha * ha), &spec).unwrap().is_positive());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn v_round_trip_preserves_degree(idx in ctx_index(), p in polynomial(3, 5, 6)) {
        let c = ctx(idx);
        let p = fit(&p, c.rank());
        let vp = c.apply_v(&p).unwrap();
        prop_assert_eq!(c.apply_v_inverse(&vp).unwrap(), p.clone());
        prop_assert_eq!(c.apply_v(&c.apply_v_inverse(&p).unwrap()).unwrap(), p.clone());
        for (n, part) in p.homogeneous_components() {
            let image = c.apply_v(&part).unwrap();
            prop_assert!(image.is_zero() || image.homogeneous_degree() == Some(n as i64));
        }
    }

    #[test]
    fn taylor_coefficients_round_trip(
        idx in ctx_index(),
        coeffs in proptest::collection::btree_map(multi_index(3, 5), nonzero_rational(), 0..6),
    ) {
        let c = ctx(idx);
        let coeffs: BTreeMap<MultiIndex, Rational> = coeffs
            .into_iter()
            .filter(|(nu, _)| nu.exponents()[c.rank()..].iter().all(|&e| e == 0))
            .map(|(nu, v)| (fit_index(&nu, c.rank()), v))
            .collect();
        let p = c.from_moment_coefficients(&coeffs).unwrap();
        prop_assert_eq!(c.taylor_coefficients(&p).unwrap(), coeffs);
    }

    #[test]
    fn leading_parts(idx in ctx_index(), nu in multi_index(3, 4), t in positive_time()) {
        let c = ctx(idx);
        let nu = fit_index(&nu, c.rank());
        let n = nu.degree();
        let r = c.appell_character(&nu, &t).unwrap();
        prop_assert_eq!(r.degree(), n as i64);
        prop_assert_eq!(r.homogeneous_component(n), c.moment_function(&nu).unwrap());
        let s = c.appell_cocharacter(&nu, &t).unwrap().scale(&pow(&(&t * int(2)), n));
        prop_assert_eq!(s.homogeneous_component(n), Polynomial::x_pow(&nu));
    }

    #[test]
    fn inversion_formula(idx in ctx_index(), nu in multi_index(3, 4), t in positive_time()) {
        let c = ctx(idx);
        let nu = fit_index(&nu, c.rank());
        let minus_t = -t.clone();
        let mut sum = Polynomial::zero(c.rank());
        for rho in nu.lower_set() {
            let lambda = nu.checked_sub(&rho).unwrap();
            let w = a_lambda(&lambda, &minus_t) * from_bigint(nu.binomial(&rho));
            sum = &sum + &c.appell_character(&rho, &t).unwrap().scale(&w);
        }
        prop_assert_eq!(sum, c.moment_function(&nu).unwrap());
    }

    #[test]
    fn mean_identity(idx in ctx_index(), nu in multi_index(3, 4), t in positive_time(), x in vector(3)) {
        let c = ctx(idx);
        let nu = fit_index(&nu, c.rank());
        let x = x[..c.rank()].to_vec();
        let r = c.appell_character(&nu, &t).unwrap();
        let m = c.moment_function(&nu).unwrap();
        prop_assert_eq!(c.gaussian_expectation_polynomial(&r, &t).unwrap(), m.clone());
        let at_x = c.gaussian_integrate(&r, &GaussianSpec::new(t.clone(), x.clone())).unwrap();
        prop_assert_eq!(at_x, m.evaluate(&x).unwrap());
    }

    #[test]
    fn heat_inversion_identity(idx in ctx_index(), p in polynomial(3, 4, 5), t in positive_time()) {
        let c = ctx(idx);
        let p = fit(&p, c.rank());
        let half = ratio(1, 2);
        let back = c.gaussian_expectation_polynomial(&c.heat(&-half.clone(), &p).unwrap(), &half).unwrap();
        prop_assert_eq!(back, p.clone());
        let back = c.gaussian_expectation_polynomial(&c.heat(&-t.clone(), &p).unwrap(), &t).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn scaling_laws(idx in ctx_index(), nu in multi_index(3, 4), t in positive_time()) {
        let c = ctx(idx);
        let nu = fit_index(&nu, c.rank());
        let n = nu.degree() as i64;
        let one = Rational::one();
        let (r1, rt) = (c.appell_character(&nu, &one).unwrap(), c.appell_character(&nu, &t).unwrap());
        let (s1, st) = (c.appell_cocharacter(&nu, &one).unwrap(), c.appell_cocharacter(&nu, &t).unwrap());
        for rho in MultiIndex::up_to_degree(c.rank(), nu.degree()) {
            let d = n - rho.degree() as i64;
            let (a1, at) = (r1.coeff(&rho), rt.coeff(&rho));
            let (b1, bt) = (s1.coeff(&rho), st.coeff(&rho));
            if d % 2 != 0 {
                prop_assert!(a1.is_zero() && at.is_zero() && b1.is_zero() && bt.is_zero());
                continue;
            }
            prop_assert_eq!(at, a1 * pow(&t, (d / 2) as u32));
            // t^{-(|ν|+|ρ|)/2}
            let e = (n + rho.degree() as i64) / 2;
            prop_assert_eq!(bt, b1 * pow(&t, e as u32).recip());
        }
    }

    #[test]
    fn dunkl_adjoint_at_half(idx in ctx_index(), p in polynomial(3, 5, 4), q in polynomial(3, 5, 4), j in 0usize..3) {
        let c = ctx(idx);
        let (p, q) = (fit(&p, c.rank()), fit(&q, c.rank()));
        let j = j % c.rank();
        let spec = GaussianSpec::centered(c.rank(), ratio(1, 2));
        let lhs = c.gaussian_integrate(&(&c.dunkl(j, &p).unwrap() * &q), &spec).unwrap();
        let rhs = c.gaussian_integrate(&(&p * &c.adjoint(j, &q).unwrap()), &spec).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_positive_definite(idx in ctx_index(), p in nonzero_polynomial(3, 5, 5)) {
        let c = ctx(idx);
        let p = fit(&p, c.rank());
        prop_assume!(!p.is_zero());
        prop_assert!(c.pairing(&p, &p).unwrap().is_positive());
    }

    #[test]
    fn pairing_is_symmetric(idx in ctx_index(), p in polynomial(3, 4, 4), q in polynomial(3, 4, 4)) {
        let c = ctx(idx);
        let (p, q) = (fit(&p, c.rank()), fit(&q, c.rank()));
        prop_assert_eq!(c.pairing(&p, &q).unwrap(), c.pairing(&q, &p).unwrap());
    }
}
