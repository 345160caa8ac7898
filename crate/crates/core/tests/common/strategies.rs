use dunkl_core::{ratio, MultiIndex, Polynomial, Rational};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=6, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

pub fn multi_index(rank: usize, max_degree: u32) -> impl Strategy<Value = MultiIndex> {
    let all = MultiIndex::up_to_degree(rank, max_degree);
    proptest::sample::select(all)
}

pub fn polynomial(rank: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((multi_index(rank, max_degree), small_rational()), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(rank, terms).unwrap())
}

pub fn nonzero_polynomial(rank: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(rank, max_degree, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn vector(rank: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), rank)
}

pub fn nonzero_vector(rank: usize) -> impl Strategy<Value = Vec<Rational>> {
    vector(rank).prop_filter("nonzero", |v| v.iter().any(|c| !num_traits::Zero::is_zero(c)))
}
