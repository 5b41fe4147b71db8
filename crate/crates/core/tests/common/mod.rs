#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use surreal::{Dyadic, Surreal};

pub fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

pub fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

pub fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-5000i64..5000, 0u64..12).prop_map(|(n, e)| Dyadic::new(n, e))
}

pub fn small_dyadic() -> impl Strategy<Value = Dyadic> {
    (-40i64..40, 0u64..4).prop_map(|(n, e)| Dyadic::new(n, e))
}

pub fn coeff() -> impl Strategy<Value = BigRational> {
    (-30i64..30, 1i64..12).prop_filter_map("nonzero", |(n, m)| (n != 0).then(|| rat(n, m)))
}

fn exponent() -> impl Strategy<Value = Surreal> {
    prop_oneof![
        4 => small_dyadic().prop_map(Surreal::Dyadic),
        1 => (small_dyadic(), 1i64..4).prop_map(|(e, c)| Surreal::from_terms([
            (Surreal::one(), rat(c, 1)),
            (Surreal::Dyadic(e), rat(1, 1)),
        ])),
    ]
}

/// Sums of at most three monomials.
pub fn form() -> impl Strategy<Value = Surreal> {
    prop::collection::vec((exponent(), coeff()), 0..=3).prop_map(Surreal::from_terms)
}

pub fn monomial() -> impl Strategy<Value = Surreal> {
    (exponent(), coeff()).prop_map(|(e, c)| Surreal::from_terms([(e, c)]))
}

pub fn random_dyadic<R: Rng>(rng: &mut R, max_exp: u64, bound: i64) -> Dyadic {
    let e = rng.gen_range(0..=max_exp);
    Dyadic::new(rng.gen_range(-bound..=bound), e)
}

pub fn random_coeff<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return rat(n, rng.gen_range(1..=8));
        }
    }
}

pub fn random_exponent<R: Rng>(rng: &mut R) -> Surreal {
    if rng.gen_ratio(1, 6) {
        Surreal::from_terms([
            (Surreal::one(), rat(rng.gen_range(1..4), 1)),
            (Surreal::Dyadic(random_dyadic(rng, 3, 20)), rat(1, 1)),
        ])
    } else {
        Surreal::Dyadic(random_dyadic(rng, 3, 24))
    }
}

/// A form of at most `max_terms` terms.
pub fn random_form<R: Rng>(rng: &mut R, max_terms: usize) -> Surreal {
    let k = rng.gen_range(0..=max_terms);
    Surreal::from_terms((0..k).map(|_| (random_exponent(rng), random_coeff(rng, 40))))
}
