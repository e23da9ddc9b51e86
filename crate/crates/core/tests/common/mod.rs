#![allow(dead_code)]

use std::sync::Arc;

use mzlab_core::{Ambient, ExpVec, Poly, Ring};
use proptest::prelude::*;

pub fn poly_from(amb: &Arc<Ambient>, terms: &[(Vec<i32>, i64)]) -> Poly {
    Poly::from_terms(amb, terms.iter().map(|(e, c)| (ExpVec(e.clone()), amb.ring.from_i64(*c)))).unwrap()
}

/// Polynomials with at most `len` terms, exponents in `lo..=hi`, small
/// integer coefficients.
pub fn polys(amb: Arc<Ambient>, lo: i32, hi: i32, len: usize) -> impl Strategy<Value = Poly> {
    let n = amb.nvars();
    prop::collection::vec((prop::collection::vec(lo..=hi, n), -4i64..=4), 0..=len)
        .prop_map(move |terms| poly_from(&amb, &terms))
}

pub fn q2() -> Arc<Ambient> {
    Ambient::new(Ring::Q, &["x", "y"], false)
}

pub fn f5_2() -> Arc<Ambient> {
    Ambient::new(Ring::Fp(5), &["x", "y"], false)
}

/// Both test ambients.
pub fn ambients() -> impl Strategy<Value = Arc<Ambient>> {
    prop_oneof![Just(q2()), Just(f5_2())]
}
