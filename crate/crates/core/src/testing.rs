//! Shared proptest strategies for unit tests.

use proptest::prelude::*;

use crate::syntax::{Connective, Term};

pub(crate) fn arb_term(depth: u32, vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        2 => proptest::sample::select(vars).prop_map(Term::var),
        1 => Just(Term::Zero),
        1 => Just(Term::One),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (
            proptest::sample::select(&Connective::ALL[..]),
            inner.clone(),
            inner,
        )
            .prop_map(|(c, a, b)| Term::bin(c, a, b))
    })
}
