#![allow(dead_code)]

use holoform::poly::{monomials_up_to, Exponents};
use holoform::polyform::PolyForm;
use holoform::{Blade, ConstForm, Rational, Scalar};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i128..=9, 1i128..=4).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn gaussian() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(re, im)| Scalar::new(re, im))
}

/// A real p-form on ℝⁿ with up to `terms` blades.
pub fn form(n: usize, p: usize, terms: usize) -> impl Strategy<Value = ConstForm> {
    let blades = Blade::of_degree(n, p);
    prop::collection::vec((0..blades.len(), rational()), 0..=terms).prop_map(move |ts| {
        ConstForm::from_terms(n, ts.into_iter().map(|(i, c)| (blades[i], Scalar::real(c))))
    })
}

pub fn complex_form(n: usize, p: usize, terms: usize) -> impl Strategy<Value = ConstForm> {
    let blades = Blade::of_degree(n, p);
    prop::collection::vec((0..blades.len(), gaussian()), 0..=terms)
        .prop_map(move |ts| ConstForm::from_terms(n, ts.into_iter().map(|(i, c)| (blades[i], c))))
}

/// A polynomial form of mixed degree with coefficient degree ≤ 2.
pub fn poly_form(n: usize, terms: usize) -> impl Strategy<Value = PolyForm> {
    let monos: Vec<Exponents> = monomials_up_to(n, 2);
    let count = monos.len();
    prop::collection::vec((0u16..(1 << n), 0..count, rational()), 1..=terms).prop_map(move |ts| {
        let mut f = PolyForm::zero(n);
        for (mask, m, c) in ts {
            let axes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let blade = Blade::from_axes(&axes).expect("distinct axes").0;
            f.add_term(blade, monos[m], Scalar::real(c));
        }
        f
    })
}
