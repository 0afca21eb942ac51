mod common;

use holoform::{derivation_extend, Blade, ConstForm, DerivationSpec, Scalar};
use proptest::prelude::*;

fn sign(odd: bool) -> Scalar {
    Scalar::sign(odd)
}

fn derivation(n: usize, q: usize) -> impl Strategy<Value = DerivationSpec> {
    prop::collection::vec(common::form(n, q, 3), n)
        .prop_map(move |images| DerivationSpec::new(n, images, q.is_multiple_of(2)).expect("uniform degree"))
}

proptest! {
    #[test]
    fn wedge_is_graded_commutative(
        (n, p, q) in (6usize..=8, 0usize..=4, 0usize..=4),
        seed in any::<u64>(),
    ) {
        let mut rng = holoform::random::stream(seed, 1);
        let a = holoform::random::form(&mut rng, n, p, 0.5);
        let b = holoform::random::form(&mut rng, n, q, 0.5);
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(sign(p * q % 2 == 1)));
    }

    #[test]
    fn wedge_is_associative(a in common::form(7, 1, 4), b in common::form(7, 2, 4), c in common::form(7, 3, 4)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn double_star_sign(a in common::complex_form(7, 3, 6), b in common::form(8, 2, 6), c in common::form(6, 4, 6)) {
        prop_assert_eq!(a.star().star(), a.scale(sign(3 * 4 % 2 == 1)));
        prop_assert_eq!(b.star().star(), b.clone());
        prop_assert_eq!(c.star().star(), c.clone());
    }

    #[test]
    fn wedge_star_is_inner_times_vol(a in common::form(7, 2, 6), b in common::form(7, 2, 6)) {
        prop_assert_eq!(a.wedge(&b.star()), ConstForm::volume(7).scale(a.inner(&b)));
        prop_assert_eq!(a.inner(&b), b.inner(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn derivation_is_linear_and_leibniz(
        rho in derivation(7, 2),
        a in common::form(7, 1, 3),
        b in common::form(7, 2, 3),
        c in common::rational(),
    ) {
        let r = |f: &ConstForm| derivation_extend(&rho, f).unwrap();
        let lhs = r(&a.wedge(&b));
        let rhs = &r(&a).wedge(&b) + &a.wedge(&r(&b)).scale(sign(rho.is_odd()));
        prop_assert_eq!(lhs, rhs);
        let sum = &a.scale(Scalar::real(c)) + &b;
        prop_assert_eq!(r(&sum), &r(&a).scale(Scalar::real(c)) + &r(&b));
    }
}

#[test]
fn every_basis_blade_double_star() {
    for n in 6..=8 {
        for b in Blade::all(n) {
            let p = b.degree();
            let e = ConstForm::basis(n, b);
            assert_eq!(e.star().star(), e.scale(sign(p * (n - p) % 2 == 1)), "n = {n}, {b:?}");
        }
    }
}

#[test]
fn wedge_star_over_all_basis_pairs() {
    let n = 7;
    for p in 0..=n {
        for a in Blade::of_degree(n, p) {
            for b in Blade::of_degree(n, p) {
                let (ea, eb) = (ConstForm::basis(n, a), ConstForm::basis(n, b));
                let expected = if a == b { ConstForm::volume(n) } else { ConstForm::zero(n) };
                assert_eq!(ea.wedge(&eb.star()), expected);
            }
        }
    }
}

#[test]
fn derivation_rejects_mixed_degrees() {
    let n = 3;
    let images = vec![ConstForm::from_axes(n, &[0]), ConstForm::from_axes(n, &[0, 1]), ConstForm::zero(n)];
    assert!(DerivationSpec::new(n, images, false).is_err());
}
