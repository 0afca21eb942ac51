mod common;

use holoform::holonomy::{
    canonical_structure, lefschetz_trace, split2, two_form_basis, StructureKind, TwoFormSplit,
};
use holoform::linalg::Matrix;
use holoform::{ConstForm, Rational, Scalar};
use proptest::prelude::*;

fn coords(f: &ConstForm, n: usize) -> Vec<Rational> {
    two_form_basis(n).iter().map(|b| f.coef(*b).re).collect()
}

/// Π₇ and its complement as matrices on Λ².
fn projectors(kind: StructureKind) -> (Matrix, Matrix) {
    let preset = canonical_structure(kind);
    let n = preset.n;
    let basis = two_form_basis(n);
    let (mut small, mut big) = (Vec::new(), Vec::new());
    for b in &basis {
        let (s, l) = match split2(&ConstForm::basis(n, *b), &preset).unwrap() {
            TwoFormSplit::G2 { a7, a14 } => (a7, a14),
            TwoFormSplit::Spin7 { a7, a21 } => (a7, a21),
            TwoFormSplit::Cy3 { .. } => unreachable!(),
        };
        small.push(coords(&s, n));
        big.push(coords(&l, n));
    }
    (Matrix::from_columns(basis.len(), &small), Matrix::from_columns(basis.len(), &big))
}

#[test]
fn projectors_are_idempotent_and_complementary() {
    for (kind, dim) in [(StructureKind::G2, 21), (StructureKind::Spin7, 28)] {
        let (p7, q) = projectors(kind);
        assert_eq!(p7.rows(), dim);
        assert!(p7.mul(&p7).add(&p7.scale(-Rational::ONE)).is_zero());
        assert!(p7.mul(&q).is_zero() && q.mul(&p7).is_zero());
        assert!(p7.add(&q).add(&Matrix::identity(dim).scale(-Rational::ONE)).is_zero());
        assert_eq!(p7.trace(), Rational::from_int(7));
    }
}

#[test]
fn canonical_invariants() {
    let g2 = canonical_structure(StructureKind::G2);
    assert_eq!(g2.form("phi").norm_sq(), Rational::from_int(7));
    assert_eq!(g2.form("phi").star().norm_sq(), Rational::from_int(7));
    let spin7 = canonical_structure(StructureKind::Spin7);
    let omega = spin7.form("Omega");
    assert_eq!(omega.star(), *omega);
    assert_eq!(omega.norm_sq(), Rational::from_int(14));
    let cy3 = canonical_structure(StructureKind::Cy3);
    let w = cy3.form("omega");
    assert!(w.wedge(cy3.form("Omega30")).is_zero());
    assert_eq!(w.wedge(w).wedge(w), ConstForm::volume(6).scale(Scalar::int(6)));
}

fn seven_and_rest(alpha: &ConstForm, kind: StructureKind) -> (ConstForm, ConstForm) {
    match split2(alpha, &canonical_structure(kind)).unwrap() {
        TwoFormSplit::G2 { a7, a14 } => (a7, a14),
        TwoFormSplit::Spin7 { a7, a21 } => (a7, a21),
        TwoFormSplit::Cy3 { .. } => unreachable!(),
    }
}

proptest! {
    #[test]
    fn g2_norm_relation(alpha in common::form(7, 2, 8)) {
        let phi = canonical_structure(StructureKind::G2).form("phi").clone();
        let (a7, a14) = seven_and_rest(&alpha, StructureKind::G2);
        prop_assert_eq!(alpha.wedge(&phi).norm_sq(), a7.norm_sq() * Rational::from_int(4) + a14.norm_sq());
        prop_assert_eq!(&a7 + &a14, alpha);
        prop_assert!(a7.inner(&a14).is_zero());
    }

    #[test]
    fn spin7_norm_relation(alpha in common::form(8, 2, 8)) {
        let omega = canonical_structure(StructureKind::Spin7).form("Omega").clone();
        let (a7, a21) = seven_and_rest(&alpha, StructureKind::Spin7);
        prop_assert_eq!(alpha.wedge(&omega).norm_sq(), a7.norm_sq() * Rational::from_int(9) + a21.norm_sq());
        prop_assert!(a7.inner(&a21).is_zero());
    }

    #[test]
    fn cy3_types_are_orthogonal(alpha in common::complex_form(6, 2, 8)) {
        let split = split2(&alpha, &canonical_structure(StructureKind::Cy3)).unwrap();
        prop_assert!(split.pairwise_orthogonal());
        prop_assert_eq!(split.sum(), alpha);
        let TwoFormSplit::Cy3 { a11_0, .. } = split else { unreachable!() };
        prop_assert!(lefschetz_trace(&a11_0).is_zero());
    }
}
