use holoform::gauge::{
    covariant_d, curvature, g2_energy_sides, is_instanton, kahler_energy_sides, random_connection,
    random_lie_two_form, seven_part, spin7_energy_sides, MatForm,
};
use holoform::holonomy::{canonical_structure, StructureKind};
use holoform::random::stream;
use holoform::Scalar;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn instanton_iff_no_seven_part(seed in any::<u64>(), project: bool, spin7: bool) {
        let kind = if spin7 { StructureKind::Spin7 } else { StructureKind::G2 };
        let preset = canonical_structure(kind);
        let mut rng = stream(seed, 1);
        let mut f = random_lie_two_form(&mut rng, preset.n, 0.4, false);
        if project {
            let seven = seven_part(&f, &preset);
            f.add_scaled(&seven, -Scalar::ONE);
        }
        prop_assert_eq!(is_instanton(&f, &preset).unwrap(), seven_part(&f, &preset).is_zero());
    }

    #[test]
    fn bianchi_and_chern_weil(seed in any::<u64>(), n in 7usize..=8) {
        let mut rng = stream(seed, 2);
        let a = random_connection(&mut rng, n, 4, 2);
        let f = curvature(&a);
        prop_assert!(covariant_d(&a, &f).is_zero());
        prop_assert!(f.wedge(&f).trace().d().is_zero());
    }

    #[test]
    fn energy_identities(seed in any::<u64>()) {
        let mut rng = stream(seed, 3);
        let (l, r) = g2_energy_sides(&random_lie_two_form(&mut rng, 7, 0.4, false));
        prop_assert_eq!(l, r);
        let (l, r) = spin7_energy_sides(&random_lie_two_form(&mut rng, 8, 0.4, false));
        prop_assert_eq!(l, r);
        let (l, r) = kahler_energy_sides(&random_lie_two_form(&mut rng, 6, 0.4, true));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn g2_energy_negative_on_instantons(seed in any::<u64>()) {
        let g2 = canonical_structure(StructureKind::G2);
        let mut rng = stream(seed, 4);
        let mut a = random_lie_two_form(&mut rng, 7, 0.4, false);
        let seven = seven_part(&a, &g2);
        a.add_scaled(&seven, -Scalar::ONE);
        prop_assume!(!a.is_zero());
        let (_, rhs) = g2_energy_sides(&a);
        prop_assert!(rhs.is_real() && rhs.re.is_negative());
    }
}

#[test]
fn flat_connection_has_zero_curvature() {
    let a = MatForm::zero(7);
    assert!(curvature(&a).is_zero());
}
