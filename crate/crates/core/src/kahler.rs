//! Generalized Kähler identities for a constant parallel form on flat ℝⁿ,
//! checked by exact evaluation on a spanning family of polynomial forms.

use rayon::prelude::*;

use crate::blade::Blade;
use crate::error::Result;
use crate::form::ConstForm;
use crate::holonomy::{canonical_structure, StructureKind};
use crate::operator::{adjoint_wedge, structure_operator, supercommutator, wedge_with, FormOperator, PointwiseOp};
use crate::poly::Exponents;
use crate::polyform::{blade_monomial_family, PolyForm};
use crate::random;
use crate::report::{Check, Status, SuiteReport, Tally};
use crate::scalar::Scalar;

pub const DEFAULT_RANDOM_SAMPLES: usize = 100;

/// All blades times monomials of degree ≤ 2, then harmonic witnesses
/// (xᵢ² − xⱼ²)·e_I, then `random_count` sparse random forms.
pub fn sample_family(n: usize, random_count: usize, seed: u64) -> Vec<PolyForm> {
    let mut out = blade_monomial_family(n, 2);
    for i in 0..n {
        let j = (i + 1) % n;
        let mut sq = [0u8; 8];
        sq[i] = 2;
        let mut sq2 = [0u8; 8];
        sq2[j] = 2;
        for b in Blade::of_degree(n, 2).into_iter().step_by(3) {
            let mut f = PolyForm::term(n, b, sq, Scalar::ONE);
            f.add_term(b, sq2, -Scalar::ONE);
            out.push(f);
        }
    }
    let mut rng = random::stream(seed, 0xca1c + n as u64);
    out.extend((0..random_count).map(|_| random::poly_form(&mut rng, n, 6, 2)));
    out
}

/// lhs = rhs on every sample; failing that, lhs = c·rhs with one exact
/// constant c is reported as a derived mismatch.
fn constant_claim(check: Check, samples: &[PolyForm], lhs: &FormOperator, rhs: &FormOperator) -> Check {
    let pairs: Vec<(PolyForm, PolyForm)> = samples.par_iter().map(|a| (lhs.apply(a), rhs.apply(a))).collect();
    let mut literal = Tally::default();
    for (a, (l, r)) in samples.iter().zip(&pairs) {
        literal.record(l == r, || format!("a = {a}: {lhs} a = {l}, {rhs} a = {r}"));
    }
    if literal.ok() {
        return literal.into_check(check);
    }
    let c = pairs.iter().find(|(_, r)| !r.is_zero()).and_then(|(l, r)| l.ratio_to(r));
    match c.filter(|c| pairs.iter().all(|(l, r)| *l == r.scale(*c))) {
        Some(c) => check.status(Status::DerivedMismatch).detail(format!(
            "literal identity fails on {}/{} samples (first: {}); exact evaluation gives {lhs} = ({c})·{rhs} on all",
            literal.failed,
            literal.total,
            literal.counterexample.unwrap_or_default()
        )),
        None => literal.into_check(check),
    }
}

fn vanishes(check: Check, samples: &[PolyForm], ops: &[FormOperator]) -> Check {
    let tally = samples
        .par_iter()
        .map(|a| {
            let mut t = Tally::default();
            for op in ops {
                let v = op.apply(a);
                t.record(v.is_zero(), || format!("{op} applied to {a} = {v}"));
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let lhs = ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ");
    tally.into_check(check.sides(lhs, "0"))
}

/// Every identity for one ω. `name` prefixes the check ids.
pub fn verify_kahler_identities(omega: &ConstForm, name: &str, samples: &[PolyForm]) -> Result<SuiteReport> {
    let c = structure_operator(omega, name)?;
    let l = wedge_with(omega, name);
    let lam = adjoint_wedge(omega, name);
    let d = FormOperator::D;
    let ds = FormOperator::Codiff;
    let dc = supercommutator(d.clone(), c.clone());
    let dcs = dc.adjoint();
    let id = |s: &str| format!("{name}.{s}");
    let mut checks = Vec::new();

    checks.push(
        constant_claim(
            Check::new(id("dC-claim"), "d_C={L_ω,d∗}").sides(dc.to_string(), supercommutator(l.clone(), ds.clone()).to_string()),
            samples,
            &dc,
            &supercommutator(l.clone(), ds.clone()),
        ),
    );
    checks.push(
        constant_claim(
            Check::new(id("dC-proof-ordering"), "d_C={d∗,L_ω}").sides(dc.to_string(), supercommutator(ds.clone(), l.clone()).to_string()),
            samples,
            &dc,
            &supercommutator(ds.clone(), l.clone()),
        ),
    );
    let pairs = [
        ("d-dC", &d, &dc, "{d,d_C}=0"),
        ("d-dC*", &d, &dcs, "{d,d_C∗}=0"),
        ("d*-dC", &ds, &dc, "{d∗,d_C}=0"),
        ("d*-dC*", &ds, &dcs, "{d∗,d_C∗}=0"),
    ];
    for (suffix, a, b, anchor) in pairs {
        checks.push(vanishes(Check::new(id(suffix), anchor), samples, &[supercommutator(a.clone(), b.clone())]));
    }
    checks.push(vanishes(
        Check::new(id("L-laplacian"), "Δ commutes with L_ω"),
        samples,
        &[supercommutator(l.clone(), FormOperator::Laplacian)],
    ));
    checks.push(vanishes(
        Check::new(id("Lambda-laplacian"), "Δ commutes with Λ_ω"),
        samples,
        &[supercommutator(lam.clone(), FormOperator::Laplacian)],
    ));
    checks.push(vanishes(
        Check::new(id("L-d"), "{L_ω,d}=0 as ω is closed"),
        samples,
        &[supercommutator(l.clone(), d.clone())],
    ));
    let jacobi: Vec<FormOperator> = [&d, &ds]
        .into_iter()
        .flat_map(|delta| {
            [&c, &l]
                .into_iter()
                .map(move |chi| supercommutator(delta.clone(), supercommutator(delta.clone(), chi.clone())))
        })
        .collect();
    checks.push(vanishes(Check::new(id("jacobi"), "2{δ,{δ,χ}}=0"), samples, &jacobi));

    let witnesses = samples
        .par_iter()
        .filter(|a| a.laplacian().is_zero())
        .map(|a| {
            let mut t = Tally::default();
            let w = a.wedge_const(omega);
            let v = w.laplacian();
            t.record(v.is_zero(), || format!("Δa = 0 for a = {a} but Δ(a∧{name}) = {v}"));
            t
        })
        .reduce(Tally::default, Tally::merge);
    let enough = witnesses.total > 0;
    let mut harmonic = witnesses.into_check(Check::new(id("harmonic-wedge"), "Then α∧ω is harmonic").sides("Δ(a∧ω)", "0"));
    if !enough {
        harmonic = harmonic.status(Status::Fail).detail("no harmonic samples in the family");
    }
    checks.push(harmonic);

    checks.push(adjoint_transpose_check(omega, name, id("adjoint-transpose")));
    Ok(SuiteReport::new(format!("kahler-identities:{name}"), 0, checks))
}

fn adjoint_transpose_check(omega: &ConstForm, name: &str, id: String) -> Check {
    let l = PointwiseOp::wedge_left("L", omega);
    let lam = PointwiseOp::adjoint_wedge("Λ", omega);
    let t = l.transpose("Lᵀ");
    let mut tally = Tally::default();
    for b in Blade::all(omega.n()) {
        tally.record(lam.image(b) == t.image(b), || {
            format!("Λ_{name} e{b:?} = {} but transpose gives {}", lam.image(b), t.image(b))
        });
    }
    tally.into_check(Check::new(id, "inner(ω∧a, b) = inner(a, Λ_ω b)").sides("Λ_ω", "L_ωᵀ"))
}

/// d² = 0, (d*)² = 0, Δ = {d,d*}, the star formula for d* and the
/// componentwise Laplacian, on random polynomial forms over ℝⁿ.
pub fn calculus_checks(n: usize, count: usize, seed: u64) -> Vec<Check> {
    let mut rng = random::stream(seed, 0xd0d0 + n as u64);
    let samples: Vec<PolyForm> = (0..count).map(|_| random::poly_form(&mut rng, n, 5, 3)).collect();
    let lap = supercommutator(FormOperator::D, FormOperator::Codiff);
    let run = |what: &str, anchor: &str, f: &(dyn Fn(&PolyForm) -> (PolyForm, PolyForm) + Sync)| {
        let t = samples
            .par_iter()
            .map(|a| {
                let mut t = Tally::default();
                let (l, r) = f(a);
                t.record(l == r, || format!("a = {a}: {l} ≠ {r}"));
                t
            })
            .reduce(Tally::default, Tally::merge);
        t.into_check(Check::new(format!("calculus.R{n}.{what}"), anchor))
    };
    vec![
        run("d-squared", "d∘d = 0", &|a| (a.d().d(), PolyForm::zero(n))),
        run("codiff-squared", "d*∘d* = 0", &|a| (a.codiff().codiff(), PolyForm::zero(n))),
        run("laplacian", "Δ={d,d∗}", &|a| (lap.apply(a), a.laplacian())),
        run("codiff-star", "d* = (−1)^{n(p+1)+1} ∗d∗", &|a| (a.codiff(), a.codiff_via_star())),
        run("flat-laplacian", "Δ = −Σ∂ᵢ² componentwise", &|a| (a.laplacian(), a.laplacian_componentwise())),
    ]
}

/// The four parallel forms the suite runs over, with their display names.
pub fn kahler_forms() -> Vec<(&'static str, ConstForm)> {
    let g2 = canonical_structure(StructureKind::G2);
    let spin7 = canonical_structure(StructureKind::Spin7);
    let cy3 = canonical_structure(StructureKind::Cy3);
    vec![
        ("phi", g2.form("phi").clone()),
        ("psi", g2.form("psi").clone()),
        ("Omega", spin7.form("Omega").clone()),
        ("omega", cy3.form("omega").clone()),
    ]
}

pub fn kahler_suite(random_count: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kahler-identities", seed, Vec::new());
    for n in [6, 7, 8] {
        report.checks.extend(calculus_checks(n, 5 * random_count, seed));
    }
    for (name, omega) in kahler_forms() {
        let samples = sample_family(omega.n(), random_count, seed);
        let sub = verify_kahler_identities(&omega, name, &samples)?;
        report.checks.extend(sub.checks);
    }
    report.recount();
    Ok(report)
}

/// Exponent vector of a single monomial, for tests and witnesses.
pub fn exponents(pairs: &[(usize, u8)]) -> Exponents {
    let mut e = [0u8; 8];
    for &(i, k) in pairs {
        e[i] = k;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_up_to;

    fn phi() -> ConstForm {
        canonical_structure(StructureKind::G2).form("phi").clone()
    }

    #[test]
    fn family_size() {
        let fam = sample_family(7, 3, 1);
        assert!(fam.len() > monomials_up_to(7, 2).len() << 7);
    }

    #[test]
    fn calculus_holds() {
        for c in calculus_checks(5, 40, 3) {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn spot_samples_for_phi() {
        let samples = vec![
            PolyForm::from_const(&ConstForm::from_axes(7, &[1, 2])),
            PolyForm::term(7, Blade::from_axes(&[4, 5]).unwrap().0, exponents(&[(3, 1)]), Scalar::ONE),
            PolyForm::term(7, Blade::from_axes(&[2]).unwrap().0, exponents(&[(1, 1)]), Scalar::ONE),
        ];
        let r = verify_kahler_identities(&phi(), "phi", &samples).unwrap();
        for c in &r.checks {
            if !c.id.starts_with("phi.dC-") {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn harmonic_witness_for_kahler_form() {
        let omega = canonical_structure(StructureKind::Cy3).form("omega").clone();
        let b = Blade::from_axes(&[2, 3]).unwrap().0;
        let mut a = PolyForm::term(6, b, exponents(&[(0, 2)]), Scalar::ONE);
        a.add_term(b, exponents(&[(1, 2)]), -Scalar::ONE);
        assert!(a.laplacian().is_zero());
        assert!(a.wedge_const(&omega).laplacian().is_zero());
    }
}
