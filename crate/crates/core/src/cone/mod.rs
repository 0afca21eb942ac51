//! Differential graded algebras of cones and cylinders over structured
//! bases, with exact potentials and growth classification.

pub mod algebra;
pub mod element;
pub mod parse;
pub mod preset;
pub mod solve;

use std::collections::BTreeMap;

pub use algebra::{BaseAlgebra, BaseElement, Gen};
pub use element::{ConeElement, ConeMonomial};
pub use preset::{ConePreset, PresetFile};
pub use solve::{expand_ansatz, growth_classify, solve_potential, GrowthClass, GrowthKind, PotentialSolution};

use crate::error::{Error, Result};
use crate::report::{Check, Status, SuiteReport, Tally};
use crate::scalar::Rational;

/// The shipped presets in dependency order.
pub const PRESET_SOURCES: [(&str, &str); 6] = [
    ("sasakian.toml", include_str!("../../presets/sasakian.toml")),
    ("nk6.toml", include_str!("../../presets/nk6.toml")),
    ("npg2.toml", include_str!("../../presets/npg2.toml")),
    ("se5.toml", include_str!("../../presets/se5.toml")),
    ("cy3_g2_cylinder.toml", include_str!("../../presets/cy3_g2_cylinder.toml")),
    ("g2_spin7_cylinder.toml", include_str!("../../presets/g2_spin7_cylinder.toml")),
];

fn shipped_files() -> Vec<PresetFile> {
    PRESET_SOURCES
        .iter()
        .map(|(file, src)| toml::from_str(src).unwrap_or_else(|e| panic!("shipped preset {file}: {e}")))
        .collect()
}

/// Loads a shipped preset by name or alias, with parameter overrides
/// applied to it and every preset it extends.
pub fn load_preset_with(name: &str, overrides: &BTreeMap<String, Rational>) -> Result<ConePreset> {
    let files = shipped_files();
    load_from(&files, name, overrides)
}

fn load_from(files: &[PresetFile], name: &str, overrides: &BTreeMap<String, Rational>) -> Result<ConePreset> {
    let file = files
        .iter()
        .find(|f| f.name.eq_ignore_ascii_case(name) || f.aliases.iter().any(|a| a.eq_ignore_ascii_case(name)))
        .ok_or_else(|| Error::Unknown {
            kind: "preset",
            name: name.to_string(),
        })?;
    let mut file = file.clone();
    for (k, v) in overrides {
        file.params.insert(k.clone(), v.to_string());
    }
    ConePreset::from_file(&file, &|parent| load_from(files, parent, overrides))
}

pub fn load_preset(name: &str) -> Result<ConePreset> {
    load_preset_with(name, &BTreeMap::new())
}

pub fn shipped_presets() -> Vec<ConePreset> {
    shipped_files()
        .iter()
        .map(|f| load_preset(&f.name).unwrap_or_else(|e| panic!("shipped preset {}: {e}", f.name)))
        .collect()
}

/// Parses a user-supplied preset; `extends` may name a shipped preset.
pub fn preset_from_toml(src: &str) -> Result<ConePreset> {
    ConePreset::from_toml(src, &|parent| load_preset(parent))
}

pub fn dga_d(a: &ConeElement, preset: &ConePreset) -> ConeElement {
    preset.d(a)
}

pub fn cone_star(a: &ConeElement, preset: &ConePreset) -> Result<ConeElement> {
    preset.star(a)
}

pub fn build_cone_structure(preset: &ConePreset) -> ConeElement {
    preset.structure_form().clone()
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

/// lhs = c·rhs for one exact constant c.
fn ratio(lhs: &ConeElement, rhs: &ConeElement) -> Option<Rational> {
    let (m, v) = rhs.terms().iter().next()?;
    let c = lhs.terms().get(m).copied().unwrap_or(Rational::ZERO) / *v;
    (rhs.scale(c) == *lhs).then_some(c)
}

const AXIOMS: [(&str, &str); 7] = [
    ("d-squared", "d² = 0 on every generator"),
    ("leibniz", "d(ab) = da∧b + (−1)^|a| a∧db"),
    ("graded-commutative", "ab = (−1)^{|a||b|} ba"),
    ("associative", "(ab)c = a(bc)"),
    ("double-star", "∗∗g = (−1)^{p(n−p)} g"),
    ("star-unit", "∗1 = vol"),
    ("metric", "g∧∗h = δ_gh |g|² ∗1"),
];

pub fn verify_structure_preset(preset: &ConePreset) -> SuiteReport {
    let alg = &preset.base;
    let mut checks = Vec::new();
    let failures = alg.axiom_failures();
    for (id, anchor) in AXIOMS {
        let mut t = Tally::default();
        match failures.get(id) {
            None => t.record(true, String::new),
            Some(list) => {
                for msg in list {
                    t.record(false, || msg.clone());
                }
            }
        }
        checks.push(Check::new(format!("base.{id}"), anchor).detail(t.counterexample.clone().unwrap_or_else(|| "all generators".into())).passed_if(t.ok()));
    }

    let n = preset.dim();
    let mut prefixes = vec![ConeElement::one(), ConeElement::dr()];
    if preset.uses_t {
        prefixes.push(ConeElement::dt());
        prefixes.push(preset.wedge(&ConeElement::dt(), &ConeElement::dr()));
    }
    let mut t = Tally::default();
    for g in 0..alg.len() {
        for prefix in &prefixes {
            let e = preset.wedge(prefix, &ConeElement::generator(g));
            let p = e.degree(alg).unwrap_or(0);
            let expected = e.scale(sign(p * (n - p) % 2 == 1));
            match preset.star(&e).and_then(|s| preset.star(&s)) {
                Ok(ss) => t.record(ss == expected, || format!("∗∗({}) = {}", preset.show(&e), preset.show(&ss))),
                Err(err) => t.record(false, || err.to_string()),
            }
        }
    }
    checks.push(t.into_check(Check::new("cone.double-star", "∗∗a = (−1)^{p(n−p)} a")));

    let vol = preset.star(&ConeElement::one());
    let expected_vol = alg.star_gen(0).map(|v| {
        let shape = ConeMonomial {
            r_exp: alg.base_dim as i32,
            has_dr: true,
            has_dt: preset.uses_t,
            ..ConeMonomial::base(0)
        };
        ConeElement::from_base(shape, v)
    });
    let vol_ok = matches!((&vol, &expected_vol), (Ok(a), Ok(b)) if a == b);
    checks.push(
        Check::new("cone.volume", "∗1 = r^{dim X} dr∧vol_X")
            .sides(vol.as_ref().map(|v| preset.show(v)).unwrap_or_default(), expected_vol.as_ref().map(|v| preset.show(v)).unwrap_or_default())
            .passed_if(vol_ok),
    );

    for eq in &preset.equations {
        checks.push(equation_check(preset, eq));
    }

    let structure = preset.structure_form();
    let ds = preset.d(structure);
    checks.push(
        Check::new("structure.closed", format!("d{} = 0", preset.structure))
            .sides(format!("d({})", preset.show(structure)), preset.show(&ds))
            .passed_if(ds.is_zero()),
    );
    let star_closed = preset.star(structure).map(|s| (preset.d(&s), s));
    let check = Check::new("structure.star-closed", format!("d∗{} = 0", preset.structure));
    checks.push(match star_closed {
        Ok((dss, s)) => check.sides(format!("d({})", preset.show(&s)), preset.show(&dss)).passed_if(dss.is_zero()),
        Err(e) => check.detail(e.to_string()).status(Status::Fail),
    });
    let mut report = SuiteReport::new(format!("cone:{}", preset.name), 0, checks);
    if let Some(norm) = &preset.normalization {
        for c in &mut report.checks {
            c.detail = if c.detail.is_empty() { format!("normalization {norm}") } else { format!("{} (normalization {norm})", c.detail) };
        }
    }
    report
}

fn equation_check(preset: &ConePreset, eq: &preset::Equation) -> Check {
    let check = Check::new(format!("equation.{}", eq.id), eq.anchor.clone());
    let (lhs, rhs) = match (preset.parse(&eq.lhs), preset.parse(&eq.rhs)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return check.status(Status::Fail).detail(e.to_string()),
    };
    let check = check.sides(preset.show(&lhs), preset.show(&rhs));
    if lhs == rhs {
        return check.detail(format!("{} = {}", eq.lhs, eq.rhs));
    }
    match ratio(&lhs, &rhs) {
        Some(c) if eq.claimed => check
            .status(Status::DerivedMismatch)
            .detail(format!("claimed {} = {}; exact evaluation gives lhs = ({c})·rhs", eq.lhs, eq.rhs)),
        _ => check.status(Status::Fail).detail(format!("{} ≠ {}", eq.lhs, eq.rhs)),
    }
}

/// One solved potential together with its preset context.
#[derive(Clone, Debug)]
pub struct SolvedPotential {
    pub preset: String,
    pub id: String,
    pub target: ConeElement,
    pub solution: PotentialSolution,
}

pub fn solve_preset_potentials(preset: &ConePreset) -> Result<Vec<SolvedPotential>> {
    preset
        .potentials
        .iter()
        .map(|spec| {
            let target = preset.parse(&spec.target)?;
            let ansatz = expand_ansatz(preset, &spec.ansatz, spec.exponents)?;
            Ok(SolvedPotential {
                preset: preset.name.clone(),
                id: spec.id.clone(),
                solution: solve_potential(preset, &target, &ansatz)?,
                target,
            })
        })
        .collect()
}

/// Solver round trips plus every stated potential compared against the
/// exact solve.
pub fn potentials_suite(presets: &[ConePreset]) -> SuiteReport {
    let mut checks = Vec::new();
    for preset in presets {
        let solved = match solve_preset_potentials(preset) {
            Ok(s) => s,
            Err(e) => {
                checks.push(Check::new(format!("{}.load", preset.name), "preset potentials").status(Status::Fail).detail(e.to_string()));
                continue;
            }
        };
        for (spec, sp) in preset.potentials.iter().zip(&solved) {
            let base_id = format!("{}.{}", preset.name, spec.id);
            let label = preset.normalization.as_deref().map(|n| format!(" (normalization {n})")).unwrap_or_default();
            let PotentialSolution::Solved { potential, kernel_dim, .. } = &sp.solution else {
                checks.push(
                    Check::new(format!("{base_id}.solve"), format!("d β = {}", spec.target))
                        .status(Status::Fail)
                        .detail(format!("no potential in the span of {:?}", spec.ansatz)),
                );
                continue;
            };
            let round_trip = preset.d(potential);
            checks.push(
                Check::new(format!("{base_id}.solve"), format!("d β = {}", spec.target))
                    .sides(format!("d({})", preset.show(potential)), preset.show(&sp.target))
                    .detail(format!("β = {}, kernel dimension {kernel_dim}{label}", preset.show(potential)))
                    .passed_if(round_trip == sp.target),
            );
            for claim in &spec.claims {
                let check = Check::new(format!("{base_id}.{}", claim.id), claim.anchor.clone());
                let stated = match preset.parse(&claim.potential) {
                    Ok(e) => e,
                    Err(e) => {
                        checks.push(check.status(Status::Fail).detail(e.to_string()));
                        continue;
                    }
                };
                let d_stated = preset.d(&stated);
                let check = check.sides(format!("d({})", preset.show(&stated)), preset.show(&sp.target));
                if d_stated == sp.target {
                    checks.push(check.detail(format!("stated potential {} is exact{label}", claim.potential)));
                } else {
                    checks.push(check.status(Status::DerivedMismatch).detail(format!(
                        "stated potential {} has d = {}; exact solve gives {}{label}",
                        claim.potential,
                        preset.show(&d_stated),
                        preset.show(potential)
                    )));
                }
            }
        }
    }
    SuiteReport::new("potentials", 0, checks)
}

/// Growth of every solved potential, which should be linear, plus the
/// elementary classes.
pub fn growth_suite(presets: &[ConePreset]) -> SuiteReport {
    let mut checks = Vec::new();
    for preset in presets {
        let Ok(solved) = solve_preset_potentials(preset) else {
            checks.push(Check::new(format!("{}.load", preset.name), "preset potentials").status(Status::Fail));
            continue;
        };
        for sp in solved {
            let check = Check::new(format!("{}.{}", sp.preset, sp.id), "|β(x)| ≤ c(1+ρ(x₀,x))");
            let PotentialSolution::Solved { potential, .. } = sp.solution else {
                checks.push(check.status(Status::Fail).detail("no potential to classify"));
                continue;
            };
            checks.push(match growth_classify(preset, &potential) {
                Ok(g) => check
                    .sides(preset.show(&potential), g.kind.to_string())
                    .detail(format!("witness exponents {:?}", g.witnesses.iter().map(|w| (w.r_exponent, w.t_exponent)).collect::<Vec<_>>()))
                    .passed_if(g.kind == GrowthKind::Linear),
                Err(e) => check.status(Status::Fail).detail(e.to_string()),
            });
        }
    }
    if let Some(nk6) = presets.iter().find(|p| p.matches("nk6")) {
        for (id, src, expected) in [
            ("elementary.dr", "dr", GrowthKind::DecayingOrBounded),
            ("elementary.r-inverse", "r^-1 omega", GrowthKind::SingularAtApex),
            ("elementary.r4-omega", "r^4 omega", GrowthKind::Polynomial(2)),
        ] {
            let got = nk6.parse(src).and_then(|e| growth_classify(nk6, &e));
            let check = Check::new(id, "ρ(x₀,x)=O(r)");
            checks.push(match got {
                Ok(g) => check.sides(src, g.kind.to_string()).passed_if(g.kind == expected),
                Err(e) => check.status(Status::Fail).detail(e.to_string()),
            });
        }
    }
    SuiteReport::new("growth", 0, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_presets_load() {
        let all = shipped_presets();
        assert_eq!(all.len(), 6);
        assert!(all[5].uses_t);
        assert_eq!(all[5].dim(), 8);
    }

    #[test]
    fn shipped_presets_verify() {
        for p in shipped_presets() {
            let r = verify_structure_preset(&p);
            for c in &r.checks {
                assert_ne!(c.status, Status::Fail, "{}: {c:?}", p.name);
            }
        }
    }

    #[test]
    fn sasakian_example() {
        let p = load_preset("sasakian").unwrap();
        let e = p.parse("d(r^2 eta)").unwrap();
        assert_eq!(p.show(&e), "2 r dr∧eta + r^2 deta");
    }

    #[test]
    fn nk6_examples() {
        let p = load_preset("nk6").unwrap();
        assert_eq!(p.show(&p.parse("d(1/3 r^3 omega)").unwrap()), p.show(p.structure_form()));
        assert_eq!(p.show(&p.star(&ConeElement::one()).unwrap()), "r^6 dr∧vol");
        let star_phi = p.element("psi_c").unwrap();
        assert_eq!(*star_phi, p.parse("1/2 r^4 omega2 - r^3 dr∧ImOmega").unwrap());
    }

    #[test]
    fn npg2_example() {
        let p = load_preset("npg2").unwrap();
        assert_eq!(p.parse("d(1/4 r^4 phi)").unwrap(), *p.structure_form());
    }

    #[test]
    fn lambda_scaling() {
        let mut o = BTreeMap::new();
        o.insert("lambda".to_string(), Rational::from_int(2));
        let p = load_preset_with("nk6", &o).unwrap();
        assert_eq!(p.parse("d(omega)").unwrap(), p.parse("6 ReOmega").unwrap());
        let q = load_preset_with("g2-spin7-cylinder", &o).unwrap();
        assert_eq!(q.params["lambda"], Rational::from_int(2));
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(load_preset("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn user_preset_extends_shipped() {
        let src = r#"
name = "Custom"
extends = "nk6"
structure = "twice"
[[elements]]
name = "twice"
expr = "2 phi_c"
"#;
        let p = preset_from_toml(src).unwrap();
        assert_eq!(*p.structure_form(), p.parse("2 phi_c").unwrap());
    }
}
