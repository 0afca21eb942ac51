//! One PASS/FAIL line per acceptance criterion. All identity checks are
//! exact (zero tolerance); the only pinned tolerances are the wall-clock
//! budgets below.
//!
//! Two literal claims are contradicted by exact evaluation: the Spin(7)
//! contraction constant (4 claimed, 7 computed) and the sign of
//! d_C = {L_ω, d*} (−1 computed). Their criterion lines print FAIL. The
//! acceptance test pins the exact mismatch; the `#[ignore]`d tests at the
//! bottom assert the literal claims and fail.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use holoform::cone::{self, GrowthKind, PotentialSolution};
use holoform::holonomy::{self, canonical_structure, StructureKind};
use holoform::kahler;
use holoform::report::{Status, SuiteReport};
use holoform::verifier::{run_suite, SuiteConfig};
use holoform::{ConstForm, Scalar};

const SEED: u64 = 7;
const SAMPLES: usize = 100;

const BUDGET_EIGEN: Duration = Duration::from_secs(1);
const BUDGET_IDENTITIES: Duration = Duration::from_secs(5);
const BUDGET_KAHLER: Duration = Duration::from_secs(60);
const BUDGET_CONE: Duration = Duration::from_secs(5);
const BUDGET_GROWTH: Duration = Duration::from_secs(1);
const BUDGET_GAUGE: Duration = Duration::from_secs(60);

struct Line {
    criterion: usize,
    pass: bool,
    summary: String,
}

fn emit(lines: &[Line]) {
    // Direct writes bypass the test harness's output capture.
    let mut out = std::io::stdout().lock();
    for l in lines {
        let _ = writeln!(out, "criterion {}: {} {}", l.criterion, if l.pass { "PASS" } else { "FAIL" }, l.summary);
    }
    let _ = out.flush();
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn status(r: &SuiteReport, id: &str) -> Status {
    r.find(id).unwrap_or_else(|| panic!("{}: no check {id}", r.suite)).status
}

fn criterion_1() -> Line {
    let (r, t) = timed(|| holonomy::eigen_suite(SEED));
    let text = r.to_text();
    let factored = text.contains("(t-2)^7 (t+1)^14") && text.contains("(t-3)^7 (t+1)^21");
    Line {
        criterion: 1,
        pass: r.passed() && r.summary.mismatch == 0 && factored && t < BUDGET_EIGEN,
        summary: format!("eigen-decompositions: {} checks, factorizations found {factored}, {t:?} (budget {BUDGET_EIGEN:?})", r.checks.len()),
    }
}

/// Returns the line and the Spin(7) degree-1 mismatch details.
fn criterion_2() -> (Line, Vec<String>) {
    let ((g2, spin7), t) = timed(|| {
        (
            holonomy::identity_suite_g2(&holonomy::identity_samples(7, SAMPLES, SEED), SEED),
            holonomy::identity_suite_spin7(&holonomy::identity_samples(8, SAMPLES, SEED), SEED),
        )
    });
    let claimed = [
        (&g2, "deg0.pairing"),
        (&g2, "deg1.contraction"),
        (&g2, "deg2.split-identity"),
        (&spin7, "deg0.pairing"),
        (&spin7, "deg1.contraction"),
        (&spin7, "deg2.split-identity"),
    ];
    let failing: Vec<String> = claimed
        .iter()
        .filter(|(r, id)| status(r, id) != Status::Pass)
        .map(|(r, id)| format!("{}/{id}: {}", r.suite, r.find(id).map(|c| c.detail.clone()).unwrap_or_default()))
        .collect();
    let line = Line {
        criterion: 2,
        pass: failing.is_empty() && g2.passed() && spin7.passed() && t < BUDGET_IDENTITIES,
        summary: format!(
            "six pointwise identities on basis forms plus {SAMPLES} random forms per degree: {} of 6 hold exactly, {t:?} (budget {BUDGET_IDENTITIES:?}){}",
            6 - failing.len(),
            if failing.is_empty() { String::new() } else { format!("; not holding: {}", failing.join("; ")) }
        ),
    };
    (line, failing)
}

fn criterion_3() -> (Line, SuiteReport) {
    let (r, t) = timed(|| kahler::kahler_suite(SAMPLES, SEED).expect("kahler suite"));
    let names = ["phi", "psi", "Omega", "omega"];
    let required = ["d-dC", "d-dC*", "d*-dC", "d*-dC*", "L-laplacian", "Lambda-laplacian"];
    let others_hold = names.iter().all(|n| required.iter().all(|id| status(&r, &format!("{n}.{id}")) == Status::Pass));
    let claim: Vec<(String, Status)> = names.iter().map(|n| (n.to_string(), status(&r, &format!("{n}.dC-claim")))).collect();
    let claim_holds = claim.iter().all(|(_, s)| *s == Status::Pass);
    let line = Line {
        criterion: 3,
        pass: claim_holds && others_hold && r.summary.fail == 0 && t < BUDGET_KAHLER,
        summary: format!(
            "four vanishing supercommutators and [L,Δ] = [Λ,Δ] = 0 for φ, ∗φ, Ω, ω: {}; d_C = {{L_ω, d*}} literal: {}, {t:?} (budget {BUDGET_KAHLER:?})",
            if others_hold { "hold" } else { "FAIL" },
            if claim_holds { "holds".to_string() } else { "exact evaluation gives d_C = −{L_ω, d*} for all four forms".to_string() }
        ),
    };
    (line, r)
}

fn criterion_4() -> Line {
    let (result, t) = timed(|| {
        let presets = cone::shipped_presets();
        let structures = presets.iter().map(cone::verify_structure_preset).collect::<Vec<_>>();
        (presets.len(), structures, cone::potentials_suite(&presets))
    });
    let (count, structures, potentials) = result;
    let closed = structures.iter().all(|r| {
        status(r, "structure.closed") == Status::Pass && status(r, "structure.star-closed") == Status::Pass && r.passed()
    });
    let expected = [
        ("SasakianKaehlerCone.omega_c.r2-eta", Status::Pass),
        ("NK6toG2Cone.phi_c.third-r3-omega", Status::Pass),
        ("NPG2toSpin7Cone.Omega_c.quarter-r4-phi", Status::Pass),
        ("NK6toG2Cone.phi_c.third-r2-omega", Status::DerivedMismatch),
        ("NK6toG2Cone.psi_c.half-r4-ImOmega", Status::DerivedMismatch),
        ("CY3ConeToG2Cylinder.psi.half-r2-omega-eta", Status::DerivedMismatch),
        ("G2ConeToSpin7Cylinder.Omega.half-r4-ImOmega", Status::DerivedMismatch),
    ];
    let statuses_ok = expected.iter().all(|(id, s)| status(&potentials, id) == *s);
    let solved = potentials.checks.iter().filter(|c| c.id.ends_with(".solve")).all(|c| c.passed());
    let solutions: Vec<cone::SolvedPotential> = cone::shipped_presets()
        .iter()
        .flat_map(|p| cone::solve_preset_potentials(p).expect("shipped potentials"))
        .collect();
    let exact = [
        ("SasakianKaehlerCone", "omega_c", "r^2 eta"),
        ("NK6toG2Cone", "phi_c", "1/3 r^3 omega"),
        ("NPG2toSpin7Cone", "Omega_c", "1/4 r^4 phi"),
        ("NK6toG2Cone", "psi_c", "-1/4 r^4 ImOmega"),
        ("CY3ConeToG2Cylinder", "psi", "1/4 r^2 omega_c∧eta + t ReOmega_c"),
        ("G2ConeToSpin7Cylinder", "Omega", "t phi_c - 1/4 r^4 ImOmega"),
    ]
    .iter()
    .all(|(name, id, expected)| {
        let preset = cone::load_preset(name).unwrap();
        let want = preset.parse(expected).unwrap();
        solutions.iter().any(|s| {
            s.preset == *name
                && s.id == *id
                && matches!(&s.solution, PotentialSolution::Solved { potential, .. } if *potential == want)
        })
    });
    Line {
        criterion: 4,
        pass: count == 6 && closed && solved && statuses_ok && exact && t < BUDGET_CONE,
        summary: format!(
            "{count} presets closed and co-closed {closed}; solver round trips {solved}; expected potentials and {} derived-mismatch entries {}, {t:?} (budget {BUDGET_CONE:?})",
            potentials.summary.mismatch,
            statuses_ok && exact
        ),
    }
}

fn criterion_5() -> Line {
    let presets = cone::shipped_presets();
    let (r, t) = timed(|| cone::growth_suite(&presets));
    let potentials = r.checks.iter().filter(|c| !c.id.starts_with("elementary.")).collect::<Vec<_>>();
    let linear = potentials.iter().all(|c| c.passed() && c.rhs == GrowthKind::Linear.to_string());
    Line {
        criterion: 5,
        pass: linear && r.passed() && t < BUDGET_GROWTH,
        summary: format!("{} solved potentials, all linear {linear}, {t:?} (budget {BUDGET_GROWTH:?})", potentials.len()),
    }
}

fn criterion_6() -> Line {
    let ((g2, spin7, kahler), t) = timed(|| {
        (
            holoform::gauge::gauge_suite(StructureKind::G2, SAMPLES, SEED).unwrap(),
            holoform::gauge::gauge_suite(StructureKind::Spin7, SAMPLES, SEED).unwrap(),
            holoform::gauge::kahler_gauge_suite(SAMPLES, SEED).unwrap(),
        )
    });
    let counts = |r: &SuiteReport, id: &str| r.find(id).map(|c| c.detail.clone()).unwrap_or_default();
    let equivalence = [&g2, &spin7].iter().all(|r| {
        let id = format!("{}.instanton.equivalence", if r.suite == "gauge-g2" { "g2" } else { "spin7" });
        status(r, &id) == Status::Pass && counts(r, &id).contains(&format!("{}", 2 * SAMPLES))
    });
    let bianchi = ["R7", "R8"].iter().zip([&g2, &spin7]).all(|(n, r)| {
        status(r, &format!("{n}.bianchi")) == Status::Pass
            && status(r, &format!("{n}.chern-weil")) == Status::Pass
            && counts(r, &format!("{n}.bianchi")).contains(&format!("{}", SAMPLES / 2))
    });
    let energy = status(&g2, "g2.energy") == Status::Pass && status(&kahler, "cy3.energy-L5") == Status::Pass;
    Line {
        criterion: 6,
        pass: equivalence && bianchi && energy && g2.passed() && spin7.passed() && kahler.passed() && t < BUDGET_GAUGE,
        summary: format!(
            "instanton equivalence on {} forms {equivalence}; Bianchi and Chern–Weil on {} connections per dimension {bianchi}; energy identities {energy}, {t:?} (budget {BUDGET_GAUGE:?})",
            2 * SAMPLES,
            SAMPLES / 2
        ),
    }
}

fn criterion_7() -> Line {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_holoform"))
            .args(["verify", "all", "--seed", "7", "--format", "json"])
            .env_remove("HOLOFORM_FORMAT")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let in_process = run_suite("all", &SuiteConfig { seed: 7, ..SuiteConfig::default() }).unwrap().to_json();
    let matches_library = String::from_utf8_lossy(&a.stdout).trim_end() == in_process;
    Line {
        criterion: 7,
        pass: identical && matches_library && a.status.code() == Some(0),
        summary: format!(
            "two runs of verify all --seed 7 --format json: {} bytes, byte-identical {identical}, equal to the library report {matches_library}",
            a.stdout.len()
        ),
    }
}

#[test]
fn acceptance() {
    let c1 = criterion_1();
    let (c2, spin7_failures) = criterion_2();
    let (c3, kahler) = criterion_3();
    let lines = vec![c1, c2, c3, criterion_4(), criterion_5(), criterion_6(), criterion_7()];
    emit(&lines);

    for l in &lines {
        if l.criterion != 2 && l.criterion != 3 {
            assert!(l.pass, "criterion {}: {}", l.criterion, l.summary);
        }
    }

    // Criterion 2: only the Spin(7) contraction claim fails, with exact constant 7.
    assert_eq!(spin7_failures.len(), 1, "{spin7_failures:?}");
    assert!(spin7_failures[0].starts_with("spin7-identities/deg1.contraction"));
    assert!(spin7_failures[0].contains("exact evaluation gives constant 7"), "{}", spin7_failures[0]);

    // Criterion 3: the only departure is the overall sign of d_C.
    for n in ["phi", "psi", "Omega", "omega"] {
        let c = kahler.find(&format!("{n}.dC-claim")).unwrap();
        assert_eq!(c.status, Status::DerivedMismatch);
        assert!(c.detail.contains("(-1)·"), "{n}: {}", c.detail);
    }
    assert_eq!(kahler.summary.fail, 0);
}

#[test]
#[ignore = "literal claim contradicted by exact evaluation: the constant is 7"]
fn spin7_contraction_constant_is_four() {
    let spin7 = canonical_structure(StructureKind::Spin7);
    let omega = spin7.form("Omega");
    for i in 0..8 {
        let a = ConstForm::from_axes(8, &[i]);
        assert_eq!(a.wedge(omega).star().wedge(omega), a.star().scale(Scalar::int(4)));
    }
}

#[test]
#[ignore = "literal claim contradicted by exact evaluation: d_C = −{L_ω, d*}"]
fn twisted_differential_equals_l_codiff() {
    let r = kahler::kahler_suite(10, SEED).unwrap();
    for n in ["phi", "psi", "Omega", "omega"] {
        assert_eq!(r.find(&format!("{n}.dC-claim")).unwrap().status, Status::Pass, "{n}");
    }
}
